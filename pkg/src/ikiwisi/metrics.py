"""Confusion classification and micro-averaged F1.

Two views of the same pooled score: the dataset-level score covers every
vocabulary object, every segment, every frame; the selection-level score
covers exactly the objects the evaluator had on screen and the frames they
kept included.  User toggles never enter either computation — they only
override what the grid *shows*.

Degenerate denominators score 1.0: a grid with no predicted and no actual
positives made no mistakes, and all-correct-absence should not read as
failure.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Mapping, Sequence

from .domain import Dataset, GroundTruth, ModelDescriptor
from .providers import PredictionCacheFile, PredictionGrid, predict


class ConfusionCell(Enum):
    TP = "tp"
    TN = "tn"
    FP = "fp"
    FN = "fn"


@dataclass(frozen=True)
class ConfusionSummary:
    tp: int
    tn: int
    fp: int
    fn: int

    @property
    def total(self) -> int:
        return self.tp + self.tn + self.fp + self.fn

    @property
    def precision(self) -> float:
        return self.tp / (self.tp + self.fp) if self.tp + self.fp else 1.0

    @property
    def recall(self) -> float:
        return self.tp / (self.tp + self.fn) if self.tp + self.fn else 1.0

    @property
    def f1(self) -> float:
        denom = 2 * self.tp + self.fp + self.fn
        return 2 * self.tp / denom if denom else 1.0

    def as_dict(self) -> dict:
        return {
            "tp": self.tp,
            "tn": self.tn,
            "fp": self.fp,
            "fn": self.fn,
            "precision": self.precision,
            "recall": self.recall,
            "f1": self.f1,
        }


def _gt_row(gt: GroundTruth, obj: str, n_frames: int) -> Sequence[bool]:
    """Spy objects have no annotation row; their truth is all-false."""
    row = gt.labels.get(obj)
    if row is None:
        return (False,) * n_frames
    return row


def _check_frames(frames: Iterable[int], n_frames: int) -> list[int]:
    out = list(frames)
    for f in out:
        if not 0 <= f < n_frames:
            raise ValueError(f"frame {f} out of range 0..{n_frames - 1}")
    return out


def classify_cells(
    pred: PredictionGrid,
    gt: GroundTruth,
    objects: Sequence[str],
    frames: Sequence[int],
) -> dict[tuple[str, int], ConfusionCell]:
    """Label every (object, frame) cell TP/TN/FP/FN."""
    n_frames = max((len(v) for v in pred.cells.values()), default=0)
    frames = _check_frames(frames, n_frames)
    out: dict[tuple[str, int], ConfusionCell] = {}
    for obj in objects:
        p_row = pred.row(obj)
        g_row = _gt_row(gt, obj, len(p_row))
        for f in frames:
            p, g = p_row[f], g_row[f]
            if p and g:
                cell = ConfusionCell.TP
            elif p and not g:
                cell = ConfusionCell.FP
            elif g:
                cell = ConfusionCell.FN
            else:
                cell = ConfusionCell.TN
            out[(obj, f)] = cell
    return out


def confusion_counts(
    pred: PredictionGrid,
    gt: GroundTruth,
    objects: Sequence[str],
    frames: Sequence[int],
) -> ConfusionSummary:
    """Pooled counts without materializing the per-cell map."""
    tp = tn = fp = fn = 0
    checked = False
    for obj in objects:
        p_row = pred.row(obj)
        if not checked:
            _check_frames(frames, len(p_row))
            checked = True
        g_row = _gt_row(gt, obj, len(p_row))
        for f in frames:
            p, g = p_row[f], g_row[f]
            if p:
                if g:
                    tp += 1
                else:
                    fp += 1
            elif g:
                fn += 1
            else:
                tn += 1
    if not checked:
        _check_frames(frames, 0)
    return ConfusionSummary(tp=tp, tn=tn, fp=fp, fn=fn)


def micro_f1(
    pred: PredictionGrid,
    gt: GroundTruth,
    objects: Sequence[str],
    frames: Sequence[int],
) -> ConfusionSummary:
    """Micro-averaged precision/recall/F1 over the given objects × frames."""
    return confusion_counts(pred, gt, objects, frames)


def f1_global(
    model: ModelDescriptor,
    dataset: Dataset,
    *,
    caches: Mapping[str, PredictionCacheFile] | None = None,
) -> float:
    """Dataset-level micro F1: all segments, full vocabulary, all frames.

    ``caches`` maps segment_id → cache file for cached-kind models.
    """
    tp = fp = fn = 0
    objects = dataset.vocabulary.objects
    for segment in dataset.segments:
        cache = caches.get(segment.segment_id) if caches else None
        gt = dataset.ground_truth[segment.segment_id]
        grid = predict(model, segment, objects, gt, cache=cache)
        counts = confusion_counts(grid, gt, objects, range(segment.frame_count))
        tp += counts.tp
        fp += counts.fp
        fn += counts.fn
    denom = 2 * tp + fp + fn
    return 2 * tp / denom if denom else 1.0
