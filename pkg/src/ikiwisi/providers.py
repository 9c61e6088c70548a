"""Prediction providers: one interface over four model kinds.

Every model answers the same question per segment — "which of these objects
exist in which keyframes?" — as a boolean grid.  Kinds:

* ``ground-truth``  — echoes the annotation labels (oracle).
* ``random``        — independent fair-coin cells.
* ``synthetic-noisy`` — ground truth with each cell flipped with probability
  ``flip_probability``.
* ``cached``        — cells read verbatim from a prediction cache file
  (the integration point for real model outputs, which are far too slow
  to query interactively).

Stochastic kinds draw from :func:`ikiwisi.seeding.unit_draw` keyed by
``(seed, model_id, segment_id, object, frame)``, so grids are pure
functions of their inputs and reproducible across runs.

Spy objects — names registered by the caller as almost-certainly-absent —
get an all-false row from ground-truth and cached kinds when the name has
no data; random and synthetic kinds still generate noise for them, because
a model hallucinating a spy is exactly the signal spies exist to catch.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import IO, Iterable, Union

from .domain import Dataset, GroundTruth, ModelDescriptor, Segment
from .seeding import unit_draw, unit_draws


class PredictionError(ValueError):
    """Raised for unusable model descriptors or cache files."""


@dataclass(frozen=True)
class PredictionGrid:
    model_id: str
    segment_id: str
    cells: dict[str, tuple[bool, ...]] = field(repr=False)
    warnings: tuple[str, ...] = ()

    def row(self, obj: str) -> tuple[bool, ...]:
        try:
            return self.cells[obj]
        except KeyError:
            raise PredictionError(
                f"object {obj!r} missing from grid for model {self.model_id!r}"
            ) from None


@dataclass(frozen=True)
class PredictionCacheFile:
    model_id: str
    dataset_id: str
    segment_id: str
    predictions: dict[str, tuple[bool, ...]] = field(repr=False)


def cell_draw(seed: int, model_id: str, segment_id: str, obj: str, frame: int) -> float:
    """The documented per-cell uniform draw; fixed mapping, do not change."""
    return unit_draw(seed, model_id, segment_id, obj, frame)


def load_prediction_cache(source: Union[bytes, str, IO], dataset: Dataset) -> PredictionCacheFile:
    """Parse a prediction cache and validate it against the dataset."""
    if hasattr(source, "read"):
        source = source.read()
    if isinstance(source, bytes):
        source = source.decode("utf-8")
    try:
        doc = json.loads(source)
    except json.JSONDecodeError as exc:
        raise PredictionError(f"prediction cache is not valid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise PredictionError("prediction cache must be a JSON object")
    for key in ("model_id", "dataset_id", "segment_id"):
        if not isinstance(doc.get(key), str) or not doc.get(key):
            raise PredictionError(f"prediction cache field {key!r} must be a non-empty string")
    segment_id = doc["segment_id"]
    matches = [s for s in dataset.segments if s.segment_id == segment_id]
    if not matches:
        raise PredictionError(f"prediction cache names unknown segment {segment_id!r}")
    n_frames = matches[0].frame_count
    raw = doc.get("predictions")
    if not isinstance(raw, dict):
        raise PredictionError("prediction cache field 'predictions' must be a JSON object")
    predictions: dict[str, tuple[bool, ...]] = {}
    for obj, vector in raw.items():
        if not isinstance(vector, list) or not all(isinstance(v, bool) for v in vector):
            raise PredictionError(f"prediction vector for {obj!r} must be a list of booleans")
        if len(vector) != n_frames:
            raise PredictionError(
                f"prediction vector for {obj!r} has length {len(vector)}, "
                f"segment {segment_id!r} has {n_frames} frames"
            )
        predictions[obj] = tuple(vector)
    return PredictionCacheFile(
        model_id=doc["model_id"],
        dataset_id=doc["dataset_id"],
        segment_id=segment_id,
        predictions=predictions,
    )


def predict(
    model: ModelDescriptor,
    segment: Segment,
    objects: Iterable[str],
    gt: GroundTruth,
    *,
    spies: frozenset[str] | set[str] = frozenset(),
    cache: PredictionCacheFile | None = None,
) -> PredictionGrid:
    """Produce the model's boolean grid for ``objects`` on ``segment``.

    ``spies`` marks which requested names were registered as spy objects;
    ``cache`` must be supplied (and match the segment) for cached models.
    """
    names = list(objects)
    if not names:
        raise PredictionError("predict() requires at least one object")
    n_frames = segment.frame_count
    all_false = (False,) * n_frames
    cells: dict[str, tuple[bool, ...]] = {}
    warnings: list[str] = []

    if model.kind == "ground-truth":
        for obj in names:
            row = gt.labels.get(obj)
            if row is None:
                if obj in spies:
                    row = all_false
                else:
                    raise PredictionError(
                        f"object {obj!r} has no ground truth on segment {segment.segment_id!r}"
                    )
            cells[obj] = row

    elif model.kind == "random":
        for obj in names:
            draws = unit_draws((model.seed, model.model_id, segment.segment_id, obj), n_frames)
            cells[obj] = tuple(d < 0.5 for d in draws)

    elif model.kind == "synthetic-noisy":
        p = model.flip_probability
        for obj in names:
            base = gt.labels.get(obj, all_false if obj in spies else None)
            if base is None:
                raise PredictionError(
                    f"object {obj!r} has no ground truth on segment {segment.segment_id!r}"
                )
            draws = unit_draws((model.seed, model.model_id, segment.segment_id, obj), n_frames)
            cells[obj] = tuple(value != (d < p) for value, d in zip(base, draws))

    elif model.kind == "cached":
        if cache is None:
            raise PredictionError(f"model {model.model_id!r} is cached but no cache was supplied")
        if cache.segment_id != segment.segment_id:
            raise PredictionError(
                f"cache is for segment {cache.segment_id!r}, requested {segment.segment_id!r}"
            )
        for obj in names:
            row = cache.predictions.get(obj)
            if row is None:
                if obj in spies:
                    row = all_false
                    warnings.append(f"spy {obj!r} absent from cache; assuming all-false")
                else:
                    raise PredictionError(
                        f"object {obj!r} missing from prediction cache for model {model.model_id!r}"
                    )
            cells[obj] = row

    else:  # pragma: no cover - ModelDescriptor already rejects unknown kinds
        raise PredictionError(f"unknown model kind {model.kind!r}")

    return PredictionGrid(
        model_id=model.model_id,
        segment_id=segment.segment_id,
        cells=cells,
        warnings=tuple(warnings),
    )
