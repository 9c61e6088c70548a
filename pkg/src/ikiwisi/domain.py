"""Core vocabulary/segment/ground-truth model and manifest IO.

A dataset is a single JSON manifest: the object vocabulary, an ordered list
of video segments (each with its keyframes), and per-segment ground-truth
label vectors for every vocabulary object.  Loading cross-validates the
whole structure and reports the JSON path of the first offending element.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import IO, Union


class DatasetError(ValueError):
    """Raised for malformed or internally inconsistent manifests."""


@dataclass(frozen=True)
class Vocabulary:
    objects: tuple[str, ...]

    @property
    def size(self) -> int:
        return len(self.objects)

    def __contains__(self, name: str) -> bool:
        return name in self._index

    @property
    def _index(self) -> frozenset[str]:
        # cached lazily on first use; frozen dataclass → stash via __dict__
        cached = self.__dict__.get("_index_cache")
        if cached is None:
            cached = frozenset(self.objects)
            object.__setattr__(self, "_index_cache", cached)
        return cached


@dataclass(frozen=True)
class Keyframe:
    index: int
    image_ref: str = ""


@dataclass(frozen=True)
class Segment:
    segment_id: str
    video_id: str
    frames: tuple[Keyframe, ...]

    @property
    def frame_count(self) -> int:
        return len(self.frames)


@dataclass(frozen=True)
class GroundTruth:
    segment_id: str
    labels: dict[str, tuple[bool, ...]]


@dataclass(frozen=True)
class ModelDescriptor:
    model_id: str
    kind: str  # ground-truth | random | cached | synthetic-noisy
    seed: int = 0
    flip_probability: float = 0.0
    cache_ref: str = ""

    KINDS = ("ground-truth", "random", "cached", "synthetic-noisy")

    def __post_init__(self):
        if self.kind not in self.KINDS:
            raise DatasetError(f"unknown model kind {self.kind!r} for model {self.model_id!r}")
        if not 0.0 <= self.flip_probability <= 1.0:
            raise DatasetError(
                f"flip_probability {self.flip_probability} out of [0, 1] for model {self.model_id!r}"
            )


@dataclass(frozen=True)
class TaskDescriptor:
    task_id: str
    name: str


#: The single task this tool currently supports.
MULTI_OBJECT_RECOGNITION = TaskDescriptor(
    task_id="multi-object-recognition", name="Multi-Object Recognition"
)


@dataclass(frozen=True)
class Dataset:
    dataset_id: str
    vocabulary: Vocabulary
    segments: tuple[Segment, ...]
    ground_truth: dict[str, GroundTruth] = field(repr=False)

    @property
    def segment_count(self) -> int:
        return len(self.segments)

    def segment(self, segment_id: str) -> Segment:
        for seg in self.segments:
            if seg.segment_id == segment_id:
                return seg
        raise DatasetError(f"unknown segment {segment_id!r} in dataset {self.dataset_id!r}")


def validate_vocabulary_membership(name: str, vocab: Vocabulary) -> bool:
    """Exact, case-sensitive membership test."""
    return name in vocab


def _require(cond: bool, path: str, message: str) -> None:
    if not cond:
        raise DatasetError(f"{path}: {message}")


def load_dataset(source: Union[bytes, str, IO]) -> Dataset:
    """Parse and cross-validate a dataset manifest.

    Accepts raw bytes/str or a readable file object.  Raises
    :class:`DatasetError` naming the JSON path of the first problem found.
    """
    if hasattr(source, "read"):
        source = source.read()
    if isinstance(source, bytes):
        source = source.decode("utf-8")
    try:
        doc = json.loads(source)
    except json.JSONDecodeError as exc:
        raise DatasetError(f"manifest is not valid JSON: {exc}") from exc

    _require(isinstance(doc, dict), "$", "manifest must be a JSON object")
    dataset_id = doc.get("dataset_id")
    _require(isinstance(dataset_id, str) and dataset_id != "", "$.dataset_id", "must be a non-empty string")

    raw_vocab = doc.get("vocabulary")
    _require(isinstance(raw_vocab, list) and raw_vocab, "$.vocabulary", "must be a non-empty list")
    names: list[str] = []
    seen: set[str] = set()
    for i, name in enumerate(raw_vocab):
        path = f"$.vocabulary[{i}]"
        _require(isinstance(name, str), path, "object name must be a string")
        trimmed = name.strip()
        _require(trimmed != "", path, "object name must be non-empty")
        _require(trimmed not in seen, path, f"duplicate object name {trimmed!r}")
        seen.add(trimmed)
        names.append(trimmed)
    vocabulary = Vocabulary(tuple(names))

    raw_segments = doc.get("segments")
    _require(isinstance(raw_segments, list) and raw_segments, "$.segments", "must be a non-empty list")

    segments: list[Segment] = []
    ground_truth: dict[str, GroundTruth] = {}
    seen_segments: set[str] = set()
    for s, raw_seg in enumerate(raw_segments):
        spath = f"$.segments[{s}]"
        _require(isinstance(raw_seg, dict), spath, "segment must be a JSON object")
        seg_id = raw_seg.get("segment_id")
        _require(isinstance(seg_id, str) and seg_id != "", f"{spath}.segment_id", "must be a non-empty string")
        _require(seg_id not in seen_segments, f"{spath}.segment_id", f"duplicate segment id {seg_id!r}")
        seen_segments.add(seg_id)
        video_id = raw_seg.get("video_id")
        _require(isinstance(video_id, str) and video_id != "", f"{spath}.video_id", "must be a non-empty string")

        raw_frames = raw_seg.get("frames")
        _require(isinstance(raw_frames, list) and raw_frames, f"{spath}.frames", "must be a non-empty list")
        frames: list[Keyframe] = []
        for f, raw_frame in enumerate(raw_frames):
            fpath = f"{spath}.frames[{f}]"
            _require(isinstance(raw_frame, dict), fpath, "frame must be a JSON object")
            index = raw_frame.get("index")
            _require(index == f, f"{fpath}.index", f"frame indices must be contiguous from 0 (expected {f}, got {index!r})")
            image_ref = raw_frame.get("image_ref", "")
            _require(isinstance(image_ref, str), f"{fpath}.image_ref", "must be a string")
            frames.append(Keyframe(index=f, image_ref=image_ref))
        n_frames = len(frames)

        raw_gt = raw_seg.get("ground_truth")
        _require(isinstance(raw_gt, dict), f"{spath}.ground_truth", "must be a JSON object")
        labels: dict[str, tuple[bool, ...]] = {}
        for obj, vector in raw_gt.items():
            gpath = f"{spath}.ground_truth[{obj!r}]"
            _require(obj in vocabulary, gpath, f"unknown object {obj!r} (not in vocabulary)")
            _require(isinstance(vector, list), gpath, "label vector must be a list")
            _require(
                len(vector) == n_frames,
                gpath,
                f"label length mismatch (expected {n_frames}, got {len(vector)})",
            )
            _require(all(isinstance(v, bool) for v in vector), gpath, "labels must be JSON booleans")
            labels[obj] = tuple(vector)
        for obj in vocabulary.objects:
            _require(obj in labels, f"{spath}.ground_truth", f"missing label vector for object {obj!r}")

        segments.append(Segment(segment_id=seg_id, video_id=video_id, frames=tuple(frames)))
        ground_truth[seg_id] = GroundTruth(segment_id=seg_id, labels=labels)

    return Dataset(
        dataset_id=dataset_id,
        vocabulary=vocabulary,
        segments=tuple(segments),
        ground_truth=ground_truth,
    )


def serialize_dataset(dataset: Dataset) -> str:
    """Inverse of :func:`load_dataset`; stable key order for diffable files."""
    doc = {
        "dataset_id": dataset.dataset_id,
        "vocabulary": list(dataset.vocabulary.objects),
        "segments": [
            {
                "segment_id": seg.segment_id,
                "video_id": seg.video_id,
                "frames": [
                    {"index": fr.index, "image_ref": fr.image_ref} for fr in seg.frames
                ],
                "ground_truth": {
                    obj: list(dataset.ground_truth[seg.segment_id].labels[obj])
                    for obj in dataset.vocabulary.objects
                },
            }
            for seg in dataset.segments
        ],
    }
    return json.dumps(doc, indent=2, sort_keys=False, ensure_ascii=False) + "\n"
