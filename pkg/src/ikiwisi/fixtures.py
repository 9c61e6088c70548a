"""Seeded fixture datasets.

The tool's real subject matter — sidewalk-navigation videos with per-frame
object annotations — is external media we cannot ship.  This generator
produces a stand-in dataset with the same shape and the statistical
properties the test suite (and any demo) leans on:

* 90 vocabulary objects, four of which are designated spy candidates whose
  rows are all-false in every segment;
* 31 segments spread over 21 videos, 3-20 keyframes each (some above the
  16-frame display cap, one at the minimum);
* per-object ground-truth rows from a persistent two-state Markov chain
  (objects tend to stay present/absent across neighboring keyframes), with
  global prevalence repaired to exactly half the cells true;
* a cached "snapshot" model whose predictions on a designated 9-object ×
  15-frame anchor block score micro-F1 = 0.77 exactly (tp=77 fp=23 fn=23
  tn=12), plus honest 15%-noise predictions everywhere else;
* a model catalog: ground truth, fair coin, two synthetic-noise levels,
  and the cached snapshot.

Everything derives from one seed through keyed streams, so two runs with
the same seed write byte-identical files.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

from .domain import (
    Dataset,
    GroundTruth,
    Keyframe,
    ModelDescriptor,
    Segment,
    Vocabulary,
    serialize_dataset,
)
from .seeding import KeyedStream

VOCABULARY_NAMES: tuple[str, ...] = (
    "Car", "Bus", "Truck", "Bicycle", "Motorcycle", "Scooter", "Wheelchair",
    "Stroller", "Pedestrian", "Person with a Disability", "White Cane",
    "Guide Dog", "Crosswalk", "Traffic Light", "Stop Sign", "Street Sign",
    "Yield Sign", "Parking Meter", "Fire Hydrant", "Mailbox", "Bench",
    "Trash Can", "Recycling Bin", "Street Lamp", "Utility Pole", "Power Line",
    "Manhole Cover", "Storm Drain", "Curb", "Sloped Curb", "Sloped Driveway",
    "Driveway", "Sidewalk Crack", "Pothole", "Puddle", "Ice Patch", "Gravel",
    "Leaves", "Tree", "Bush", "Vegetation", "Planter", "Flower Bed", "Grass",
    "Fence", "Gate", "Wall", "Guardrail", "Bollard", "Construction Barrier",
    "Traffic Cone", "Scaffolding", "Ladder", "Dumpster", "Parked Car",
    "Shopping Cart", "Bicycle Rack", "Bus Stop", "Bus Shelter", "Newsstand",
    "Food Truck", "Vendor Stall", "Awning", "Staircase", "Handrail", "Ramp",
    "Escalator", "Elevator", "Revolving Door", "Automatic Door", "Flush Door",
    "Turnstile", "Subway Entrance", "Train Platform", "Railroad Crossing",
    "Bridge", "Tunnel", "Overpass", "Underpass", "Snow", "Hose", "Crowd",
    "Dog", "Cat", "Pigeon", "Skateboard", "Traffic Island", "Median Strip",
    "Billboard", "Storefront",
)

#: Objects that almost certainly never appear; their rows stay all-false,
#: which makes them safe spy picks for evaluators.
SPY_CANDIDATES: tuple[str, ...] = ("Turnstile", "Snow", "Hose", "Flush Door")

#: Annotated segments per video (21 videos, 31 segments total).
SEGMENTS_PER_VIDEO: tuple[int, ...] = (
    2, 1, 2, 3, 1, 1, 1, 1, 1, 1, 1, 1, 1, 2, 1, 1, 2, 2, 2, 2, 2,
)

DEFAULT_SEED = 7

#: Marginal presence probability for non-spy rows.  86 live objects at this
#: rate plus 4 all-false spy rows put the raw pool near half-true; the
#: repair pass then lands it exactly.
_MARGINAL_Q = 45.0 / 86.0
#: Frame-to-frame autocorrelation of the presence chain.
_PERSISTENCE = 0.75

ANCHOR_MODEL_ID = "snapshot-a"
ANCHOR_OBJECT_COUNT = 9
ANCHOR_FRAME_COUNT = 15
_ANCHOR_TP, _ANCHOR_FP, _ANCHOR_FN, _ANCHOR_TN = 77, 23, 23, 12
_CACHE_NOISE = 0.15


@dataclass(frozen=True)
class FixtureBundle:
    dataset: Dataset
    models: tuple[ModelDescriptor, ...]
    caches: dict[str, dict[str, dict[str, list[bool]]]]  # model → segment → rows
    info: dict


def _segment_specs() -> list[tuple[str, str]]:
    specs = []
    for v, count in enumerate(SEGMENTS_PER_VIDEO, start=1):
        for s in range(count):
            specs.append((f"v{v:02d}-s{s + 1}", f"video_{v:02d}"))
    return specs


def _markov_row(seed: int, segment_id: str, obj: str, n_frames: int) -> list[bool]:
    stream = KeyedStream(seed, "gt", segment_id, obj)
    row = []
    state = stream.bernoulli(_MARGINAL_Q)
    row.append(state)
    for _ in range(n_frames - 1):
        p_present = _MARGINAL_Q + _PERSISTENCE * ((1.0 if state else 0.0) - _MARGINAL_Q)
        state = stream.bernoulli(p_present)
        row.append(state)
    return row


def generate_fixture(seed: int = DEFAULT_SEED) -> FixtureBundle:
    vocab = Vocabulary(VOCABULARY_NAMES)
    assert vocab.size == 90, "fixture vocabulary must hold exactly 90 objects"
    specs = _segment_specs()
    assert len(specs) == 31, "fixture must hold exactly 31 segments"

    # --- segment shapes ----------------------------------------------------
    n_frames: dict[str, int] = {}
    for seg_id, _video in specs:
        n_frames[seg_id] = KeyedStream(seed, "frames", seg_id).randint(3, 20)
    n_frames[specs[0][0]] = 20  # exercises the 16-frame display cap
    n_frames[specs[1][0]] = 3   # the minimum the generator emits
    anchor_segment = specs[3][0]
    n_frames[anchor_segment] = ANCHOR_FRAME_COUNT

    # --- ground truth ------------------------------------------------------
    rows: dict[tuple[str, str], list[bool]] = {}
    for seg_id, _video in specs:
        for obj in vocab.objects:
            if obj in SPY_CANDIDATES:
                rows[(seg_id, obj)] = [False] * n_frames[seg_id]
            else:
                rows[(seg_id, obj)] = _markov_row(seed, seg_id, obj, n_frames[seg_id])

    # --- anchor block: exactly 100 true cells in 9 objects × 15 frames -----
    non_spies = [o for o in vocab.objects if o not in SPY_CANDIDATES]
    anchor_objects = sorted(KeyedStream(seed, "anchor-objects").sample(non_spies, ANCHOR_OBJECT_COUNT))
    anchor_cells = [(obj, f) for obj in anchor_objects for f in range(ANCHOR_FRAME_COUNT)]
    target_true = _ANCHOR_TP + _ANCHOR_FN  # ground truth trues the cache needs
    repair = KeyedStream(seed, "anchor-repair")
    shuffled = list(anchor_cells)
    repair.shuffle(shuffled)
    current = sum(1 for obj, f in anchor_cells if rows[(anchor_segment, obj)][f])
    for obj, f in shuffled:
        if current == target_true:
            break
        value = rows[(anchor_segment, obj)][f]
        if current < target_true and not value:
            rows[(anchor_segment, obj)][f] = True
            current += 1
        elif current > target_true and value:
            rows[(anchor_segment, obj)][f] = False
            current -= 1

    # --- global prevalence repair to exactly half true ----------------------
    total_cells = sum(vocab.size * n_frames[seg_id] for seg_id, _ in specs)
    target_total = round(total_cells / 2)
    frozen = {(anchor_segment, obj, f) for obj, f in anchor_cells}
    eligible = [
        (seg_id, obj, f)
        for seg_id, _ in specs
        for obj in non_spies
        for f in range(n_frames[seg_id])
        if (seg_id, obj, f) not in frozen
    ]
    KeyedStream(seed, "prevalence-repair").shuffle(eligible)
    current_total = sum(sum(row) for row in rows.values())
    for seg_id, obj, f in eligible:
        if current_total == target_total:
            break
        value = rows[(seg_id, obj)][f]
        if current_total < target_total and not value:
            rows[(seg_id, obj)][f] = True
            current_total += 1
        elif current_total > target_total and value:
            rows[(seg_id, obj)][f] = False
            current_total -= 1

    # --- assemble the dataset ----------------------------------------------
    segments = []
    ground_truth = {}
    for seg_id, video_id in specs:
        frames = tuple(
            Keyframe(index=i, image_ref=f"frames/{seg_id}/{i:03d}.jpg")
            for i in range(n_frames[seg_id])
        )
        segments.append(Segment(segment_id=seg_id, video_id=video_id, frames=frames))
        ground_truth[seg_id] = GroundTruth(
            segment_id=seg_id,
            labels={obj: tuple(rows[(seg_id, obj)]) for obj in vocab.objects},
        )
    dataset = Dataset(
        dataset_id=f"fixture-s{seed}",
        vocabulary=vocab,
        segments=tuple(segments),
        ground_truth=ground_truth,
    )

    # --- cached model predictions -------------------------------------------
    cache_rows: dict[str, dict[str, list[bool]]] = {}
    for seg_id, _ in specs:
        seg_preds: dict[str, list[bool]] = {}
        for obj in vocab.objects:
            stream = KeyedStream(seed, "cache", ANCHOR_MODEL_ID, seg_id, obj)
            seg_preds[obj] = [
                value != stream.bernoulli(_CACHE_NOISE)
                for value in rows[(seg_id, obj)]
            ]
        cache_rows[seg_id] = seg_preds

    # Overwrite the anchor block with constructed confusion counts.
    truths = [(obj, f) for obj, f in anchor_cells if rows[(anchor_segment, obj)][f]]
    falses = [(obj, f) for obj, f in anchor_cells if not rows[(anchor_segment, obj)][f]]
    assert len(truths) == _ANCHOR_TP + _ANCHOR_FN and len(falses) == _ANCHOR_FP + _ANCHOR_TN
    picker = KeyedStream(seed, "anchor-cache")
    picker.shuffle(truths)
    picker.shuffle(falses)
    predicted_true = set(truths[:_ANCHOR_TP]) | set(falses[:_ANCHOR_FP])
    for obj, f in anchor_cells:
        cache_rows[anchor_segment][obj][f] = (obj, f) in predicted_true

    models = (
        ModelDescriptor(model_id="gt", kind="ground-truth"),
        ModelDescriptor(
            model_id="random", kind="random",
            seed=KeyedStream(seed, "model-seed", "random").randint(0, 2**31),
        ),
        ModelDescriptor(
            model_id="drift-low", kind="synthetic-noisy", flip_probability=0.10,
            seed=KeyedStream(seed, "model-seed", "drift-low").randint(0, 2**31),
        ),
        ModelDescriptor(
            model_id="drift-high", kind="synthetic-noisy", flip_probability=0.25,
            seed=KeyedStream(seed, "model-seed", "drift-high").randint(0, 2**31),
        ),
        ModelDescriptor(
            model_id=ANCHOR_MODEL_ID, kind="cached", cache_ref=f"caches/{ANCHOR_MODEL_ID}",
        ),
    )

    info = {
        "seed": seed,
        "dataset_id": dataset.dataset_id,
        "spy_candidates": list(SPY_CANDIDATES),
        "anchor": {
            "model_id": ANCHOR_MODEL_ID,
            "segment_id": anchor_segment,
            "objects": anchor_objects,
            "frames": ANCHOR_FRAME_COUNT,
            "confusion": {
                "tp": _ANCHOR_TP, "fp": _ANCHOR_FP, "fn": _ANCHOR_FN, "tn": _ANCHOR_TN,
            },
            "expected_f1": 2 * _ANCHOR_TP / (2 * _ANCHOR_TP + _ANCHOR_FP + _ANCHOR_FN),
        },
        "prevalence": {"true_cells": target_total, "total_cells": total_cells},
    }

    return FixtureBundle(
        dataset=dataset,
        models=models,
        caches={ANCHOR_MODEL_ID: cache_rows},
        info=info,
    )


def write_fixture(out_dir: str | Path, seed: int = DEFAULT_SEED) -> FixtureBundle:
    """Generate and write a complete data directory.

    Layout: ``manifest.json`` (dataset), ``models.json`` (catalog),
    ``caches/<model>/<segment>.json`` (prediction caches), and
    ``fixture-info.json`` (generator metadata for tests and demos).
    """
    bundle = generate_fixture(seed)
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)

    (out / "manifest.json").write_text(serialize_dataset(bundle.dataset), encoding="utf-8")

    models_doc = {
        "models": [
            {
                "model_id": m.model_id,
                "kind": m.kind,
                "seed": m.seed,
                "flip_probability": m.flip_probability,
                "cache_ref": m.cache_ref,
            }
            for m in bundle.models
        ]
    }
    (out / "models.json").write_text(
        json.dumps(models_doc, indent=2, sort_keys=True) + "\n", encoding="utf-8"
    )

    for model_id, per_segment in bundle.caches.items():
        cache_dir = out / "caches" / model_id
        cache_dir.mkdir(parents=True, exist_ok=True)
        for seg_id, preds in per_segment.items():
            doc = {
                "model_id": model_id,
                "dataset_id": bundle.dataset.dataset_id,
                "segment_id": seg_id,
                "predictions": {obj: list(map(bool, row)) for obj, row in preds.items()},
            }
            (cache_dir / f"{seg_id}.json").write_text(
                json.dumps(doc, indent=2, sort_keys=True) + "\n", encoding="utf-8"
            )

    (out / "fixture-info.json").write_text(
        json.dumps(bundle.info, indent=2, sort_keys=True) + "\n", encoding="utf-8"
    )
    return bundle
