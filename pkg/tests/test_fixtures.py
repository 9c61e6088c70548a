"""The seeded demo dataset: shape, invariants, byte determinism."""
from __future__ import annotations

import json
from pathlib import Path

import pytest

from ikiwisi.domain import load_dataset, serialize_dataset
from ikiwisi.fixtures import (
    ANCHOR_MODEL_ID,
    DEFAULT_SEED,
    SPY_CANDIDATES,
    VOCABULARY_NAMES,
    generate_fixture,
    write_fixture,
)
from ikiwisi.metrics import f1_global, micro_f1
from ikiwisi.providers import PredictionGrid, load_prediction_cache


def test_vocabulary_and_segment_shape(bundle):
    data = bundle.dataset
    assert data.vocabulary.size == 90
    assert data.vocabulary.objects == VOCABULARY_NAMES
    assert len(data.segments) == 31
    assert len({s.video_id for s in data.segments}) == 21
    counts = [s.frame_count for s in data.segments]
    assert all(3 <= c <= 20 for c in counts)
    assert max(counts) == 20  # above the 16-frame display cap
    assert min(counts) == 3


def test_every_segment_labels_every_object(bundle):
    data = bundle.dataset
    for segment in data.segments:
        labels = data.ground_truth[segment.segment_id].labels
        assert set(labels) == set(VOCABULARY_NAMES)
        assert all(len(row) == segment.frame_count for row in labels.values())


def test_spy_candidates_are_absent_everywhere(bundle):
    data = bundle.dataset
    for segment in data.segments:
        labels = data.ground_truth[segment.segment_id].labels
        for spy in SPY_CANDIDATES:
            assert not any(labels[spy])


def test_prevalence_is_exactly_half(bundle):
    data = bundle.dataset
    true_cells = sum(
        sum(row)
        for gt in data.ground_truth.values()
        for row in gt.labels.values()
    )
    total = sum(90 * s.frame_count for s in data.segments)
    assert 2 * true_cells == total
    assert bundle.info["prevalence"] == {
        "true_cells": true_cells,
        "total_cells": total,
    }


def test_rows_are_persistent_not_coin_flips(bundle):
    # the chain is built to hold its state: fewer transitions than a fair coin
    data = bundle.dataset
    transitions = 0
    pairs = 0
    for segment in data.segments:
        for obj, row in data.ground_truth[segment.segment_id].labels.items():
            if obj in SPY_CANDIDATES:
                continue
            transitions += sum(1 for a, b in zip(row, row[1:]) if a != b)
            pairs += len(row) - 1
    assert transitions / pairs < 0.35


def test_anchor_block_confusion_counts(bundle):
    anchor = bundle.info["anchor"]
    segment_id = anchor["segment_id"]
    objects = anchor["objects"]
    frames = list(range(anchor["frames"]))
    assert anchor["model_id"] == ANCHOR_MODEL_ID
    assert len(objects) == 9 and anchor["frames"] == 15
    assert not set(objects) & set(SPY_CANDIDATES)

    cache = bundle.caches[ANCHOR_MODEL_ID][segment_id]
    grid = PredictionGrid(
        model_id=ANCHOR_MODEL_ID,
        segment_id=segment_id,
        cells={obj: tuple(row) for obj, row in cache.items()},
    )
    summary = micro_f1(
        grid, bundle.dataset.ground_truth[segment_id], objects, frames
    )
    assert (summary.tp, summary.fp, summary.fn, summary.tn) == (77, 23, 23, 12)
    assert summary.f1 == 0.77
    assert anchor["expected_f1"] == 0.77


def test_cache_covers_every_segment_and_object(bundle):
    cache = bundle.caches[ANCHOR_MODEL_ID]
    data = bundle.dataset
    assert set(cache) == {s.segment_id for s in data.segments}
    for segment in data.segments:
        rows = cache[segment.segment_id]
        assert set(rows) == set(VOCABULARY_NAMES)
        assert all(len(row) == segment.frame_count for row in rows.values())


def test_model_catalog(bundle):
    by_id = {m.model_id: m for m in bundle.models}
    assert set(by_id) == {"gt", "random", "drift-low", "drift-high", "snapshot-a"}
    assert by_id["gt"].kind == "ground-truth"
    assert by_id["random"].kind == "random"
    assert by_id["drift-low"].kind == "synthetic-noisy"
    assert by_id["drift-low"].flip_probability == 0.10
    assert by_id["drift-high"].flip_probability == 0.25
    assert by_id["snapshot-a"].kind == "cached"


def test_generation_is_deterministic(bundle):
    again = generate_fixture(seed=DEFAULT_SEED)
    assert serialize_dataset(again.dataset) == serialize_dataset(bundle.dataset)
    assert again.caches == bundle.caches
    assert again.info == bundle.info
    assert again.models == bundle.models

    other = generate_fixture(seed=8)
    assert serialize_dataset(other.dataset) != serialize_dataset(bundle.dataset)
    assert other.dataset.dataset_id == "fixture-s8"


def test_written_files_are_byte_deterministic(tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    write_fixture(a, seed=3)
    write_fixture(b, seed=3)
    files_a = sorted(p.relative_to(a) for p in a.rglob("*") if p.is_file())
    files_b = sorted(p.relative_to(b) for p in b.rglob("*") if p.is_file())
    assert files_a == files_b
    assert files_a  # non-empty
    for rel in files_a:
        assert (a / rel).read_bytes() == (b / rel).read_bytes()


def test_written_directory_loads_back(data_dir):
    data = load_dataset((Path(data_dir) / "manifest.json").read_text())
    bundle = generate_fixture(seed=7)
    assert serialize_dataset(data) == serialize_dataset(bundle.dataset)

    models_doc = json.loads((Path(data_dir) / "models.json").read_text())
    assert {m["model_id"] for m in models_doc["models"]} == {
        m.model_id for m in bundle.models
    }

    cache_dir = Path(data_dir) / "caches" / ANCHOR_MODEL_ID
    cache_files = sorted(cache_dir.glob("*.json"))
    assert len(cache_files) == 31
    loaded = load_prediction_cache(cache_files[0].read_text(), data)
    seg_id = loaded.segment_id
    assert loaded.predictions == {
        obj: tuple(row) for obj, row in bundle.caches[ANCHOR_MODEL_ID][seg_id].items()
    }

    info = json.loads((Path(data_dir) / "fixture-info.json").read_text())
    assert info == bundle.info


def test_model_separation_across_the_catalog(bundle):
    # the ordering the demo leans on: gt > low noise > snapshot > high > coin
    from ikiwisi.providers import PredictionCacheFile

    by_id = {m.model_id: m for m in bundle.models}
    data = bundle.dataset
    caches = {
        seg: PredictionCacheFile(
            model_id=ANCHOR_MODEL_ID,
            dataset_id=data.dataset_id,
            segment_id=seg,
            predictions={obj: tuple(row) for obj, row in rows.items()},
        )
        for seg, rows in bundle.caches[ANCHOR_MODEL_ID].items()
    }
    scores = {
        "gt": f1_global(by_id["gt"], data),
        "random": f1_global(by_id["random"], data),
        "drift-low": f1_global(by_id["drift-low"], data),
        "drift-high": f1_global(by_id["drift-high"], data),
        "snapshot-a": f1_global(by_id["snapshot-a"], data, caches=caches),
    }
    assert scores["gt"] == 1.0
    assert scores["drift-low"] == pytest.approx(0.90, abs=0.02)
    assert scores["snapshot-a"] == pytest.approx(0.85, abs=0.02)
    assert scores["drift-high"] == pytest.approx(0.75, abs=0.02)
    assert scores["random"] == pytest.approx(0.50, abs=0.02)
    assert (
        scores["gt"]
        > scores["drift-low"]
        > scores["snapshot-a"]
        > scores["drift-high"]
        > scores["random"]
    )


def test_committed_fixture_matches_regeneration(tmp_path):
    committed = Path(__file__).resolve().parents[1] / "fixtures" / "default"
    fresh = tmp_path / "regen"
    write_fixture(fresh, seed=7)
    rel_committed = sorted(
        p.relative_to(committed) for p in committed.rglob("*") if p.is_file()
    )
    rel_fresh = sorted(p.relative_to(fresh) for p in fresh.rglob("*") if p.is_file())
    assert rel_committed == rel_fresh
    for rel in rel_committed:
        assert (committed / rel).read_bytes() == (fresh / rel).read_bytes(), rel
