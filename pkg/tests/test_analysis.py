"""The analysis report: medians, tests, and the rating-F1 trend."""
from __future__ import annotations

import pytest

from ikiwisi.analysis import build_report
from ikiwisi.ratings import RatingRecord


def rec(rater, model, rating, f1=0.5, segment="seg-1"):
    return RatingRecord(
        rater_id=rater, model_id=model, segment_id=segment, rating=rating, f1_star=f1
    )


def test_empty_records_report():
    report = build_report([])
    assert report["n_records"] == 0
    assert report["models"] == [] and report["raters"] == [] and report["rows"] == []
    assert report["kruskal_wallis"] is None
    assert report["posthoc"] is None
    assert report["rating_vs_f1"] is None


def test_single_model_skips_the_group_tests():
    records = [rec("r1", "only", 50), rec("r1", "only", 70), rec("r2", "only", 60)]
    report = build_report(records)
    assert report["n_records"] == 3
    assert report["models"] == ["only"]
    assert report["kruskal_wallis"] is None  # nothing to compare across
    assert report["posthoc"] is None
    # a single point can't carry a trend either
    assert report["rating_vs_f1"]["r_squared_all"] is None


def test_constant_ratings_normalize_to_half():
    records = [rec("r1", "a", 40), rec("r1", "b", 40), rec("r2", "a", 80), rec("r2", "b", 80)]
    report = build_report(records)
    assert [row["normalized_rating"] for row in report["rows"]] == [0.5] * 4
    assert report["median_normalized_rating"] == {"a": 0.5, "b": 0.5}
    kw = report["kruskal_wallis"]
    assert kw["statistic"] == 0.0 and kw["p_value"] == 1.0


def test_two_model_report_shape():
    records = [
        rec("r1", "good", 90, f1=0.95),
        rec("r1", "bad", 20, f1=0.40),
        rec("r2", "good", 80, f1=0.90),
        rec("r2", "bad", 30, f1=0.45),
        rec("r3", "good", 100, f1=0.92),
        rec("r3", "bad", 10, f1=0.38),
    ]
    report = build_report(records)
    assert report["models"] == ["bad", "good"]
    assert report["raters"] == ["r1", "r2", "r3"]
    assert len(report["rows"]) == 6
    assert report["median_normalized_rating"]["good"] > report[
        "median_normalized_rating"
    ]["bad"]
    kw = report["kruskal_wallis"]
    assert kw["method"] == "kruskal-wallis" and kw["statistic"] > 0

    assert len(report["posthoc"]) == 1
    entry = report["posthoc"][0]
    assert entry["pair"] == ["bad", "good"]
    assert entry.keys() == {"pair", "statistic", "p_value", "method", "significant"}

    trend = report["rating_vs_f1"]
    assert trend["x_basis"] == "median_f1_star"
    assert set(trend["points"]) == {"bad", "good"}
    assert trend["points"]["good"][0] == 0.92  # median of the recorded f1*
    assert trend["r_squared_all"] == pytest.approx(1.0)  # two points
    # kinds were not supplied, so the split R² stay null
    assert trend["r_squared_nonrandom"] is None
    assert trend["r_squared_random_trials"] is None


def test_catalog_enrichment_switches_basis_and_splits_r2():
    records = []
    for i, (model, rating, f1) in enumerate(
        [("gt", 100, 1.0), ("mid", 60, 0.8), ("coin", 30, 0.5)]
    ):
        for r in ("r1", "r2", "r3"):
            records.append(rec(r, model, rating - 10 * (i % 2), f1=f1))
    kinds = {"gt": "ground-truth", "mid": "synthetic-noisy", "coin": "random"}
    f1_global = {"gt": 1.0, "mid": 0.82, "coin": 0.5}
    report = build_report(records, model_kinds=kinds, f1_by_model=f1_global)

    trend = report["rating_vs_f1"]
    assert trend["x_basis"] == "f1_global"
    assert trend["points"]["mid"][0] == 0.82
    assert trend["r_squared_all"] is not None
    assert trend["r_squared_nonrandom"] is not None
    # the coin records all share f1_star=0.5 → no x spread → null
    assert trend["r_squared_random_trials"] is None


def test_random_trials_r2_uses_per_record_f1():
    records = [
        rec("r1", "coin", 30, f1=0.42),
        rec("r1", "coin", 50, f1=0.58),
        rec("r1", "coin", 40, f1=0.50),
        rec("r1", "gt", 100, f1=1.0),
        rec("r2", "coin", 20, f1=0.45),
        rec("r2", "gt", 90, f1=1.0),
    ]
    report = build_report(
        records,
        model_kinds={"coin": "random", "gt": "ground-truth"},
        f1_by_model={"coin": 0.5, "gt": 1.0},
    )
    r2 = report["rating_vs_f1"]["r_squared_random_trials"]
    assert r2 is not None and 0.0 <= r2 <= 1.0


def test_missing_f1_entry_drops_the_point():
    records = [rec("r1", "a", 50, f1=0.6), rec("r1", "b", 70, f1=0.8)]
    report = build_report(records, f1_by_model={"a": 0.6})
    assert set(report["rating_vs_f1"]["points"]) == {"a"}
    assert report["rating_vs_f1"]["r_squared_all"] is None
