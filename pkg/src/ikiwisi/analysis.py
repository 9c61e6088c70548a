"""Assembles the analysis report over a table of rating records.

One JSON-shaped report serves the HTTP analysis endpoint, the ``analyze``
CLI command, and the simulated-experiment summary checks: normalized
ratings, per-model medians, the Kruskal-Wallis test across models,
Bonferroni-corrected pairwise comparisons, and the rating-versus-F1 trend.

When the caller can supply model kinds and dataset-level F1 (a loaded
catalog), the trend uses F1 over the whole dataset and separates random
from non-random conditions; with a bare CSV it falls back to per-model
median selection-level F1 and reports the overall fit only.  Anything not
computable from the given records is reported as null, never guessed.
"""
from __future__ import annotations

from typing import Mapping, Sequence

from .ratings import RatingRecord
from .stats import (
    kruskal_wallis,
    linear_r2,
    median,
    normalize_ratings,
    pairwise_posthoc,
)


def _maybe_r2(points: Sequence[tuple[float, float]]) -> float | None:
    if len(points) < 2 or len({x for x, _ in points}) < 2:
        return None
    return linear_r2(points)


def build_report(
    records: Sequence[RatingRecord],
    *,
    model_kinds: Mapping[str, str] | None = None,
    f1_by_model: Mapping[str, float] | None = None,
) -> dict:
    if not records:
        return {
            "n_records": 0,
            "models": [],
            "raters": [],
            "rows": [],
            "median_normalized_rating": {},
            "median_f1_star": {},
            "kruskal_wallis": None,
            "posthoc": None,
            "rating_vs_f1": None,
        }

    normalized = normalize_ratings(records)
    rows = []
    by_model: dict[str, list[float]] = {}
    f1_star_by_model: dict[str, list[float]] = {}
    for rec, value in zip(records, normalized):
        rows.append(
            {
                "rater_id": rec.rater_id,
                "model_id": rec.model_id,
                "segment_id": rec.segment_id,
                "rating": rec.rating,
                "f1_star": rec.f1_star,
                "completion_seconds": rec.completion_seconds,
                "normalized_rating": value,
            }
        )
        by_model.setdefault(rec.model_id, []).append(value)
        f1_star_by_model.setdefault(rec.model_id, []).append(rec.f1_star)

    models = sorted(by_model)
    medians = {m: median(by_model[m]) for m in models}
    median_f1_star = {m: median(f1_star_by_model[m]) for m in models}

    kw = None
    posthoc = None
    if len(models) >= 2:
        kw = kruskal_wallis([by_model[m] for m in models]).as_dict()
        posthoc = [
            {
                "pair": [a, b],
                "statistic": result.statistic,
                "p_value": result.p_value,
                "method": result.method,
                "significant": significant,
            }
            for (a, b), result, significant in pairwise_posthoc(
                {m: by_model[m] for m in models}
            )
        ]

    # Rating-versus-F1 trend.  x per model: dataset-level F1 when known,
    # otherwise the median of the recorded selection-level scores.
    if f1_by_model is not None:
        x_basis = "f1_global"
        x_by_model = {m: f1_by_model[m] for m in models if m in f1_by_model}
    else:
        x_basis = "median_f1_star"
        x_by_model = median_f1_star
    points = {m: (x_by_model[m], medians[m]) for m in models if m in x_by_model}

    r2_all = _maybe_r2(list(points.values()))
    r2_nonrandom = None
    r2_random_trials = None
    if model_kinds is not None:
        nonrandom = [points[m] for m in points if model_kinds.get(m) != "random"]
        r2_nonrandom = _maybe_r2(nonrandom)
        random_trials = [
            (row["f1_star"], row["normalized_rating"])
            for row in rows
            if model_kinds.get(row["model_id"]) == "random"
        ]
        r2_random_trials = _maybe_r2(random_trials)

    return {
        "n_records": len(records),
        "models": models,
        "raters": sorted({rec.rater_id for rec in records}),
        "rows": rows,
        "median_normalized_rating": medians,
        "median_f1_star": median_f1_star,
        "kruskal_wallis": kw,
        "posthoc": posthoc,
        "rating_vs_f1": {
            "x_basis": x_basis,
            "points": {m: list(p) for m, p in points.items()},
            "r_squared_all": r2_all,
            "r_squared_nonrandom": r2_nonrandom,
            "r_squared_random_trials": r2_random_trials,
        },
    }
