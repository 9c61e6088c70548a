"""Simulated raters.

Human evaluators of binary heatmaps behave in documented, reproducible
ways: they inspect only a fraction of the cells, trust uni-color rows
after a spot check, verify lone outlier cells, sour quickly on checkered
grids, and punish any green in a spy row.  This module encodes those
heuristics as a parameterized policy so the rating↔F1 relationship can be
reproduced at desk scale without human subjects.

The heuristics model *partial* attention.  With ``inspection_budget=1``
(and no noise) the simulated rater has verified every cell, so the rating
is a pure monotone function of cell accuracy and the shortcuts never fire.

All stochastic choices derive from the policy seed and the grid content,
so identical inputs always yield identical ratings.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from typing import Mapping, Sequence

from .domain import Dataset, ModelDescriptor
from .metrics import f1_global
from .patterns import checkeredness, detect_patterns
from .providers import PredictionCacheFile
from .ratings import RatingRecord, ratings_to_csv
from .seeding import KeyedStream, derive_seed
from .session import DisplayGrid, EvalSession
from .stats import linear_r2, median, normalize_ratings

#: Transition rate of a fair-coin row; the reference point for "fully random".
_COIN_TRANSITION_RATE = 0.5


@dataclass(frozen=True)
class RaterPolicy:
    checkered_penalty_threshold: float = 0.35
    outlier_verify_bonus: float = 0.1
    unicolor_trust_weight: float = 0.9
    inspection_budget: float = 0.3
    noise_sd: float = 4.0
    spy_green_penalty: float = 0.5
    seed: int = 0

    def __post_init__(self):
        if not 0.0 < self.inspection_budget <= 1.0:
            raise ValueError("inspection_budget must lie in (0, 1]")
        for name in ("checkered_penalty_threshold", "outlier_verify_bonus",
                     "unicolor_trust_weight", "noise_sd", "spy_green_penalty"):
            value = getattr(self, name)
            if value != value or value in (float("inf"), float("-inf")):
                raise ValueError(f"{name} must be finite")


def _snap(value: float) -> int:
    """Clamp to the slider: multiples of 10 in 0..100."""
    return min(100, max(0, int(round(value / 10.0)) * 10))


def _grid_fingerprint(display: DisplayGrid) -> int:
    doc = {
        "objects": [[o.name, o.is_spy] for o in display.objects],
        "frames": list(display.frames),
        "rows": {o.name: list(display.shown[o.name]) for o in display.objects},
    }
    return derive_seed(json.dumps(doc, sort_keys=True, separators=(",", ":")))


def simulate_rating(
    policy: RaterPolicy,
    display: DisplayGrid,
    gt_rows: Mapping[str, Sequence[bool]],
) -> int:
    """Rate a displayed grid against ground truth, as a human skimmer would.

    ``gt_rows`` maps object name → full-segment label vector; spy objects
    may be absent (their truth is all-false).  Raises if a non-spy object
    has no ground truth or a vector is too short for the displayed frames.
    """
    if not display.objects or not display.frames:
        raise ValueError("cannot rate an empty display grid")

    frames = display.frames
    truth: dict[str, list[bool]] = {}
    for obj in display.objects:
        row = gt_rows.get(obj.name)
        if row is None:
            if not obj.is_spy:
                raise ValueError(f"no ground truth for selected object {obj.name!r}")
            truth[obj.name] = [False] * len(frames)
            continue
        if len(row) <= max(frames):
            raise ValueError(f"ground truth for {obj.name!r} shorter than displayed frames")
        truth[obj.name] = [row[f] for f in frames]

    stream = KeyedStream(policy.seed, "rating", _grid_fingerprint(display))
    shown = {o.name: display.shown[o.name] for o in display.objects}

    if policy.inspection_budget >= 1.0:
        # Full-information limit: every cell verified, no shortcuts.
        total = len(display.objects) * len(frames)
        correct = sum(
            1
            for o in display.objects
            for i in range(len(frames))
            if shown[o.name][i] == truth[o.name][i]
        )
        return _snap(100.0 * correct / total + stream.gauss(0.0, policy.noise_sd))

    # -- quick look: heavily alternating grids read as coin flips ----------
    score_rows = display.rows()
    checkered = checkeredness(score_rows)
    threshold = policy.checkered_penalty_threshold
    if checkered > threshold:
        span = max(1e-9, _COIN_TRANSITION_RATE - threshold)
        excess = min(1.0, max(0.0, (checkered - threshold) / span))
        base = 30.0 * (1.0 - excess)
        return _snap(base + stream.gauss(0.0, policy.noise_sd))

    # -- partial inspection -------------------------------------------------
    report = detect_patterns(score_rows)
    n_cols = len(frames)
    total = len(display.objects) * n_cols
    budget = max(1, round(policy.inspection_budget * total))

    inspect_order: list[tuple[str, int]] = []
    seen: set[tuple[str, int]] = set()

    def enqueue(cell: tuple[str, int]) -> None:
        if cell not in seen:
            seen.add(cell)
            inspect_order.append(cell)

    outlier_cells = {(o, f) for o, f in report.single_outliers}
    for cell in sorted(outlier_cells):
        enqueue(cell)
    for obj_name, start, _length, _color in report.outlier_islands:
        enqueue((obj_name, start))
    unicolor_names = [o for o, _ in report.uni_color_rows]
    for obj_name in unicolor_names:
        spot_checks = min(2, n_cols)
        for i in range(spot_checks):
            enqueue((obj_name, i))
    rest = [
        (o.name, i) for o in display.objects for i in range(n_cols)
        if (o.name, i) not in seen
    ]
    stream.shuffle(rest)
    for cell in rest:
        enqueue(cell)

    inspected = inspect_order[:budget]
    correct = sum(1 for name, i in inspected if shown[name][i] == truth[name][i])
    mass_correct = float(correct)
    mass_total = float(len(inspected))

    # Trusted extrapolation over uni-color rows: a clean spot check lets the
    # rater assume the rest of the row; a failed one poisons it.
    inspected_by_row: dict[str, list[tuple[int, bool]]] = {}
    for name, i in inspected:
        inspected_by_row.setdefault(name, []).append((i, shown[name][i] == truth[name][i]))
    w = policy.unicolor_trust_weight
    for obj_name in unicolor_names:
        checks = inspected_by_row.get(obj_name, [])
        if not checks:
            continue
        unseen = n_cols - len(checks)
        if unseen <= 0:
            continue
        clean = all(ok for _, ok in checks)
        mass_correct += (w if clean else (1.0 - w)) * unseen
        mass_total += unseen

    score = mass_correct / mass_total if mass_total else 0.0

    # Verified outliers tip judgment: correct ones up, wrong ones down.
    outliers_inspected = [(n, i) for n, i in inspected if (n, i) in outlier_cells]
    if outliers_inspected:
        ok = sum(1 for n, i in outliers_inspected if shown[n][i] == truth[n][i])
        frac_ok = ok / len(outliers_inspected)
        score += policy.outlier_verify_bonus * (2.0 * frac_ok - 1.0)

    # Any green in a spy row is an instant red flag.
    for obj in display.objects:
        if obj.is_spy and any(shown[obj.name]):
            score *= policy.spy_green_penalty
            break

    score = min(1.0, max(0.0, score))
    return _snap(100.0 * score + stream.gauss(0.0, policy.noise_sd))


@dataclass(frozen=True)
class ExperimentResult:
    records: tuple[RatingRecord, ...]
    summary: dict = field(default_factory=dict)

    def csv(self) -> str:
        return ratings_to_csv(self.records)


def run_experiment(
    dataset: Dataset,
    models: Sequence[ModelDescriptor],
    segments: Sequence[str],
    raters: int,
    policy: RaterPolicy,
    seed: int = 0,
    *,
    caches: Mapping[str, Mapping[str, PredictionCacheFile]] | None = None,
) -> ExperimentResult:
    """Run raters × segments × models through the real session pipeline.

    Each simulated rater picks their own objects per segment (4-8 from the
    vocabulary, with a spy half the time) and keeps that selection across
    all models, mirroring how study participants worked.  Ratings are
    recorded through :class:`EvalSession`, so every record's F1 is computed
    exactly as it would be for a human.
    """
    if raters < 1:
        raise ValueError("raters must be at least 1")
    if not models or not segments:
        raise ValueError("need at least one model and one segment")
    caches = caches or {}

    records: list[RatingRecord] = []
    for r in range(raters):
        rater_id = f"sim{r + 1:02d}"
        for segment_id in segments:
            gt = dataset.ground_truth[segment_id]
            pick = KeyedStream(seed, "selection", rater_id, segment_id)
            count = pick.randint(4, min(8, dataset.vocabulary.size))
            chosen = pick.sample(dataset.vocabulary.objects, count)
            selection = list(chosen)
            absent = [
                name
                for name in dataset.vocabulary.objects
                if name not in chosen and not any(gt.labels[name])
            ]
            if absent and pick.bernoulli(0.5):
                selection.append("*" + pick.choice(absent))

            for model in models:
                session = EvalSession.create(
                    f"sim-{seed}-{rater_id}-{segment_id}-{model.model_id}",
                    model,
                    segment_id,
                    dataset,
                    rater_id=rater_id,
                    caches=caches.get(model.model_id),
                )
                for raw_name in selection:
                    session.add_object(raw_name)
                display = session.render_display_grid()
                trial_policy = replace(
                    policy,
                    seed=derive_seed(policy.seed, seed, rater_id, model.model_id, segment_id),
                )
                rating = simulate_rating(trial_policy, display, gt.labels)
                records.append(session.record_and_reset(rating=rating))

    summary = summarize_experiment(dataset, models, records, caches=caches)
    return ExperimentResult(records=tuple(records), summary=summary)


def summarize_experiment(
    dataset: Dataset,
    models: Sequence[ModelDescriptor],
    records: Sequence[RatingRecord],
    *,
    caches: Mapping[str, Mapping[str, PredictionCacheFile]] | None = None,
) -> dict:
    """Medians of normalized ratings per model plus the two R² trends."""
    caches = caches or {}
    normalized = normalize_ratings(records)
    by_model: dict[str, list[float]] = {}
    for rec, value in zip(records, normalized):
        by_model.setdefault(rec.model_id, []).append(value)
    medians = {m: median(vals) for m, vals in by_model.items()}

    f1_by_model = {
        m.model_id: f1_global(m, dataset, caches=caches.get(m.model_id))
        for m in models
        if m.model_id in by_model
    }

    kinds = {m.model_id: m.kind for m in models}
    nonrandom_points = [
        (f1_by_model[mid], medians[mid])
        for mid in f1_by_model
        if kinds.get(mid) != "random"
    ]
    r2_nonrandom = None
    if len(nonrandom_points) >= 2 and len({x for x, _ in nonrandom_points}) >= 2:
        r2_nonrandom = linear_r2(nonrandom_points)

    random_points = [
        (rec.f1_star, value)
        for rec, value in zip(records, normalized)
        if kinds.get(rec.model_id) == "random"
    ]
    r2_random = None
    if len(random_points) >= 2 and len({x for x, _ in random_points}) >= 2:
        r2_random = linear_r2(random_points)

    return {
        "n_records": len(records),
        "median_normalized_rating": medians,
        "f1_global": f1_by_model,
        "r_squared_nonrandom": r2_nonrandom,
        "r_squared_random_trials": r2_random,
    }
