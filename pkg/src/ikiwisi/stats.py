"""Nonparametric analysis of rating tables.

The pipeline mirrors how the rating data wants to be treated: ratings are
ordinal and rater-biased, so they are mean-centered per rater, min-max
scaled across the pool, and compared with rank tests — Kruskal-Wallis
across model groups, Mann-Whitney U for pairs (exact enumeration for small
samples, tie-corrected normal approximation otherwise), Bonferroni-corrected
pairwise comparisons post hoc, and ordinary least-squares R² for the
rating-versus-F1 trend.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Mapping, Sequence, Union

import numpy as np
from scipy.stats import chi2 as _chi2
from scipy.stats import norm as _norm

from .ratings import RatingRecord


@dataclass(frozen=True)
class TestResult:
    statistic: float
    p_value: float
    method: str

    def as_dict(self) -> dict:
        return {"statistic": self.statistic, "p_value": self.p_value, "method": self.method}


def _rankdata(values: Sequence[float]) -> np.ndarray:
    """Average ranks (1-based) with ties shared."""
    arr = np.asarray(values, dtype=float)
    order = np.argsort(arr, kind="mergesort")
    ranks = np.empty(len(arr), dtype=float)
    sorted_vals = arr[order]
    i = 0
    while i < len(arr):
        j = i
        while j + 1 < len(arr) and sorted_vals[j + 1] == sorted_vals[i]:
            j += 1
        avg = (i + j) / 2.0 + 1.0  # mean of 1-based positions i+1..j+1
        ranks[order[i : j + 1]] = avg
        i = j + 1
    return ranks


def _tie_term(values: np.ndarray) -> float:
    """Sum of t³−t over tie groups of the pooled sample."""
    _, counts = np.unique(values, return_counts=True)
    return float(np.sum(counts.astype(float) ** 3 - counts))


def normalize_ratings(records: Sequence[RatingRecord]) -> list[float]:
    """Mean-center per rater, then min-max scale the pool to [0, 1].

    Centering removes each rater's personal baseline; the shared min-max
    puts everyone on one comparable scale.  A degenerate pool (all centered
    values equal) maps to 0.5 everywhere.
    """
    if not records:
        raise ValueError("normalize_ratings requires at least one record")
    by_rater: dict[str, list[int]] = {}
    for r in records:
        by_rater.setdefault(r.rater_id, []).append(r.rating)
    means = {rater: sum(vals) / len(vals) for rater, vals in by_rater.items()}
    centered = [r.rating - means[r.rater_id] for r in records]
    lo, hi = min(centered), max(centered)
    if hi == lo:
        return [0.5] * len(centered)
    span = hi - lo
    return [(v - lo) / span for v in centered]


def kruskal_wallis(groups: Sequence[Sequence[float]]) -> TestResult:
    """Tie-corrected Kruskal-Wallis H with chi-square p-value."""
    if len(groups) < 2:
        raise ValueError("kruskal_wallis requires at least two groups")
    for g in groups:
        if len(g) == 0:
            raise ValueError("kruskal_wallis groups must be non-empty")
    pooled = np.concatenate([np.asarray(g, dtype=float) for g in groups])
    n_total = len(pooled)
    ranks = _rankdata(pooled)
    h = 0.0
    offset = 0
    for g in groups:
        r_sum = float(np.sum(ranks[offset : offset + len(g)]))
        h += r_sum * r_sum / len(g)
        offset += len(g)
    h = 12.0 / (n_total * (n_total + 1)) * h - 3.0 * (n_total + 1)
    correction = 1.0 - _tie_term(pooled) / (n_total**3 - n_total)
    h = 0.0 if correction == 0.0 else h / correction
    df = len(groups) - 1
    p = float(_chi2.sf(h, df))
    return TestResult(statistic=h, p_value=p, method="kruskal-wallis")


def _exact_mwu_p(pooled_sorted_n: int, n_x: int, u_observed: float) -> float:
    """Two-tailed exact p for the min-U convention by full enumeration.

    Valid only without ties: ranks are the positions 1..n, and every
    C(n, n_x) assignment of positions to x is equally likely under the null.
    """
    n = pooled_sorted_n
    n_y = n - n_x
    base = n_x * (n_x + 1) / 2.0
    total = 0
    hits = 0
    for positions in combinations(range(1, n + 1), n_x):
        u_x = sum(positions) - base
        u = min(u_x, n_x * n_y - u_x)
        total += 1
        if u <= u_observed + 1e-12:
            hits += 1
    return hits / total


def mann_whitney_u(
    x: Sequence[float], y: Sequence[float], two_tailed: bool = True
) -> TestResult:
    """Mann-Whitney U with the min(U_x, U_y) reporting convention.

    Small samples (n_x + n_y ≤ 12, no ties) get the exact permutation
    p-value; larger or tied samples use the normal approximation with
    tie-corrected variance and a continuity correction.
    """
    if len(x) == 0 or len(y) == 0:
        raise ValueError("mann_whitney_u requires non-empty samples")
    n_x, n_y = len(x), len(y)
    pooled = np.concatenate([np.asarray(x, dtype=float), np.asarray(y, dtype=float)])
    ranks = _rankdata(pooled)
    r_x = float(np.sum(ranks[:n_x]))
    u_x = r_x - n_x * (n_x + 1) / 2.0  # wins of x over y
    u_y = n_x * n_y - u_x
    u = min(u_x, u_y)

    has_ties = len(np.unique(pooled)) < len(pooled)
    if n_x + n_y <= 12 and not has_ties:
        p_two = _exact_mwu_p(n_x + n_y, n_x, u)
        p = p_two if two_tailed else _exact_one_sided(n_x + n_y, n_x, u_x)
        return TestResult(statistic=u, p_value=min(1.0, p), method="mann-whitney-exact")

    n = n_x + n_y
    mu = n_x * n_y / 2.0
    tie_adjust = _tie_term(pooled) / (n * (n - 1)) if n > 1 else 0.0
    var = n_x * n_y / 12.0 * ((n + 1) - tie_adjust)
    if var <= 0:
        # every pooled value identical: no evidence either way
        return TestResult(statistic=u, p_value=1.0, method="mann-whitney-normal")
    sd = math.sqrt(var)
    if two_tailed:
        z = (u - mu + 0.5) / sd  # continuity correction toward the mean
        p = min(1.0, 2.0 * float(_norm.cdf(z)))
    else:
        z = (u_x - mu + 0.5) / sd
        p = float(_norm.cdf(z))
    return TestResult(statistic=u, p_value=p, method="mann-whitney-normal")


def _exact_one_sided(n: int, n_x: int, u_x_observed: float) -> float:
    """P(U_x ≤ observed) by enumeration; left tail for the first sample."""
    base = n_x * (n_x + 1) / 2.0
    total = 0
    hits = 0
    for positions in combinations(range(1, n + 1), n_x):
        u_x = sum(positions) - base
        total += 1
        if u_x <= u_x_observed + 1e-12:
            hits += 1
    return hits / total


def pairwise_posthoc(
    groups: Union[Mapping[str, Sequence[float]], Sequence[Sequence[float]]],
    alpha: float = 0.05,
) -> list[tuple[tuple[str, str], TestResult, bool]]:
    """All pairwise Mann-Whitney comparisons, Bonferroni-corrected.

    ``significant`` means p < alpha / (number of pairs).
    """
    if isinstance(groups, Mapping):
        items = list(groups.items())
    else:
        items = [(f"group{i}", g) for i, g in enumerate(groups)]
    if len(items) < 2:
        raise ValueError("pairwise_posthoc requires at least two groups")
    pairs = list(combinations(range(len(items)), 2))
    threshold = alpha / len(pairs)
    out = []
    for i, j in pairs:
        (name_i, g_i), (name_j, g_j) = items[i], items[j]
        result = mann_whitney_u(g_i, g_j, two_tailed=True)
        out.append(((name_i, name_j), result, result.p_value < threshold))
    return out


def linear_r2(points: Sequence[tuple[float, float]]) -> float:
    """Ordinary least-squares R² of y on x.

    Constant y yields 0.0 (no variance to explain); constant x is an error
    (the slope is undefined).
    """
    if len(points) < 2:
        raise ValueError("linear_r2 requires at least two points")
    xs = np.asarray([p[0] for p in points], dtype=float)
    ys = np.asarray([p[1] for p in points], dtype=float)
    if np.all(xs == xs[0]):
        raise ValueError("linear_r2 undefined when all x values are equal")
    ss_tot = float(np.sum((ys - ys.mean()) ** 2))
    if ss_tot == 0.0:
        return 0.0
    sxx = float(np.sum((xs - xs.mean()) ** 2))
    sxy = float(np.sum((xs - xs.mean()) * (ys - ys.mean())))
    slope = sxy / sxx
    intercept = float(ys.mean() - slope * xs.mean())
    residuals = ys - (slope * xs + intercept)
    ss_res = float(np.sum(residuals**2))
    return 1.0 - ss_res / ss_tot


def median(sample: Iterable[float]) -> float:
    values = sorted(sample)
    if not values:
        raise ValueError("median of empty sample")
    n = len(values)
    mid = n // 2
    if n % 2:
        return float(values[mid])
    return (values[mid - 1] + values[mid]) / 2.0
