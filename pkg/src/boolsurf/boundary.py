"""Boundary geometry: where the sensitivity of a function concentrates.

The square root of sensitivity has variance Inf[f] - BSA[f]^2, which is
zero exactly when s is constant on the cube (parities).  Sampling an
edge of the boundary (a point weighted by its sensitivity) instead of a
uniform point shifts mass towards sensitive points: at least half of the
edge-weighted mass sits at sensitivity >= Inf^2 / (4 BSA^2).  These
reports quantify both effects and audit the threshold claim, including
exhaustively over every function on up to 4 variables.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import TruthTable, popcount_table, sensitivity_profile, total_influence
from .errors import CapacityError, InputError

EXHAUSTIVE_CAP = 4


@dataclass(frozen=True)
class BoundaryReport:
    """Summary statistics of the sensitivity distribution of one function."""

    n: int
    influence: float
    bsa: float
    var_sqrt_sens: float
    vertex_boundary_fraction: float
    threshold: float | None
    edge_biased_prob: float | None
    is_constant: bool


def boundary_report(f: TruthTable) -> BoundaryReport:
    """Influence, surface area, Var(sqrt(s)), vertex boundary mass, and
    the edge-biased tail at the threshold Inf^2 / (4 BSA^2).

    Constants get the degenerate report (all zeros, threshold None).
    """
    profile = sensitivity_profile(f)
    influence = profile.moment(1.0)
    area = profile.bsa()
    var = influence - area * area
    vertex_fraction = profile.count_ge(1) / profile.points
    if influence == 0.0:
        return BoundaryReport(f.n, 0.0, 0.0, 0.0, 0.0, None, None, True)
    threshold = influence * influence / (4.0 * area * area)
    tail = _edge_mass_at_least(profile, threshold)
    return BoundaryReport(f.n, influence, area, var, vertex_fraction,
                          threshold, tail, False)


def _edge_mass_at_least(profile, threshold: float) -> float:
    """Edge-biased probability of sensitivity >= threshold.

    A boundary edge is sampled by picking a point with probability
    proportional to s(x); the chance it has s >= t is
    sum_{m >= t} m * counts[m] / sum_m m * counts[m].
    """
    levels = np.arange(profile.n + 1, dtype=np.float64)
    mass = levels * profile.counts
    total = mass.sum()
    return float(mass[levels >= threshold].sum() / total)


def edge_biased_cdf(f: TruthTable, t: float) -> float:
    """Edge-biased probability of sensitivity <= t (complement of the tail)."""
    profile = sensitivity_profile(f)
    if profile.moment(1.0) == 0.0:
        raise InputError("edge-biased sampling is undefined for constant functions")
    levels = np.arange(profile.n + 1, dtype=np.float64)
    mass = levels * profile.counts
    return float(mass[levels <= t].sum() / mass.sum())


@dataclass(frozen=True)
class EdgeThresholdCheck:
    """Result of the half-mass-at-threshold audit for one function."""

    threshold: float
    edge_biased_prob: float
    margin: float
    passed: bool


def edge_threshold_check(f: TruthTable) -> EdgeThresholdCheck:
    """Verify that at least half the edge-biased mass has
    s >= Inf^2 / (4 BSA^2).  Errors on constant functions."""
    report = boundary_report(f)
    if report.is_constant:
        raise InputError("threshold check is undefined for constant functions")
    margin = report.edge_biased_prob - 0.5
    return EdgeThresholdCheck(report.threshold, report.edge_biased_prob,
                              margin, margin >= 0.0)


@dataclass(frozen=True)
class ExhaustiveEdgeReport:
    """Aggregate of edge_threshold_check over every nonconstant function."""

    n: int
    functions_checked: int
    failures: int
    min_margin: float


def edge_threshold_check_exhaustive(n: int) -> ExhaustiveEdgeReport:
    """Run the threshold audit on all 2^(2^n) - 2 nonconstant functions.

    Vectorised: one (functions x points) sensitivity matrix instead of
    per-function tables.
    """
    n = int(n)
    if n < 1:
        raise InputError("need n >= 1")
    if n > EXHAUSTIVE_CAP:
        raise CapacityError(
            f"n={n} means 2^{1 << n} functions; the cap is n <= {EXHAUSTIVE_CAP}")
    size = 1 << n
    nfuncs = 1 << size
    codes = np.arange(nfuncs, dtype=np.uint32)
    bits = ((codes[:, None] >> np.arange(size, dtype=np.uint32)[None, :]) & 1).astype(np.int8)
    cols = np.arange(size)
    sens = np.zeros((nfuncs, size), dtype=np.uint8)
    for i in range(n):
        sens += bits != bits[:, cols ^ (1 << i)]
    sens64 = sens.astype(np.int64)
    edge_sum = sens64.sum(axis=1)  # 2^n * Inf, integer
    nonconstant = edge_sum > 0
    sqrt_sum = np.sqrt(sens64).sum(axis=1)  # 2^n * BSA
    # threshold in integer-comparable form: s >= edge_sum^2 / (4 sqrt_sum^2)
    thresholds = np.zeros(nfuncs)
    thresholds[nonconstant] = (edge_sum[nonconstant] / sqrt_sum[nonconstant]) ** 2 / 4.0
    above = sens64 >= thresholds[:, None]
    heavy = (sens64 * above).sum(axis=1)
    margins = np.full(nfuncs, np.inf)
    margins[nonconstant] = heavy[nonconstant] / edge_sum[nonconstant] - 0.5
    failures = int((margins[nonconstant] < 0.0).sum())
    return ExhaustiveEdgeReport(n, int(nonconstant.sum()), failures,
                                float(margins[nonconstant].min()))


def level_sign_counts(f: TruthTable) -> list[tuple[int, int, int]]:
    """Per Hamming level of the index (number of -1 coordinates):
    (level, count of +1 outputs, count of -1 outputs)."""
    weights = popcount_table(f.n)
    rows = []
    for level in range(f.n + 1):
        at_level = f.values[weights == level]
        plus = int((at_level == 1).sum())
        rows.append((level, plus, int(at_level.size - plus)))
    return rows


def chain_tail_bound_holds(f: TruthTable, t: float) -> tuple[bool, float, float]:
    """Check the low-sensitivity edge-mass bound
    Pr_edge[s <= t] <= sqrt(t) * BSA / Inf; returns (ok, lhs, rhs)."""
    if t < 0:
        raise InputError("threshold t must be nonnegative")
    report = boundary_report(f)
    if report.is_constant:
        raise InputError("edge-biased sampling is undefined for constant functions")
    lhs = edge_biased_cdf(f, t)
    rhs = float(np.sqrt(t) * report.bsa / report.influence)
    return lhs <= rhs + 1e-12, lhs, rhs


def influence_report(f: TruthTable):
    """Convenience passthrough used by the CLI: total and per-coordinate."""
    return total_influence(f)
