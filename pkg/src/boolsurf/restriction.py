"""Random restrictions and how functions collapse under them.

A restriction fixes a random subset of coordinates to random signs and
leaves the rest free.  Restricting a threshold function usually leaves
it close to a constant; the routines here measure that collapse exactly
(on small tables) and by Monte Carlo (through the polynomial), and
verify the tail/coupling inequalities that convert "close to constant"
into sensitivity statements.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from fractions import Fraction
from math import nan

import numpy as np

from .core import EXACT_CAP, TruthTable, sensitivity_profile
from .errors import CapacityError, InputError, VerificationError
from .ptf import SparsePolynomial, eval_on_cube, restrict_poly
from .seeding import chunk_sizes, resolve_workers, substream

RATE_GUIDELINE = 1.0 / 16.0
EXHAUSTIVE_CAP = 4


class Restriction:
    """Partial assignment on n coordinates: +1 or -1 fixed, 0 free."""

    __slots__ = ("n", "pattern")

    def __init__(self, pattern):
        arr = np.asarray(pattern, dtype=np.int8)
        if arr.ndim != 1:
            raise InputError("restriction pattern must be one-dimensional")
        if not np.isin(arr, (-1, 0, 1)).all():
            raise InputError("pattern entries must be -1, 0, or +1")
        arr = arr.copy()
        arr.flags.writeable = False
        self.n = arr.shape[0]
        self.pattern = arr

    @classmethod
    def from_string(cls, text: str) -> "Restriction":
        """Compact form: '+' fixed to +1, '-' fixed to -1, '*' free."""
        table = {"+": 1, "-": -1, "*": 0}
        try:
            return cls([table[ch] for ch in text])
        except KeyError as exc:
            raise InputError(f"bad restriction character {exc.args[0]!r}")

    def free_indices(self) -> np.ndarray:
        return np.flatnonzero(self.pattern == 0)

    @property
    def free_count(self) -> int:
        return int((self.pattern == 0).sum())

    def fixed_base_index(self) -> int:
        """Point-index bits contributed by coordinates fixed to -1."""
        base = 0
        for i in np.flatnonzero(self.pattern == -1):
            base |= 1 << int(i)
        return base

    def complete(self, y: int) -> int:
        """Full point index with free coordinates taken from sub-index y."""
        free = self.free_indices()
        if not 0 <= y < 1 << len(free):
            raise InputError(f"sub-index {y} out of range for {len(free)} free coordinates")
        idx = self.fixed_base_index()
        for j, i in enumerate(free):
            idx |= ((y >> j) & 1) << int(i)
        return idx

    def __repr__(self):
        chars = {1: "+", -1: "-", 0: "*"}
        return f"Restriction({''.join(chars[int(v)] for v in self.pattern)!r})"


def sample_restriction(n: int, rate: float, seed: int = 0) -> Restriction:
    """Leave each coordinate free independently with probability `rate`,
    otherwise fix it to a uniform sign."""
    return _sample_patterns(n, rate, substream(seed, 0), 1)[0]


def _sample_patterns(n: int, rate: float, rng, count: int) -> list[Restriction]:
    n = int(n)
    if n < 1:
        raise InputError("restrictions need n >= 1")
    rate = float(rate)
    if not 0.0 < rate < 1.0:
        raise InputError(f"free-rate must lie strictly in (0, 1), got {rate}")
    free = rng.random((count, n)) < rate
    signs = (1 - 2 * rng.integers(0, 2, size=(count, n), dtype=np.int8)).astype(np.int8)
    out = []
    for row in range(count):
        pattern = np.where(free[row], 0, signs[row]).astype(np.int8)
        out.append(Restriction(pattern))
    return out


def restrict_table(f: TruthTable, rho: Restriction) -> TruthTable:
    """Sub-table on the free coordinates, renumbered in increasing order."""
    if rho.n != f.n:
        raise InputError(f"restriction is on {rho.n} variables, table on {f.n}")
    free = rho.free_indices()
    ell = len(free)
    if ell > EXACT_CAP:
        raise CapacityError(f"{ell} free coordinates exceed the exact cap of {EXACT_CAP}")
    sub = np.arange(1 << ell, dtype=np.int64)
    idx = np.full(1 << ell, rho.fixed_base_index(), dtype=np.int64)
    for j, i in enumerate(free):
        idx |= ((sub >> j) & 1) << int(i)
    return TruthTable(ell, f.values[idx])


def closeness_to_constant(f: TruthTable) -> tuple[float, int]:
    """Smallest disagreement fraction with a constant, and that constant.

    Returns (delta, sign) with delta = min_a Pr[f != a]; ties between the
    two constants resolve to +1.  Always delta <= 1/2.
    """
    plus = int((f.values == 1).sum())
    minus = (1 << f.n) - plus
    if minus <= plus:
        return minus / (1 << f.n), 1
    return plus / (1 << f.n), -1


@dataclass(frozen=True)
class FailureProbEstimate:
    """Share of sampled restrictions leaving the sign function far from constant."""

    estimate: float
    stderr: float
    rejection_rate: float
    trials: int
    rejected: int


def restriction_failure_prob(p: SparsePolynomial, rate: float, delta: float,
                             trials: int, seed: int = 0, workers: int | None = None,
                             max_free: int = EXACT_CAP) -> FailureProbEstimate:
    """Probability that sign(p) restricted by a random restriction stays
    farther than `delta` from every constant.

    Samples restrictions with free-rate `rate`, restricts the polynomial,
    signs it over the free cube, and tests delta-closeness exactly.
    Samples with more than `max_free` free coordinates are rejected and
    reported through `rejection_rate` (the estimate conditions on
    acceptance).  Rates or deltas above 1/16 are allowed but draw a
    warning since the collapse guarantees degrade quickly there.
    """
    if trials < 1:
        raise InputError("need trials >= 1")
    delta = float(delta)
    if not 0.0 < delta < 1.0:
        raise InputError(f"delta must lie strictly in (0, 1), got {delta}")
    if float(rate) > RATE_GUIDELINE or delta > RATE_GUIDELINE:
        warnings.warn(
            f"rate={rate} delta={delta}: values above {RATE_GUIDELINE} are outside the "
            "regime where restriction collapse is guaranteed",
            stacklevel=2)
    if not 1 <= max_free <= EXACT_CAP:
        raise InputError(f"max_free must lie in 1..{EXACT_CAP}")
    workers = resolve_workers(workers)
    far = 0
    accepted = 0
    rejected = 0
    for index, size in enumerate(chunk_sizes(trials, workers)):
        if size == 0:
            continue
        rng = substream(seed, index)
        for rho in _sample_patterns(p.n, rate, rng, size):
            if rho.free_count > max_free:
                rejected += 1
                continue
            accepted += 1
            restricted = restrict_poly(p, rho)
            vals = eval_on_cube(restricted)
            table = TruthTable(restricted.n, np.where(vals >= 0.0, 1, -1).astype(np.int8))
            dist, _ = closeness_to_constant(table)
            if dist > delta:
                far += 1
    if accepted == 0:
        return FailureProbEstimate(nan, nan, 1.0, trials, rejected)
    est = far / accepted
    stderr = float(np.sqrt(est * (1.0 - est) / accepted))
    return FailureProbEstimate(est, stderr, rejected / trials, trials, rejected)


@dataclass(frozen=True)
class TailReport:
    """Exact tail mass at level m and its coupling certificate.

    p_e is Pr[s >= m].  coupling_lb is E[(1 - (1 - 1/m)^s) 1{s >= m}],
    the success probability of m coordinate resamplings coupled to hit a
    sensitive direction; it always sits between
    (1 - (1 - 1/m)^m) p_e >= (1 - 1/e) p_e and p_e itself.
    bound_ratio is coupling_lb / p_e (None when the tail is empty).
    """

    m: int
    p_e: Fraction
    coupling_lb: Fraction
    bound_ratio: Fraction | None
    floor: Fraction


def tail_coupling_check(f: TruthTable, m: int) -> TailReport:
    """Exact rational tail/coupling quantities at level m, with the
    sandwich floor <= coupling_lb / p_e <= 1 checked en route."""
    m = int(m)
    if f.n < 1:
        raise InputError("tail levels need a function on n >= 1 variables")
    if not 1 <= m <= f.n:
        raise InputError(f"level m must lie in 1..{f.n}, got {m}")
    counts = sensitivity_profile(f).counts
    points = 1 << f.n
    p_e = Fraction(int(counts[m:].sum()), points)
    keep = 1 - Fraction(1, m)
    coupling = Fraction(0)
    for s in range(m, f.n + 1):
        c = int(counts[s])
        if c:
            coupling += c * (1 - keep ** s)
    coupling /= points
    floor = 1 - keep ** m
    if not floor * p_e <= coupling <= p_e:
        raise VerificationError(
            f"coupling mass {coupling} escaped [{floor * p_e}, {p_e}] at level {m}")
    ratio = coupling / p_e if p_e else None
    return TailReport(m, p_e, coupling, ratio, floor)


@dataclass(frozen=True)
class SensitiveFractionReport:
    """Exhaustive audit of Pr[s >= 1] <= (ell + 1) * closeness over all
    functions on ell variables."""

    ell: int
    functions_checked: int
    violations: int
    max_ratio: float
    witness: TruthTable | None


def sensitive_fraction_bound_exhaustive(ell: int) -> SensitiveFractionReport:
    """Check, for every function on ell variables, that the fraction of
    sensitive points is at most (ell + 1) times the distance to the
    nearest constant.  Vectorised over all 2^(2^ell) functions."""
    ell = int(ell)
    if ell < 1:
        raise InputError("need ell >= 1")
    if ell > EXHAUSTIVE_CAP:
        raise CapacityError(
            f"ell={ell} means 2^{1 << ell} functions; the cap is ell <= {EXHAUSTIVE_CAP}")
    size = 1 << ell
    nfuncs = 1 << size
    codes = np.arange(nfuncs, dtype=np.uint32)
    bits = ((codes[:, None] >> np.arange(size, dtype=np.uint32)[None, :]) & 1).astype(np.int8)
    cols = np.arange(size)
    sens_any = np.zeros((nfuncs, size), dtype=bool)
    for i in range(ell):
        sens_any |= bits != bits[:, cols ^ (1 << i)]
    sensitive = sens_any.sum(axis=1)  # points with s >= 1, per function
    ones = bits.sum(axis=1, dtype=np.int64)
    miscount = np.minimum(ones, size - ones)  # 2^ell * closeness
    allowed = (ell + 1) * miscount
    violations = int((sensitive > allowed).sum())
    nontrivial = miscount > 0
    ratios = sensitive[nontrivial] / allowed[nontrivial]
    if ratios.size:
        arg = int(np.flatnonzero(nontrivial)[int(ratios.argmax())])
        witness = TruthTable(ell, 1 - 2 * bits[arg])
        max_ratio = float(ratios.max())
    else:
        witness = None
        max_ratio = 0.0
    return SensitiveFractionReport(ell, nfuncs, violations, max_ratio, witness)
