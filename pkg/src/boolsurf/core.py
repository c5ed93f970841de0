"""Exact analysis of Boolean functions on the signed hypercube.

A function f: {-1,+1}^n -> {-1,+1} is stored as its full table of 2^n
signs.  Bit i of the table index is 0 where coordinate i equals +1 and 1
where it equals -1, so ``x ^ (1 << i)`` is the neighbour of ``x`` across
coordinate i.

The pointwise sensitivity s(x) counts coordinates whose flip changes f
at x.  Everything downstream is a moment of the sensitivity histogram:
average sensitivity (total influence) is E[s], Boolean surface area is
E[sqrt(s)], and the general fractional moment is E[s^alpha].  One
O(n 2^n) vectorised scan builds the histogram; moments are dot products
against cached weight tables, so quantities related by "same summation"
claims (surface area vs the alpha = 1/2 moment, influence vs the
alpha = 1 moment) are bit-for-bit identical.

Tables are capped at EXACT_CAP variables; anything larger must go
through the Monte Carlo paths in the sibling modules.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import NamedTuple

import numpy as np

from .errors import CapacityError, InputError
from .seeding import substream

EXACT_CAP = 24


@lru_cache(maxsize=None)
def popcount_table(n: int) -> np.ndarray:
    """Popcount of every index in [0, 2^n), as a read-only uint8 array."""
    table = np.bitwise_count(np.arange(1 << n, dtype=np.uint32)).astype(np.uint8)
    table.flags.writeable = False
    return table


@lru_cache(maxsize=None)
def _moment_weights(n: int, alpha: float) -> np.ndarray:
    weights = np.arange(n + 1, dtype=np.float64) ** alpha
    weights.flags.writeable = False
    return weights


def _check_n(n: int) -> int:
    n = int(n)
    if n < 0:
        raise InputError(f"variable count must be >= 0, got {n}")
    if n > EXACT_CAP:
        raise CapacityError(f"n={n} exceeds the exact-enumeration cap of {EXACT_CAP}")
    return n


def walsh_hadamard(vec: np.ndarray) -> np.ndarray:
    """Unnormalised Walsh-Hadamard transform, in place on a float64 copy.

    Self-inverse up to a factor of len(vec).  The kernel is
    (-1)^popcount(S & x) under the index encoding above, which matches
    evaluating multilinear monomials at sign vectors.
    """
    out = np.array(vec, dtype=np.float64, copy=True)
    size = out.shape[0]
    if size == 0 or size & (size - 1):
        raise InputError(f"length must be a power of two, got {size}")
    h = 1
    while h < size:
        blocks = out.reshape(-1, 2, h)
        top = blocks[:, 0, :] + blocks[:, 1, :]
        bottom = blocks[:, 0, :] - blocks[:, 1, :]
        blocks[:, 0, :] = top
        blocks[:, 1, :] = bottom
        h *= 2
    return out


@dataclass(frozen=True)
class SensitivityProfile:
    """Histogram of pointwise sensitivity: counts[m] points have s(x) = m."""

    n: int
    counts: np.ndarray

    def __post_init__(self):
        counts = np.asarray(self.counts, dtype=np.int64)
        if counts.shape != (self.n + 1,):
            raise InputError("profile needs exactly n + 1 buckets")
        if (counts < 0).any() or int(counts.sum()) != 1 << self.n:
            raise InputError("profile buckets must be nonnegative and sum to 2^n")
        counts = counts.copy()
        counts.flags.writeable = False
        object.__setattr__(self, "counts", counts)

    @property
    def points(self) -> int:
        return 1 << self.n

    def count_ge(self, m: int) -> int:
        """Number of points with sensitivity >= m."""
        if m <= 0:
            return self.points
        if m > self.n:
            return 0
        return int(self.counts[m:].sum())

    def moment(self, alpha: float) -> float:
        """E[s^alpha] over a uniform point."""
        return float(self.counts @ _moment_weights(self.n, float(alpha))) / self.points

    def bsa(self) -> float:
        return self.moment(0.5)


class TruthTable:
    """Dense sign table of a Boolean function on n <= EXACT_CAP variables."""

    __slots__ = ("n", "values", "_profile", "_spectrum")

    def __init__(self, n: int, values):
        n = _check_n(n)
        arr = np.asarray(values)
        if arr.shape != (1 << n,):
            raise InputError(f"need exactly 2^{n} values, got shape {arr.shape}")
        arr = arr.astype(np.int8)
        if not np.isin(arr, (-1, 1)).all():
            raise InputError("table entries must be +1 or -1")
        arr.flags.writeable = False
        self.n = n
        self.values = arr
        self._profile = None
        self._spectrum = None

    def __eq__(self, other):
        return (
            isinstance(other, TruthTable)
            and self.n == other.n
            and np.array_equal(self.values, other.values)
        )

    def __hash__(self):
        return hash((self.n, self.values.tobytes()))

    def __repr__(self):
        return f"TruthTable(n={self.n}, plus={int((self.values == 1).sum())}/{1 << self.n})"

    @classmethod
    def constant(cls, n: int, sign: int = 1) -> "TruthTable":
        if sign not in (-1, 1):
            raise InputError("sign must be +1 or -1")
        return cls(n, np.full(1 << _check_n(n), sign, dtype=np.int8))

    @classmethod
    def dictator(cls, n: int, i: int = 0) -> "TruthTable":
        """f(x) = x_{i+1}: +1 where bit i of the index is clear."""
        n = _check_n(n)
        if not 0 <= i < n:
            raise InputError(f"coordinate {i} out of range for n={n}")
        return cls.parity(n, 1 << i)

    @classmethod
    def parity(cls, n: int, mask: int) -> "TruthTable":
        """Product of the coordinates in `mask` (a bitmask; 0 gives constant +1)."""
        n = _check_n(n)
        mask = int(mask)
        if not 0 <= mask < 1 << n:
            raise InputError(f"subset mask {mask} out of range for n={n}")
        odd = popcount_table(n)[np.arange(1 << n) & mask] & 1
        return cls(n, np.where(odd.astype(bool), -1, 1).astype(np.int8))

    @classmethod
    def majority(cls, n: int) -> "TruthTable":
        """Sign of the coordinate sum; ties (even n) resolve to +1."""
        n = _check_n(n)
        if n < 1:
            raise InputError("majority needs n >= 1")
        # coordinate sum = n - 2 * (number of -1 coordinates) = n - 2 * popcount
        total = n - 2 * popcount_table(n).astype(np.int32)
        return cls(n, np.where(total >= 0, 1, -1).astype(np.int8))

    @classmethod
    def random(cls, n: int, seed: int = 0) -> "TruthTable":
        n = _check_n(n)
        bits = substream(seed, 0).integers(0, 2, size=1 << n, dtype=np.int8)
        return cls(n, 1 - 2 * bits)

    def profile(self) -> SensitivityProfile:
        if self._profile is None:
            counts = np.bincount(_sensitivity_per_point(self.values, self.n),
                                 minlength=self.n + 1)
            self._profile = SensitivityProfile(self.n, counts)
        return self._profile

    def spectrum(self) -> "FourierSpectrum":
        if self._spectrum is None:
            coeffs = walsh_hadamard(self.values) / (1 << self.n)
            self._spectrum = FourierSpectrum(self.n, coeffs)
        return self._spectrum


def _sensitivity_per_point(values: np.ndarray, n: int) -> np.ndarray:
    """Vector of s(x) for every index x, via n reshaped slice comparisons."""
    sens = np.zeros(len(values), dtype=np.uint8)
    for i in range(n):
        pairs = values.reshape(-1, 2, 1 << i)
        differs = pairs[:, 0, :] != pairs[:, 1, :]
        halves = sens.reshape(-1, 2, 1 << i)
        halves[:, 0, :] += differs
        halves[:, 1, :] += differs
    return sens


class FourierSpectrum:
    """Walsh coefficients indexed by subset bitmask."""

    __slots__ = ("n", "coefficients")

    def __init__(self, n: int, coefficients):
        n = _check_n(n)
        arr = np.asarray(coefficients, dtype=np.float64)
        if arr.shape != (1 << n,):
            raise InputError(f"need exactly 2^{n} coefficients")
        arr = arr.copy()
        arr.flags.writeable = False
        self.n = n
        self.coefficients = arr

    def parseval_sum(self) -> float:
        """Sum of squared coefficients; equals E[f^2] = 1 for Boolean f."""
        return float(self.coefficients @ self.coefficients)

    def inverse_values(self) -> np.ndarray:
        """Pointwise values of the represented function."""
        return walsh_hadamard(self.coefficients)

    def inverse_table(self) -> TruthTable:
        """Round the inverse back to signs; exact for spectra of sign tables."""
        vals = self.inverse_values()
        return TruthTable(self.n, np.where(vals >= 0, 1, -1).astype(np.int8))


class Influence(NamedTuple):
    total: float
    per_coordinate: np.ndarray


def sensitivity(f: TruthTable, x: int) -> int:
    """Number of coordinate flips that change f at point index x."""
    x = int(x)
    if not 0 <= x < 1 << f.n:
        raise InputError(f"point index {x} out of range for n={f.n}")
    return int(sum(f.values[x] != f.values[x ^ (1 << i)] for i in range(f.n)))


def sensitivity_profile(f: TruthTable) -> SensitivityProfile:
    return f.profile()


def bsa(f: TruthTable) -> float:
    """Boolean surface area E[sqrt(s(x))]."""
    return f.profile().bsa()


def fractional_moment(f: TruthTable, alpha: float) -> float:
    """E[s(x)^alpha] for 0 < alpha <= 1."""
    alpha = float(alpha)
    if not 0.0 < alpha <= 1.0:
        raise InputError(f"alpha must lie in (0, 1], got {alpha}")
    return f.profile().moment(alpha)


def bsa_via_tails(f: TruthTable) -> float:
    """Surface area through the tail sum over levels m of sqrt.

    E[sqrt(s)] = sum_{m>=1} (sqrt(m) - sqrt(m-1)) P[s >= m]; this is the
    summation-by-parts route and must agree with the histogram route.
    """
    profile = f.profile()
    counts = profile.counts
    tail = np.cumsum(counts[::-1])[::-1]  # tail[m] = #points with s >= m
    roots = np.sqrt(np.arange(profile.n + 1, dtype=np.float64))
    steps = roots[1:] - roots[:-1]
    return float(steps @ tail[1:]) / profile.points


def total_influence(f: TruthTable) -> Influence:
    """Average sensitivity, total and split by coordinate.

    total is computed from the sensitivity histogram (the alpha = 1
    moment); per-coordinate values come from one pair-disagreement scan
    per axis, and their exact integer sums agree by the handshake count.
    """
    per = np.empty(f.n, dtype=np.float64)
    points = 1 << f.n
    for i in range(f.n):
        pairs = f.values.reshape(-1, 2, 1 << i)
        per[i] = 2 * int((pairs[:, 0, :] != pairs[:, 1, :]).sum()) / points
    return Influence(f.profile().moment(1.0), per)


def fourier_transform(f: TruthTable) -> FourierSpectrum:
    return f.spectrum()


def _check_delta(delta: float) -> float:
    delta = float(delta)
    if not 0.0 < delta < 0.5:
        raise InputError(f"noise rate must lie strictly in (0, 1/2), got {delta}")
    return delta


def noise_sensitivity(f: TruthTable, delta: float) -> float:
    """Probability that rerandomising each coordinate w.p. delta flips f.

    Computed from the spectrum as sum_S w(|S|) coeff(S)^2 with the level
    weight accumulated in the geometric form
    w(k) = delta * (1 + rho + ... + rho^(k-1)), rho = 1 - 2 delta,
    which keeps single-coordinate functions exactly at delta.
    """
    delta = _check_delta(delta)
    rho = 1.0 - 2.0 * delta
    powers = rho ** np.arange(f.n + 1, dtype=np.float64)
    weights = np.concatenate(([0.0], delta * np.cumsum(powers[:-1])))
    coeffs = f.spectrum().coefficients
    return float(weights[popcount_table(f.n)] @ (coeffs * coeffs))


def noise_sensitivity_semigroup(f: TruthTable, delta: float) -> float:
    """Same quantity through the smoothing route E|f - T_rho f| / 2."""
    delta = _check_delta(delta)
    rho = 1.0 - 2.0 * delta
    coeffs = f.spectrum().coefficients * rho ** popcount_table(f.n).astype(np.float64)
    smoothed = walsh_hadamard(coeffs)
    return float(np.abs(f.values - smoothed).mean() / 2.0)


def index_to_point(n: int, x: int) -> np.ndarray:
    """Coordinate signs of point index x (bit set means -1)."""
    n = _check_n(n)
    x = int(x)
    if not 0 <= x < 1 << n:
        raise InputError(f"point index {x} out of range for n={n}")
    bits = (x >> np.arange(n)) & 1
    return (1 - 2 * bits).astype(np.int8)


def point_to_index(signs) -> int:
    """Inverse of index_to_point."""
    arr = np.asarray(signs, dtype=np.int8)
    if arr.ndim != 1 or not np.isin(arr, (-1, 1)).all():
        raise InputError("point must be a 1-D sequence of +1/-1 signs")
    idx = 0
    for i, v in enumerate(arr):
        if v == -1:
            idx |= 1 << i
    return idx


def all_points_signs(n: int) -> np.ndarray:
    """Matrix of coordinate signs, shape (2^n, n): row x is the point for index x."""
    n = _check_n(n)
    idx = np.arange(1 << n, dtype=np.int64)
    bits = (idx[:, None] >> np.arange(n)[None, :]) & 1
    return (1 - 2 * bits).astype(np.float64)
