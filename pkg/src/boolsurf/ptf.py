"""Multilinear polynomials over the signed hypercube and their sign functions.

A polynomial is a sparse map from variable subsets (bitmasks) to real
coefficients.  Subsets rather than exponent vectors because squares of
signs collapse: every polynomial function of signs is multilinear.
Signing a polynomial gives a threshold function; ties p(x) = 0 resolve
to +1 and are counted so callers can detect degenerate inputs.

Storage allows up to STORAGE_CAP variables (masks stay machine ints);
dense evaluation over all 2^n points additionally needs n <= the exact
cap from the core module.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import comb
from typing import TYPE_CHECKING, NamedTuple

import numpy as np

from .core import EXACT_CAP, TruthTable, all_points_signs, walsh_hadamard
from .errors import CapacityError, DegenerateInputError, InputError
from .seeding import Estimate, mc_values, mean_and_stderr, substream

if TYPE_CHECKING:
    from .restriction import Restriction

STORAGE_CAP = 64
GENERATE_TERM_CAP = 1_000_000
ALPHA_EXACT_CAP = 11


class SparsePolynomial:
    """Immutable sparse multilinear polynomial on n variables.

    `terms` maps a subset bitmask (bit i set means variable i appears)
    to a nonzero float coefficient; iteration order is sorted by mask,
    so every evaluation and serialisation order is deterministic.
    """

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms):
        n = int(n)
        if n < 0:
            raise InputError(f"variable count must be >= 0, got {n}")
        if n > STORAGE_CAP:
            raise CapacityError(f"n={n} exceeds the storage cap of {STORAGE_CAP} variables")
        source = dict(terms)
        clean: dict[int, float] = {}
        for mask in sorted(int(m) for m in source):
            coef = float(source[mask])
            if not 0 <= mask < 1 << n:
                raise InputError(f"term mask {mask} out of range for n={n}")
            if not np.isfinite(coef):
                raise InputError(f"coefficient for mask {mask} is not finite")
            if coef != 0.0:
                clean[mask] = coef
        self.n = n
        self.terms = clean

    def __eq__(self, other):
        return (
            isinstance(other, SparsePolynomial)
            and self.n == other.n
            and self.terms == other.terms
        )

    def __repr__(self):
        return f"SparsePolynomial(n={self.n}, nterms={len(self.terms)}, degree={self.degree})"

    @property
    def degree(self) -> int:
        """Largest subset size with a nonzero coefficient; 0 for the zero polynomial."""
        if not self.terms:
            return 0
        return max(int(m).bit_count() for m in self.terms)

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @classmethod
    def from_json_dict(cls, data) -> "SparsePolynomial":
        """Build from {"n": ..., "terms": [{"vars": [...], "coef": ...}, ...]}.

        Variables are 1-indexed lists; a repeated variable inside one
        term is rejected (it would not be multilinear).  Terms sharing
        the same subset are summed.
        """
        if not isinstance(data, dict):
            raise InputError("polynomial JSON must be an object")
        try:
            n = int(data["n"])
            raw_terms = data["terms"]
        except (KeyError, TypeError, ValueError) as exc:
            raise InputError(f"polynomial JSON needs integer 'n' and a 'terms' list: {exc}")
        if not isinstance(raw_terms, list):
            raise InputError("'terms' must be a list")
        acc: dict[int, float] = {}
        for pos, term in enumerate(raw_terms):
            try:
                variables = list(term["vars"])
                coef = float(term["coef"])
            except (KeyError, TypeError, ValueError) as exc:
                raise InputError(f"term {pos} needs 'vars' and numeric 'coef': {exc}")
            mask = 0
            for v in variables:
                v = int(v)
                if not 1 <= v <= n:
                    raise InputError(f"term {pos}: variable {v} out of range 1..{n}")
                bit = 1 << (v - 1)
                if mask & bit:
                    raise InputError(f"term {pos}: variable {v} repeated")
                mask |= bit
            acc[mask] = acc.get(mask, 0.0) + coef
        return cls(n, acc)

    def to_json_dict(self) -> dict:
        terms = []
        for mask, coef in self.terms.items():
            variables = [i + 1 for i in range(self.n) if mask >> i & 1]
            terms.append({"vars": variables, "coef": coef})
        return {"n": self.n, "terms": terms}

    @classmethod
    def from_truth_table(cls, table: TruthTable) -> "SparsePolynomial":
        """Exact multilinear interpolation via the Walsh spectrum."""
        coeffs = table.spectrum().coefficients
        return cls(table.n, {int(m): float(c) for m, c in enumerate(coeffs) if c != 0.0})


def eval_poly(p: SparsePolynomial, x: int) -> float:
    """Value at point index x (same bit encoding as truth tables)."""
    x = int(x)
    if not 0 <= x < 1 << p.n:
        raise InputError(f"point index {x} out of range for n={p.n}")
    total = 0.0
    for mask, coef in p.terms.items():
        total += -coef if (mask & x).bit_count() & 1 else coef
    return total


def eval_on_cube(p: SparsePolynomial) -> np.ndarray:
    """Values at every point index, through the fast transform."""
    if p.n > EXACT_CAP:
        raise CapacityError(f"n={p.n} exceeds the exact-enumeration cap of {EXACT_CAP}")
    dense = np.zeros(1 << p.n, dtype=np.float64)
    for mask, coef in p.terms.items():
        dense[mask] = coef
    return walsh_hadamard(dense)


def sign_table(p: SparsePolynomial) -> tuple[TruthTable, int]:
    """Threshold function sign(p) and the number of exact zero evaluations.

    sign(0) = +1 by convention; a large zero count signals a degenerate
    polynomial whose threshold function is sensitive to perturbation.
    """
    vals = eval_on_cube(p)
    zero_hits = int((vals == 0.0).sum())
    table = TruthTable(p.n, np.where(vals >= 0.0, 1, -1).astype(np.int8))
    return table, zero_hits


def restrict_poly(p: SparsePolynomial, rho: "Restriction") -> SparsePolynomial:
    """Substitute the fixed coordinates of `rho` and re-collect terms.

    The result lives on the free coordinates, renumbered in increasing
    order of original index, matching how table restriction renumbers.
    """
    if rho.n != p.n:
        raise InputError(f"restriction is on {rho.n} variables, polynomial on {p.n}")
    free = [int(i) for i in rho.free_indices()]
    position = {i: j for j, i in enumerate(free)}
    pattern = rho.pattern
    acc: dict[int, float] = {}
    for mask, coef in p.terms.items():
        new_mask = 0
        sign = 1
        for i in range(p.n):
            if not mask >> i & 1:
                continue
            fixed = int(pattern[i])
            if fixed == 0:
                new_mask |= 1 << position[i]
            elif fixed == -1:
                sign = -sign
        acc[new_mask] = acc.get(new_mask, 0.0) + sign * coef
    return SparsePolynomial(len(free), {m: c for m, c in acc.items() if c != 0.0})


class PolyStats(NamedTuple):
    variance: float
    influences: np.ndarray
    regular_tau: float


def poly_stats(p: SparsePolynomial) -> PolyStats:
    """Fourier-side variance, per-variable influences, and regularity ratio.

    variance = sum of squared coefficients over nonempty subsets,
    influence_i = same sum over subsets containing i, and
    regular_tau = max_i influence_i / variance (0 when the variance is 0,
    i.e. for constants).  For sign tables these influences coincide with
    the combinatorial per-coordinate influence.
    """
    if p.is_zero:
        raise DegenerateInputError("statistics of the zero polynomial are undefined")
    influences = np.zeros(p.n, dtype=np.float64)
    variance = 0.0
    for mask, coef in p.terms.items():
        sq = coef * coef
        if mask:
            variance += sq
        for i in range(p.n):
            if mask >> i & 1:
                influences[i] += sq
    tau = float(influences.max() / variance) if variance > 0.0 and p.n else 0.0
    return PolyStats(variance, influences, tau)


def _term_columns(p: SparsePolynomial):
    masks = list(p.terms)
    coefs = np.array([p.terms[m] for m in masks], dtype=np.float64)
    cols = [[i for i in range(p.n) if m >> i & 1] for m in masks]
    return coefs, cols


def _gradient_ratio(chi: np.ndarray, sb: np.ndarray, coefs: np.ndarray) -> np.ndarray:
    """min(1, (sum c chi sb / sum c chi)^2) rowwise, with 0/0 capped at 1."""
    pv = chi @ coefs
    dv = (chi * sb) @ coefs
    safe = np.where(pv == 0.0, 1.0, pv)
    ratio = np.minimum(1.0, (dv / safe) ** 2)
    return np.where(pv == 0.0, 1.0, ratio)


def alpha_estimate(p: SparsePolynomial, trials: int, seed: int = 0,
                   workers: int | None = None) -> Estimate:
    """Monte Carlo mean of min(1, |directional derivative / value|^2).

    Each trial draws a uniform point A and independent uniform signs B
    and forms the derivative of p at A along B, i.e. each monomial is
    weighted by the signed count of its variables under B.  Contributes
    1 when p(A) = 0.  Decay of this mean under restriction drives the
    surface-area bounds for polynomial threshold functions.
    """
    if p.is_zero:
        raise DegenerateInputError("alpha of the zero polynomial is undefined")
    if trials < 1:
        raise InputError("need trials >= 1")
    coefs, cols = _term_columns(p)

    def draw(rng, size):
        a_bits = rng.integers(0, 2, size=(size, p.n), dtype=np.int8)
        b_signs = 1.0 - 2.0 * rng.integers(0, 2, size=(size, p.n), dtype=np.int8)
        chi = np.empty((size, len(coefs)), dtype=np.float64)
        sb = np.empty((size, len(coefs)), dtype=np.float64)
        for t, c in enumerate(cols):
            if c:
                chi[:, t] = 1.0 - 2.0 * (a_bits[:, c].sum(axis=1) & 1)
                sb[:, t] = b_signs[:, c].sum(axis=1)
            else:
                chi[:, t] = 1.0
                sb[:, t] = 0.0
        return _gradient_ratio(chi, sb, coefs)

    values = mc_values(trials, seed, workers, draw)
    return Estimate(*mean_and_stderr(values))


def alpha_exact(p: SparsePolynomial) -> float:
    """Exact value of the alpha average by enumerating all (A, B) pairs."""
    if p.is_zero:
        raise DegenerateInputError("alpha of the zero polynomial is undefined")
    if p.n > ALPHA_EXACT_CAP:
        raise CapacityError(
            f"exact alpha enumerates 4^n pairs; n={p.n} exceeds the cap of {ALPHA_EXACT_CAP}")
    coefs, cols = _term_columns(p)
    points = 1 << p.n
    signs = all_points_signs(p.n)  # (points, n)
    chi = np.empty((points, len(coefs)), dtype=np.float64)
    var_count = np.zeros((len(coefs), p.n), dtype=np.float64)
    for t, c in enumerate(cols):
        chi[:, t] = signs[:, c].prod(axis=1) if c else 1.0
        var_count[t, c] = 1.0
    pv = chi @ coefs  # p(A) for every A
    # derivative values for every (A, B): rows A, columns B
    weighted = chi * coefs[None, :]  # (points, terms)
    dv = (weighted @ var_count) @ signs.T  # (points_A, points_B)
    safe = np.where(pv == 0.0, 1.0, pv)
    ratio = np.minimum(1.0, (dv / safe[:, None]) ** 2)
    ratio[pv == 0.0, :] = 1.0
    return float(ratio.mean())


def generate(kind: str, n: int, *, subset: int | None = None, degree: int | None = None,
             nterms: int | None = None, seed: int = 0) -> SparsePolynomial:
    """Named polynomial families.

    kinds: "majority" (sum of all variables), "harmonic" (sum of
    x_i / sqrt(i)), "parity" (single monomial on `subset`), "random"
    (standard normal coefficient on every subset of size <= `degree`),
    "random-sparse" (same but on `nterms` subsets sampled without
    replacement).
    """
    n = int(n)
    if n < 1:
        raise InputError("generator needs n >= 1")
    if n > STORAGE_CAP:
        raise CapacityError(f"n={n} exceeds the storage cap of {STORAGE_CAP} variables")
    kind = kind.lower()
    if kind in ("majority", "maj"):
        return SparsePolynomial(n, {1 << i: 1.0 for i in range(n)})
    if kind in ("harmonic", "harm"):
        return SparsePolynomial(n, {1 << i: 1.0 / np.sqrt(i + 1.0) for i in range(n)})
    if kind in ("parity", "par"):
        if subset is None:
            raise InputError("parity needs a subset mask")
        subset = int(subset)
        if not 0 <= subset < 1 << n:
            raise InputError(f"subset mask {subset} out of range for n={n}")
        return SparsePolynomial(n, {subset: 1.0})
    if kind in ("random", "rand", "random-sparse", "rands"):
        if degree is None:
            raise InputError("random polynomials need a degree")
        degree = int(degree)
        if not 0 <= degree <= n:
            raise InputError(f"degree must lie in 0..{n}, got {degree}")
        count = sum(comb(n, k) for k in range(degree + 1))
        if count > GENERATE_TERM_CAP:
            raise CapacityError(f"{count} candidate terms exceed the cap of {GENERATE_TERM_CAP}")
        masks = []
        for k in range(degree + 1):
            for combo in combinations(range(n), k):
                mask = 0
                for i in combo:
                    mask |= 1 << i
                masks.append(mask)
        rng = substream(seed, 0)
        if kind in ("random-sparse", "rands"):
            if nterms is None:
                raise InputError("sparse random polynomials need a term count")
            nterms = int(nterms)
            if not 1 <= nterms <= count:
                raise InputError(f"term count must lie in 1..{count}, got {nterms}")
            chosen = sorted(rng.choice(len(masks), size=nterms, replace=False))
            masks = [masks[j] for j in chosen]
        coefs = rng.standard_normal(len(masks))
        return SparsePolynomial(n, dict(zip(masks, coefs)))
    raise InputError(f"unknown polynomial family {kind!r}")
