import math

import numpy as np
import pytest

from boolsurf.core import (EXACT_CAP, FourierSpectrum, TruthTable,
                           all_points_signs, bsa, bsa_via_tails,
                           fourier_transform, fractional_moment,
                           index_to_point, noise_sensitivity,
                           noise_sensitivity_semigroup, point_to_index,
                           sensitivity, sensitivity_profile, total_influence,
                           walsh_hadamard)
from boolsurf.errors import CapacityError, InputError


def brute_sensitivity(values, n, x):
    """Independent reference: explicit flip loop, no vectorisation."""
    return sum(1 for i in range(n) if values[x] != values[x ^ (1 << i)])


def brute_profile(table):
    counts = [0] * (table.n + 1)
    for x in range(1 << table.n):
        counts[brute_sensitivity(table.values, table.n, x)] += 1
    return counts


# ---------------------------------------------------------------- tables


def test_table_validation():
    with pytest.raises(InputError):
        TruthTable(2, [1, 1, 1])  # wrong length
    with pytest.raises(InputError):
        TruthTable(1, [1, 0])  # bad entry
    with pytest.raises(InputError):
        TruthTable(-1, [])
    with pytest.raises(CapacityError):
        TruthTable(EXACT_CAP + 1, [1])


def test_zero_variable_table_is_legal():
    f = TruthTable.constant(0, -1)
    assert f.values.tolist() == [-1]
    assert sensitivity_profile(f).counts.tolist() == [1]
    assert bsa(f) == 0.0
    total, per = total_influence(f)
    assert total == 0.0 and per.size == 0


def test_point_encoding_round_trip():
    n = 6
    for x in range(1 << n):
        assert point_to_index(index_to_point(n, x)) == x
    # bit i set <=> coordinate i is -1, and XOR flips exactly that coordinate
    point = index_to_point(n, 0b101)
    assert point.tolist() == [-1, 1, -1, 1, 1, 1]
    flipped = index_to_point(n, 0b101 ^ (1 << 1))
    assert flipped[1] == -point[1]
    assert (flipped[[0, 2, 3, 4, 5]] == point[[0, 2, 3, 4, 5]]).all()


def test_all_points_signs_matches_scalar_encoding():
    signs = all_points_signs(4)
    for x in range(16):
        assert (signs[x] == index_to_point(4, x)).all()


# ---------------------------------------------------------------- sensitivity


def test_sensitivity_majority5_weight3_point():
    f = TruthTable.majority(5)
    x = 0b00011  # two coordinates at -1, three at +1
    assert sensitivity(f, x) == 3
    assert sensitivity(f, x) == brute_sensitivity(f.values, 5, x)


def test_sensitivity_constant_and_embedded_parity():
    c = TruthTable.constant(4)
    assert all(sensitivity(c, x) == 0 for x in range(16))
    chi = TruthTable.parity(5, 0b00011)
    assert all(sensitivity(chi, x) == 2 for x in range(32))


def test_sensitivity_index_range():
    f = TruthTable.majority(3)
    with pytest.raises(InputError):
        sensitivity(f, 8)
    with pytest.raises(InputError):
        sensitivity(f, -1)


def test_profile_majority5():
    counts = sensitivity_profile(TruthTable.majority(5)).counts
    assert counts.tolist() == [12, 0, 0, 20, 0, 0]


def test_profile_dictator_and_full_parity():
    assert sensitivity_profile(TruthTable.dictator(6, 2)).counts.tolist() \
        == [0, 64, 0, 0, 0, 0, 0]
    par = sensitivity_profile(TruthTable.parity(5, 0b11111))
    assert par.counts.tolist() == [0, 0, 0, 0, 0, 32]


@pytest.mark.parametrize("seed", range(10))
def test_profile_matches_brute_oracle(seed):
    f = TruthTable.random(seed % 7 + 1, seed=seed)
    assert sensitivity_profile(f).counts.tolist() == brute_profile(f)


def test_profile_validation():
    from boolsurf.core import SensitivityProfile
    with pytest.raises(InputError):
        SensitivityProfile(2, [1, 1, 1])  # sums to 3, not 4
    with pytest.raises(InputError):
        SensitivityProfile(1, [3, -1])


# ---------------------------------------------------------------- moments


def test_bsa_golden_values():
    assert abs(bsa(TruthTable.majority(5)) - 5.0 * math.sqrt(3.0) / 8.0) < 1e-15
    assert abs(bsa(TruthTable.parity(5, 0b00011)) - math.sqrt(2.0)) < 1e-15
    assert bsa(TruthTable.constant(3)) == 0.0


def test_total_influence_golden_values():
    total, per = total_influence(TruthTable.majority(5))
    assert total == 1.875
    assert per.tolist() == [0.375] * 5
    total, per = total_influence(TruthTable.parity(5, 0b00011))
    assert total == 2.0
    assert per.tolist() == [1.0, 1.0, 0.0, 0.0, 0.0]
    assert total_influence(TruthTable.dictator(4)).total == 1.0


def test_total_influence_sums_to_total():
    for seed in range(5):
        f = TruthTable.random(8, seed=seed)
        total, per = total_influence(f)
        assert abs(total - per.sum()) < 1e-12


def test_fractional_moment_identities():
    f = TruthTable.majority(5)
    assert fractional_moment(f, 0.5) == bsa(f)  # same summation, bit-identical
    assert fractional_moment(f, 1.0) == total_influence(f).total
    assert fractional_moment(f, 1.0) == 1.875


def test_fractional_moment_constant_sensitivity():
    # s identically 2 for the embedded two-variable parity
    f = TruthTable.parity(6, 0b11)
    for alpha in (0.25, 0.5, 0.75, 1.0):
        assert abs(fractional_moment(f, alpha) - 2.0 ** alpha) < 1e-12


def test_fractional_moment_validation():
    f = TruthTable.majority(3)
    for alpha in (0.0, -0.5, 1.5):
        with pytest.raises(InputError):
            fractional_moment(f, alpha)


def test_fractional_moment_monotone_when_sensitivity_positive():
    grid = [0.1, 0.3, 0.5, 0.7, 0.9, 1.0]
    for f in (TruthTable.dictator(5), TruthTable.parity(5, 0b11111),
              TruthTable.parity(2, 0b11)):
        vals = [fractional_moment(f, a) for a in grid]
        assert all(lo <= hi + 1e-15 for lo, hi in zip(vals, vals[1:]))


def test_bsa_via_tails_golden_and_telescoping():
    maj3 = TruthTable.majority(3)
    assert sensitivity_profile(maj3).counts.tolist() == [2, 0, 6, 0]
    assert abs(bsa_via_tails(maj3) - (6.0 / 8.0) * math.sqrt(2.0)) < 1e-15
    assert bsa_via_tails(TruthTable.constant(5, -1)) == 0.0
    assert abs(bsa_via_tails(TruthTable.parity(9, (1 << 9) - 1)) - 3.0) < 1e-12


def test_bsa_via_tails_matches_bsa():
    for seed in range(20):
        f = TruthTable.random(seed % 9 + 1, seed=seed)
        assert abs(bsa_via_tails(f) - bsa(f)) < 1e-12


def test_holder_bound():
    for seed in range(30):
        f = TruthTable.random(seed % 11 + 1, seed=seed)
        profile = sensitivity_profile(f)
        assert profile.bsa() <= math.sqrt(profile.moment(1.0)) + 1e-12


# ---------------------------------------------------------------- transform


def test_walsh_hadamard_validation():
    with pytest.raises(InputError):
        walsh_hadamard(np.ones(3))
    with pytest.raises(InputError):
        walsh_hadamard(np.ones(0))


def test_fourier_dictator_and_constant():
    spec = fourier_transform(TruthTable.dictator(4))
    want = np.zeros(16)
    want[1] = 1.0
    assert (spec.coefficients == want).all()
    spec = fourier_transform(TruthTable.constant(3))
    assert spec.coefficients[0] == 1.0
    assert (spec.coefficients[1:] == 0.0).all()


def test_fourier_majority3_oracle():
    # direct summation over the 8 points, computed by hand
    spec = fourier_transform(TruthTable.majority(3))
    expected = [0.0, 0.5, 0.5, 0.0, 0.5, 0.0, 0.0, -0.5]
    assert spec.coefficients.tolist() == expected


def test_parseval_and_double_transform():
    for seed in range(10):
        f = TruthTable.random(seed % 8 + 1, seed=100 + seed)
        spec = fourier_transform(f)
        assert abs(spec.parseval_sum() - 1.0) < 1e-10
        back = walsh_hadamard(walsh_hadamard(f.values)) / (1 << f.n)
        assert np.abs(back - f.values).max() < 1e-12
        assert spec.inverse_table() == f


def test_spectrum_validation():
    with pytest.raises(InputError):
        FourierSpectrum(2, [1.0, 0.0])


# ---------------------------------------------------------------- noise


def test_noise_sensitivity_dictator_exact():
    f = TruthTable.dictator(6)
    for delta in (0.05, 0.1, 0.25, 0.4):
        assert noise_sensitivity(f, delta) == delta


def test_noise_sensitivity_constant_and_majority3():
    assert noise_sensitivity(TruthTable.constant(4), 0.2) == 0.0
    got = noise_sensitivity(TruthTable.majority(3), 0.1)
    rho = 0.8
    want = (1.0 - (3 * 0.25 * rho + 0.25 * rho ** 3)) / 2.0
    assert abs(got - want) < 1e-12
    assert abs(got - 0.136) < 1e-12


def test_noise_sensitivity_routes_agree():
    for seed in range(10):
        f = TruthTable.random(seed % 10 + 1, seed=200 + seed)
        for delta in (0.05, 0.1, 0.25):
            assert abs(noise_sensitivity(f, delta)
                       - noise_sensitivity_semigroup(f, delta)) < 1e-10


def test_noise_sensitivity_validation():
    f = TruthTable.majority(3)
    for delta in (0.0, 0.5, -0.1, 0.9):
        with pytest.raises(InputError):
            noise_sensitivity(f, delta)


# ---------------------------------------------------------------- constructors


def test_majority_ties_resolve_positive():
    f = TruthTable.majority(4)
    x = 0b0011  # two -1s, two +1s: tie
    assert f.values[x] == 1


def test_random_table_deterministic():
    assert TruthTable.random(8, seed=5) == TruthTable.random(8, seed=5)
    assert TruthTable.random(8, seed=5) != TruthTable.random(8, seed=6)


def test_parity_mask_validation():
    with pytest.raises(InputError):
        TruthTable.parity(3, 8)
    with pytest.raises(InputError):
        TruthTable.dictator(3, 3)
