import itertools
import math
from fractions import Fraction

import pytest
import scipy.special

from dtmoduli.moduli import (
    PiScaledRational,
    TauCorrelator,
    anomaly_coefficient,
    b_genus,
    card_dt_asymptotic,
    card_q_asymptotic,
    fitted_volume_exponent,
    intersection_number,
    mz_asymptotic_volume,
    mz_constants,
    puncture_ratios,
    string_susceptibility,
    wp_genus_bound_check,
    wp_volume,
)
from dtmoduli.moduli.asymptotics import ComplexBranchError
from dtmoduli.moduli.intersection import cache_snapshot, genus_zero_closed_form
from dtmoduli.moduli.special import first_zero_j0, gamma_half_integer, j0
from dtmoduli.moduli.volumes import UnstableModuliError, multi_indices, wp_volume_labeled

from oracles import genus0_string_reduction


# --- intersection numbers ---------------------------------------------------

def test_base_values():
    assert intersection_number(0, [0, 0, 0]) == 1
    assert intersection_number(1, [1]) == Fraction(1, 24)
    assert intersection_number(0, [0, 0, 0, 0, 2]) == 1
    assert genus0_string_reduction([0, 0, 0, 0, 2]) == 1


def test_known_higher_genus_values():
    assert intersection_number(2, [4]) == Fraction(1, 1152)
    assert intersection_number(2, [2, 2, 2]) == Fraction(7, 240)
    for g in range(1, 6):
        assert intersection_number(g, [3 * g - 2]) == Fraction(1, 24**g * math.factorial(g))


def test_dimension_constraint():
    assert intersection_number(0, [0, 0, 1]) == 0
    assert intersection_number(1, [0]) == 0
    assert intersection_number(-1, [0]) == 0


def test_genus_zero_three_ways():
    for n in range(3, 9):
        for degs in itertools.combinations_with_replacement(range(n - 2), n):
            if sum(degs) != n - 3:
                continue
            val = intersection_number(0, degs)
            assert val == genus_zero_closed_form(degs) == genus0_string_reduction(list(degs))


def test_symmetric_and_dilaton():
    assert intersection_number(1, [2, 0, 1]) == intersection_number(1, [0, 1, 2])
    # dilaton: <tau_1 X>_g = (2g - 2 + n) <X>_g
    for g, degs in [(1, [1]), (2, [4]), (1, [2, 0]), (2, [2, 2, 2])]:
        n = len(degs)
        assert intersection_number(g, [1] + degs) == (2 * g - 2 + n) * intersection_number(g, degs)


def test_cache_and_correlator():
    TauCorrelator(2, (2, 2, 2)).value
    snap = cache_snapshot()
    assert snap[(2, (2, 2, 2))] == Fraction(7, 240)


# --- volumes ----------------------------------------------------------------
#
# Hand-run oracles for the first volumes. The volume is
#   sum_l (-1)^{g-1+N0+|l|} / prod_i l_i! ((i-1)!)^{l_i} <tau_0^N0 prod tau_i^{l_i}>_g,
# divided by N0!, times pi^{2 dim}.
#  (0,3): dim 0, only l = {}; sign (-1)^2; <tau_0^3> = 1; / 3!          -> 1/6
#  (0,4): dim 1, l = {2:1}; sign (-1)^4; <tau_0^4 tau_2> = 1 (string
#         equation twice); / 4!                                          -> 1/24 pi^2
#  (1,1): dim 1, l = {2:1}; sign (-1)^2; <tau_0 tau_2>_1 = <tau_1>_1
#         = 1/24 by the string equation; / 1!                           -> 1/24 pi^2
#  (0,5): dim 2, l = {2:2}: (+1)/2! <tau_0^5 tau_2^2> = 6/2,
#         l = {3:1}: (-1)/2! <tau_0^5 tau_3> = -1/2; total 5/2; / 5!    -> 1/48 pi^4

HAND = {
    (0, 3): (Fraction(1), 0, Fraction(1, 6)),
    (0, 4): (Fraction(1), 2, Fraction(1, 24)),
    (1, 1): (Fraction(1, 24), 2, Fraction(1, 24)),
    (0, 5): (Fraction(6, 2) - Fraction(1, 2), 4, Fraction(1, 48)),
}


def test_hand_oracle_inputs():
    assert genus0_string_reduction([0, 0, 0]) == 1
    assert genus0_string_reduction([0, 0, 0, 0, 2]) == 1
    assert genus0_string_reduction([0] * 5 + [2, 2]) == 6
    assert genus0_string_reduction([0] * 5 + [3]) == 1
    # <tau_0 tau_2>_1 -> <tau_1>_1 by one string step
    assert intersection_number(1, [0, 2]) == intersection_number(1, [1])


@pytest.mark.parametrize("gn", sorted(HAND))
def test_exact_volumes(gn):
    g, n0 = gn
    total, pi_power, expected = HAND[gn]
    assert total / math.factorial(n0) == expected
    v = wp_volume(g, n0)
    assert v == PiScaledRational(expected, pi_power)


def test_more_volumes():
    assert wp_volume(0, 6) == PiScaledRational(Fraction(61, 4320), 6)
    assert wp_volume(1, 2) == PiScaledRational(Fraction(1, 32), 4)
    assert wp_volume(2, 1) == PiScaledRational(Fraction(29, 3072), 8)
    assert wp_volume_labeled(0, 4) == PiScaledRational(Fraction(1), 2)


def test_unstable_volume():
    for g, n in [(0, 2), (1, 0), (0, 0)]:
        with pytest.raises(UnstableModuliError):
            wp_volume(g, n)


def test_pi_scaled_rational():
    a = PiScaledRational(Fraction(1, 24), 2)
    assert str(a) == "1/24*pi^2"
    assert (a + a).coeff == Fraction(1, 12)
    assert (a * a).pi_power == 4
    assert float(a) == pytest.approx(math.pi**2 / 24)
    with pytest.raises(ValueError):
        a + PiScaledRational(1, 0)
    with pytest.raises(ValueError):
        PiScaledRational(1, 3)


def test_multi_indices():
    assert list(multi_indices(0)) == [{}]
    got = sorted(tuple(sorted(l.items())) for l in multi_indices(3))
    assert got == sorted([((2, 3),), ((2, 1), (3, 1)), ((4, 1),)])


# --- special functions and constants ----------------------------------------

def test_bessel_against_scipy():
    for z in [0.0, 0.5, 1.3, 2.4, 3.9]:
        assert j0(z) == pytest.approx(scipy.special.j0(z), abs=1e-14)
    assert first_zero_j0() == pytest.approx(scipy.special.jn_zeros(0, 1)[0], abs=1e-13)
    assert 2.40 < first_zero_j0() < 2.41


def test_half_integer_gamma():
    for x in [Fraction(-1, 2), Fraction(1, 2), Fraction(5, 2), Fraction(3), Fraction(15, 2)]:
        assert float(gamma_half_integer(x)) == pytest.approx(math.gamma(float(x)))
    assert float(gamma_half_integer(Fraction(-1, 2))) == pytest.approx(-2 * math.sqrt(math.pi))


def test_mz_constants():
    k = mz_constants()
    z = scipy.special.jn_zeros(0, 1)[0]
    assert k.C == pytest.approx(0.5 * z * scipy.special.j1(z), rel=1e-12)
    assert k.A == pytest.approx(scipy.special.j1(z) / z, rel=1e-12)
    assert abs(k.C - 0.625) <= 0.002
    assert abs(k.growth_base - 11.846) <= 0.05


def test_b_genus():
    k = mz_constants()
    assert b_genus(1) == pytest.approx(1 / 48, abs=0)
    assert b_genus(0) == pytest.approx(1 / (math.sqrt(k.A) * (-2 * math.sqrt(math.pi)) * math.sqrt(k.C)))
    expected2 = k.A**0.5 / (4 * math.factorial(3) * math.gamma(2.5) * k.C**2.5) * (7 / 240)
    assert b_genus(2) == pytest.approx(expected2)
    with pytest.raises(ValueError):
        b_genus(-1)


def test_puncture_ratios_increase():
    r = puncture_ratios(0, range(4, 11))
    assert all(a < b for a, b in zip(r, r[1:]))


def test_mz_genus_one_gap_shrinks():
    rel = [mz_asymptotic_volume(1, n) / float(wp_volume(1, n)) for n in (8, 9, 10)]
    assert all(0.5 < x < 2 for x in rel)
    gaps = [abs(1 - x) for x in rel]
    assert gaps[0] > gaps[1] > gaps[2]


def test_fitted_exponent_negative():
    assert fitted_volume_exponent(0, range(6, 11)) < 0


def test_count_asymptotics():
    a = card_dt_asymptotic(1, 10, 1.0)
    b = card_dt_asymptotic(1, 20, 1.0)
    # N0^{-1} e^{mu0 N0}
    assert b / a == pytest.approx((20 / 10) ** -1 * (108 * math.sqrt(3)) ** 10)
    assert card_q_asymptotic(1, 5, 1.0) > 0


# --- exponents --------------------------------------------------------------

def test_string_susceptibility():
    for g in range(6):
        assert string_susceptibility(0, g) == Fraction(5 * g - 1, 2)
        assert string_susceptibility(1, g) == 2 * g
    for c in [-2, Fraction(1, 2), -7.5]:
        assert string_susceptibility(c, 1) == 2
    with pytest.raises(ComplexBranchError):
        string_susceptibility(4, 0)


def test_anomaly():
    assert anomaly_coefficient(1, "+") == 13
    assert anomaly_coefficient(0, "+") == anomaly_coefficient(0, "-") == 1
    with pytest.raises(ValueError):
        anomaly_coefficient(1, "*")


def test_genus_bound():
    # per-genus ratio (VOL / (2g)!)^{1/g}; any C1 below and C2 above all of them passes
    ratios = {g: (float(wp_volume(g, 4)) / math.factorial(2 * g)) ** (1 / g) for g in (1, 2)}
    assert all(r > 0 for r in ratios.values())
    ok, rows = wp_genus_bound_check([1, 2], 4, min(ratios.values()) * (1 - 1e-12), max(ratios.values()) * (1 + 1e-12))
    assert ok and len(rows) == 2
    ok, _ = wp_genus_bound_check([1, 2], 4, max(ratios.values()) * 1.01, max(ratios.values()) * 2)
    assert not ok
    with pytest.raises(ValueError):
        wp_genus_bound_check([1], 4, 2.0, 1.0)
    with pytest.raises(ValueError):
        wp_genus_bound_check([0], 4, 1.0, 2.0)
