import random
from fractions import Fraction

import pytest

from oddspin.errors import (
    BasisMismatchError,
    PreconditionError,
    UndefinedSlopeError,
)
from oddspin.numerics import boundary_degrees, theta_counts, theta_pencil_profile
from oddspin.picard import (
    MODULI,
    SPIN,
    DivisorClass,
    bn_divisor_class,
    bn_divisor_exists,
    canonical_class,
    certificate,
    combine,
    covering_degree,
    degenerate_theta_lambda_coefficient,
    moduli_basis,
    pair,
    pullback,
    pushforward,
    slope,
    solve_zg,
    spin_basis,
    zg_class,
)
from oddspin.picard import test_curve as boundary_curve


# -- pullback / pushforward -------------------------------------------------

def test_pullback_of_delta0():
    d0 = DivisorClass.from_mapping(moduli_basis(7), {"delta0": 1})
    up = pullback(7, d0)
    assert up == DivisorClass.from_mapping(spin_basis(7), {"alpha0": 1, "beta0": 2})


def test_pullback_linearity_zero():
    zero = DivisorClass.from_mapping(moduli_basis(5), {})
    assert pullback(5, zero).is_zero()


def test_canonical_class_branch_relation():
    for g in range(3, 17):
        spin_k = canonical_class(SPIN, g)
        branch = DivisorClass.from_mapping(spin_basis(g), {"beta0": 1})
        assert spin_k == pullback(g, canonical_class(MODULI, g)) + branch


def test_pushforward_of_degenerate_theta_class_genus3():
    down = pushforward(3, zg_class(3))
    assert down == DivisorClass.from_mapping(
        moduli_basis(3), {"lambda": 308, "delta0": -32, "delta1": -76}
    )
    assert down.render() == "308*lambda - 32*delta0 - 76*delta1"


def test_projection_formula_with_power_of_two_oracle():
    rng = random.Random(2026)
    for g in range(3, 17):
        n = covering_degree(g)
        # oracle: expand the powers of two by hand
        assert n == 2 ** (g - 1) * (2 ** g - 1)
        for i in range(g // 2 + 1):
            deg_a, deg_b = boundary_degrees(g, i)
            if i == 0:
                assert deg_a + 2 * deg_b == n
            else:
                assert deg_a + deg_b == n
        basis = moduli_basis(g)
        coeffs = {name: Fraction(rng.randint(-9, 9), rng.randint(1, 4))
                  for name in basis.names}
        cls = DivisorClass.from_mapping(basis, coeffs)
        assert pushforward(g, pullback(g, cls)) == n * cls


def test_pushforward_requires_spin_class():
    with pytest.raises(BasisMismatchError):
        pushforward(5, bn_divisor_class(5))


# -- named classes ----------------------------------------------------------

def test_canonical_spin_display():
    k = canonical_class(SPIN, 7)
    assert k == DivisorClass.from_mapping(
        spin_basis(7),
        {"lambda": 13, "alpha0": -2, "beta0": -3, "alpha1": -3, "beta1": -3,
         "alpha2": -2, "beta2": -2, "alpha3": -2, "beta3": -2},
    )


def test_zg_class_examples():
    z3 = zg_class(3)
    assert z3 == DivisorClass.from_mapping(
        spin_basis(3),
        {"lambda": 11, "alpha0": Fraction(-5, 4), "beta0": -2, "alpha1": -4,
         "beta1": -2},
    )
    assert zg_class(12).coefficient("lambda") == 20
    assert zg_class(4).bar("alpha2") == 4


def test_bn_divisor_class_genus13():
    cls = bn_divisor_class(13)
    expected = {"lambda": 16, "delta0": Fraction(-7, 3), "delta1": -12,
                "delta2": -22, "delta3": -30, "delta4": -36, "delta5": -40,
                "delta6": -42}
    assert cls == DivisorClass.from_mapping(moduli_basis(13), expected)


def test_bn_divisor_slope_formula():
    for g in (13, 15, 23, 29):
        assert slope(bn_divisor_class(g)) == 6 + Fraction(12, g + 1)
    assert slope(bn_divisor_class(23)) == Fraction(13, 2)


def test_bn_divisor_existence_flag():
    assert bn_divisor_exists(13)   # 14 composite
    assert not bn_divisor_exists(16)  # 17 prime
    assert not bn_divisor_exists(12)  # 13 prime


# -- test curves ------------------------------------------------------------

def test_curve_vectors():
    f0 = boundary_curve("F0", 7)
    assert dict(zip(f0.basis.names, f0.pairings)) == {
        "lambda": 1, "alpha0": 12, "alpha1": -1, "alpha2": 0, "alpha3": 0,
        "beta0": 0, "beta1": 0, "beta2": 0, "beta3": 0,
    }
    g0 = boundary_curve("G0", 7)
    assert g0.pairing("lambda") == 3
    assert g0.pairing("alpha0") == 12
    assert g0.pairing("beta0") == 12
    assert g0.pairing("beta1") == -3
    h0 = boundary_curve("H", 7)
    assert h0.pairing("beta0") == 1 - 7
    assert h0.pairing("beta1") == 1
    assert h0.assumed_zero == ("alpha2", "beta2", "alpha3", "beta3")
    f3 = boundary_curve("F", 7, 3)
    assert f3.pairing("alpha3") == -4
    c0 = boundary_curve("C0", 12)
    assert c0.pairing("delta0") == -22
    assert c0.pairing("delta1") == 1
    c1 = boundary_curve("C1", 12)
    assert c1.pairing("delta1") == -20
    r = boundary_curve("R", 12)
    assert (r.pairing("lambda"), r.pairing("delta0"), r.pairing("delta1")) == (1, 12, -1)


def test_curve_index_validation():
    with pytest.raises(PreconditionError):
        boundary_curve("F", 7, 4)
    with pytest.raises(PreconditionError):
        boundary_curve("G", 7, 0)
    with pytest.raises(PreconditionError):
        boundary_curve("F0", 7, 1)


def test_pair_requires_common_basis():
    with pytest.raises(BasisMismatchError):
        pair(boundary_curve("C0", 12), zg_class(12))


def test_moduli_curves_track_genus():
    # degree bookkeeping of the two moving-curve families in general genus
    for g in (8, 12, 15):
        assert boundary_curve("C0", g).pairing("delta0") == 2 - 2 * g
        assert boundary_curve("C1", g).pairing("delta1") == 4 - 2 * g


def test_basis_preconditions():
    with pytest.raises(PreconditionError):
        spin_basis(2)
    with pytest.raises(PreconditionError):
        moduli_basis(2)
    with pytest.raises(PreconditionError):
        zg_class(2)
    with pytest.raises(PreconditionError):
        canonical_class(SPIN, 2)
    with pytest.raises(PreconditionError):
        canonical_class("affine", 5)


# -- pairing identities -----------------------------------------------------

def test_family_pairings_against_degenerate_theta_class():
    for g in range(3, 17):
        z = zg_class(g)
        for i in range(1, g // 2 + 1):
            assert pair(boundary_curve("F", g, i), z) == 4 * (g - i) * (i - 1)
            assert pair(boundary_curve("G", g, i), z) == 4 * i * (i - 1)
        assert pair(boundary_curve("F0", g), z) == 0
        assert pair(boundary_curve("G0", g), z) == 0
        assert pair(boundary_curve("H", g), z) == 2 * (g - 2)
        assert pair(boundary_curve("F", g, 1), z) == 0


def test_prop_style_relation_at_solution():
    # lambda-bar - 12 alpha0-bar + alpha1-bar = 0 at the closed form
    for g in range(3, 17):
        z = zg_class(g)
        assert z.bar("lambda") - 12 * z.bar("alpha0") + z.bar("alpha1") == 0


def test_theta_pencil_canonical_pairing():
    for g in range(3, 31):
        profile = theta_pencil_profile(g)
        value = pair(profile.curve, canonical_class(SPIN, g))
        assert value == 2 * g - 24
        assert (value < 0) == (g <= 11)
    assert pair(theta_pencil_profile(10).curve, canonical_class(SPIN, 10)) == -4
    assert pair(theta_pencil_profile(12).curve, canonical_class(SPIN, 12)) == 0


# -- reconstruction ---------------------------------------------------------

def test_porteous_lambda_coefficient():
    for g in range(3, 31):
        assert degenerate_theta_lambda_coefficient(g) == g + 8


def test_solve_zg_full_rank_range():
    for g in range(3, 17):
        report = solve_zg(g)
        assert report.matches_closed_form
        if g == 5:
            assert report.degenerate and not report.full_rank
            assert report.fallback_consistent
            assert report.undetermined == ("beta0", "beta1")
        else:
            assert report.full_rank and not report.degenerate


def test_solve_zg_genus7_hand_elimination_oracle():
    # oracle: eliminate by stages exactly as the row structure allows
    g = 7
    lam = Fraction(g + 8)
    alpha = {i: Fraction(2 * (g - i)) for i in (1, 2, 3)}   # family rows
    alpha0 = (lam + alpha[1]) / 12                          # F0 row
    # G0 and H0 rows in (beta0, beta1):
    #   12 b0 - 3 b1 = 3 lam - 12 a0   and   (g-1) b0 - b1 = 2(g-2)
    rhs1 = 3 * lam - 12 * alpha0
    det = Fraction(12 * (-1) - (-3) * (g - 1))
    beta0 = (rhs1 * (-1) - (-3) * Fraction(2 * (g - 2))) / det
    beta1 = (g - 1) * beta0 - 2 * (g - 2)
    solved = solve_zg(g).divisor_class
    assert solved.bar("lambda") == lam
    assert solved.bar("alpha0") == alpha0 == Fraction(9, 4)
    assert solved.bar("beta0") == beta0 == 2
    assert solved.bar("beta1") == beta1 == 2
    for i in (1, 2, 3):
        assert solved.bar(f"alpha{i}") == alpha[i]


def test_solve_zg_genus5_degeneracy_oracle():
    # oracle: with lambda-bar = 13 and alpha0-bar = 7/4 substituted, the G0
    # and H0 relations both reduce to 4 b0 - b1 = 6; symbolically the
    # difference of the two rows is (g-5) b0 = 2g - 10.
    g = 5
    lam, alpha0 = Fraction(13), Fraction(7, 4)
    g0_reduced = (3 * lam - 12 * alpha0) / 3   # (12 b0 - 3 b1)/3 = 4 b0 - b1
    assert g0_reduced == 6 == 2 * (g - 2)
    report = solve_zg(5)
    assert report.degenerate
    assert report.divisor_class == zg_class(5)


# -- combinations and slopes ------------------------------------------------

def test_combine_intro_identity_componentwise_oracle():
    basis = moduli_basis(3)
    hyperelliptic = DivisorClass.from_mapping(
        basis, {"lambda": 9, "delta0": -1, "delta1": -3}
    )
    pushed = pushforward(3, zg_class(3))
    total = combine([hyperelliptic, pushed], [8, 1])
    # oracle: componentwise addition
    expected = {"lambda": 8 * 9 + 308, "delta0": -8 - 32, "delta1": -24 - 76}
    assert total == DivisorClass.from_mapping(basis, expected)
    assert total == DivisorClass.from_mapping(
        basis, {"lambda": 380, "delta0": -40, "delta1": -100}
    )


def test_combine_cancellation_and_zero_weights():
    z = zg_class(6)
    assert combine([z, z], [1, -1]).is_zero()
    assert combine([z], [0]).is_zero()


def test_slope_undefined_for_pure_lambda():
    lam = DivisorClass.from_mapping(moduli_basis(5), {"lambda": 1})
    with pytest.raises(UndefinedSlopeError):
        slope(lam)


def test_slope_zero_numerator():
    cls = DivisorClass.from_mapping(moduli_basis(5), {"delta0": -3})
    assert slope(cls) == 0


# -- certificates -----------------------------------------------------------

def test_certificate_bn_examples_and_closed_form():
    report = certificate(13, "bn")
    assert report.mu == Fraction(1, 7)
    assert report.passed()
    combo_lambda = 13 - report.mu
    assert combo_lambda == Fraction(90, 7) == Fraction(11 * 13 + 37, 13 + 1)
    for g in range(13, 31):
        rep = certificate(g, "bn")
        # oracle: mu = 13 - (11g+37)/(g+1) simplified
        assert rep.mu == Fraction(2 * g - 24, g + 1)
        assert rep.mu > 0
        assert rep.passed()
        slacks = dict(rep.slacks)
        assert slacks["lambda"] == 0
        assert slacks["alpha0"] == 0 and slacks["beta0"] == 0
        assert all(v >= 0 for v in slacks.values())


def test_certificate_d12():
    report = certificate(12, "d12")
    assert report.weight_zg == Fraction(1, 5)
    assert report.weight_aux == Fraction(13, 19260)
    # oracle: hand elimination of the 2x2 system plus mu = 13 - (20x + 13245y)
    x, y = Fraction(1, 5), Fraction(13, 19260)
    assert 13 - (20 * x + 13245 * y) == Fraction(77, 1284)
    assert report.mu == Fraction(77, 1284)
    assert report.passed()


def test_certificate_bn_refused_in_genus_12():
    with pytest.raises(PreconditionError):
        certificate(12, "bn")


def test_certificate_preconditions():
    with pytest.raises(PreconditionError):
        certificate(11, "d12")
    with pytest.raises(PreconditionError):
        certificate(13, "d12")
    with pytest.raises(PreconditionError):
        certificate(10, "bn")


def test_certificate_json_schema():
    report = certificate(13, "bn")
    payload = report.to_json_dict()
    assert set(payload) == {"g", "weights", "mu", "slacks",
                            "assumed_zero_pairings", "verdict"}
    assert payload["weights"]["zg"] == "2/11"
    assert payload["mu"] == "1/7"
    assert payload["verdict"] == "pass"
    d12 = certificate(12, "d12").to_json_dict()
    assert d12["weights"] == {"zg": "1/5", "aux": "13/19260"}
    assert d12["mu"] == "77/1284"
