import math
import warnings
from fractions import Fraction

import pytest

from oddspin.bn import (
    HTQuery,
    bn_context,
    evaluate_taut,
    evaluate_taut_recursion,
    expand_c_monomial,
    ht_matrix,
    ht_value,
    ker_substitute,
    ker_substitution_class,
    split_kernel_class,
)
from oddspin.errors import (
    NonSymmetricMonomialWarning,
    PreconditionError,
    RingDomainError,
)

from oracles import laplace_det, poly_mul, poly_pow


@pytest.fixture(scope="module")
def ctx():
    return bn_context(11, 4, 14)


def balanced_c_monomials():
    """All (m1..m5) with sum i*mi <= 6; theta absorbs the rest."""
    out = []

    def rec(i, left, acc):
        if i == 6:
            out.append(tuple(acc))
            return
        for m in range(left // i + 1):
            rec(i + 1, left - i * m, acc + [m])

    rec(1, 6, [])
    return out


def model_value(exps, theta_power):
    """Ground truth from the h^1 = 1 geometry on the symmetric product.

    The dual tautological classes there are c_i = theta^i/i! - x theta^(i-1)/(i-1)!
    with the point-type class x, and monomials integrate through
    int x^a theta^b = 11!/(11-b)! for a + b = 6.  This model follows from
    Riemann-Roch on the universal divisor and is independent of the
    determinant formula under test.
    """
    g = 11
    poly = {(0, theta_power): Fraction(1)}
    for i, m in enumerate(exps, start=1):
        ci = {
            (0, i): Fraction(1, math.factorial(i)),
            (1, i - 1): -Fraction(1, math.factorial(i - 1)),
        }
        for _ in range(m):
            poly = poly_mul(poly, ci)
    total = Fraction(0)
    for (a, b), coeff in poly.items():
        if a + b == 6 and b <= g:
            total += coeff * Fraction(math.factorial(g), math.factorial(g - b))
    return total


# -- ht_value ---------------------------------------------------------------

def test_ht_base_value_with_determinant_and_serre_oracles(ctx):
    rows = [[ctx_entry for ctx_entry in row] for row in ht_matrix(ctx, (0,) * 5).entries]
    assert laplace_det(rows) == Fraction(1, 120)
    value = ht_value(ctx, HTQuery((0, 0, 0, 0, 0), 6, True))
    assert value == Fraction(1, 120) * math.factorial(11)
    assert value == 332640
    # Serre duality cross-check: the locus is the sixth symmetric product
    assert value == math.factorial(11) // math.factorial(5)


def test_ht_degree_guard(ctx):
    assert ht_value(ctx, HTQuery((0, 0, 0, 0, 0), 7, True)) == 0
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", NonSymmetricMonomialWarning)
        assert ht_value(ctx, HTQuery((1, 0, 0, 0, 0), 6, True)) == 0


def test_ht_eta_required(ctx):
    assert ht_value(ctx, HTQuery((0, 0, 0, 0, 0), 7, False)) == 0
    assert ht_value(ctx, HTQuery((0, 0, 0, 0, 0), 6, False)) == 0


def test_ht_nonsymmetric_warning(ctx):
    with pytest.warns(NonSymmetricMonomialWarning):
        ht_value(ctx, HTQuery((2, 0, 0, 0, 0), 4, True))
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        ht_value(ctx, HTQuery((0, 0, 0, 0, 0), 6, True))  # symmetric: quiet


def test_evaluate_taut_emits_no_warnings(ctx):
    preset = ctx.preset
    eta, theta = preset.gen("eta"), preset.gen("theta")
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        evaluate_taut(ctx, eta * theta ** 4 * preset.gen("c1") ** 2)


# -- expand_c_monomial ------------------------------------------------------

def test_expand_rank2_examples():
    ctx2 = bn_context(4, 1, 3)
    assert expand_c_monomial(ctx2, (1,)) == {(1, 0): 1, (0, 1): 1}
    assert expand_c_monomial(ctx2, (0, 1)) == {(1, 1): 1}


def test_expand_c1_squared_brute_force():
    ctx2 = bn_context(4, 1, 3)
    e1 = {(1, 0): 1, (0, 1): 1}
    oracle = poly_pow(e1, 2, 2)
    assert expand_c_monomial(ctx2, (2,)) == oracle
    assert oracle == {(2, 0): 1, (1, 1): 2, (0, 2): 1}


def test_expand_rejects_too_many_classes(ctx):
    with pytest.raises(PreconditionError):
        expand_c_monomial(ctx, (0, 0, 0, 0, 0, 1))


# -- permutation robustness -------------------------------------------------

def test_symmetric_sums_invariant_under_slot_reversal(ctx):
    for exps in ((1, 1, 0, 0, 0), (0, 0, 1, 0, 0), (3, 0, 0, 0, 0), (1, 0, 1, 0, 0)):
        weight = sum(i * m for i, m in enumerate(exps, start=1))
        a = 6 - weight
        forward = Fraction(0)
        reverse = Fraction(0)
        for mono, mult in expand_c_monomial(ctx, exps).items():
            forward += mult * ht_value(ctx, HTQuery(mono, a, True), _in_symmetric_sum=True)
            reverse += mult * ht_value(
                ctx, HTQuery(tuple(reversed(mono)), a, True), _in_symmetric_sum=True
            )
        assert forward == reverse


# -- kernel class -----------------------------------------------------------

def test_ker_substitute_linear_monomial_term_by_term(ctx):
    # oracle: substitute, then normalize term by term; eta^2 = eta*gamma = 0
    # kill everything except the c5 part of the substitution class.
    preset = ctx.preset
    eta, theta, k = preset.gen("eta"), preset.gen("theta"), preset.gen("k")
    c5 = preset.gen("c5")
    substituted = ker_substitute(k * eta * theta, "X")
    assert substituted == c5 * eta * theta


def test_ker_substitute_identity_on_k_free_input(ctx):
    preset = ctx.preset
    elem = 3 * preset.gen("eta") * preset.gen("c2")
    assert ker_substitute(elem, "X") == elem


def test_ker_substitute_rejects_k_squared(ctx):
    k = ctx.preset.gen("k")
    with pytest.raises(RingDomainError):
        ker_substitute(k * k, "X")


def test_ker_substitution_class_forms(ctx):
    preset = ctx.preset
    eta, gamma, theta = preset.gen("eta"), preset.gen("gamma"), preset.gen("theta")
    c3, c4, c5 = preset.gen("c3"), preset.gen("c4"), preset.gen("c5")
    assert ker_substitution_class(ctx, "X") == c5 - 6 * eta * theta * c3 + (48 * eta + 2 * gamma) * c4
    assert ker_substitution_class(ctx, "Y") == c5 + (13 * eta + gamma) * c4 - 2 * eta * theta * c3


def test_split_kernel_class(ctx):
    preset = ctx.preset
    eta, k, c2 = preset.gen("eta"), preset.gen("k"), preset.gen("c2")
    free, linear = split_kernel_class(2 * eta + 5 * k * c2)
    assert free == 2 * eta
    assert linear == 5 * c2


# -- the two evaluators -----------------------------------------------------

def test_evaluate_taut_base_cases(ctx):
    preset = ctx.preset
    eta, theta = preset.gen("eta"), preset.gen("theta")
    assert evaluate_taut(ctx, eta * theta ** 6) == 332640
    assert evaluate_taut(ctx, preset.zero()) == 0


def test_evaluate_taut_linearity(ctx):
    preset = ctx.preset
    eta, theta = preset.gen("eta"), preset.gen("theta")
    a = eta * theta ** 4 * preset.gen("c2")
    b = eta * theta ** 3 * preset.gen("c3")
    s, t = Fraction(7, 3), Fraction(-2, 5)
    assert evaluate_taut(ctx, s * a + t * b) == s * evaluate_taut(ctx, a) + t * evaluate_taut(ctx, b)


def test_evaluators_against_symmetric_product_model(ctx):
    preset = ctx.preset
    eta, theta = preset.gen("eta"), preset.gen("theta")
    for exps in balanced_c_monomials():
        weight = sum(i * m for i, m in enumerate(exps, start=1))
        a = 6 - weight
        elem = eta * theta ** a
        for i, m in enumerate(exps, start=1):
            elem = elem * preset.gen(f"c{i}") ** m
        expected = model_value(exps, a)
        assert evaluate_taut(ctx, elem) == expected
        assert evaluate_taut_recursion(ctx, elem) == expected


def test_dual_evaluators_agree_exhaustively(ctx):
    preset = ctx.preset
    eta, theta = preset.gen("eta"), preset.gen("theta")
    count = 0
    for exps in balanced_c_monomials():
        weight = sum(i * m for i, m in enumerate(exps, start=1))
        elem = eta * theta ** (6 - weight)
        for i, m in enumerate(exps, start=1):
            elem = elem * preset.gen(f"c{i}") ** m
        assert evaluate_taut(ctx, elem) == evaluate_taut_recursion(ctx, elem)
        count += 1
    # partitions of 0..6 into parts of size at most 5
    assert count == 29


def test_recursion_rewrites_c2_power_series_oracle(ctx):
    # oracle: expand (1 + u) * e^{-theta} with u = theta - c1 as a formal
    # series in (c1, theta); degree-i parts give (-1)^i c_i, hence every c_i
    # as a polynomial in c1 and theta.  Compare with the engine's rewrite of
    # a bare c_i (read off by evaluating against spanning monomials).
    preset = ctx.preset
    eta, theta, c1 = preset.gen("eta"), preset.gen("theta"), preset.gen("c1")
    # series coefficients: (-1)^i c_i = (-theta)^i/i! + (theta - c1)(-theta)^(i-1)/(i-1)!
    for i in range(2, 6):
        lead = Fraction((-1) ** i, math.factorial(i)) * theta ** i
        mixed = (theta - c1) * Fraction((-1) ** (i - 1), math.factorial(i - 1)) * theta ** (i - 1)
        ci_poly = Fraction((-1) ** i) * (lead + mixed)
        bare = eta * theta ** (6 - i) * preset.gen(f"c{i}")
        rewritten = eta * theta ** (6 - i) * ci_poly
        assert evaluate_taut(ctx, bare) == evaluate_taut(ctx, rewritten)
    # spot check the i = 1 instance of the printed relation
    c2_image = c1 * theta - Fraction(1, 2) * theta ** 2
    assert evaluate_taut(ctx, eta * theta ** 4 * preset.gen("c2")) == evaluate_taut(
        ctx, eta * theta ** 4 * c2_image
    )


def test_recursion_refuses_wrong_context():
    ctx12 = bn_context(12, 4, 14)  # rho = 2 but h^1 = 2: refusal
    eta = ctx12.preset.gen("eta")
    with pytest.raises(PreconditionError):
        evaluate_taut_recursion(ctx12, eta)


def test_context_validation():
    with pytest.raises(PreconditionError):
        bn_context(11, 5, 14)  # rho = -1
    ctx = bn_context(11, 4, 14)
    assert ctx.rho == 6
    assert ctx.dim_total == 7
