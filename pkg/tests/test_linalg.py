import random
from fractions import Fraction

import pytest

from oddspin.errors import DimensionError
from oddspin.linalg import RatMatrix, det, solve_linear
from oddspin.scalars import format_scalar, parse_scalar, recip_factorial

from oracles import laplace_det


def test_det_identity_case():
    assert det(RatMatrix.from_rows([[Fraction(3, 4)]])) == Fraction(3, 4)


def test_det_2x2_direct_expansion():
    m = RatMatrix.from_rows([[1, Fraction(1, 2)], [1, 1]])
    assert det(m) == Fraction(1, 2)


def test_det_reciprocal_factorial_band_matrix():
    # rows j, cols l (0-indexed): 1/(1 + l - j)!, zero below the band
    rows = [[recip_factorial(1 + l - j) for l in range(5)] for j in range(5)]
    oracle = laplace_det(rows)
    assert oracle == Fraction(1, 120)
    assert det(RatMatrix.from_rows(rows)) == oracle


def test_det_requires_square():
    with pytest.raises(DimensionError):
        det(RatMatrix.from_rows([[1, 2, 3], [4, 5, 6]]))


def test_det_multiplicative_on_random_matrices():
    rng = random.Random(20260810)
    for _ in range(10):
        a = RatMatrix.from_rows(
            [[Fraction(rng.randint(-6, 6), rng.randint(1, 5)) for _ in range(3)]
             for _ in range(3)]
        )
        b = RatMatrix.from_rows(
            [[Fraction(rng.randint(-6, 6), rng.randint(1, 5)) for _ in range(3)]
             for _ in range(3)]
        )
        assert det(a.matmul(b)) == det(a) * det(b)


def test_recip_factorial_total_function():
    assert recip_factorial(-1) == 0
    assert recip_factorial(-7) == 0
    assert recip_factorial(0) == 1
    assert recip_factorial(3) == Fraction(1, 6)


def test_solve_identity():
    m = RatMatrix.from_rows([[1, 0], [0, 1]])
    report = solve_linear(m, [Fraction(5), Fraction(-2, 3)])
    assert report.status == "unique"
    assert report.solution == (Fraction(5), Fraction(-2, 3))


def test_solve_diagonal():
    m = RatMatrix.from_rows([[2, 0], [0, 4]])
    report = solve_linear(m, [1, 1])
    assert report.solution == (Fraction(1, 2), Fraction(1, 4))


def test_solve_certificate_system_matches_hand_elimination():
    # 1926 y + (14/4) x = 2   and   2*1926 y + 2 x = 3, unknowns (x, y).
    # Hand elimination: subtract twice the first row from the second:
    #   (2 - 7) x = 3 - 4  =>  x = 1/5, then y = (2 - 7/10) / 1926.
    x = Fraction(-1) / Fraction(-5)
    y = (2 - Fraction(14, 4) * x) / 1926
    assert (x, y) == (Fraction(1, 5), Fraction(13, 19260))
    m = RatMatrix.from_rows([[Fraction(14, 4), 1926], [2, 2 * 1926]])
    report = solve_linear(m, [2, 3])
    assert report.status == "unique"
    assert report.solution == (x, y)


def test_solve_resubstitution_on_random_systems():
    rng = random.Random(99)
    made = 0
    while made < 12:
        m = RatMatrix.from_rows(
            [[Fraction(rng.randint(-5, 5), rng.randint(1, 4)) for _ in range(4)]
             for _ in range(4)]
        )
        if det(m) == 0:
            continue
        made += 1
        x = [Fraction(rng.randint(-9, 9), rng.randint(1, 6)) for _ in range(4)]
        rhs = m.apply(x)
        report = solve_linear(m, rhs)
        assert report.status == "unique"
        assert m.apply(report.solution) == rhs
        assert report.solution == tuple(x)


def test_solve_reports_inconsistency_with_witness():
    m = RatMatrix.from_rows([[1, 1], [1, 1]])
    report = solve_linear(m, [1, 2])
    assert report.status == "inconsistent"
    assert report.witness_row is not None


def test_solve_reports_undetermined_columns():
    m = RatMatrix.from_rows([[1, 1, 0], [0, 0, 1]])
    report = solve_linear(m, [2, 5])
    assert report.status == "underdetermined"
    assert report.free_columns == (1,)
    # the pivot in column 0 depends on the free column
    assert report.undetermined_columns == (0, 1)


def test_scalar_round_trips():
    rng = random.Random(7)
    for _ in range(50):
        a = Fraction(rng.randint(-50, 50), rng.randint(1, 30))
        c = Fraction(rng.randint(-50, 50), rng.randint(1, 30))
        assert (a + c) - c == a
        assert parse_scalar(format_scalar(a)) == a
    assert format_scalar(Fraction(9867)) == "9867"
    assert format_scalar(Fraction(-32, 3)) == "-32/3"
