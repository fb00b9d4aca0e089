import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from polymaass import connection as cn
from polymaass.errors import BoundaryLengthError, TableMismatchError, WeightError

ZERO_K2 = [
    [1, 0],
    [1, 1, 0],
    [1, 2, 2, 0],
    [1, 3, 5, 5, 0],
    [1, 4, 9, 14, 14, 0],
    [1, 5, 14, 28, 42, 42, 0],
    [1, 6, 20, 48, 90, 132, 132, 0],
    [1, 7, 27, 75, 165, 297, 429, 429, 0],
]
BINOMIAL_K2 = [
    [1, 1],
    [1, 2, 3],
    [1, 3, 6, 10],
    [1, 4, 10, 20, 35],
    [1, 5, 15, 35, 70, 126],
    [1, 6, 21, 56, 126, 252, 462],
    [1, 7, 28, 84, 210, 462, 924, 1716],
    [1, 8, 36, 120, 330, 792, 1716, 3432, 6435],
]


def test_zero_boundary_table():
    t = cn.solve_table(2, cn.Boundary.ZERO, 7)
    assert [t.row(n) for n in range(8)] == ZERO_K2


def test_binomial_boundary_table():
    t = cn.solve_table(2, cn.Boundary.BINOMIAL, 7)
    assert [t.row(n) for n in range(8)] == BINOMIAL_K2


def test_diagonals():
    zero = cn.solve_table(2, cn.Boundary.ZERO, 20)
    assert cn.catalan_diagonal(zero) == [cn.catalan(n) for n in range(21)]
    binom = cn.solve_table(2, cn.Boundary.BINOMIAL, 20)
    assert [binom[n, n] for n in range(21)] == [math.comb(2 * n, n) for n in range(21)]


@pytest.mark.parametrize("k", [2, 4, 6, 8])
def test_closed_form(k):
    t = cn.solve_table(k, cn.Boundary.BINOMIAL, 10)
    for n in range(11):
        for l in range(n + 2):
            assert t[n, l] == cn.closed_form_binomial(n, k, l)


def test_weight_four_example():
    t = cn.solve_table(4, cn.Boundary.BINOMIAL, 3)
    assert t[1, 1] == Fraction(2, 3)
    assert cn.binomial_boundary(3, 2) == math.comb(7, 4)


@given(st.sampled_from([2, 4, 6, 8, 10]), st.integers(0, 12),
       st.sampled_from(list(cn.Boundary)))
def test_recurrence_holds(k, n_max, boundary):
    custom = [Fraction(j, 7) for j in range(n_max + 1)] if boundary is cn.Boundary.CUSTOM else None
    t = cn.solve_table(k, boundary, n_max, custom)
    assert all(r == 0 for r in cn.recurrence_residuals(t))
    assert all(t[n, 0] == 1 for n in range(n_max + 1))
    assert t[n_max, -1] == 0


def test_csv_round_trip():
    t = cn.solve_table(4, cn.Boundary.BINOMIAL, 6)
    text = cn.table_to_csv(t)
    assert text.splitlines()[0] == "n,l,numerator,denominator"
    back = cn.table_from_csv(text, 4)
    assert back.rows == t.rows
    assert cn.table_to_csv(back) == text


def test_errors():
    with pytest.raises(WeightError):
        cn.solve_table(3)
    with pytest.raises(WeightError):
        cn.solve_table(0)
    with pytest.raises(BoundaryLengthError):
        cn.solve_table(2, cn.Boundary.CUSTOM, 4, [1, 2])
    with pytest.raises(TableMismatchError):
        cn.catalan_diagonal(cn.solve_table(4, cn.Boundary.ZERO, 3))
    with pytest.raises(ValueError):
        cn.solve_table(2, cn.Boundary.ZERO, 65)
