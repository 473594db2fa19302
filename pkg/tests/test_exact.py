"""Exact rational linear algebra helpers."""
from __future__ import annotations

from fractions import Fraction as Q

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from emm.exact import (fraction_to_str, integer_span_is_full, mat_add,
                       mat_inv, nullspace, primitive, rank, solve,
                       solve_general, transpose)


def test_solve_simple():
    a = [[Q(2), Q(1)], [Q(1), Q(3)]]
    x = solve(a, [[Q(5)], [Q(10)]])  # matrix right-hand side, one column
    assert x == ((Q(1),), (Q(3),))


def test_solve_singular_raises():
    with pytest.raises(ZeroDivisionError):
        solve([[Q(1), Q(2)], [Q(2), Q(4)]], [[Q(1)], [Q(1)]])


def test_mat_inv_round_trip():
    a = [[Q(1), Q(2)], [Q(3), Q(5)]]
    inv = mat_inv(a)
    prod = [[sum(a[i][k] * inv[k][j] for k in range(2)) for j in range(2)]
            for i in range(2)]
    assert prod == [[1, 0], [0, 1]]


def test_rank_and_nullspace():
    a = [(1, 2, 3), (2, 4, 6), (0, 1, 1)]
    assert rank(a) == 2
    null = nullspace(a)
    assert len(null) == 1
    v = null[0]
    # primitive integer kernel vector
    assert all(isinstance(c, int) or c.denominator == 1 for c in v)
    for row in a:
        assert sum(r * c for r, c in zip(row, v)) == 0


def test_primitive_clears_denominators():
    assert primitive([Q(1, 2), Q(1, 3)]) == (3, 2)
    assert primitive([Q(-2), Q(4)]) == (-1, 2) or \
        primitive([Q(-2), Q(4)]) == (1, -2)


def test_solve_general_underdetermined():
    # one equation, two unknowns: free variable pinned to zero
    x = solve_general([[Q(1), Q(1)]], [Q(3)])
    assert x is not None
    assert x[0] + x[1] == 3
    assert 0 in x


def test_solve_general_inconsistent_returns_none():
    a = [[Q(1), Q(1)], [Q(1), Q(1)]]
    assert solve_general(a, [Q(1), Q(2)]) is None


def test_solve_general_overdetermined_consistent():
    a = [[Q(1), Q(0)], [Q(0), Q(1)], [Q(1), Q(1)]]
    x = solve_general(a, [Q(2), Q(3), Q(5)])
    assert x == (Q(2), Q(3))


def test_integer_span():
    assert integer_span_is_full([(1, 0), (0, 1)], 2)
    assert integer_span_is_full([(1, 1), (1, 0)], 2)
    assert not integer_span_is_full([(2, 0), (0, 1)], 2)
    assert not integer_span_is_full([(1, 0)], 2)


def test_mat_add_with_weights():
    a = [[Q(1), Q(0)], [Q(0), Q(1)]]
    b = [[Q(0), Q(1)], [Q(1), Q(0)]]
    s = mat_add(a, b, Q(2), Q(3))
    assert s == ((Q(2), Q(3)), (Q(3), Q(2)))


def test_transpose():
    assert transpose([(1, 2, 3), (4, 5, 6)]) == ((1, 4), (2, 5), (3, 6))


def test_fraction_to_str():
    assert fraction_to_str(Q(3, 4)) == "3/4"
    assert fraction_to_str(Q(-5)) == "-5/1"


@st.composite
def square_systems(draw):
    n = draw(st.integers(1, 4))
    entry = st.integers(-6, 6)
    a = [[Q(draw(entry)) for _ in range(n)] for _ in range(n)]
    x = [Q(draw(entry), draw(st.integers(1, 3))) for _ in range(n)]
    return a, x


@given(square_systems())
@settings(max_examples=80, deadline=None)
def test_solve_recovers_known_solution(ax):
    a, x = ax
    b = [[sum(a[i][j] * x[j] for j in range(len(x)))] for i in range(len(x))]
    try:
        got = solve(a, b)
    except ZeroDivisionError:
        assert rank(a) < len(a)
        return
    assert [row[0] for row in got] == list(x)


@given(square_systems())
@settings(max_examples=60, deadline=None)
def test_solve_general_residual_is_zero(ax):
    a, x = ax
    b = [sum(a[i][j] * x[j] for j in range(len(x))) for i in range(len(x))]
    got = solve_general(a, b)
    assert got is not None  # consistent by construction
    for i in range(len(a)):
        assert sum(a[i][j] * got[j] for j in range(len(x))) == b[i]
