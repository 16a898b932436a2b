"""Tests for exact integer and rational linear algebra."""

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from loghilb.linalg import (
    InconsistentSystemError,
    IntMatrix,
    NonUniqueSolutionError,
    det,
    hermite_normal_form,
    in_row_span_z,
    invariant_factors,
    mat_mul,
    rational_solve,
    smith_normal_form,
)


def test_det_small():
    assert det([[2]]) == 2
    assert det([[1, 2], [3, 4]]) == -2
    assert det([[0, 1], [1, 0]]) == -1
    assert det([[1, 2], [2, 4]]) == 0


def test_det_non_square_raises():
    with pytest.raises(ValueError):
        det([[1, 2, 3], [4, 5, 6]])


def test_int_matrix_wrapper():
    m = IntMatrix.from_rows([[1, 2], [3, 4]])
    assert m.rows == 2 and m.cols == 2
    assert m.to_lists() == [[1, 2], [3, 4]]
    with pytest.raises(ValueError):
        IntMatrix.from_rows([[1], [2, 3]])


def _is_snf(d, nrows, ncols):
    diag = [d[i][i] for i in range(min(nrows, ncols))]
    for i in range(nrows):
        for j in range(ncols):
            if i != j and d[i][j] != 0:
                return False
    nonzero = [x for x in diag if x != 0]
    if any(x < 0 for x in diag):
        return False
    for a, b in zip(nonzero, nonzero[1:]):
        if b % a != 0:
            return False
    # zeros only after all nonzero entries
    seen_zero = False
    for x in diag:
        if x == 0:
            seen_zero = True
        elif seen_zero:
            return False
    return True


def _check_snf(m):
    d, u, v = smith_normal_form(m)
    assert mat_mul(mat_mul(u, [list(r) for r in m]), v) == d
    assert abs(det(u)) == 1
    assert abs(det(v)) == 1
    assert _is_snf(d, len(m), len(m[0]))
    return d


def test_snf_known_example():
    d = _check_snf([[2, 4, 4], [-6, 6, 12], [10, 4, 16]])
    assert [d[i][i] for i in range(3)] == [2, 2, 156]


def test_snf_rectangular():
    d = _check_snf([[1, 2, 3], [4, 5, 6]])
    assert [d[0][0], d[1][1]] == [1, 3]


def test_invariant_factors_match_snf_diagonal():
    m = [[2, 4, 4], [-6, 6, 12], [10, 4, 16]]
    assert invariant_factors(m) == [2, 2, 156]
    assert invariant_factors([[0, 0], [0, 0]]) == []
    assert invariant_factors([[6, 0], [0, 4]]) == [2, 12]


@settings(max_examples=80, deadline=None)
@given(
    st.lists(
        st.lists(st.integers(min_value=-9, max_value=9), min_size=3, max_size=3),
        min_size=1,
        max_size=4,
    )
)
def test_snf_random(m):
    d = _check_snf(m)
    diag = [d[i][i] for i in range(min(len(m), 3)) if d[i][i] != 0]
    assert invariant_factors(m) == diag


def test_hermite_row_style():
    m = [[2, 3, 6, 2], [5, 6, 1, 6], [8, 3, 1, 1]]
    h, u = hermite_normal_form(m)
    assert mat_mul(u, m) == h
    assert abs(det(u)) == 1
    # echelon with positive pivots, entries above pivots reduced
    pivots = []
    for row in h:
        lead = next((j for j, x in enumerate(row) if x != 0), None)
        if lead is not None:
            assert row[lead] > 0
            pivots.append(lead)
    assert pivots == sorted(pivots)


def test_in_row_span_z():
    m = [[1, 0, 0], [0, 2, 0]]
    assert in_row_span_z(m, [3, 4, 0])
    assert not in_row_span_z(m, [0, 1, 0])
    assert not in_row_span_z(m, [0, 0, 1])
    assert in_row_span_z([], [0, 0])
    assert not in_row_span_z([], [1, 0])


def test_rational_solve_unique():
    x = rational_solve([[2, 1], [1, -1]], [5, 1])
    assert x == [Fraction(2), Fraction(1)]


def test_rational_solve_fractional():
    x = rational_solve([[2, 0], [0, 3]], [1, 1])
    assert x == [Fraction(1, 2), Fraction(1, 3)]


def test_rational_solve_inconsistent():
    with pytest.raises(InconsistentSystemError):
        rational_solve([[1, 1], [1, 1]], [1, 2])


def test_rational_solve_underdetermined():
    with pytest.raises(NonUniqueSolutionError):
        rational_solve([[1, 1]], [1])
