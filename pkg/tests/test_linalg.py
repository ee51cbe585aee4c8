"""Exact linear algebra: row reduction, kernels, solving, subspace calculus."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from taurec.errors import DimensionMismatchError, FieldMismatchError
from taurec.linalg import (
    Matrix,
    Scalar,
    column_space_basis,
    hstack,
    in_subspace,
    kernel_basis,
    preimage,
    rref,
    same_subspace,
    solve,
    subspace_contains,
    subspace_intersection,
    subspace_sum,
)


# -- Scalar invariants -------------------------------------------------


def test_scalar_lowest_terms_positive_denominator():
    s = Scalar(Fraction(4, -6))
    assert s.num == -2 and s.den == 3


def test_scalar_prime_field_reduced():
    s = Scalar(-3, p=5)
    assert s.num == 2 and s.den == 1
    assert Scalar(Fraction(1, 2), p=5).num == 3  # 2^{-1} = 3 mod 5


def test_scalar_mixed_tags_rejected():
    with pytest.raises(FieldMismatchError):
        Scalar(1, p=5) + Scalar(1)


def test_scalar_arithmetic():
    a, b = Scalar(Fraction(1, 2)), Scalar(Fraction(1, 3))
    assert (a + b).as_fraction() == Fraction(5, 6)
    assert (a * b).as_fraction() == Fraction(1, 6)
    assert (a / b).as_fraction() == Fraction(3, 2)
    assert (-a).as_fraction() == Fraction(-1, 2)


# -- rref --------------------------------------------------------------


def test_rref_identity_fixed_point():
    m = Matrix.identity(2)
    r, piv = rref(m)
    assert r == m and piv == [0, 1]


def test_rref_zero_matrix():
    m = Matrix.zero(3, 3)
    r, piv = rref(m)
    assert r == m and piv == []


def test_rref_rank_one():
    r, piv = rref(Matrix.from_rows([[1, 2], [2, 4]]))
    assert r.to_rows() == [[1, 2], [0, 0]]
    assert piv == [0]


def test_rref_pivots_strictly_increasing_and_rank():
    m = Matrix.from_rows([[0, 2, 1], [0, 4, 3], [1, 0, 0]])
    r, piv = rref(m)
    assert piv == sorted(piv) and len(piv) == len(set(piv))
    assert len(piv) == 3
    # rref is idempotent and rank-preserving
    assert rref(r)[0] == r
    assert r.rank() == m.rank()


def test_rref_mixed_field_tags_rejected():
    a = Matrix.from_rows([[1]], p=5)
    b = Matrix.from_rows([[1]])
    with pytest.raises(FieldMismatchError):
        hstack(a, b)


# -- kernel_basis ------------------------------------------------------


def test_kernel_of_identity_is_empty():
    assert kernel_basis(Matrix.identity(3)).cols == 0


def test_kernel_of_zero_is_everything():
    k = kernel_basis(Matrix.zero(4, 4))
    assert k.cols == 4 and k.rank() == 4


def test_kernel_one_equation():
    k = kernel_basis(Matrix.from_rows([[1, 1]]))
    assert k.cols == 1
    v = k.col_list(0)
    assert v[0] == -v[1] and v[0] != 0  # proportional to (1, -1)


def test_kernel_columns_are_independent_and_annihilated():
    m = Matrix.from_rows([[1, 2, 3], [2, 4, 6]])
    k = kernel_basis(m)
    assert k.cols == m.cols - m.rank()
    assert (m * k).is_zero()
    assert k.rank() == k.cols


# -- solve -------------------------------------------------------------


def test_solve_identity_returns_rhs():
    b = Matrix.from_rows([[3], [Fraction(1, 7)]])
    assert solve(Matrix.identity(2), b) == b


def test_solve_zero_matrix_nonzero_rhs_absent():
    assert solve(Matrix.zero(2, 2), Matrix.from_rows([[1], [0]])) is None


def test_solve_scalar_division():
    x = solve(Matrix.from_rows([[2]]), Matrix.from_rows([[3]]))
    assert x.to_rows() == [[Fraction(3, 2)]]


def test_solve_round_trips_exactly():
    a = Matrix.from_rows([[1, 2], [3, 4], [5, 6]])
    b = a * Matrix.from_rows([[Fraction(2, 3)], [Fraction(-1, 5)]])
    x = solve(a, b)
    assert a * x == b


def test_solve_dimension_mismatch():
    with pytest.raises(DimensionMismatchError):
        solve(Matrix.identity(2), Matrix.from_rows([[1]]))


def test_solve_prime_field():
    a = Matrix.from_rows([[2, 1], [1, 1]], p=7)
    b = Matrix.from_rows([[1], [0]], p=7)
    x = solve(a, b)
    assert (a * x)._num == b._num


# -- subspace operations ----------------------------------------------


def test_subspace_sum_and_intersection_of_equal_spaces():
    u = Matrix.from_cols([[1, 0, 1], [0, 1, 0]])
    assert same_subspace(subspace_sum(u, u), u)
    assert same_subspace(subspace_intersection(u, u), u)


def test_complementary_lines_in_plane():
    u = Matrix.from_cols([[1, 0]])
    v = Matrix.from_cols([[0, 1]])
    assert subspace_sum(u, v).rank() == 2
    assert subspace_intersection(u, v).cols == 0


def test_two_planes_in_three_space_meet_in_a_line():
    u = Matrix.from_cols([[1, 0, 0], [0, 1, 0]])
    v = Matrix.from_cols([[1, 1, 1], [0, 1, 2]])
    w = subspace_intersection(u, v)
    assert w.rank() == 1
    assert subspace_contains(u, w) and subspace_contains(v, w)


def test_membership():
    u = Matrix.from_cols([[1, 2, 0], [0, 0, 1]])
    assert in_subspace(Matrix.column([2, 4, 5]), u)
    assert not in_subspace(Matrix.column([1, 0, 0]), u)


def test_preimage_of_line_under_projection():
    f = Matrix.from_rows([[1, 0, 0], [0, 1, 0]])  # drop last coordinate
    u = Matrix.from_cols([[1, 0]])
    pre = preimage(f, u)
    # preimage = span{e1, e3}
    assert pre.rank() == 2
    assert in_subspace(Matrix.column([1, 0, 0]), pre)
    assert in_subspace(Matrix.column([0, 0, 1]), pre)
    assert not in_subspace(Matrix.column([0, 1, 0]), pre)


def test_preimage_of_zero_is_kernel():
    f = Matrix.from_rows([[1, 1]])
    pre = preimage(f, Matrix.zero(1, 0))
    assert same_subspace(pre, kernel_basis(f))


# -- property tests ----------------------------------------------------

small_entries = st.integers(min_value=-6, max_value=6)


def matrices(rows, cols):
    return st.lists(
        st.lists(small_entries, min_size=cols, max_size=cols),
        min_size=rows, max_size=rows,
    ).map(Matrix.from_rows)


@settings(max_examples=60, deadline=None)
@given(st.integers(2, 4).flatmap(lambda n: st.tuples(matrices(n, 3), matrices(n, 3))))
def test_modular_law(pair):
    u, v = pair
    du = u.rank()
    dv = v.rank()
    assert subspace_sum(u, v).rank() + subspace_intersection(u, v).rank() == du + dv


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 4).flatmap(lambda n: matrices(n, n + 1)))
def test_kernel_dimension_and_annihilation(m):
    k = kernel_basis(m)
    assert k.cols == m.cols - m.rank()
    assert (m * k).is_zero()
    assert rref(rref(m)[0])[0] == rref(m)[0]


@settings(max_examples=60, deadline=None)
@given(matrices(3, 3), matrices(3, 2))
def test_solve_iff_in_column_space(a, b):
    x = solve(a, b)
    if x is None:
        assert not subspace_contains(column_space_basis(a), b)
    else:
        assert a * x == b
