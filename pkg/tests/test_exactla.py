from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from commahom.exactla import (
    GF2,
    QQ,
    ExactMatrix,
    Field,
    all_vectors,
    column_space_basis,
    extend_to_basis,
    invert,
    kernel_basis,
    rank,
    rref,
    solve,
    solve_matrix,
)


def gf2(rows):
    return ExactMatrix.from_rows(GF2, rows)


def test_field_prime_validation():
    with pytest.raises(ValueError):
        Field.prime(4)
    assert Field.prime(5).order == 5
    assert str(QQ) == "Q"


def test_rationals_reduce():
    m = ExactMatrix.from_rows(QQ, [[Fraction(2, 4)]])
    assert m.entry(0, 0) == Fraction(1, 2)


def test_rref_empty_matrix():
    res = rref(ExactMatrix.zeros(GF2, 0, 0))
    assert res.rank == 0
    assert res.pivot_cols == ()


def test_rref_identity():
    res = rref(ExactMatrix.identity(GF2, 3))
    assert res.rank == 3
    assert res.pivot_cols == (0, 1, 2)


def test_rref_rank_one():
    res = rref(gf2([[1, 1], [1, 1]]))
    assert res.rank == 1


def test_rref_rationals():
    m = ExactMatrix.from_rows(QQ, [[2, 4], [1, 3]])
    res = rref(m)
    assert res.rank == 2
    assert res.reduced == ExactMatrix.identity(QQ, 2)


def test_kernel_identity_empty():
    assert kernel_basis(ExactMatrix.identity(GF2, 2)) == []


def test_kernel_zero_matrix_full():
    assert len(kernel_basis(ExactMatrix.zeros(GF2, 2, 3))) == 3


def test_kernel_one_one():
    basis = kernel_basis(gf2([[1, 1]]))
    assert basis == [(1, 1)]


def test_solve_identity():
    assert solve(ExactMatrix.identity(GF2, 2), (1, 0)) == (1, 0)


def test_solve_inconsistent():
    assert solve(ExactMatrix.zeros(GF2, 2, 2), (1, 0)) is None


def test_solve_underdetermined():
    x = solve(gf2([[1, 1], [0, 0]]), (1, 0))
    assert x in {(1, 0), (0, 1)}


def test_solve_matrix_shapes_zero_solution():
    a = ExactMatrix.zeros(GF2, 2, 0)
    b = ExactMatrix.zeros(GF2, 2, 3)
    x = solve_matrix(a, b)
    assert (x.rows, x.cols) == (0, 3)


def test_invert():
    m = gf2([[1, 1], [0, 1]])
    inv = invert(m)
    assert inv.mul(m) == ExactMatrix.identity(GF2, 2)
    assert invert(gf2([[1, 1], [1, 1]])) is None


def test_extend_to_basis():
    idx = extend_to_basis(GF2, [(1, 1, 0)], 3)
    assert len(idx) == 2


def test_column_space_basis():
    cols = column_space_basis(gf2([[1, 1], [1, 1]]))
    assert cols == [(1, 1)]


@st.composite
def gf2_matrices(draw, max_dim=4):
    r = draw(st.integers(min_value=0, max_value=max_dim))
    c = draw(st.integers(min_value=0, max_value=max_dim))
    entries = draw(st.lists(st.integers(0, 1), min_size=r * c, max_size=r * c))
    return ExactMatrix(GF2, r, c, tuple(entries))


@given(gf2_matrices())
@settings(max_examples=80, deadline=None)
def test_kernel_vectors_annihilate(m):
    basis = kernel_basis(m)
    assert len(basis) == m.cols - rank(m)
    for v in basis:
        assert all(x == 0 for x in m.matvec(v))
    if basis:
        stacked = ExactMatrix.from_columns(GF2, basis, m.cols)
        assert rank(stacked) == len(basis)


@given(gf2_matrices())
@settings(max_examples=50, deadline=None)
def test_rref_idempotent(m):
    once = rref(m).reduced
    assert rref(once).reduced == once


@given(gf2_matrices(max_dim=3), gf2_matrices(max_dim=3))
@settings(max_examples=40, deadline=None)
def test_solve_agrees_with_membership(m, other):
    if other.rows != m.rows or other.cols == 0:
        return
    b = other.column(0)
    x = solve(m, b)
    if x is not None:
        assert m.matvec(x) == tuple(b)


def test_all_vectors_gf2():
    vecs = list(all_vectors(GF2, 2))
    assert vecs == [(0, 0), (0, 1), (1, 0), (1, 1)]
