"""Integer linear algebra: determinants, Hermite form, kernels, quotients."""

from __future__ import annotations

import random
from fractions import Fraction

import pytest

from toricfano.errors import DependentSpan, NotSquare, SingularBasis
from toricfano.lattice import (
    IntegerMatrix,
    _row_hermite,
    determinant,
    hermite_normal_form,
    integer_kernel,
    is_primitive,
    make_primitive,
    matrix_rank,
    quotient_lattice_projection,
    solve_in_basis,
)


def test_determinant_known_values():
    assert determinant(IntegerMatrix.identity(4)) == 1
    m = IntegerMatrix.from_rows([[2, 1], [1, 1]])
    assert determinant(m) == 1
    swap = IntegerMatrix.from_rows([[0, 1], [1, 0]])
    assert determinant(swap) == -1
    big = IntegerMatrix.from_rows([[3, 1, 4], [1, 5, 9], [2, 6, 5]])
    assert determinant(big) == -90


def test_determinant_rejects_non_square():
    with pytest.raises(NotSquare):
        determinant(IntegerMatrix.from_rows([[1, 2, 3], [4, 5, 6]]))


def test_hermite_form_properties():
    rng = random.Random(101)
    for _ in range(25):
        rows = rng.randrange(1, 5)
        cols = rng.randrange(1, 5)
        entries = [[rng.randrange(-9, 10) for _ in range(cols)]
                   for _ in range(rows)]
        m = IntegerMatrix.from_rows(entries)
        h, u, rank = _row_hermite(entries)
        # U is unimodular and U * M = H.
        assert determinant(IntegerMatrix.from_rows(u)) in (1, -1)
        product = [[sum(u[i][k] * entries[k][j] for k in range(rows))
                    for j in range(cols)] for i in range(rows)]
        assert h == product
        assert rank == matrix_rank(m)
        assert [list(hermite_normal_form(m).row(i))
                for i in range(rows)] == h
        # Echelon shape with positive pivots.
        last = -1
        for row in h:
            nz = [j for j, x in enumerate(row) if x != 0]
            if not nz:
                continue
            assert nz[0] > last
            assert row[nz[0]] > 0
            last = nz[0]


def test_integer_kernel_orthogonality():
    rng = random.Random(202)
    for _ in range(25):
        rows = rng.randrange(1, 4)
        cols = rng.randrange(1, 6)
        m = IntegerMatrix.from_rows(
            [[rng.randrange(-6, 7) for _ in range(cols)]
             for _ in range(rows)])
        kernel = integer_kernel(m)
        assert len(kernel) == cols - matrix_rank(m)
        for vec in kernel:
            assert all(sum(m.row(i)[j] * vec[j] for j in range(cols)) == 0
                       for i in range(rows))
        if kernel:
            assert matrix_rank(IntegerMatrix.from_rows(
                [list(v) for v in kernel])) == len(kernel)


def test_integer_kernel_projective_plane_class():
    rays = IntegerMatrix.from_rows([[1, 0, -1], [0, 1, -1]])
    assert integer_kernel(rays) == [(1, 1, 1)]


def test_solve_in_basis():
    basis = [(1, 0), (1, 2)]
    sol = solve_in_basis(basis, (3, 4))
    assert sol == (Fraction(1), Fraction(2))
    with pytest.raises(SingularBasis):
        solve_in_basis([(1, 0), (2, 0)], (0, 1))
    with pytest.raises(SingularBasis):
        solve_in_basis([(1, 0)], (0, 1))


def test_quotient_projection_basics():
    q = quotient_lattice_projection([(1, 0, 0)])
    assert q.rows == 2 and q.cols == 3
    # The span direction maps to zero; the map is surjective onto Z^2.
    assert q.mul_vector((1, 0, 0)) == (0, 0)
    image = IntegerMatrix.from_rows(
        [list(q.mul_vector(v)) for v in ((0, 1, 0), (0, 0, 1))])
    h = hermite_normal_form(image)
    assert [list(h.row(i)) for i in range(2)] == [[1, 0], [0, 1]]


def test_quotient_projection_rejects_bad_spans():
    with pytest.raises(DependentSpan):
        quotient_lattice_projection([(2, 0, 0)])
    with pytest.raises(DependentSpan):
        quotient_lattice_projection([(1, 0, 0), (2, 0, 0)])


def test_quotient_projection_empty_span_needs_dim():
    q = quotient_lattice_projection([], dim=3)
    assert q.rows == 3
    assert q.mul_vector((1, 2, 3)) == (1, 2, 3)


def test_primitivity_helpers():
    assert is_primitive((1, -1, 0))
    assert not is_primitive((2, -2, 0))
    assert not is_primitive((0, 0))
    assert make_primitive((4, -6, 2)) == (2, -3, 1)
