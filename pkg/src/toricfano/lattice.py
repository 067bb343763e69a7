"""Exact integer and rational linear algebra for cone and fan computations.

Everything runs over arbitrary-precision integers and fractions; no floating
point is used anywhere. Vectors are plain tuples of ints (or Fractions for
rational results), matrices are immutable row-major IntegerMatrix values.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Sequence

from .errors import DependentSpan, NotSquare, SingularBasis

IntVector = tuple[int, ...]
RatVector = tuple[Fraction, ...]


@dataclass(frozen=True)
class IntegerMatrix:
    """An immutable integer matrix stored row-major."""

    rows: int
    cols: int
    entries: tuple[int, ...]

    def __post_init__(self):
        if len(self.entries) != self.rows * self.cols:
            raise ValueError("entry count must equal rows * cols")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]]) -> "IntegerMatrix":
        nrows = len(rows)
        ncols = len(rows[0]) if nrows else 0
        for r in rows:
            if len(r) != ncols:
                raise ValueError("ragged rows")
        return cls(nrows, ncols, tuple(int(x) for r in rows for x in r))

    @classmethod
    def identity(cls, n: int) -> "IntegerMatrix":
        return cls(n, n, tuple(1 if i == j else 0
                               for i in range(n) for j in range(n)))

    def row(self, i: int) -> IntVector:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def row_list(self) -> list[list[int]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def column(self, j: int) -> IntVector:
        return tuple(self.entries[i * self.cols + j] for i in range(self.rows))

    def transpose(self) -> "IntegerMatrix":
        return IntegerMatrix(
            self.cols, self.rows,
            tuple(self.entries[i * self.cols + j]
                  for j in range(self.cols) for i in range(self.rows)))

    def mul_vector(self, v: Sequence[int]) -> IntVector:
        if len(v) != self.cols:
            raise ValueError("vector length must equal cols")
        return tuple(sum(self.row(i)[j] * v[j] for j in range(self.cols))
                     for i in range(self.rows))


def vector_add(a: Sequence[int], b: Sequence[int]) -> IntVector:
    return tuple(x + y for x, y in zip(a, b, strict=True))


def vector_sum(vectors: Sequence[Sequence[int]], dim: int) -> IntVector:
    total = [0] * dim
    for v in vectors:
        for j in range(dim):
            total[j] += v[j]
    return tuple(total)


def content(v: Sequence[int]) -> int:
    """gcd of the coordinates; 0 for the zero vector."""
    g = 0
    for x in v:
        g = gcd(g, x)
    return g


def is_primitive(v: Sequence[int]) -> bool:
    return content(v) == 1


def make_primitive(v: Sequence[int]) -> IntVector:
    """Divide a nonzero vector by the gcd of its coordinates."""
    g = content(v)
    if g == 0:
        raise ValueError("zero vector has no primitive representative")
    return tuple(x // g for x in v)


def solve_in_basis(basis: Sequence[Sequence[int]],
                   target: Sequence[int]) -> RatVector:
    """Solve sum(c_i * basis_i) = target exactly over the rationals.

    The basis must consist of n independent vectors of length n.
    """
    n = len(target)
    if len(basis) != n or any(len(b) != n for b in basis):
        raise SingularBasis("basis must consist of n vectors of length n")
    # Columns of the system matrix are the basis vectors.
    aug = [[Fraction(basis[j][i]) for j in range(n)] + [Fraction(target[i])]
           for i in range(n)]
    for col in range(n):
        piv = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if piv is None:
            raise SingularBasis("basis determinant is zero")
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = aug[col][col]
        aug[col] = [x / inv for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return tuple(aug[r][n] for r in range(n))


def determinant(m: IntegerMatrix) -> int:
    """Exact integer determinant by fraction-free (Bareiss) elimination."""
    if m.rows != m.cols:
        raise NotSquare(f"matrix is {m.rows}x{m.cols}")
    n = m.rows
    if n == 0:
        return 1
    a = m.row_list()
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            piv = next((r for r in range(k + 1, n) if a[r][k] != 0), None)
            if piv is None:
                return 0
            a[k], a[piv] = a[piv], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                # Bareiss update: divisions are exact.
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def _row_hermite(rows: list[list[int]]) -> tuple[list[list[int]],
                                                 list[list[int]], int]:
    """Row Hermite form of an integer matrix.

    Returns (H, U, rank) with U unimodular, U * A = H, pivots positive and
    entries above each pivot reduced into [0, pivot).
    """
    a = [list(r) for r in rows]
    nrows = len(a)
    ncols = len(a[0]) if nrows else 0
    u = [[1 if i == j else 0 for j in range(nrows)] for i in range(nrows)]

    def sub(i: int, k: int, q: int):
        if q:
            a[i] = [x - q * y for x, y in zip(a[i], a[k])]
            u[i] = [x - q * y for x, y in zip(u[i], u[k])]

    rank = 0
    for col in range(ncols):
        while True:
            nz = [i for i in range(rank, nrows) if a[i][col] != 0]
            if len(nz) <= 1:
                break
            k = min(nz, key=lambda i: abs(a[i][col]))
            for i in nz:
                if i != k:
                    sub(i, k, a[i][col] // a[k][col])
        nz = [i for i in range(rank, nrows) if a[i][col] != 0]
        if not nz:
            continue
        k = nz[0]
        a[rank], a[k] = a[k], a[rank]
        u[rank], u[k] = u[k], u[rank]
        if a[rank][col] < 0:
            a[rank] = [-x for x in a[rank]]
            u[rank] = [-x for x in u[rank]]
        for i in range(rank):
            sub(i, rank, a[i][col] // a[rank][col])
        rank += 1
    return a, u, rank


def hermite_normal_form(m: IntegerMatrix) -> IntegerMatrix:
    """Row Hermite normal form with positive pivots."""
    h, _, _ = _row_hermite(m.row_list())
    return IntegerMatrix.from_rows(h)


def matrix_rank(m: IntegerMatrix) -> int:
    _, _, rank = _row_hermite(m.row_list())
    return rank


def integer_kernel(m: IntegerMatrix) -> list[IntVector]:
    """A canonical lattice basis of { v in Z^cols : m * v = 0 }.

    The returned vectors span the full (saturated) kernel lattice; the basis
    is put in Hermite form so the output is deterministic.
    """
    # Row-reduce the transpose while tracking the transform: zero rows of H
    # correspond to transform rows annihilating every column of m.
    h, u, rank = _row_hermite(m.transpose().row_list())
    basis = [u[i] for i in range(len(h)) if all(x == 0 for x in h[i])]
    assert len(basis) == m.cols - rank
    if not basis:
        return []
    canon, _, _ = _row_hermite(basis)
    return [tuple(r) for r in canon]


def quotient_lattice_projection(span: Sequence[Sequence[int]],
                                dim: int | None = None) -> IntegerMatrix:
    """A surjection q: Z^n -> Z^(n-k) whose kernel is exactly the span lattice.

    The span must consist of k independent primitive vectors generating a
    saturated sublattice (always true for the rays of a smooth cone). With an
    empty span the identity map on Z^dim is returned.
    """
    if not span:
        if dim is None:
            raise ValueError("dim is required for an empty span")
        return IntegerMatrix.identity(dim)
    n = len(span[0])
    if dim is not None and dim != n:
        raise ValueError("dim disagrees with vector length")
    if any(len(v) != n for v in span):
        raise ValueError("ragged span")
    k = len(span)
    if k > n:
        raise DependentSpan("more vectors than ambient rank")
    # Reduce the n x k matrix of span columns; the transform rows beyond the
    # rank annihilate every span vector.
    columns = [[span[j][i] for j in range(k)] for i in range(n)]
    h, u, rank = _row_hermite(columns)
    if rank < k:
        raise DependentSpan("span vectors are linearly dependent")
    pivot_product = 1
    for i in range(rank):
        pivot_product *= next(x for x in h[i] if x != 0)
    if pivot_product != 1:
        raise DependentSpan("span does not generate a saturated sublattice")
    q = [u[i] for i in range(k, n)]
    if not q:
        # Full span: the quotient is the zero lattice.
        return IntegerMatrix(0, n, ())
    canon, _, _ = _row_hermite(q)
    return IntegerMatrix.from_rows(canon)
