"""Face-count vectors, the Dehn-Sommerville machinery, and the rho-bound
solver.

Two independent routes to the same numbers live here. The closed forms
(dehn_sommerville_fk, dehn_sommerville_tail, psi_k) evaluate explicit
binomial sums. The engine (ds_tail_from_prefix) knows nothing about those
sums: it solves the h-vector palindromy equations directly. The closed forms
are validated against the engine, never trusted; disagreements surface as
FormulaDiscrepancy records holding both values.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial
from typing import Callable, Sequence

from .errors import (
    DimensionOutOfRange,
    FormulaDiscrepancy,
    InternalInconsistency,
    NonIntegralResult,
    NotFano,
    RegimeUnsupported,
)
from .fan import Fan, faces
from .invariants import is_fano, pseudo_index, wall_curves


@dataclass(frozen=True)
class FVector:
    """Face counts of the boundary complex: f[j] holds f_{j-1}, so f[0] is
    the empty-face count 1 and f[n] is the facet count f_{n-1}."""

    n: int
    f: tuple[int, ...]

    def face_count(self, d: int) -> int:
        """f_d, with f_{-1} = 1 and f_d = 0 above the top dimension."""
        if d < -1:
            raise DimensionOutOfRange(f"face dimension {d} below -1")
        if d >= self.n:
            return 0
        return self.f[d + 1]

    @property
    def f0(self) -> int:
        return self.f[1]


def f_vector(fan: Fan) -> FVector:
    """Count the cones of each dimension."""
    return FVector(fan.dim,
                   tuple(len(faces(fan, j)) for j in range(fan.dim + 1)))


def euler_relation_holds(fv: FVector) -> bool:
    total = sum((-1) ** j * fv.f[j + 1] for j in range(fv.n))
    return total == 1 - (-1) ** fv.n


def check_binomial_identities(fv: FVector, iota: int) -> bool:
    """Whether f_{j-1} = C(f_0, j) for all j below iota."""
    return all(fv.f[j] == comb(fv.f0, j) for j in range(1, iota))


def is_simplex_criterion(fv: FVector) -> bool:
    """Whether f_{j-1} = C(f_0, j) for all j up to [n/2] + 1, which holds
    exactly for boundaries of simplices."""
    return all(fv.f[j] == comb(fv.f0, j)
               for j in range(1, fv.n // 2 + 2))


# ---------------------------------------------------------------------------
# the independent engine: h-vector palindromy


def h_vector(fv: FVector) -> tuple[int, ...]:
    n = fv.n
    return tuple(
        sum((-1) ** (j - i) * comb(n - i, j - i) * fv.f[i]
            for i in range(j + 1))
        for j in range(n + 1))


def is_palindromic(values: Sequence[int]) -> bool:
    return tuple(values) == tuple(reversed(values))


def ds_tail_from_prefix(n: int, prefix: Sequence[int]) -> tuple[Fraction, ...]:
    """Complete f_{-1}..f_{k-1} (k = [n/2]) to a full count vector using only
    the palindromy equations h_i = h_{n-i}.

    Returns the n+1 values f_{-1}..f_{n-1} as exact fractions.
    """
    if n < 1:
        raise DimensionOutOfRange("n must be at least 1")
    k = n // 2
    if len(prefix) != k + 1:
        raise ValueError(f"prefix must hold the {k + 1} counts f_-1..f_{k - 1}")
    unknowns = n - k

    def h_parts(j: int) -> tuple[Fraction, list[Fraction]]:
        const = Fraction(0)
        coeffs = [Fraction(0)] * unknowns
        for i in range(j + 1):
            c = (-1) ** (j - i) * comb(n - i, j - i)
            if i <= k:
                const += c * Fraction(prefix[i])
            else:
                coeffs[i - k - 1] += c
        return const, coeffs

    rows: list[list[Fraction]] = []
    for i in range(unknowns):
        c1, a1 = h_parts(i)
        c2, a2 = h_parts(n - i)
        rows.append([x - y for x, y in zip(a1, a2)] + [c2 - c1])
    for col in range(unknowns):
        piv = next(r for r in range(col, unknowns) if rows[r][col] != 0)
        rows[col], rows[piv] = rows[piv], rows[col]
        inv = rows[col][col]
        rows[col] = [x / inv for x in rows[col]]
        for r in range(unknowns):
            if r != col and rows[r][col] != 0:
                fac = rows[r][col]
                rows[r] = [x - fac * y for x, y in zip(rows[r], rows[col])]
    tail = [rows[r][unknowns] for r in range(unknowns)]
    return tuple(Fraction(x) for x in prefix) + tuple(tail)


# ---------------------------------------------------------------------------
# closed forms


def _require_integer(value: Fraction, what: str) -> int:
    if value.denominator != 1:
        raise NonIntegralResult(f"{what} evaluated to {value}")
    return int(value)


def _fk_closed(f0: int, n: int) -> Fraction:
    k = n // 2
    if n % 2 == 0:
        return sum(
            (Fraction((-1) ** (k - j - 1) * (j + 1), k + 1)
             * comb(2 * k - j, k) * comb(f0, j + 1) for j in range(k)),
            Fraction(0))
    return sum(
        (Fraction((-1) ** (k - j - 1) * comb(2 * k - j + 1, k + 1)
                  * comb(f0, j + 1)) for j in range(-1, k)),
        Fraction(0))


def dehn_sommerville_fk(f0: int, n: int) -> int:
    """f_k (k = [n/2]) under the hypothesis f_{j-1} = C(f_0, j) for j <= k."""
    if n < 2:
        raise DimensionOutOfRange("n must be at least 2")
    return _require_integer(_fk_closed(f0, n), f"f_{n // 2}")


def _tail_closed(f0: int, f_kminus1: int | Fraction,
                 n: int) -> tuple[Fraction, Fraction]:
    k = n // 2
    s = Fraction(f_kminus1)
    if n % 2 == 0:
        fn2 = k * s + sum(
            ((-1) ** j * Fraction(k - j, k + j - 1)
             * ((k - 1) * comb(k + j, k) + comb(k + j - 1, k))
             * comb(f0, k - j) for j in range(1, k)),
            Fraction(0))
        # The leading inner binomial is C(k-1, 2); with C(k, 2) the sum fails
        # every simplex cross-check.
        fn3 = comb(k, 2) * s + sum(
            ((-1) ** j * Fraction(k - j, k + j - 2)
             * (comb(k - 1, 2) * comb(k + j, k)
                + (k - 2) * comb(k + j - 1, k) + comb(k + j - 2, k))
             * comb(f0, k - j) for j in range(1, k)),
            Fraction(0))
        return fn2, fn3
    fn2 = (2 * k + 1) * s + sum(
        ((-1) ** j * Fraction(2 * k + 1, k + j)
         * (k * comb(k + j + 1, k + 1) + comb(k + j, k + 1))
         * comb(f0, k - j) for j in range(1, k + 1)),
        Fraction(0))
    fn3 = k * k * s + sum(
        ((-1) ** j * Fraction(2 * k, k + j - 1)
         * (comb(k, 2) * comb(k + j + 1, k + 1)
            + (k - 1) * comb(k + j, k + 1) + comb(k + j - 1, k + 1))
         * comb(f0, k - j) for j in range(1, k + 1)),
        Fraction(0))
    return fn2, fn3


def dehn_sommerville_tail(f0: int, f_kminus1: int, n: int) -> tuple[int, int]:
    """(f_{n-2}, f_{n-3}) under the hypothesis f_{j-1} = C(f_0, j) for
    j <= k - 1, with f_{k-1} supplied."""
    if n < 4:
        raise DimensionOutOfRange("n must be at least 4")
    fn2, fn3 = _tail_closed(f0, f_kminus1, n)
    return (_require_integer(fn2, f"f_{n - 2}"),
            _require_integer(fn3, f"f_{n - 3}"))


def psi_k(f0: int, n: int) -> Fraction:
    """The bound polynomial with f_{k-1} <= psi_k(f_0) in the
    iota = [n/2] - 1 regime."""
    if n < 4:
        raise DimensionOutOfRange("n must be at least 4")
    k = n // 2
    if n % 2 == 0:
        lead = Fraction(k ** 3 - k ** 2 + 12, k ** 2) * comb(f0, k - 1)
        rest = sum(
            (Fraction((-1) ** (j - 1) * (k - j) * factorial(k + j - 3),
                      k * factorial(k) * factorial(j))
             * ((k + j - 1) * (k + j - 2) * k + 12 * j) * comb(f0, k - j)
             for j in range(2, k)),
            Fraction(0))
        return lead + rest
    lead = Fraction(2 * k ** 3 + 3 * k ** 2 - 2 * k + 21,
                    (k - 1) * (2 * k + 3)) * comb(f0, k - 1)
    rest = sum(
        (Fraction((-1) ** (j - 1) * factorial(k + j - 2),
                  (k - 1) * (2 * k + 3) * factorial(k) * factorial(j))
         * (2 * k ** 4 + (4 * j - 1) * k ** 3 + 2 * (j * j - 2) * k ** 2
            + (j * j + 17 * j + 3) * k + 3 * j * (1 - j))
         * comb(f0, k - j) for j in range(2, k + 1)),
        Fraction(0))
    return lead + rest


def psi_k_eliminated(f0: int, n: int) -> Fraction:
    """Re-derive psi_k by eliminating f_{n-2} and f_{n-3} from the tail
    closed forms through the degree-sum inequality
    12 f_{n-3} >= (3n + iota - 5) f_{n-2} with iota = [n/2] - 1."""
    if n < 4:
        raise DimensionOutOfRange("n must be at least 4")
    k = n // 2
    c = 3 * n + (k - 1) - 5
    a0, b0 = _tail_closed(f0, 0, n)
    a_at1, b_at1 = _tail_closed(f0, 1, n)
    a1 = a_at1 - a0
    b1 = b_at1 - b0
    denom = c * a1 - 12 * b1
    if denom <= 0:
        raise InternalInconsistency(
            "elimination does not bound f_{k-1} from above")
    return (12 * b0 - c * a0) / denom


# ---------------------------------------------------------------------------
# discrepancy scanning


@dataclass(frozen=True)
class Discrepancy:
    """A closed form and the engine disagreeing at one input."""

    formula: str
    inputs: tuple[int, ...]
    closed_value: Fraction
    engine_value: Fraction


def closed_form_cross_check(
        n: int,
        f0_values: Sequence[int] | None = None,
        fk_offsets: Sequence[int] | None = None,
        fk_form: Callable[[int, int], Fraction] | None = None,
        tail_form: Callable[[int, int | Fraction, int],
                            tuple[Fraction, Fraction]] | None = None,
) -> list[Discrepancy]:
    """Compare the closed forms against the palindromy engine.

    The engine is fed the same hypothesis inputs (binomial prefix, free
    f_{k-1}); both routes must produce identical values. Alternative formula
    implementations can be injected to demonstrate that a transcription slip
    would be caught.
    """
    if n < 4:
        raise DimensionOutOfRange("n must be at least 4")
    k = n // 2
    fk_form = fk_form or _fk_closed
    tail_form = tail_form or _tail_closed
    if f0_values is None:
        f0_values = range(n + 1, n + 13)
    if fk_offsets is None:
        fk_offsets = range(-2, 7)
    out: list[Discrepancy] = []
    for f0 in f0_values:
        prefix = [comb(f0, j) for j in range(k + 1)]
        full = ds_tail_from_prefix(n, prefix)
        closed = fk_form(f0, n)
        if closed != full[k + 1]:
            out.append(Discrepancy("fk", (f0,), Fraction(closed),
                                   full[k + 1]))
        for off in fk_offsets:
            s = comb(f0, k) + off
            full2 = ds_tail_from_prefix(n, prefix[:k] + [s])
            got2, got3 = tail_form(f0, s, n)
            want2, want3 = full2[n - 1], full2[n - 2]
            if got2 != want2:
                out.append(Discrepancy("tail_fn2", (f0, s), Fraction(got2),
                                       want2))
            if got3 != want3:
                out.append(Discrepancy("tail_fn3", (f0, s), Fraction(got3),
                                       want3))
    return out


def verify_closed_forms(n: int, **kwargs) -> None:
    """Raise FormulaDiscrepancy when any closed form disagrees with the
    engine."""
    records = closed_form_cross_check(n, **kwargs)
    if records:
        raise FormulaDiscrepancy(records)


# ---------------------------------------------------------------------------
# degree-sum identity and inequality


def degree_sum_identity(fan: Fan) -> bool:
    """Whether the total of (degree - 2) over all walls equals
    12 f_{n-3} - 3 (n-1) f_{n-2}."""
    if fan.dim < 2:
        raise DimensionOutOfRange("the identity needs dimension at least 2")
    fv = f_vector(fan)
    total = sum(w.anticanonical_degree - 2 for w in wall_curves(fan))
    return total == 12 * fv.face_count(fan.dim - 3) \
        - 3 * (fan.dim - 1) * fv.face_count(fan.dim - 2)


def lemma_degree_sum_check(fan: Fan) -> bool:
    """Both the degree-sum identity and the inequality
    12 f_{n-3} >= (3n + iota - 5) f_{n-2}."""
    if not is_fano(fan):
        raise NotFano("the inequality needs the pseudo-index")
    iota = pseudo_index(fan)
    fv = f_vector(fan)
    inequality = 12 * fv.face_count(fan.dim - 3) >= \
        (3 * fan.dim + iota - 5) * fv.face_count(fan.dim - 2)
    return degree_sum_identity(fan) and inequality


# ---------------------------------------------------------------------------
# the rho-bound solver and tables

REGIME_HALF = ((4, 2), (5, 2), (6, 3), (7, 3))
REGIME_HALF_MINUS_ONE = ((6, 2), (7, 2), (8, 3), (9, 3), (10, 4), (11, 4),
                         (12, 5), (13, 5))

_POST_VIOLATION_WINDOW = 5
_SCAN_LIMIT = 64


def _bound_margin(n: int, iota: int, rho: int) -> Fraction:
    """Left-hand side minus right-hand side of the regime inequality; the
    bound admits rho exactly when this is <= 0."""
    k = n // 2
    f0 = n + rho
    if iota == k:
        return comb(f0, k + 1) - Fraction(_fk_closed(f0, n)) \
            - Fraction(f0, k + 1)
    return comb(f0, k) - Fraction(f0, k) - psi_k(f0, n)


def max_rho_bound(n: int, iota: int) -> int:
    """Largest rho with f_0 = rho + n satisfying the regime inequality.

    Supported regimes: iota = [n/2] for 4 <= n <= 7 and iota = [n/2] - 1 for
    6 <= n <= 13. The scan runs upward to the first violation and then
    asserts the violation persists over a short window.
    """
    if (n, iota) not in REGIME_HALF + REGIME_HALF_MINUS_ONE:
        raise RegimeUnsupported(f"(n={n}, iota={iota}) is outside the "
                                "supported regimes")
    best = 0
    rho = 1
    while rho <= _SCAN_LIMIT:
        if _bound_margin(n, iota, rho) <= 0:
            best = rho
            rho += 1
        else:
            break
    else:
        raise InternalInconsistency("inequality never violated in the scan")
    for extra in range(1, _POST_VIOLATION_WINDOW + 1):
        if _bound_margin(n, iota, rho + extra) <= 0:
            raise InternalInconsistency(
                f"violation at rho={rho} does not persist at "
                f"rho={rho + extra}")
    return best


@dataclass(frozen=True)
class BoundTable:
    """Bounds per (n, iota) cell."""

    entries: tuple[tuple[tuple[int, int], int], ...]

    def get(self, n: int, iota: int) -> int:
        for cell, bound in self.entries:
            if cell == (n, iota):
                return bound
        raise RegimeUnsupported(f"no table entry for (n={n}, iota={iota})")


def corollary_bound_table() -> BoundTable:
    """The bounds equivalent to rho * (iota - 1) <= n over both regimes,
    namely floor(n / (iota - 1))."""
    cells = REGIME_HALF + REGIME_HALF_MINUS_ONE
    return BoundTable(tuple(((n, iota), n // (iota - 1))
                            for n, iota in cells))
