"""Fano test, Picard number, pseudo-index, Mori cone generators, and the
generalized Mukai inequality verdict.

The pseudo-index is computed as the minimum anticanonical degree over the
torus-invariant curves: every effective curve class of a smooth complete
toric variety is a nonnegative integer combination of wall classes, so the
minimum over all rational curves is attained on a wall.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb, gcd
from typing import Sequence

from . import lattice
from .errors import (
    InternalInconsistency,
    NonIntegralCoefficient,
    NotFano,
    UnpairedWall,
)
from .fan import Fan, faces
from .primitive import PrimitiveRelation, all_relations, primitive_collections

# ---------------------------------------------------------------------------
# wall curves


@dataclass(frozen=True)
class WallCurve:
    """An invariant curve: a wall with its two opposite rays and the integer
    relation u + v = sum(c_i * x_i) over the wall rays, stored as the class
    vector (+1 at u and v, -c_i at the wall rays)."""

    wall: tuple[int, ...]
    opposite_rays: tuple[int, int]
    relation: tuple[int, ...]
    anticanonical_degree: int


def wall_curves(fan: Fan) -> list[WallCurve]:
    """One WallCurve per codimension-1 face, in canonical wall order."""
    pairing: dict[tuple[int, ...], list[tuple[int, ...]]] = {}
    for c in fan.max_cones:
        for facet in combinations(c, fan.dim - 1):
            pairing.setdefault(facet, []).append(c)
    out = []
    m = len(fan.rays)
    for wall in sorted(pairing):
        cones = pairing[wall]
        if len(cones) != 2:
            raise UnpairedWall(
                f"wall {wall} lies in {len(cones)} maximal cones")
        u = next(i for i in cones[0] if i not in wall)
        v = next(i for i in cones[1] if i not in wall)
        basis = [fan.rays[i] for i in wall] + [fan.rays[u]]
        sol = lattice.solve_in_basis(basis, fan.rays[v])
        if sol[-1] != -1:
            raise InternalInconsistency(
                f"opposite ray coefficient {sol[-1]} at wall {wall}")
        vec = [0] * m
        vec[u] = 1
        vec[v] = 1
        for idx, coeff in zip(wall, sol):
            if coeff.denominator != 1:
                raise NonIntegralCoefficient(
                    f"wall {wall} relation has coefficient {coeff}")
            # u + v = sum(c_i x_i), so the class vector carries -c_i.
            vec[idx] = -int(coeff)
        degree = sum(vec)
        out.append(WallCurve(wall, tuple(sorted((u, v))), tuple(vec), degree))
    return out


# ---------------------------------------------------------------------------
# basic invariants


def picard_number(fan: Fan) -> int:
    return len(fan.rays) - fan.dim


def is_fano(fan: Fan) -> bool:
    """True iff every primitive relation has strictly positive degree."""
    return all(r.degree >= 1 for r in all_relations(fan))


def pseudo_index(fan: Fan) -> int:
    """Minimum anticanonical degree of an invariant curve (Fano fans only)."""
    if not is_fano(fan):
        raise NotFano("pseudo-index is only defined for Fano fans")
    return min(w.anticanonical_degree for w in wall_curves(fan))


# ---------------------------------------------------------------------------
# Mori cone generators by double description

FracVector = tuple[Fraction, ...]


def _solve_in_span(basis: Sequence[Sequence[int]],
                   target: Sequence[int]) -> FracVector:
    """Coordinates of target in the span of the basis rows, or raise."""
    k = len(basis)
    n = len(target)
    aug = [[Fraction(basis[j][i]) for j in range(k)] + [Fraction(target[i])]
           for i in range(n)]
    pivots = []
    row = 0
    for col in range(k):
        piv = next((r for r in range(row, n) if aug[r][col] != 0), None)
        if piv is None:
            continue
        aug[row], aug[piv] = aug[piv], aug[row]
        inv = aug[row][col]
        aug[row] = [x / inv for x in aug[row]]
        for r in range(n):
            if r != row and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[row])]
        pivots.append(col)
        row += 1
    for r in range(row, n):
        if aug[r][k] != 0:
            raise InternalInconsistency("vector outside the expected span")
    coords = [Fraction(0)] * k
    for r, col in enumerate(pivots):
        coords[col] = aug[r][k]
    return tuple(coords)


def _primitive_direction(v: Sequence[Fraction]) -> tuple[int, ...]:
    """Scale a nonzero rational vector to a primitive integer vector, keeping
    its direction."""
    denom = 1
    for x in v:
        denom = denom * x.denominator // gcd(denom, x.denominator)
    ints = [int(x * denom) for x in v]
    return lattice.make_primitive(ints)


def _rank(rows: Sequence[Sequence[int]]) -> int:
    if not rows:
        return 0
    work = [[Fraction(x) for x in r] for r in rows]
    ncols = len(work[0])
    rank = 0
    for col in range(ncols):
        piv = next((r for r in range(rank, len(work)) if work[r][col] != 0),
                   None)
        if piv is None:
            continue
        work[rank], work[piv] = work[piv], work[rank]
        inv = work[rank][col]
        work[rank] = [x / inv for x in work[rank]]
        for r in range(len(work)):
            if r != rank and work[r][col] != 0:
                f = work[r][col]
                work[r] = [x - f * y
                           for x, y in zip(work[r], work[rank])]
        rank += 1
    return rank


def _dual_extreme_rays(constraints: list[tuple[int, ...]],
                       dim: int) -> list[tuple[int, ...]]:
    """Extreme rays of { y : a . y >= 0 for all a } by incremental double
    description with exact integer arithmetic.

    Assumes the constraints span Q^dim, so the result cone is pointed.
    Each returned ray carries no lineality and is primitive.
    """
    def dot(a, b):
        return sum(x * y for x, y in zip(a, b))

    rays: list[tuple[int, ...]] = []
    tight: list[set[int]] = []
    lines: list[tuple[int, ...]] = [
        tuple(1 if j == i else 0 for j in range(dim)) for i in range(dim)]
    for ci, a in enumerate(constraints):
        pivot_idx = next((i for i, l in enumerate(lines) if dot(a, l) != 0),
                         None)
        if pivot_idx is not None:
            pivot = lines.pop(pivot_idx)
            if dot(a, pivot) < 0:
                pivot = tuple(-x for x in pivot)
            pa = dot(a, pivot)
            lines = [lattice.make_primitive(
                tuple(pa * x - dot(a, l) * p for x, p in zip(l, pivot)))
                for l in lines]
            # Projecting along the pivot scales by pa > 0 and lands every
            # previous ray on the new hyperplane; recorded tight sets survive.
            rays = [lattice.make_primitive(
                tuple(pa * x - dot(a, r) * p for x, p in zip(r, pivot)))
                for r in rays]
            for t in tight:
                t.add(ci)
            rays.append(lattice.make_primitive(pivot))
            tight.append(set(range(ci)))
            continue
        values = [dot(a, r) for r in rays]
        keep_rays: list[tuple[int, ...]] = []
        keep_tight: list[set[int]] = []
        for r, t, val in zip(rays, tight, values):
            if val > 0:
                keep_rays.append(r)
                keep_tight.append(t)
            elif val == 0:
                keep_rays.append(r)
                keep_tight.append(t | {ci})
        free_dim = dim - len(lines)
        for i, j in (
                (i, j) for i in range(len(rays)) for j in range(len(rays))):
            if not (values[i] > 0 and values[j] < 0):
                continue
            common = tight[i] & tight[j]
            # Algebraic adjacency: the shared tight constraints must cut the
            # pointed part down to a 2-face.
            if _rank([constraints[c] for c in common]) != free_dim - 2:
                continue
            new = tuple(values[i] * y - values[j] * x
                        for x, y in zip(rays[i], rays[j]))
            new = lattice.make_primitive(new)
            if new not in keep_rays:
                keep_rays.append(new)
                keep_tight.append(common | {ci})
        rays, tight = keep_rays, keep_tight
    if lines:
        raise InternalInconsistency("constraints do not span the space")
    order = sorted(range(len(rays)), key=lambda i: rays[i])
    return [rays[i] for i in order]


def _extremal_flags(vectors: list[FracVector]) -> list[bool]:
    """For each vector, whether it spans an extreme ray of the cone generated
    by all of them."""
    primitive = [_primitive_direction(v) for v in vectors]
    unique = sorted(set(primitive))
    # Coordinates inside the span keep the double description full-rank.
    span_basis: list[tuple[int, ...]] = []
    for v in unique:
        if _rank(span_basis + [v]) > len(span_basis):
            span_basis.append(v)
    r = len(span_basis)
    coords = [_primitive_direction(_solve_in_span(span_basis, v))
              for v in unique]
    facet_normals = _dual_extreme_rays(coords, r)

    def dot(a, b):
        return sum(x * y for x, y in zip(a, b))

    extremal: dict[tuple[int, ...], bool] = {}
    for v, c in zip(unique, coords):
        tight = [f for f in facet_normals if dot(f, c) == 0]
        extremal[v] = _rank(tight) == r - 1
    return [extremal[p] for p in primitive]


def mori_cone_extremal_classes(fan: Fan) -> list[tuple[int, ...]]:
    """Primitive integer generators of the extreme rays of the cone spanned
    by the wall classes, canonically ordered."""
    kernel = lattice.integer_kernel(fan.ray_matrix())
    classes = sorted({w.relation for w in wall_curves(fan)})
    coords = [_solve_in_span(kernel, c) for c in classes]
    flags = _extremal_flags(coords)
    return [c for c, f in zip(classes, flags) if f]


def is_extremal(fan: Fan,
                relation: PrimitiveRelation | Sequence[int]) -> bool:
    """True iff the class (of a relation, or given directly as a vector)
    spans an extreme ray of the Mori cone."""
    vector = getattr(relation, "class_vector", relation)
    target = lattice.make_primitive(vector)
    return target in mori_cone_extremal_classes(fan)


# ---------------------------------------------------------------------------
# contractibility and fibrations


def contractible_sufficient(fan: Fan, relation: PrimitiveRelation) -> bool:
    """True certifies contractibility (degree below twice the pseudo-index);
    False is inconclusive."""
    return relation.degree < 2 * pseudo_index(fan)


@dataclass(frozen=True)
class SmallCodimSearch:
    """Result of the search for a contractible relation whose target cone is
    small: under the hypothesis 4 * iota > n + 4 such a relation must exist,
    so an empty search result raises the violation flag."""

    hypothesis_holds: bool
    relation: PrimitiveRelation | None
    guarantee_violated: bool


def small_codim_contractible(fan: Fan) -> SmallCodimSearch:
    """Search for a contractible relation with at most iota - 2 targets."""
    iota = pseudo_index(fan)
    hypothesis = 4 * iota > fan.dim + 4
    hit = None
    for r in all_relations(fan):
        if r.degree < 2 * iota and len(r.targets) <= iota - 2:
            hit = r
            break
    return SmallCodimSearch(hypothesis, hit,
                            hypothesis and hit is None)


def fibration_in_P_iota(fan: Fan) -> bool:
    """Whether the variety fibers in projective spaces of dimension iota - 1.

    Two characterizations are evaluated and must agree: existence of a
    zero-sum relation of order iota, and the face-count inequality
    f_{iota-1} < C(f_0, iota). A fan of a projective space counts as a
    trivial fibration over a point (its zero-sum relation has order iota).
    """
    iota = pseudo_index(fan)
    by_relation = any(r.order == iota and not r.targets
                      for r in all_relations(fan))
    f0 = len(fan.rays)
    f_iota_minus_1 = len(faces(fan, iota)) if iota <= fan.dim else 0
    by_counts = f_iota_minus_1 < comb(f0, iota)
    if by_relation != by_counts:
        raise InternalInconsistency(
            f"fibration criteria disagree: relation={by_relation}, "
            f"counts={by_counts}")
    return by_relation


def product_of_projective_spaces(fan: Fan) -> list[int] | None:
    """Factor dimensions if the fan is a product of projective-space fans.

    Recognition is purely combinatorial: the primitive collections must be
    pairwise disjoint with zero-sum relations, partition the rays, and the
    maximal cones must be exactly the transversal unions (one facet choice
    per factor).
    """
    collections = primitive_collections(fan)
    covered: set[int] = set()
    for c in collections:
        if covered & set(c):
            return None
        covered |= set(c)
        total = lattice.vector_sum([fan.rays[i] for i in c], fan.dim)
        if any(x != 0 for x in total):
            return None
    if covered != set(range(len(fan.rays))):
        return None
    orders = [len(c) for c in collections]
    expected_cones = 1
    for h in orders:
        expected_cones *= h
    if len(fan.max_cones) != expected_cones:
        return None
    for cone in fan.max_cones:
        cone_set = set(cone)
        # A transversal union omits exactly one ray of each collection.
        if any(len(cone_set & set(c)) != len(c) - 1 for c in collections):
            return None
    return sorted(h - 1 for h in orders)


# ---------------------------------------------------------------------------
# the Mukai verdict


@dataclass(frozen=True)
class MukaiReport:
    picard_rho: int
    pseudo_index_iota: int
    is_fano: bool
    dim_n: int
    inequality_lhs: int
    inequality_holds: bool
    equality_case: str
    factors: tuple[int, ...] | None


def mukai_check(fan: Fan) -> MukaiReport:
    """Verdict on rho * (iota - 1) <= n with equality classification.

    Equality without recognition as a product of projective spaces is
    reported as EqualButUnrecognized and never silently absorbed.
    """
    if not is_fano(fan):
        raise NotFano("the inequality is stated for Fano fans")
    rho = picard_number(fan)
    iota = pseudo_index(fan)
    n = fan.dim
    lhs = rho * (iota - 1)
    holds = lhs <= n
    factors: tuple[int, ...] | None = None
    if lhs == n:
        found = product_of_projective_spaces(fan)
        if found is None:
            case = "EqualButUnrecognized"
        else:
            if len(found) != rho or any(d != iota - 1 for d in found):
                raise InternalInconsistency(
                    f"product factors {found} do not match rho={rho}, "
                    f"iota={iota}")
            factors = tuple(found)
            case = "ProductOfProjectiveSpaces"
    else:
        case = "NotEqual"
    return MukaiReport(rho, iota, True, n, lhs, holds, case, factors)
