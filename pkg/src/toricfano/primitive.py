"""Primitive collections and primitive relations.

A primitive collection is a minimal set of ray generators that does not span
a cone of the fan. Its relation expresses the sum of the collection in the
minimal cone containing it, with strictly positive integer coefficients; the
degree is the order minus the coefficient sum. The class vector of a relation
lies in the integer kernel of the ray matrix.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Sequence

from . import lattice
from .errors import (
    InternalInconsistency,
    NonIntegralCoefficient,
    NotInSupport,
)
from .fan import Fan

Collection = tuple[int, ...]


@dataclass(frozen=True)
class PrimitiveRelation:
    """The lattice identity sum(collection) = sum(coeffs[i] * targets[i])."""

    collection: Collection
    targets: tuple[int, ...]
    coeffs: tuple[int, ...]
    order: int
    degree: int
    class_vector: tuple[int, ...]


def _face_set(fan: Fan) -> set[frozenset[int]]:
    out: set[frozenset[int]] = set()
    for c in fan.max_cones:
        for size in range(len(c) + 1):
            for sub in combinations(c, size):
                out.add(frozenset(sub))
    return out


def primitive_collections(fan: Fan) -> list[Collection]:
    """All primitive collections, sorted by size then lexicographically.

    Candidates are scanned by increasing cardinality; a set qualifies iff it
    is a non-face whose maximal proper subsets are all faces. Supersets of
    collections already found are pruned before the subset test.
    """
    m = len(fan.rays)
    fs = _face_set(fan)
    found: list[Collection] = []
    found_sets: list[frozenset[int]] = []
    # A minimal non-face has all its (s-1)-subsets spanning cones, so its
    # size is at most dim + 1.
    for size in range(2, min(m, fan.dim + 1) + 1):
        for cand in combinations(range(m), size):
            cs = frozenset(cand)
            if cs in fs:
                continue
            if any(f <= cs for f in found_sets):
                continue
            if all(cs - {i} in fs for i in cand):
                found.append(cand)
                found_sets.append(cs)
    found.sort(key=lambda c: (len(c), c))
    return found


def primitive_relation(fan: Fan, collection: Sequence[int]) -> PrimitiveRelation:
    """Compute the primitive relation of a collection.

    The sum of the collection is located in a maximal cone by exact linear
    solves; zero coefficients are dropped so the retained targets span the
    minimal containing cone.
    """
    collection = tuple(sorted(collection))
    m = len(fan.rays)
    s = lattice.vector_sum([fan.rays[i] for i in collection], fan.dim)
    order = len(collection)
    if all(x == 0 for x in s):
        targets: tuple[int, ...] = ()
        coeffs: tuple[int, ...] = ()
    else:
        located = None
        for cone in fan.max_cones:
            sol = lattice.solve_in_basis([fan.rays[i] for i in cone], s)
            if all(c >= 0 for c in sol):
                located = (cone, sol)
                break
        if located is None:
            raise NotInSupport(
                f"sum of {collection} lies in no maximal cone")
        cone, sol = located
        pairs = []
        for idx, coeff in zip(cone, sol):
            if coeff == 0:
                continue
            if coeff.denominator != 1:
                raise NonIntegralCoefficient(
                    f"coefficient {coeff} on ray {idx}")
            pairs.append((idx, int(coeff)))
        pairs.sort()
        targets = tuple(i for i, _ in pairs)
        coeffs = tuple(a for _, a in pairs)
    if set(targets) & set(collection):
        raise InternalInconsistency(
            f"collection {collection} meets its own target cone {targets}")
    degree = order - sum(coeffs)
    vec = [0] * m
    for i in collection:
        vec[i] = 1
    for i, a in zip(targets, coeffs):
        vec[i] = -a
    relation = PrimitiveRelation(collection, targets, coeffs, order, degree,
                                 tuple(vec))
    if fan.ray_matrix().mul_vector(relation.class_vector) != (0,) * fan.dim:
        raise InternalInconsistency(
            f"relation of {collection} is not in the kernel")
    return relation


def all_relations(fan: Fan) -> list[PrimitiveRelation]:
    """Primitive relations of every primitive collection, in collection order."""
    return [primitive_relation(fan, c) for c in primitive_collections(fan)]


def degrees_summary(fan: Fan) -> list[tuple[int, int]]:
    """The multiset of (order, degree) pairs, as a sorted list."""
    return sorted((r.order, r.degree) for r in all_relations(fan))
