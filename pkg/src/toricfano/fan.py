"""The Fan data type: validation, face enumeration, constructors, star
subdivision, and invariant-subvariety (quotient) fans.

A fan is stored combinatorially: an ambient rank, a tuple of primitive ray
generators, and the maximal cones as sorted index tuples into the ray list.
Cone references throughout the package are plain sorted index tuples; the
empty tuple is the zero cone.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

from . import lattice
from .errors import (
    ConeTooSmall,
    DimensionOutOfRange,
    NotACone,
    SingularBasis,
)
from .lattice import IntegerMatrix, IntVector

ConeRef = tuple[int, ...]

DEFAULT_SEED = 101
_LOCATION_TRIALS = 5
_RESAMPLE_LIMIT = 64
_COORD_BOUND = 10 ** 6


@dataclass(frozen=True)
class Fan:
    """A complete smooth fan given by rays and maximal cones."""

    dim: int
    rays: tuple[IntVector, ...]
    max_cones: tuple[ConeRef, ...]

    def ray_matrix(self) -> IntegerMatrix:
        """The dim x len(rays) matrix whose columns are the rays."""
        return IntegerMatrix.from_rows(
            [[r[i] for r in self.rays] for i in range(self.dim)])


def make_fan(dim: int, rays: Sequence[Sequence[int]],
             max_cones: Iterable[Sequence[int]]) -> Fan:
    """Build a Fan in canonical form.

    Rays are sorted lexicographically, cone indices remapped accordingly,
    each cone sorted, and the cone list sorted. Only structural problems
    raise here (wrong arities, bad indices); mathematical validity is the
    business of validate().
    """
    if dim < 1:
        raise ValueError("dim must be at least 1")
    rays = [tuple(int(x) for x in r) for r in rays]
    if not rays:
        raise ValueError("at least one ray is required")
    for r in rays:
        if len(r) != dim:
            raise ValueError(f"ray {r} does not have {dim} coordinates")
    cones = [tuple(int(i) for i in c) for c in max_cones]
    if not cones:
        raise ValueError("at least one maximal cone is required")
    for c in cones:
        if len(c) != dim:
            raise ValueError(f"maximal cone {c} does not have {dim} rays")
        if len(set(c)) != len(c):
            raise ValueError(f"maximal cone {c} repeats a ray index")
        for i in c:
            if not 0 <= i < len(rays):
                raise ValueError(f"ray index {i} out of range")
    order = sorted(range(len(rays)), key=lambda i: rays[i])
    newpos = {old: new for new, old in enumerate(order)}
    canon_rays = tuple(rays[i] for i in order)
    canon_cones = tuple(sorted(tuple(sorted(newpos[i] for i in c))
                               for c in cones))
    return Fan(dim, canon_rays, canon_cones)


# ---------------------------------------------------------------------------
# validation


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str = ""


@dataclass(frozen=True)
class ValidationReport:
    checks: tuple[CheckResult, ...]

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def failed_names(self) -> list[str]:
        return [c.name for c in self.checks if not c.passed]


def _check_primitivity(fan: Fan) -> CheckResult:
    bad = [i for i, r in enumerate(fan.rays) if not lattice.is_primitive(r)]
    if bad:
        return CheckResult("primitivity", False,
                           f"non-primitive rays at indices {bad}")
    return CheckResult("primitivity", True)


def _check_distinctness(fan: Fan) -> CheckResult:
    seen: dict[IntVector, int] = {}
    for i, r in enumerate(fan.rays):
        if r in seen:
            return CheckResult("distinctness", False,
                               f"rays {seen[r]} and {i} coincide")
        seen[r] = i
    return CheckResult("distinctness", True)


def _check_coverage(fan: Fan) -> CheckResult:
    used = {i for c in fan.max_cones for i in c}
    missing = [i for i in range(len(fan.rays)) if i not in used]
    if missing:
        return CheckResult("ray_coverage", False,
                           f"rays {missing} appear in no maximal cone")
    return CheckResult("ray_coverage", True)


def _check_smoothness(fan: Fan) -> CheckResult:
    for c in fan.max_cones:
        d = lattice.determinant(
            IntegerMatrix.from_rows([fan.rays[i] for i in c]))
        if abs(d) != 1:
            return CheckResult("smoothness", False,
                               f"cone {c} has determinant {d}")
    return CheckResult("smoothness", True)


def _check_facet_pairing(fan: Fan) -> CheckResult:
    counts: dict[ConeRef, int] = {}
    for c in fan.max_cones:
        for facet in combinations(c, fan.dim - 1):
            counts[facet] = counts.get(facet, 0) + 1
    bad = sorted(f for f, k in counts.items() if k != 2)
    if bad:
        return CheckResult(
            "facet_pairing", False,
            f"facets not shared by exactly two maximal cones: {bad[:5]}")
    return CheckResult("facet_pairing", True)


def _check_generic_direction(fan: Fan, seed: int, trials: int) -> CheckResult:
    # Facet pairing alone admits multi-sheeted pathologies; locating a few
    # pseudorandom directions rules those out at desk scale.
    rng = random.Random(seed)
    bases = [[fan.rays[i] for i in c] for c in fan.max_cones]
    done = 0
    attempts = 0
    while done < trials:
        if attempts >= trials * _RESAMPLE_LIMIT:
            return CheckResult("generic_direction", False,
                               "could not sample a generic direction")
        attempts += 1
        point = tuple(rng.randint(-_COORD_BOUND, _COORD_BOUND)
                      for _ in range(fan.dim))
        if all(x == 0 for x in point):
            continue
        interior = 0
        boundary = False
        for basis in bases:
            try:
                coeffs = lattice.solve_in_basis(basis, point)
            except SingularBasis:
                return CheckResult("generic_direction", False,
                                   "degenerate maximal cone")
            if all(c >= 0 for c in coeffs):
                if any(c == 0 for c in coeffs):
                    boundary = True
                    break
                interior += 1
        if boundary:
            continue
        if interior != 1:
            return CheckResult(
                "generic_direction", False,
                f"direction {point} lies in {interior} maximal cones")
        done += 1
    return CheckResult("generic_direction", True)


def validate(fan: Fan, seed: int = DEFAULT_SEED,
             trials: int = _LOCATION_TRIALS) -> ValidationReport:
    """Check primitivity, distinctness, coverage, smoothness, facet-pairing
    completeness, and the generic-direction location sanity check.

    Returns a structured report; mathematically invalid fans never raise.
    """
    checks = [
        _check_primitivity(fan),
        _check_distinctness(fan),
        _check_coverage(fan),
        _check_smoothness(fan),
        _check_facet_pairing(fan),
    ]
    if all(c.passed for c in checks):
        checks.append(_check_generic_direction(fan, seed, trials))
    else:
        checks.append(CheckResult("generic_direction", False,
                                  "not attempted: earlier checks failed"))
    return ValidationReport(tuple(checks))


# ---------------------------------------------------------------------------
# faces


def faces(fan: Fan, j: int) -> list[ConeRef]:
    """All distinct j-dimensional cones, as sorted index tuples.

    faces(fan, 0) is the singleton list holding the zero cone ().
    """
    if not 0 <= j <= fan.dim:
        raise DimensionOutOfRange(f"j={j} outside 0..{fan.dim}")
    out = {sub for c in fan.max_cones for sub in combinations(c, j)}
    return sorted(out)


def is_cone(fan: Fan, ref: Sequence[int]) -> bool:
    """True iff the index set is a face of some maximal cone."""
    s = set(ref)
    if len(s) != len(ref):
        return False
    return any(s.issubset(c) for c in fan.max_cones)


# ---------------------------------------------------------------------------
# constructors


def construct_projective_space(n: int) -> Fan:
    """The fan with rays e_1..e_n and -(e_1+...+e_n), all n-subsets as cones."""
    if n < 1:
        raise DimensionOutOfRange("n must be at least 1")
    rays = [tuple(1 if j == i else 0 for j in range(n)) for i in range(n)]
    rays.append(tuple(-1 for _ in range(n)))
    cones = combinations(range(n + 1), n)
    return make_fan(n, rays, cones)


def construct_product(a: Fan, b: Fan) -> Fan:
    """The product fan: padded rays, unions of cone pairs."""
    dim = a.dim + b.dim
    zeros_a = (0,) * b.dim
    zeros_b = (0,) * a.dim
    rays = [r + zeros_a for r in a.rays] + [zeros_b + r for r in b.rays]
    offset = len(a.rays)
    cones = [ca + tuple(i + offset for i in cb)
             for ca in a.max_cones for cb in b.max_cones]
    return make_fan(dim, rays, cones)


def star_subdivision(fan: Fan, sigma: Sequence[int]) -> Fan:
    """Subdivide at the sum of sigma's rays.

    Every maximal cone containing sigma is replaced by the cones obtained by
    swapping one generator of sigma for the new ray.
    """
    sigma = tuple(sorted(sigma))
    if not is_cone(fan, sigma):
        raise NotACone(f"{sigma} is not a cone of the fan")
    if len(sigma) < 2:
        raise ConeTooSmall("star subdivision needs a cone of dimension >= 2")
    new_ray = lattice.vector_sum([fan.rays[i] for i in sigma], fan.dim)
    new_index = len(fan.rays)
    rays = list(fan.rays) + [new_ray]
    sigma_set = set(sigma)
    cones: list[tuple[int, ...]] = []
    for c in fan.max_cones:
        if sigma_set.issubset(c):
            for s in sigma:
                cones.append(tuple(i for i in c if i != s) + (new_index,))
        else:
            cones.append(c)
    return make_fan(fan.dim, rays, cones)


# ---------------------------------------------------------------------------
# invariant-subvariety (quotient) fans


@dataclass(frozen=True)
class QuotientFan:
    """The fan of an invariant subvariety, with the back-map sending each new
    ray index to the original ray index it projects from."""

    fan: Fan
    back_map: tuple[int, ...]


def invariant_subvariety_fan(fan: Fan, sigma: Sequence[int]) -> QuotientFan:
    """The fan of the invariant subvariety V(sigma) in the quotient lattice.

    Rays are the primitive projections of the rays u with sigma + {u} a cone;
    maximal cones are the projections of the maximal cones containing sigma.
    """
    sigma = tuple(sorted(sigma))
    if len(sigma) < 1 or not is_cone(fan, sigma):
        raise NotACone(f"{sigma} is not a cone of dimension >= 1")
    k = len(sigma)
    if k >= fan.dim:
        raise DimensionOutOfRange("quotient rank would be zero")
    q = lattice.quotient_lattice_projection(
        [fan.rays[i] for i in sigma], dim=fan.dim)
    sigma_set = set(sigma)
    star_rays: list[int] = []
    projected: dict[int, IntVector] = {}
    for u in range(len(fan.rays)):
        if u in sigma_set:
            continue
        if is_cone(fan, sigma + (u,)):
            image = q.mul_vector(fan.rays[u])
            # Projections of smooth-cone rays are already primitive; the
            # normalization is defensive.
            projected[u] = lattice.make_primitive(image)
            star_rays.append(u)
    order = sorted(star_rays, key=lambda u: projected[u])
    new_rays = [projected[u] for u in order]
    newpos = {u: i for i, u in enumerate(order)}
    cones = [tuple(sorted(newpos[u] for u in c if u not in sigma_set))
             for c in fan.max_cones if sigma_set.issubset(c)]
    quotient = make_fan(fan.dim - k, new_rays, cones)
    # make_fan re-sorts rays; new_rays is already sorted, so indices line up.
    assert quotient.rays == tuple(new_rays)
    return QuotientFan(quotient, tuple(order))
