"""Brute-force reference implementations and the bundled corpus generator.

The oracles here deliberately share no code with the fast paths they check:
collections come from full subset enumeration over bitmasks, extremality
from a rational feasibility solve, and face counts from direct subset
scanning. They are slow and simple on purpose.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Sequence

from .errors import TooLarge
from .fan import (
    Fan,
    construct_product,
    construct_projective_space,
    make_fan,
    star_subdivision,
    validate,
)
from .fvector import FVector, f_vector
from .invariants import (
    is_fano,
    mori_cone_extremal_classes,
    mukai_check,
    pseudo_index,
    wall_curves,
)
from .io import serialize_fan
from .primitive import degrees_summary, primitive_collections

_MAX_ORACLE_RAYS = 16
_MAX_ORACLE_RHO = 6
_MAX_ORACLE_WALLS = 200


def oracle_primitive_collections(fan: Fan) -> list[tuple[int, ...]]:
    """Minimal non-faces by enumerating every subset of the rays."""
    m = len(fan.rays)
    if m > _MAX_ORACLE_RAYS:
        raise TooLarge(f"{m} rays exceeds the oracle limit "
                       f"{_MAX_ORACLE_RAYS}")
    cone_masks = []
    for cone in fan.max_cones:
        mask = 0
        for i in cone:
            mask |= 1 << i
        cone_masks.append(mask)

    def is_face(mask: int) -> bool:
        return any(mask & ~c == 0 for c in cone_masks)

    non_faces = [mask for mask in range(1, 1 << m) if not is_face(mask)]
    non_face_set = set(non_faces)
    minimal = []
    for mask in non_faces:
        bits = [i for i in range(m) if mask >> i & 1]
        if all(mask ^ (1 << i) not in non_face_set for i in bits):
            minimal.append(tuple(bits))
    return sorted(minimal, key=lambda s: (len(s), s))


def _nonneg_combination_exists(columns: Sequence[Sequence[int]],
                               target: Sequence[int]) -> bool:
    """Whether target = sum lambda_i * columns_i admits lambda >= 0, by a
    phase-one simplex over exact rationals with Bland's rule."""
    rows = len(target)
    cols = len(columns)
    if cols == 0:
        return all(x == 0 for x in target)
    # Tableau rows: [A | I | b] with b >= 0 after sign normalization;
    # minimize the sum of the artificial variables.
    tab = []
    for r in range(rows):
        sign = -1 if target[r] < 0 else 1
        row = [Fraction(sign * columns[c][r]) for c in range(cols)]
        row += [Fraction(1 if a == r else 0) for a in range(rows)]
        row.append(Fraction(sign * target[r]))
        tab.append(row)
    total = cols + rows
    cost = [Fraction(0)] * (total + 1)
    for a in range(rows):
        cost[cols + a] = Fraction(1)
    for r in range(rows):
        for j in range(total + 1):
            cost[j] -= tab[r][j]
    basis = [cols + r for r in range(rows)]
    while True:
        enter = next((j for j in range(total) if cost[j] < 0), None)
        if enter is None:
            break
        best = None
        for r in range(rows):
            if tab[r][enter] > 0:
                ratio = tab[r][total] / tab[r][enter]
                if best is None or ratio < best[0] or \
                        (ratio == best[0] and basis[r] < basis[best[1]]):
                    best = (ratio, r)
        if best is None:
            return False
        _, piv = best
        inv = tab[piv][enter]
        tab[piv] = [x / inv for x in tab[piv]]
        for r in range(rows):
            if r != piv and tab[r][enter] != 0:
                f = tab[r][enter]
                tab[r] = [x - f * y for x, y in zip(tab[r], tab[piv])]
        if cost[enter] != 0:
            f = cost[enter]
            cost = [x - f * y for x, y in zip(cost, tab[piv])]
        basis[piv] = enter
    return -cost[total] == 0


def oracle_mori_extremals(fan: Fan) -> list[tuple[int, ...]]:
    """Extremal wall classes by definition: a class is extremal when it is
    not a nonnegative combination of the other distinct wall classes."""
    if len(fan.rays) - fan.dim > _MAX_ORACLE_RHO:
        raise TooLarge(f"Picard number exceeds the oracle limit "
                       f"{_MAX_ORACLE_RHO}")
    walls = wall_curves(fan)
    if len(walls) > _MAX_ORACLE_WALLS:
        raise TooLarge(f"{len(walls)} walls exceeds the oracle limit "
                       f"{_MAX_ORACLE_WALLS}")
    classes = sorted({w.relation for w in walls})
    out = []
    for i, candidate in enumerate(classes):
        others = [c for j, c in enumerate(classes) if j != i]
        if not _nonneg_combination_exists(others, candidate):
            out.append(candidate)
    return out


def oracle_f_vector(fan: Fan) -> FVector:
    """Face counts by scanning every subset of the rays for the face
    property."""
    m = len(fan.rays)
    if m > _MAX_ORACLE_RAYS:
        raise TooLarge(f"{m} rays exceeds the oracle limit "
                       f"{_MAX_ORACLE_RAYS}")
    cone_sets = [frozenset(c) for c in fan.max_cones]
    counts = [0] * (fan.dim + 1)
    counts[0] = 1
    for mask in range(1, 1 << m):
        members = frozenset(i for i in range(m) if mask >> i & 1)
        if len(members) <= fan.dim and \
                any(members <= c for c in cone_sets):
            counts[len(members)] += 1
    return FVector(fan.dim, tuple(counts))


# ---------------------------------------------------------------------------
# corpus


@dataclass(frozen=True)
class CorpusEntry:
    name: str
    fan: Fan
    fingerprint: dict


@dataclass(frozen=True)
class Corpus:
    entries: tuple[CorpusEntry, ...]

    def names(self) -> list[str]:
        return [e.name for e in self.entries]

    def get(self, name: str) -> CorpusEntry:
        for e in self.entries:
            if e.name == name:
                return e
        raise KeyError(name)


def _fingerprint(fan: Fan) -> dict:
    fano = is_fano(fan)
    fp = {
        "dimension": fan.dim,
        "ray_count": len(fan.rays),
        "picard_rho": len(fan.rays) - fan.dim,
        "fano": fano,
        "pseudo_index_iota": pseudo_index(fan) if fano else None,
        "f_vector": list(f_vector(fan).f),
        "relation_summary": [list(p) for p in degrees_summary(fan)],
        "wall_degrees": sorted(w.anticanonical_degree
                               for w in wall_curves(fan)),
        "mukai_verdict": mukai_check(fan).equality_case if fano else None,
    }
    return fp


def _cross_check(name: str, fan: Fan) -> None:
    """Oracle agreement where the size limits permit; failures raise."""
    if len(fan.rays) <= _MAX_ORACLE_RAYS:
        fast = primitive_collections(fan)
        slow = oracle_primitive_collections(fan)
        if fast != slow:
            raise AssertionError(f"{name}: collections disagree: "
                                 f"{fast} vs {slow}")
        if oracle_f_vector(fan) != f_vector(fan):
            raise AssertionError(f"{name}: face counts disagree")
    if len(fan.rays) - fan.dim <= _MAX_ORACLE_RHO and \
            len(wall_curves(fan)) <= _MAX_ORACLE_WALLS:
        fast_ext = sorted(mori_cone_extremal_classes(fan))
        slow_ext = sorted(oracle_mori_extremals(fan))
        if fast_ext != slow_ext:
            raise AssertionError(f"{name}: extremal classes disagree: "
                                 f"{fast_ext} vs {slow_ext}")


def _partitions(total: int, largest: int) -> list[tuple[int, ...]]:
    if total == 0:
        return [()]
    out = []
    for part in range(min(total, largest), 0, -1):
        for rest in _partitions(total - part, part):
            out.append((part,) + rest)
    return out


def _product_fan(parts: Sequence[int]) -> Fan:
    fan = construct_projective_space(parts[0])
    for p in parts[1:]:
        fan = construct_product(fan, construct_projective_space(p))
    return fan


def _hirzebruch_two() -> Fan:
    rays = ((1, 0), (0, 1), (-1, 2), (0, -1))
    cones = ((0, 1), (1, 2), (2, 3), (0, 3))
    return make_fan(2, rays, cones)


def generate_corpus() -> Corpus:
    """Deterministically build the bundled fan collection with
    oracle-checked fingerprints."""
    items: list[tuple[str, Fan]] = []

    for n in range(1, 8):
        items.append((f"projective_{n}", construct_projective_space(n)))

    for total in range(2, 8):
        for parts in _partitions(total, total - 1):
            if len(parts) < 2:
                continue
            name = "product_" + "x".join(str(p) for p in parts)
            items.append((name, _product_fan(parts)))

    # Blow-ups of projective space along invariant subvarieties of every
    # codimension >= 2; the center of codimension k is a k-dimensional cone.
    for n in range(2, 5):
        base = construct_projective_space(n)
        for k in range(2, n + 1):
            sigma = base.max_cones[0][:k]
            items.append((f"blowup_projective_{n}_codim_{k}",
                          star_subdivision(base, sigma)))

    # Iterated fixed-point blow-ups of the plane that stay Fano, up to
    # three subdivisions, deduplicated by fingerprint.
    seen: set[str] = set()
    frontier = [("plane", construct_projective_space(2))]
    for depth in range(1, 4):
        next_frontier = []
        for _, fan in frontier:
            for sigma in fan.max_cones:
                candidate = star_subdivision(fan, sigma)
                if not is_fano(candidate):
                    continue
                key = json.dumps(_fingerprint(candidate), sort_keys=True)
                if key in seen:
                    continue
                seen.add(key)
                name = f"del_pezzo_depth_{depth}_{len(next_frontier)}"
                next_frontier.append((name, candidate))
        items.extend(next_frontier)
        frontier = next_frontier

    items.append(("hirzebruch_2_non_fano", _hirzebruch_two()))

    entries = []
    for name, fan in items:
        report = validate(fan)
        if not report.ok:
            raise AssertionError(f"{name}: corpus fan fails validation: "
                                 f"{report.failed_names}")
        _cross_check(name, fan)
        entries.append(CorpusEntry(name, fan, _fingerprint(fan)))
    entries.sort(key=lambda e: e.name)
    return Corpus(tuple(entries))


_POLYTOPE_FILES = {
    "poly_square": "POLY 2 4\n1 0\n0 1\n-1 0\n0 -1\n",
    "poly_hexagon": "POLY 2 6\n1 0\n1 1\n0 1\n-1 0\n-1 -1\n0 -1\n",
    "poly_octahedron":
        "POLY 3 6\n1 0 0\n0 1 0\n0 0 1\n-1 0 0\n0 -1 0\n0 0 -1\n",
}


def write_corpus(directory: str | Path) -> Corpus:
    """Write every corpus fan as a `.fan` file, a few polytope vertex lists
    as `.poly` files, and the fingerprint index; returns the corpus."""
    corpus = generate_corpus()
    root = Path(directory)
    root.mkdir(parents=True, exist_ok=True)
    for entry in corpus.entries:
        (root / f"{entry.name}.fan").write_text(serialize_fan(entry.fan),
                                               encoding="utf-8")
    for name, text in sorted(_POLYTOPE_FILES.items()):
        (root / f"{name}.poly").write_text(text, encoding="utf-8")
    index = {e.name: e.fingerprint for e in corpus.entries}
    (root / "fingerprints.json").write_text(
        json.dumps(index, sort_keys=True, indent=2) + "\n", encoding="utf-8")
    return corpus


def corpus_directory() -> Path:
    """The bundled corpus directory shipped inside the package."""
    return Path(__file__).resolve().parent / "corpus"
