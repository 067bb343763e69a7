"""Line-oriented text formats for fans and polytope vertex lists, the
face-fan construction, and deterministic report rendering.

The `.fan` grammar: a header line `FAN <n> <m> <c>`, then m ray lines of n
integers each, then c cone lines of n ray indices each. The `.poly` grammar:
`POLY <n> <m>` followed by m vertex lines. Blank lines and `#` comments are
ignored everywhere; negative numbers use the ASCII hyphen-minus.
"""

from __future__ import annotations

import json
from itertools import combinations
from typing import Sequence

from . import lattice
from .errors import (
    FanSyntaxError,
    NonSimplicialFacet,
    OriginNotInterior,
    ValidationError,
)
from .fan import DEFAULT_SEED, Fan, make_fan, validate


def _significant_lines(text: str) -> list[tuple[int, list[str]]]:
    """(1-based line number, tokens) for every line that is not blank or
    comment-only."""
    out = []
    for number, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0].strip()
        if body:
            out.append((number, body.split()))
    return out


def _parse_int(token: str, line: int, what: str) -> int:
    try:
        return int(token)
    except ValueError:
        raise FanSyntaxError(line, f"expected an integer for {what}, "
                                   f"got {token!r}") from None


def _parse_header(lines: list[tuple[int, list[str]]], tag: str,
                  count_fields: int) -> tuple[int, list[int]]:
    if not lines:
        raise FanSyntaxError(1, "empty input")
    line, tokens = lines[0]
    if tokens[0] != tag:
        raise FanSyntaxError(line, f"header must start with {tag}")
    if len(tokens) != 1 + count_fields:
        raise FanSyntaxError(line, f"header needs {count_fields} integers "
                                   f"after {tag}")
    values = [_parse_int(t, line, "the header") for t in tokens[1:]]
    if values[0] < 1:
        raise FanSyntaxError(line, "dimension must be positive")
    if any(v < 0 for v in values[1:]):
        raise FanSyntaxError(line, "counts must be nonnegative")
    return line, values


def _take_rows(lines: list[tuple[int, list[str]]], start: int, count: int,
               arity: int, what: str) -> list[tuple[int, list[int]]]:
    rows = []
    for i in range(count):
        if start + i >= len(lines):
            last = lines[-1][0] if lines else 1
            raise FanSyntaxError(last + 1, f"expected {count} {what} lines, "
                                           f"found {i}")
        line, tokens = lines[start + i]
        if len(tokens) != arity:
            raise FanSyntaxError(line, f"{what} line needs {arity} integers, "
                                       f"got {len(tokens)}")
        rows.append((line, [_parse_int(t, line, what) for t in tokens]))
    return rows


def parse_fan_unchecked(text: str) -> Fan:
    """Parse the `.fan` grammar without running mathematical validation."""
    lines = _significant_lines(text)
    _, (n, m, c) = _parse_header(lines, "FAN", 3)
    ray_rows = _take_rows(lines, 1, m, n, "ray")
    cone_rows = _take_rows(lines, 1 + m, c, n, "cone")
    if len(lines) > 1 + m + c:
        raise FanSyntaxError(lines[1 + m + c][0], "trailing content")
    rays = [tuple(row) for _, row in ray_rows]
    cones = []
    for line, row in cone_rows:
        for idx in row:
            if not 0 <= idx < m:
                raise FanSyntaxError(line, f"ray index {idx} out of range "
                                           f"0..{m - 1}")
        if len(set(row)) != n:
            raise FanSyntaxError(line, "repeated ray index in cone")
        cones.append(tuple(row))
    return make_fan(n, rays, cones)


def parse_fan(text: str, seed: int = DEFAULT_SEED) -> Fan:
    """Parse and validate; raises ValidationError naming any failed check."""
    fan = parse_fan_unchecked(text)
    report = validate(fan, seed=seed)
    if not report.ok:
        raise ValidationError(report)
    return fan


def serialize_fan(fan: Fan) -> str:
    """Canonical `.fan` text; parse_fan of the result reproduces the fan."""
    out = [f"FAN {fan.dim} {len(fan.rays)} {len(fan.max_cones)}"]
    out.extend(" ".join(str(x) for x in ray) for ray in fan.rays)
    out.extend(" ".join(str(i) for i in cone) for cone in fan.max_cones)
    return "\n".join(out) + "\n"


def _facet_scan(vertices: Sequence[tuple[int, ...]], n: int) -> list[tuple[int, ...]]:
    """Facet vertex-index sets of conv(vertices) by exhaustive n-subset
    hyperplane search; raises when a facet is non-simplicial or fails to
    keep the origin strictly inside."""
    m = len(vertices)
    origin = vertices[0]
    spread = [tuple(v[j] - origin[j] for j in range(n)) for v in vertices[1:]]
    if n > 1 and lattice.matrix_rank(
            lattice.IntegerMatrix.from_rows(spread)) < n:
        raise OriginNotInterior(
            "the vertices lie in a proper affine subspace")
    facets: set[tuple[int, ...]] = set()
    for subset in combinations(range(m), n):
        base = vertices[subset[0]]
        diffs = [tuple(vertices[i][j] - base[j] for j in range(n))
                 for i in subset[1:]]
        if n > 1:
            kernel = lattice.integer_kernel(lattice.IntegerMatrix.from_rows(diffs))
        else:
            kernel = ((1,),)
        if len(kernel) != 1:
            continue
        normal = kernel[0]
        offset = sum(a * b for a, b in zip(normal, base))
        values = [sum(a * b for a, b in zip(normal, v)) for v in vertices]
        above = any(v > offset for v in values)
        below = any(v < offset for v in values)
        if above and below:
            continue
        if above:
            normal = tuple(-x for x in normal)
            offset = -offset
            values = [-v for v in values]
        on_plane = tuple(i for i in range(m) if values[i] == offset)
        if len(on_plane) > n:
            raise NonSimplicialFacet(
                f"facet through vertices {on_plane} has {len(on_plane)} "
                f"vertices in dimension {n}")
        if offset <= 0:
            raise OriginNotInterior(
                f"facet through vertices {on_plane} does not separate the "
                "origin strictly from the outside")
        facets.add(on_plane)
    return sorted(facets)


def parse_polytope_as_face_fan(text: str, seed: int = DEFAULT_SEED) -> Fan:
    """Parse the `.poly` grammar and return the validated face fan of the
    convex hull of the vertices."""
    lines = _significant_lines(text)
    _, (n, m) = _parse_header(lines, "POLY", 2)
    vertex_rows = _take_rows(lines, 1, m, n, "vertex")
    if len(lines) > 1 + m:
        raise FanSyntaxError(lines[1 + m][0], "trailing content")
    vertices = [tuple(row) for _, row in vertex_rows]
    if m < n + 1:
        raise OriginNotInterior(
            f"{m} vertices cannot enclose the origin in dimension {n}")
    cones = _facet_scan(vertices, n)
    fan = make_fan(n, vertices, cones)
    report = validate(fan, seed=seed)
    if not report.ok:
        raise ValidationError(report)
    return fan


# ---------------------------------------------------------------------------
# report rendering


def _is_flat(value) -> bool:
    return isinstance(value, list) and \
        not any(isinstance(x, (dict, list)) for x in value)


def _text_lines(value, indent: int) -> list[str]:
    pad = "  " * indent
    if isinstance(value, dict):
        out = []
        for key in sorted(value):
            item = value[key]
            if isinstance(item, (dict, list)) and item and not _is_flat(item):
                out.append(f"{pad}{key}:")
                out.extend(_text_lines(item, indent + 1))
            else:
                out.append(f"{pad}{key}: {_scalar(item)}")
        return out
    if isinstance(value, list):
        out = []
        for item in value:
            if isinstance(item, (dict, list)) and item and not _is_flat(item):
                out.append(f"{pad}-")
                out.extend(_text_lines(item, indent + 1))
            else:
                out.append(f"{pad}- {_scalar(item)}")
        return out
    return [f"{pad}{_scalar(value)}"]


def _scalar(value) -> str:
    if value is None:
        return "none"
    if isinstance(value, bool):
        return "yes" if value else "no"
    if isinstance(value, list):
        return "[" + ", ".join(_scalar(x) for x in value) + "]"
    if isinstance(value, dict):
        return "{}"
    return str(value)


def render_report(data, fmt: str) -> str:
    """Deterministic rendering of a report tree of dicts, lists, and
    scalars; fmt is `text` or `json`."""
    if fmt == "text":
        return "\n".join(_text_lines(data, 0)) + "\n"
    if fmt == "json":
        return json.dumps(data, sort_keys=True, indent=2) + "\n"
    raise ValueError(f"unknown format {fmt!r}")


def emit_report(data, fmt: str) -> bytes:
    """render_report encoded as UTF-8."""
    return render_report(data, fmt).encode("utf-8")
