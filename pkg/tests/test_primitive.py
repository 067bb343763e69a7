"""Primitive collections and their lattice relations."""

from __future__ import annotations

import pytest

from toricfano.errors import NonIntegralCoefficient
from toricfano.fan import (
    construct_product,
    construct_projective_space,
    is_cone,
    make_fan,
    star_subdivision,
)
from toricfano.primitive import (
    all_relations,
    degrees_summary,
    primitive_collections,
    primitive_relation,
)


def test_projective_plane_single_collection():
    p2 = construct_projective_space(2)
    assert primitive_collections(p2) == [(0, 1, 2)]
    rel = primitive_relation(p2, (0, 1, 2))
    assert rel.targets == ()
    assert rel.order == 3
    assert rel.degree == 3
    assert rel.class_vector == (1, 1, 1)


def test_product_of_lines_two_pairs():
    p1 = construct_projective_space(1)
    fan = construct_product(p1, p1)
    cols = primitive_collections(fan)
    assert len(cols) == 2
    for col in cols:
        u, v = fan.rays[col[0]], fan.rays[col[1]]
        assert tuple(a + b for a, b in zip(u, v)) == (0, 0)
        rel = primitive_relation(fan, col)
        assert rel.degree == 2 and rel.targets == ()


def test_blowup_relations():
    p2 = construct_projective_space(2)
    bl = star_subdivision(p2, p2.max_cones[0])
    summary = degrees_summary(bl)
    assert summary == [(2, 1), (2, 2)]
    relations = all_relations(bl)
    low = next(r for r in relations if r.degree == 1)
    assert len(low.targets) == 1
    assert low.coeffs == (1,)


def test_collections_are_minimal_non_faces():
    fan = construct_product(construct_projective_space(2),
                            construct_projective_space(3))
    for col in primitive_collections(fan):
        assert not is_cone(fan, col)
        for i in range(len(col)):
            assert is_cone(fan, col[:i] + col[i + 1:])


def test_collection_order_bounded_by_dim_plus_one():
    for n in (2, 3, 4):
        fan = construct_projective_space(n)
        assert primitive_collections(fan) == [tuple(range(n + 1))]


def test_non_smooth_fan_yields_non_integral_coefficients():
    fan = make_fan(2, [(1, 0), (0, 1), (-1, -2)],
                   [(0, 1), (1, 2), (0, 2)])
    cols = primitive_collections(fan)
    assert (0, 1, 2) in cols or any(len(c) == 2 for c in cols)
    with pytest.raises(NonIntegralCoefficient):
        for col in cols:
            primitive_relation(fan, col)


def test_relation_classes_lie_in_ray_matrix_kernel():
    fan = construct_product(construct_projective_space(1),
                            construct_projective_space(2))
    matrix = fan.ray_matrix()
    for rel in all_relations(fan):
        assert matrix.mul_vector(rel.class_vector) == (0,) * fan.dim
