"""Coset model of the polygon decomposition and the deck action on it."""

from __future__ import annotations

import math

import pytest

from turncover.census import enumerate_admissible
from turncover.orbifold import ValidationError, invariants, validate_hom, validate_signature
from turncover.tiling import (
    ComplexInvariantError,
    SurfaceComplex,
    _build,
    build_complex,
    deck_action,
    quotient_check,
    verify_complex,
)


def example_genus_two() -> SurfaceComplex:
    sig = validate_signature(2, 5, 10)
    return build_complex(sig, validate_hom(sig, 10, 5, 2, 3))


def example_order_30() -> SurfaceComplex:
    sig = validate_signature(6, 10, 15)
    return build_complex(sig, validate_hom(sig, 30, 5, 27, 28))


def example_order_60() -> SurfaceComplex:
    sig = validate_signature(12, 15, 20)
    return build_complex(sig, validate_hom(sig, 60, 5, 4, 51))


def test_genus_two_walk_frozen():
    cx = example_genus_two()
    assert cx.n == 1 and cx.r == 10 and cx.N == 10
    walk = cx.boundary_walk(0)
    assert walk[:6] == ((0, True), (8, False), (3, True), (1, False), (6, True), (4, False))
    assert cx.slot_position(0, True) == (0, 0)
    assert cx.slot_position(0, False) == (0, 9)
    assert cx.num_x1_vertices == 5 and cx.num_x2_vertices == 2
    assert cx.orientation == 1


def test_order_30_structure():
    cx = example_order_30()
    assert cx.n == 2 and cx.r == 15
    assert cx.num_x1_vertices == 5 and cx.num_x2_vertices == 3
    # nu is reduction mod 2 here, so outward edges of face 0 are the evens
    outs = [b for b, is_out in cx.boundary_walk(0) if is_out]
    assert sorted(outs) == list(range(0, 30, 2))
    assert all(cx.out_face(b) == 0 and cx.in_face(b) == 1 for b in outs)
    # every side of face 0 is shared with face 1 and vice versa
    for b in range(30):
        assert {cx.out_face(b), cx.in_face(b)} == {0, 1}


def test_order_60_counts():
    cx = example_order_60()
    assert cx.n == 3 and cx.r == 20
    inv = cx.invariants()
    assert (cx.num_x1_vertices + cx.num_x2_vertices) - cx.N + cx.n == inv.euler_char == -48


def test_both_orientations_verify_mixed_rejected():
    sig = validate_signature(6, 10, 15)
    hom = validate_hom(sig, 30, 5, 27, 28)
    plus = _build(sig, hom, 1)
    minus = _build(sig, hom, -1)
    verify_complex(plus)
    verify_complex(minus)
    mixed = SurfaceComplex(
        sig=sig,
        hom=hom,
        orientation=1,
        nu=minus.nu,
        walks=minus.walks,
        out_pos=minus.out_pos,
        in_pos=minus.in_pos,
    )
    with pytest.raises(ComplexInvariantError):
        verify_complex(mixed)
    assert build_complex(sig, hom).orientation == 1


def test_sweep_build_and_verify():
    for cls in enumerate_admissible(60):
        cx = build_complex(cls.sig, cls.hom)
        verify_complex(cx)
        inv = invariants(cls.sig, cls.hom)
        assert len(cx.walks) == inv.n
        act = deck_action(cx, 1)
        assert act.fixed_cell_count() == inv.fixed_point_count
        assert quotient_check(cx, act)


def test_deck_action_all_generators_small():
    for cls in enumerate_admissible(30):
        cx = build_complex(cls.sig, cls.hom)
        inv = invariants(cls.sig, cls.hom)
        for k in range(1, cx.N):
            if math.gcd(k, cx.N) != 1:
                continue
            act = deck_action(cx, k)
            assert act.fixed_cell_count() == inv.fixed_point_count
            assert quotient_check(cx, act)
            # free on edges: the orbit of edge 0 is everything
            orbit = {0}
            b = act.edge_map(0)
            while b != 0:
                orbit.add(b)
                b = act.edge_map(b)
            assert len(orbit) == cx.N


def test_walk_equivariance():
    """walk(face_map(c)) is the k-translate of walk(c) up to rotation."""
    for cls in enumerate_admissible(30):
        cx = build_complex(cls.sig, cls.hom)
        for k in (1, cx.N - 1):
            if math.gcd(k, cx.N) != 1:
                continue
            act = deck_action(cx, k)
            for c in range(cx.n):
                translated = [((b + k) % cx.N, d) for b, d in cx.boundary_walk(c)]
                target = list(cx.boundary_walk(act.face_map(c)))
                rotations = [
                    target[i:] + target[:i] for i in range(0, len(target), 2)
                ]
                assert translated in rotations, (cls.canonical_key, k, c)


def test_order_30_generator_swaps_faces():
    cx = example_order_30()
    for k in (1, 7, 11, 29):
        act = deck_action(cx, k)
        assert act.face_map(0) == 1 and act.face_map(1) == 0


def test_deck_action_rejects_non_generator():
    cx = example_order_30()
    with pytest.raises(ValidationError) as e:
        deck_action(cx, 6)
    assert e.value.code == "not-a-generator"


def test_genus_two_fixed_center():
    cx = example_genus_two()
    act = deck_action(cx, 1)
    # one fixed cell: the face center over the order-10 cone point
    assert act.fixed_cell_count() == 1
    assert act.face_map(0) == 0
    assert all(act.x1_vertex_map(v) != v for v in range(cx.num_x1_vertices))
    assert all(act.x2_vertex_map(v) != v for v in range(cx.num_x2_vertices))
