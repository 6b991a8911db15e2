"""Finite-order torus maps and their short invariant curves.

An orientation preserving automorphism of the square torus is an
integer matrix of determinant one acting on the plane mod its integer
lattice.  It has finite order exactly when the trace lies in [-2, 2]
with the trace +-2 cases being +-identity, and the order is read off
the trace: 2, -2, -1, 0, 1 give orders 1, 2, 3, 4, 6.

Primitive integer vectors are the essential simple closed curves up to
isotopy, and two of them meet in exactly |det(v | w)| points.  For every
finite-order matrix there is a primitive v whose whole orbit pairwise
meets in at most one point; find_curve locates the first such v in a
canonical ordering and checks every power of the map against it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .orbifold import ValidationError

REASON_NOT_UNIMODULAR = "matrix-not-unimodular"
REASON_NOT_FINITE_ORDER = "matrix-not-finite-order"

Matrix = tuple[tuple[int, int], tuple[int, int]]
Vector = tuple[int, int]

_ORDER_BY_TRACE = {2: 1, -2: 2, -1: 3, 0: 4, 1: 6}

IDENTITY: Matrix = ((1, 0), (0, 1))


def mat_mul(m1: Matrix, m2: Matrix) -> Matrix:
    (a, b), (c, d) = m1
    (e, f), (g, h) = m2
    return ((a * e + b * g, a * f + b * h), (c * e + d * g, c * f + d * h))


def mat_power(m: Matrix, k: int) -> Matrix:
    out = IDENTITY
    for _ in range(k):
        out = mat_mul(out, m)
    return out


def mat_apply(m: Matrix, v: Vector) -> Vector:
    (a, b), (c, d) = m
    return (a * v[0] + b * v[1], c * v[0] + d * v[1])


def intersection_number(v: Vector, w: Vector) -> int:
    """Geometric intersections of the two primitive curves: |det(v | w)|."""
    return abs(v[0] * w[1] - v[1] * w[0])


@dataclass(frozen=True)
class TorusClass:
    """A validated finite-order torus map."""

    matrix: Matrix
    trace: int
    order: int


def classify_matrix(matrix: Matrix) -> TorusClass:
    """Validate determinant and finite order; verify the order honestly."""
    (a, b), (c, d) = matrix
    det = a * d - b * c
    if det != 1:
        raise ValidationError(
            REASON_NOT_UNIMODULAR, f"determinant is {det}, must be 1"
        )
    tr = a + d
    if abs(tr) > 2:
        raise ValidationError(
            REASON_NOT_FINITE_ORDER, f"trace {tr} gives an infinite-order map"
        )
    if tr == 2 and matrix != IDENTITY:
        raise ValidationError(
            REASON_NOT_FINITE_ORDER, "trace 2 with a shear part has infinite order"
        )
    if tr == -2 and matrix != ((-1, 0), (0, -1)):
        raise ValidationError(
            REASON_NOT_FINITE_ORDER, "trace -2 with a shear part has infinite order"
        )
    order = _ORDER_BY_TRACE[tr]
    assert mat_power(matrix, order) == IDENTITY
    for div in range(1, order):
        if order % div == 0:
            assert mat_power(matrix, div) != IDENTITY
    return TorusClass(matrix=matrix, trace=tr, order=order)


def _canonical_primitive_vectors(weight: int) -> list[Vector]:
    """Sign-canonical primitive vectors with |v1| + |v2| = weight."""
    found = []
    for v1 in range(0, weight + 1):
        rest = weight - v1
        for v2 in (rest, -rest) if rest > 0 else (0,):
            v = (v1, v2)
            if v == (0, 0) or math.gcd(abs(v1), abs(v2)) != 1:
                continue
            if v1 > 0 or (v1 == 0 and v2 > 0):
                found.append(v)
    return sorted(found, key=lambda v: (v[1], v[0]))


@dataclass(frozen=True)
class TorusCertificate:
    """A curve meeting all its images at most once, with the counts."""

    cls: TorusClass
    curve: Vector
    images: tuple[Vector, ...]
    intersections: tuple[int, ...]

    @property
    def max_intersection(self) -> int:
        return max(self.intersections, default=0)


def find_curve(matrix: Matrix) -> TorusCertificate:
    """First canonical primitive vector meeting its image at most once.

    Candidates are ordered by |v1| + |v2|, then by (v2, v1).  Once the
    image test passes, every power of the map is checked as well; a
    failure there would be an implementation bug, not bad input.
    """
    cls = classify_matrix(matrix)
    (a, b), (c, d) = matrix
    bound = 2 * (abs(a) + abs(b) + abs(c) + abs(d)) + 2
    for weight in range(1, bound + 1):
        for v in _canonical_primitive_vectors(weight):
            if intersection_number(v, mat_apply(matrix, v)) > 1:
                continue
            images = tuple(
                mat_apply(mat_power(matrix, k), v) for k in range(1, cls.order)
            )
            counts = tuple(intersection_number(v, w) for w in images)
            assert all(x <= 1 for x in counts), "an image power meets v twice"
            return TorusCertificate(
                cls=cls, curve=v, images=images, intersections=counts
            )
    raise AssertionError("no short curve found within the search bound")
