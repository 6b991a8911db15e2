"""Hyperbolic realization of the polygon decomposition.

Every face of the complex is an isometric copy of one reference polygon
in the unit-disk model: a 2r-gon centered at the origin whose vertices
sit at angles j*pi/r, alternating between lifts of the first two cone
points.  The polygon fans into 2r copies of the triangle with angles
pi/p1, pi/p2, pi/p3, solved exactly by the hyperbolic law of cosines,
so corner angles are 2*pi/p1 and 2*pi/p2 and the cone structure is
smoothed out upstairs.

Side q runs from vertex v_q to v_{q+1} and carries slot q of the face
boundary walk.  Gluing across an edge is the unique orientation
preserving isometry matching the two sides head to tail; composing
those transitions along a closed curve develops it in the disk, and the
final isometry is the curve's holonomy.  A holonomy of +-identity
certifies a contractible loop, a trace beyond +-2 a homotopically
essential one; traces inside a narrow band around 2 are reported as
inconclusive rather than guessed.

The same chord realization gives an intersection oracle independent of
the combinatorial slot count: curve chords become geodesic arcs with
endpoints on the polygon boundary, crossings are counted by circle
intersection plus hyperbolic betweenness, and points on an edge crossed
by both curves take the two orders along the edge, keeping the minimum.

Conventions here assume the standard boundary orientation, which is the
one build_complex selects; mirror complexes are rejected.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import product

from .curves import CombinatorialCurve, Segment, validate_curve
from .orbifold import ConeSignature
from .tiling import SurfaceComplex

_SEAM_TOL = 1e-8  # developed copies must agree on shared edge points
_TRACE_BAND = 1e-6  # traces this close to +-2 are inconclusive
_IDENTITY_TOL = 1e-8  # holonomy entries this close to +-id are trivial
_SEGMENT_TOL = 1e-6  # betweenness slack for geodesic arc intersections


@dataclass(frozen=True)
class Isometry:
    """Orientation preserving isometry of the unit disk.

    Stored as the first row (a, b) of a unit-determinant matrix
    [[a, b], [conj(b), conj(a)]] acting by z -> (a z + b)/(conj(b) z +
    conj(a)).  Compositions renormalize the determinant, so long
    products stay numerically unimodular.
    """

    a: complex
    b: complex

    @classmethod
    def identity(cls) -> "Isometry":
        return cls(1.0 + 0.0j, 0.0j)

    @classmethod
    def rotation(cls, theta: float) -> "Isometry":
        """Counterclockwise rotation by theta about the origin."""
        import cmath

        return cls(cmath.exp(0.5j * theta), 0.0j)

    @classmethod
    def translation_to(cls, w: complex) -> "Isometry":
        """The isometry moving the origin to w along their common axis."""
        s = math.sqrt(1.0 - abs(w) ** 2)
        return cls(1.0 / s, w / s)

    @classmethod
    def rotation_about(cls, w: complex, theta: float) -> "Isometry":
        move = cls.translation_to(w)
        return move.compose(cls.rotation(theta)).compose(move.inverse())

    def det(self) -> float:
        return abs(self.a) ** 2 - abs(self.b) ** 2

    def compose(self, other: "Isometry") -> "Isometry":
        """Matrix product self * other: other acts first."""
        a = self.a * other.a + self.b * other.b.conjugate()
        b = self.a * other.b + self.b * other.a.conjugate()
        scale = 1.0 / math.sqrt(abs(a) ** 2 - abs(b) ** 2)
        return Isometry(a * scale, b * scale)

    def inverse(self) -> "Isometry":
        return Isometry(self.a.conjugate(), -self.b)

    def apply(self, z: complex) -> complex:
        return (self.a * z + self.b) / (self.b.conjugate() * z + self.a.conjugate())

    def trace(self) -> float:
        # the matrix trace a + conj(a) is real for this normal form
        return 2.0 * self.a.real

    def max_entry_diff(self, other: "Isometry") -> float:
        return max(abs(self.a - other.a), abs(self.b - other.b))

    def identity_deviation(self) -> float:
        """Distance to the nearest of +-identity, entrywise."""
        plus = max(abs(self.a - 1.0), abs(self.b))
        minus = max(abs(self.a + 1.0), abs(self.b))
        return min(plus, minus)

    def to_half_plane(self) -> tuple[tuple[float, float], tuple[float, float]]:
        """Conjugate by the Cayley map into a real half-plane matrix."""
        assert abs(self.det() - 1.0) < 1e-9
        ar, ai = self.a.real, self.a.imag
        br, bi = self.b.real, self.b.imag
        return ((ar + br, ai - bi), (-ai - bi, ar - br))


def hyperbolic_distance(z: complex, w: complex) -> float:
    ratio = abs(z - w) / abs(1.0 - z.conjugate() * w)
    return 2.0 * math.atanh(min(ratio, 1.0 - 1e-16))


def point_on_geodesic(z1: complex, z2: complex, t: float) -> complex:
    """Point at fraction t of the hyperbolic distance from z1 to z2."""
    move = Isometry.translation_to(z1)
    w = move.inverse().apply(z2)
    rw = abs(w)
    if rw < 1e-15:
        return z1
    d = 2.0 * math.atanh(min(rw, 1.0 - 1e-16))
    rad = math.tanh(0.5 * t * d)
    return move.apply(rad * w / rw)


def mobius_two_points(
    z1: complex, z2: complex, w1: complex, w2: complex
) -> Isometry:
    """The disk isometry sending z1 to w1 and z2 to w2.

    Exists and is unique when the two point pairs are at equal
    hyperbolic distance; the inputs are checked for that.
    """
    import cmath

    to_z1 = Isometry.translation_to(z1)
    to_w1 = Isometry.translation_to(w1)
    z2n = to_z1.inverse().apply(z2)
    w2n = to_w1.inverse().apply(w2)
    assert abs(abs(z2n) - abs(w2n)) < 1e-9, "point pairs are not isometric"
    theta = cmath.phase(w2n) - cmath.phase(z2n)
    m = to_w1.compose(Isometry.rotation(theta)).compose(to_z1.inverse())
    assert abs(m.apply(z1) - w1) < 1e-9 and abs(m.apply(z2) - w2) < 1e-9
    return m


# ---------------------------------------------------------------------------
# the triangle and the reference polygon
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class TrianglePiece:
    """Hyperbolic triangle with angles pi/p1, pi/p2, pi/p3.

    sides[i] is the length of the side opposite the i-th angle, from the
    law of cosines; area is the angle defect.
    """

    orders: tuple[int, int, int]
    angles: tuple[float, float, float]
    sides: tuple[float, float, float]
    area: float


def solve_triangle(p1: int, p2: int, p3: int) -> TrianglePiece:
    if p1 * p2 + p1 * p3 + p2 * p3 >= p1 * p2 * p3:
        raise ValueError(f"({p1},{p2},{p3}) is not a hyperbolic triangle")
    angles = (math.pi / p1, math.pi / p2, math.pi / p3)
    ca, cb, cc = (math.cos(t) for t in angles)
    sa, sb, sc = (math.sin(t) for t in angles)
    sides = (
        math.acosh((cb * cc + ca) / (sb * sc)),
        math.acosh((ca * cc + cb) / (sa * sc)),
        math.acosh((ca * cb + cc) / (sa * sb)),
    )
    return TrianglePiece(
        orders=(p1, p2, p3),
        angles=angles,
        sides=sides,
        area=math.pi - sum(angles),
    )


@dataclass(frozen=True)
class ReferencePolygon:
    """The 2r-gon every face develops onto.

    Vertices at angles j*pi/r: even indices are lifts of the first cone
    point at distance sides[1] from the center, odd indices lifts of the
    second at distance sides[0].  Side q joins v_q to v_{q+1}.
    """

    triangle: TrianglePiece
    r: int
    vertices: tuple[complex, ...]

    @property
    def num_sides(self) -> int:
        return 2 * self.r

    def vertex(self, j: int) -> complex:
        return self.vertices[j % self.num_sides]

    def side(self, q: int) -> tuple[complex, complex]:
        return self.vertex(q), self.vertex(q + 1)

    def side_point(self, q: int, s: float) -> complex:
        """Point at fraction s along side q, from v_q toward v_{q+1}."""
        v, w = self.side(q)
        return point_on_geodesic(v, w, s)


def build_reference_polygon(sig: ConeSignature) -> ReferencePolygon:
    import cmath

    tri = solve_triangle(*sig.orders)
    r = sig.p3
    rho_even = math.tanh(0.5 * tri.sides[1])  # center to first-cone lifts
    rho_odd = math.tanh(0.5 * tri.sides[0])  # center to second-cone lifts
    vertices = tuple(
        (rho_even if j % 2 == 0 else rho_odd) * cmath.exp(1j * math.pi * j / r)
        for j in range(2 * r)
    )
    return ReferencePolygon(triangle=tri, r=r, vertices=vertices)


def rotation_generators(poly: ReferencePolygon) -> tuple[Isometry, Isometry, Isometry]:
    """Rotations by the full cone angles about v_0, v_1 and the center.

    Taken counterclockwise with the vertices in this order, their
    product is +-identity; closure_residuals measures the defect.
    """
    p1, p2, p3 = poly.triangle.orders
    m1 = Isometry.rotation_about(poly.vertex(0), 2.0 * math.pi / p1)
    m2 = Isometry.rotation_about(poly.vertex(1), 2.0 * math.pi / p2)
    m3 = Isometry.rotation(2.0 * math.pi / p3)
    return m1, m2, m3


def side_transition(poly: ReferencePolygon, q_exit: int, q_enter: int) -> Isometry:
    """Gluing isometry for leaving through side q_exit into side q_enter.

    Maps the reference copy of the entered face so that its side q_enter
    coincides, head to tail, with side q_exit of the current copy: the
    next copy of a developing walk is current_isometry composed with
    this transition.
    """
    ve, ve1 = poly.side(q_enter)
    vx, vx1 = poly.side(q_exit)
    return mobius_two_points(ve, ve1, vx1, vx)


# ---------------------------------------------------------------------------
# developing curves
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class DevelopedCurve:
    """A closed curve unrolled in the disk, with its holonomy.

    copies[i] places the reference polygon for segment i; points[i] are
    the developed endpoints of its chord.  classification is one of
    "contractible", "essential", "elliptic" or "inconclusive".
    """

    curve: CombinatorialCurve
    copies: tuple[Isometry, ...]
    points: tuple[tuple[complex, complex], ...]
    holonomy: Isometry
    trace: float
    classification: str

    @property
    def is_essential(self) -> bool:
        return self.classification == "essential"


def _classify(holonomy: Isometry) -> str:
    if holonomy.identity_deviation() < _IDENTITY_TOL:
        return "contractible"
    t = abs(holonomy.trace())
    if t > 2.0 + _TRACE_BAND:
        return "essential"
    if t < 2.0 - _TRACE_BAND:
        return "elliptic"
    return "inconclusive"


def _require_standard_orientation(cx: SurfaceComplex) -> None:
    if cx.orientation != 1:
        raise ValueError("geometric realization needs the standard orientation")


def _chord_endpoints(
    cx: SurfaceComplex,
    poly: ReferencePolygon,
    curve: CombinatorialCurve,
    edge_params: dict[int, float],
) -> list[tuple[int, complex, complex]]:
    """Reference-polygon chord per segment as (face, entry, exit).

    An edge's crossing point is parametrized along its outward side; the
    inward side runs the opposite way, so the fraction flips there.
    """
    out = []
    two_r = poly.num_sides
    for seg in curve.segments:
        pts = []
        for q in (seg.entry_slot, seg.exit_slot):
            b, is_out = cx.boundary_walk(seg.face)[q % two_r]
            t = edge_params.get(b, 0.5)
            pts.append(poly.side_point(q % two_r, t if is_out else 1.0 - t))
        out.append((seg.face % cx.n, pts[0], pts[1]))
    return out


def develop_curve(
    cx: SurfaceComplex,
    curve: CombinatorialCurve,
    poly: ReferencePolygon | None = None,
) -> DevelopedCurve:
    """Unroll a closed curve across its transitions and classify it."""
    _require_standard_orientation(cx)
    validate_curve(cx, curve)
    if poly is None:
        poly = build_reference_polygon(cx.sig)
    segs = curve.segments
    m = len(segs)
    copies = [Isometry.identity()]
    for i in range(m):
        trans = side_transition(
            poly, segs[i].exit_slot, segs[(i + 1) % m].entry_slot
        )
        copies.append(copies[-1].compose(trans))
    holonomy = copies[m]

    chords = _chord_endpoints(cx, poly, curve, {})
    points = []
    for i in range(m):
        _, p_in, p_out = chords[i]
        points.append((copies[i].apply(p_in), copies[i].apply(p_out)))
    # seam check: consecutive copies agree on the shared edge point, and
    # the holonomy carries the first entry point onto the last exit
    for i in range(m - 1):
        assert abs(points[i + 1][0] - points[i][1]) < _SEAM_TOL, (
            "developed copies tear at a seam"
        )
    closing = holonomy.apply(chords[0][1])
    assert abs(closing - points[m - 1][1]) < _SEAM_TOL, (
        "holonomy misses the closing point"
    )

    return DevelopedCurve(
        curve=curve,
        copies=tuple(copies[:m]),
        points=tuple(points),
        holonomy=holonomy,
        trace=holonomy.trace(),
        classification=_classify(holonomy),
    )


def vertex_link_curve(
    cx: SurfaceComplex, which: str = "x1", base_edge: int = 0
) -> CombinatorialCurve:
    """Small contractible loop around one vertex of the complex.

    Cuts each corner at the chosen vertex with a two-slot chord; the
    loop crosses the p1 (or p2) incident edges once each.  Serves as the
    control curve whose holonomy must come out trivial.
    """
    _require_standard_orientation(cx)
    N, two_r = cx.N, 2 * cx.r
    hom = cx.hom
    segs = []
    e = base_edge % N
    if which == "x1":
        for _ in range(cx.sig.p1):
            face, q = cx.slot_position(e, False)
            nxt, is_out = cx.boundary_walk(face)[(q + 1) % two_r]
            assert is_out and nxt == (e - hom.a1) % N
            segs.append(Segment(face, q, (q + 1) % two_r))
            e = nxt
    elif which == "x2":
        for _ in range(cx.sig.p2):
            face, q = cx.slot_position(e, True)
            nxt, is_out = cx.boundary_walk(face)[(q + 1) % two_r]
            assert (not is_out) and nxt == (e - hom.a2) % N
            segs.append(Segment(face, q, (q + 1) % two_r))
            e = nxt
    else:
        raise ValueError(f"unknown vertex family {which!r}")
    assert e == base_edge % N, "vertex link failed to close"
    curve = CombinatorialCurve(tuple(segs))
    validate_curve(cx, curve)
    return curve


def closure_residuals(
    cx: SurfaceComplex, poly: ReferencePolygon | None = None
) -> dict[str, float]:
    """Numerical defects of the geometric consistency laws.

    All of these vanish in exact arithmetic: the product of the three
    cone rotations, the center rotation permuting the vertices, equal
    side lengths, and trivial holonomy around both vertex families.
    """
    if poly is None:
        poly = build_reference_polygon(cx.sig)
    m1, m2, m3 = rotation_generators(poly)
    relation = m1.compose(m2).compose(m3)
    rot = Isometry.rotation(2.0 * math.pi / poly.r)
    side_len = poly.triangle.sides[2]
    residuals = {
        "rotation-relation": relation.identity_deviation(),
        "center-rotation": max(
            abs(rot.apply(poly.vertex(j)) - poly.vertex(j + 2))
            for j in range(poly.num_sides)
        ),
        "side-length": max(
            abs(hyperbolic_distance(*poly.side(q)) - side_len)
            for q in range(poly.num_sides)
        ),
    }
    for which in ("x1", "x2"):
        link = vertex_link_curve(cx, which)
        residuals[f"vertex-closure-{which}"] = develop_curve(
            cx, link, poly
        ).holonomy.identity_deviation()
    return residuals


# ---------------------------------------------------------------------------
# geometric intersection oracle
# ---------------------------------------------------------------------------


def _geodesic_carrier(z1: complex, z2: complex):
    """The full geodesic through two points: a diameter or a circle.

    Circles orthogonal to the unit circle satisfy |center|^2 = R^2 + 1,
    which turns the two incidence conditions into a linear system.
    """
    cross = z1.real * z2.imag - z1.imag * z2.real
    if abs(cross) < 1e-12:
        return ("line", (z2 - z1) / abs(z2 - z1))
    k1 = (abs(z1) ** 2 + 1.0) / 2.0
    k2 = (abs(z2) ** 2 + 1.0) / 2.0
    cx = (k1 * z2.imag - k2 * z1.imag) / cross
    cy = (k2 * z1.real - k1 * z2.real) / cross
    center = complex(cx, cy)
    return ("circle", center, math.sqrt(abs(center) ** 2 - 1.0))


def _carrier_intersections(g1, g2) -> list[complex]:
    """Candidate meeting points of two geodesic carriers inside the disk."""
    if g1[0] == "line" and g2[0] == "line":
        d1, d2 = g1[1], g2[1]
        if abs(d1.real * d2.imag - d1.imag * d2.real) < 1e-12:
            return []
        return [0.0j]
    if g1[0] == "line" or g2[0] == "line":
        line, circ = (g1, g2) if g1[0] == "line" else (g2, g1)
        d, center = line[1], circ[1]
        mid = (d * center.conjugate()).real
        disc = mid * mid - 1.0
        if disc <= 1e-15:
            return []
        root = math.sqrt(disc)
        return [s * d for s in (mid - root, mid + root) if abs(s) < 1.0]
    c1, r1 = g1[1], g1[2]
    c2, r2 = g2[1], g2[2]
    delta = c2 - c1
    dd = abs(delta)
    if dd < 1e-12:
        return []
    along = (dd * dd + r1 * r1 - r2 * r2) / (2.0 * dd)
    h2 = r1 * r1 - along * along
    if h2 <= 1e-15:
        return []
    h = math.sqrt(h2)
    base = c1 + along * delta / dd
    perp = 1j * delta / dd
    return [p for p in (base + h * perp, base - h * perp) if abs(p) < 1.0]


def _on_segment(p: complex, z1: complex, z2: complex) -> bool:
    d1 = hyperbolic_distance(z1, p)
    d2 = hyperbolic_distance(p, z2)
    if d1 < 1e-9 or d2 < 1e-9:
        return False
    return d1 + d2 - hyperbolic_distance(z1, z2) < _SEGMENT_TOL


def _segments_cross(
    p1: complex, p2: complex, q1: complex, q2: complex
) -> bool:
    for cand in _carrier_intersections(
        _geodesic_carrier(p1, p2), _geodesic_carrier(q1, q2)
    ):
        if _on_segment(cand, p1, p2) and _on_segment(cand, q1, q2):
            return True
    return False


def _reject_degenerate_chords(cx: SurfaceComplex, curve: CombinatorialCurve) -> None:
    # a chord between the two sides meeting at a straight corner (cone
    # order 2) runs along the boundary geodesic and has no transverse
    # realization; such chords never arise for the reference curves
    if cx.sig.p1 != 2:
        return
    two_r = 2 * cx.r
    for seg in curve.segments:
        qe, qx = seg.entry_slot % two_r, seg.exit_slot % two_r
        for lo in (qe, qx):
            if (lo + 1) % two_r in (qe, qx) and lo % 2 == 1:
                raise ValueError("chord runs along a side through a straight corner")


def geometric_crossing_count(
    cx: SurfaceComplex,
    curve_a: CombinatorialCurve,
    curve_b: CombinatorialCurve,
    poly: ReferencePolygon | None = None,
) -> int:
    """Transverse crossings of the two realized curves, minimized.

    Independent of the combinatorial slot count: chords become geodesic
    arcs in the reference polygon and are intersected as circles.  On
    each edge both curves traverse, the two crossing points take one of
    the two orders along the edge, consistently at the edge's two slot
    occurrences; the reported count is the minimum over those choices.
    """
    _require_standard_orientation(cx)
    validate_curve(cx, curve_a)
    validate_curve(cx, curve_b)
    _reject_degenerate_chords(cx, curve_a)
    _reject_degenerate_chords(cx, curve_b)
    if poly is None:
        poly = build_reference_polygon(cx.sig)

    from .curves import _traversals

    shared = sorted(set(_traversals(cx, curve_a)) & set(_traversals(cx, curve_b)))
    best = None
    for bits in product((True, False), repeat=len(shared)):
        params_a = {e: 0.43 if first else 0.57 for e, first in zip(shared, bits)}
        params_b = {e: 1.0 - t for e, t in params_a.items()}
        chords_a = _chord_endpoints(cx, poly, curve_a, params_a)
        chords_b = _chord_endpoints(cx, poly, curve_b, params_b)
        total = 0
        for face_a, a1, a2 in chords_a:
            for face_b, b1, b2 in chords_b:
                if face_a == face_b and _segments_cross(a1, a2, b1, b2):
                    total += 1
        best = total if best is None else min(best, total)
    return best
