"""Essential curves with certified bounds on crossings with their deck images.

A combinatorial curve is a cyclic list of segments, one chord per visited
polygon, each chord joining two distinct boundary slots.  Consecutive
segments must use the two occurrences of a single edge, so the curve
crosses each edge of the decomposition at most once (a chord endpoint
consumes a slot, and an edge only has two slots).

The curve alpha built here follows the case split on n, the number of
polygons:

* n = 1: one chord joining the two occurrences of edge 0 on the single
  polygon.  Distinct occurrences of one side of a strictly convex polygon
  make the chord essential.
* n = 2: a chord cutting the corner between the outward slot of edge 0 and
  the inward slot right after it, closed up through the second polygon.
  Its deck images stay disjoint from it: the only edge shifts that could
  produce a shared side are +-a2, never units.
* n >= 3: a chord through the two smallest outward edges of face 0 (0 and
  n), closed up through face 1.  A deck image shares at most one polygon
  with alpha, so they cross at most once.

crossing_upper_bound counts, face by face, chord pairs whose endpoints
interleave in the cyclic boundary order.  When both curves traverse a
common edge the relative position of their two crossing points along that
edge is a free binary choice, applied consistently at the edge's two slot
occurrences; the reported bound is the minimum over all such choices.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from math import gcd

from .orbifold import ConeSignature, CyclicHom, ValidationError, invariants
from .tiling import DeckAction, SurfaceComplex, build_complex, deck_action

REASON_CURVE_NOT_CLOSED = "curve-not-closed"
REASON_CURVE_NOT_NORMAL = "curve-not-normal"
REASON_CURVE_NOT_SIMPLE = "curve-not-simple"


class CertificationError(RuntimeError):
    """A certified bound failed to hold; signals a falsified implementation."""


@dataclass(frozen=True)
class Segment:
    """One chord: a face together with entry and exit slot indices."""

    face: int
    entry_slot: int
    exit_slot: int


@dataclass(frozen=True)
class CombinatorialCurve:
    """Closed normal curve given by a cyclic sequence of chords."""

    segments: tuple[Segment, ...]

    def __len__(self) -> int:
        return len(self.segments)


@dataclass(frozen=True)
class Certificate:
    """Machine-checkable record that alpha meets its image at most once."""

    sig: ConeSignature
    hom: CyclicHom
    k: int
    case_tag: str
    curve: CombinatorialCurve
    image_curve: CombinatorialCurve
    crossing_bound: int
    disjoint: bool
    essential_evidence: dict
    holonomy_trace: float | None = None


def _slot_edge(cx: SurfaceComplex, face: int, q: int) -> tuple[int, bool]:
    walk = cx.boundary_walk(face)
    return walk[q % len(walk)]


def _traversals(cx: SurfaceComplex, curve: CombinatorialCurve) -> list[int]:
    """Edges crossed between consecutive segments (one per segment)."""
    out = []
    m = len(curve.segments)
    for i, seg in enumerate(curve.segments):
        b, _ = _slot_edge(cx, seg.face, seg.exit_slot)
        nxt = curve.segments[(i + 1) % m]
        b2, _ = _slot_edge(cx, nxt.face, nxt.entry_slot)
        if b != b2:
            raise ValidationError(
                REASON_CURVE_NOT_CLOSED,
                f"segment {i} exits edge {b} but segment {(i + 1) % m} enters edge {b2}",
            )
        occ = {
            (seg.face % cx.n, seg.exit_slot % (2 * cx.r)),
            (nxt.face % cx.n, nxt.entry_slot % (2 * cx.r)),
        }
        expected = {cx.slot_position(b, True), cx.slot_position(b, False)}
        if occ != expected:
            raise ValidationError(
                REASON_CURVE_NOT_CLOSED,
                f"crossing of edge {b} must use both of its slot occurrences",
            )
        out.append(b)
    return out


def _interleaved(x1, x2, y1, y2) -> bool:
    """Whether chord {y1, y2} separates {x1, x2} in the cyclic key order."""
    lo, hi = min(x1, x2), max(x1, x2)
    return (lo < y1 < hi) != (lo < y2 < hi)


def validate_curve(cx: SurfaceComplex, curve: CombinatorialCurve) -> None:
    """Closedness, normality and simplicity; raises ValidationError."""
    if not curve.segments:
        raise ValidationError(REASON_CURVE_NOT_CLOSED, "curve has no segments")
    for i, seg in enumerate(curve.segments):
        if seg.entry_slot % (2 * cx.r) == seg.exit_slot % (2 * cx.r):
            raise ValidationError(
                REASON_CURVE_NOT_NORMAL,
                f"segment {i} enters and exits through the same slot",
            )
    _traversals(cx, curve)
    by_face: dict[int, list[tuple[int, int]]] = {}
    for seg in curve.segments:
        by_face.setdefault(seg.face % cx.n, []).append(
            (seg.entry_slot % (2 * cx.r), seg.exit_slot % (2 * cx.r))
        )
    for face, chords in by_face.items():
        used: set[int] = set()
        for e, x in chords:
            if e in used or x in used or e == x:
                raise ValidationError(
                    REASON_CURVE_NOT_SIMPLE,
                    f"two chords share a slot in face {face}",
                )
            used.update((e, x))
        for i in range(len(chords)):
            for j in range(i + 1, len(chords)):
                if _interleaved(*chords[i], *chords[j]):
                    raise ValidationError(
                        REASON_CURVE_NOT_SIMPLE,
                        f"chords of one curve cross in face {face}",
                    )


def build_alpha(cx: SurfaceComplex) -> CombinatorialCurve:
    """The reference essential curve for this decomposition (see module doc)."""
    n = cx.n
    if n == 1:
        _, q_out = cx.slot_position(0, True)
        _, q_in = cx.slot_position(0, False)
        curve = CombinatorialCurve((Segment(0, q_in, q_out),))
    elif n == 2:
        face0, q = cx.slot_position(0, True)
        assert face0 == 0
        b2, is_out = cx.boundary_walk(0)[(q + 1) % (2 * cx.r)]
        assert not is_out
        f_in, q_in = cx.slot_position(0, False)
        f2_out, q2_out = cx.slot_position(b2, True)
        assert f_in == 1 and f2_out == 1
        curve = CombinatorialCurve(
            (Segment(0, (q + 1) % (2 * cx.r), q), Segment(1, q_in, q2_out))
        )
    else:
        b, b2 = 0, n  # the two smallest outward edges of face 0
        _, q_b = cx.slot_position(b, True)
        _, q_b2 = cx.slot_position(b2, True)
        f1, q_in_b = cx.slot_position(b, False)
        f1b, q_in_b2 = cx.slot_position(b2, False)
        assert f1 == 1 and f1b == 1
        curve = CombinatorialCurve(
            (Segment(0, q_b2, q_b), Segment(1, q_in_b, q_in_b2))
        )
    validate_curve(cx, curve)
    return curve


def map_curve(curve: CombinatorialCurve, action: DeckAction) -> CombinatorialCurve:
    """Image of a curve under a deck action, via the edge translation."""
    cx = action.cx
    segs = []
    for seg in curve.segments:
        new_face = action.face_map(seg.face)
        slots = []
        for q in (seg.entry_slot, seg.exit_slot):
            b, is_out = _slot_edge(cx, seg.face, q)
            face2, q2 = cx.slot_position(action.edge_map(b), is_out)
            assert face2 == new_face, "slot image left the image face"
            slots.append(q2)
        segs.append(Segment(new_face, slots[0], slots[1]))
    image = CombinatorialCurve(tuple(segs))
    validate_curve(cx, image)
    return image


def crossing_upper_bound(
    cx: SurfaceComplex,
    curve_a: CombinatorialCurve,
    curve_b: CombinatorialCurve,
) -> int:
    """Minimal crossing count over positions of the curves' edge points.

    Both curves are validated.  Each curve meets each edge at most once; on
    edges traversed by both, the order of the two crossing points along the
    edge is a binary choice applied consistently at the edge's two slot
    occurrences (ascending along outward slots, descending along inward
    ones).  Within a face, two chords cross exactly when their endpoint
    keys interleave cyclically.  Returns the minimum total over all
    choices, which is the intersection bound the certificate reports.
    """
    validate_curve(cx, curve_a)
    validate_curve(cx, curve_b)
    edges_a = set(_traversals(cx, curve_a))
    edges_b = set(_traversals(cx, curve_b))
    shared = sorted(edges_a & edges_b)

    def endpoint_key(face: int, q: int, tag: str, order_a_first: dict[int, bool]):
        b, is_out = _slot_edge(cx, face, q)
        qn = q % (2 * cx.r)
        if b not in shared:
            return (qn, 0)
        a_first = order_a_first[b]
        first_here = a_first if is_out else not a_first
        rank = 0 if (tag == "a") == first_here else 1
        return (qn, rank)

    best = None
    for bits in product((True, False), repeat=len(shared)):
        order_a_first = dict(zip(shared, bits))
        total = 0
        by_face: dict[int, dict[str, list[tuple]]] = {}
        for tag, curve in (("a", curve_a), ("b", curve_b)):
            for seg in curve.segments:
                face = seg.face % cx.n
                chord = (
                    endpoint_key(face, seg.entry_slot, tag, order_a_first),
                    endpoint_key(face, seg.exit_slot, tag, order_a_first),
                )
                by_face.setdefault(face, {}).setdefault(tag, []).append(chord)
        for face, sides in by_face.items():
            for ca in sides.get("a", []):
                for cb in sides.get("b", []):
                    if _interleaved(*ca, *cb):
                        total += 1
        best = total if best is None else min(best, total)
    return best if best is not None else 0


def _essential_evidence(cx: SurfaceComplex, curve: CombinatorialCurve) -> dict:
    traversed = _traversals(cx, curve)
    if cx.n == 1:
        seg = curve.segments[0]
        evidence = {
            "kind": "single-polygon-paired-sides",
            "edge": traversed[0],
            "slots": sorted((seg.entry_slot, seg.exit_slot)),
        }
        assert evidence["slots"][0] != evidence["slots"][1]
        return evidence
    evidence = {
        "kind": "two-polygon-distinct-sides",
        "edges": sorted(traversed),
        "faces": sorted({seg.face for seg in curve.segments}),
    }
    assert len(set(evidence["edges"])) == 2
    assert len(evidence["faces"]) == 2
    return evidence


def case_tag_for(n: int) -> str:
    if n == 1:
        return "n=1"
    if n == 2:
        return "n=2"
    return "n>=3"


def certify(
    sig: ConeSignature, hom: CyclicHom, with_geometry: bool = False
) -> list[Certificate]:
    """Certificates for every generator of the deck group, in order of k.

    Builds the decomposition and alpha once, maps alpha by each generator
    and computes the crossing bound.  Any bound above 1, or any nonzero
    bound in the n = 2 case, raises CertificationError: on validated input
    these must never happen, so a raise means the implementation, not the
    data, is wrong.
    """
    cx = build_complex(sig, hom)
    alpha = build_alpha(cx)
    inv = invariants(sig, hom)
    tag = case_tag_for(inv.n)
    evidence = _essential_evidence(cx, alpha)
    trace = None
    if with_geometry:
        from .geometry import develop_curve

        trace = develop_curve(cx, alpha).trace
    certificates = []
    for k in range(1, hom.N):
        if gcd(k, hom.N) != 1:
            continue
        image = map_curve(alpha, deck_action(cx, k))
        bound = crossing_upper_bound(cx, alpha, image)
        if bound > 1:
            raise CertificationError(
                f"crossing bound {bound} > 1 for k={k} on {hom}"
            )
        if inv.n == 2 and bound != 0:
            raise CertificationError(
                f"two-polygon case must be disjoint, got {bound} for k={k}"
            )
        certificates.append(
            Certificate(
                sig=sig,
                hom=hom,
                k=k,
                case_tag=tag,
                curve=alpha,
                image_curve=image,
                crossing_bound=bound,
                disjoint=bound == 0,
                essential_evidence=evidence,
                holonomy_trace=trace,
            )
        )
    return certificates
