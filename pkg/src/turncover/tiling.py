"""Invariant polygon decomposition of a cyclic turnover cover.

A validated cover datum (sig; N; a1, a2, a3) determines a closed surface
tiled by n = N / p3 convex 2r-gons (r = p3) that the deck generator
permutes.  The cell structure has a clean coset model inside G = Z/N:

* faces are labelled by Z/n, the quotient of G by the order-r subgroup
  generated by a3, via the map nu normalized so that nu(a2) = 1;
* edges are labelled by Z/N (one per lift of the arc joining the first
  two cone points), edge b lying between face nu(b) and face nu(b) + 1;
* vertices over the first and second cone points are the cosets of the
  order-p1 and order-p2 subgroups, so edge b joins the vertex classes
  b mod N/p1 and b mod N/p2.

Walking the boundary of face c alternates outward slots (edges b with
nu(b) = c, in steps of a3) and inward slots (edges b - a2 right after
outward edge b), 2r slots in all.  The mirror convention, with inward
faces at nu - 1 and inward slots at b + a2, is equally consistent;
build_complex carries both behind an orientation flag and returns the
first one that passes the full verifier.

Every structural law is rechecked by verify_complex after construction.
A verifier failure signals a convention bug in this module, never bad
input, and raises ComplexInvariantError naming the violated law.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .orbifold import (
    REASON_NOT_A_GENERATOR,
    ConeSignature,
    CyclicHom,
    OrbifoldInvariants,
    ValidationError,
    invariants,
    validate_hom,
)

Slot = tuple[int, bool]  # (edge id, True for an outward slot)


class ComplexInvariantError(AssertionError):
    """A structural law of the coset model failed; names the law."""

    def __init__(self, law: str, detail: str):
        super().__init__(f"{law}: {detail}")
        self.law = law


@dataclass(frozen=True)
class SurfaceComplex:
    """Polygonal cell structure of the covering surface.

    walks[c] lists the 2r boundary slots of face c in rotational order,
    each slot an (edge, is_out) pair.  out_pos and in_pos give, for every
    edge, the (face, slot index) of its outward and inward occurrence.
    """

    sig: ConeSignature
    hom: CyclicHom
    orientation: int
    nu: tuple[int, ...]
    walks: tuple[tuple[Slot, ...], ...]
    out_pos: tuple[tuple[int, int], ...]
    in_pos: tuple[tuple[int, int], ...]

    @property
    def N(self) -> int:
        return self.hom.N

    @property
    def r(self) -> int:
        return self.sig.p3

    @property
    def n(self) -> int:
        return self.hom.N // self.sig.p3

    @property
    def num_x1_vertices(self) -> int:
        return self.hom.N // self.sig.p1

    @property
    def num_x2_vertices(self) -> int:
        return self.hom.N // self.sig.p2

    def invariants(self) -> OrbifoldInvariants:
        return invariants(self.sig, self.hom)

    def out_face(self, b: int) -> int:
        return self.nu[b % self.N]

    def in_face(self, b: int) -> int:
        return (self.nu[b % self.N] + self.orientation) % self.n

    def x1_vertex(self, b: int) -> int:
        """Vertex class over the first cone point at the end of edge b."""
        return b % self.num_x1_vertices

    def x2_vertex(self, b: int) -> int:
        """Vertex class over the second cone point at the end of edge b."""
        return b % self.num_x2_vertices

    def boundary_walk(self, c: int) -> tuple[Slot, ...]:
        return self.walks[c % self.n]

    def slot_position(self, b: int, is_out: bool) -> tuple[int, int]:
        """(face, index) of the outward or inward occurrence of edge b."""
        return self.out_pos[b % self.N] if is_out else self.in_pos[b % self.N]


def _build(sig: ConeSignature, hom: CyclicHom, orientation: int) -> SurfaceComplex:
    N, r = hom.N, sig.p3
    n = N // r
    # nu: Z/N -> Z/n killing a3, normalized so nu(a2) = 1.  a3 lies in the
    # order-r subgroup <n>, so reduction mod n kills it; a2 mod n is a unit.
    u = pow(hom.a2 % n if n > 1 else 0, -1, n) if n > 1 else 0
    nu = tuple((u * b) % n if n > 1 else 0 for b in range(N))

    walks = []
    for c in range(n):
        b0 = min(b for b in range(N) if nu[b] == c)
        walk: list[Slot] = []
        for i in range(r):
            out_edge = (b0 + i * hom.a3) % N
            walk.append((out_edge, True))
            walk.append(((out_edge - orientation * hom.a2) % N, False))
        walks.append(tuple(walk))

    out_pos: list[tuple[int, int]] = [(-1, -1)] * N
    in_pos: list[tuple[int, int]] = [(-1, -1)] * N
    for c, walk in enumerate(walks):
        for q, (b, is_out) in enumerate(walk):
            if is_out:
                out_pos[b] = (c, q)
            else:
                in_pos[b] = (c, q)

    return SurfaceComplex(
        sig=sig,
        hom=hom,
        orientation=orientation,
        nu=nu,
        walks=tuple(walks),
        out_pos=tuple(out_pos),
        in_pos=tuple(in_pos),
    )


def verify_complex(cx: SurfaceComplex) -> None:
    """Recheck every structural law; raise ComplexInvariantError on failure."""
    sig, hom = cx.sig, cx.hom
    N, r, n = cx.N, cx.r, cx.n

    def law(name: str, cond: bool, detail: str) -> None:
        if not cond:
            raise ComplexInvariantError(name, detail)

    law("cell-counts", len(cx.walks) == n, f"expected {n} faces, got {len(cx.walks)}")
    law(
        "cell-counts",
        cx.num_x1_vertices == N // sig.p1 and cx.num_x2_vertices == N // sig.p2,
        "vertex class counts must be N/p1 and N/p2",
    )

    # quotient map: kills a3, sends a2 to +1, fibers of size r
    law("nu-quotient", cx.nu[hom.a3 % N] == 0, "nu must kill a3")
    law("nu-quotient", cx.nu[hom.a2 % N] == 1 % n, "nu must send a2 to 1")
    for b in range(N):
        law(
            "nu-quotient",
            cx.nu[(b + hom.a3) % N] == cx.nu[b],
            f"nu not constant on edge coset at {b}",
        )
    for c in range(n):
        fiber = sum(1 for b in range(N) if cx.nu[b] == c)
        law("nu-quotient", fiber == r, f"fiber of face {c} has size {fiber}, want {r}")

    # walk shape: 2r slots, alternating outward and inward
    for c, walk in enumerate(cx.walks):
        law("walk-shape", len(walk) == 2 * r, f"face {c} has {len(walk)} slots")
        for q, (b, is_out) in enumerate(walk):
            law("walk-shape", is_out == (q % 2 == 0), f"face {c} slot {q} parity")

    # each edge once outward and once inward, in the faces nu(b) and nu(b)+o
    seen_out = [0] * N
    seen_in = [0] * N
    for c, walk in enumerate(cx.walks):
        for b, is_out in walk:
            if is_out:
                seen_out[b] += 1
                law("slot-pairing", cx.out_face(b) == c, f"outward slot of {b} in face {c}")
            else:
                seen_in[b] += 1
                law("slot-pairing", cx.in_face(b) == c, f"inward slot of {b} in face {c}")
    law("slot-pairing", all(v == 1 for v in seen_out), "every edge outward exactly once")
    law("slot-pairing", all(v == 1 for v in seen_in), "every edge inward exactly once")

    # adjacent face labels differ by one step
    for b in range(N):
        law(
            "face-adjacency",
            (cx.in_face(b) - cx.out_face(b)) % n == cx.orientation % n,
            f"faces across edge {b} are {cx.out_face(b)}, {cx.in_face(b)}",
        )

    # rotational order of slots: outward edges step by a3, inward trails by a2
    for c, walk in enumerate(cx.walks):
        for i in range(r):
            b_now = walk[2 * i][0]
            b_next = walk[(2 * i + 2) % (2 * r)][0]
            law(
                "rotation-order",
                b_next == (b_now + hom.a3) % N,
                f"face {c} outward step {i}",
            )
            law(
                "rotation-order",
                walk[2 * i + 1][0] == (b_now - cx.orientation * hom.a2) % N,
                f"face {c} inward slot {i}",
            )

    # vertex links: stepping b -> b + a1 closes after exactly p1 edges, and
    # the cycle stays at one vertex class; likewise b -> b - a2 with p2
    for b in range(N):
        cyc = {(b + i * hom.a1) % N for i in range(sig.p1)}
        law("vertex-link", len(cyc) == sig.p1, f"link at x1 vertex of edge {b}")
        law(
            "vertex-link",
            {cx.x1_vertex(e) for e in cyc} == {cx.x1_vertex(b)},
            f"x1 link at edge {b} leaves its vertex class",
        )
        cyc2 = {(b - i * hom.a2) % N for i in range(sig.p2)}
        law("vertex-link", len(cyc2) == sig.p2, f"link at x2 vertex of edge {b}")
        law(
            "vertex-link",
            {cx.x2_vertex(e) for e in cyc2} == {cx.x2_vertex(b)},
            f"x2 link at edge {b} leaves its vertex class",
        )

    # Euler characteristic against the branched-cover count
    inv = cx.invariants()
    chi_cells = (cx.num_x1_vertices + cx.num_x2_vertices) - N + n
    law(
        "euler-characteristic",
        chi_cells == inv.euler_char,
        f"cells give {chi_cells}, invariants give {inv.euler_char}",
    )

    # connectivity of the cell complex through its edges
    seen_faces = {0}
    frontier = [0]
    while frontier:
        c = frontier.pop()
        for b, _ in cx.walks[c]:
            for c2 in (cx.out_face(b), cx.in_face(b)):
                if c2 not in seen_faces:
                    seen_faces.add(c2)
                    frontier.append(c2)
    law("connectivity", len(seen_faces) == n, "face adjacency graph is connected")


def build_complex(
    sig: ConeSignature, hom: CyclicHom, orientation: int | None = None
) -> SurfaceComplex:
    """Construct and verify the polygon decomposition for a validated datum.

    With orientation None, tries the standard convention first and falls
    back to its mirror, returning the first complex passing the verifier.
    """
    validate_hom(sig, hom.N, *hom.residues)
    choices = (1, -1) if orientation is None else (orientation,)
    last_error: ComplexInvariantError | None = None
    for o in choices:
        cx = _build(sig, hom, o)
        try:
            verify_complex(cx)
            return cx
        except ComplexInvariantError as e:
            last_error = e
    raise last_error  # pragma: no cover - both conventions verify on valid data


@dataclass(frozen=True)
class DeckAction:
    """The deck transformation f^k acting on the cells of the complex.

    Edges translate by k, faces by nu(k); the edge action is free because
    k is a unit, and the only cells fixed are those over cone points of
    full order N.
    """

    cx: SurfaceComplex
    k: int

    @property
    def face_shift(self) -> int:
        return self.cx.nu[self.k % self.cx.N]

    def edge_map(self, b: int) -> int:
        return (b + self.k) % self.cx.N

    def face_map(self, c: int) -> int:
        return (c + self.face_shift) % self.cx.n

    def x1_vertex_map(self, v: int) -> int:
        return (v + self.k) % self.cx.num_x1_vertices

    def x2_vertex_map(self, v: int) -> int:
        return (v + self.k) % self.cx.num_x2_vertices

    def fixed_cell_count(self) -> int:
        """Fixed vertices plus fixed face centers, counted directly."""
        fixed = sum(
            1 for v in range(self.cx.num_x1_vertices) if self.x1_vertex_map(v) == v
        )
        fixed += sum(
            1 for v in range(self.cx.num_x2_vertices) if self.x2_vertex_map(v) == v
        )
        fixed += sum(1 for c in range(self.cx.n) if self.face_map(c) == c)
        return fixed


def deck_action(cx: SurfaceComplex, k: int) -> DeckAction:
    """Action of f^k on the complex; k must generate Z/N."""
    if math.gcd(k, cx.N) != 1:
        raise ValidationError(
            REASON_NOT_A_GENERATOR,
            f"k = {k} does not generate Z/{cx.N}",
        )
    return DeckAction(cx=cx, k=k % cx.N)


def quotient_check(cx: SurfaceComplex, action: DeckAction) -> bool:
    """Whether the quotient by the full cyclic group is the expected turnover.

    Orbits are computed honestly by iterating the generator.  The quotient
    must be one polygon face, one edge class and one vertex class over each
    of the first two cone points, with deck stabilizer orders (r, 1, p1, p2).
    """
    N = cx.N

    def orbit_data(count: int, step_fn) -> tuple[int, set[int]]:
        remaining = set(range(count))
        orbits = 0
        sizes = set()
        while remaining:
            start = next(iter(remaining))
            orb = {start}
            x = step_fn(start)
            while x != start:
                orb.add(x)
                x = step_fn(x)
            remaining -= orb
            orbits += 1
            sizes.add(len(orb))
        return orbits, sizes

    face_orbits, face_sizes = orbit_data(cx.n, action.face_map)
    edge_orbits, edge_sizes = orbit_data(N, action.edge_map)
    x1_orbits, x1_sizes = orbit_data(cx.num_x1_vertices, action.x1_vertex_map)
    x2_orbits, x2_sizes = orbit_data(cx.num_x2_vertices, action.x2_vertex_map)
    return (
        face_orbits == 1
        and face_sizes == {cx.n}  # stabilizer order r = N / n
        and edge_orbits == 1
        and edge_sizes == {N}  # free on edges
        and x1_orbits == 1
        and x1_sizes == {cx.num_x1_vertices}  # stabilizer order p1
        and x2_orbits == 1
        and x2_sizes == {cx.num_x2_vertices}  # stabilizer order p2
    )
