"""SVG pictures of the developed polygon decomposition.

Faces are placed in the unit disk by breadth-first search from one
central copy, crossing each side with the same gluing transitions that
drive curve development, and deduplicating placements by their rounded
center point.  Polygon sides and curve chords are drawn as geodesic
arcs: circles orthogonal to the boundary circle, or straight segments
for diameters.

Placement keys are rounded to 1e-6, so beyond a handful of layers the
exponentially crowding copies near the boundary could alias; depths up
to about 4 are safe and anything deeper is visually pointless anyway.

Output is deterministic for fixed inputs: coordinates are formatted to
six decimals and the only varying element, a generation timestamp
comment, is injected by the caller or omitted.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, fields, replace
from typing import Sequence
from xml.sax.saxutils import escape

from .curves import CombinatorialCurve
from .geometry import (
    Isometry,
    ReferencePolygon,
    _chord_endpoints,
    _geodesic_carrier,
    build_reference_polygon,
    side_transition,
)
from .tiling import SurfaceComplex


@dataclass(frozen=True)
class RenderStyle:
    """Styling knobs, overridable from a small TOML table."""

    size_px: int = 1024
    background: str = "#ffffff"
    disk_fill: str = "#fbfbf8"
    disk_stroke: str = "#444444"
    polygon_fill: str = "none"
    polygon_stroke: str = "#2a4d69"
    polygon_stroke_width: float = 1.2
    base_face_fill: str = "#e8f0fe"
    label_color: str = "#802020"
    label_size: float = 14.0
    show_labels: bool = True
    curve_colors: tuple[str, ...] = ("#c0392b", "#27ae60", "#8e44ad", "#d35400")
    curve_stroke_width: float = 2.5

    @classmethod
    def from_mapping(cls, data: dict) -> "RenderStyle":
        valid = {f.name for f in fields(cls)}
        unknown = sorted(set(data) - valid)
        if unknown:
            raise ValueError(
                f"unknown style keys {unknown}; valid keys are {sorted(valid)}"
            )
        if "curve_colors" in data:
            data = dict(data, curve_colors=tuple(data["curve_colors"]))
        return replace(cls(), **data)

    @classmethod
    def from_toml_file(cls, path: str) -> "RenderStyle":
        try:
            import tomllib
        except ModuleNotFoundError:  # pragma: no cover - 3.10 fallback
            import tomli as tomllib
        with open(path, "rb") as fh:
            return cls.from_mapping(tomllib.load(fh))


@dataclass(frozen=True)
class PlacedFace:
    face: int
    depth: int
    placement: Isometry
    center: complex


def face_placements(
    cx: SurfaceComplex, poly: ReferencePolygon, depth: int
) -> list[PlacedFace]:
    """Developed copies of faces out to the given gluing distance."""
    start = PlacedFace(0, 0, Isometry.identity(), 0.0j)
    seen = {(0.0, 0.0)}
    out = [start]
    queue = deque([start])
    while queue:
        placed = queue.popleft()
        if placed.depth == depth:
            continue
        walk = cx.boundary_walk(placed.face)
        for q, (b, is_out) in enumerate(walk):
            face2, q2 = cx.slot_position(b, not is_out)
            iso = placed.placement.compose(side_transition(poly, q, q2))
            center = iso.apply(0.0j)
            key = (round(center.real, 6), round(center.imag, 6))
            if key in seen:
                continue
            seen.add(key)
            nxt = PlacedFace(face2, placed.depth + 1, iso, center)
            out.append(nxt)
            queue.append(nxt)
    return sorted(
        out, key=lambda p: (p.depth, round(p.center.real, 6), round(p.center.imag, 6))
    )


def _arc_to(z1: complex, z2: complex, to_px, scale: float) -> str:
    """SVG path command for the geodesic arc from z1 to z2."""
    x2, y2 = to_px(z2)
    carrier = _geodesic_carrier(z1, z2)
    if carrier[0] == "line":
        return f"L {x2:.6f} {y2:.6f}"
    center, radius = carrier[1], carrier[2]
    r_px = radius * scale
    # the pixel frame flips y, so the sweep sense flips with it
    c1, c2 = z1 - center, z2 - center
    cross = c1.real * c2.imag - c1.imag * c2.real
    sweep = 0 if cross > 0 else 1
    return f"A {r_px:.6f} {r_px:.6f} 0 0 {sweep} {x2:.6f} {y2:.6f}"


def _polygon_path(
    poly: ReferencePolygon, iso: Isometry, to_px, scale: float
) -> str:
    corners = [iso.apply(v) for v in poly.vertices]
    x0, y0 = to_px(corners[0])
    parts = [f"M {x0:.6f} {y0:.6f}"]
    for j in range(len(corners)):
        parts.append(
            _arc_to(corners[j], corners[(j + 1) % len(corners)], to_px, scale)
        )
    parts.append("Z")
    return " ".join(parts)


def render_svg(
    cx: SurfaceComplex,
    depth: int = 1,
    curves: Sequence[CombinatorialCurve] = (),
    style: RenderStyle | None = None,
    timestamp: str | None = None,
) -> str:
    """Standalone SVG 1.1 document for the developed decomposition."""
    st = style or RenderStyle()
    poly = build_reference_polygon(cx.sig)
    placements = face_placements(cx, poly, depth)

    size = st.size_px
    half = size / 2.0
    scale = 0.47 * size

    def to_px(z: complex) -> tuple[float, float]:
        return (half + z.real * scale, half - z.imag * scale)

    title = (
        f"cover of the ({cx.sig.p1},{cx.sig.p2},{cx.sig.p3}) turnover,"
        f" order {cx.N}, depth {depth}"
    )
    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{size}" height="{size}" viewBox="0 0 {size} {size}">',
        f"<title>{escape(title)}</title>",
    ]
    if timestamp is not None:
        lines.append(f"<!-- generated {escape(timestamp)} -->")
    lines.append(
        f'<rect width="{size}" height="{size}" fill="{st.background}"/>'
    )
    lines.append(
        f'<circle cx="{half:.6f}" cy="{half:.6f}" r="{scale:.6f}" '
        f'fill="{st.disk_fill}" stroke="{st.disk_stroke}" stroke-width="1"/>'
    )

    for placed in placements:
        fill = st.base_face_fill if placed.depth == 0 else st.polygon_fill
        path = _polygon_path(poly, placed.placement, to_px, scale)
        lines.append(
            f'<path class="polygon" d="{path}" fill="{fill}" '
            f'stroke="{st.polygon_stroke}" '
            f'stroke-width="{st.polygon_stroke_width:g}"/>'
        )

    if st.show_labels:
        for placed in placements:
            x, y = to_px(placed.center)
            lines.append(
                f'<text class="label" x="{x:.6f}" y="{y:.6f}" '
                f'fill="{st.label_color}" font-size="{st.label_size:g}" '
                f'text-anchor="middle" dominant-baseline="middle">'
                f"{placed.face}</text>"
            )

    for idx, curve in enumerate(curves):
        color = st.curve_colors[idx % len(st.curve_colors)]
        chords = _chord_endpoints(cx, poly, curve, {})
        for placed in placements:
            for face, p_in, p_out in chords:
                if face != placed.face:
                    continue
                z1 = placed.placement.apply(p_in)
                z2 = placed.placement.apply(p_out)
                x1, y1 = to_px(z1)
                arc = _arc_to(z1, z2, to_px, scale)
                lines.append(
                    f'<path class="curve curve-{idx}" '
                    f'd="M {x1:.6f} {y1:.6f} {arc}" fill="none" '
                    f'stroke="{color}" '
                    f'stroke-width="{st.curve_stroke_width:g}"/>'
                )

    lines.append("</svg>")
    return "\n".join(lines) + "\n"
