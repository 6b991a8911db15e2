"""Renderer checks: placement counts, valid XML, determinism."""

import xml.etree.ElementTree as ET

import pytest

from turncover.curves import build_alpha
from turncover.geometry import build_reference_polygon
from turncover.orbifold import validate_hom, validate_signature
from turncover.render import RenderStyle, face_placements, render_svg
from turncover.tiling import build_complex


def make(p1, p2, p3, N, a1, a2, a3):
    sig = validate_signature(p1, p2, p3)
    hom = validate_hom(sig, N, a1, a2, a3)
    return build_complex(sig, hom)


@pytest.fixture(scope="module")
def fpf30():
    return make(6, 10, 15, 30, 5, 27, 28)


@pytest.fixture(scope="module")
def genus_two():
    return make(2, 5, 10, 10, 5, 2, 3)


def count_class(svg, name):
    return svg.count(f'class="{name}"')


def test_depth_zero_single_copy(fpf30):
    poly = build_reference_polygon(fpf30.sig)
    placements = face_placements(fpf30, poly, 0)
    assert len(placements) == 1
    assert placements[0].face == 0
    assert placements[0].center == 0j


def test_depth_one_copy_count(fpf30, genus_two):
    # one central copy plus one neighbor per geodesic side: 2r sides
    # generally, but r when p1 = 2 makes even corners straight and the
    # sides merge in collinear pairs
    poly = build_reference_polygon(fpf30.sig)
    assert len(face_placements(fpf30, poly, 1)) == 2 * fpf30.r + 1
    poly = build_reference_polygon(genus_two.sig)
    assert len(face_placements(genus_two, poly, 1)) == genus_two.r + 1


def test_depth_one_neighbors_alternate_face(fpf30):
    # with two faces every gluing crosses to the other one
    poly = build_reference_polygon(fpf30.sig)
    placements = face_placements(fpf30, poly, 1)
    assert [p.face for p in placements] == [0] + [1] * 30


def test_fpf30_depth_one_polygon_count(fpf30):
    svg = render_svg(fpf30, depth=1)
    assert count_class(svg, "polygon") == 31


def test_svg_parses_and_is_version_1_1(fpf30):
    svg = render_svg(fpf30, depth=1)
    root = ET.fromstring(svg)
    assert root.tag == "{http://www.w3.org/2000/svg}svg"
    assert root.get("version") == "1.1"


def test_render_is_deterministic(fpf30):
    a = render_svg(fpf30, depth=1, curves=[build_alpha(fpf30)])
    b = render_svg(fpf30, depth=1, curves=[build_alpha(fpf30)])
    assert a == b


def test_timestamp_only_adds_a_comment(fpf30):
    bare = render_svg(fpf30, depth=0)
    stamped = render_svg(fpf30, depth=0, timestamp="2024-01-01T00:00:00Z")
    assert "<!-- generated 2024-01-01T00:00:00Z -->" in stamped
    assert stamped.replace(
        "<!-- generated 2024-01-01T00:00:00Z -->\n", ""
    ) == bare


def test_curve_paths_drawn_in_every_matching_copy(genus_two):
    # one face, one segment: one chord per placed copy
    svg = render_svg(genus_two, depth=1, curves=[build_alpha(genus_two)])
    assert count_class(svg, "curve curve-0") == 11


def test_labels_follow_style_flag(fpf30):
    on = render_svg(fpf30, depth=1)
    off = render_svg(fpf30, depth=1, style=RenderStyle(show_labels=False))
    assert count_class(on, "label") == 31
    assert count_class(off, "label") == 0


def test_style_rejects_unknown_keys():
    with pytest.raises(ValueError, match="unknown style keys"):
        RenderStyle.from_mapping({"size_px": 512, "bogus": 1})


def test_style_from_toml(tmp_path):
    cfg = tmp_path / "style.toml"
    cfg.write_text(
        'size_px = 400\nshow_labels = false\ncurve_colors = ["#111111"]\n'
    )
    st = RenderStyle.from_toml_file(str(cfg))
    assert st.size_px == 400
    assert st.show_labels is False
    assert st.curve_colors == ("#111111",)
    assert st.background == "#ffffff"
