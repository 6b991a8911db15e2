"""Command line surface.

Subcommands mirror the library: validate a cover datum, certify the
crossing bounds, enumerate or search the census, handle the torus case,
render pictures, and re-derive the two bundled worked examples.

Instances are given either as a JSON document path or inline as seven
integers p1 p2 p3 N a1 a2 a3.  Exit codes: 0 success, 1 invalid
instance (with a reason code), 2 malformed document or usage, 3 empty
search result, 4 a certified bound failed to hold, which means the
implementation, not the input, is wrong.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from datetime import datetime, timezone
from multiprocessing import Pool

from .census import (
    InstanceClass,
    distinct_prime_count,
    enumerate_order,
    equivalence_orbit,
    find_min_fpf,
    fpf_search_bound,
)
from .curves import CertificationError, build_alpha, certify, map_curve
from .documents import (
    DocumentError,
    certificate_document,
    dump_json,
    instance_document,
    load_document,
    parse_instance_document,
    torus_document,
)
from .geometry import vertex_link_curve
from .orbifold import (
    ValidationError,
    invariants,
    validate_hom,
    validate_signature,
)
from .render import RenderStyle, render_svg
from .tiling import build_complex, deck_action
from .torus import find_curve

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_MALFORMED = 2
EXIT_EMPTY = 3
EXIT_FALSIFIED = 4

CHECK = "✓"
CROSS = "✗"


def _timestamp() -> str:
    return (
        datetime.now(timezone.utc)
        .isoformat(timespec="seconds")
        .replace("+00:00", "Z")
    )


def _emit(text: str, out_path: str | None) -> None:
    if out_path is None:
        sys.stdout.write(text)
    else:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _instance_from_args(args):
    tokens = args.instance
    if len(tokens) == 1:
        doc = load_document(tokens[0])
        sig, hom, _ = parse_instance_document(doc)
        return sig, hom
    if len(tokens) == 7:
        try:
            p1, p2, p3, N, a1, a2, a3 = (int(t) for t in tokens)
        except ValueError:
            raise DocumentError(
                [f"inline instance must be 7 integers, got {tokens}"]
            )
        sig = validate_signature(p1, p2, p3)
        return sig, validate_hom(sig, N, a1, a2, a3)
    raise DocumentError(
        ["instance must be a JSON path or 7 integers p1 p2 p3 N a1 a2 a3"]
    )


def _add_instance_argument(sub: argparse.ArgumentParser) -> None:
    sub.add_argument(
        "instance",
        nargs="+",
        help="JSON document path, or 7 integers p1 p2 p3 N a1 a2 a3",
    )


def cmd_validate(args) -> int:
    try:
        sig, hom = _instance_from_args(args)
    except ValidationError as exc:
        report = {"valid": False, "reason": exc.code, "detail": str(exc)}
        _emit(dump_json(report), args.out)
        return EXIT_INVALID
    inv = invariants(sig, hom)
    report = {
        "valid": True,
        "instance": instance_document(sig, hom),
        "invariants": {
            "genus": inv.genus,
            "euler_characteristic": inv.euler_char,
            "polygons": inv.n,
            "polygon_sides": 2 * inv.r,
            "fixed_points": inv.fixed_point_count,
        },
    }
    _emit(dump_json(report), args.out)
    return EXIT_OK


def cmd_certify(args) -> int:
    sig, hom = _instance_from_args(args)
    stamp = None if args.no_timestamp else _timestamp()
    certs = certify(sig, hom, with_geometry=args.with_geometry)
    docs = [certificate_document(c, timestamp=stamp) for c in certs]
    if args.all_generators:
        _emit(dump_json(docs), args.out)
    else:
        _emit(dump_json(docs[0]), args.out)
    return EXIT_OK


def _class_label(cls: InstanceClass) -> str:
    label = f"genus {cls.genus}"
    if cls.fixed_point_free:
        label += ", fixed-point-free"
    return label


def _class_line(cls: InstanceClass) -> str:
    doc = instance_document(cls.sig, cls.hom, label=_class_label(cls))
    return json.dumps(doc, sort_keys=True)


def _order_lines(task: tuple[int, int | None, bool]) -> list[str]:
    N, genus_max, fpf_only = task
    return [
        _class_line(cls)
        for cls in enumerate_order(N, genus_max=genus_max, fpf_only=fpf_only)
    ]


def cmd_enumerate(args) -> int:
    if args.max_order is not None:
        max_order, genus_max = args.max_order, None
    else:
        max_order = fpf_search_bound(args.max_genus)
        genus_max = args.max_genus
    tasks = [(N, genus_max, args.fpf_only) for N in range(2, max_order + 1)]
    lines: list[str] = []
    if args.jobs > 1:
        with Pool(args.jobs) as pool:
            for chunk in pool.imap(_order_lines, tasks, chunksize=8):
                lines.extend(chunk)
    else:
        for task in tasks:
            lines.extend(_order_lines(task))
    _emit("".join(line + "\n" for line in lines), args.out)
    return EXIT_OK


def cmd_min_fpf(args) -> int:
    cls = find_min_fpf(args.max_genus)
    if cls is None:
        return EXIT_EMPTY
    _emit(dump_json(instance_document(cls.sig, cls.hom, _class_label(cls))), args.out)
    return EXIT_OK


def cmd_torus(args) -> int:
    matrix = ((args.a, args.b), (args.c, args.d))
    cert = find_curve(matrix)
    stamp = None if args.no_timestamp else _timestamp()
    _emit(dump_json(torus_document(cert, timestamp=stamp)), args.out)
    return EXIT_OK


def _parse_curve_tokens(cx, tokens: list[str]):
    curves = []
    alpha = None
    for token in tokens:
        if token == "alpha":
            alpha = alpha if alpha is not None else build_alpha(cx)
            curves.append(alpha)
        elif token.startswith("image:"):
            k = int(token.split(":", 1)[1])
            alpha = alpha if alpha is not None else build_alpha(cx)
            curves.append(map_curve(alpha, deck_action(cx, k)))
        elif token in ("link:x1", "link:x2"):
            curves.append(vertex_link_curve(cx, which=token.split(":")[1]))
        else:
            raise DocumentError(
                [
                    f"unknown curve token {token!r}; use alpha, image:K,"
                    " link:x1 or link:x2"
                ]
            )
    return curves


def cmd_render(args) -> int:
    sig, hom = _instance_from_args(args)
    cx = build_complex(sig, hom)
    style = RenderStyle()
    if args.config is not None:
        try:
            style = RenderStyle.from_toml_file(args.config)
        except (OSError, ValueError) as exc:
            raise DocumentError([f"bad style config: {exc}"])
    if args.size is not None:
        from dataclasses import replace

        style = replace(style, size_px=args.size)
    tokens = [t for t in (args.curves or "").split(",") if t]
    curves = _parse_curve_tokens(cx, tokens)
    stamp = None if args.no_timestamp else _timestamp()
    svg = render_svg(
        cx, depth=args.depth, curves=curves, style=style, timestamp=stamp
    )
    _emit(svg, args.out)
    return EXIT_OK


class _Report:
    def __init__(self, title: str):
        self.lines = [title]
        self.failures = 0

    def check(self, label: str, ok: bool) -> None:
        mark = CHECK if ok else CROSS
        self.failures += 0 if ok else 1
        self.lines.append(f"  {label} {mark}")

    def render(self) -> str:
        verdict = (
            "all checks passed"
            if self.failures == 0
            else f"{self.failures} check(s) failed"
        )
        return "\n".join(self.lines + [verdict]) + "\n"


def _reproduce_one_click(genus: int, report: _Report) -> None:
    """The one-click rotation family: a (4g+2)-gon with a single polygon
    decomposition, one fixed point and crossing bound at most 1."""
    g = genus
    N = 4 * g + 2
    report.check(
        f"third cone order is forced: lcm(2, {2 * g + 1}) = {N}",
        math.lcm(2, 2 * g + 1) == N,
    )
    sig = validate_signature(2, 2 * g + 1, N)
    hom = validate_hom(sig, N, 2 * g + 1, 2, (N - 2 * g - 3) % N)
    report.check(f"cover datum (2, {2 * g + 1}, {N}; {N}) is admissible", True)
    inv = invariants(sig, hom)
    report.check(f"deck group order {N} = 4g + 2", hom.N == N)
    report.check(f"cover genus {inv.genus} = g", inv.genus == g)
    triples = equivalence_orbit(sig, N, (hom.a1, hom.a2, hom.a3))
    enumerated = any(
        cls.sig == sig and (cls.hom.a1, cls.hom.a2, cls.hom.a3) in triples
        for cls in enumerate_order(N)
    )
    report.check("instance appears in the order-%d enumeration" % N, enumerated)
    report.check("single polygon (n = 1)", inv.n == 1)
    cx = build_complex(sig, hom)
    action = deck_action(cx, 1)
    report.check(
        "unique fixed point, the polygon center",
        inv.fixed_point_count == 1 and action.fixed_cell_count() == 1,
    )
    report.check(
        f"side midpoints form {2 * g + 1} vertices in one orbit",
        cx.num_x1_vertices == 2 * g + 1
        and _orbit_size(action.x1_vertex_map, 0) == 2 * g + 1,
    )
    report.check(
        "corners form 2 vertices swapped by the generator",
        cx.num_x2_vertices == 2 and action.x2_vertex_map(0) == 1,
    )
    certs = certify(sig, hom)
    report.check(
        "crossing bound at most 1 for every generator",
        all(c.crossing_bound <= 1 for c in certs),
    )


def _orbit_size(mapping, start: int) -> int:
    size, v = 1, mapping(start)
    while v != start:
        size += 1
        v = mapping(v)
    return size


def _reproduce_min_fpf(report: _Report) -> None:
    """The smallest fixed-point-free example: (6, 10, 15) of order 30."""
    sig = validate_signature(6, 10, 15)
    hom = validate_hom(sig, 30, 5, 27, 28)
    report.check("cover datum (6,10,15; 30; 5,27,28) is admissible", True)
    inv = invariants(sig, hom)
    report.check("deck group order 30", hom.N == 30)
    report.check("cover genus 11", inv.genus == 11)
    cx = build_complex(sig, hom)
    action = deck_action(cx, 1)
    report.check(
        "fixed-point-free",
        inv.fixed_point_count == 0 and action.fixed_cell_count() == 0,
    )
    report.check(
        "two 30-gon polygons", inv.n == 2 and 2 * inv.r == 30
    )
    report.check(
        "the generator interchanges the two polygons", action.face_map(0) == 1
    )
    certs = certify(sig, hom)
    report.check(
        "curve disjoint from all its generator images",
        all(c.crossing_bound == 0 and c.disjoint for c in certs),
    )
    report.check(
        "order 30 has three distinct prime factors",
        distinct_prime_count(30) == 3,
    )
    minimal = find_min_fpf(11)
    report.check(
        "matches the minimal fixed-point-free class up to genus 11",
        minimal is not None
        and minimal.sig == sig
        and minimal.hom.N == 30
        and minimal.genus == 11,
    )


def cmd_reproduce(args) -> int:
    if args.example == "3.1":
        genus = 2 if args.genus is None else args.genus
        if genus < 2:
            raise DocumentError(["--genus must be at least 2"])
        report = _Report(f"example 3.1 (genus {genus}) reproduction")
        _reproduce_one_click(genus, report)
    else:
        if args.genus is not None:
            raise DocumentError(["--genus applies only to example 3.1"])
        report = _Report("example 3.2 reproduction")
        _reproduce_min_fpf(report)
    _emit(report.render(), args.out)
    return EXIT_OK if report.failures == 0 else EXIT_FALSIFIED


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="turncover",
        description=(
            "Invariant polygon decompositions and low-crossing curve"
            " certificates for periodic surface maps"
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check a cover datum, report invariants")
    _add_instance_argument(p)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("certify", help="emit crossing certificates")
    _add_instance_argument(p)
    p.add_argument("--all-generators", action="store_true")
    p.add_argument("--with-geometry", action="store_true")
    p.add_argument("--no-timestamp", action="store_true")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("enumerate", help="list admissible classes as JSON lines")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--max-order", type=int, default=None)
    group.add_argument("--max-genus", type=int, default=None)
    p.add_argument("--fpf-only", action="store_true")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser(
        "min-fpf", help="least-genus fixed-point-free class, if any"
    )
    p.add_argument("--max-genus", type=int, required=True)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_min_fpf)

    p = sub.add_parser("torus", help="torus-case certificate for a matrix")
    p.add_argument("a", type=int)
    p.add_argument("b", type=int)
    p.add_argument("c", type=int)
    p.add_argument("d", type=int)
    p.add_argument("--no-timestamp", action="store_true")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_torus)

    p = sub.add_parser("render", help="SVG picture of the decomposition")
    _add_instance_argument(p)
    p.add_argument("--depth", type=int, default=1)
    p.add_argument(
        "--curves",
        default="",
        help="comma list of alpha, image:K, link:x1, link:x2",
    )
    p.add_argument("--config", default=None, help="TOML style table")
    p.add_argument("--size", type=int, default=None)
    p.add_argument("--no-timestamp", action="store_true")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_render)

    p = sub.add_parser("reproduce", help="re-derive a bundled worked example")
    p.add_argument("example", choices=["3.1", "3.2"])
    p.add_argument("--genus", type=int, default=None)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_reproduce)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except DocumentError as exc:
        for problem in exc.problems:
            print(f"error: {problem}", file=sys.stderr)
        return EXIT_MALFORMED
    except ValidationError as exc:
        print(f"invalid: {exc.code}: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except (CertificationError, AssertionError) as exc:
        print(f"falsified: {exc}", file=sys.stderr)
        return EXIT_FALSIFIED


if __name__ == "__main__":
    sys.exit(main())
