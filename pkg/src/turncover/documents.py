"""JSON documents: instances, crossing certificates, torus certificates.

Schema diagnostics and semantic validation stay separate on purpose.
Structural problems (wrong types, missing keys, bad JSON) raise
DocumentError carrying the full list of problems; semantically invalid
data that is structurally fine (a non-admissible instance, a broken
curve) raises ValidationError with a reason code.  The CLI maps the two
to different exit codes.

check_certificate_document re-derives every quantitative field of a
certificate from its instance alone, so a verifier needs to trust only
this package's mathematics, not the certificate's author.
"""

from __future__ import annotations

import json
from typing import Any

from .curves import (
    CombinatorialCurve,
    Segment,
    _essential_evidence,
    case_tag_for,
    crossing_upper_bound,
    map_curve,
    validate_curve,
)
from .orbifold import (
    ConeSignature,
    CyclicHom,
    ValidationError,
    validate_hom,
    validate_signature,
)
from .tiling import build_complex, deck_action
from .torus import TorusCertificate

try:
    from importlib.metadata import PackageNotFoundError, version

    TOOL_VERSION = version("turncover")
except PackageNotFoundError:  # pragma: no cover - source tree without install
    TOOL_VERSION = "0.1.0"

SCHEMA_VERSION = "1"


class DocumentError(ValueError):
    """Structural problems with a JSON document, all of them at once."""

    def __init__(self, problems: list[str]):
        self.problems = list(problems)
        super().__init__("; ".join(self.problems))


def load_document(path: str) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise DocumentError([f"cannot read {path}: {exc}"]) from exc
    except json.JSONDecodeError as exc:
        raise DocumentError(
            [f"invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}"]
        ) from exc
    if not isinstance(doc, dict):
        raise DocumentError(
            [f"top level must be a JSON object, got {type(doc).__name__}"]
        )
    return doc


def dump_json(doc: Any) -> str:
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def _check_int_list(doc: dict, key: str, length: int, problems: list[str]):
    value = doc.get(key)
    if key not in doc:
        problems.append(f"missing key {key!r}")
        return None
    ok = (
        isinstance(value, list)
        and len(value) == length
        and all(isinstance(x, int) and not isinstance(x, bool) for x in value)
    )
    if not ok:
        problems.append(f"{key!r} must be a list of {length} integers")
        return None
    return value


def instance_document(
    sig: ConeSignature, hom: CyclicHom, label: str | None = None
) -> dict:
    doc = {
        "schema_version": SCHEMA_VERSION,
        "kind": "cover-instance",
        "signature": [sig.p1, sig.p2, sig.p3],
        "order": hom.N,
        "images": [hom.a1, hom.a2, hom.a3],
    }
    if label is not None:
        doc["label"] = label
    return doc


def parse_instance_document(
    doc: dict,
) -> tuple[ConeSignature, CyclicHom, str | None]:
    """Structural checks, then full semantic validation of the datum."""
    problems: list[str] = []
    if not isinstance(doc, dict):
        raise DocumentError(
            [f"instance must be a JSON object, got {type(doc).__name__}"]
        )
    if doc.get("schema_version") != SCHEMA_VERSION:
        problems.append(
            f"'schema_version' must be {SCHEMA_VERSION!r},"
            f" got {doc.get('schema_version')!r}"
        )
    if "kind" in doc and doc["kind"] != "cover-instance":
        problems.append(f"'kind' must be 'cover-instance', got {doc['kind']!r}")
    signature = _check_int_list(doc, "signature", 3, problems)
    images = _check_int_list(doc, "images", 3, problems)
    order = doc.get("order")
    if not isinstance(order, int) or isinstance(order, bool):
        problems.append("'order' must be an integer")
    label = doc.get("label")
    if label is not None and not isinstance(label, str):
        problems.append("'label' must be a string when present")
    if problems:
        raise DocumentError(problems)
    sig = validate_signature(*signature)
    hom = validate_hom(sig, order, *images)
    return sig, hom, label


def _segments_to_json(curve: CombinatorialCurve) -> list[list[int]]:
    return [
        [seg.face, seg.entry_slot, seg.exit_slot] for seg in curve.segments
    ]


def _segments_from_json(
    value: Any, key: str, problems: list[str]
) -> CombinatorialCurve | None:
    ok = isinstance(value, list) and value
    if ok:
        for row in value:
            if not (
                isinstance(row, list)
                and len(row) == 3
                and all(isinstance(x, int) and not isinstance(x, bool) for x in row)
            ):
                ok = False
                break
    if not ok:
        problems.append(
            f"{key!r} must be a nonempty list of [face, entry, exit] triples"
        )
        return None
    return CombinatorialCurve(tuple(Segment(*row) for row in value))


def certificate_document(cert, timestamp: str | None = None) -> dict:
    doc = {
        "schema_version": SCHEMA_VERSION,
        "kind": "crossing-certificate",
        "instance": instance_document(cert.sig, cert.hom),
        "generator": cert.k,
        "case_tag": cert.case_tag,
        "curve": _segments_to_json(cert.curve),
        "image_curve": _segments_to_json(cert.image_curve),
        "crossing_bound": cert.crossing_bound,
        "disjoint": cert.disjoint,
        "essential_evidence": cert.essential_evidence,
        "tool_version": TOOL_VERSION,
    }
    if cert.holonomy_trace is not None:
        doc["holonomy_trace"] = cert.holonomy_trace
    if timestamp is not None:
        doc["timestamp"] = timestamp
    return doc


def check_certificate_document(doc: dict) -> list[str]:
    """Re-derive every claim of a certificate; returns the discrepancies.

    An empty list means the certificate is sound.  Structural errors
    raise DocumentError; an invalid embedded instance raises
    ValidationError.
    """
    problems: list[str] = []
    if not isinstance(doc, dict):
        raise DocumentError(
            [f"certificate must be a JSON object, got {type(doc).__name__}"]
        )
    if doc.get("schema_version") != SCHEMA_VERSION:
        problems.append(
            f"'schema_version' must be {SCHEMA_VERSION!r},"
            f" got {doc.get('schema_version')!r}"
        )
    if "kind" in doc and doc["kind"] != "crossing-certificate":
        problems.append(
            f"'kind' must be 'crossing-certificate', got {doc['kind']!r}"
        )
    if "instance" not in doc:
        problems.append("missing key 'instance'")
    generator = doc.get("generator")
    if not isinstance(generator, int) or isinstance(generator, bool):
        problems.append("'generator' must be an integer")
    curve = _segments_from_json(doc.get("curve"), "curve", problems)
    image = _segments_from_json(doc.get("image_curve"), "image_curve", problems)
    bound = doc.get("crossing_bound")
    if not isinstance(bound, int) or isinstance(bound, bool):
        problems.append("'crossing_bound' must be an integer")
    if not isinstance(doc.get("disjoint"), bool):
        problems.append("'disjoint' must be a boolean")
    if problems:
        raise DocumentError(problems)

    sig, hom, _ = parse_instance_document(doc["instance"])
    cx = build_complex(sig, hom)
    mismatches: list[str] = []
    try:
        action = deck_action(cx, generator)
    except ValidationError as exc:
        return [f"generator {generator} is rejected: {exc.code}"]
    for key, c in (("curve", curve), ("image_curve", image)):
        try:
            validate_curve(cx, c)
        except ValidationError as exc:
            return [f"{key!r} is not a valid curve: {exc.code}"]
    recomputed_image = map_curve(curve, action)
    if recomputed_image != image:
        mismatches.append(
            "'image_curve' is not the stated generator's image of 'curve'"
        )
    true_bound = crossing_upper_bound(cx, curve, image)
    if true_bound != bound:
        mismatches.append(
            f"'crossing_bound' is {bound} but recomputation gives {true_bound}"
        )
    if doc["disjoint"] != (true_bound == 0):
        mismatches.append("'disjoint' contradicts the recomputed bound")
    if true_bound > 1:
        mismatches.append(
            f"recomputed crossing bound {true_bound} exceeds 1"
        )
    if doc.get("case_tag") != case_tag_for(cx.n):
        mismatches.append(
            f"'case_tag' should be {case_tag_for(cx.n)!r},"
            f" got {doc.get('case_tag')!r}"
        )
    if doc.get("essential_evidence") != _essential_evidence(cx, curve):
        mismatches.append("'essential_evidence' does not match the curve")
    if "holonomy_trace" in doc:
        from .geometry import develop_curve

        trace = develop_curve(cx, curve).trace
        if not isinstance(doc["holonomy_trace"], (int, float)) or abs(
            doc["holonomy_trace"] - trace
        ) > 1e-6:
            mismatches.append(
                f"'holonomy_trace' should be {trace!r},"
                f" got {doc['holonomy_trace']!r}"
            )
    return mismatches


def torus_document(cert: TorusCertificate, timestamp: str | None = None) -> dict:
    doc = {
        "schema_version": SCHEMA_VERSION,
        "kind": "torus-certificate",
        "case_tag": "torus",
        "matrix": [list(row) for row in cert.cls.matrix],
        "trace": cert.cls.trace,
        "order": cert.cls.order,
        "curve": list(cert.curve),
        "images": [list(v) for v in cert.images],
        "intersections": list(cert.intersections),
        "max_intersection": cert.max_intersection,
        "tool_version": TOOL_VERSION,
    }
    if timestamp is not None:
        doc["timestamp"] = timestamp
    return doc
