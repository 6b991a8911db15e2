"""turncover: periodic surface maps via cyclic covers of three-cone-point spheres.

Given a hyperbolic cone signature (p1, p2, p3) and residues (a1, a2, a3)
mod N describing a cyclic cover with torsion-free kernel, this package
builds the invariant polygon decomposition of the covering surface, finds
an essential simple closed curve alpha meeting its image under the deck
generator at most once, and emits machine-checkable certificates of that
bound.  It also enumerates all such covers up to equivalence, locates the
smallest fixed-point-free examples, handles the genus-one (torus) analogue
through integer matrices, and renders decompositions to SVG.
"""

from __future__ import annotations

__version__ = "0.1.0"

from .census import (
    InstanceClass,
    enumerate_admissible,
    enumerate_order,
    find_min_fpf,
    fpf_prime_check,
    fpf_search_bound,
)
from .curves import (
    Certificate,
    CertificationError,
    CombinatorialCurve,
    Segment,
    build_alpha,
    certify,
    crossing_upper_bound,
    map_curve,
    validate_curve,
)
from .documents import (
    DocumentError,
    certificate_document,
    check_certificate_document,
    instance_document,
    parse_instance_document,
    torus_document,
)
from .geometry import (
    DevelopedCurve,
    Isometry,
    ReferencePolygon,
    build_reference_polygon,
    closure_residuals,
    develop_curve,
    geometric_crossing_count,
    solve_triangle,
    vertex_link_curve,
)
from .orbifold import (
    ConeSignature,
    CyclicHom,
    OrbifoldInvariants,
    ValidationError,
    additive_order,
    invariants,
    lcm_law_check,
    validate_hom,
    validate_signature,
)
from .render import RenderStyle, render_svg
from .tiling import (
    DeckAction,
    SurfaceComplex,
    build_complex,
    deck_action,
    quotient_check,
    verify_complex,
)
from .torus import (
    TorusCertificate,
    TorusClass,
    classify_matrix,
    find_curve,
    intersection_number,
)

__all__ = [
    "__version__",
    "Certificate",
    "CertificationError",
    "CombinatorialCurve",
    "ConeSignature",
    "CyclicHom",
    "DeckAction",
    "DevelopedCurve",
    "DocumentError",
    "InstanceClass",
    "Isometry",
    "OrbifoldInvariants",
    "ReferencePolygon",
    "RenderStyle",
    "Segment",
    "SurfaceComplex",
    "TorusCertificate",
    "TorusClass",
    "ValidationError",
    "additive_order",
    "build_alpha",
    "build_complex",
    "build_reference_polygon",
    "certificate_document",
    "certify",
    "check_certificate_document",
    "classify_matrix",
    "closure_residuals",
    "crossing_upper_bound",
    "deck_action",
    "develop_curve",
    "enumerate_admissible",
    "enumerate_order",
    "find_curve",
    "find_min_fpf",
    "fpf_prime_check",
    "fpf_search_bound",
    "geometric_crossing_count",
    "instance_document",
    "intersection_number",
    "invariants",
    "lcm_law_check",
    "map_curve",
    "parse_instance_document",
    "quotient_check",
    "render_svg",
    "solve_triangle",
    "torus_document",
    "validate_curve",
    "validate_hom",
    "validate_signature",
    "verify_complex",
    "vertex_link_curve",
]
