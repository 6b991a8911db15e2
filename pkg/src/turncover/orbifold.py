"""Core arithmetic for hyperbolic sphere quotients with three cone points.

A closed orientable surface with a periodic, irreducible self-map of order N
arises as a cyclic branched cover of a sphere with exactly three cone points
of orders (p1, p2, p3).  This module validates that combinatorial data and
computes the numerical invariants of the cover:

* a *signature* is a sorted triple of cone orders, required to be hyperbolic
  (1/p1 + 1/p2 + 1/p3 < 1);
* a *cover datum* is the tuple (N; a1, a2, a3) of residues mod N assigned to
  the three cone loops, subject to the relation a1 + a2 + a3 = 0 mod N,
  exact additive orders ord(a_i) = p_i, and joint surjectivity onto Z/N.

Exact orders make the kernel torsion free, so the total space of the cover
is a closed surface and the deck generator is an order-N homeomorphism whose
quotient recovers the three-cone-point sphere.

All validation failures raise :class:`ValidationError` carrying a stable
machine-readable reason code from the REASON_* constants below.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

# Stable reason codes for the error surface.  Tests and the CLI match on
# these strings, so they must never be reworded.
REASON_CONE_ORDER_TOO_SMALL = "cone-order-too-small"
REASON_SPHERICAL = "not-hyperbolic-spherical"
REASON_EUCLIDEAN = "not-hyperbolic-euclidean"
REASON_BAD_ORDER = "order-not-positive"
REASON_SUM_NONZERO = "relation-sum-nonzero"
REASON_WRONG_ELEMENT_ORDER = "wrong-element-order"
REASON_NOT_SURJECTIVE = "not-surjective"
REASON_NOT_A_GENERATOR = "not-a-generator"


class ValidationError(ValueError):
    """Rejection of input data, tagged with a stable reason code."""

    def __init__(self, code: str, message: str):
        super().__init__(message)
        self.code = code


@dataclass(frozen=True)
class ConeSignature:
    """Sorted hyperbolic cone orders (p1 <= p2 <= p3) of the quotient sphere."""

    p1: int
    p2: int
    p3: int

    @property
    def orders(self) -> tuple[int, int, int]:
        return (self.p1, self.p2, self.p3)

    @property
    def r(self) -> int:
        """The largest cone order; half the side count of the polygon."""
        return self.p3

    def angle_sum(self) -> Fraction:
        """Exact value of 1/p1 + 1/p2 + 1/p3."""
        return Fraction(1, self.p1) + Fraction(1, self.p2) + Fraction(1, self.p3)


@dataclass(frozen=True)
class CyclicHom:
    """Residues (a1, a2, a3) mod N assigned to the three cone loops.

    Stored normalized to 0 <= a_i < N.  Instances produced by
    :func:`validate_hom` additionally satisfy the relation, exact-order and
    surjectivity requirements for the associated signature.
    """

    N: int
    a1: int
    a2: int
    a3: int

    @property
    def residues(self) -> tuple[int, int, int]:
        return (self.a1, self.a2, self.a3)


@dataclass(frozen=True)
class OrbifoldInvariants:
    """Numerical invariants of a validated cover datum.

    r is the largest cone order, n = N / r counts the polygons of the
    invariant decomposition, and preimage_counts lists how many points of
    the cover sit over each cone point (N / p_i).  fixed_point_count is the
    number of points fixed by the deck generator, which is the number of
    cone orders equal to N.
    """

    r: int
    n: int
    genus: int
    euler_char: int
    fixed_point_count: int
    preimage_counts: tuple[int, int, int]


def additive_order(a: int, N: int) -> int:
    """Order of the residue a in the group Z/N, namely N / gcd(a, N)."""
    if N < 1:
        raise ValidationError(REASON_BAD_ORDER, f"group order must be positive, got {N}")
    return N // math.gcd(a % N, N)


def validate_signature(p1: int, p2: int, p3: int) -> ConeSignature:
    """Sort and validate a triple of cone orders.

    Accepts any ordering of the input and returns the sorted signature.
    Rejects cone orders below 2 and the spherical or Euclidean triples
    (angle sum >= 1), which do not support a hyperbolic turnover.
    """
    orders = sorted((p1, p2, p3))
    for p in orders:
        if p < 2:
            raise ValidationError(
                REASON_CONE_ORDER_TOO_SMALL,
                f"cone orders must be at least 2, got {p}",
            )
    s = Fraction(1, orders[0]) + Fraction(1, orders[1]) + Fraction(1, orders[2])
    if s > 1:
        raise ValidationError(
            REASON_SPHERICAL,
            f"signature {tuple(orders)} is spherical (angle sum {s} > 1)",
        )
    if s == 1:
        raise ValidationError(
            REASON_EUCLIDEAN,
            f"signature {tuple(orders)} is Euclidean (angle sum exactly 1)",
        )
    return ConeSignature(*orders)


def validate_hom(sig: ConeSignature, N: int, a1: int, a2: int, a3: int) -> CyclicHom:
    """Validate cover data (N; a1, a2, a3) against a signature.

    Three independent requirements, each with its own reason code:

    * the cone relation a1 + a2 + a3 = 0 mod N;
    * ord(a_i) = p_i exactly for each i, which is what keeps torsion out of
      the kernel and the cover a closed surface;
    * the residues generate all of Z/N (given exact orders this reduces to
      gcd(gcd(a2, N), gcd(a3, N)) = 1, since a1 is determined by the other
      two via the relation).

    Residues are normalized mod N in the returned datum.
    """
    if N < 1:
        raise ValidationError(REASON_BAD_ORDER, f"cover order must be positive, got {N}")
    res = (a1 % N, a2 % N, a3 % N)
    if sum(res) % N != 0:
        raise ValidationError(
            REASON_SUM_NONZERO,
            f"residues {res} sum to {sum(res) % N} mod {N}, expected 0",
        )
    for a, p in zip(res, sig.orders):
        got = additive_order(a, N)
        if got != p:
            raise ValidationError(
                REASON_WRONG_ELEMENT_ORDER,
                f"residue {a} has order {got} in Z/{N}, signature demands {p}",
            )
    if math.gcd(math.gcd(res[1], N), res[2]) != 1:
        raise ValidationError(
            REASON_NOT_SURJECTIVE,
            f"residues {res} generate a proper subgroup of Z/{N}",
        )
    return CyclicHom(N, *res)


def invariants(sig: ConeSignature, hom: CyclicHom) -> OrbifoldInvariants:
    """Invariants of a validated cover datum.

    The Euler characteristic of the cover is N * (1/p1 + 1/p2 + 1/p3 - 1)
    by the branched-cover count, and the deck generator fixes exactly one
    point over each cone point whose order equals N.  Both the parity of
    the Euler characteristic and the divisibility n = N / r hold for every
    validated datum; violations indicate a bug, not bad input, hence plain
    assertions.
    """
    N = hom.N
    chi = Fraction(N) * (sig.angle_sum() - 1)
    assert chi.denominator == 1, f"non-integer Euler characteristic {chi}"
    chi_int = int(chi)
    assert chi_int % 2 == 0, f"odd Euler characteristic {chi_int} is impossible"
    genus = (2 - chi_int) // 2
    r = sig.r
    assert N % r == 0, "largest cone order must divide the cover order"
    fixed = sum(1 for p in sig.orders if p == N)
    counts = (N // sig.p1, N // sig.p2, N // sig.p3)
    return OrbifoldInvariants(
        r=r,
        n=N // r,
        genus=genus,
        euler_char=chi_int,
        fixed_point_count=fixed,
        preimage_counts=counts,
    )


def lcm_law_check(sig: ConeSignature, hom: CyclicHom) -> bool:
    """Whether N = lcm(p_i, p_j) holds for all three pairs of cone orders.

    This is a theorem for validated data, exposed as a checkable predicate
    rather than assumed anywhere in the construction.
    """
    N = hom.N
    return (
        math.lcm(sig.p1, sig.p2) == N
        and math.lcm(sig.p1, sig.p3) == N
        and math.lcm(sig.p2, sig.p3) == N
    )
