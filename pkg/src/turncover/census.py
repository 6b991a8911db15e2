"""Census of cyclic cover data up to equivalence.

Two cover data for the same signature describe the same pair (surface,
periodic map up to regenerating the cyclic group) when one is carried to
the other by a unit u of Z/N acting simultaneously on all three residues,
combined with a permutation of coordinates that only moves cone points of
equal order.  This module enumerates admissible data grouped into such
classes, with a deterministic canonical representative per class, and
searches for fixed-point-free examples of least genus.

The enumeration is exact and exhaustive: for each cover order N it walks
divisor triples (p1 <= p2 <= p3) of N, then all residue pairs of exact
orders (p1, p2), with the third residue forced by the relation.  The only
signature-level pruning used, lcm(p2, p3) = N, is equivalent to the joint
surjectivity requirement once element orders are exact (because
gcd(a_i, N) = N / p_i is forced), so no admissible datum is ever skipped.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import permutations

from .orbifold import (
    ConeSignature,
    CyclicHom,
    additive_order,
    invariants,
    validate_hom,
    validate_signature,
)


@dataclass(frozen=True)
class InstanceClass:
    """An equivalence class of admissible cover data.

    hom is the canonical representative: the lexicographically least residue
    triple in the class orbit.  canonical_key is a tuple of integers usable
    as a dictionary key and sort key, and orbit_size counts the raw ordered
    triples the class absorbs (used by the double-count consistency check).
    """

    sig: ConeSignature
    hom: CyclicHom
    canonical_key: tuple[int, ...]
    genus: int
    fixed_point_free: bool
    orbit_size: int


def distinct_prime_count(n: int) -> int:
    """Number of distinct prime factors of n, by trial division."""
    count, d = 0, 2
    while d * d <= n:
        if n % d == 0:
            count += 1
            while n % d == 0:
                n //= d
        d += 1
    return count + (1 if n > 1 else 0)


def elements_of_order(N: int, p: int) -> list[int]:
    """All residues of exact additive order p in Z/N (empty unless p | N)."""
    if p < 1 or N % p != 0:
        return []
    step = N // p
    return [step * u % N for u in range(1, p + 1) if math.gcd(u, p) == 1]


def _divisors(N: int) -> list[int]:
    out = [d for d in range(1, N + 1) if N % d == 0]
    return out


def admissible_signatures(
    N: int, genus_max: int | None = None, fpf_only: bool = False
) -> list[tuple[int, int, int]]:
    """Divisor triples of N that can carry admissible residues.

    Keeps p1 <= p2 <= p3 with every p_i >= 2 dividing N, hyperbolic angle
    sum, and lcm(p2, p3) = N (the exact surjectivity criterion, see module
    docstring).  Optional filters: genus of the would-be cover at most
    genus_max, and p3 < N (no order-N cone point means no fixed points).
    """
    divs = [d for d in _divisors(N) if d >= 2]
    out = []
    for i, p1 in enumerate(divs):
        for j in range(i, len(divs)):
            p2 = divs[j]
            for k in range(j, len(divs)):
                p3 = divs[k]
                # hyperbolic: 1/p1 + 1/p2 + 1/p3 < 1, in integers
                if p2 * p3 + p1 * p3 + p1 * p2 >= p1 * p2 * p3:
                    continue
                if math.lcm(p2, p3) != N:
                    continue
                if fpf_only and p3 == N:
                    continue
                if genus_max is not None:
                    prod = p1 * p2 * p3
                    area_num = prod - (p2 * p3 + p1 * p3 + p1 * p2)
                    if N * area_num > 2 * (genus_max - 1) * prod:
                        continue
                out.append((p1, p2, p3))
    return out


def equivalence_orbit(
    sig: ConeSignature, N: int, residues: tuple[int, int, int]
) -> list[tuple[int, int, int]]:
    """Sorted orbit of a residue triple under units and equal-order swaps."""
    allowed = [
        perm
        for perm in permutations(range(3))
        if all(sig.orders[perm[i]] == sig.orders[i] for i in range(3))
    ]
    orbit = set()
    for u in range(1, N + 1):
        if math.gcd(u, N) != 1:
            continue
        scaled = tuple(u * a % N for a in residues)
        for perm in allowed:
            orbit.add((scaled[perm[0]], scaled[perm[1]], scaled[perm[2]]))
    return sorted(orbit)


def _make_class(sig: ConeSignature, N: int, orbit: list[tuple[int, int, int]]) -> InstanceClass:
    canon = orbit[0]
    hom = validate_hom(sig, N, *canon)
    inv = invariants(sig, hom)
    return InstanceClass(
        sig=sig,
        hom=hom,
        canonical_key=(N,) + sig.orders + canon,
        genus=inv.genus,
        fixed_point_free=inv.fixed_point_count == 0,
        orbit_size=len(orbit),
    )


def enumerate_order(
    N: int, genus_max: int | None = None, fpf_only: bool = False
) -> list[InstanceClass]:
    """All equivalence classes of admissible data with cover order exactly N."""
    classes: list[InstanceClass] = []
    for p1, p2, p3 in admissible_signatures(N, genus_max=genus_max, fpf_only=fpf_only):
        sig = validate_signature(p1, p2, p3)
        seen: set[tuple[int, int, int]] = set()
        for a1 in elements_of_order(N, p1):
            for a2 in elements_of_order(N, p2):
                a3 = (-a1 - a2) % N
                if additive_order(a3, N) != p3:
                    continue
                triple = (a1, a2, a3)
                if triple in seen:
                    continue
                orbit = equivalence_orbit(sig, N, triple)
                seen.update(orbit)
                classes.append(_make_class(sig, N, orbit))
    classes.sort(key=lambda c: c.canonical_key)
    return classes


def enumerate_admissible(
    max_order: int, genus_max: int | None = None, fpf_only: bool = False
) -> list[InstanceClass]:
    """All classes with cover order at most max_order, deterministically sorted."""
    out: list[InstanceClass] = []
    for N in range(2, max_order + 1):
        out.extend(enumerate_order(N, genus_max=genus_max, fpf_only=fpf_only))
    return out


def fpf_search_bound(genus_max: int) -> int:
    """Largest cover order a fixed-point-free example of genus <= genus_max can have.

    2(genus - 1) = N (1 - 1/p1 - 1/p2 - 1/p3) and the right factor is at
    least 1/42 for every hyperbolic signature (minimized at (2, 3, 7)), so
    N <= 84 (genus_max - 1).
    """
    return 84 * (genus_max - 1)


def find_min_fpf(genus_max: int) -> InstanceClass | None:
    """Fixed-point-free class of least genus among those with genus <= genus_max.

    Exhaustive over all cover orders up to fpf_search_bound(genus_max); ties
    broken by smaller N, then canonical_key.  Returns None when no
    fixed-point-free class exists in the range.
    """
    best: InstanceClass | None = None
    if genus_max < 2:
        return None
    for N in range(2, fpf_search_bound(genus_max) + 1):
        for cls in enumerate_order(N, genus_max=genus_max, fpf_only=True):
            if cls.genus > genus_max:
                continue
            key = (cls.genus, cls.hom.N, cls.canonical_key)
            if best is None or key < (best.genus, best.hom.N, best.canonical_key):
                best = cls
    return best


def fpf_prime_check(classes: list[InstanceClass]) -> bool:
    """True iff every fixed-point-free class has N with >= 3 distinct primes."""
    return all(
        distinct_prime_count(cls.hom.N) >= 3
        for cls in classes
        if cls.fixed_point_free
    )
