"""Enumeration of cover classes, checked against naive double counting."""

from __future__ import annotations

import math

from turncover.census import (
    admissible_signatures,
    distinct_prime_count,
    elements_of_order,
    enumerate_admissible,
    enumerate_order,
    equivalence_orbit,
    find_min_fpf,
    fpf_prime_check,
    fpf_search_bound,
)
from turncover.orbifold import (
    ValidationError,
    invariants,
    lcm_law_check,
    validate_hom,
    validate_signature,
)


def brute_order(a: int, N: int) -> int:
    k, acc = 1, a % N
    while acc != 0:
        acc = (acc + a) % N
        k += 1
    return k


def brute_raw_count(N: int) -> dict[tuple[int, int, int], int]:
    """Raw admissible triples per sorted signature, by full cube scan.

    A triple is counted under the signature (ord(a1), ord(a2), ord(a3))
    exactly when that order triple is already sorted, matching the ordered
    convention of the enumerator.
    """
    counts: dict[tuple[int, int, int], int] = {}
    for a1 in range(N):
        for a2 in range(N):
            a3 = (-a1 - a2) % N
            orders = (brute_order(a1, N), brute_order(a2, N), brute_order(a3, N))
            if list(orders) != sorted(orders):
                continue
            if any(p < 2 for p in orders):
                continue
            if sum(
                orders[1] * orders[2] * [1, 0, 0][i]
                + orders[0] * orders[2] * [0, 1, 0][i]
                + orders[0] * orders[1] * [0, 0, 1][i]
                for i in range(3)
            ) >= orders[0] * orders[1] * orders[2]:
                continue
            # surjectivity by saturation
            seen = {0}
            frontier = [0]
            while frontier:
                x = frontier.pop()
                for a in (a1, a2, a3):
                    y = (x + a) % N
                    if y not in seen:
                        seen.add(y)
                        frontier.append(y)
            if len(seen) != N:
                continue
            counts[orders] = counts.get(orders, 0) + 1
    return counts


def test_elements_of_order():
    assert elements_of_order(30, 15) == sorted(
        {2 * u % 30 for u in range(1, 16) if math.gcd(u, 15) == 1}
    ) or set(elements_of_order(30, 15)) == {
        2 * u % 30 for u in range(1, 16) if math.gcd(u, 15) == 1
    }
    for N in range(2, 40):
        for p in range(1, N + 1):
            elems = elements_of_order(N, p)
            assert all(brute_order(a, N) == p for a in elems)
            expected = [a for a in range(N) if brute_order(a, N) == p]
            assert sorted(elems) == expected


def test_smallest_orders():
    assert enumerate_admissible(4) == []
    five = enumerate_order(5)
    assert [(c.sig.orders, c.hom.residues, c.orbit_size, c.genus) for c in five] == [
        ((5, 5, 5), (1, 1, 3), 12, 2)
    ]
    classes = enumerate_order(7)
    assert len(classes) == 2
    assert [c.hom.residues for c in classes] == [(1, 1, 5), (1, 2, 4)]
    assert sorted(c.orbit_size for c in classes) == [12, 18]
    assert all(c.genus == 3 for c in classes)
    assert all(not c.fixed_point_free for c in classes)


def test_genus_two_class_present():
    classes = enumerate_admissible(10)
    keys = {c.canonical_key for c in classes}
    sig = validate_signature(2, 5, 10)
    orbit = equivalence_orbit(sig, 10, (5, 2, 3))
    assert (10, 2, 5, 10) + orbit[0] in keys
    match = [c for c in classes if c.canonical_key == (10, 2, 5, 10) + orbit[0]]
    assert match[0].genus == 2
    assert not match[0].fixed_point_free
    assert match[0].hom.residues == (5, 2, 3)


def test_order_30_class_present_and_fpf():
    sig = validate_signature(6, 10, 15)
    orbit = equivalence_orbit(sig, 30, (5, 27, 28))
    classes = enumerate_order(30)
    match = [c for c in classes if c.canonical_key == (30, 6, 10, 15) + orbit[0]]
    assert len(match) == 1
    assert match[0].genus == 11
    assert match[0].fixed_point_free
    # the canonical representative is equivalent to, not equal to, the input
    assert (5, 27, 28) in equivalence_orbit(sig, 30, match[0].hom.residues)


def test_count_consistency_against_cube_scan():
    """Sum of orbit sizes per order equals the raw triple count per order."""
    for N in range(2, 25):
        raw = brute_raw_count(N)
        classes = enumerate_order(N)
        by_sig: dict[tuple[int, int, int], int] = {}
        for c in classes:
            by_sig[c.sig.orders] = by_sig.get(c.sig.orders, 0) + c.orbit_size
        assert by_sig == raw, f"N={N}"


def test_enumeration_is_deterministic_and_valid():
    a = enumerate_admissible(40)
    b = enumerate_admissible(40)
    assert a == b
    keys = [c.canonical_key for c in a]
    assert len(keys) == len(set(keys))
    assert keys == sorted(keys)
    for c in a:
        validate_hom(c.sig, c.hom.N, *c.hom.residues)  # re-validate, must not raise
        inv = invariants(c.sig, c.hom)
        assert inv.genus == c.genus
        assert (inv.fixed_point_count == 0) == c.fixed_point_free


def test_lcm_law_holds_across_census():
    for c in enumerate_admissible(40):
        assert lcm_law_check(c.sig, c.hom), c.canonical_key


def test_admissible_signatures_filters():
    # (3, 4, 12) at N = 84 is hyperbolic but lcm(4, 12) = 12 < 84
    assert (3, 4, 12) not in admissible_signatures(84)
    assert (6, 10, 15) in admissible_signatures(30)
    assert (2, 5, 10) in admissible_signatures(10)
    # fpf filter removes triples with an order-N cone point
    assert (2, 5, 10) not in admissible_signatures(10, fpf_only=True)
    # genus filter: (2, 3, 7) at N = 42 has genus 1 + 42/84 ... = integer check
    sigs = admissible_signatures(42, genus_max=2)
    for s in sigs:
        sig = validate_signature(*s)
        area = 1 - sum(1.0 / p for p in s)
        assert 1 + 42 * area / 2 <= 2 + 1e-9


def test_fpf_search_bound_formula():
    assert fpf_search_bound(11) == 840
    assert fpf_search_bound(2) == 84


def test_find_min_fpf_small_genus_empty():
    assert find_min_fpf(4) is None


def test_fpf_prime_check():
    classes = enumerate_admissible(40)
    assert fpf_prime_check(classes)
    fpf = [c for c in classes if c.fixed_point_free]
    for c in fpf:
        assert distinct_prime_count(c.hom.N) >= 3


def test_distinct_prime_count():
    assert distinct_prime_count(30) == 3
    assert distinct_prime_count(84) == 3
    assert distinct_prime_count(64) == 1
    assert distinct_prime_count(7) == 1
    assert distinct_prime_count(210) == 4
