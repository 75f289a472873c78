import itertools
from collections import Counter
from math import gcd

import pytest
from hypothesis import given, settings, strategies as st

from operadkit.completion import (
    boolean_monoid,
    boolean_rig,
    cyclic_group,
    find_isomorphism,
    group_catalog,
    group_completion,
    homomorphisms,
    localize_telescope,
    make_monoid,
    ring_catalog,
    ring_completion,
    totient,
    units,
    universal_property_check,
    zmod,
)
from operadkit.fixtures import capped_rig, truncated_rig


def _phi(n):
    # oracle: Euler's product over the prime divisors
    out, m, p = n, n, 2
    while p * p <= m:
        if m % p == 0:
            out -= out // p
            while m % p == 0:
                m //= p
        p += 1
    if m > 1:
        out -= out // m
    return out


def test_catalog_sizes():
    rings = Counter(len(R) for R in ring_catalog())
    assert [rings[n] for n in range(1, 9)] == [1, 1, 1, 4, 1, 1, 1, 10]
    groups = Counter(len(G) for G in group_catalog())
    assert [groups[n] for n in range(1, 9)] == [1, 1, 1, 2, 1, 1, 1, 3]


@pytest.mark.parametrize("catalog, kind", [(ring_catalog, "ring"), (group_catalog, "monoid")])
def test_catalog_entries_are_pairwise_non_isomorphic(catalog, kind):
    items = catalog()
    for A, B in itertools.combinations(items, 2):
        if len(A) == len(B):
            assert find_isomorphism(A, B, kind) is None, (A.name, B.name)


@pytest.mark.parametrize("n, m", [(2, 4), (4, 6), (6, 4), (3, 5), (8, 4)])
def test_hom_counts_between_cyclic_groups(n, m):
    assert len(homomorphisms(cyclic_group(n), cyclic_group(m), "monoid")) == gcd(n, m)


def test_hom_counts_against_brute_force():
    for A in group_catalog()[:6]:
        for B in group_catalog()[:6]:
            brute = 0
            for images in itertools.product(B.elements, repeat=len(A)):
                f = dict(zip(A.elements, images))
                if all(f[A.add[(x, y)]] == B.add[(f[x], f[y])] for x in A.elements for y in A.elements):
                    brute += 1
            assert len(homomorphisms(A, B, "monoid")) == brute


def test_group_completions():
    K, _ = group_completion(boolean_monoid())
    assert len(K) == 1
    for n in (1, 2, 5):
        K, eta = group_completion(cyclic_group(n))
        assert find_isomorphism(K, cyclic_group(n), "monoid") is not None
        assert len(set(eta.values())) == n
    # {0, 1, 2, 3} with 3 absorbing completes to the trivial group
    K, _ = group_completion(make_monoid(range(4), 0, lambda x, y: min(x + y, 3)))
    assert len(K) == 1


def test_group_completion_universal_property():
    for M in [boolean_monoid(), cyclic_group(4), make_monoid(range(3), 0, max)]:
        K, eta = group_completion(M)
        assert universal_property_check("group", M, K, eta).status == "pass"


def test_wrong_completion_fails_universal_property():
    M = cyclic_group(2)
    K = cyclic_group(4)
    bad = {0: 0, 1: 2}
    report = universal_property_check("group", M, K, bad)
    assert report.failures > 0


def test_ring_completions():
    assert len(ring_completion(boolean_rig())[0]) == 1
    assert len(ring_completion(capped_rig())[0]) == 1
    assert len(ring_completion(truncated_rig(3))[0]) == 1
    K, _ = ring_completion(zmod(6))
    assert find_isomorphism(K, zmod(6), "ring") is not None


@pytest.mark.parametrize("n", range(1, 13))
def test_units_of_zmod(n):
    GL, SL = units(zmod(n))
    assert len(GL) == totient(n) == _phi(n)
    assert SL == (zmod(n).one,)


@pytest.mark.parametrize("n, M, expected", [
    (6, [2], 3),
    (12, [2], 3),
    (12, [3], 4),
    (12, [2, 3], 1),
    (10, [5], 2),
    (8, [2], 1),
    (7, [3], 7),
])
def test_localizations(n, M, expected):
    tel = localize_telescope(zmod(n), M)
    assert find_isomorphism(tel.ring, zmod(expected), "ring") is not None
    assert universal_property_check("localization", zmod(n), tel.ring, tel.to_colimit,
                                    inverted=M).status == "pass"


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 12), st.lists(st.integers(1, 6), min_size=1, max_size=3))
def test_localization_is_idempotent(n, M):
    once = localize_telescope(zmod(n), M).ring
    twice = localize_telescope(once, M).ring
    assert find_isomorphism(once, twice, "ring") is not None


@pytest.mark.parametrize("n", [1, 4, 6, 9])
def test_inverting_one_changes_nothing(n):
    tel = localize_telescope(zmod(n), [1])
    assert tel.to_colimit == {x: x for x in range(n)}
    assert tel.stage == 0


def test_localization_input_checks():
    with pytest.raises(ValueError):
        localize_telescope(zmod(6), [])
    with pytest.raises(ValueError):
        localize_telescope(zmod(6), [0])
