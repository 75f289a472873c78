import itertools
import math
import random

import pytest
from hypothesis import given, settings, strategies as st

from operadkit import perm as P
from operadkit.errors import EnumerationBudget, ShapeMismatch
from operadkit.monad.terms import (
    ZERO,
    Carrier,
    FreeMonad,
    Term,
    flavor_name,
    format_term,
    free_enumerate,
    parse_term,
)
from operadkit.operad import AssocOperad, CommOperad, parse_builtin
from operadkit.schema import label


def _classes(O, X, flavor, A):
    """Oracle: count classes of raw terms under the generating relations by union-find."""
    flavor = flavor_name(flavor)
    raw = [(c, ys) for k in range(A + 1) for c in O.elements(k)
           for ys in itertools.product(X.elements, repeat=k)]
    parent = {t: t for t in raw}

    def find(t):
        while parent[t] != t:
            parent[t] = parent[parent[t]]
            t = parent[t]
        return t

    def union(a, b):
        parent[find(a)] = find(b)

    zero_hit = []
    for c, ys in raw:
        k = len(ys)
        if flavor in ("plus_smash", "reduced_under_s0") and X.zero in ys:
            zero_hit.append((c, ys))
            continue
        for s in P.all_perms(k):
            union((O.act(c, s), ys), (c, P.act_on_tuple(s, ys)))
        drop = {"reduced_based": X.zero, "reduced_under_s0": X.one}.get(flavor)
        for i, y in enumerate(ys):
            if drop is not None and y == drop:
                union((c, ys), (O.degeneracy(c, i + 1), ys[:i] + ys[i + 1:]))
    roots = {find(t) for t in raw if t not in set(zero_hit)}
    return len(roots) + (1 if flavor in ("plus_smash", "reduced_under_s0") else 0)


def _multisets(n, A):
    return sum(math.comb(n + k - 1, k) for k in range(A + 1))


@pytest.mark.parametrize("flavor, carrier, expected", [
    ("u+", Carrier(("a", "b")), _multisets(2, 3)),
    ("u+", Carrier(("a", "b", "c")), _multisets(3, 3)),
    ("u", Carrier(("0", "a", "b"), "0"), _multisets(2, 3)),
    ("t+", Carrier(("0", "a", "b"), "0"), 1 + _multisets(2, 3)),
    ("t", Carrier(("0", "1", "a"), "0", "1"), 1 + _multisets(1, 3)),
])
def test_comm_counts_are_multisets(flavor, carrier, expected):
    terms = free_enumerate(flavor, CommOperad(3), carrier)
    assert len(terms) == expected == _classes(CommOperad(3), carrier, flavor, 3)


@pytest.mark.parametrize("flavor, carrier, words_from", [
    ("u+", Carrier(("a", "b")), 2),
    ("u", Carrier(("0", "a", "b"), "0"), 2),
    ("t+", Carrier(("0", "a"), "0"), 1),
])
def test_assoc_counts_are_words(flavor, carrier, words_from):
    expected = sum(words_from ** k for k in range(4)) + (flavor == "t+")
    terms = free_enumerate(flavor, AssocOperad(3), carrier)
    assert len(terms) == expected == _classes(AssocOperad(3), carrier, flavor, 3)


@pytest.mark.parametrize("name", ["be:1", "endo:0,a", "product:assoc,comm"])
@pytest.mark.parametrize("flavor", ["u+", "u", "t+", "t"])
def test_counts_match_union_find_oracle(name, flavor):
    O = parse_builtin(name, 2)
    carrier = Carrier(("0", "1", "x"), "0", "1")
    if flavor in ("u", "t+"):
        carrier = Carrier(("0", "1", "x"), "0")
    elif flavor == "u+":
        carrier = Carrier(("0", "x"))
    assert len(free_enumerate(flavor, O, carrier, 2)) == _classes(O, carrier, flavor, 2)


def test_free_example():
    terms = free_enumerate("u+", CommOperad(3), Carrier(("a", "b")))
    assert len(terms) == 10
    assert list(terms) == sorted(terms)
    assert Term(("*", 2), ("a", "b")) in terms


@settings(max_examples=25, deadline=None)
@given(st.data())
def test_normalize_is_independent_of_elimination_order(data):
    O = parse_builtin(data.draw(st.sampled_from(["assoc", "be:1", "comm"])), 3)
    flavor = data.draw(st.sampled_from(["u", "t"]))
    X = Carrier(("0", "1", "a", "b"), "0", "1") if flavor == "t" else Carrier(("0", "a", "b"), "0")
    k = data.draw(st.integers(0, 3))
    c = data.draw(st.sampled_from(list(O.elements(k))))
    pool = [x for x in X.elements if flavor != "t" or x != "0"]
    ys = tuple(data.draw(st.sampled_from(pool)) for _ in range(k))
    M = FreeMonad(flavor, O)
    expected = M.normalize(Term(c, ys), X)
    seed = data.draw(st.integers(0, 2 ** 16))
    for trial in range(100):
        rng = random.Random(seed + trial)
        got = M.normalize(Term(c, ys), X, order=lambda n: rng.randrange(n))
        assert got == expected


@settings(max_examples=50, deadline=None)
@given(st.data())
def test_normal_forms_are_action_invariant(data):
    O = AssocOperad(3)
    M = FreeMonad("u+", O)
    X = Carrier(("a", "b", "c"))
    k = data.draw(st.integers(0, 3))
    c = data.draw(st.sampled_from(O.elements(k)))
    ys = tuple(data.draw(st.sampled_from(X.elements)) for _ in range(k))
    s = data.draw(st.sampled_from(P.all_perms(k)))
    assert M.normalize(Term(O.act(c, s), ys), X) == M.normalize(Term(c, P.act_on_tuple(s, ys)), X)


def test_smash_flavors_collapse_zero():
    M = FreeMonad("t+", CommOperad(3))
    X = Carrier(("0", "a"), "0")
    assert M.normalize(Term(("*", 2), ("a", "0")), X) is ZERO
    assert M.mu(Term(("*", 2), (ZERO, M.eta("a", X))), X) is ZERO


def test_flavor_carrier_validation():
    with pytest.raises(ShapeMismatch):
        FreeMonad("u", CommOperad(3)).enumerate(Carrier(("a",)))
    with pytest.raises(ShapeMismatch):
        FreeMonad("t", CommOperad(3)).enumerate(Carrier(("0", "a"), "0"))
    with pytest.raises(ValueError):
        flavor_name("nope")


def test_budget_is_enforced():
    with pytest.raises(EnumerationBudget):
        FreeMonad("u+", AssocOperad(3)).enumerate(Carrier(("a", "b", "c")), budget=5)


def _resolver(O, A):
    table = {label(c): c for k in range(A + 1) for c in O.elements(k)}
    return table.__getitem__


@pytest.mark.parametrize("name, flavor, X", [
    ("comm", "u+", Carrier(("a", "b"))),
    ("assoc", "t+", Carrier(("0", "a"), "0")),
    ("be:1", "u", Carrier(("0", "a"), "0")),
])
def test_parse_format_round_trip(name, flavor, X):
    O = parse_builtin(name, 2)
    M = FreeMonad(flavor, O)
    resolve = _resolver(O, 2)
    chain = M.enumerate(X, depth=2)
    for t in chain[1].elements + chain[2].elements:
        assert parse_term(format_term(t), resolve) == t


def test_parse_nested_example():
    resolve = _resolver(CommOperad(3), 3)
    t = parse_term("((*,2); ((*,1); a), b)", resolve)
    assert t == Term(("*", 2), (Term(("*", 1), ("a",)), "b"))
    assert parse_term("ZERO", resolve) is ZERO
    with pytest.raises(ValueError):
        parse_term("((*,2); a, b", resolve)
