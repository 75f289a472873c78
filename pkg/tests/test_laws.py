import pytest

from operadkit.fixtures import algebra_for, cyclic, find_monoid, left_zero, zero_monoids
from operadkit.monad.laws import algebra_roundtrip, check_algebra_laws, check_monad_laws, flavor_iso
from operadkit.monad.terms import Carrier, FreeMonad
from operadkit.operad import AssocOperad, CommOperad, parse_builtin, tabulate

CARRIERS = {
    "u+": Carrier(("a", "b")),
    "u": Carrier(("0", "a", "b"), "0"),
    "t+": Carrier(("0", "a"), "0"),
    "t": Carrier(("0", "1", "a"), "0", "1"),
}


@pytest.mark.parametrize("flavor", sorted(CARRIERS))
@pytest.mark.parametrize("name", ["comm", "assoc", "be:1"])
def test_monad_laws(name, flavor):
    arity = 2 if name == "be:1" else 3
    report = check_monad_laws(flavor, parse_builtin(name, arity), CARRIERS[flavor])
    assert report.failures == 0
    assert report.checked > 0


def test_broken_gamma_breaks_associativity():
    T = tabulate(AssocOperad(3))
    # normal forms of assoc only use identity permutations, so corrupt one of those
    bad = T.with_gamma_entry(((1, 2), ((1,), (1, 2))), (2, 1, 3))
    report = check_monad_laws("u+", bad, CARRIERS["u+"])
    assert report.failures > 0
    assert {w[0] for w in report.witnesses} == {"associativity"}


@pytest.mark.parametrize("which, X", [
    ("u_plus", Carrier(("a", "b"))),
    ("u_plus", Carrier(("+", "a"))),
    ("t_plus", Carrier(("0", "a"), "0")),
    ("t_plus", Carrier(("0", "1", "a"), "0")),
])
@pytest.mark.parametrize("name", ["comm", "assoc"])
def test_flavor_isomorphisms(name, which, X):
    bijection, report = flavor_iso(which, parse_builtin(name, 3), X)
    assert report.status == "pass"
    assert len(set(bijection.values())) == len(bijection)


def test_flavor_iso_rejects_unbased_smash():
    with pytest.raises(Exception):
        flavor_iso("t_plus", CommOperad(3), Carrier(("a",)))


@pytest.mark.parametrize("M", [cyclic(3), find_monoid("klein"), find_monoid("nil")],
                         ids=lambda M: M.name)
def test_commutative_monoids_round_trip(M):
    assert algebra_roundtrip(CommOperad(3), M.carrier, theta=M.theta).status == "pass"


def test_noncommutative_monoid():
    M = left_zero()
    assert algebra_roundtrip(AssocOperad(3), M.carrier, theta=M.theta).status == "pass"
    report = algebra_roundtrip(CommOperad(3), M.carrier, theta=M.theta)
    # the laws fail on both sides, and the two verdicts still agree
    assert report.failures > 0
    assert "equivalence" not in {w[0] for w in report.witnesses}


def test_round_trip_from_algebra_side():
    M = cyclic(2)
    C = FreeMonad("reduced_based", CommOperad(3))
    terms = C.enumerate(M.carrier, 1)[1].elements
    table = {t: M.xi(t) for t in terms}
    assert algebra_roundtrip(CommOperad(3), M.carrier, xi=table).status == "pass"
    with pytest.raises(ValueError):
        algebra_roundtrip(CommOperad(3), M.carrier)


@pytest.mark.parametrize("M", zero_monoids(), ids=lambda M: M.name)
@pytest.mark.parametrize("flavor", ["t+", "t"])
def test_zero_monoids_are_smash_algebras(M, flavor):
    X, xi = algebra_for(M, flavor)
    C = FreeMonad(flavor, AssocOperad(3))
    assert check_algebra_laws(C, C.enumerate(X, 2), xi).status == "pass"
