import itertools

import pytest

from operadkit.errors import UnsupportedAdjunction
from operadkit.fixtures import commutative_monoids, monoids, semigroups_with_zero, zero_monoids
from operadkit.monad.laws import flavor_iso
from operadkit.monad.maps import (
    adjunction_check,
    check_beta,
    check_monad_morphism,
    delta,
    get_adjunction,
    left_adjoint_square,
    monad_map_tools,
    pullback,
)
from operadkit.monad.terms import Carrier
from operadkit.operad import AssocOperad, CommOperad, identity_morphism, to_comm


def _homs(X, Y, unital, zero):
    """Oracle: multiplicative maps X -> Y from the multiplication tables."""
    count = 0
    for images in itertools.product(Y.elements, repeat=len(X.elements)):
        f = dict(zip(X.elements, images))
        if unital and f[X.unit] != Y.unit:
            continue
        if zero and f[X.zero] != Y.zero:
            continue
        if all(f[X.mul(a, b)] == Y.mul(f[a], f[b]) for a in X.elements for b in X.elements):
            count += 1
    return count


SMALL = [M for M in monoids() if len(M.elements) <= 3]


@pytest.mark.parametrize("X", SMALL, ids=lambda M: M.name)
def test_plus_adjunction_counts_monoid_maps(X):
    O = AssocOperad(3) if not X.commutative else CommOperad(3)
    adj = get_adjunction("plus", O)
    for Y in zero_monoids()[:3]:
        counts, report = adjunction_check(adj, Carrier(X.elements), X.xi,
                                          Carrier(Y.elements, Y.zero), Y.xi)
        assert report.status == "pass"
        assert counts["lower"] == counts["upper"] == _homs(X, Y, unital=True, zero=False)


@pytest.mark.parametrize("X", semigroups_with_zero(), ids=lambda M: M.name)
def test_s0_adjunction_counts_semigroup_maps(X):
    adj = get_adjunction("s0", CommOperad(3))
    for Y in zero_monoids():
        counts, report = adjunction_check(adj, Carrier(X.elements, X.zero), X.xi, Y.carrier, Y.xi)
        assert report.status == "pass"
        assert counts["lower"] == counts["upper"] == _homs(X, Y, unital=False, zero=True)


@pytest.mark.parametrize("kind", ["plus", "s0"])
@pytest.mark.parametrize("O", [CommOperad(3), AssocOperad(3)], ids=lambda O: O.name)
def test_beta_and_delta(kind, O):
    adj = get_adjunction(kind, O)
    X = Carrier(("0", "a"), "0") if kind == "s0" else Carrier(("a", "b"))
    assert check_beta(adj, X).status == "pass"
    Y = zero_monoids()[1]
    table, report = delta(adj, Y.carrier if kind == "s0" else Carrier(Y.elements, Y.zero))
    assert report.status == "pass"
    assert table


def test_left_adjoint_squares_match_flavor_isos():
    O = AssocOperad(3)
    square, report = left_adjoint_square(get_adjunction("plus", O), Carrier(("a", "b")))
    iso, _ = flavor_iso("u_plus", O, Carrier(("a", "b")))
    assert report.status == "pass"
    assert square == iso
    square, report = left_adjoint_square(get_adjunction("s0", O), Carrier(("0", "a"), "0"))
    iso, _ = flavor_iso("t_plus", O, Carrier(("0", "a"), "0"))
    assert report.status == "pass"
    assert square == iso


@pytest.mark.parametrize("flavor", ["u+", "u", "t+"])
def test_morphisms_give_monad_maps(flavor):
    X = Carrier(("0", "a"), "0") if flavor != "u+" else Carrier(("a", "b"))
    assert check_monad_morphism(to_comm(AssocOperad(3)), flavor, X).status == "pass"
    assert check_monad_morphism(identity_morphism(CommOperad(3)), flavor, X).status == "pass"


@pytest.mark.parametrize("M", commutative_monoids()[:6], ids=lambda M: M.name)
def test_pullback_to_assoc(M):
    pulled, report = pullback(to_comm(AssocOperad(3)), "reduced_based", M.carrier, M.xi)
    assert report.status == "pass"


def test_pullback_reports_a_broken_algebra():
    X = Carrier(("0", "a"), "0")
    once = lambda t: "a" if t.args.count("a") == 1 else "0"  # noqa: E731
    _, report = pullback(to_comm(AssocOperad(3)), "reduced_based", X, once)
    assert report.failures > 0
    assert {w[0] for w in report.witnesses} == {"algebra_assoc"}


def test_dispatch():
    with pytest.raises(UnsupportedAdjunction):
        get_adjunction("dold-kan", CommOperad(3))
    with pytest.raises(UnsupportedAdjunction):
        monad_map_tools("nope")
    M = commutative_monoids()[1]
    _, report = monad_map_tools("pullback", f=to_comm(AssocOperad(3)), flavor="u",
                                Y=M.carrier, xi=M.xi)
    assert report.status == "pass"
