import pytest

from operadkit.fixtures import find_rig
from operadkit.monad.interchange import Interchange, based_maps, interchange, restriction_check
from operadkit.monad.terms import Carrier, Term
from operadkit.operad import UnderS0FinSet
from operadkit.pair import nn_pair, rig_candidate


def _candidate(R):
    X = UnderS0FinSet(R.elements, R.zero, R.one)
    return rig_candidate(X, R.add, R.mul, R.name)


def test_worked_example():
    pa = nn_pair(3)
    I = Interchange(pa)
    X = Carrier(("0", "a", "b"), "0")
    X, CX, GX, GCX = I.carriers(X)
    T = Term(("*", 2), (Term(("*", 2), ("a", "b")), Term(("*", 1), ("a",))))
    # lex order over (1..2) x (1): (a, a), (b, a); the G-terms are then sorted by C
    expected = Term(("*", 2), (Term(("*", 2), ("a", "a")), Term(("*", 2), ("a", "b"))))
    assert I(T, X, GX) == expected


def test_multiplicative_unit_goes_to_eta_of_unit():
    I = Interchange(nn_pair(3))
    X, CX, GX, GCX = I.carriers(Carrier(("0", "a"), "0"))
    one = I.G.unit_term()
    assert I(one, X, GX) == I.C.eta(one, GX)


@pytest.mark.parametrize("rig", ["boolean", "Z/2", "Z/3"])
def test_interchange_laws(rig):
    cand = _candidate(find_rig(rig))
    X = Carrier(tuple(cand.X.elements), cand.X.zero)
    table, report = interchange(nn_pair(3), X, xi=cand.xi)
    assert report.failures == 0
    assert report.checked > 0
    assert table


def test_naturality_along_every_based_map():
    X = Carrier((0, 1), 0)
    Y = Carrier((0, 1, 2), 0)
    maps = list(based_maps(X, Y))
    assert len(maps) == 3
    _, report = interchange(nn_pair(3), X, maps=maps)
    assert report.failures == 0


@pytest.mark.parametrize("rig", ["boolean", "Z/2", "capped"])
def test_restriction_passes_on_rigs(rig):
    report = restriction_check(nn_pair(3), [_candidate(find_rig(rig))])
    assert report.failures == 0
    assert report.status in ("pass", "partial")


def test_restriction_catches_nondistributive_candidate():
    X = UnderS0FinSet((0, 1), 0, 1)
    xor = {(a, b): a ^ b for a in (0, 1) for b in (0, 1)}
    orr = {(a, b): a | b for a in (0, 1) for b in (0, 1)}
    report = restriction_check(nn_pair(3), [rig_candidate(X, xor, orr, "xor/or")])
    assert report.failures > 0
    assert "strict_zero" in {w[0] for w in report.witnesses}
