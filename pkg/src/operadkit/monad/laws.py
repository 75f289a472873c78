"""Monad laws, the flavor isomorphisms and algebra/action round trips."""

import itertools

from ..errors import ArityOverflow, ShapeMismatch
from ..operad import BasedFinSet, check_algebra
from ..report import AxiomReport
from .terms import ZERO, Carrier, FreeMonad, Term


def _try(report, law, witness, fn):
    try:
        ok = fn()
    except ArityOverflow:
        report.skip()
        return
    report.expect(ok, law, witness)


def check_monad_laws(flavor, O, X, max_arity=None, budget=None):
    """mu . C eta = id, mu . eta C = id and mu . C mu = mu . mu C, exhaustively."""
    M = FreeMonad(flavor, O, max_arity)
    X0, X1, X2, X3 = M.enumerate(X, 3, budget)
    report = AxiomReport(subject=f"monad {M.flavor} over {O.name}", horizon=M.max_arity)
    for t in X1.elements:
        _try(report, "left_unit", (t,), lambda: M.mu(M.eta(t, X1), X0) == t)
        _try(report, "right_unit", (t,),
             lambda: M.mu(M.fmap(lambda x: M.eta(x, X0), t, X1), X0) == t)
    for T in X3.elements:
        def assoc():
            outer = M.mu(M.mu(T, X1), X0)
            inner = M.mu(M.fmap(lambda tt: M.mu(tt, X0), T, X1), X0)
            return outer == inner
        _try(report, "associativity", (T,), assoc)
    report.notes.append(f"sizes {[len(c) for c in (X0, X1, X2, X3)]}")
    return report


def _fresh(existing, base):
    name = base
    while name in existing:
        name += "'"
    return name


def flavor_iso(which, O, X, max_arity=None, budget=None):
    """The identity on normal forms as a monadic isomorphism.

    ``u_plus``: reduced terms over X with a disjoint basepoint against
    plus_unbased terms over X.  ``t_plus``: reduced_under_s0 terms over
    S^0 v X against plus_smash terms over X.  Returns ``(bijection, report)``
    where the bijection maps plus-flavor terms to reduced-flavor terms.
    """
    if which == "u_plus":
        Xc = Carrier.of(X)
        base = tuple(x for x in Xc.elements)
        plus = _fresh(base, "+")
        R = FreeMonad("plus_unbased", O, max_arity)
        L = FreeMonad("reduced_based", O, max_arity)
        Rx = Carrier(base)
        Lx = Carrier(base + (plus,), plus)
        extra = plus
    elif which == "t_plus":
        Xc = Carrier.of(X)
        if Xc.zero is None:
            raise ShapeMismatch("t_plus needs a based carrier")
        one = _fresh(Xc.elements, "1")
        R = FreeMonad("plus_smash", O, max_arity)
        L = FreeMonad("reduced_under_s0", O, max_arity)
        Rx = Carrier(Xc.elements, Xc.zero)
        Lx = Carrier(Xc.elements + (one,), Xc.zero, one)
        extra = one
    else:
        raise ValueError("which must be u_plus or t_plus")

    report = AxiomReport(subject=f"flavor iso {which} over {O.name}", horizon=R.max_arity)
    R0, R1, R2 = R.enumerate(Rx, 2, budget)
    L0, L1 = L.enumerate(Lx, 1, budget)
    bijection = {t: t for t in R1.elements}
    left, right = set(R1.elements), set(L1.elements)
    for t in sorted(left - right):
        report.fail("surjective", (t,))
    for t in sorted(right - left):
        report.fail("injective", (t,))
    report.checked += len(left & right)

    for x in Rx.elements:
        report.expect(bijection.get(R.eta(x, R0)) == L.eta(x, L0), "eta", (x,))
    report.expect(L.eta(extra, L0) == bijection[R.unit_term()], "eta", (extra,))

    for tt in R2.elements:
        # the reduced side sees the unit term of the inner layer as its
        # special point and eliminates it
        def commutes():
            lhs = L.mu(L.normalize(tt, L1), L0)
            return lhs == bijection.get(R.mu(tt, R0))
        _try(report, "mu", (tt,), commutes)
    report.notes.append(f"|terms| = {len(R1)}")
    return bijection, report


def action_to_algebra(M, X, theta):
    """xi(c; x) = theta(c; x) on normal forms."""
    zero = Carrier.of(X).zero

    def xi(t):
        if t.op is None:
            return zero
        return theta(t.op, t.args)

    return xi


def algebra_to_action(M, X, xi):
    """theta(c; x) = xi of the normal form of (c; x)."""

    X = Carrier.of(X)

    def theta(c, xs):
        return xi(M.normalize(Term(c, tuple(xs)), X))

    return theta


def check_algebra_laws(M, chain, xi, report=None):
    """xi . eta = id and xi . mu = xi . C xi on the enumerated terms."""
    X0, X1, X2 = chain[:3]
    report = report or AxiomReport(subject=f"{M.flavor}-algebra", horizon=M.max_arity)
    for x in X0.elements:
        report.expect(xi(M.eta(x, X0)) == x, "algebra_unit", (x,))
    if M.smash:
        report.expect(xi(ZERO) == X0.zero, "algebra_zero", ())
    for tt in X2.elements:
        _try(report, "algebra_assoc", (tt,),
             lambda: xi(M.mu(tt, X0)) == xi(M.fmap(xi, tt, X0)))
    return report


def algebra_roundtrip(O, X, theta=None, xi=None, flavor="reduced_based", max_arity=None,
                      budget=None):
    """Operad actions and monad algebras determine each other.

    Give exactly one of ``theta(c, xs)`` or ``xi(term)`` (a callable or a
    dict on normal terms).  The report records failed round trips, failed
    algebra laws, and any disagreement between "the algebra laws hold" and
    "the operad-action laws hold".
    """
    if (theta is None) == (xi is None):
        raise ValueError("give exactly one of theta or xi")
    M = FreeMonad(flavor, O, max_arity)
    if M.flavor not in ("reduced_based", "plus_unbased"):
        raise ValueError("round trips are defined for reduced_based and plus_unbased")
    if isinstance(xi, dict):
        table = xi
        xi = lambda t: table[t]  # noqa: E731
    if isinstance(theta, dict):
        ttable = theta
        theta = lambda c, xs: ttable[(c, tuple(xs))]  # noqa: E731

    Xc = Carrier.of(X)
    if M.flavor == "plus_unbased":
        Xc = Carrier(Xc.elements)
    chain = M.enumerate(Xc, 2, budget)
    X0, X1 = chain[0], chain[1]
    report = AxiomReport(subject=f"round trip {M.flavor} over {O.name}", horizon=M.max_arity)

    if theta is not None:
        xi = action_to_algebra(M, X0, theta)
        back = algebra_to_action(M, X0, xi)
        for j in range(M.max_arity + 1):
            for c in O.elements(j):
                for xs in itertools.product(X0.elements, repeat=j):
                    report.expect(back(c, xs) == theta(c, xs), "action_roundtrip", (c, xs))
    else:
        theta = algebra_to_action(M, X0, xi)
        again = action_to_algebra(M, X0, theta)
        for t in X1.elements:
            report.expect(again(t) == xi(t), "algebra_roundtrip", (t,))

    round_trips = report.passed
    laws = check_algebra_laws(M, chain, xi)
    base = Xc.zero if M.flavor == "reduced_based" else theta(O.zero, ())
    if base not in X0.elements:
        action_ok = False
    else:
        action_ok = check_algebra(O, BasedFinSet(X0.elements, base), theta, budget).passed
    report.merge(laws)
    # theta is an action exactly when it is recovered from an algebra
    algebra_ok = laws.passed and round_trips
    report.expect(algebra_ok == action_ok, "equivalence", (algebra_ok, action_ok))
    return report
