"""The interchange G+ C -> C G+ for an operad pair, and the check that C
restricts to a monad on G+-algebras.

C is the reduced_based monad of the additive operad on spaces based at 0;
G+ is the plus_smash monad of the multiplicative operad, so that 0 is a
strict zero and the arity-0 term plays the role of 1.
"""

import itertools

from .. import perm as P
from ..errors import ArityOverflow
from ..operad import lex_sequences
from ..pair import induced_xi
from ..report import AxiomReport
from .terms import Carrier, FreeMonad, Term


class Interchange:
    def __init__(self, pa, max_arity=None):
        self.pa = pa
        self.C = FreeMonad("reduced_based", pa.C, max_arity)
        self.G = FreeMonad("plus_smash", pa.G, max_arity)

    def raw(self, g, inner, X, GX):
        """Image of the (not necessarily normal) term (g; inner) over CX."""
        C, G = self.C, self.G
        cs = tuple(t.op for t in inner)
        head = self.pa(g, cs)
        ys = [t.args for t in inner]
        tail = tuple(
            G.normalize(Term(g, tuple(y[q - 1] for y, q in zip(ys, Q))), X)
            for Q in lex_sequences([len(y) for y in ys])
        )
        return C.normalize(Term(head, tail), GX)

    def __call__(self, T, X, GX):
        """G+ C X -> C G+ X on a normal term; ``GX`` is the carrier G+ X."""
        if T.op is None:
            return self.C.unit_term()
        return self.raw(T.op, T.args, X, GX)

    def carriers(self, X, budget=None):
        X = Carrier.of(X)
        CX = self.C.enumerate(X, 1, budget)[1]
        GX = self.G.enumerate(X, 1, budget)[1]
        GCX = self.G.enumerate(CX, 1, budget)[1]
        return X, CX, GX, GCX

    def induced(self, xi, X, GX):
        """The G+-structure C(xi) . interchange on CX."""
        C = self.C

        def xi_hat(u):
            if u.op is None:
                return X.zero
            return xi(u.op, u.args)

        def xi_cx(T):
            return C.fmap(xi_hat, self(T, X, GX), X)

        return xi_cx


def interchange(pa, X, max_arity=None, xi=None, maps=(), budget=None):
    """Build the interchange map on G+ C X and check it.

    The report covers: independence of the orbit representative, agreement
    of C(xi) . interchange with :func:`operadkit.pair.induced_xi` (when
    ``xi`` is given), and naturality along each based map ``(f, Y)`` in
    ``maps``.  Overflowing product arities are counted as unchecked.
    """
    I = Interchange(pa, max_arity)
    X, CX, GX, GCX = I.carriers(X, budget)
    report = AxiomReport(subject=f"interchange over {pa.name}", horizon=I.C.max_arity)

    def attempt(law, witness, fn):
        try:
            ok = fn()
        except ArityOverflow:
            report.skip()
            return
        report.expect(ok, law, witness)

    table = {}
    for T in GCX.elements:
        try:
            table[T] = I(T, X, GX)
        except ArityOverflow:
            pass

    for T in GCX.elements:
        if T.op is None or T not in table:
            report.skip()
            continue
        out = table[T]
        for s in P.all_perms(len(T.args)):
            gs = pa.G.act(T.op, s)
            moved = P.act_on_tuple(P.inverse(s), T.args)
            for choice in itertools.product(*(_inner_orbit(I.C, t) for t in moved)):
                attempt("well_defined", (T, s, choice), lambda: I.raw(gs, choice, X, GX) == out)

    if xi is not None:
        xi_cx = I.induced(xi, X, GX)
        for T in GCX.elements:
            if T.op is None:
                continue

            def agrees():
                c, y = induced_xi(pa, T.op, [(t.op, t.args) for t in T.args], xi)
                return xi_cx(T) == I.C.normalize(Term(c, y), X)

            attempt("induced_xi", (T,), agrees)

    for f, Y in maps:
        Y = Carrier.of(Y)
        _, CY, GY, _ = I.carriers(Y, budget)
        for T in GCX.elements:
            def natural():
                left = I(I.G.fmap(lambda t: I.C.fmap(f, t, Y), T, CY), Y, GY)
                right = I.C.fmap(lambda u: I.G.fmap(f, u, Y), table[T], GY)
                return left == right

            if T in table:
                attempt("natural", (T, tuple((x, f(x)) for x in X.elements)), natural)
            else:
                report.skip()
    return table, report


def _inner_orbit(M, t):
    return [Term(M.O.act(t.op, s), P.act_on_tuple(P.inverse(s), t.args))
            for s in P.all_perms(len(t.args))]


def based_maps(X, Y):
    """All maps X -> Y sending 0 to 0, as (function, Y) pairs."""
    X, Y = Carrier.of(X), Carrier.of(Y)
    rest = [x for x in X.elements if x != X.zero]
    for images in itertools.product(Y.elements, repeat=len(rest)):
        table = dict(zip(rest, images))
        table[X.zero] = Y.zero
        yield table.__getitem__, Y


def restriction_check(pa, samples, max_arity=None, budget=None):
    """C restricts to a monad on G+-algebras.

    For each ring-space candidate ``(X, theta, xi)``: CX carries
    xi_CX = C(xi) . interchange, and we check that eta: X -> CX and
    mu: CCX -> CX are maps of G+-algebras, that xi_CX is unital, that xi
    has 0 as a strict zero, and that
    theta: CX -> X is a map of G+-algebras (the distributivity diagram).
    """
    I = Interchange(pa, max_arity)
    C, G = I.C, I.G
    report = AxiomReport(subject=f"restriction over {pa.name}", horizon=C.max_arity)

    def attempt(law, witness, fn):
        try:
            ok = fn()
        except ArityOverflow:
            report.skip()
            return
        report.expect(ok, law, witness)

    for cand in samples:
        X = Carrier(tuple(cand.X.elements), cand.X.zero)
        X, CX, GX, GCX = I.carriers(X, budget)
        X0, _, CCX = C.enumerate(X, 2, budget)
        GCX_of_CX = G.enumerate(CX, 1, budget)[1]  # G+ applied to CX as a carrier
        GCCX = G.enumerate(CCX, 1, budget)[1]
        xi_cx = I.induced(cand.xi, X, GX)

        def xi_hat(u):
            return X.zero if u.op is None else cand.xi(u.op, u.args)

        def theta_hat(t):
            return cand.theta(t.op, t.args)

        name = cand.name
        # a G+-algebra has 0 as a strict zero
        for k in range(1, G.max_arity + 1):
            for g in pa.G.elements(k):
                for y in itertools.product(X.elements, repeat=k):
                    if X.zero in y:
                        report.expect(cand.xi(g, y) == X.zero, "strict_zero", (name, g, y))
        for t in CX.elements:
            attempt("induced_unit", (name, t), lambda: xi_cx(G.eta(t, CX)) == t)
        for u in GX.elements:
            attempt("eta_g_map", (name, u),
                    lambda: C.eta(xi_hat(u), X) == xi_cx(G.fmap(lambda x: C.eta(x, X), u, CX)))
        for T in GCX.elements:
            attempt("theta_g_map", (name, T),
                    lambda: theta_hat(xi_cx(T)) == xi_hat(G.fmap(theta_hat, T, X)))
        # the G+-structure on CCX induced from the one on CX
        GCX_carrier = G.next_carrier(GCX_of_CX.elements)
        for T in GCCX.elements:
            def mu_is_map():
                inter = I(T, CX, GCX_carrier)
                xi_ccx = C.fmap(xi_cx, inter, CX)
                return C.mu(xi_ccx, X) == xi_cx(G.fmap(lambda tt: C.mu(tt, X), T, CX))

            attempt("mu_g_map", (name, T), mu_is_map)
    return report
