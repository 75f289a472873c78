"""Maps of monads along the two adjunctions relating the four flavors.

``plus``: (-)+ from plain sets to based sets, left adjoint to forgetting the
basepoint.  Monads C = plus_unbased upstairs and D = plus_smash downstairs;
D(X+) = (C X)+.

``s0``: S^0 v - from based sets to sets under S^0, left adjoint to
forgetting the point 1.  C = plus_smash without the arity-0 term, D =
reduced_under_s0; D(S^0 v X) = S^0 v C X.

Given the lax map beta: DF -> FC we build pullbacks and pushforwards of
algebras, the comparison delta: CU -> UD, the adjunction between algebra
categories, and the composite monads UDF for the reduced flavors.
"""

import itertools

from ..errors import ArityOverflow, UnsupportedAdjunction
from ..operad import OperadMorphism
from ..report import AxiomReport
from .laws import check_algebra_laws
from .terms import NONUNITAL, ZERO, Carrier, FreeMonad, Term


class Adjunction:
    name = ""
    lower = ""  # flavor of C
    upper = ""  # flavor of D
    reduced = ""  # flavor D' with U D' F equal to ``composite``
    composite = ""

    def __init__(self, O, max_arity=None):
        self.O = O
        self.C = FreeMonad(self.lower, O, max_arity)
        self.D = FreeMonad(self.upper, O, max_arity)

    # F on objects, the unit X -> UFX and the counit FUY -> Y
    def F(self, X):
        raise NotImplementedError

    def U(self, Y):
        raise NotImplementedError

    def unit(self, x):
        return x

    def counit(self, Y):
        raise NotImplementedError

    def F_map(self, f, X, FY):
        """F on a map f: X -> Y, as a function on FX."""
        new = self.added(X)
        target = self.added_in(FY)
        return lambda x: target if x == new else f(x)

    def beta(self, t, X):
        """beta_X: D F X -> F C X on one normal term.

        The point added to C X is the plain marker ("+" or "1"), which
        never collides with a term.
        """
        raise NotImplementedError

    def added(self, X):
        raise NotImplementedError

    def added_in(self, FY):
        raise NotImplementedError


def _fresh(existing, base):
    name = base
    while name in existing:
        name += "'"
    return name


class PlusAdjunction(Adjunction):
    name = "plus"
    lower = "plus_unbased"
    upper = "plus_smash"
    reduced = "reduced_based"
    composite = "plus_unbased"

    def F(self, X):
        X = Carrier.of(X)
        plus = _fresh(X.elements, "+")
        return Carrier(X.elements + (plus,), plus)

    def U(self, Y):
        return Carrier(Carrier.of(Y).elements)

    def added(self, X):
        return _fresh(Carrier.of(X).elements, "+")

    def added_in(self, FY):
        return FY.zero

    def forced_lower(self, X, UY):
        return {}

    def forced_upper(self, FX, Y):
        return {FX.zero: Y.zero}

    def counit(self, Y):
        Y = Carrier.of(Y)
        plus = _fresh(Y.elements, "+")
        return lambda y: Y.zero if y == plus else y

    def beta(self, t, X):
        if t.op is None:
            return "+"
        return self.C.normalize(t, Carrier.of(X))


class S0Adjunction(Adjunction):
    name = "s0"
    lower = NONUNITAL
    upper = "reduced_under_s0"
    reduced = "reduced_under_s0"
    composite = "plus_smash"

    def F(self, X):
        X = Carrier.of(X)
        one = _fresh(X.elements, "1")
        return Carrier(X.elements + (one,), X.zero, one)

    def U(self, Y):
        Y = Carrier.of(Y)
        return Carrier(Y.elements, Y.zero)

    def added(self, X):
        return _fresh(Carrier.of(X).elements, "1")

    def added_in(self, FY):
        return FY.one

    def forced_lower(self, X, UY):
        return {X.zero: UY.zero}

    def forced_upper(self, FX, Y):
        return {FX.zero: Y.zero, FX.one: Y.one}

    def counit(self, Y):
        Y = Carrier.of(Y)
        one = _fresh(Y.elements, "1")
        return lambda y: Y.one if y == one else y

    def beta(self, t, X):
        if t.op is None:
            return ZERO
        if not t.args:
            return "1"
        return self.C.normalize(t, Carrier.of(X))


ADJUNCTIONS = {"plus": PlusAdjunction, "s0": S0Adjunction}


def get_adjunction(name, O, max_arity=None):
    try:
        return ADJUNCTIONS[name](O, max_arity)
    except KeyError:
        raise UnsupportedAdjunction(
            f"only {sorted(ADJUNCTIONS)} are supported, not {name!r}"
        ) from None


def _attempt(report, law, witness, fn):
    try:
        ok = fn()
    except ArityOverflow:
        report.skip()
        return
    report.expect(ok, law, witness)


def check_beta(adj, X):
    """beta is a bijection DFX -> FCX compatible with units and products."""
    C, D = adj.C, adj.D
    X = Carrier.of(X)
    FX = adj.F(X)
    report = AxiomReport(subject=f"beta for {adj.name} over {adj.O.name}", horizon=C.max_arity)
    DF0, DF1, DF2 = D.enumerate(FX, 2)
    CX = C.enumerate(X, 1)[1]
    FCX = adj.F(CX)
    image = {t: adj.beta(t, X) for t in DF1.elements}
    values = set(image.values())
    for y in FCX.elements:
        report.expect(y in values, "beta_onto", (y,))
    report.expect(len(values) == len(image), "beta_injective", (len(values), len(image)))

    Fx_eta = adj.F_map(lambda x: C.eta(x, X), X, FCX)
    for x in FX.elements:
        report.expect(image[D.eta(x, DF0)] == Fx_eta(x), "beta_unit", (x,))

    # beta . mu_D F = F mu_C . beta_C . D beta on D D F X
    CCX = C.enumerate(X, 2)[2]
    Fmu = adj.F_map(lambda tt: C.mu(tt, X), CCX, FCX)
    for T in DF2.elements:
        def square():
            left = image[D.mu(T, DF0)]
            Dbeta = D.fmap(lambda t: image[t], T, FCX)
            return left == Fmu(adj.beta(Dbeta, CX))
        _attempt(report, "beta_mu", (T,), square)
    return report


def alpha_from_morphism(f: OperadMorphism, flavor, max_arity=None):
    """The map of monads (c; x) -> (f(c); x) induced by an operad morphism."""
    S = FreeMonad(flavor, f.source, max_arity)
    T = FreeMonad(flavor, f.target, max_arity)

    def alpha(t, X):
        if t.op is None:
            return ZERO
        return T.normalize(Term(f(t.op), t.args), X)

    return S, T, alpha


def check_monad_morphism(f: OperadMorphism, flavor, X, max_arity=None):
    """alpha . eta = eta' and alpha . mu = mu' . alpha alpha on enumerated terms."""
    S, T, alpha = alpha_from_morphism(f, flavor, max_arity)
    X = Carrier.of(X)
    S0, S1, S2 = S.enumerate(X, 2)
    T1 = T.enumerate(X, 1)[1]
    report = AxiomReport(subject=f"monad map {f.name} ({S.flavor})", horizon=S.max_arity)
    for x in X.elements:
        report.expect(alpha(S.eta(x, X), X) == T.eta(x, X), "alpha_unit", (x,))
    for tt in S2.elements:
        def square():
            left = alpha(S.mu(tt, X), X)
            inner = S.fmap(lambda t: alpha(t, X), tt, T1)
            right = T.mu(alpha(inner, T1), X)
            return left == right
        _attempt(report, "alpha_mu", (tt,), square)
    return report


def pullback(f: OperadMorphism, flavor, Y, xi, max_arity=None):
    """Pull a target-operad algebra (Y, xi) back along alpha.

    Returns ``(xi . alpha, report)``; the report holds the monad-map laws and
    the algebra laws of the result.
    """
    S, T, alpha = alpha_from_morphism(f, flavor, max_arity)
    Y = Carrier.of(Y)
    report = check_monad_morphism(f, flavor, Y, max_arity)

    def pulled(t):
        return xi(alpha(t, Y))

    check_algebra_laws(S, S.enumerate(Y, 2), pulled, report)
    report.subject = f"pullback along {f.name}"
    return pulled, report


def pushforward(adj, X, xi):
    """(FX, F xi . beta) for a C-algebra (X, xi); returns the D-structure and its report."""
    X = Carrier.of(X)
    FX = adj.F(X)
    Fxi = adj.F_map(xi, adj.C.enumerate(X, 1)[1], FX)

    def pushed(t):
        return Fxi(adj.beta(t, X))

    report = check_algebra_laws(adj.D, adj.D.enumerate(FX, 2), pushed)
    report.subject = f"pushforward along {adj.name}"
    return FX, pushed, report


def delta(adj, Y):
    """delta: C U Y -> U D Y, built as C U -> U F C U -> U D F U -> U D.

    Returns ``(table, report)``; the report compares the composite against
    the direct formula (c; y) -> normal form of (c; y) in D.
    """
    C, D = adj.C, adj.D
    Y = Carrier.of(Y)
    UY = adj.U(Y)
    FUY = adj.F(UY)
    CUY = C.enumerate(UY, 1)[1]
    DFUY = D.enumerate(FUY, 1)[1]
    inverse = {}
    for t in DFUY.elements:
        inverse[adj.beta(t, UY)] = t
    eps = adj.counit(Y)
    report = AxiomReport(subject=f"delta for {adj.name} over {adj.O.name}", horizon=C.max_arity)
    table = {}
    for t in CUY.elements:
        lifted = inverse[adj.unit(t)]
        table[t] = D.fmap(eps, lifted, Y)
        direct = D.normalize(t, Y) if t.op is not None else ZERO
        report.expect(table[t] == direct, "delta", (t,))
    return table, report


def adjunction_check(adj, X, xi_x, Y, xi_y):
    """Count D-algebra maps FX -> Y and C-algebra maps X -> UY.

    FX carries the pushforward structure and UY the pullback along delta.
    The report checks that restriction along the unit is a bijection between
    the two hom-sets, and that it commutes with composing by D-algebra
    endomorphisms of Y.  Returns ``({"lower": n, "upper": m}, report)``.
    """
    C, D = adj.C, adj.D
    X, Y = Carrier.of(X), Carrier.of(Y)
    report = AxiomReport(subject=f"adjunction {adj.name} over {adj.O.name}", horizon=C.max_arity)
    FX, xi_fx, push_report = pushforward(adj, X, xi_x)
    report.merge(push_report)
    dtable, dreport = delta(adj, Y)
    report.merge(dreport)
    UY = adj.U(Y)

    def xi_uy(t):
        return xi_y(dtable[t])

    CX = C.enumerate(X, 1)[1]
    DFX = D.enumerate(FX, 1)[1]
    DY = D.enumerate(Y, 1)[1]

    def c_map(g):
        return all(g(xi_x(t)) == xi_uy(C.fmap(g, t, UY)) for t in CX.elements)

    def d_map(h, terms, xi_src):
        return all(h(xi_src(T)) == xi_y(D.fmap(h, T, Y)) for T in terms.elements)

    lower = [g for g in _maps(X, UY, adj.forced_lower(X, UY)) if c_map(g.__getitem__)]
    upper = [h for h in _maps(FX, Y, adj.forced_upper(FX, Y)) if d_map(h.__getitem__, DFX, xi_fx)]
    endos = [k for k in _maps(Y, Y, adj.forced_upper(Y, Y)) if d_map(k.__getitem__, DY, xi_y)]

    def restrict(h):
        return tuple(h[x] for x in X.elements)

    lows = {tuple(g[x] for x in X.elements) for g in lower}
    ups = {restrict(h) for h in upper}
    report.expect(len(lower) == len(upper), "cardinality", (len(lower), len(upper)))
    report.expect(lows == ups, "restriction_bijection", (len(lower), len(upper)))
    for h in upper:
        for k in endos:
            moved = tuple(k[y] for y in restrict(h))
            report.expect(moved in lows, "natural", (restrict(h), tuple(sorted(k.items(), key=repr))))
    report.notes.append(f"C-alg(X, UY) = {len(lower)}, D-alg(FX, Y) = {len(upper)}")
    return {"lower": len(lower), "upper": len(upper)}, report


def _maps(A, B, forced):
    free = [a for a in A.elements if a not in forced]
    for images in itertools.product(B.elements, repeat=len(free)):
        table = dict(zip(free, images))
        table.update(forced)
        yield table


def left_adjoint_square(adj, X):
    """The composite monad U D' F, with D' the reduced flavor, against the
    directly defined plus flavor on X.

    Returns the bijection (identity on normal forms) and a report comparing
    carriers, units and products.
    """
    O = adj.O
    Dr = FreeMonad(adj.reduced, O, adj.C.max_arity)
    E = FreeMonad(adj.composite, O, adj.C.max_arity)
    X = Carrier.of(X)
    if adj.name == "plus":
        X = Carrier(X.elements)
    FX = adj.F(X)
    E0, E1, E2 = E.enumerate(X, 2)
    D0, D1 = Dr.enumerate(FX, 1)
    report = AxiomReport(subject=f"left adjoint square {adj.name} over {O.name}",
                         horizon=E.max_arity)
    bijection = {t: t for t in E1.elements}
    report.expect(set(E1.elements) == set(D1.elements), "carrier", (len(E1), len(D1)))
    for x in X.elements:
        report.expect(Dr.eta(adj.unit(x), FX) == E.eta(x, X), "eta", (x,))
    eps = adj.counit(D1)
    for tt in E2.elements:
        def square():
            # D' applied to the counit F U D'F X -> D'F X, then mu of D'
            collapsed = Dr.fmap(eps, tt, D1) if tt.op is not None else ZERO
            return Dr.mu(collapsed, FX) == bijection.get(E.mu(tt, X))
        _attempt(report, "mu", (tt,), square)
    return bijection, report


def monad_map_tools(kind, **kw):
    """Dispatch to pullback, pushforward, delta or adjunction_check.

    Returns ``(result, report)`` in every case.
    """
    if kind == "pullback":
        return pullback(**kw)
    if kind == "pushforward":
        FX, pushed, report = pushforward(**kw)
        return (FX, pushed), report
    if kind == "delta":
        return delta(**kw)
    if kind == "adjunction_check":
        return adjunction_check(**kw)
    raise UnsupportedAdjunction(f"unknown monad-map tool {kind!r}")
