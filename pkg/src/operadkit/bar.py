"""Truncated two-sided bar constructions B(Psi, C, X) over finite carriers.

Level n is the set of normal forms of Psi C^n X.  Faces: d_0 is the right
action rho at the outer layer, d_i (0 < i < n) is mu at layer i and d_n is
the algebra action xi at the innermost layer.  Degeneracies insert eta.
A layer with at most A nodes stays within A under all of these maps, so
the truncated levels are closed and every identity is checked literally.
"""

import itertools
from dataclasses import dataclass, field

from .errors import ArityOverflow
from .monad.maps import alpha_from_morphism, check_monad_morphism
from .monad.terms import Carrier, FreeMonad
from .order import order_key, sorted_by_key
from .report import AxiomReport


class UnionFind:
    """Union-find keeping the order_key-minimal element as representative."""

    def __init__(self, items=()):
        self.parent = {x: x for x in items}

    def add(self, x):
        self.parent.setdefault(x, x)

    def find(self, x):
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return
        if order_key(rb) < order_key(ra):
            ra, rb = rb, ra
        self.parent[rb] = ra

    def classes(self):
        groups = {}
        for x in self.parent:
            groups.setdefault(self.find(x), []).append(x)
        return sorted_by_key(tuple(sorted_by_key(g)) for g in groups.values())


def _points(M):
    # normalization only looks at the special points of a carrier
    return M.next_carrier(())


class RightModule:
    """Psi = a free-algebra monad over another operad, acting on the right
    on C through ``alpha``: rho = mu' . Psi alpha.  ``alpha=None`` means
    Psi is C itself and rho = mu."""

    def __init__(self, Psi: FreeMonad, C: FreeMonad, alpha=None, name="self"):
        self.Psi = Psi
        self.C = C
        self.alpha = alpha
        self.name = name

    def rho(self, T, Y):
        """Psi C Y -> Psi Y; ``Y`` is the carrier under the C layer."""
        if self.alpha is None:
            return self.Psi.mu(T, Y)
        moved = self.Psi.fmap(lambda t: self.alpha(t, Y), T, _points(self.Psi))
        return self.Psi.mu(moved, Y)

    def check(self, Y, budget=None):
        """rho . Psi eta = id and rho . rho C = rho . Psi mu on enumerated terms."""
        Psi, C = self.Psi, self.C
        Y = Carrier.of(Y)
        chain = C.enumerate(Y, 2, budget)
        report = AxiomReport(subject=f"right module {self.name}", horizon=Psi.max_arity)
        for T in Psi.layer(Y, 0, budget).elements:
            lifted = Psi.fmap(lambda y: C.eta(y, Y), T, _points(C))
            report.expect(self.rho(lifted, Y) == T, "module_unit", (T,))
        for T in Psi.layer(chain[2], 2, budget).elements:
            def assoc():
                left = self.rho(self.rho(T, chain[1]), Y)
                right = self.rho(Psi.fmap(lambda tt: C.mu(tt, Y), T, _points(C)), Y)
                return left == right
            _attempt(report, "module_assoc", (T,), assoc)
        return report


def _attempt(report, law, witness, fn):
    try:
        ok = fn()
    except ArityOverflow:
        report.skip()
        return
    report.expect(ok, law, witness)


def self_module(flavor, O, max_arity=None):
    C = FreeMonad(flavor, O, max_arity)
    return RightModule(C, C)


def right_module_from_morphism(f, flavor, X, max_arity=None, budget=None):
    """Psi = the monad of f's target, acting through the monad map of f.

    The report holds both monad-map squares on X and the module laws.
    """
    S, T, alpha = alpha_from_morphism(f, flavor, max_arity)
    module = RightModule(T, S, alpha, name=f.name)
    report = check_monad_morphism(f, flavor, X, max_arity)
    report.merge(module.check(X, budget))
    report.subject = f"right module along {f.name}"
    return module, report


@dataclass
class SimplicialTruncation:
    levels: list
    faces: dict = field(default_factory=dict)  # (n, i) -> {x: d_i x}
    degeneracies: dict = field(default_factory=dict)  # (n, i) -> {x: s_i x}
    horizon: int = 0

    @property
    def q(self):
        return len(self.levels) - 1

    @classmethod
    def constant(cls, S, q=2):
        S = tuple(sorted_by_key(S))
        ident = {x: x for x in S}
        st = cls([S] * (q + 1))
        for n in range(q + 1):
            for i in range(n + 1):
                if n:
                    st.faces[(n, i)] = dict(ident)
                if n < q:
                    st.degeneracies[(n, i)] = dict(ident)
        return st


class Bar:
    """B(Psi, C, X) with ``xi`` a C-algebra structure on X."""

    def __init__(self, module: RightModule, X, xi):
        self.module = module
        self.C = module.C
        self.Psi = module.Psi
        self.X = Carrier.of(X)
        self.xi = xi

    def _apply(self, depth, g, u):
        # apply g at ``depth`` layers below u (depth 0: u itself)
        if depth == 0:
            return g(u)
        return self.C.fmap(lambda v: self._apply(depth - 1, g, v), u, _points(self.C))

    def _under_psi(self, T, f, target):
        return self.Psi.fmap(f, T, target)

    def carrier(self, m):
        """Special points of C^m X as a carrier."""
        return self.X if m == 0 else _points(self.C)

    def face(self, n, i, T):
        C = self.C
        if i == 0:
            return self.module.rho(T, self.chain[n - 1])
        if i < n:
            # mu at layer i: u in C^n X, mu applied to C^{n-i+1} X pieces
            inner = self.chain[n - i - 1]

            def mu(v):
                return C.mu(v, inner)

            return self._under_psi(T, lambda u: self._apply(i - 1, mu, u), self.carrier(n - 1))
        # i == n: xi at the bottom layer
        if n == 1:
            return self.Psi.fmap(self.xi, T, self.X)
        return self._under_psi(T, lambda u: self._apply_xi(n - 1, u), self.carrier(n - 1))

    def _apply_xi(self, depth, u):
        if depth == 1:
            return self.C.fmap(self.xi, u, self.X)
        return self.C.fmap(lambda v: self._apply_xi(depth - 1, v), u, _points(self.C))

    def degeneracy(self, n, i, T):
        C = self.C
        inner = self.chain[n - i]

        def eta(v):
            return C.eta(v, inner)

        return self._under_psi(T, lambda u: self._apply(i, eta, u), self.carrier(n + 1))

    def extra(self, n, T):
        """The extra degeneracy eta at the outer layer (Psi = C only)."""
        return self.Psi.eta(T, self.carrier(n + 1))

    def build(self, q, budget=None):
        self.chain = self.C.enumerate(self.X, q, budget)
        levels = [tuple(self.Psi.layer(self.chain[n], n, budget).elements) for n in range(q + 1)]
        st = SimplicialTruncation(levels, horizon=self.C.max_arity)
        report = AxiomReport(subject=f"bar B({self.module.name}, {self.C.flavor}, X)",
                             horizon=self.C.max_arity)
        members = [set(L) for L in levels]
        for n in range(q + 1):
            for i in range(n + 1):
                if n:
                    st.faces[(n, i)] = self._table(report, levels[n], members[n - 1],
                                                   lambda T: self.face(n, i, T), ("face", n, i))
                if n < q:
                    st.degeneracies[(n, i)] = self._table(
                        report, levels[n], members[n + 1],
                        lambda T: self.degeneracy(n, i, T), ("degeneracy", n, i))
        return st, report

    def _table(self, report, source, target, fn, name):
        out = {}
        for T in source:
            try:
                v = fn(T)
            except ArityOverflow:
                report.skip()
                continue
            if report.expect(v in target, "closure", name + (T,)):
                out[T] = v
        return out


def bar_levels(module, X, xi, q=2, budget=None):
    """Build the truncation and check it; returns ``(st, report)``."""
    st, report = Bar(module, X, xi).build(q, budget)
    report.merge(simplicial_identities(st))
    return st, report


def _compose(*maps):
    def run(x):
        for m in reversed(maps):
            if m is None or x not in m:
                return None
            x = m[x]
        return x
    return run


def simplicial_identities(st: SimplicialTruncation):
    """All simplicial identities among the materialized faces and degeneracies."""
    d, s = st.faces, st.degeneracies
    report = AxiomReport(subject="simplicial identities", horizon=st.horizon)

    def same(law, n, x, lhs, rhs):
        a, b = lhs(x), rhs(x)
        if a is None or b is None:
            report.skip()
        else:
            report.expect(a == b, law, (n, x))

    for n in range(2, st.q + 1):
        for x in st.levels[n]:
            for j in range(n + 1):
                for i in range(j):
                    same(f"d{i}d{j}", n, x, _compose(d[(n - 1, i)], d[(n, j)]),
                         _compose(d[(n - 1, j - 1)], d[(n, i)]))
    for n in range(st.q):
        for x in st.levels[n]:
            for j in range(n + 1):
                for i in range(n + 2):
                    sj = s[(n, j)]
                    if i < j:
                        rhs = _compose(s[(n - 1, j - 1)], d[(n, i)])
                    elif i in (j, j + 1):
                        rhs = lambda y: y  # noqa: E731
                    else:
                        rhs = _compose(s[(n - 1, j)], d[(n, i - 1)])
                    same(f"d{i}s{j}", n, x, _compose(d[(n + 1, i)], sj), rhs)
    for n in range(st.q - 1):
        for x in st.levels[n]:
            for j in range(n + 1):
                for i in range(j + 1):
                    same(f"s{i}s{j}", n, x, _compose(s[(n + 1, i)], s[(n, j)]),
                         _compose(s[(n + 1, j + 1)], s[(n, i)]))
    return report


def augmentation_split_check(C: FreeMonad, X, xi, q=2, budget=None):
    """The split coequalizer CCX => CX -> X and the extra degeneracy of B(C, C, X)."""
    bar = Bar(RightModule(C, C), X, xi)
    st, report = bar.build(q, budget)
    report.subject = f"augmentation of B({C.flavor}, {C.O.name}, X)"
    report.merge(simplicial_identities(st))
    X0, X1, X2 = bar.chain[:3]
    for x in X0.elements:
        report.expect(xi(C.eta(x, X0)) == x, "xi_eta", (x,))
    for t in X1.elements:
        report.expect(C.mu(C.eta(t, X1), X0) == t, "mu_eta", (t,))
        report.expect(C.eta(xi(t), X0) == C.fmap(xi, C.eta(t, X1), X0), "split_square", (t,))
    for tt in X2.elements:
        _attempt(report, "augmentation", (tt,),
                 lambda: xi(C.mu(tt, X0)) == xi(C.fmap(xi, tt, X0)))

    # extra degeneracy s_{-1} = eta at the outer layer
    members = [set(L) for L in st.levels]
    extra = {}
    for n in range(q):
        extra[n] = {T: bar.extra(n, T) for T in st.levels[n]}
        for T, v in extra[n].items():
            report.expect(v in members[n + 1], "closure", ("extra", n, T))
    d, s = st.faces, st.degeneracies
    for n in range(q):
        for T in st.levels[n]:
            up = extra[n][T]
            report.expect(d[(n + 1, 0)].get(up) == T, "d0_extra", (n, T))
            if n == 0:
                report.expect(d[(1, 1)].get(up) == C.eta(xi(T), X0), "d1_extra", (n, T))
            for i in range(n + 1):
                if n == 0:
                    break
                lhs = d[(n + 1, i + 1)].get(up)
                low = d[(n, i)].get(T)
                rhs = extra[n - 1].get(low) if low is not None else None
                if lhs is None or rhs is None:
                    report.skip()
                else:
                    report.expect(lhs == rhs, f"d{i + 1}_extra", (n, T))
            if n + 1 < q:
                for j in range(n + 1):
                    lhs = s[(n + 1, j + 1)].get(up)
                    rhs = extra[n + 1].get(s[(n, j)].get(T))
                    report.expect(lhs is not None and lhs == rhs, f"s{j + 1}_extra", (n, T))
    return report


@dataclass
class Tensor:
    classes: list
    projection: dict

    def __len__(self):
        return len(self.classes)


def monadic_tensor(module: RightModule, X, xi, budget=None):
    """The coequalizer of rho and Psi xi: Psi C X => Psi X.

    Returns ``(Tensor, report)``; pairs leaving the truncation are skipped
    and counted as unchecked.
    """
    Psi, C = module.Psi, module.C
    X = Carrier.of(X)
    CX = C.enumerate(X, 1, budget)[1]
    PX = Psi.layer(X, 0, budget)
    PCX = Psi.layer(CX, 1, budget)
    uf = UnionFind(PX.elements)
    report = AxiomReport(subject=f"tensor {module.name}", horizon=Psi.max_arity)
    for T in PCX.elements:
        try:
            a = module.rho(T, X)
            b = Psi.fmap(xi, T, X)
        except ArityOverflow:
            report.skip()
            continue
        if a in uf.parent and b in uf.parent:
            uf.union(a, b)
            report.checked += 1
        else:
            report.skip()
    classes = uf.classes()
    projection = {x: cls[0] for cls in classes for x in cls}
    return Tensor(classes, projection), report


def tensor_iso_check(C: FreeMonad, algebras, budget=None):
    """C (x)_C X -> X, [t] -> xi(t), is a bijection natural in algebra maps.

    ``algebras`` is a list of ``(name, X, xi)``; naturality is checked along
    every algebra map between pairs of listed algebras.
    """
    report = AxiomReport(subject=f"tensor iso {C.flavor} over {C.O.name}", horizon=C.max_arity)
    module = RightModule(C, C)
    tensors = {}
    for name, X, xi in algebras:
        X = Carrier.of(X)
        tensor, tr = monadic_tensor(module, X, xi, budget)
        report.merge(tr)
        image = {}
        for cls in tensor.classes:
            values = {xi(t) for t in cls}
            report.expect(len(values) == 1, "well_defined", (name, cls[0]))
            image[cls[0]] = xi(cls[0])
        report.expect(sorted_by_key(image.values()) == sorted_by_key(X.elements), "bijection",
                      (name, len(tensor.classes), len(X.elements)))
        tensors[name] = (X, xi, tensor, image)
    for a, (X, xi_x, tx, phi_x) in tensors.items():
        for b, (Y, xi_y, ty, phi_y) in tensors.items():
            for f in algebra_maps(C, X, xi_x, Y, xi_y):
                for rep in phi_x:
                    moved = C.fmap(f.__getitem__, rep, Y)
                    target = ty.projection.get(moved)
                    if target is None:
                        report.skip()
                        continue
                    report.expect(phi_y[target] == f[phi_x[rep]], "natural", (a, b, rep))
    return report


def algebra_maps(C: FreeMonad, X, xi_x, Y, xi_y):
    """Basepoint-preserving maps f with f . xi_X = xi_Y . C f on CX."""
    X, Y = Carrier.of(X), Carrier.of(Y)
    CX = C.enumerate(X, 1)[1]
    rest = [x for x in X.elements if x != X.zero]
    out = []
    for images in itertools.product(Y.elements, repeat=len(rest)):
        f = dict(zip(rest, images))
        if X.zero is not None:
            f[X.zero] = Y.zero
        if all(f[xi_x(t)] == xi_y(C.fmap(f.__getitem__, t, Y)) for t in CX.elements):
            out.append(f)
    return out


def pi0_realization(st: SimplicialTruncation):
    """Level 0 modulo d_0 z ~ d_1 z for z in level 1, as sorted classes."""
    if st.q < 1:
        raise ValueError("need at least one level of 1-simplices")
    uf = UnionFind(st.levels[0])
    for z in st.levels[1]:
        a, b = st.faces[(1, 0)].get(z), st.faces[(1, 1)].get(z)
        if a is not None and b is not None:
            uf.union(a, b)
    return uf.classes()


def bar_map(f, flavor, X, xi, q=2, max_arity=None, budget=None):
    """B(alpha, id, id): B(S, S, X) -> B(T, S, X) for the monad map of ``f``.

    Checks that the level maps land in the target levels and commute with
    every face and degeneracy.
    """
    S, T, alpha = alpha_from_morphism(f, flavor, max_arity)
    source = Bar(RightModule(S, S), X, xi)
    target = Bar(RightModule(T, S, alpha, name=f.name), X, xi)
    st, report = source.build(q, budget)
    tt, treport = target.build(q, budget)
    report.merge(treport)
    report.subject = f"bar map along {f.name}"
    maps = []
    for n in range(q + 1):
        carrier = source.carrier(n)
        level = {}
        for x in st.levels[n]:
            v = alpha(x, carrier)
            if report.expect(v in set(tt.levels[n]), "closure", ("map", n, x)):
                level[x] = v
        maps.append(level)
    for (n, i), d in st.faces.items():
        for x, y in d.items():
            lhs, rhs = maps[n - 1].get(y), tt.faces[(n, i)].get(maps[n].get(x))
            report.expect(lhs is not None and lhs == rhs, "face", (n, i, x))
    for (n, i), s in st.degeneracies.items():
        for x, y in s.items():
            lhs, rhs = maps[n + 1].get(y), tt.degeneracies[(n, i)].get(maps[n].get(x))
            report.expect(lhs is not None and lhs == rhs, "degeneracy", (n, i, x))
    return maps, report
