"""Operad pairs: an action lambda of a multiplicative operad G on an additive
operad C, the structure maps it induces on a candidate ring space, and the
distributivity diagram those maps must satisfy.
"""

import itertools
import math
from dataclasses import dataclass
from typing import Any, Callable

from .config import DEFAULT_SAMPLES, DEFAULT_SEED
from .errors import ArityOverflow, ShapeMismatch
from .operad import (
    BasedFinSet,
    CommOperad,
    Factor,
    SymOperad,
    UnderS0FinSet,
    check_algebra,
    lex_sequences,
    run_shapes,
)
from .report import AxiomReport


@dataclass(frozen=True)
class PointsFactor(Factor):
    """Tuples of n carrier points."""

    points: tuple = ()

    def size(self):
        return len(self.points) ** self.n

    def values(self):
        return itertools.product(self.points, repeat=self.n)

    def sample(self, rng):
        return tuple(rng.choice(self.points) for _ in range(self.n))


def points(X, n):
    return PointsFactor("points", n, None, tuple(X.elements))


@dataclass
class PairAction:
    """lam(g, cs) in C(j_1 ... j_k) for g in G(k), c_r in C(j_r)."""

    C: SymOperad
    G: SymOperad
    lam: Callable[[Any, tuple], Any]
    name: str = "pair"

    def __call__(self, g, cs):
        cs = tuple(cs)
        js = [self.C.arity(c) for c in cs]
        if len(cs) != self.G.arity(g):
            raise ShapeMismatch(f"{g!r} takes {self.G.arity(g)} inputs, got {len(cs)}")
        if math.prod(js) > self.C.max_arity:
            raise ArityOverflow(f"product arity {math.prod(js)} exceeds {self.C.max_arity}")
        return self.lam(g, cs)


def nn_pair(max_arity=3):
    """(N, N): lam(*_k; *_{j_1} .. *_{j_k}) = *_{j_1 ... j_k}."""
    N = CommOperad(max_arity)
    G = CommOperad(max_arity)
    return PairAction(N, G, lambda g, cs: ("*", math.prod(c[1] for c in cs)), name="(N,N)")


def tabulated_pair(C, G, table, name="pair"):
    """Pair action from a dict {(g, cs): result}."""

    def lam(g, cs):
        try:
            return table[(g, tuple(cs))]
        except KeyError:
            raise ArityOverflow(f"no lambda entry for {g!r}; {cs!r}") from None

    return PairAction(C, G, lam, name)


def check_pair_action(pa: PairAction, budget=None, samples=DEFAULT_SAMPLES, seed=DEFAULT_SEED):
    """Operational checks: lam(g) = id for g in G(0), and every in-bound value lies
    in C(j_1 ... j_k)."""
    C, G = pa.C, pa.G
    A = G.max_arity
    report = AxiomReport(subject=f"pair action {pa.name}", horizon=C.max_arity)
    report.expect(pa(G.zero, ()) == C.identity, "unit", (G.zero,))

    def lands(g, *cs):
        js = [C.arity(c) for c in cs]
        return C.contains(pa(g, cs), math.prod(js))

    shapes = []
    for k in range(1, A + 1):
        for js in itertools.product(range(C.max_arity + 1), repeat=k):
            if math.prod(js) <= C.max_arity:
                shapes.append(((k, js), [Factor("elem", k, G)] + [Factor("elem", j, C) for j in js]))
    run_shapes(report, "membership", shapes, lands, budget, samples, seed)
    return report


@dataclass
class RingSpaceCandidate:
    """A carrier under S^0 with an additive C-action theta (based at 0) and a
    multiplicative G-action xi (based at 1)."""

    X: UnderS0FinSet
    theta: Callable[[Any, tuple], Any]
    xi: Callable[[Any, tuple], Any]
    name: str = "candidate"

    @property
    def additive(self):
        return self.X.based_at(self.X.zero)

    @property
    def multiplicative(self):
        return self.X.based_at(self.X.one)


def induced_xi(pa: PairAction, g, args, xi):
    """The structure map on C X: (g; (c_1, y_1) .. (c_k, y_k)) goes to
    (lam(g; c_1..c_k); (xi(g; y_Q))_Q) with Q in lexicographic order."""
    cs = tuple(c for c, _ in args)
    ys = [tuple(y) for _, y in args]
    for c, y in zip(cs, ys):
        if pa.C.arity(c) != len(y):
            raise ShapeMismatch(f"{c!r} has arity {pa.C.arity(c)} but {len(y)} points")
    js = [len(y) for y in ys]
    head = pa(g, cs)
    tail = tuple(xi(g, tuple(y[q - 1] for y, q in zip(ys, Q))) for Q in lex_sequences(js))
    return head, tail


def ring_space_shapes(pa: PairAction, X):
    """(k, js) shapes of diagram instances, split into in-bound and overflowing."""
    C, G = pa.C, pa.G
    inside, outside = [], []
    for k in range(G.max_arity + 1):
        for js in itertools.product(range(C.max_arity + 1), repeat=k):
            factors = [Factor("elem", k, G)]
            factors += [Factor("elem", j, C) for j in js]
            factors += [points(X, j) for j in js]
            (inside if math.prod(js) <= C.max_arity else outside).append(((k, js), factors))
    return inside, outside


def distributivity_check(pa: PairAction, cand: RingSpaceCandidate):
    """Predicate on flat instances (g, c_1..c_k, y_1..y_k) for the diagram
    xi(g; theta(c_1, y_1) ..) = theta(induced_xi(g; (c_r, y_r)))."""

    def check(g, *rest):
        k = len(rest) // 2
        cs, ys = rest[:k], rest[k:]
        lhs = cand.xi(g, tuple(cand.theta(c, y) for c, y in zip(cs, ys)))
        c, y = induced_xi(pa, g, list(zip(cs, ys)), cand.xi)
        return lhs == cand.theta(c, y)

    return check


def check_ring_space(pa: PairAction, cand: RingSpaceCandidate, budget=None,
                     samples=DEFAULT_SAMPLES, seed=DEFAULT_SEED):
    """Both legs of the distributivity diagram agree on every in-bound instance.

    Instances whose product arity overflows C's truncation are counted as
    unchecked.
    """
    report = AxiomReport(subject=f"ring space {cand.name} over {pa.name}",
                         horizon=pa.C.max_arity)
    inside, outside = ring_space_shapes(pa, cand.X)
    run_shapes(report, "distributivity", inside, distributivity_check(pa, cand),
               budget, samples, seed)
    for _, factors in outside:
        report.skip(math.prod(f.size() for f in factors))
    return report


def check_candidate(pa: PairAction, cand: RingSpaceCandidate, budget=None):
    """The candidate invariants: both actions valid and 0 a strict zero for xi."""
    report = AxiomReport(subject=f"candidate {cand.name}", horizon=pa.C.max_arity)
    report.merge(check_algebra(pa.C, cand.additive, cand.theta, budget))
    report.merge(check_algebra(pa.G, cand.multiplicative, cand.xi, budget))
    X = cand.X
    for k in range(1, pa.G.max_arity + 1):
        for g in pa.G.elements(k):
            for ys in itertools.product(X.elements, repeat=k):
                if X.zero in ys:
                    report.expect(cand.xi(g, ys) == X.zero, "strict_zero", (g, ys))
    return report


def basepoint_redundancy_check(pa: PairAction, cand: RingSpaceCandidate):
    """Derive the strict-zero property from the distributivity diagram.

    With j_i = 0 the right leg lands in theta(C(0)) = {0}, so the diagram
    forces xi(g; y) = 0 whenever y_i = 0.  Instances with all other j_r = 1
    give exactly those values; every instance with some j_r = 0 is also
    evaluated.  Witnesses are stored values disagreeing with the forced 0.
    """
    C, G, X = pa.C, pa.G, cand.X
    report = AxiomReport(subject=f"strict zero for {cand.name}", horizon=C.max_arity)
    check = distributivity_check(pa, cand)
    zero_c = C.zero
    unit_c = C.identity
    for k in range(1, G.max_arity + 1):
        for g in G.elements(k):
            for i in range(k):
                # all-but-one j_r = 1, the remaining one 0
                for rest in itertools.product(X.elements, repeat=k - 1):
                    ys = list(rest)
                    ys.insert(i, X.zero)
                    cs = [unit_c] * k
                    cs[i] = zero_c
                    singles = [(y,) for y in ys]
                    singles[i] = ()
                    forced = cand.theta(*_induced_theta_args(pa, g, cs, singles, cand))
                    report.expect(forced == X.zero, "forced_zero", (g, tuple(cs), tuple(singles)))
                    report.expect(cand.xi(g, tuple(ys)) == forced, "strict_zero", (g, tuple(ys)))
            # any shape with some j_r = 0
            for js in itertools.product(range(C.max_arity + 1), repeat=k):
                if 0 not in js or all(j == 1 or j == 0 for j in js) and js.count(0) == 1:
                    continue
                for cs in itertools.product(*(C.elements(j) for j in js)):
                    for ys in itertools.product(
                        *(itertools.product(X.elements, repeat=j) for j in js)
                    ):
                        report.expect(check(g, *cs, *ys), "distributivity_at_zero",
                                      (g,) + cs + ys)
    return report


def _induced_theta_args(pa, g, cs, ys, cand):
    return induced_xi(pa, g, list(zip(cs, ys)), cand.xi)


# ---------------------------------------------------------------------------
# (N, N) and rigs


def as_table(X_elements, table):
    """Normalize a binary operation given as dict or nested lists to a dict."""
    if isinstance(table, dict):
        return dict(table)
    els = list(X_elements)
    return {(a, b): table[i][j] for i, a in enumerate(els) for j, b in enumerate(els)}


def fold_action(table, unit):
    """theta(*_j; x_1..x_j) = ((x_1 x_2) x_3) ..., theta(*_0) = unit."""

    def theta(c, xs):
        acc = unit
        for i, x in enumerate(xs):
            acc = x if i == 0 else table[(acc, x)]
        return acc

    return theta


def rig_candidate(X: UnderS0FinSet, add, mul, name="rig"):
    add = as_table(X.elements, add)
    mul = as_table(X.elements, mul)
    return RingSpaceCandidate(X, fold_action(add, X.zero), fold_action(mul, X.one), name)


def is_commutative_rig(X: UnderS0FinSet, add, mul):
    """Direct check of the commutative-semiring axioms, strict zero included."""
    add = as_table(X.elements, add)
    mul = as_table(X.elements, mul)
    E = X.elements
    for a in E:
        if add[(a, X.zero)] != a or mul[(a, X.one)] != a or mul[(a, X.zero)] != X.zero:
            return False
        for b in E:
            if add[(a, b)] != add[(b, a)] or mul[(a, b)] != mul[(b, a)]:
                return False
            for c in E:
                if add[(add[(a, b)], c)] != add[(a, add[(b, c)])]:
                    return False
                if mul[(mul[(a, b)], c)] != mul[(a, mul[(b, c)])]:
                    return False
                if mul[(a, add[(b, c)])] != add[(mul[(a, b)], mul[(a, c)])]:
                    return False
    return True


def nn_rig_equivalence(X: UnderS0FinSet, add, mul, max_arity=3):
    """Compare a direct rig check with the (N, N) ring-space check."""
    pa = nn_pair(max_arity)
    cand = rig_candidate(X, add, mul)
    passes = (
        check_algebra(pa.C, cand.additive, cand.theta).passed
        and check_algebra(pa.G, cand.multiplicative, cand.xi).passed
        and check_ring_space(pa, cand).passed
    )
    return {"is_rig": is_commutative_rig(X, add, mul), "ring_space_passes": passes}


def all_table_pairs(X: UnderS0FinSet):
    """Every pair of binary operations on X, in a fixed order."""
    E = X.elements
    keys = [(a, b) for a in E for b in E]
    tables = [dict(zip(keys, vals)) for vals in itertools.product(E, repeat=len(keys))]
    for add in tables:
        for mul in tables:
            yield add, mul


def pair_actions(theta1, theta2):
    """Action of O1 x O2 on X x Y, componentwise."""

    def theta(c, xs):
        return (
            theta1(c[0], tuple(x[0] for x in xs)),
            theta2(c[1], tuple(x[1] for x in xs)),
        )

    return theta


def product_carrier(X: BasedFinSet, Y: BasedFinSet):
    return BasedFinSet(
        tuple(itertools.product(X.elements, Y.elements)), (X.basepoint, Y.basepoint)
    )
