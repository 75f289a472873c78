"""Small monoids and rigs used as algebras across the test suite and demos."""

import itertools
from dataclasses import dataclass

from . import perm as P
from .completion import boolean_rig, make_rig, product_ring, zmod
from .monad.terms import Carrier


@dataclass(frozen=True)
class Monoid:
    name: str
    elements: tuple
    unit: object
    table: dict  # (x, y) -> x y

    @property
    def commutative(self):
        return all(self.table[(x, y)] == self.table[(y, x)]
                   for x in self.elements for y in self.elements)

    @property
    def carrier(self):
        """Based at the unit, as a reduced_based algebra."""
        return Carrier(self.elements, self.unit)

    def mul(self, x, y):
        return self.table[(x, y)]

    def product(self, xs):
        if not xs:
            return self.unit
        acc = xs[0]
        for x in xs[1:]:
            acc = self.table[(acc, x)]
        return acc

    def theta(self, c, xs):
        """The action of comm or assoc, or of a product operad through its first factor."""
        return self.product(_ordered(c, xs))

    def xi(self, t):
        if t.op is None:
            raise ValueError("a monoid has no smash zero")
        return self.theta(t.op, t.args)

    def is_monoid(self):
        E = self.elements
        return (all(self.table[(self.unit, x)] == x == self.table[(x, self.unit)] for x in E)
                and all(self.table[(self.table[(x, y)], z)] == self.table[(x, self.table[(y, z)])]
                        for x, y, z in itertools.product(E, repeat=3)))


def _ordered(c, xs):
    # assoc elements are permutations; c acts as x_{c^-1(1)} ... x_{c^-1(j)}
    if isinstance(c, tuple) and len(c) == 2 and isinstance(c[0], tuple) and not isinstance(c[0], str):
        c = c[0]  # product operad with the assoc factor first
    if isinstance(c, tuple) and all(isinstance(i, int) for i in c) and len(c) == len(xs):
        return P.act_on_tuple(c, xs)
    return tuple(xs)


def monoid(name, elements, unit, op):
    table = {(x, y): op(x, y) for x in elements for y in elements}
    return Monoid(name, tuple(elements), unit, table)


def cyclic(n):
    return monoid(f"Z/{n}", tuple(range(n)), 0, lambda x, y: (x + y) % n)


def boolean():
    return monoid("boolean", (0, 1), 0, max)


def chain(n):
    return monoid(f"max{n}", tuple(range(n)), 0, max)


def truncated(n):
    """{0..n} under addition capped at n."""
    return monoid(f"trunc{n}", tuple(range(n + 1)), 0, lambda x, y: min(x + y, n))


def nilpotent():
    """{0, a, z}: a + a = z absorbing."""
    def op(x, y):
        if x == 0:
            return y
        if y == 0:
            return x
        return "z"
    return monoid("nil", (0, "a", "z"), 0, op)


def klein():
    els = ((0, 0), (0, 1), (1, 0), (1, 1))
    return monoid("klein", els, (0, 0), lambda x, y: ((x[0] + y[0]) % 2, (x[1] + y[1]) % 2))


def left_zero():
    """{e, a, b} with xy = x for x, y in {a, b}: not commutative."""
    return monoid("leftzero", ("e", "a", "b"), "e",
                  lambda x, y: y if x == "e" else x)


def rees_words(length=2, letters=("a", "b")):
    """Words in ``letters`` of length <= ``length``; longer products collapse to z."""
    words = [""] + ["".join(w) for n in range(1, length + 1)
                    for w in itertools.product(letters, repeat=n)]

    def op(x, y):
        if "z" in (x, y):
            return "z"
        w = x + y
        return w if len(w) <= length else "z"

    return monoid(f"words{length}", tuple(words) + ("z",), "", op)


def commutative_monoids():
    """Ten commutative fixtures of size <= 4."""
    return [monoid("trivial", (0,), 0, lambda x, y: 0), cyclic(2), boolean(), cyclic(3),
            chain(3), truncated(2), nilpotent(), cyclic(4), klein(), truncated(3)]


def monoids():
    return commutative_monoids() + [left_zero(), rees_words(1)]


# -- monoids with an absorbing zero (algebras for the smash flavors) ----------

@dataclass(frozen=True)
class ZeroMonoid(Monoid):
    zero: object = None

    @property
    def carrier(self):
        return Carrier(self.elements, self.zero, self.unit)

    def xi(self, t):
        if t.op is None:
            return self.zero
        return self.theta(t.op, t.args)


def with_zero(M: Monoid, zero="0", name=None):
    """Adjoin an absorbing zero to a monoid."""
    els = tuple(M.elements) + (zero,)
    table = dict(M.table)
    for x in els:
        table[(x, zero)] = zero
        table[(zero, x)] = zero
    return ZeroMonoid(name or f"{M.name}+0", els, M.unit, table, zero)


def zero_monoid(name, elements, zero, unit, op):
    table = {(x, y): op(x, y) for x in elements for y in elements}
    return ZeroMonoid(name, tuple(elements), unit, table, zero)


def zero_monoids():
    """Five monoids with absorbing zero, based at 0 with unit 1."""
    def two_idempotents(x, y):
        if x == 1:
            return y
        if y == 1:
            return x
        return x if x == y else 0

    return [
        zero_monoid("and", (0, 1), 0, 1, lambda x, y: x * y),
        zero_monoid("idem", (0, 1, "a"), 0, 1, lambda x, y: 0 if 0 in (x, y) else
                    (y if x == 1 else x)),
        zero_monoid("square0", (0, 1, "a"), 0, 1, lambda x, y: 0 if 0 in (x, y) else
                    (y if x == 1 else x if y == 1 else 0)),
        with_zero(cyclic(2), zero="0", name="Z/2+0"),
        zero_monoid("orth", (0, 1, "a", "b"), 0, 1, two_idempotents),
    ]


def semigroups_with_zero():
    """Based sets {0, a} with an associative product having 0 absorbing."""
    return [
        zero_monoid("a2=a", (0, "a"), 0, None, lambda x, y: 0 if 0 in (x, y) else "a"),
        zero_monoid("a2=0", (0, "a"), 0, None, lambda x, y: 0),
    ]


# -- rigs -------------------------------------------------------------------

def capped_rig():
    """{0, 1, inf} with 1 + 1 = inf absorbing under addition and inf * inf = inf."""
    def add(x, y):
        if x == 0:
            return y
        if y == 0:
            return x
        return "inf"

    def mul(x, y):
        if 0 in (x, y):
            return 0
        if x == 1:
            return y
        if y == 1:
            return x
        return "inf"

    return make_rig((0, 1, "inf"), 0, 1, add, mul, "capped")


def truncated_rig(n):
    """{0..n} with addition and multiplication capped at n."""
    return make_rig(range(n + 1), 0, 1, lambda x, y: min(x + y, n), lambda x, y: min(x * y, n),
                    f"N<={n}")


def rigs():
    """Ten rig fixtures."""
    return [boolean_rig(), zmod(2), zmod(3), zmod(4), zmod(6), capped_rig(), truncated_rig(2),
            truncated_rig(3), product_ring(boolean_rig(), zmod(2)), zmod(5)]


# -- lookup by name -----------------------------------------------------------

def find_monoid(name):
    for M in monoids() + zero_monoids() + semigroups_with_zero() + [rees_words(2)]:
        if M.name == name:
            return M
    raise KeyError(f"no monoid fixture named {name!r}")


def find_rig(name):
    for R in rigs():
        if R.name == name:
            return R
    raise KeyError(f"no rig fixture named {name!r}")


def algebra_for(M, flavor):
    """(carrier, xi) presenting the fixture ``M`` as an algebra of ``flavor``."""
    from .monad.terms import flavor_name

    flavor = flavor_name(flavor)
    if flavor == "plus_unbased":
        return Carrier(M.elements), M.xi
    if flavor == "reduced_based":
        return Carrier(M.elements, M.unit), M.xi
    if not isinstance(M, ZeroMonoid):
        raise ValueError(f"{flavor} needs a monoid with zero, not {M.name}")
    if flavor == "reduced_under_s0":
        return M.carrier, M.xi
    return Carrier(M.elements, M.zero), M.xi
