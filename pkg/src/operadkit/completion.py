"""Completions of finite commutative monoids and rigs.

Group completion (M x M)/~, ring completion of a rig, unit groups, and
localization as the colimit of a multiplication telescope.  Universal
properties are checked exhaustively against catalogs of all abelian groups
and all commutative rings of order <= 8.
"""

import itertools
from dataclasses import dataclass
from functools import lru_cache
from math import gcd

from .errors import IllDefinedProduct
from .order import sorted_by_key
from .report import AxiomReport


@dataclass(frozen=True, eq=False)
class FinCommMonoid:
    elements: tuple
    zero: object
    add: dict
    name: str = "M"

    def __post_init__(self):
        object.__setattr__(self, "elements", tuple(self.elements))
        problems = monoid_problems(self.elements, self.zero, self.add)
        if problems:
            raise ValueError(f"{self.name} is not a commutative monoid: {problems[0]}")

    def __len__(self):
        return len(self.elements)

    def plus(self, x, y):
        return self.add[(x, y)]

    def neg(self, x):
        for y in self.elements:
            if self.add[(x, y)] == self.zero:
                return y
        return None


@dataclass(frozen=True, eq=False)
class FinRig:
    elements: tuple
    zero: object
    one: object
    add: dict
    mul: dict
    name: str = "R"

    def __post_init__(self):
        object.__setattr__(self, "elements", tuple(self.elements))
        problems = rig_problems(self)
        if problems:
            raise ValueError(f"{self.name} is not a commutative rig: {problems[0]}")

    def __len__(self):
        return len(self.elements)

    @property
    def additive(self):
        return FinCommMonoid(self.elements, self.zero, self.add, self.name + "+")

    @property
    def multiplicative(self):
        return FinCommMonoid(self.elements, self.one, self.mul, self.name + "*")

    def times(self, m, x):
        """m . x for a non-negative integer m."""
        acc = self.zero
        for _ in range(m):
            acc = self.add[(acc, x)]
        return acc

    def nat(self, m):
        return self.times(m, self.one)

    def to_json(self):
        from .report import jsonable

        E = self.elements
        return jsonable({
            "name": self.name,
            "elements": list(E),
            "zero": self.zero,
            "one": self.one,
            "add": [[self.add[(x, y)] for y in E] for x in E],
            "mul": [[self.mul[(x, y)] for y in E] for x in E],
        })


def monoid_problems(E, zero, add):
    out = []
    if zero not in E:
        out.append("zero is not an element")
        return out
    for x in E:
        if add[(zero, x)] != x:
            out.append(f"{zero!r} + {x!r} != {x!r}")
    for x, y in itertools.product(E, repeat=2):
        if add[(x, y)] not in E:
            out.append(f"{x!r} + {y!r} leaves the set")
        elif add[(x, y)] != add[(y, x)]:
            out.append(f"{x!r} + {y!r} is not commutative")
    if out:
        return out
    for x, y, z in itertools.product(E, repeat=3):
        if add[(add[(x, y)], z)] != add[(x, add[(y, z)])]:
            out.append(f"({x!r} + {y!r}) + {z!r} is not associative")
            break
    return out


def rig_problems(R):
    E = R.elements
    out = monoid_problems(E, R.zero, R.add) + monoid_problems(E, R.one, R.mul)
    if out:
        return out
    for x in E:
        if R.mul[(R.zero, x)] != R.zero:
            out.append(f"0 * {x!r} != 0")
    for x, y, z in itertools.product(E, repeat=3):
        if R.mul[(x, R.add[(y, z)])] != R.add[(R.mul[(x, y)], R.mul[(x, z)])]:
            out.append(f"{x!r} * ({y!r} + {z!r}) is not distributive")
            break
    return out


def make_monoid(elements, zero, op, name="M"):
    E = tuple(elements)
    return FinCommMonoid(E, zero, {(x, y): op(x, y) for x in E for y in E}, name)


def make_rig(elements, zero, one, add, mul, name="R"):
    E = tuple(elements)
    return FinRig(E, zero, one, {(x, y): add(x, y) for x in E for y in E},
                  {(x, y): mul(x, y) for x in E for y in E}, name)


def zmod(n):
    """The ring Z/n."""
    return make_rig(range(n), 0, 1 % n, lambda x, y: (x + y) % n, lambda x, y: (x * y) % n,
                    f"Z/{n}")


def boolean_monoid():
    return make_monoid((0, 1), 0, max, "boolean")


def boolean_rig():
    return make_rig((0, 1), 0, 1, max, min, "boolean")


def grouplike_check(M: FinCommMonoid):
    return all(M.neg(x) is not None for x in M.elements)


def is_ring(R: FinRig):
    return grouplike_check(R.additive)


# -- group completion -------------------------------------------------------

def _classes(pairs, related):
    # ``related`` is an equivalence relation; classes keyed by their minimum
    reps = []
    rep_of = {}
    for p in sorted_by_key(pairs):
        for r in reps:
            if related(p, r):
                rep_of[p] = r
                break
        else:
            reps.append(p)
            rep_of[p] = p
    return reps, rep_of


def _completion_classes(M: FinCommMonoid):
    E, add = M.elements, M.add

    def related(p, q):
        (a, b), (c, d) = p, q
        return any(add[(add[(a, d)], e)] == add[(add[(c, b)], e)] for e in E)

    return _classes(list(itertools.product(E, repeat=2)), related)


def group_completion(M: FinCommMonoid):
    """K = (M x M)/~ with (a,b) ~ (c,d) iff a+d+e = c+b+e for some e.

    Elements of K are the order-minimal pairs of their classes.  Returns
    ``(K, eta)`` with eta(a) = [(a, 0)] as a dict.
    """
    reps, rep_of = _completion_classes(M)
    add = M.add
    table = {(p, q): rep_of[(add[(p[0], q[0])], add[(p[1], q[1])])] for p in reps for q in reps}
    zero = rep_of[(M.zero, M.zero)]
    K = FinCommMonoid(tuple(reps), zero, table, f"K({M.name})")
    eta = {a: rep_of[(a, M.zero)] for a in M.elements}
    return K, eta


def ring_completion(R: FinRig):
    """Group completion of (R, +) with [(a,b)][(c,d)] = [(ac+bd, ad+bc)]."""
    reps, rep_of = _completion_classes(R.additive)
    add, mul = R.add, R.mul

    def product(p, q):
        (a, b), (c, d) = p, q
        return rep_of[(add[(mul[(a, c)], mul[(b, d)])], add[(mul[(a, d)], mul[(b, c)])])]

    members = {}
    for p, r in rep_of.items():
        members.setdefault(r, []).append(p)
    table = {}
    for p in reps:
        for q in reps:
            values = {product(x, y) for x in members[p] for y in members[q]}
            if len(values) != 1:
                raise IllDefinedProduct(f"product of classes {p!r}, {q!r} is not well defined")
            table[(p, q)] = values.pop()
    addt = {(p, q): rep_of[(add[(p[0], q[0])], add[(p[1], q[1])])] for p in reps for q in reps}
    K = FinRig(tuple(reps), rep_of[(R.zero, R.zero)], rep_of[(R.one, R.zero)], addt, table,
               f"ring completion of {R.name}")
    eta = {a: rep_of[(a, R.zero)] for a in R.elements}
    return K, eta


# -- units ------------------------------------------------------------------

def units(R: FinRig):
    """(GL1, SL1): the invertible elements as a multiplicative group, and
    the component of 1, which for a discrete ring is just {1}."""
    inv = [x for x in R.elements if any(R.mul[(x, y)] == R.one for y in R.elements)]
    table = {(x, y): R.mul[(x, y)] for x in inv for y in inv}
    GL = FinCommMonoid(tuple(inv), R.one, table, f"GL1({R.name})")
    return GL, (R.one,)


def totient(n):
    return sum(1 for k in range(1, n + 1) if gcd(k, n) == 1) if n > 1 else 1


# -- localization -----------------------------------------------------------

@dataclass
class Telescope:
    ring: FinRig
    to_colimit: dict  # R -> colimit
    stage: int  # stage (in full cycles of M) where the images stabilize
    period: int  # length of the repeating cycle of states, in single steps


def localize_telescope(R: FinRig, M):
    """The colimit of R --m1--> R --m2--> ... cycling through M.

    The stage maps are x -> m . x.  States (position in the cycle, image set)
    are hashed until one repeats; from then on each full cycle
    g = prod(M) . (-) is a bijection of the stable image I = g^N R, and
    the colimit is I with product z = g^-N(y y') and unit g^N(1).
    """
    M = [int(m) for m in M]
    if not M or any(m < 1 for m in M):
        raise ValueError("M must be a non-empty list of positive integers")
    steps = [lambda x, m=m: R.mul[(R.nat(m), x)] for m in M]
    seen = {}
    image = frozenset(R.elements)
    k = 0
    while (k % len(M), image) not in seen:
        seen[(k % len(M), image)] = k
        image = frozenset(steps[k % len(M)](x) for x in image)
        k += 1
    first = seen[(k % len(M), image)]
    period = k - first

    U = R.nat(1)
    for m in M:
        U = R.mul[(U, R.nat(m))]

    def g(x):
        return R.mul[(U, x)]

    N = -(-first // len(M))  # whole cycles needed to reach the stable part
    stable = set(R.elements)
    for _ in range(N):
        stable = {g(x) for x in stable}
    I = tuple(x for x in R.elements if x in stable)
    inverse = {g(x): x for x in I}
    if len(inverse) != len(I):
        raise AssertionError("the cycle map is not a bijection on the stable image")

    def g_power(x, n):
        for _ in range(n):
            x = g(x)
        return x

    def g_back(x, n):
        for _ in range(n):
            x = inverse[x]
        return x

    add = {(y, z): R.add[(y, z)] for y in I for z in I}
    mul = {(y, z): g_back(R.mul[(y, z)], N) for y in I for z in I}
    L = FinRig(I, R.zero, g_power(R.one, N), add, mul, f"{R.name}[1/{','.join(map(str, M))}]")
    to_colimit = {x: g_power(x, N) for x in R.elements}
    return Telescope(L, to_colimit, N, period)


# -- homomorphisms and isomorphisms ------------------------------------------

def _generators(elements, start, ops):
    """A small set of elements generating ``elements`` from ``start`` under ``ops``."""
    gens = []
    span = _closure(start, gens, ops)
    for x in sorted_by_key(elements):
        if x not in span:
            gens.append(x)
            span = _closure(start, gens, ops)
    return gens


def _closure(start, gens, ops):
    span = set(start) | set(gens)
    frontier = list(span)
    while frontier:
        new = []
        for x in frontier:
            for y in list(span):
                for op in ops:
                    for z in (op[(x, y)], op[(y, x)]):
                        if z not in span:
                            span.add(z)
                            new.append(z)
        frontier = new
    return span


def homomorphisms(A, B, kind="group"):
    """All structure-preserving maps A -> B.

    ``kind`` is ``"monoid"`` (additive monoids, 0 -> 0) or ``"ring"``
    (rigs, 0 -> 0, 1 -> 1, + and *).  Maps are found by choosing images of
    a generating set and propagating; each candidate is then verified on
    every pair.
    """
    if kind == "ring":
        fixed = {A.zero: B.zero, A.one: B.one}
        ops = [(A.add, B.add), (A.mul, B.mul)]
    else:
        fixed = {A.zero: B.zero}
        ops = [(A.add, B.add)]
    gens = _generators(A.elements, fixed, [o[0] for o in ops])
    out = []
    for images in itertools.product(B.elements, repeat=len(gens)):
        f = dict(fixed)
        ok = True
        for x, y in zip(gens, images):
            if f.setdefault(x, y) != y:
                ok = False
        if not ok:
            continue
        f = _propagate(f, A, ops)
        if f is None or len(f) != len(A.elements):
            continue
        if all(f[sa[(x, y)]] == sb[(f[x], f[y])] for sa, sb in ops
               for x in A.elements for y in A.elements):
            out.append(f)
    return out


def _propagate(f, A, ops):
    frontier = list(f)
    while frontier:
        new = []
        for x in frontier:
            for y in list(f):
                for sa, sb in ops:
                    for a, b in ((x, y), (y, x)):
                        z, v = sa[(a, b)], sb[(f[a], f[b])]
                        if z in f:
                            if f[z] != v:
                                return None
                        else:
                            f[z] = v
                            new.append(z)
        frontier = new
    return f


def find_isomorphism(A, B, kind="group"):
    if len(A.elements) != len(B.elements):
        return None
    for f in homomorphisms(A, B, kind):
        if len(set(f.values())) == len(A.elements):
            return f
    return None


# -- catalogs ---------------------------------------------------------------

def _coefficient_ring(moduli, mul, name):
    """Vectors with coordinate i mod moduli[i], componentwise addition and
    the given multiplication on vectors."""
    elements = tuple(itertools.product(*(range(m) for m in moduli)))
    zero = tuple(0 for _ in moduli)
    one = (1,) + tuple(0 for _ in moduli[1:])

    def add(x, y):
        return tuple((a + b) % m for a, b, m in zip(x, y, moduli))

    def reduce(v):
        return tuple(a % m for a, m in zip(v, moduli))

    return make_rig(elements, zero, one, add, lambda x, y: reduce(mul(x, y)), name)


def _poly_mod(p, modulus_poly):
    """F_p[x]/(f) for monic f of degree d, coefficients low degree first."""
    d = len(modulus_poly) - 1

    def mul(x, y):
        prod = [0] * (2 * d - 1)
        for i, a in enumerate(x):
            for j, b in enumerate(y):
                prod[i + j] += a * b
        for k in range(len(prod) - 1, d - 1, -1):
            c = prod[k] % p
            if c:
                for i in range(d + 1):
                    prod[k - d + i] -= c * modulus_poly[i]
        return tuple(prod[:d])

    return mul


def product_ring(R: FinRig, S: FinRig):
    E = tuple(itertools.product(R.elements, S.elements))
    return FinRig(E, (R.zero, S.zero), (R.one, S.one),
                  {(x, y): (R.add[(x[0], y[0])], S.add[(x[1], y[1])]) for x in E for y in E},
                  {(x, y): (R.mul[(x[0], y[0])], S.mul[(x[1], y[1])]) for x in E for y in E},
                  f"{R.name}x{S.name}")


def _dual_numbers():
    return _coefficient_ring((2, 2), lambda x, y: (x[0] * y[0], x[0] * y[1] + x[1] * y[0]),
                             "F2[x]/x^2")


@lru_cache(maxsize=None)
def ring_catalog():
    """All commutative rings with 1 of order <= 8, up to isomorphism."""
    F2, F3, F4 = zmod(2), zmod(3), _coefficient_ring((2, 2), _poly_mod(2, (1, 1, 1)), "F4")
    F8 = _coefficient_ring((2, 2, 2), _poly_mod(2, (1, 1, 0, 1)), "F8")
    rings = [
        zmod(1), F2, F3,
        zmod(4), _dual_numbers(), product_ring(F2, F2), F4,
        zmod(5), zmod(6), zmod(7),
        zmod(8), F8, product_ring(F4, F2), product_ring(product_ring(F2, F2), F2),
        product_ring(zmod(4), F2), product_ring(_dual_numbers(), F2),
        _coefficient_ring((2, 2, 2), _poly_mod(2, (0, 0, 0, 1)), "F2[x]/x^3"),
        _coefficient_ring((2, 2, 2), lambda x, y: (x[0] * y[0], x[0] * y[1] + x[1] * y[0],
                                                   x[0] * y[2] + x[2] * y[0]), "F2[x,y]/(x,y)^2"),
        _coefficient_ring((4, 2), lambda x, y: (x[0] * y[0], x[0] * y[1] + x[1] * y[0]),
                          "Z/4[x]/(2x,x^2)"),
        _coefficient_ring((4, 2), lambda x, y: (x[0] * y[0] + 2 * x[1] * y[1],
                                                x[0] * y[1] + x[1] * y[0]), "Z/4[x]/(2x,x^2-2)"),
    ]
    return tuple(rings)


def cyclic_group(n):
    return make_monoid(range(n), 0, lambda x, y: (x + y) % n, f"Z/{n}")


def product_group(A, B):
    E = tuple(itertools.product(A.elements, B.elements))
    return FinCommMonoid(E, (A.zero, B.zero),
                         {(x, y): (A.add[(x[0], y[0])], B.add[(x[1], y[1])]) for x in E for y in E},
                         f"{A.name}x{B.name}")


@lru_cache(maxsize=None)
def group_catalog():
    """All abelian groups of order <= 8, up to isomorphism."""
    Z2 = cyclic_group(2)
    return tuple([cyclic_group(n) for n in range(1, 9)]
                 + [product_group(Z2, Z2), product_group(cyclic_group(4), Z2),
                    product_group(product_group(Z2, Z2), Z2)])


# -- universal properties ---------------------------------------------------

def universal_property_check(kind, source, output, to_output, inverted=(), catalog=None):
    """Every admissible map out of ``source`` factors uniquely through ``output``.

    ``kind="group"``: source is a commutative monoid, output should be a
    group; targets are all abelian groups in the catalog.
    ``kind="localization"``: source and output are rigs; admissible maps
    send each m in ``inverted`` to a unit.
    """
    report = AxiomReport(subject=f"universal property ({kind}) of {output.name}")
    if kind == "group":
        hom_kind = "monoid"
        targets = catalog if catalog is not None else group_catalog()
        report.expect(grouplike_check(output), "output_grouplike", (output.name,))
    elif kind == "localization":
        hom_kind = "ring"
        targets = catalog if catalog is not None else ring_catalog()
        for m in inverted:
            u = to_output[source.nat(m)]
            report.expect(any(output.mul[(u, y)] == output.one for y in output.elements),
                          "inverts", (m,))
    else:
        raise ValueError("kind must be group or localization")

    for x, y in itertools.product(source.elements, repeat=2):
        report.expect(to_output[source.add[(x, y)]] == output.add[(to_output[x], to_output[y])],
                      "map_additive", (x, y))

    for T in targets:
        down = homomorphisms(source, T, hom_kind)
        if kind == "localization":
            down = [f for f in down if all(_is_unit(T, f[source.nat(m)]) for m in inverted)]
        up = homomorphisms(output, T, hom_kind)
        composites = {}
        for psi in up:
            key = tuple(psi[to_output[x]] for x in source.elements)
            composites.setdefault(key, []).append(psi)
        for f in down:
            key = tuple(f[x] for x in source.elements)
            found = composites.get(key, [])
            report.expect(len(found) >= 1, "exists", (T.name, key))
            report.expect(len(found) <= 1, "unique", (T.name, key))
        if kind == "localization":
            for key in composites:
                f = dict(zip(source.elements, key))
                report.expect(all(_is_unit(T, f[source.nat(m)]) for m in inverted),
                              "composite_inverts", (T.name, key))
    return report


def _is_unit(R, x):
    return any(R.mul[(x, y)] == R.one for y in R.elements)
