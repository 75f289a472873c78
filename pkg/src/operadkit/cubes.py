"""Little cubes and little discs with exact rational coordinates.

A little n-cube is a product of n increasing affine maps t -> a t + b of
(0, 1) into itself; an element of arity j is a j-tuple of them with
pairwise disjoint open images.  A little disc is v -> a v + b on the open
unit ball.  Isometries are signed coordinate permutations; for cubes they
act about the center (1/2, ..., 1/2), so a sign flip is t -> 1 - t.
"""

import random
from dataclasses import dataclass
from fractions import Fraction

from . import perm as P
from .errors import NonAxisAligned, ShapeMismatch
from .operad import lex_sequences, operad_axiom_checks
from .report import AxiomReport

HALF = Fraction(1, 2)


def rational(x):
    """Fraction from an int, Fraction or a "p/q" string."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        return Fraction(x.strip())
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"not an exact rational: {x!r}")


@dataclass(frozen=True)
class Affine:
    a: Fraction
    b: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "a", rational(self.a))
        object.__setattr__(self, "b", rational(self.b))

    def __call__(self, t):
        return self.a * t + self.b

    def then(self, outer):
        """outer . self"""
        return Affine(outer.a * self.a, outer.a * self.b + outer.b)

    @property
    def valid(self):
        return self.a > 0 and self.b >= 0 and self.a + self.b <= 1

    @property
    def interval(self):
        return self.b, self.a + self.b

    def flipped(self):
        """t -> 1 - l(1 - t)."""
        return Affine(self.a, 1 - self.a - self.b)

    def __repr__(self):
        return f"{self.a}t+{self.b}"


IDENTITY_1D = Affine(1, 0)


def boxes_disjoint(u, v):
    """Open boxes are disjoint iff they are separated along some axis."""
    return any(p.a + p.b <= q.b or q.a + q.b <= p.b for p, q in zip(u, v))


@dataclass(frozen=True)
class CubeElement:
    dimension: int
    cubes: tuple  # of tuples of Affine, one per axis

    def __post_init__(self):
        cubes = tuple(tuple(c) for c in self.cubes)
        object.__setattr__(self, "cubes", cubes)
        for c in cubes:
            if len(c) != self.dimension:
                raise ShapeMismatch(f"cube {c!r} is not {self.dimension}-dimensional")
            if not all(l.valid for l in c):
                raise ValueError(f"cube {c!r} does not map (0,1)^n into itself")
        for i in range(len(cubes)):
            for j in range(i + 1, len(cubes)):
                if not boxes_disjoint(cubes[i], cubes[j]):
                    raise ValueError(f"cubes {i + 1} and {j + 1} overlap")

    @property
    def arity(self):
        return len(self.cubes)

    def to_json(self):
        return {
            "dimension": self.dimension,
            "cubes": [[{"a": str(l.a), "b": str(l.b)} for l in c] for c in self.cubes],
        }

    @classmethod
    def from_json(cls, data):
        return cls(int(data["dimension"]),
                   tuple(tuple(Affine(l["a"], l["b"]) for l in c) for c in data["cubes"]))

    def __repr__(self):
        return f"Cubes{self.dimension}{list(self.cubes)}"


class Cubes:
    """The little n-cubes operad (no arity bound)."""

    def __init__(self, n):
        self.n = n
        self.name = f"C_{n}"
        self.identity = CubeElement(n, ((IDENTITY_1D,) * n,))
        self.zero = CubeElement(n, ())

    def arity(self, c):
        return c.arity

    def act(self, c, s):
        """(c . s)_i = c_{s(i)}."""
        return CubeElement(self.n, tuple(c.cubes[s[i] - 1] for i in range(len(s))))

    def gamma(self, g, fs):
        if len(fs) != g.arity:
            raise ShapeMismatch(f"gamma needs {g.arity} inner elements, got {len(fs)}")
        out = []
        for outer, f in zip(g.cubes, fs):
            for inner in f.cubes:
                out.append(tuple(l.then(o) for l, o in zip(inner, outer)))
        # disjointness of the result is a theorem; a failure here is a bug
        return CubeElement(self.n, tuple(out))

    def degeneracy(self, c, i):
        return CubeElement(self.n, c.cubes[: i - 1] + c.cubes[i:])


def gamma_compose(g, fs):
    return Cubes(g.dimension).gamma(g, fs)


def suspend(f):
    """f x id: one more axis on which every cube is the identity."""
    return CubeElement(f.dimension + 1, tuple(c + (IDENTITY_1D,) for c in f.cubes))


def center_eval(c):
    """The images of the center point; pairwise distinct since images are disjoint."""
    points = tuple(tuple(l(HALF) for l in cube) for cube in c.cubes)
    if len(set(points)) != len(points):
        raise AssertionError("center points collide")
    return points


def in_configuration_space(points, n):
    return (len(set(points)) == len(points)
            and all(len(p) == n and all(0 < x < 1 for x in p) for p in points))


# -- signed permutations ------------------------------------------------------

@dataclass(frozen=True)
class SignedPerm:
    perm: tuple  # axis i goes to axis perm[i]
    signs: tuple

    def __post_init__(self):
        P.check_perm(self.perm)
        if len(self.signs) != len(self.perm) or any(s not in (1, -1) for s in self.signs):
            raise ValueError("signs must be +1/-1, one per axis")

    @property
    def n(self):
        return len(self.perm)

    @classmethod
    def identity(cls, n):
        return cls(P.identity(n), (1,) * n)

    @classmethod
    def from_matrix(cls, M):
        """A rational matrix with one +-1 per row and column; rows are outputs."""
        n = len(M)
        perm = [0] * n
        signs = [0] * n
        for row in range(n):
            entries = [(col, rational(v)) for col, v in enumerate(M[row]) if rational(v) != 0]
            if len(entries) != 1 or abs(entries[0][1]) != 1:
                raise NonAxisAligned(f"row {row} of the isometry is not a signed unit vector")
            col, v = entries[0]
            perm[col] = row + 1
            signs[col] = int(v)
        if sorted(perm) != list(range(1, n + 1)):
            raise NonAxisAligned("the isometry is not a signed permutation")
        return cls(tuple(perm), tuple(signs))

    def matrix(self):
        M = [[Fraction(0)] * self.n for _ in range(self.n)]
        for i, (p, s) in enumerate(zip(self.perm, self.signs)):
            M[p - 1][i] = Fraction(s)
        return M

    def apply(self, v):
        """Linear action on a vector."""
        out = [None] * self.n
        for i, (p, s) in enumerate(zip(self.perm, self.signs)):
            out[p - 1] = s * v[i]
        return tuple(out)

    def then(self, outer):
        """outer . self"""
        perm = tuple(outer.perm[p - 1] for p in self.perm)
        signs = tuple(s * outer.signs[p - 1] for p, s in zip(self.perm, self.signs))
        return SignedPerm(perm, signs)

    def conjugate_cube(self, cube):
        """g f g^-1 for one little cube, g acting about the center."""
        out = [None] * self.n
        for i, (p, s) in enumerate(zip(self.perm, self.signs)):
            out[p - 1] = cube[i] if s == 1 else cube[i].flipped()
        return tuple(out)


def as_signed_perm(g, n):
    if isinstance(g, SignedPerm):
        if g.n != n:
            raise ShapeMismatch(f"isometry acts on dimension {g.n}, expected {n}")
        return g
    return SignedPerm.from_matrix(g)


def lambda_geom(g, fs):
    """The Q-th output is g (f_{1,q1} x ... x f_{k,qk}) g^-1, Q in lex order."""
    dims = [f.dimension for f in fs]
    N = sum(dims)
    g = as_signed_perm(g, N) if N or isinstance(g, SignedPerm) else SignedPerm((), ())
    out = []
    for Q in lex_sequences([f.arity for f in fs]):
        product = tuple(l for f, q in zip(fs, Q) for l in f.cubes[q - 1])
        out.append(g.conjugate_cube(product))
    return CubeElement(N, tuple(out))


def block_swap(n1, n2):
    """R^{n2} + R^{n1} -> R^{n1} + R^{n2}, exchanging the two coordinate blocks."""
    perm = tuple(n1 + i + 1 for i in range(n2)) + tuple(i + 1 for i in range(n1))
    return SignedPerm(perm, (1,) * (n1 + n2))


# -- discs --------------------------------------------------------------------

@dataclass(frozen=True)
class Disc:
    a: Fraction
    b: tuple

    def __post_init__(self):
        object.__setattr__(self, "a", rational(self.a))
        object.__setattr__(self, "b", tuple(rational(x) for x in self.b))

    @property
    def valid(self):
        # |b| + a <= 1, decided with squares
        room = 1 - self.a
        return self.a > 0 and room >= 0 and _norm2(self.b) <= room * room

    def then(self, outer):
        return Disc(outer.a * self.a, tuple(outer.a * x + y for x, y in zip(self.b, outer.b)))


def _norm2(v):
    return sum(x * x for x in v)


def discs_disjoint(d, e):
    gap = tuple(x - y for x, y in zip(d.b, e.b))
    reach = d.a + e.a
    return _norm2(gap) >= reach * reach


@dataclass(frozen=True)
class DiscElement:
    dimension: int
    discs: tuple

    def __post_init__(self):
        object.__setattr__(self, "discs", tuple(self.discs))
        for d in self.discs:
            if len(d.b) != self.dimension or not d.valid:
                raise ValueError(f"{d!r} is not a little {self.dimension}-disc")
        for i in range(len(self.discs)):
            for j in range(i + 1, len(self.discs)):
                if not discs_disjoint(self.discs[i], self.discs[j]):
                    raise ValueError(f"discs {i + 1} and {j + 1} overlap")

    @property
    def arity(self):
        return len(self.discs)


class Discs:
    def __init__(self, n):
        self.n = n
        self.name = f"D_{n}"
        self.identity = DiscElement(n, (Disc(1, (0,) * n),))

    def arity(self, c):
        return c.arity

    def act(self, c, s):
        return DiscElement(self.n, tuple(c.discs[s[i] - 1] for i in range(len(s))))

    def gamma(self, g, fs):
        out = []
        for outer, f in zip(g.discs, fs):
            out.extend(d.then(outer) for d in f.discs)
        return DiscElement(self.n, tuple(out))


def disc_conjugate(g, f: DiscElement):
    """g f g^-1: v -> a v + g(b)."""
    g = as_signed_perm(g, f.dimension)
    return DiscElement(f.dimension, tuple(Disc(d.a, g.apply(d.b)) for d in f.discs))


# -- general affine maps, for the negative facts ------------------------------

@dataclass(frozen=True)
class AffineMap:
    """v -> A v + b with a rational matrix A."""

    A: tuple
    b: tuple

    def __post_init__(self):
        object.__setattr__(self, "A", tuple(tuple(rational(x) for x in row) for row in self.A))
        object.__setattr__(self, "b", tuple(rational(x) for x in self.b))

    @property
    def n(self):
        return len(self.b)

    def compose(self, inner):
        A = _matmul(self.A, inner.A)
        b = tuple(x + y for x, y in zip(_matvec(self.A, inner.b), self.b))
        return AffineMap(A, b)


def _matmul(A, B):
    return tuple(tuple(sum(A[i][k] * B[k][j] for k in range(len(B))) for j in range(len(B[0])))
                 for i in range(len(A)))


def _matvec(A, v):
    return tuple(sum(a * x for a, x in zip(row, v)) for row in A)


def _transpose(A):
    return tuple(zip(*A))


def cube_as_map(cube):
    n = len(cube)
    A = tuple(tuple(cube[i].a if i == j else 0 for j in range(n)) for i in range(n))
    return AffineMap(A, tuple(l.b for l in cube))


def disc_as_map(d: Disc):
    n = len(d.b)
    return AffineMap(tuple(tuple(d.a if i == j else 0 for j in range(n)) for i in range(n)), d.b)


def cube_membership(m: AffineMap):
    """(is a little cube, reason)."""
    n = m.n
    for i in range(n):
        for j in range(n):
            if i != j and m.A[i][j] != 0:
                return False, "not axis-aligned"
    for i in range(n):
        l = Affine.__new__(Affine)
        object.__setattr__(l, "a", m.A[i][i])
        object.__setattr__(l, "b", m.b[i])
        if not l.valid:
            return False, f"axis {i + 1} does not map (0,1) into itself"
    return True, "little cube"


def disc_membership(m: AffineMap):
    n = m.n
    a = m.A[0][0] if n else Fraction(1)
    for i in range(n):
        for j in range(n):
            if m.A[i][j] != (a if i == j else 0):
                return False, "not of the form a v + b"
    if not Disc(a, m.b).valid:
        return False, "image leaves the unit ball"
    return True, "little disc"


def conjugate_about_center(R, m: AffineMap):
    """R' m R'^-1 where R' is the orthogonal map R about the cube center."""
    n = m.n
    c = (HALF,) * n
    Rt = _transpose(R)
    # w -> R (m (R^T (w - c) + c) - c) + c
    inner = AffineMap(Rt, tuple(x - y for x, y in zip(c, _matvec(Rt, c))))
    outer = AffineMap(R, tuple(x - y for x, y in zip(c, _matvec(R, c))))
    return outer.compose(m.compose(inner))


def suspend_map(m: AffineMap):
    n = m.n
    A = tuple(tuple(m.A[i]) + (0,) for i in range(n)) + ((0,) * n + (1,),)
    return AffineMap(A, m.b + (0,))


ROTATION_345 = ((Fraction(3, 5), Fraction(-4, 5)), (Fraction(4, 5), Fraction(3, 5)))


def negative_facts():
    """Cubes are too square for rotations and discs too round for products.

    Both facts are expected to hold; the report fails only if one of the
    counterexamples turns out to be a member after all.
    """
    report = AxiomReport(subject="negative facts")
    cube = (Affine(HALF, 0), Affine(Fraction(1, 4), 0))
    rotated = conjugate_about_center(ROTATION_345, cube_as_map(cube))
    member, reason = cube_membership(rotated)
    report.expect(not member and reason == "not axis-aligned", "rotated_cube_not_a_cube",
                  ("3-4-5", reason))
    report.notes.append(f"rotated non-square cube: {reason}")
    square = (Affine(HALF, 0), Affine(HALF, 0))
    member, reason = cube_membership(conjugate_about_center(ROTATION_345, cube_as_map(square)))
    report.notes.append(f"rotated square: {reason}")

    disc = disc_as_map(Disc(HALF, (0,)))
    member, reason = disc_membership(suspend_map(disc))
    report.expect(not member, "suspended_disc_not_a_disc", ("v/2 x id", reason))
    report.notes.append(f"suspended v/2: {reason}")
    member, reason = disc_membership(suspend_map(disc_as_map(Disc(1, (0,)))))
    report.expect(member, "suspended_identity_disc", ("id x id", reason))
    return report


# -- random instances and property checks -------------------------------------

def _rand_interval(rng, lo, hi, den=12):
    # a random open subinterval of (lo, hi) with rational endpoints
    u, v = sorted(Fraction(x, den) for x in rng.sample(range(den + 1), 2))
    return Affine((hi - lo) * (v - u), lo + (hi - lo) * u)


def random_cube_element(rng, n, j):
    """j disjoint cubes in n dimensions, separated along a random axis."""
    axis = rng.randrange(n)
    walls = sorted(Fraction(x, 12) for x in rng.sample(range(1, 12), j - 1)) if j else []
    bounds = [Fraction(0)] + walls + [Fraction(1)]
    cubes = []
    for r in range(j):
        cubes.append(tuple(_rand_interval(rng, bounds[r], bounds[r + 1]) if ax == axis
                           else _rand_interval(rng, 0, 1) for ax in range(n)))
    element = CubeElement(n, tuple(cubes))
    return Cubes(n).act(element, _random_perm(rng, j))


def _random_perm(rng, j):
    p = list(range(1, j + 1))
    rng.shuffle(p)
    return tuple(p)


def random_disc_element(rng, n, j):
    """j disjoint discs centered along a random axis inside the ball of radius 1/2."""
    axis = rng.randrange(n)
    width = Fraction(1, max(j, 1))
    discs = []
    for r in range(j):
        center = [Fraction(0)] * n
        center[axis] = Fraction(-1, 2) + width * (2 * r + 1) / 2
        radius = width / 2 * Fraction(rng.randint(1, 4), 4)
        discs.append(Disc(radius, tuple(center)))
    element = DiscElement(n, tuple(discs))
    return Discs(n).act(element, _random_perm(rng, j))


def pointwise_gamma(g, fs, points):
    """Oracle for gamma: evaluate g_r(f_{r,s}(t)) at sample points."""
    out = []
    for outer, f in zip(g.cubes, fs):
        for inner in f.cubes:
            out.append(tuple(tuple(o(l(x)) for o, l, x in zip(outer, inner, t)) for t in points))
    return out


def _evaluate(element, points):
    return [tuple(tuple(l(x) for l, x in zip(c, t)) for t in points) for c in element.cubes]


def random_cube_instances(count=1000, seed=0, max_dim=3, max_arity=3):
    """Seeded random checks of the operad laws for cubes.

    Each instance picks n <= max_dim and arities <= max_arity and checks
    associativity, both equivariance laws, the unit laws, gamma against the
    pointwise oracle, suspension compatibility and that centers land in the
    configuration space.
    """
    rng = random.Random(f"cubes:{seed}")
    report = AxiomReport(subject=f"little cubes, {count} random instances", horizon=max_arity)
    for index in range(count):
        n = rng.randint(1, max_dim)
        O = Cubes(n)
        laws = operad_axiom_checks(O)
        k = rng.randint(0, max_arity)
        js = [rng.randint(0, max_arity) for _ in range(k)]
        c = random_cube_element(rng, n, k)
        ds = [random_cube_element(rng, n, j) for j in js]
        es = [random_cube_element(rng, n, rng.randint(0, 2)) for _ in range(sum(js))]
        s = _random_perm(rng, k)
        ts = [_random_perm(rng, j) for j in js]
        tag = (index, n, k, tuple(js))
        report.expect(laws["associativity"](c, *ds, *es), "associativity", tag)
        report.expect(laws["equivariance_outer"](c, s, *ds), "equivariance_outer", tag)
        report.expect(laws["equivariance_inner"](c, *ds, *ts), "equivariance_inner", tag)
        report.expect(laws["left_unit"](c) and laws["right_unit"](c), "unit", tag)
        composite = O.gamma(c, ds)
        samples = [tuple(Fraction(rng.randint(1, 15), 16) for _ in range(n)) for _ in range(10)]
        report.expect(_evaluate(composite, samples) == pointwise_gamma(c, ds, samples),
                      "pointwise", tag)
        report.expect(suspend(composite) == Cubes(n + 1).gamma(suspend(c), [suspend(d) for d in ds]),
                      "suspension", tag)
        report.expect(in_configuration_space(center_eval(composite), n), "configuration", tag)
    return report


def random_disc_instances(count=200, seed=0, max_dim=3, max_arity=3):
    """Associativity of disc composition and its compatibility with conjugation."""
    rng = random.Random(f"discs:{seed}")
    report = AxiomReport(subject=f"little discs, {count} random instances", horizon=max_arity)
    for index in range(count):
        n = rng.randint(1, max_dim)
        O = Discs(n)
        k = rng.randint(1, max_arity)
        js = [rng.randint(1, max_arity) for _ in range(k)]
        c = random_disc_element(rng, n, k)
        ds = [random_disc_element(rng, n, j) for j in js]
        es = [random_disc_element(rng, n, rng.randint(1, 2)) for _ in range(sum(js))]
        tag = (index, n, k, tuple(js))
        report.expect(operad_axiom_checks(O)["associativity"](c, *ds, *es), "associativity", tag)
        g = SignedPerm(_random_perm(rng, n), tuple(rng.choice((1, -1)) for _ in range(n)))
        lhs = disc_conjugate(g, O.gamma(c, ds))
        rhs = O.gamma(disc_conjugate(g, c), [disc_conjugate(g, d) for d in ds])
        report.expect(lhs == rhs, "conjugation", tag)
    return report
