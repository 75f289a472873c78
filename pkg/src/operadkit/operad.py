"""Finite symmetric operads: representation, built-in families, morphisms and
exhaustive (budgeted) verification of the operad laws.

Conventions.  Levels carry a right action of the symmetric group.  For the
endomorphism operad ``(f . s)(x) = f(s . x)`` where ``s . x`` is the left
action on tuples from :func:`operadkit.perm.act_on_tuple`.  All built-ins are
compatible with that model, which fixes the two equivariance laws::

    gamma(c . s; d_1..d_k)          = gamma(c; d_{s^-1(1)}..d_{s^-1(k)}) . s<j_1..j_k>
    gamma(c; d_1 . t_1, .., d_k . t_k) = gamma(c; d_1..d_k) . (t_1 + .. + t_k)

with ``s<j>`` the block permutation moving block r to slot s(r).
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass
from typing import Any, Callable

import numpy as np

from . import _vec as V
from . import perm as P
from .config import DEFAULT_SAMPLES, DEFAULT_SEED, enumeration_budget
from .errors import ArityOverflow, EnumerationBudget, OperadKitError, ShapeMismatch
from .order import order_key, sorted_by_key
from .report import AxiomReport


class MissingEntry(OperadKitError):
    """An in-bound structure-map entry is absent from a table."""


def lex_sequences(j):
    """All Q = (q_1..q_k) with 1 <= q_r <= j_r, in lexicographic order."""
    return list(itertools.product(*(range(1, n + 1) for n in j)))


def compositions(total_max, k):
    """Tuples of k non-negative integers with sum <= total_max."""
    if k == 0:
        yield ()
        return
    for first in range(total_max + 1):
        for rest in compositions(total_max - first, k - 1):
            yield (first,) + rest


# ---------------------------------------------------------------------------
# Operads


class SymOperad:
    """Base class: a reduced symmetric operad truncated at ``max_arity``.

    Subclasses supply ``arity``, ``size``, ``_enumerate``, ``random_element``,
    ``_act``, ``_gamma``, ``contains`` and ``identity``/``zero``.
    """

    name: str = "operad"
    max_arity: int = 4
    identity: Any = None
    zero: Any = None

    def __init__(self):
        self._gamma_cache = {}
        self._act_cache = {}
        self._levels = {}

    # -- level access --------------------------------------------------
    def elements(self, j, budget=None):
        if j < 0 or j > self.max_arity:
            raise ArityOverflow(f"{self.name}: arity {j} outside 0..{self.max_arity}")
        if j not in self._levels:
            limit = enumeration_budget(budget)
            if self.size(j) > limit:
                raise EnumerationBudget(
                    f"{self.name}({j}) has {self.size(j)} elements, budget {limit}"
                )
            self._levels[j] = tuple(sorted_by_key(self._enumerate(j)))
        return self._levels[j]

    def random_element(self, j, rng):
        return rng.choice(self.elements(j))

    def contains(self, x, j):
        try:
            return self.arity(x) == j and x in set(self.elements(j))
        except (TypeError, ValueError, KeyError, IndexError):
            return False

    # -- structure maps ------------------------------------------------
    def act(self, c, s):
        key = (c, s)
        hit = self._act_cache.get(key)
        if hit is None:
            hit = self._act(c, s)
            self._act_cache[key] = hit
        return hit

    def gamma(self, c, ds):
        ds = tuple(ds)
        key = (c, ds)
        hit = self._gamma_cache.get(key)
        if hit is None:
            k = self.arity(c)
            if len(ds) != k:
                raise ShapeMismatch(f"{self.name}: outer arity {k} given {len(ds)} inputs")
            total = sum(self.arity(d) for d in ds)
            if total > self.max_arity or k > self.max_arity:
                raise ArityOverflow(
                    f"{self.name}: composite arity {total} exceeds {self.max_arity}"
                )
            hit = self._gamma(c, ds)
            if len(self._gamma_cache) > 2_000_000:
                self._gamma_cache.clear()
            self._gamma_cache[key] = hit
        return hit

    def degeneracy(self, c, i):
        """sigma_i(c) = gamma(c; id^(i-1), *, id^(j-i)) for 1 <= i <= j."""
        j = self.arity(c)
        ins = [self.identity] * j
        ins[i - 1] = self.zero
        return self.gamma(c, tuple(ins))

    # -- batched evaluation --------------------------------------------
    # Subclasses that can evaluate many instances at once set ``batched``
    # and implement the vec_* methods; the axiom checker uses them.
    batched = False

    def vec_valid(self, batch):
        return None

    def __repr__(self):
        return f"<{type(self).__name__} {self.name} A={self.max_arity}>"


class TabulatedOperad(SymOperad):
    """An operad given by explicit finite tables (e.g. parsed from JSON)."""

    def __init__(self, name, max_arity, levels, identity, action, gamma_table):
        super().__init__()
        self.name = name
        self.max_arity = max_arity
        self.levels = {j: tuple(sorted_by_key(levels[j])) for j in levels}
        self._arity = {}
        for j, els in self.levels.items():
            for x in els:
                if x in self._arity:
                    raise ShapeMismatch(f"element {x!r} appears in two levels")
                self._arity[x] = j
        if len(self.levels.get(0, ())) != 1:
            raise ShapeMismatch("level 0 must be a singleton (reduced operad)")
        self.zero = self.levels[0][0]
        self.identity = identity
        self.action = dict(action)
        self.gamma_table = dict(gamma_table)

    def arity(self, c):
        try:
            return self._arity[c]
        except KeyError:
            raise KeyError(f"{c!r} is not an element of {self.name}") from None

    def size(self, j):
        return len(self.levels.get(j, ()))

    def _enumerate(self, j):
        return self.levels.get(j, ())

    def contains(self, x, j):
        return self._arity.get(x) == j

    def _act(self, c, s):
        if s == P.identity(len(s)):
            return self.action.get((c, s), c)
        try:
            return self.action[(c, s)]
        except KeyError:
            raise MissingEntry(f"no action entry for {c!r}.{s!r}") from None

    def _gamma(self, c, ds):
        try:
            return self.gamma_table[(c, ds)]
        except KeyError:
            raise MissingEntry(f"no gamma entry for {c!r}; {ds!r}") from None

    def with_gamma_entry(self, key, result):
        table = dict(self.gamma_table)
        table[key] = result
        return TabulatedOperad(
            self.name + "*", self.max_arity, self.levels, self.identity, self.action, table
        )

    batched = True

    def _ids(self, j):
        if not hasattr(self, "_id_maps"):
            self._id_maps = {}
        if j not in self._id_maps:
            self._id_maps[j] = {x: i for i, x in enumerate(self.levels.get(j, ()))}
        return self._id_maps[j]

    def vec_all(self, j):
        return np.arange(self.size(j), dtype=np.int64)

    def vec_sample(self, j, count, rng):
        return rng.integers(0, self.size(j), count)

    def vec_identity(self, count):
        return np.full(count, self._ids(1)[self.identity], dtype=np.int64)

    def vec_item(self, batch, i, j):
        return self.levels[j][int(batch[i])]

    def vec_valid(self, batch):
        return batch >= 0

    def vec_act(self, C, S, j):
        if not hasattr(self, "_vact"):
            self._vact = {}
        if j not in self._vact:
            ids = self._ids(j)
            perms = P.all_perms(j)
            T = np.full((self.size(j), len(perms)), -1, dtype=np.int64)
            for a, c in enumerate(self.levels.get(j, ())):
                for b, s in enumerate(perms):
                    try:
                        T[a, b] = ids[self._act(c, s)]
                    except (MissingEntry, KeyError):
                        pass
            self._vact[j] = T
        return _lookup(self._vact[j], [C, V.perm_ids(S)])

    def vec_gamma(self, C, Ds, k, js):
        if not hasattr(self, "_vgamma"):
            self._vgamma = {}
        key = (k, tuple(js))
        if key not in self._vgamma:
            dims = [self.size(k)] + [self.size(j) for j in js]
            T = np.full(dims, -1, dtype=np.int64)
            out_ids = self._ids(sum(js))
            levels = [self.levels[k]] + [self.levels[j] for j in js]
            for idx in itertools.product(*(range(d) for d in dims)):
                c = levels[0][idx[0]]
                ds = tuple(levels[r + 1][idx[r + 1]] for r in range(k))
                res = self.gamma_table.get((c, ds))
                if res is not None and res in out_ids:
                    T[idx] = out_ids[res]
            self._vgamma[key] = T
        return _lookup(self._vgamma[key], [C] + list(Ds))


def _lookup(table, index_arrays):
    bad = np.zeros(len(index_arrays[0]), dtype=bool)
    for a in index_arrays:
        bad |= a < 0
    safe = [np.where(a < 0, 0, a) for a in index_arrays]
    out = table[tuple(safe)]
    return np.where(bad, -1, out)


class CommOperad(SymOperad):
    """N(j) = * for all j: algebras are commutative monoids."""

    def __init__(self, max_arity=4):
        super().__init__()
        self.name = "comm"
        self.max_arity = max_arity
        self.identity = ("*", 1)
        self.zero = ("*", 0)

    def arity(self, c):
        return c[1]

    def size(self, j):
        return 1

    def _enumerate(self, j):
        return [("*", j)]

    def random_element(self, j, rng):
        return ("*", j)

    def contains(self, x, j):
        return x == ("*", j)

    def _act(self, c, s):
        return c

    def _gamma(self, c, ds):
        return ("*", sum(d[1] for d in ds))

    batched = True

    def vec_all(self, j):
        return np.zeros(1, dtype=np.int8)

    def vec_sample(self, j, count, rng):
        return np.zeros(count, dtype=np.int8)

    def vec_identity(self, count):
        return np.zeros(count, dtype=np.int8)

    def vec_item(self, batch, i, j):
        return ("*", j)

    def vec_act(self, C, S, j):
        return C

    def vec_gamma(self, C, Ds, k, js):
        return C


class _PermBatches:
    """Batches of (w, j) permutation stacks: w = 1 for assoc, m+1 for D_m."""

    batched = True
    width = 1

    def vec_all(self, j):
        perms = V.all_perm_array(j)
        idx = V.product_indices([len(perms)] * self.width, 0, len(perms) ** self.width)
        return np.stack([perms[i] for i in idx], axis=1)

    def vec_sample(self, j, count, rng):
        return np.stack([V.random_perms(rng, count, j) for _ in range(self.width)], axis=1)

    def vec_identity(self, count):
        return np.ones((count, self.width, 1), dtype=np.int16)

    def vec_act(self, C, S, j):
        if j == 0:
            return C
        idx = np.broadcast_to(S[:, None, :].astype(np.int64) - 1, C.shape)
        return np.take_along_axis(C, idx, axis=2)

    def vec_gamma(self, C, Ds, k, js):
        # gamma(c; d) = block_perm(c, j) o (d_1 + .. + d_k)
        total = sum(js)
        if total == 0:
            return np.zeros((C.shape[0], self.width, 0), dtype=np.int16)
        bp = V.block_perm_rows(C, js)
        ds = V.direct_sum_rows([D for D in Ds if D.shape[-1]])
        return np.take_along_axis(bp, ds.astype(np.int64) - 1, axis=2)


def assoc_gamma(c, ds):
    sizes = tuple(len(d) for d in ds)
    inv = P.inverse(c)
    summed = P.direct_sum([ds[inv[s] - 1] for s in range(len(c))])
    return P.compose(summed, P.block_perm(c, sizes))


class AssocOperad(_PermBatches, SymOperad):
    """M(j) = Sigma_j with gamma by block permutation: algebras are monoids.

    The element ``c`` acts on a monoid by ``x_{c^-1(1)} ... x_{c^-1(j)}``.
    """

    def __init__(self, max_arity=4):
        super().__init__()
        self.name = "assoc"
        self.max_arity = max_arity
        self.identity = (1,)
        self.zero = ()

    def arity(self, c):
        return len(c)

    def size(self, j):
        return math.factorial(j)

    def _enumerate(self, j):
        return P.all_perms(j)

    def random_element(self, j, rng):
        p = list(range(1, j + 1))
        rng.shuffle(p)
        return tuple(p)

    def contains(self, x, j):
        return isinstance(x, tuple) and len(x) == j and sorted(x) == list(range(1, j + 1))

    def _act(self, c, s):
        return P.compose(c, s)

    def _gamma(self, c, ds):
        return assoc_gamma(c, ds)

    def vec_item(self, batch, i, j):
        return tuple(int(v) for v in batch[i, 0])


@dataclass(frozen=True)
class BasedFinSet:
    elements: tuple
    basepoint: Any = "0"

    def __post_init__(self):
        object.__setattr__(self, "elements", tuple(self.elements))
        if self.basepoint not in self.elements:
            raise ValueError("basepoint must be a member of the set")
        if len(set(self.elements)) != len(self.elements):
            raise ValueError("duplicate elements")


@dataclass(frozen=True)
class UnderS0FinSet:
    elements: tuple
    zero: Any = "0"
    one: Any = "1"

    def __post_init__(self):
        object.__setattr__(self, "elements", tuple(self.elements))
        if self.zero == self.one:
            raise ValueError("0 and 1 must differ")
        if self.zero not in self.elements or self.one not in self.elements:
            raise ValueError("0 and 1 must be members")

    def based_at(self, point):
        return BasedFinSet(self.elements, point)


class EndoOperad(SymOperad):
    """End_X: based maps X^j -> X, gamma(g; f..) = g o (f_1 x .. x f_k).

    An element is ``(j, outputs)`` with ``outputs`` listing f(x) for x in
    X^j in ``itertools.product`` order.  Based means f(0,..,0) = 0; End_X(0)
    is the inclusion of the basepoint.
    """

    def __init__(self, X: BasedFinSet, max_arity=4):
        super().__init__()
        self.X = X
        self.name = "endo:" + ",".join(map(str, X.elements))
        self.max_arity = max_arity
        self._n = len(X.elements)
        self._index = {x: i for i, x in enumerate(X.elements)}
        self._base_index = self._index[X.basepoint]
        self.identity = (1, tuple(X.elements))
        self.zero = (0, (X.basepoint,))
        self._domains = {}

    def domain(self, j):
        if j not in self._domains:
            self._domains[j] = tuple(itertools.product(self.X.elements, repeat=j))
        return self._domains[j]

    def position(self, xs):
        i = 0
        for x in xs:
            i = i * self._n + self._index[x]
        return i

    def _based_position(self, j):
        return sum(self._base_index * self._n**e for e in range(j))

    def arity(self, c):
        return c[0]

    def size(self, j):
        return self._n ** (self._n**j - 1)

    def _enumerate(self, j):
        npts = self._n**j
        bp = self._based_position(j)
        for rest in itertools.product(self.X.elements, repeat=npts - 1):
            outs = rest[:bp] + (self.X.basepoint,) + rest[bp:]
            yield (j, outs)

    def random_element(self, j, rng):
        npts = self._n**j
        outs = [rng.choice(self.X.elements) for _ in range(npts)]
        outs[self._based_position(j)] = self.X.basepoint
        return (j, tuple(outs))

    def contains(self, x, j):
        try:
            jj, outs = x
        except (TypeError, ValueError):
            return False
        return (
            jj == j
            and len(outs) == self._n**j
            and all(o in self._index for o in outs)
            and outs[self._based_position(j)] == self.X.basepoint
        )

    def evaluate(self, f, xs):
        return f[1][self.position(xs)]

    def _act(self, c, s):
        j, outs = c
        return (j, tuple(outs[self.position(P.act_on_tuple(s, x))] for x in self.domain(j)))

    def _gamma(self, g, fs):
        sizes = [f[0] for f in fs]
        total = sum(sizes)
        outs = []
        for x in self.domain(total):
            ys = []
            off = 0
            for f, n in zip(fs, sizes):
                ys.append(f[1][self.position(x[off : off + n])])
                off += n
            outs.append(g[1][self.position(ys)])
        return (total, tuple(outs))

    batched = True

    def _point_codes(self, j):
        # digits of every point of X^j, most significant first
        npts = self._n**j
        codes = np.arange(npts, dtype=np.int64)
        cols = [(codes // self._n ** (j - 1 - p)) % self._n for p in range(j)]
        return np.stack(cols, axis=1) if cols else np.zeros((npts, 0), dtype=np.int64)

    def vec_all(self, j):
        size = self.size(j)
        npts = self._n**j
        free = npts - 1
        flat = np.arange(size, dtype=np.int64)
        cols = [(flat // self._n ** (free - 1 - p)) % self._n for p in range(free)]
        bp = self._based_position(j)
        cols.insert(bp, np.full(size, self._base_index, dtype=np.int64))
        # (only the free positions vary; the based one is pinned)
        return np.stack(cols, axis=1).astype(np.int8)

    def vec_sample(self, j, count, rng):
        out = rng.integers(0, self._n, (count, self._n**j)).astype(np.int8)
        out[:, self._based_position(j)] = self._base_index
        return out

    def vec_identity(self, count):
        return np.tile(np.arange(self._n, dtype=np.int8), (count, 1))

    def vec_item(self, batch, i, j):
        return (j, tuple(self.X.elements[int(v)] for v in batch[i]))

    def vec_act(self, C, S, j):
        if not hasattr(self, "_vact"):
            self._vact = {}
        if j not in self._vact:
            self._vact[j] = np.array(
                [[self.position(P.act_on_tuple(s, x)) for x in self.domain(j)]
                 for s in P.all_perms(j)],
                dtype=np.int64,
            ).reshape(len(P.all_perms(j)), self._n**j)
        maps = self._vact[j][V.perm_ids(S)]
        return np.take_along_axis(C, maps, axis=1)

    def vec_gamma(self, C, Ds, k, js):
        if not hasattr(self, "_vgamma"):
            self._vgamma = {}
        key = tuple(js)
        if key not in self._vgamma:
            digits = self._point_codes(sum(js))
            blocks, off = [], 0
            for n in js:
                w = self._n ** np.arange(n - 1, -1, -1, dtype=np.int64)
                blocks.append((digits[:, off : off + n] * w).sum(axis=1))
                off += n
            self._vgamma[key] = blocks
        blocks = self._vgamma[key]
        npts = self._n ** sum(js)
        gidx = np.zeros((C.shape[0], npts), dtype=np.int64)
        for r, (D, b) in enumerate(zip(Ds, blocks)):
            gidx += D[:, b].astype(np.int64) * self._n ** (k - 1 - r)
        return np.take_along_axis(C, gidx, axis=1)


class ProductOperad(SymOperad):
    """Componentwise product with diagonal symmetric-group action."""

    def __init__(self, left: SymOperad, right: SymOperad, max_arity=None):
        super().__init__()
        self.left, self.right = left, right
        self.name = f"product:{left.name},{right.name}"
        self.max_arity = (
            min(left.max_arity, right.max_arity) if max_arity is None else max_arity
        )
        self.identity = (left.identity, right.identity)
        self.zero = (left.zero, right.zero)

    def arity(self, c):
        return self.left.arity(c[0])

    def size(self, j):
        return self.left.size(j) * self.right.size(j)

    def _enumerate(self, j):
        return itertools.product(self.left.elements(j), self.right.elements(j))

    def random_element(self, j, rng):
        return (self.left.random_element(j, rng), self.right.random_element(j, rng))

    def contains(self, x, j):
        return (
            isinstance(x, tuple)
            and len(x) == 2
            and self.left.contains(x[0], j)
            and self.right.contains(x[1], j)
        )

    def _act(self, c, s):
        return (self.left.act(c[0], s), self.right.act(c[1], s))

    def _gamma(self, c, ds):
        return (
            self.left.gamma(c[0], tuple(d[0] for d in ds)),
            self.right.gamma(c[1], tuple(d[1] for d in ds)),
        )

    @property
    def projections(self):
        return (
            OperadMorphism(self, self.left, lambda c: c[0], name="pi1"),
            OperadMorphism(self, self.right, lambda c: c[1], name="pi2"),
        )

    @property
    def batched(self):
        return self.left.batched and self.right.batched

    def vec_all(self, j):
        a, b = self.left.vec_all(j), self.right.vec_all(j)
        ia, ib = V.product_indices([V.length(a), V.length(b)], 0, V.length(a) * V.length(b))
        return (V.take(a, ia), V.take(b, ib))

    def vec_sample(self, j, count, rng):
        return (self.left.vec_sample(j, count, rng), self.right.vec_sample(j, count, rng))

    def vec_identity(self, count):
        return (self.left.vec_identity(count), self.right.vec_identity(count))

    def vec_item(self, batch, i, j):
        return (self.left.vec_item(batch[0], i, j), self.right.vec_item(batch[1], i, j))

    def vec_valid(self, batch):
        a, b = self.left.vec_valid(batch[0]), self.right.vec_valid(batch[1])
        if a is None:
            return b
        return a if b is None else a & b

    def vec_act(self, C, S, j):
        return (self.left.vec_act(C[0], S, j), self.right.vec_act(C[1], S, j))

    def vec_gamma(self, C, Ds, k, js):
        return (
            self.left.vec_gamma(C[0], [D[0] for D in Ds], k, js),
            self.right.vec_gamma(C[1], [D[1] for D in Ds], k, js),
        )


class BarrattEcclesOperad(_PermBatches, SymOperad):
    """The m-simplices of the Barratt-Eccles operad: D_m(j) = (Sigma_j)^(m+1).

    Sigma_j acts diagonally and gamma is the block-permutation composition in
    each coordinate.
    """

    def __init__(self, level=0, max_arity=4):
        super().__init__()
        if level < 0:
            raise ValueError("level must be >= 0")
        self.level = level
        self.name = f"be:{level}"
        self.width = level + 1
        self.max_arity = max_arity
        self.identity = ((1,),) * (level + 1)
        self.zero = ((),) * (level + 1)

    def arity(self, c):
        return len(c[0])

    def size(self, j):
        return math.factorial(j) ** (self.level + 1)

    def _enumerate(self, j):
        return itertools.product(P.all_perms(j), repeat=self.level + 1)

    def random_element(self, j, rng):
        out = []
        for _ in range(self.level + 1):
            p = list(range(1, j + 1))
            rng.shuffle(p)
            out.append(tuple(p))
        return tuple(out)

    def contains(self, x, j):
        return (
            isinstance(x, tuple)
            and len(x) == self.level + 1
            and all(
                isinstance(p, tuple) and len(p) == j and sorted(p) == list(range(1, j + 1))
                for p in x
            )
        )

    def _act(self, c, s):
        return tuple(P.compose(p, s) for p in c)

    def _gamma(self, c, ds):
        return tuple(
            assoc_gamma(c[i], tuple(d[i] for d in ds)) for i in range(self.level + 1)
        )

    def vec_item(self, batch, i, j):
        return tuple(tuple(int(v) for v in row) for row in batch[i])


def be_face(source: BarrattEcclesOperad, i):
    """d_i: D_m -> D_{m-1}, deleting coordinate i."""
    target = BarrattEcclesOperad(source.level - 1, source.max_arity)
    return OperadMorphism(source, target, lambda c: c[:i] + c[i + 1 :], name=f"d{i}")


def be_degeneracy(source: BarrattEcclesOperad, i):
    """s_i: D_m -> D_{m+1}, repeating coordinate i."""
    target = BarrattEcclesOperad(source.level + 1, source.max_arity)
    return OperadMorphism(source, target, lambda c: c[: i + 1] + c[i:], name=f"s{i}")


def builtin_operad(kind, max_arity=4, **kw):
    """Construct a built-in operad.

    ``kind`` is one of comm, assoc, endo (``X=``), product (``left=``,
    ``right=``) or barratt_eccles (``level=``).
    """
    if kind == "comm":
        return CommOperad(max_arity)
    if kind == "assoc":
        return AssocOperad(max_arity)
    if kind == "endo":
        X = kw["X"]
        if not isinstance(X, BasedFinSet):
            X = BasedFinSet(tuple(X), X[0])
        return EndoOperad(X, max_arity)
    if kind == "product":
        left, right = kw["left"], kw["right"]
        if isinstance(left, str):
            left = parse_builtin(left, max_arity)
        if isinstance(right, str):
            right = parse_builtin(right, max_arity)
        return ProductOperad(left, right, max_arity)
    if kind in ("barratt_eccles", "be"):
        return BarrattEcclesOperad(kw.get("level", 0), max_arity)
    raise ValueError(f"unknown built-in operad {kind!r}")


def parse_builtin(name, max_arity=4):
    """Resolve names such as ``comm``, ``endo:0,a``, ``product:assoc,comm``, ``be:2``."""
    if name.startswith("builtin:"):
        name = name[len("builtin:") :]
    if name in ("comm", "assoc"):
        return builtin_operad(name, max_arity)
    if name.startswith("endo:"):
        pts = tuple(p for p in name[5:].split(",") if p)
        if not pts:
            raise ValueError("endo needs a non-empty set, e.g. endo:0,a")
        return builtin_operad("endo", max_arity, X=BasedFinSet(pts, pts[0]))
    if name.startswith("product:"):
        body = name[len("product:") :]
        left, right = _split_product(body)
        return builtin_operad(
            "product",
            max_arity,
            left=parse_builtin(left, max_arity),
            right=parse_builtin(right, max_arity),
        )
    if name.startswith("be:"):
        return builtin_operad("barratt_eccles", max_arity, level=int(name[3:]))
    raise ValueError(f"unknown built-in operad {name!r}")


def _split_product(body):
    # endo sets contain commas, so split on the first comma that closes a name
    for i, ch in enumerate(body):
        if ch == ",":
            left = body[:i]
            try:
                parse_builtin(left, 1)
            except (ValueError, IndexError):
                continue
            return left, body[i + 1 :]
    raise ValueError(f"cannot split product spec {body!r}")


def tabulate(O: SymOperad, name=None, budget=None):
    """Materialize every in-bound table entry of a (small) operad."""
    A = O.max_arity
    levels = {j: O.elements(j, budget) for j in range(A + 1)}
    action = {}
    for j in range(A + 1):
        for c in levels[j]:
            for s in P.all_perms(j):
                action[(c, s)] = O.act(c, s)
    table = {}
    for k in range(A + 1):
        for js in compositions(A, k):
            for c in levels[k]:
                for ds in itertools.product(*(levels[j] for j in js)):
                    table[(c, ds)] = O.gamma(c, ds)
    return TabulatedOperad(name or O.name, A, levels, O.identity, action, table)


# ---------------------------------------------------------------------------
# Budgeted instance enumeration


@dataclass(frozen=True)
class Factor:
    """One coordinate of a check instance: an element of O(j) or a permutation."""

    kind: str  # "elem" or "perm"
    n: int
    operad: Any = None

    def size(self):
        if self.kind == "perm":
            return math.factorial(self.n)
        return self.operad.size(self.n)

    def values(self):
        if self.kind == "perm":
            return P.all_perms(self.n)
        return self.operad.elements(self.n, budget=max(self.size(), 1))

    def sample(self, rng):
        if self.kind == "perm":
            p = list(range(1, self.n + 1))
            rng.shuffle(p)
            return tuple(p)
        return self.operad.random_element(self.n, rng)

    def vec_all(self):
        if self.kind == "perm":
            return V.all_perm_array(self.n)
        cache = self.operad.__dict__.setdefault("_vec_levels", {})
        if self.n not in cache:
            cache[self.n] = self.operad.vec_all(self.n)
        return cache[self.n]

    def vec_sample(self, rng, count):
        if self.kind == "perm":
            return V.random_perms(rng, count, self.n)
        return self.operad.vec_sample(self.n, count, rng)

    def vec_item(self, batch, i):
        if self.kind == "perm":
            return tuple(int(v) for v in batch[i])
        return self.operad.vec_item(batch, i, self.n)


def _plan(shapes, budget):
    limit = enumeration_budget(budget)
    sized = []
    for label, factors in shapes:
        count = math.prod(f.size() for f in factors)
        if count:
            sized.append((count, order_key(label), label, factors))
    sized.sort(key=lambda t: (t[0], t[1]))
    spent = 0
    for count, _, label, factors in sized:
        exhaustive = spent + count <= limit
        if exhaustive:
            spent += count
        yield label, factors, count, exhaustive
    return limit


def run_shapes(report, axiom, shapes, check, budget=None, samples=DEFAULT_SAMPLES, seed=DEFAULT_SEED):
    """Evaluate ``check(*instance) -> bool`` over every shape.

    ``shapes`` is a list of ``(label, [Factor, ...])``.  Shapes are visited in
    order of size; they are enumerated exhaustively while the cumulative
    count stays within ``budget`` and are sampled (``samples`` seeded random
    instances each) afterwards, the remainder being counted as unchecked.
    A failing instance is recorded as ``(axiom, instance)``.
    """
    sampled = 0
    for label, factors, count, exhaustive in _plan(shapes, budget):
        if exhaustive:
            for inst in itertools.product(*(f.values() for f in factors)):
                _guarded(report, axiom, check, inst)
        else:
            sampled += 1
            rng = random.Random(f"{seed}:{axiom}:{label!r}")
            n = min(samples, count)
            for _ in range(n):
                _guarded(report, axiom, check, tuple(f.sample(rng) for f in factors))
            report.skip(count - n)
    if sampled:
        report.notes.append(f"{axiom}: {sampled} shape(s) sampled beyond the budget")
    return report


def _guarded(report, axiom, check, inst):
    try:
        ok = check(*inst)
    except (ArityOverflow, MissingEntry):
        report.skip()
        return
    report.expect(ok, axiom, inst)


CHUNK = 1 << 15


def run_shapes_batched(report, axiom, shapes, check, budget=None, samples=DEFAULT_SAMPLES,
                       seed=DEFAULT_SEED):
    """Batched twin of :func:`run_shapes`.

    ``check(label, args)`` receives one batch per factor and returns
    ``(ok, valid)`` boolean arrays; ``valid`` may be None.
    """
    sampled = 0
    for label, factors, count, exhaustive in _plan(shapes, budget):
        if exhaustive:
            full = [f.vec_all() for f in factors]
            sizes = [V.length(b) for b in full]
            for lo in range(0, count, CHUNK):
                idx = V.product_indices(sizes, lo, min(count, lo + CHUNK))
                args = [V.take(b, i) for b, i in zip(full, idx)]
                _tally(report, axiom, factors, args, check(label, args))
        else:
            sampled += 1
            n = min(samples, count)
            rng = V.rng_for(seed, axiom, label)
            args = [f.vec_sample(rng, n) for f in factors]
            _tally(report, axiom, factors, args, check(label, args))
            report.skip(count - n)
    if sampled:
        report.notes.append(f"{axiom}: {sampled} shape(s) sampled beyond the budget")
    return report


def _tally(report, axiom, factors, args, result):
    ok, valid = result
    if valid is None:
        valid = np.ones(len(ok), dtype=bool)
    report.skip(int((~valid).sum()))
    good = ok & valid
    report.checked += int(valid.sum())
    for i in np.flatnonzero(valid & ~good):
        inst = tuple(f.vec_item(b, int(i)) for f, b in zip(factors, args))
        report.fail(axiom, inst)


# ---------------------------------------------------------------------------
# Operad axioms


def _split(xs, sizes):
    out, off = [], 0
    for n in sizes:
        out.append(tuple(xs[off : off + n]))
        off += n
    return out


def operad_axiom_shapes(O: SymOperad):
    """Shapes for each family of operad laws, keyed by axiom name.

    Instances are flat tuples: the factors listed for each shape.
    """
    A = O.max_arity
    el = lambda j: Factor("elem", j, O)  # noqa: E731
    pm = lambda n: Factor("perm", n)  # noqa: E731
    shapes = {
        "sigma_unit": [((j,), [el(j)]) for j in range(A + 1)],
        "sigma_action": [((j,), [el(j), pm(j), pm(j)]) for j in range(A + 1)],
        "left_unit": [((j,), [el(j)]) for j in range(A + 1)],
        "right_unit": [((k,), [el(k)]) for k in range(A + 1)],
        "equivariance_outer": [],
        "equivariance_inner": [],
        "associativity": [],
    }
    for k in range(A + 1):
        for js in compositions(A, k):
            shapes["equivariance_outer"].append(
                ((k, js), [el(k), pm(k)] + [el(j) for j in js])
            )
            shapes["equivariance_inner"].append(
                ((k, js), [el(k)] + [el(j) for j in js] + [pm(j) for j in js])
            )
            for es in compositions(A, sum(js)):
                shapes["associativity"].append(
                    ((k, js, es), [el(k)] + [el(j) for j in js] + [el(i) for i in es])
                )
    return shapes


def operad_axiom_checks(O: SymOperad):
    """Scalar form of each law: a predicate on one flat instance."""

    def sigma_unit(c):
        return O.act(c, P.identity(O.arity(c))) == c

    def sigma_action(c, s, t):
        return O.act(O.act(c, s), t) == O.act(c, P.compose(s, t))

    def left_unit(c):
        return O.gamma(O.identity, (c,)) == c

    def right_unit(c):
        return O.gamma(c, (O.identity,) * O.arity(c)) == c

    def equivariance_outer(c, s, *ds):
        k = len(s)
        sizes = tuple(O.arity(d) for d in ds)
        inv = P.inverse(s)
        lhs = O.gamma(O.act(c, s), ds)
        rhs = O.act(
            O.gamma(c, tuple(ds[inv[r] - 1] for r in range(k))), P.block_perm(s, sizes)
        )
        return lhs == rhs

    def equivariance_inner(c, *rest):
        k = O.arity(c)
        ds, ts = rest[:k], rest[k:]
        lhs = O.gamma(c, tuple(O.act(d, t) for d, t in zip(ds, ts)))
        return lhs == O.act(O.gamma(c, ds), P.direct_sum(ts))

    def associativity(c, *rest):
        k = O.arity(c)
        ds, es = rest[:k], rest[k:]
        lhs = O.gamma(O.gamma(c, ds), es)
        blocks = _split(es, [O.arity(d) for d in ds])
        return lhs == O.gamma(c, tuple(O.gamma(d, b) for d, b in zip(ds, blocks)))

    return {
        "sigma_unit": sigma_unit,
        "sigma_action": sigma_action,
        "left_unit": left_unit,
        "right_unit": right_unit,
        "equivariance_outer": equivariance_outer,
        "equivariance_inner": equivariance_inner,
        "associativity": associativity,
    }


def _and_valid(*masks):
    out = None
    for m in masks:
        if m is None:
            continue
        out = m if out is None else out & m
    return out


def operad_axiom_batched_checks(O: SymOperad):
    """Batched form of each law; mirrors :func:`operad_axiom_checks`."""
    eq, val = V.equal_rows, O.vec_valid

    def sigma_unit(label, args):
        (C,) = args
        j = label[0]
        S = np.tile(np.arange(1, j + 1, dtype=np.int16), (V.length(C), 1))
        R = O.vec_act(C, S, j)
        return eq(R, C), _and_valid(val(C), val(R))

    def sigma_action(label, args):
        C, S, T = args
        j = label[0]
        L = O.vec_act(O.vec_act(C, S, j), T, j)
        R = O.vec_act(C, V.compose_rows(S, T), j)
        return eq(L, R), _and_valid(val(L), val(R))

    def left_unit(label, args):
        (C,) = args
        j = label[0]
        L = O.vec_gamma(O.vec_identity(V.length(C)), [C], 1, (j,))
        return eq(L, C), _and_valid(val(L), val(C))

    def right_unit(label, args):
        (C,) = args
        k = label[0]
        n = V.length(C)
        L = O.vec_gamma(C, [O.vec_identity(n) for _ in range(k)], k, (1,) * k)
        return eq(L, C), _and_valid(val(L), val(C))

    def equivariance_outer(label, args):
        k, js = label
        C, S, Ds = args[0], args[1], args[2:]
        n = V.length(C)
        ok = np.ones(n, dtype=bool)
        valid = np.ones(n, dtype=bool)
        sid = V.perm_ids(S) if k else np.zeros(n, dtype=np.int64)
        for pid, s in enumerate(P.all_perms(k)):
            rows = np.flatnonzero(sid == pid)
            if not len(rows):
                continue
            c, ss = V.take(C, rows), S[rows]
            ds = [V.take(D, rows) for D in Ds]
            inv = P.inverse(s)
            lhs = O.vec_gamma(O.vec_act(c, ss, k), ds, k, js)
            moved = [ds[inv[r] - 1] for r in range(k)]
            mjs = tuple(js[inv[r] - 1] for r in range(k))
            bp = np.tile(np.array(P.block_perm(s, js), dtype=np.int16), (len(rows), 1))
            rhs = O.vec_act(O.vec_gamma(c, moved, k, mjs), bp, sum(js))
            ok[rows] = eq(lhs, rhs)
            v = _and_valid(val(lhs), val(rhs))
            if v is not None:
                valid[rows] = v
        return ok, valid

    def equivariance_inner(label, args):
        k, js = label
        C, Ds, Ts = args[0], args[1 : k + 1], args[k + 1 :]
        n = V.length(C)
        acted = [O.vec_act(D, T, j) for D, T, j in zip(Ds, Ts, js)]
        lhs = O.vec_gamma(C, acted, k, js)
        tsum = V.direct_sum_rows([T for T in Ts if T.shape[1]])
        if tsum is None:
            tsum = np.zeros((n, 0), dtype=np.int16)
        rhs = O.vec_act(O.vec_gamma(C, list(Ds), k, js), tsum, sum(js))
        return eq(lhs, rhs), _and_valid(val(lhs), val(rhs), *map(val, acted))

    def associativity(label, args):
        k, js, es = label
        C, Ds, Es = args[0], args[1 : k + 1], args[k + 1 :]
        inner = O.vec_gamma(C, list(Ds), k, js)
        lhs = O.vec_gamma(inner, list(Es), sum(js), es)
        parts, off = [], 0
        for D, j in zip(Ds, js):
            block = list(Es[off : off + j])
            parts.append(O.vec_gamma(D, block, j, es[off : off + j]))
            off += j
        rhs = O.vec_gamma(C, parts, k, tuple(sum(es[o : o + j]) for o, j in _offsets(js)))
        return eq(lhs, rhs), _and_valid(val(inner), val(lhs), val(rhs), *map(val, parts))

    return {
        "sigma_unit": sigma_unit,
        "sigma_action": sigma_action,
        "left_unit": left_unit,
        "right_unit": right_unit,
        "equivariance_outer": equivariance_outer,
        "equivariance_inner": equivariance_inner,
        "associativity": associativity,
    }


def _offsets(js):
    off = 0
    for j in js:
        yield off, j
        off += j


AXIOMS = (
    "sigma_unit",
    "sigma_action",
    "left_unit",
    "right_unit",
    "equivariance_outer",
    "equivariance_inner",
    "associativity",
)


def check_operad_axioms(O: SymOperad, budget=None, samples=DEFAULT_SAMPLES, seed=DEFAULT_SEED,
                        batched=None):
    """Check unit, associativity, both equivariance laws and the action laws.

    Every failing instance is recorded as ``(axiom, instance)``, the instance
    being the flat tuple of factors of its shape (see
    :func:`operad_axiom_shapes`).  Instances whose table entries are missing,
    and instances skipped because a shape exceeds the budget, count as
    unchecked rather than failing.
    """
    report = AxiomReport(subject=f"operad {O.name}", horizon=O.max_arity)
    if O.size(0) != 1:
        report.fail("reduced", (O.size(0),))
    shapes = operad_axiom_shapes(O)
    use_batches = O.batched if batched is None else batched
    if use_batches:
        checks = operad_axiom_batched_checks(O)
        for axiom in AXIOMS:
            run_shapes_batched(report, axiom, shapes[axiom], checks[axiom], budget, samples, seed)
    else:
        checks = operad_axiom_checks(O)
        for axiom in AXIOMS:
            run_shapes(report, axiom, shapes[axiom], checks[axiom], budget, samples, seed)
    return report


def replay_operad_witness(O: SymOperad, axiom, instance):
    """Re-evaluate one recorded instance; True means the law holds there."""
    if axiom == "reduced":
        return O.size(0) == 1
    return bool(operad_axiom_checks(O)[axiom](*instance))


# ---------------------------------------------------------------------------
# Morphisms and algebras


@dataclass
class OperadMorphism:
    source: SymOperad
    target: SymOperad
    fn: Callable[[Any], Any]
    name: str = "f"

    def __call__(self, c):
        return self.fn(c)


def identity_morphism(O):
    return OperadMorphism(O, O, lambda c: c, name="id")


def to_comm(O):
    """The unique map to comm, c -> *_j."""
    return OperadMorphism(O, CommOperad(O.max_arity), lambda c: ("*", O.arity(c)),
                          name=f"{O.name}->comm")


def named_morphism(spec, max_arity=4):
    """``id:<operad>``, ``comm:<operad>`` (the map to comm) or ``pi1:``/``pi2:<product>``."""
    kind, _, body = spec.partition(":")
    if not body:
        raise ValueError(f"morphism spec {spec!r} needs a source, e.g. comm:assoc")
    O = parse_builtin(body, max_arity)
    if kind == "id":
        return identity_morphism(O)
    if kind == "comm":
        return to_comm(O)
    if kind in ("pi1", "pi2") and isinstance(O, ProductOperad):
        return O.projections[int(kind[2]) - 1]
    raise ValueError(f"unknown morphism {spec!r}")


def compose_morphisms(g: OperadMorphism, f: OperadMorphism):
    return OperadMorphism(f.source, g.target, lambda c: g.fn(f.fn(c)), name=f"{g.name}.{f.name}")


def check_morphism(f: OperadMorphism, budget=None, samples=DEFAULT_SAMPLES, seed=DEFAULT_SEED):
    """Check that f preserves the identity, the symmetric actions and gamma."""
    S, T = f.source, f.target
    if S.max_arity != T.max_arity:
        raise ShapeMismatch(
            f"arity bounds differ: {S.name} has {S.max_arity}, {T.name} has {T.max_arity}"
        )
    A = S.max_arity
    report = AxiomReport(subject=f"morphism {f.name}: {S.name} -> {T.name}", horizon=A)

    def image(c):
        try:
            return f.fn(c)
        except (KeyError, IndexError) as exc:
            raise ShapeMismatch(f"{f.name} undefined on {c!r}") from exc

    report.expect(image(S.identity) == T.identity, "identity", (S.identity,))

    checks = morphism_checks(f, image)
    el = lambda j: Factor("elem", j, S)  # noqa: E731
    shapes = {
        "membership": [((j,), [el(j)]) for j in range(A + 1)],
        "equivariance": [((j,), [el(j), Factor("perm", j)]) for j in range(A + 1)],
        "gamma": [((k, js), [el(k)] + [el(j) for j in js])
                  for k in range(A + 1) for js in compositions(A, k)],
    }
    for axiom in ("membership", "equivariance", "gamma"):
        run_shapes(report, axiom, shapes[axiom], checks[axiom], budget, samples, seed)
    return report


def morphism_checks(f: OperadMorphism, image=None):
    """Predicates on flat instances for the morphism laws."""
    S, T = f.source, f.target
    image = image or f.fn

    def membership(c):
        return T.contains(image(c), S.arity(c))

    def equivariance(c, s):
        return image(S.act(c, s)) == T.act(image(c), s)

    def gamma(c, *ds):
        return image(S.gamma(c, ds)) == T.gamma(image(c), tuple(image(d) for d in ds))

    return {"membership": membership, "equivariance": equivariance, "gamma": gamma}


def action_to_morphism(O: SymOperad, X: BasedFinSet, theta):
    """The adjoint O -> End_X of an action theta(c, xs)."""
    E = EndoOperad(X, O.max_arity)

    def fn(c):
        j = O.arity(c)
        return (j, tuple(theta(c, xs) for xs in E.domain(j)))

    return OperadMorphism(O, E, fn, name="theta")


def check_algebra(O: SymOperad, X: BasedFinSet, theta, budget=None, samples=DEFAULT_SAMPLES,
                  seed=DEFAULT_SEED):
    """theta(c, xs) -> X is an O-action iff its adjoint is an operad map into End_X."""
    if isinstance(theta, dict):
        table = theta
        theta = lambda c, xs: table[(c, tuple(xs))]  # noqa: E731
    report = check_morphism(action_to_morphism(O, X, theta), budget, samples, seed)
    report.subject = f"algebra {O.name} on {{{','.join(map(str, X.elements))}}}"
    report.expect(theta(O.zero, ()) == X.basepoint, "basepoint", (O.zero,))
    return report


def action_from_morphism(f: OperadMorphism):
    """Inverse of :func:`action_to_morphism`."""
    E = f.target

    def theta(c, xs):
        return E.evaluate(f.fn(c), tuple(xs))

    return theta
