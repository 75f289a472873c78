"""Free-algebra monads of an operad on finite carriers.

A point of the free algebra is a term ``(c; x_1..x_j)`` with ``c`` in O(j),
taken modulo ``(c . s; y) ~ (c; s . y)``.  Four flavors differ in how the
special points of the carrier are treated:

=================  =========================  ==================================
flavor             carrier                    identifications
=================  =========================  ==================================
plus_unbased       plain set                  none
reduced_based      based set (0)              (c; .., 0, ..) ~ (sigma_i c; ..)
plus_smash         based set (0)              any 0 argument collapses to ZERO
reduced_under_s0   set with 0 and 1           ZERO collapse, and 1 is removed
                                              through sigma_i like 0 above
=================  =========================  ==================================

Normal forms remove special arguments and then take the orbit minimum under
:func:`operadkit.order.order_key`.
"""

import itertools
from dataclasses import dataclass
from typing import Any

from .. import perm as P
from ..config import enumeration_budget
from ..errors import ArityOverflow, EnumerationBudget, ShapeMismatch
from ..order import order_key, sorted_by_key

FLAVORS = ("plus_unbased", "reduced_based", "plus_smash", "reduced_under_s0")
FLAVOR_ALIASES = {
    "u+": "plus_unbased",
    "u": "reduced_based",
    "t+": "plus_smash",
    "t": "reduced_under_s0",
}
# internal: plus_smash without the arity-0 term, used by the S^0 adjunction
NONUNITAL = "plus_smash_nonunital"


def flavor_name(flavor):
    flavor = FLAVOR_ALIASES.get(flavor, flavor)
    if flavor not in FLAVORS and flavor != NONUNITAL:
        raise ValueError(f"unknown flavor {flavor!r}")
    return flavor


class Term:
    """An immutable term ``(op; args)``; ``op is None`` marks the zero term."""

    __slots__ = ("op", "args", "_key", "_hash")

    def __init__(self, op, args=()):
        object.__setattr__(self, "op", op)
        object.__setattr__(self, "args", tuple(args))
        object.__setattr__(self, "_key", None)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("Term is immutable")

    def sort_key(self):
        if self._key is None:
            object.__setattr__(self, "_key", (order_key(self.op), order_key(self.args)))
        return self._key

    def __eq__(self, other):
        return isinstance(other, Term) and self.op == other.op and self.args == other.args

    def __hash__(self):
        if self._hash is None:
            object.__setattr__(self, "_hash", hash((self.op, self.args)))
        return self._hash

    def __lt__(self, other):
        return order_key(self) < order_key(other)

    @property
    def is_zero(self):
        return self.op is None

    @property
    def arity(self):
        return len(self.args)

    def __repr__(self):
        if self.op is None:
            return "ZERO"
        return f"({_fmt(self.op)}; {', '.join(map(_fmt, self.args))})"

    def to_json(self):
        from ..report import jsonable

        if self.op is None:
            return "ZERO"
        return {"op": jsonable(self.op), "args": [jsonable(a) for a in self.args]}


def _fmt(x):
    if isinstance(x, tuple):
        return "(" + ",".join(_fmt(y) for y in x) + ")"
    return str(x)


ZERO = Term(None, ())


@dataclass(frozen=True)
class Carrier:
    """A finite carrier with optional special points."""

    elements: tuple
    zero: Any = None
    one: Any = None

    @classmethod
    def of(cls, X):
        if isinstance(X, Carrier):
            return X
        if hasattr(X, "basepoint"):
            return cls(tuple(X.elements), X.basepoint)
        if hasattr(X, "one"):
            return cls(tuple(X.elements), X.zero, X.one)
        return cls(tuple(X))

    def __len__(self):
        return len(self.elements)


class FreeMonad:
    """The free-algebra monad of ``O`` in one flavor, truncated at ``max_arity``.

    Truncation: a term nested n deep is kept when every layer of its tree has
    at most ``max_arity`` nodes, so every flattening stays in the operad's
    tables.
    """

    def __init__(self, flavor, O, max_arity=None):
        self.flavor = flavor_name(flavor)
        self.O = O
        self.max_arity = O.max_arity if max_arity is None else max_arity
        if self.max_arity > O.max_arity:
            raise ArityOverflow(f"monad horizon {self.max_arity} exceeds {O.name}'s tables")
        self._norm_cache = {}

    def __repr__(self):
        return f"<FreeMonad {self.flavor} over {self.O.name} A={self.max_arity}>"

    # -- carriers ------------------------------------------------------
    @property
    def smash(self):
        return self.flavor in ("plus_smash", "reduced_under_s0", NONUNITAL)

    def removable(self, carrier):
        """The carrier point eliminated through degeneracies, if any."""
        if self.flavor == "reduced_based":
            return carrier.zero
        if self.flavor == "reduced_under_s0":
            return carrier.one
        return None

    def validate(self, carrier):
        if self.flavor in ("reduced_based", "plus_smash", NONUNITAL) and carrier.zero is None:
            raise ShapeMismatch(f"{self.flavor} needs a based carrier")
        if self.flavor == "reduced_under_s0" and (carrier.zero is None or carrier.one is None):
            raise ShapeMismatch("reduced_under_s0 needs a carrier with 0 and 1")

    def unit_term(self):
        return Term(self.O.zero, ())

    def image_points(self):
        """(zero, one) of the free algebra as a carrier for the next layer."""
        if self.flavor == "reduced_based":
            return self.unit_term(), None
        if self.flavor == "plus_smash":
            return ZERO, None
        if self.flavor == NONUNITAL:
            return ZERO, None
        if self.flavor == "reduced_under_s0":
            return ZERO, self.unit_term()
        return None, None

    # -- normal forms --------------------------------------------------
    def normalize(self, t, carrier, order=None):
        """Canonical representative of a raw term over ``carrier``.

        ``order`` optionally fixes the sequence of argument positions at
        which eliminations are attempted (used to test order independence).
        """
        if t.op is None:
            return ZERO
        if len(t.args) != self.O.arity(t.op):
            raise ShapeMismatch(f"{t.op!r} has arity {self.O.arity(t.op)}, got {len(t.args)} args")
        if self.smash and carrier.zero is not None and any(a == carrier.zero for a in t.args):
            return ZERO
        if order is None:
            key = (t, carrier.zero, carrier.one)
            hit = self._norm_cache.get(key)
            if hit is not None:
                return hit
        c, args = t.op, list(t.args)
        drop = self.removable(carrier)
        if drop is not None:
            if order is None:
                # eliminate from the right so earlier indices stay valid
                for i in range(len(args) - 1, -1, -1):
                    if args[i] == drop:
                        c = self.O.degeneracy(c, i + 1)
                        del args[i]
            else:
                while drop in args:
                    hits = [i for i, a in enumerate(args) if a == drop]
                    i = hits[order(len(hits))]
                    c = self.O.degeneracy(c, i + 1)
                    del args[i]
        out = self.orbit_min(c, tuple(args))
        if order is None:
            self._norm_cache[key] = out
        return out

    def orbit_min(self, c, args):
        j = len(args)
        if j <= 1:
            return Term(c, args)
        best = None
        for s in P.all_perms(j):
            cand = Term(self.O.act(c, s), P.act_on_tuple(P.inverse(s), args))
            if best is None or order_key(cand) < order_key(best):
                best = cand
        return best

    def is_normal(self, t, carrier):
        return self.normalize(t, carrier) == t

    # -- monad structure -----------------------------------------------
    def eta(self, x, carrier):
        return self.normalize(Term(self.O.identity, (x,)), carrier)

    def mu(self, tt, carrier):
        """Flatten a term of terms; ``carrier`` is the carrier of the inner terms."""
        if tt.op is None:
            return ZERO
        if any(t.op is None for t in tt.args):
            return ZERO
        c = self.O.gamma(tt.op, tuple(t.op for t in tt.args))
        args = tuple(itertools.chain.from_iterable(t.args for t in tt.args))
        return self.normalize(Term(c, args), carrier)

    def fmap(self, f, t, target):
        """C f on one term: apply f to the arguments and renormalize."""
        if t.op is None:
            return ZERO
        return self.normalize(Term(t.op, tuple(f(a) for a in t.args)), target)

    def next_carrier(self, terms):
        zero, one = self.image_points()
        return Carrier(tuple(terms), zero, one)

    # -- enumeration ---------------------------------------------------
    def _profile(self, x, depth):
        # nodes per layer of a term nested ``depth`` deep
        if depth == 0 or not isinstance(x, Term):
            return ()
        if x.op is None:
            return (0,) * depth
        out = [len(x.args)] + [0] * (depth - 1)
        for a in x.args:
            for i, n in enumerate(self._profile(a, depth - 1)):
                out[i + 1] += n
        return tuple(out)

    def enumerate(self, carrier, depth=1, budget=None):
        """Normal forms of C^depth X within the truncation, sorted.

        Returns the list of carriers ``[X, CX, ..., C^depth X]``.
        """
        carrier = Carrier.of(carrier)
        self.validate(carrier)
        limit = enumeration_budget(budget)
        chain = [carrier]
        for d in range(1, depth + 1):
            terms = self._enumerate_layer(chain[-1], d, limit)
            chain.append(self.next_carrier(terms))
        return chain

    def layer(self, inner, inner_depth=0, budget=None):
        """One layer of normal forms over ``inner``, whose elements are
        already nested ``inner_depth`` deep (possibly by another monad)."""
        inner = Carrier.of(inner)
        self.validate(inner)
        terms = self._enumerate_layer(inner, inner_depth + 1, enumeration_budget(budget))
        return self.next_carrier(terms)

    def _enumerate_layer(self, inner, depth, limit):
        A = self.max_arity
        excluded = {p for p in (inner.zero, self.removable(inner)) if p is not None}
        if not self.smash:
            excluded = {p for p in (self.removable(inner),) if p is not None}
        pool = [x for x in sorted_by_key(inner.elements) if x not in excluded]
        profiles = [self._profile(x, depth - 1) for x in pool]
        out = set()
        if self.smash:
            out.add(ZERO)
        low = 1 if self.flavor == NONUNITAL else 0
        for k in range(low, A + 1):
            ops = self.O.elements(k)
            for combo in self._combos(pool, profiles, k, depth - 1, A):
                for c in ops:
                    out.add(self.normalize(Term(c, combo), inner))
                    if len(out) > limit:
                        raise EnumerationBudget(
                            f"more than {limit} terms at depth {depth}; raise OPERADKIT_BUDGET"
                        )
        return sorted_by_key(out)

    def _combos(self, pool, profiles, k, width, A):
        # nondecreasing index tuples whose summed profiles stay within A
        zero = (0,) * width

        def rec(start, remaining, acc, chosen):
            if remaining == 0:
                yield tuple(pool[i] for i in chosen)
                return
            for i in range(start, len(pool)):
                tot = tuple(a + b for a, b in zip(acc, profiles[i]))
                if any(n > A for n in tot):
                    continue
                yield from rec(i, remaining - 1, tot, chosen + [i])

        yield from rec(0, k, zero, [])

    def in_horizon(self, t, depth):
        return all(n <= self.max_arity for n in self._profile(t, depth))


def normalize(flavor, O, t, carrier):
    return FreeMonad(flavor, O).normalize(t, Carrier.of(carrier))


def free_enumerate(flavor, O, X, max_arity=None, budget=None):
    M = FreeMonad(flavor, O, max_arity)
    return M.enumerate(X, 1, budget)[1].elements


def monad_eta(flavor, O, x, X):
    return FreeMonad(flavor, O).eta(x, Carrier.of(X))


def monad_mu(flavor, O, tt, X):
    return FreeMonad(flavor, O).mu(tt, Carrier.of(X))


def format_term(t):
    """``(op; x1, x2)`` with nesting; the inverse of :func:`parse_term`."""
    return repr(t)


def parse_term(text, resolve_op, resolve_atom=lambda s: s):
    """Parse ``(op_id; x1, x2, ...)`` with nested terms and the token ``ZERO``.

    ``resolve_op`` maps an op label to an operad element; ``resolve_atom``
    maps a leaf label to a carrier element.
    """
    text = text.strip()
    if text == "ZERO":
        return ZERO
    _top_level(text, None)  # balance check
    if not (text.startswith("(") and text.endswith(")")):
        return resolve_atom(text)
    body = text[1:-1]
    semi = _top_level(body, ";")
    if not semi:
        # a parenthesized atom, e.g. a tuple-valued element
        return resolve_atom(text)
    head, tail = body[: semi[0]], body[semi[0] + 1 :]
    args = []
    if tail.strip():
        cuts = [-1] + _top_level(tail, ",") + [len(tail)]
        args = [parse_term(tail[a + 1 : b], resolve_op, resolve_atom)
                for a, b in zip(cuts, cuts[1:])]
    return Term(resolve_op(head.strip()), tuple(args))


def _top_level(s, ch):
    depth, hits = 0, []
    for i, c in enumerate(s):
        if c == "(":
            depth += 1
        elif c == ")":
            depth -= 1
            if depth < 0:
                raise ValueError(f"unbalanced parentheses in {s!r}")
        elif c == ch and depth == 0:
            hits.append(i)
    if depth:
        raise ValueError(f"unbalanced parentheses in {s!r}")
    return hits
