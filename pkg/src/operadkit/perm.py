"""Permutations of {1..n} in one-line notation.

A permutation is a tuple ``p`` with ``p[i-1]`` the image of ``i``.  Products
compose right to left, ``compose(s, t)(i) = s(t(i))``, so that the right
action ``c . s`` of a symmetric group on an operad level satisfies
``(c . s) . t == c . compose(s, t)``.
"""

from functools import lru_cache
from itertools import permutations


def check_perm(p, n=None):
    if n is not None and len(p) != n:
        raise ValueError(f"expected degree {n}, got {len(p)}")
    if sorted(p) != list(range(1, len(p) + 1)):
        raise ValueError(f"{p!r} is not a bijection on 1..{len(p)}")
    return tuple(p)


def identity(n):
    return tuple(range(1, n + 1))


def compose(s, t):
    return tuple(s[i - 1] for i in t)


def inverse(p):
    inv = [0] * len(p)
    for i, v in enumerate(p, start=1):
        inv[v - 1] = i
    return tuple(inv)


@lru_cache(maxsize=None)
def all_perms(n):
    return tuple(permutations(range(1, n + 1)))


def transposition(n, i):
    """The adjacent transposition exchanging i and i+1 (1-based)."""
    p = list(range(1, n + 1))
    p[i - 1], p[i] = p[i], p[i - 1]
    return tuple(p)


def act_on_tuple(p, xs):
    """Left action on tuples: the entry at position i moves to position p(i)."""
    out = [None] * len(xs)
    for i, x in enumerate(xs):
        out[p[i] - 1] = x
    return tuple(out)


def block_perm(p, sizes):
    """Move block r (of length sizes[r-1]) to slot p(r), keeping blocks intact."""
    k = len(p)
    inv = inverse(p)
    slot_start = [0] * (k + 1)
    for s in range(1, k + 1):
        slot_start[s] = slot_start[s - 1] + sizes[inv[s - 1] - 1]
    out = []
    for r in range(1, k + 1):
        base = slot_start[p[r - 1] - 1]
        out.extend(base + o + 1 for o in range(sizes[r - 1]))
    return tuple(out)


def direct_sum(perms):
    out = []
    offset = 0
    for p in perms:
        out.extend(offset + v for v in p)
        offset += len(p)
    return tuple(out)


def word_in_transpositions(p):
    """Express p as a product of adjacent transpositions s_i (bubble sort)."""
    # returns indices i with p = s_{i1} s_{i2} ... s_{im}
    cur = list(p)
    word = []
    n = len(cur)
    for _ in range(n):
        for i in range(n - 1):
            if cur[i] > cur[i + 1]:
                cur[i], cur[i + 1] = cur[i + 1], cur[i]
                word.append(i + 1)
    # cur = p . s_{w1} ... s_{wm} = id  ->  p = s_{wm} ... s_{w1}
    return tuple(reversed(word))
