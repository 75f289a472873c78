"""Array helpers for batched operad evaluation.

A batch of permutations of degree n is an int array of shape (N, n) holding
one-line notation (1-based).  Batches of operad elements are either arrays
with the batch on axis 0 or tuples of such arrays (product operads).
"""

import zlib

import numpy as np

from . import perm as P


def rng_for(*parts):
    return np.random.default_rng(zlib.crc32(":".join(map(str, parts)).encode()))


def take(batch, idx):
    if isinstance(batch, tuple):
        return tuple(take(b, idx) for b in batch)
    return batch[idx]


def length(batch):
    if isinstance(batch, tuple):
        return length(batch[0])
    return batch.shape[0]


def equal_rows(a, b):
    if isinstance(a, tuple):
        out = np.ones(length(a), dtype=bool)
        for x, y in zip(a, b):
            out &= equal_rows(x, y)
        return out
    if a.ndim == 1:
        return a == b
    return np.all((a == b).reshape(a.shape[0], -1), axis=1)


def all_perm_array(n):
    return np.array(P.all_perms(n), dtype=np.int16).reshape(len(P.all_perms(n)), n)


def random_perms(rng, count, n):
    if n == 0:
        return np.zeros((count, 0), dtype=np.int16)
    return (np.argsort(rng.random((count, n)), axis=1) + 1).astype(np.int16)


_rank_cache = {}


def perm_ids(S):
    """Index of each row of S in ``perm.all_perms(n)``."""
    n = S.shape[1]
    if n not in _rank_cache:
        table = np.full(max(n, 1) ** n, -1, dtype=np.int64)
        for i, p in enumerate(P.all_perms(n)):
            table[_code(np.array([p]), n)[0]] = i
        _rank_cache[n] = table
    return _rank_cache[n][_code(S, n)]


def _code(S, n):
    if n == 0:
        return np.zeros(S.shape[0], dtype=np.int64)
    weights = n ** np.arange(n, dtype=np.int64)
    return ((S.astype(np.int64) - 1) * weights).sum(axis=1)


def compose_rows(S, T):
    """Row-wise compose(s, t): (s t)(i) = s(t(i))."""
    if S.shape[1] == 0:
        return S
    return np.take_along_axis(S, T.astype(np.int64) - 1, axis=1)


def inverse_rows(S):
    N, n = S.shape
    out = np.empty_like(S)
    rows = np.arange(N)[:, None]
    out[rows, S.astype(np.int64) - 1] = np.arange(1, n + 1, dtype=S.dtype)
    return out


def direct_sum_rows(perms):
    parts, off = [], 0
    for p in perms:
        parts.append(p + off)
        off += p.shape[-1]
    if not parts:
        return None
    return np.concatenate(parts, axis=-1)


def block_perm_rows(C, sizes):
    """Row-wise ``perm.block_perm``; C has shape (..., k)."""
    sizes = np.asarray(sizes, dtype=np.int64)
    total = int(sizes.sum())
    lead = C.shape[:-1]
    if total == 0:
        return np.zeros(lead + (0,), dtype=np.int16)
    Ci = C.astype(np.int64) - 1
    k = C.shape[-1]
    # size of the block landing in slot s is sizes[c^-1(s)]
    inv = np.empty_like(Ci)
    np.put_along_axis(inv, Ci, np.broadcast_to(np.arange(k), Ci.shape), axis=-1)
    by_slot = sizes[inv]
    starts = np.cumsum(by_slot, axis=-1) - by_slot
    start_of_block = np.take_along_axis(starts, Ci, axis=-1)
    owner = np.repeat(np.arange(k), sizes)
    within = np.concatenate([np.arange(s) for s in sizes]) if k else np.zeros(0, np.int64)
    out = start_of_block[..., owner] + within + 1
    return out.astype(np.int16)


def product_indices(sizes, lo, hi):
    """Per-factor indices for flat instance numbers lo..hi-1 of a cartesian product."""
    flat = np.arange(lo, hi, dtype=np.int64)
    if not sizes:
        return []
    return list(np.unravel_index(flat, sizes))
