"""A total order on the heterogeneous values used as elements and terms.

Operad elements, carrier points and nested terms mix strings, integers,
fractions and tuples.  Python refuses to compare some of these with each
other, so every canonical-form computation sorts by :func:`order_key`.
"""

from fractions import Fraction


def order_key(x):
    if x is None:
        return (0,)
    if isinstance(x, bool):
        return (1, int(x))
    if isinstance(x, (int, Fraction)):
        return (1, x)
    if isinstance(x, str):
        return (2, x)
    if isinstance(x, tuple):
        return (3, len(x), tuple(order_key(y) for y in x))
    key = getattr(x, "sort_key", None)
    if key is not None:
        return (4, key())
    if isinstance(x, frozenset):
        return (5, tuple(sorted(order_key(y) for y in x)))
    raise TypeError(f"no order defined for {type(x).__name__}")


def sorted_by_key(xs):
    return sorted(xs, key=order_key)
