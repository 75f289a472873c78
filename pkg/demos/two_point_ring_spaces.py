# Which pairs of binary operations on {0, 1} make a ring space over (N, N)?
#
# Every (add, mul) table pair is fed to the ring-space check, and the
# verdict is compared with a direct check of the commutative-rig axioms.
# Exactly two survive: the Booleans (max, min) and Z/2 (xor, and).

import itertools

from operadkit.operad import UnderS0FinSet
from operadkit.pair import nn_rig_equivalence

X = UnderS0FinSet((0, 1), 0, 1)
keys = [(a, b) for a in (0, 1) for b in (0, 1)]
tables = [dict(zip(keys, v)) for v in itertools.product((0, 1), repeat=4)]


def show(t):
    return "".join(str(t[k]) for k in keys)


survivors = []
disagreements = 0
for add, mul in itertools.product(tables, tables):
    verdict = nn_rig_equivalence(X, add, mul)
    if verdict["is_rig"] != verdict["ring_space_passes"]:
        disagreements += 1
    if verdict["ring_space_passes"]:
        survivors.append((show(add), show(mul)))

print(f"{len(tables) ** 2} table pairs, {disagreements} disagreements")
for add, mul in survivors:
    print(f"  add={add}  mul={mul}")
