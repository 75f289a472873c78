# pi_0-level completions: group completion, ring completion, localization.

from operadkit.completion import (
    find_isomorphism,
    group_completion,
    localize_telescope,
    make_monoid,
    ring_completion,
    units,
    universal_property_check,
    zmod,
)
from operadkit.fixtures import capped_rig

# {0, 1, 2, 3} under addition capped at 3: everything is identified with 3
capped = make_monoid(range(4), 0, lambda x, y: min(x + y, 3), "N<=3")
K, eta = group_completion(capped)
print(f"K({capped.name}) has {len(K)} element(s)")
print(universal_property_check("group", capped, K, eta).summary())

K, _ = ring_completion(capped_rig())
print(f"ring completion of capped: {len(K)} element(s)")

for n, inverted in [(6, [2]), (12, [2]), (12, [3]), (10, [5])]:
    tel = localize_telescope(zmod(n), inverted)
    L = tel.ring
    match = next(m for m in range(1, 13) if find_isomorphism(L, zmod(m), "ring"))
    print(f"Z/{n}[1/{inverted[0]}] = Z/{match}  (stable after {tel.stage} cycle(s), "
          f"image {sorted(L.elements)}, unit {L.one})")

for n in range(2, 13):
    GL, _ = units(zmod(n))
    print(f"GL1(Z/{n}) = {sorted(GL.elements)}")
