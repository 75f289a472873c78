# Normal forms of the four free-algebra flavors, side by side.
#
# Over comm the terms are multisets, over assoc they are words.  The smash
# flavors add a ZERO term, the reduced flavors drop the special points.

from operadkit.monad.terms import Carrier, FreeMonad
from operadkit.operad import AssocOperad, CommOperad

carriers = {
    "u+": Carrier(("a", "b")),
    "u": Carrier(("0", "a", "b"), "0"),
    "t+": Carrier(("0", "a"), "0"),
    "t": Carrier(("0", "1", "a"), "0", "1"),
}

for O in (CommOperad(2), AssocOperad(2)):
    for flavor, X in carriers.items():
        M = FreeMonad(flavor, O)
        terms = M.enumerate(X, 1)[1].elements
        print(f"{O.name:>5} {flavor:>2} over {X.elements}: {len(terms)} terms")
        for t in terms:
            print("       ", t)

# mu flattens a term of terms
M = FreeMonad("u+", AssocOperad(3))
X = Carrier(("a", "b"))
X0, X1, X2 = M.enumerate(X, 2)
tt = X2.elements[-1]
print("\nmu", tt, "=", M.mu(tt, X0))
