"""Free-algebra monads, their maps, and the interchange for operad pairs."""
