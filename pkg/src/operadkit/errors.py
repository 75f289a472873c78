"""Exception types shared across the engine."""


class OperadKitError(Exception):
    pass


class ArityOverflow(OperadKitError):
    """A required composite arity lies beyond the tabulated horizon."""


class EnumerationBudget(OperadKitError):
    """An enumeration would exceed the configured budget."""


class ShapeMismatch(OperadKitError):
    pass


class UnsupportedAdjunction(OperadKitError):
    pass


class IllDefinedProduct(OperadKitError):
    pass


class NonAxisAligned(OperadKitError):
    pass


class SchemaError(OperadKitError):
    """Malformed input document. ``path`` is a JSON-path style location."""

    def __init__(self, message, path="$"):
        super().__init__(f"{path}: {message}")
        self.path = path
        self.message = message
