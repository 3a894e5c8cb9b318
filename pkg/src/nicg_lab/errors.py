"""Exception types shared across the package."""


class InvalidInputError(ValueError):
    """Malformed argument: bad dimension, component, index or file field."""


class UnsupportedDimensionError(InvalidInputError):
    """Dimension outside the range a routine is guarded for."""


class TransformError(ValueError):
    """A row transform was applied outside its precondition."""


class NotNormalizableError(TransformError):
    """No admissible subtraction row is left while an all-ones row remains."""


class BudgetExhaustedError(RuntimeError):
    """A search ran out of its node or time budget before the answer was exact."""
