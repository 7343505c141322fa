# spin_limit_shapes/errors.py


class SpinShapeError(Exception):
    """Base class for every error raised by this package."""


class ConfigError(SpinShapeError):
    """Unknown or malformed run configuration."""


class SizeLimitError(SpinShapeError):
    """A brute-force search was asked to go past its size bound."""

    def __init__(self, what: str, value: int, limit: int):
        super().__init__(f"{what}: {value} exceeds the search bound {limit}")
        self.what = what
        self.value = value
        self.limit = limit


class PartitionError(SpinShapeError, ValueError):
    """Invalid (strict) partition data."""


class HookFormulaError(SpinShapeError):
    """The hook product does not divide n!, which means a bug in the cell bookkeeping."""


class NotCentralError(SpinShapeError, ValueError):
    """A group-algebra element that should be central is not."""


class CharacterTableError(SpinShapeError):
    """Character table diagonalisation or row/label matching failed."""


class DomainError(SpinShapeError, ValueError):
    """An argument lies outside the domain of an operation."""
