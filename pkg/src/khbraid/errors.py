"""Exception types shared across the package."""


class BraidParseError(ValueError):
    """Malformed braid word text or an out-of-range generator."""


class CapExceededError(RuntimeError):
    """A diagram has more crossings than the configured safety cap."""


class ChainMapError(ArithmeticError):
    """A matrix claimed to be a chain map does not behave like one."""


class ConsistencyError(AssertionError):
    """An identity that the construction guarantees has failed.

    Raised for d∘d ≠ 0, a basepoint action that does not commute with the
    differential, or a certification run whose stages contradict each other.
    Any occurrence indicates a bug, not bad input.
    """
