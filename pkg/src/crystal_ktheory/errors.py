"""Exception hierarchy.

Two families matter to callers: :class:`InvalidInput` (the lattice datum is
malformed; CLI exit code 1) and :class:`InternalInconsistency` (two exact
routes disagree or an integrality guarantee failed; CLI exit code 2).
"""


class CrystalKTheoryError(Exception):
    """Base class for all errors raised by this package."""


class InvalidInput(CrystalKTheoryError):
    pass


class WrongOrder(InvalidInput):
    def __init__(self, j):
        self.j = j
        super().__init__(f"WrongOrder({j})")


class NotFreeOutsideOrigin(InvalidInput):
    def __init__(self, j):
        self.j = j
        super().__init__(f"NotFreeOutsideOrigin({j})")


class NotADivisor(InvalidInput):
    def __init__(self, d, m):
        self.d, self.m = d, m
        super().__init__(f"NotADivisor({d} does not divide {m})")


class NotSylow(InvalidInput):
    pass


class DimensionOverflow(InvalidInput):
    def __init__(self, size, cap):
        self.size, self.cap = size, cap
        super().__init__(f"DimensionOverflow({size} > cap {cap})")


class InternalInconsistency(CrystalKTheoryError):
    pass


class NotIntegral(InternalInconsistency):
    pass


class NonIntegralMultiplicity(InternalInconsistency):
    pass


class NonIntegralFormula(InternalInconsistency):
    pass


class NonIntegralRank(InternalInconsistency):
    pass


class NonIntegralEulerClass(InternalInconsistency):
    pass


class CrossCheckMismatch(InternalInconsistency):
    def __init__(self, quantity, left, right):
        self.quantity, self.left, self.right = quantity, left, right
        super().__init__(f"CrossCheckMismatch({quantity}): {left!r} != {right!r}")
