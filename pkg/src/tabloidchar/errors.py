"""Exception hierarchy shared by every module of the package."""


class TabloidError(ValueError):
    """Base class for all domain errors raised by tabloidchar."""


class NotWeaklyDecreasing(TabloidError):
    pass


class NonPositivePart(TabloidError):
    pass


class LengthMismatch(TabloidError):
    pass


class NotLPartition(TabloidError):
    def __init__(self, h, message=None):
        self.h = h
        super().__init__(message or f"component {h} is not an l_h-partition")


class NotAPermutation(TabloidError):
    pass


class OrderMismatch(TabloidError):
    pass


class SizeMismatch(TabloidError):
    pass


class CapExceeded(TabloidError):
    def __init__(self, m, cap):
        self.m = m
        self.cap = cap
        super().__init__(f"instance has m={m} boxes, enumeration cap is {cap}")


class InvalidNumbering(TabloidError):
    pass


class WrongLabelCount(TabloidError):
    def __init__(self, k, message=None):
        self.k = k
        super().__init__(message or f"label {k} has the wrong number of boxes")


class NotRectangleWithSpacing(TabloidError):
    def __init__(self, k, message=None):
        self.k = k
        super().__init__(message or f"boxes of label {k} do not form a spaced rectangle")


class RowNotWeaklyIncreasing(TabloidError):
    def __init__(self, h, i):
        self.h = h
        self.i = i
        super().__init__(f"row {i} of component {h} is not weakly increasing")


class InvalidInput(TabloidError):
    pass


class GammaMismatch(TabloidError):
    pass


class InvalidMarked(TabloidError):
    pass


class NotEigenTabloid(TabloidError):
    pass


class ParseError(TabloidError):
    def __init__(self, message, path=""):
        self.path = path
        super().__init__(f"{path}: {message}" if path else message)


class ValidationError(TabloidError):
    def __init__(self, message, path="", cause=None):
        self.path = path
        self.cause = cause
        super().__init__(f"{path}: {message}" if path else message)
