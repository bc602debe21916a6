"""Exception types raised across the package."""


class DiffExtError(Exception):
    """Base class for all errors raised by diffext."""


class DivisionByZero(DiffExtError, ZeroDivisionError):
    pass


class ArityMismatch(DiffExtError, ValueError):
    """Operands live over fields with different variable counts or characteristic."""


class ShapeError(DiffExtError, ValueError):
    pass


class NotInvertible(DiffExtError, ValueError):
    pass


class ModuleMismatch(DiffExtError, TypeError):
    """A cochain value does not belong to the declared coefficient module."""


class IncompatibleExtension(DiffExtError, ValueError):
    """Extension elements built from different 2-cocycles were combined."""


class NotInP(DiffExtError, ValueError):
    """A matrix on W does not preserve the flag K < K + End(V) < W."""


class NotInSL2(DiffExtError, ValueError):
    pass


class ParseError(DiffExtError, ValueError):
    pass
