"""Exception hierarchy.

Every error raised by the engine derives from :class:`CelesteError`; the CLI
prints the class name on a dedicated ``error:`` line.
"""


class CelesteError(Exception):
    """Base class for all engine errors."""

    @property
    def name(self):
        return type(self).__name__


class ZeroVector(CelesteError, ValueError):
    pass


class UnknownCone(CelesteError, KeyError):
    def __str__(self):
        return Exception.__str__(self)


class RayExists(CelesteError, ValueError):
    pass


class OutsideSupport(CelesteError, ValueError):
    pass


class NotComplete(CelesteError):
    pass


class NotSmooth(CelesteError):
    pass


class ModelMismatch(CelesteError):
    pass


class NonProperDegree(CelesteError):
    pass


class NotSNC(CelesteError):
    pass


class NotResolved(CelesteError):
    pass


class NonConvergent(CelesteError, ArithmeticError):
    """Some coefficient m_j of the resolved data is <= -1."""


class EmptyFiber(CelesteError):
    pass


class NonToricAtom(CelesteError):
    pass


class NotDisjoint(CelesteError):
    pass


class ParseError(CelesteError):
    def __init__(self, message, line=None, column=None):
        super().__init__(message)
        self.line = line
        self.column = column

    def __str__(self):
        msg = super().__str__()
        if self.line is not None:
            return f"{msg} (line {self.line}, column {self.column})"
        return msg


class ValidationError(CelesteError):
    pass
