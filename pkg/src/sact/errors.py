class SactError(Exception):
    """Base class for all workbench errors."""


class NonAssociative(SactError):
    def __init__(self, s, t, u):
        super().__init__(f"table is not associative at ({s}, {t}, {u})")
        self.triple = (s, t, u)


class BadIdentity(SactError):
    def __init__(self, s):
        super().__init__(f"identity law fails at element {s}")
        self.element = s


class CompatibilityViolation(SactError):
    def __init__(self, s, t, a):
        super().__init__(f"s(ta) != (st)a for s={s}, t={t}, a={a}")
        self.triple = (s, t, a)


class UnitViolation(SactError):
    def __init__(self, a):
        super().__init__(f"1a != a for a={a}")
        self.element = a


class MonoidMismatch(SactError):
    pass


class ActMismatch(SactError):
    pass


class NotACongruence(SactError):
    pass


class NotAPartition(SactError):
    pass


class NotASubact(SactError):
    pass


class InvalidSystem(SactError):
    pass


class BoundExceeded(SactError):
    def __init__(self, what, value, bound):
        super().__init__(f"{what}: {value} exceeds bound {bound}")
        self.value = value
        self.bound = bound


class EmptyCandidateSet(SactError):
    pass


class NotHoehnke(SactError):
    pass


class NotKA(SactError):
    pass


class NotATorsionTheory(SactError):
    pass


class ParseError(SactError):
    def __init__(self, msg, line=None, column=None, path=None):
        where = ""
        if path is not None:
            where += f"{path}:"
        if line is not None:
            where += f"{line}:"
            if column is not None:
                where += f"{column}:"
        super().__init__(f"{where} {msg}" if where else msg)
        self.line = line
        self.column = column
        self.path = path
        self.msg = msg


class UnknownTarget(SactError):
    pass


class BadTable(SactError, ValueError):
    """A table or action with the wrong shape or out-of-range entries."""
