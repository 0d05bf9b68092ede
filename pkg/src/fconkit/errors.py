"""Exception hierarchy shared by every module."""


class FconError(Exception):
    """Base class for all errors raised by fconkit."""


class DimensionMismatch(FconError):
    pass


class NegativeInput(FconError):
    pass


class NotContraction(FconError):
    pass


class NotPSD(FconError):
    pass


class NotSquare(FconError):
    pass


class NotEpi(FconError):
    pass


class NotMono(FconError):
    pass


class NotOrthonormalSystem(FconError):
    pass


class NotCocone(FconError):
    def __init__(self, message, index=None):
        super().__init__(message)
        self.index = index


class NotNatural(FconError):
    def __init__(self, message, index=None):
        super().__init__(message)
        self.index = index


class NotMonotone(FconError):
    def __init__(self, message, index=None):
        super().__init__(message)
        self.index = index


class NoLimitWithinBudget(FconError):
    pass


class NotBounded(FconError):
    pass


class IncomparableEncountered(FconError):
    pass


class ConeViolation(FconError):
    pass


class SelfAdjointInput(FconError):
    pass


class ParseError(FconError):
    """Malformed CLI input; carries the location when it is known."""

    def __init__(self, message, line=None, column=None, path=None):
        super().__init__(message)
        self.line = line
        self.column = column
        self.path = path

    def to_json(self):
        return {"error": "ParseError", "message": str(self), "line": self.line,
                "column": self.column, "path": self.path}


class NoWitnessWithinBudget(FconError):
    pass


class IdentityViolation(FconError):
    """An identity that must hold exactly failed; the message names the step."""
