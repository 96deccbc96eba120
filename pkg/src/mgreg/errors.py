"""Exception hierarchy.

``UserError`` subclasses describe bad input (the CLI maps them to exit 2);
``InternalError`` signals a violated invariant (exit 3).
"""


class MgregError(Exception):
    pass


class UserError(MgregError):
    pass


class ParseError(UserError):
    def __init__(self, message, position=None, text=None):
        self.position = position
        self.text = text
        if position is not None:
            message = f"{message} at position {position}"
        super().__init__(message)


class UnknownVariableError(ParseError):
    pass


class NotInvertibleError(ParseError):
    pass


class ZeroPolynomialError(UserError):
    pass


class NotHomogeneousError(UserError):
    pass


class UnitIdealError(UserError):
    pass


class NonMinimalError(UserError):
    pass


class NonMonomialError(UserError):
    pass


class BoxTooSmallError(UserError):
    pass


class FieldTooSmallError(UserError):
    pass


class ImproperSequenceError(UserError):
    pass


class NotFilterRegularError(UserError):
    pass


class FilterRegularityFailed(MgregError):
    """Generic coordinate changes kept failing; the field is likely too small."""


class InternalError(MgregError):
    pass
