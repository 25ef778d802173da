"""
Exceptions raised by the operad engine.
"""


class OperadixError(Exception):
    """
    Base class of every error raised on purpose by the package.
    """


class ArityError(OperadixError, ValueError):
    """
    Composition slot out of range or arities that do not fit.
    """


class CanonicalFormError(OperadixError, ValueError):
    """
    A tree that is not in (or cannot be brought into) canonical form.
    """


class AmbientError(OperadixError, ValueError):
    """
    Label not available in the selected ambient operad.
    """


class ParseError(OperadixError, ValueError):
    """
    Text or JSON input that does not parse.
    """


class HypothesisError(OperadixError):
    """
    The hypotheses of a check are not satisfied by its input.
    """


class CarrierTooLarge(OperadixError, ValueError):
    """
    A finite carrier beyond what exhaustive enumeration supports.
    """


class TruncationError(OperadixError, KeyError):
    """
    A generator outside the finite assignment of a morphism or derivation.
    """


class FiltrationError(OperadixError):
    """
    A rank function that does not filter the differential.
    """


class DegreeError(OperadixError, ValueError):
    """
    A value of the wrong degree or arity for the label it is assigned to.
    """
