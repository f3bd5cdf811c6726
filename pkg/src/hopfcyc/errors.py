"""Exception types shared across the engine."""


class HopfcycError(Exception):
    pass


class NonTerminating(HopfcycError):
    """Rewriting exceeded its step budget; the rule set is suspect."""


class DegreeMismatch(HopfcycError):
    pass


class IndexOutOfRange(HopfcycError):
    pass


class NotAGroup(HopfcycError):
    pass


class JacobiFailure(HopfcycError):
    pass


class NotGrouplike(HopfcycError):
    pass


class NotModuleAlgebra(HopfcycError):
    pass


class NotComoduleCoalgebra(HopfcycError):
    pass


class NotAFactorization(HopfcycError):
    pass


class MatchedPairViolation(HopfcycError):
    def __init__(self, condition_index, detail=""):
        self.condition_index = condition_index
        super().__init__(f"matched pair condition {condition_index} violated {detail}")


class SidesMismatch(HopfcycError):
    pass


class CertMismatch(HopfcycError):
    pass


class NotInvolutive(HopfcycError):
    pass


class WrongSides(HopfcycError):
    pass


class NotSAYD(HopfcycError):
    pass


class TraceNotInvariant(HopfcycError):
    pass


class NotFiniteDimensional(HopfcycError):
    pass


class ParseError(HopfcycError):
    def __init__(self, message, line=None, col=None):
        self.line = line
        self.col = col
        loc = f" at line {line}, column {col}" if line is not None else ""
        super().__init__(f"{message}{loc}")


class UnknownGenerator(ParseError):
    pass


class BadIndex(ParseError):
    pass


class JobError(HopfcycError):
    """Invalid job specification (maps to CLI exit code 2)."""
