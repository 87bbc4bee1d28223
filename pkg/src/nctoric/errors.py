"""Exception types shared across the package."""


class NctoricError(Exception):
    """Base class for all library errors."""


class ParseError(NctoricError):
    """Malformed input file or literal; carries a best-effort location."""

    def __init__(self, message, line=None, column=None):
        loc = ""
        if line is not None:
            loc = f" (line {line}" + (f", column {column}" if column is not None else "") + ")"
        super().__init__(message + loc)
        self.line = line
        self.column = column


class RankMismatch(NctoricError):
    pass


class NonPrimitiveRay(NctoricError):
    pass


class NotIndexOne(NctoricError):
    pass


class MissingReferenceCone(NctoricError):
    pass


class NotAFan(NctoricError):
    pass


class NotMaximal(NctoricError):
    pass


class NoPositivityFunctional(NctoricError):
    pass


class BadLift(NctoricError):
    pass


class NotAdmissibleInput(NctoricError):
    pass


class ExtraOutsideDualCone(NctoricError):
    pass


class MaximalChartTouched(NctoricError):
    pass


class UnboundedPolytope(NctoricError):
    pass


class NotASection(NctoricError):
    pass


class MismatchedSystems(NctoricError):
    pass


class TargetExceedsBound(NctoricError):
    pass


class BadFactorization(NctoricError):
    pass


class NotIdempotent(NctoricError):
    pass


class CandidateNotUnit(NctoricError):
    pass


class MorphismInvalid(NctoricError):
    pass


class PatternIncomplete(NctoricError):
    pass
