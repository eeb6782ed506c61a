"""Exception hierarchy.

Every error carries a ``witness`` tuple of point/line indices (possibly
empty) so callers can report exactly what went wrong.
"""

from __future__ import annotations


class PerpnetError(Exception):
    """Base class for all errors raised by this package."""

    def __init__(self, message: str = "", witness: tuple = ()):
        super().__init__(message or self.__class__.__name__)
        self.witness = tuple(witness)

    @property
    def name(self) -> str:
        return self.__class__.__name__


# geometry-core

class GeometryError(PerpnetError):
    pass


class InvalidGeometry(GeometryError):
    pass


class OutOfBounds(GeometryError):
    pass


class MultipleLines(GeometryError):
    pass


class NoPerpRelation(GeometryError):
    pass


# constructions

class ConstructionError(PerpnetError):
    pass


class NotPrime(ConstructionError):
    pass


class NotLatin(ConstructionError):
    pass


class NotOrthogonal(ConstructionError):
    pass


class BadClassIndex(ConstructionError):
    pass


class DegenerateResult(ConstructionError):
    pass


class OddDegree(ConstructionError):
    pass


class DegreeTwo(ConstructionError):
    pass


class NotInvolution(PerpnetError):
    pass


class HasFixedPoint(PerpnetError):
    pass


class NotPartialSherk(ConstructionError):
    pass


class StarRequiresEvenK(ConstructionError):
    pass


# analysis

class AnalysisError(PerpnetError):
    pass


class NotTransitive(AnalysisError):
    pass


class NotANet(AnalysisError):
    def __init__(self, message: str = "", witness: tuple = (), prop: str = ""):
        super().__init__(message, witness)
        self.prop = prop


class HypothesisFailed(AnalysisError):
    def __init__(self, message: str = "", witness: tuple = (), hypothesis: str = ""):
        super().__init__(message, witness)
        self.hypothesis = hypothesis


class FormulaMismatch(AnalysisError):
    pass


class DichotomyViolation(AnalysisError):
    pass


class NotUnique(AnalysisError):
    pass


class NoPerpFound(AnalysisError):
    pass


class NotWellDefined(AnalysisError):
    pass


class NotAParallelClass(AnalysisError):
    pass


# cli-io

class ParseError(PerpnetError):
    def __init__(self, message: str, line: int = 0, column: int = 0):
        super().__init__(f"{line}:{column}: {message}")
        self.line = line
        self.column = column
