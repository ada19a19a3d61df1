"""Exception taxonomy for quatlat.

Every failure mode callers are expected to handle gets its own class so the
CLI can map errors onto stable machine-readable names.
"""


class QuatlatError(Exception):
    """Base class for all library errors."""

    @property
    def kind(self):
        return type(self).__name__


# -- field arithmetic ------------------------------------------------------

class FieldMismatch(QuatlatError):
    pass


class DivisionByZero(QuatlatError, ZeroDivisionError):
    pass


class NotPresent(QuatlatError):
    """Requested square root does not exist in this field."""


class NoEmbedding(QuatlatError):
    pass


class PrecisionExhausted(QuatlatError):
    pass


# -- quaternion algebras ---------------------------------------------------

class AlgebraMismatch(QuatlatError):
    pass


class ZeroDivisor(QuatlatError):
    pass


class ZeroParameter(QuatlatError):
    pass


# -- lattices --------------------------------------------------------------

class NotPositiveDefinite(QuatlatError):
    pass


class RankDeficient(QuatlatError):
    pass


# -- orders ----------------------------------------------------------------

class NotIntegralGenerator(QuatlatError):
    pass


class NotFullRank(QuatlatError):
    pass


class NoClosure(QuatlatError):
    """Multiplication closure did not stabilize within the round budget."""


class NotCompatible(QuatlatError):
    pass


class UnsupportedAlgebra(QuatlatError):
    pass


class NotIdeal(QuatlatError):
    pass


class FactoringIncomplete(QuatlatError):
    """An integer needed for maximality testing resisted factoring.

    The unfactored cofactor is carried so the caller can report it.
    """

    def __init__(self, message, cofactor=None):
        super().__init__(message)
        self.cofactor = cofactor


# -- norm-one groups -------------------------------------------------------

class NotDefinite(QuatlatError):
    pass


# -- embeddings ------------------------------------------------------------

class NotEmbeddable(QuatlatError):
    pass


class SearchExhausted(QuatlatError):
    pass


# -- parsing / scenarios ---------------------------------------------------

class ParseError(QuatlatError):
    """Syntax error in an element expression; carries the source span."""

    def __init__(self, message, src="", span=(0, 0)):
        self.src = src
        self.span = span
        lo, hi = span
        marker = ""
        if src:
            marker = "\n  %s\n  %s%s" % (src, " " * lo, "^" * max(1, hi - lo))
        super().__init__(message + marker)


class UnknownSymbol(ParseError):
    pass


class SchemaError(QuatlatError):
    pass
