from __future__ import annotations
from typing import Any, Optional


class HopfPartialError(Exception):
    """Base for everything this package raises on purpose."""

    def __init__(self, message: str = "", witness: Optional[Any] = None):
        super().__init__(message)
        self.witness = witness


# ---------------- input / plumbing (exit 2) ----------------

class InputError(HopfPartialError):
    pass

class DivisionByZero(InputError, ZeroDivisionError):
    pass

class FieldMismatch(InputError):
    pass

class DimensionMismatch(InputError):
    pass

class NoSolution(InputError):
    pass

class NotInjective(InputError):
    pass

class InvalidGroupTable(InputError):
    pass

class CharacteristicDividesOrder(InputError):
    pass

class NotStandardForm(InputError):
    pass

class BundleError(InputError):
    pass


# ---------------- refused preconditions (exit 1) ----------------

class AxiomError(HopfPartialError):
    pass

class NotABialgebra(AxiomError):
    pass

class NoAntipode(AxiomError):
    pass

class NotPartialAction(AxiomError):
    pass

class NotPartialCoaction(AxiomError):
    pass

class NotPartialModuleCoalgebra(AxiomError):
    pass

class NotPartialComoduleCoalgebra(AxiomError):
    pass

class NotModuleCoalgebra(AxiomError):
    pass

class NotComodule(AxiomError):
    pass

class ProjectionConditionFailed(AxiomError):
    pass

class CoactionProjectionConditionFailed(AxiomError):
    pass

class NotComultiplicative(AxiomError):
    pass

class NotAProjection(AxiomError):
    pass

class ConditionsViolated(AxiomError):
    pass


# ---------------- internal (exit 3) ----------------

class InvariantViolation(HopfPartialError):
    """A construction that is proven to succeed did not."""
