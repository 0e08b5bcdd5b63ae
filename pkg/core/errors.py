# core/errors.py
"""
Domain errors raised by the numerical layer.

Agents let these propagate; the orchestrator converts them into
{"status": "error", "error": <class name>, "message": ...} envelopes.
They deliberately do not derive from ValueError so that pydantic
validators re-raise them untouched instead of wrapping them.
"""


class QuantumError(Exception):
    """Base class for every error raised by this package."""


# --------------------------------------------------------------------------
# Matrix / state validation
# --------------------------------------------------------------------------
class NotHermitian(QuantumError):
    pass


class TraceNotOne(QuantumError):
    pass


class NotPSD(QuantumError):
    pass


class DimMismatch(QuantumError):
    pass


class EmptyObservableList(QuantumError):
    pass


class EigenFailure(QuantumError):
    pass


class InvalidConfig(QuantumError):
    """An environment setting could not be parsed."""


class InvariantViolation(QuantumError):
    """An internal post-condition did not hold (e.g. complex expectation value)."""


# --------------------------------------------------------------------------
# Parameter validation
# --------------------------------------------------------------------------
class BlochNormExceeded(QuantumError):
    pass


class NotUnitVector(QuantumError):
    pass


class NotOrthogonal(QuantumError):
    pass


class OutOfRange(QuantumError):
    pass


class InvalidQutrit(QuantumError):
    pass


class InvalidOmega(InvalidQutrit):
    pass


class NotUnitBloch(InvalidQutrit):
    pass


# --------------------------------------------------------------------------
# 3-level atoms
# --------------------------------------------------------------------------
class InvalidPair(QuantumError):
    pass


class InvalidAxis(QuantumError):
    pass


class InvalidPopulations(QuantumError):
    pass


class UnknownPreset(QuantumError):
    pass


# --------------------------------------------------------------------------
# Two-qubit states
# --------------------------------------------------------------------------
class NotSymmetricState(QuantumError):
    pass


class NotXState(QuantumError):
    pass


class InvalidEnsemble(QuantumError):
    pass
