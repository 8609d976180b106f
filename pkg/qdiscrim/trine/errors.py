from __future__ import annotations

from typing import TYPE_CHECKING

import numpy as np

if TYPE_CHECKING:
    from .measurement.Povm import PovmReport


class TrineError(ValueError):
    """Base class of every error raised by the package."""


class DimensionMismatchError(TrineError):
    pass


class NormalizationError(TrineError):
    pass


class PriorsNotNormalizedError(TrineError):
    pass


class NegativeProbabilityError(TrineError):
    pass


class NotHermitianError(TrineError):
    pass


class InvalidPovmError(TrineError):
    """Raised when a set of operators fails positivity or completeness.

    Attributes:
        report (PovmReport | None): Per-element diagnostics of the rejected set.
    """

    def __init__(self, message: str, report: PovmReport | None = None):
        super().__init__(message)
        self.report = report


class IncompleteMeasurementError(InvalidPovmError):
    """The candidate elements are positive but do not sum to the identity.

    Attributes:
        defect (np.ndarray): The completeness defect ``sum(elements) - I``.
    """

    def __init__(
        self, message: str, defect: np.ndarray, report: PovmReport | None = None
    ):
        super().__init__(message, report)
        self.defect = defect


class KrausCompletenessError(TrineError):
    pass


class EntangledStateError(TrineError):
    pass


class ProtocolDepthError(TrineError):
    pass


class InfeasibleOptimizationError(TrineError):
    pass
