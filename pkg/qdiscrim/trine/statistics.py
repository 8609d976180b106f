from __future__ import annotations

import io
import logging
from pathlib import Path

import numpy as np
import pandas as pd
from scipy.special import xlogy
from scipy.stats import entropy

from .config import DISTRIBUTION_SUM_TOL, PROBABILITY_CLAMP_TOL
from .ensemble import Ensemble
from .errors import DimensionMismatchError, NegativeProbabilityError, NormalizationError
from .measurement import Povm
from .types import RealArray

logger = logging.getLogger(__name__)


def _clamp_probabilities(vals: RealArray, what: str) -> RealArray:
    if np.any(vals < -PROBABILITY_CLAMP_TOL):
        raise NegativeProbabilityError(
            f"{what} has a negative entry {vals.min()!r} below -{PROBABILITY_CLAMP_TOL:g}"
        )
    if np.any(vals < 0):
        logger.debug(f"Clamping rounding-level negative entries of {what} to 0")
    return np.clip(vals, 0, None)


class JointDistribution:
    """
    Joint probabilities ``p[j, k]`` of ensemble state j and measurement outcome k.

    Rows correspond to states and columns to outcomes; row sums are the priors and
    the whole table sums to one. Entries in [-1e-12, 0) are clamped to 0.
    """

    def __init__(
        self,
        p: RealArray,
        priors: RealArray | None = None,
        state_labels: list[str] | None = None,
        outcome_labels: list[str] | None = None,
    ):
        p = np.array(p, dtype=np.float64)
        if p.ndim != 2:
            raise DimensionMismatchError(f"Joint distribution must be a matrix, got shape {p.shape}")
        p = _clamp_probabilities(p, "joint distribution")
        if abs(p.sum() - 1) > DISTRIBUTION_SUM_TOL:
            raise NormalizationError(f"joint distribution not normalized (sum = {p.sum()!r})")
        if priors is not None:
            priors = np.asarray(priors, dtype=np.float64)
            if priors.shape != (p.shape[0],):
                raise DimensionMismatchError(
                    f"Got {priors.shape[0]} priors for {p.shape[0]} rows"
                )
            if np.max(np.abs(p.sum(axis=1) - priors)) > DISTRIBUTION_SUM_TOL:
                raise NormalizationError("Row sums of the joint distribution differ from the priors")
        if state_labels is None:
            state_labels = [f"a{j}" for j in range(p.shape[0])]
        if outcome_labels is None:
            outcome_labels = [f"P{k}" for k in range(p.shape[1])]
        if len(state_labels) != p.shape[0] or len(outcome_labels) != p.shape[1]:
            raise DimensionMismatchError("Incorrect length of list of labels.")

        p.flags.writeable = False
        self.__p = p
        self.__state_labels = list(state_labels)
        self.__outcome_labels = list(outcome_labels)

    @property
    def p(self) -> RealArray:
        return self.__p

    @property
    def priors(self) -> RealArray:
        return self.__p.sum(axis=1)

    @property
    def state_labels(self) -> list[str]:
        return list(self.__state_labels)

    @property
    def outcome_labels(self) -> list[str]:
        return list(self.__outcome_labels)

    @property
    def shape(self) -> tuple[int, int]:
        return self.__p.shape

    def outcome_marginal(self) -> RealArray:
        """``p_k``"""
        return self.__p.sum(axis=0)

    def conditionals(self) -> RealArray:
        """``p_{k|j}``; rows of states with zero prior are left at zero."""
        priors = self.priors
        cond = np.zeros_like(self.__p)
        nonzero = priors > 0
        cond[nonzero] = self.__p[nonzero] / priors[nonzero, None]
        return cond

    def to_frame(self, conditional: bool = False) -> pd.DataFrame:
        vals = self.conditionals() if conditional else self.__p
        frame = pd.DataFrame(vals, index=self.__state_labels, columns=self.__outcome_labels)
        frame.index.name = "state"
        return frame

    def to_csv(self, path_or_buf: Path | str | io.TextIOBase | None = None) -> str | None:
        """Write the joint table as CSV, one row per state, header = outcome labels."""
        return self.to_frame().to_csv(path_or_buf, float_format="%.17g")

    @classmethod
    def from_csv(cls, path_or_buf: Path | str | io.TextIOBase) -> JointDistribution:
        frame = pd.read_csv(path_or_buf, index_col=0, float_precision="round_trip")
        return cls(
            frame.to_numpy(dtype=np.float64),
            state_labels=[str(i) for i in frame.index],
            outcome_labels=[str(c) for c in frame.columns],
        )

    def __repr__(self):
        return f"JointDistribution(states={self.shape[0]}, outcomes={self.shape[1]})"


def outcome_probabilities(ensemble: Ensemble, povm: Povm) -> JointDistribution:
    """Joint distribution ``p[j, k] = prior_j <s_j|Pi_k|s_j>``.

    Args:
        ensemble (Ensemble): States and priors.
        povm (Povm): The measurement, of the ensemble's dimension.

    Returns:
        JointDistribution: Labelled by the ensemble's state labels and the POVM's
        outcome labels.

    Raises:
        DimensionMismatchError: If the dimensions differ.
    """
    if ensemble.dim != povm.dim:
        raise DimensionMismatchError(
            f"Ensemble of dimension {ensemble.dim} cannot be measured by a POVM of dimension {povm.dim}"
        )
    cond = joint_array(ensemble.amplitudes(), np.ones(ensemble.size), povm.matrices())
    # absorbs the completeness tolerance the POVM was accepted with
    cond = cond / cond.sum(axis=1, keepdims=True)
    p = ensemble.priors[:, None] * cond
    return JointDistribution(p, ensemble.priors, ensemble.labels, povm.labels)


def joint_array(amplitudes: np.ndarray, priors: RealArray, matrices: np.ndarray) -> RealArray:
    """Array core of :func:`outcome_probabilities`; no validation, no clamping."""
    cond = np.einsum("ja,kab,jb->jk", amplitudes.conj(), matrices, amplitudes).real
    return priors[:, None] * cond


def shannon_entropy(dist: RealArray | list[float]) -> float:
    """Shannon entropy in bits, with ``0 log 0 = 0``.

    Raises:
        NegativeProbabilityError: If an entry is below -1e-12.
        NormalizationError: If the entries do not sum to one within 1e-10.

    Examples:
        >>> shannon_entropy([0.5, 0.5])
        1.0
    """
    vals = _clamp_probabilities(np.asarray(dist, dtype=np.float64).ravel(), "distribution")
    if abs(vals.sum() - 1) > DISTRIBUTION_SUM_TOL:
        raise NormalizationError(f"distribution not normalized (sum = {vals.sum()!r})")
    return float(entropy(vals, base=2))


def information_from_joint(p: RealArray) -> float:
    """Mutual information in bits of a joint table, ``H(outcome) - sum_j p_j H(outcome | j)``.

    Array core used by the optimizers; ``p`` is assumed nonnegative with unit sum.
    """
    p_k = p.sum(axis=0)
    p_j = p.sum(axis=1)
    h_outcome = -np.sum(xlogy(p_k, p_k))
    rows = p_j > 0
    cond = p[rows] / p_j[rows, None]
    h_conditional = -np.sum(p_j[rows] * np.sum(xlogy(cond, cond), axis=1))
    return max(0.0, float((h_outcome - h_conditional) / np.log(2)))


def mutual_information(jd: JointDistribution) -> float:
    """Mutual information between state and outcome, in bits.

    Computed as ``-sum_k p_k log p_k + sum_j prior_j sum_k p_{k|j} log p_{k|j}``; agrees
    with :func:`mutual_information_from_entropies` to rounding.

    Examples:
        >>> mutual_information(outcome_probabilities(double_trine(), entangled_basis_povm()))
        1.369068423...
    """
    return information_from_joint(jd.p)


def mutual_information_from_entropies(jd: JointDistribution) -> float:
    """``H(state) + H(outcome) - H(state and outcome)``, in bits."""
    value = (
        shannon_entropy(jd.priors)
        + shannon_entropy(jd.outcome_marginal())
        - shannon_entropy(jd.p)
    )
    return max(0.0, value)
