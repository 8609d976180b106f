from __future__ import annotations

import json
from pathlib import Path
from typing import Any

import numpy as np

from ..config import NORMALIZATION_TOL, PROBABILITY_CLAMP_TOL
from ..errors import (
    DimensionMismatchError,
    NegativeProbabilityError,
    NormalizationError,
    PriorsNotNormalizedError,
    TrineError,
)
from ..linalg import StateVector, product_factors
from ..types import ComplexArray, RealArray


class Ensemble:
    """
    A finite ensemble of pure states with prior probabilities.

    The states all share one dimension and are normalized; the priors are
    nonnegative and sum to one. Instances are immutable.
    """

    def __init__(
        self,
        states: list[StateVector],
        priors: list[float] | RealArray,
        labels: list[str] | None = None,
    ):
        states = list(states)
        priors = np.array(priors, dtype=np.float64).reshape(-1)
        if len(states) == 0:
            raise DimensionMismatchError("An ensemble needs at least one state")
        if len(states) != priors.shape[0]:
            raise DimensionMismatchError(
                f"Got {len(states)} states but {priors.shape[0]} priors"
            )
        dims = {s.dim for s in states}
        if len(dims) > 1:
            raise DimensionMismatchError(
                f"All states of an ensemble must share one dimension, got {sorted(dims)}"
            )
        for j, state in enumerate(states):
            if not state.is_normalized(NORMALIZATION_TOL):
                raise NormalizationError(
                    f"State {j} is not normalized (norm^2 = {state.norm ** 2!r})"
                )
        if np.any(priors < -PROBABILITY_CLAMP_TOL):
            raise NegativeProbabilityError(f"Priors must be nonnegative, got {priors}")
        if abs(priors.sum() - 1) > NORMALIZATION_TOL:
            raise PriorsNotNormalizedError(
                f"priors not normalized (sum = {priors.sum()!r})"
            )
        if labels is None:
            labels = [f"a{j}" for j in range(len(states))]
        if len(labels) != len(states):
            raise DimensionMismatchError("Incorrect length of list of state labels.")

        priors = np.clip(priors, 0, None)
        priors.flags.writeable = False
        self.__states = states
        self.__priors = priors
        self.__labels = list(labels)

    @property
    def states(self) -> list[StateVector]:
        return list(self.__states)

    @property
    def priors(self) -> RealArray:
        return self.__priors

    @property
    def labels(self) -> list[str]:
        return list(self.__labels)

    @property
    def dim(self) -> int:
        return self.__states[0].dim

    @property
    def size(self) -> int:
        return len(self.__states)

    def __len__(self) -> int:
        return self.size

    def amplitudes(self) -> ComplexArray:
        """States stacked as rows, shape ``(size, dim)``."""
        return np.stack([s.amplitudes for s in self.__states])

    def gram(self) -> ComplexArray:
        """Gram matrix ``G[i, j] = <s_i|s_j>``."""
        amps = self.amplitudes()
        return amps.conj() @ amps.T

    def marginal(self, qubit: int) -> Ensemble:
        """Single-qubit ensemble of one factor of each (product) two-qubit state.

        Raises:
            DimensionMismatchError: If the ensemble is not two-qubit.
            EntangledStateError: If any state is entangled.
        """
        if self.dim != 4:
            raise DimensionMismatchError("Marginals exist only for two-qubit ensembles")
        if qubit not in (0, 1):
            raise ValueError(f"Qubit index must be 0 or 1, got {qubit}")
        factors = [product_factors(s)[qubit] for s in self.__states]
        return Ensemble(factors, self.__priors, self.__labels)

    def to_json(self) -> dict[str, Any]:
        return {
            "dim": self.dim,
            "states": [s.to_json() for s in self.__states],
            "priors": [float(p) for p in self.__priors],
        }

    @classmethod
    def from_json(cls, obj: dict[str, Any]) -> Ensemble:
        try:
            dim = int(obj["dim"])
            states = [StateVector.from_json(s) for s in obj["states"]]
            priors = [float(p) for p in obj["priors"]]
        except (KeyError, TypeError) as e:
            raise TrineError(f"Malformed ensemble document: missing or bad {e}") from e
        if any(s.dim != dim for s in states):
            raise DimensionMismatchError(
                f'Ensemble document declares "dim": {dim} but holds states of other dimensions'
            )
        return cls(states, priors)

    def __repr__(self):
        return f"Ensemble(dim={self.dim}, size={self.size})"


def read_ensemble(path: Path | str) -> Ensemble:
    with Path(path).open(encoding="utf-8") as f:
        return Ensemble.from_json(json.load(f))


def write_ensemble(ensemble: Ensemble, path: Path | str) -> None:
    with Path(path).open("w", encoding="utf-8") as f:
        json.dump(ensemble.to_json(), f, indent=2)
        f.write("\n")
