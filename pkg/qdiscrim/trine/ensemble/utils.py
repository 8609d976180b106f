import numpy as np

from ..linalg import StateVector, tensor
from ..types import Scalar
from .Ensemble import Ensemble


def trine_states() -> list[StateVector]:
    """The three trine states, phased so that every pairwise inner product is -1/2.

    Returns:
        list[StateVector]: ``psi_0 = (1, 0)``, ``psi_1 = (-1/2, -sqrt(3)/2)``,
        ``psi_2 = (-1/2, sqrt(3)/2)``.
    """
    half_root3 = np.sqrt(3) / 2
    return [
        StateVector([1, 0]),
        StateVector([-0.5, -half_root3]),
        StateVector([-0.5, half_root3]),
    ]


def trine_ensemble() -> Ensemble:
    """The trine states of one qubit with equal priors."""
    return Ensemble(trine_states(), [1 / 3] * 3, labels=["psi0", "psi1", "psi2"])


def double_trine() -> Ensemble:
    """The double-trine ensemble ``a_j = psi_j ⊗ psi_j`` with priors 1/3.

    Every pair of states has inner product 1/4 (an angle of about 75.5 degrees), and
    all three lie in the triplet subspace, orthogonal to the singlet.
    """
    return Ensemble([tensor(psi, psi) for psi in trine_states()], [1 / 3] * 3)


def make_ensemble(
    states: list[StateVector | list[Scalar] | np.ndarray],
    priors: list[float] | np.ndarray,
) -> Ensemble:
    """Validate states and priors into an :class:`Ensemble`.

    Args:
        states (list): Kets, given as :class:`StateVector` or as amplitude sequences.
        priors (list[float]): Prior probability of each state.

    Returns:
        Ensemble: The validated ensemble.

    Raises:
        DimensionMismatchError: On mismatched lengths or state dimensions.
        NormalizationError: If a state is not normalized.
        NegativeProbabilityError: If a prior is negative.
        PriorsNotNormalizedError: If the priors do not sum to one.

    Examples:
        >>> make_ensemble([[1, 0], [0, 1]], [0.5, 0.5]).size
        2
    """
    kets = [s if isinstance(s, StateVector) else StateVector(s) for s in states]
    return Ensemble(kets, priors)
