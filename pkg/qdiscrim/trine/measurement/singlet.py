"""Unentangled measurement built by superposing the entangled basis with the singlet.

The kets ``beta|A_j> ± gamma|S>`` are separable when ``beta^2/3 - gamma^2 = 0`` and,
weighted by 2/3, form a POVM when ``|beta|^2 = 3/4`` and ``|gamma|^2 = 1/4``. The two
independent requirements select the same pair, which reproduces the six-outcome
measurement: ``B_j = (sqrt 3/2) A_j - (1/2) S`` and ``C_j = (sqrt 3/2) A_j + (1/2) S``.
"""

import logging

import numpy as np

from ..config import COMPLETENESS_TOL
from ..errors import NormalizationError
from ..linalg import Operator, StateVector, conjugate, inner, pauli_y, tensor_op
from .constructions import entangled_basis_states, singlet_state
from .entanglement import concurrence_signed
from .WeightFit import WeightFit

logger = logging.getLogger(__name__)

SUPERPOSITION_WEIGHT = 2 / 3


def singlet_superposition_states(beta: complex, gamma: complex) -> list[StateVector]:
    """The six kets ``beta|A_j> - gamma|S>`` (j = 0, 1, 2) then ``beta|A_j> + gamma|S>``.

    Since every ``A_j`` is orthogonal to ``S``, the kets are normalized exactly when
    ``|beta|^2 + |gamma|^2 = 1``.

    Raises:
        NormalizationError: If ``|beta|^2 + |gamma|^2`` differs from 1 by more than 1e-10.
    """
    norm2 = abs(beta) ** 2 + abs(gamma) ** 2
    if abs(norm2 - 1) > 1e-10:
        raise NormalizationError(
            f"|beta|^2 + |gamma|^2 must be 1, got {norm2!r} for beta={beta!r}, gamma={gamma!r}"
        )
    a = entangled_basis_states()
    s = singlet_state()
    return [beta * a[j] - gamma * s for j in range(3)] + [
        beta * a[j] + gamma * s for j in range(3)
    ]


def solve_separability_constraint() -> tuple[float, float]:
    """Real positive ``(beta, gamma)`` making ``beta|A_0> ± gamma|S>`` unentangled.

    The signed concurrence of the superposition is
    ``beta^2 c(A_0) + gamma^2 c(S) + 2 beta gamma <Ā_0|Y⊗Y|S>``; the cross term
    vanishes, ``c(A_0) = 1/3`` and ``c(S) = -1``. Together with normalization this is
    a linear system in ``(beta^2, gamma^2)``. The same pair serves every j because
    ``U = u⊗u`` cycles the ``A_j``, fixes ``S`` and commutes with ``Y⊗Y``.

    Returns:
        tuple[float, float]: ``(sqrt(3)/2, 1/2)``.
    """
    a0 = entangled_basis_states()[0]
    s = singlet_state()
    yy = tensor_op(pauli_y(), pauli_y())
    cross = inner(conjugate(a0), yy @ s)
    assert abs(cross) < 1e-12, f"Cross term <A0|YY|S> should vanish, got {cross}"

    system = np.array([[concurrence_signed(a0), concurrence_signed(s)], [1.0, 1.0]])
    beta2, gamma2 = np.linalg.solve(system, np.array([0.0, 1.0]))
    logger.debug(f"Separability: beta^2 = {beta2!r}, gamma^2 = {gamma2!r}")
    return float(np.sqrt(beta2)), float(np.sqrt(gamma2))


def superposition_sum(beta: complex, gamma: complex) -> Operator:
    """``(2/3) sum_j [|beta A_j + gamma S><..| + |beta A_j - gamma S><..|]`` (no normalization check)."""
    a = entangled_basis_states()
    s = singlet_state().amplitudes
    total = np.zeros((4, 4), dtype=np.complex128)
    for j in range(3):
        for sign in (1, -1):
            v = beta * a[j].amplitudes + sign * gamma * s
            total += np.outer(v, v.conj())
    return Operator(SUPERPOSITION_WEIGHT * total)


def solve_completeness_constraint(solver_name: str = "appsi_highs") -> tuple[float, float]:
    """``(|beta|^2, |gamma|^2)`` for which the six weighted superpositions sum to the identity.

    The cross terms cancel between the ``+`` and ``-`` kets, so the sum equals
    ``|beta|^2 G_A + |gamma|^2 G_S`` with ``G_A = (4/3) sum_j |A_j><A_j|`` and
    ``G_S = 4|S><S|``. The nonnegative weights of the two blocks are fitted to the
    identity by linear programming.

    Args:
        solver_name (str, optional): Pyomo LP solver. Defaults to "appsi_highs".

    Returns:
        tuple[float, float]: ``(3/4, 1/4)``.
    """
    g_a = superposition_sum(1, 0)
    g_s = superposition_sum(0, 1)
    cross = superposition_sum(1, 1) - g_a - g_s
    assert cross.frobenius_norm() < 1e-12, "Cross terms of the superpositions should cancel"

    weights, residual = WeightFit().find_weights([g_a, g_s], solver_name=solver_name)
    if residual > COMPLETENESS_TOL:
        logger.warning(f"Completeness constraint solved only up to residual {residual:.3e}")
    return float(weights[0]), float(weights[1])
