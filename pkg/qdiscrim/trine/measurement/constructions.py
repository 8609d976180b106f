"""Constructors for every measurement built on the double-trine ensemble.

All states are stored with the real amplitudes of their closed forms, so that
componentwise comparisons between the constructions are meaningful.
"""

import logging

import numpy as np

from ..ensemble import double_trine, trine_states
from ..errors import IncompleteMeasurementError
from ..linalg import (
    Operator,
    StateVector,
    identity,
    projector,
    tensor,
    tensor_op,
)
from .Povm import Povm

logger = logging.getLogger(__name__)


def singlet_state() -> StateVector:
    """(|01> - |10>) / sqrt(2)"""
    return StateVector(np.array([0, 1, -1, 0]) / np.sqrt(2))


def entangled_basis_states() -> list[StateVector]:
    """The orthonormal kets ``|A_j>`` closest to the double-trine states.

    ``|A_j> = [(4 + sqrt 2)|a_j> - (2 - sqrt 2)(|a_{j+1}> + |a_{j+2}>)] / (3 sqrt 3)``
    with indices mod 3.
    """
    a = double_trine().states
    root2 = np.sqrt(2)
    scale = 1 / (3 * np.sqrt(3))
    return [
        scale * ((4 + root2) * a[j] - (2 - root2) * (a[(j + 1) % 3] + a[(j + 2) % 3]))
        for j in range(3)
    ]


def entangled_basis_povm() -> Povm:
    """Projective measurement onto ``{A_0, A_1, A_2, S}``."""
    kets = entangled_basis_states() + [singlet_state()]
    return Povm([projector(v) for v in kets], ["A0", "A1", "A2", "S"])


def trine_perp_states() -> list[StateVector]:
    """``psi_k^perp``: the qubit state orthogonal to each trine state."""
    return [StateVector([np.conj(p[1]), -np.conj(p[0])]) for p in trine_states()]


def single_qubit_trine_povm() -> Povm:
    """``Pi_k = (2/3)|psi_k^perp><psi_k^perp|``; outcome k rules out state k."""
    return Povm(
        [(2 / 3) * projector(v) for v in trine_perp_states()], ["Pi0", "Pi1", "Pi2"]
    )


def nine_outcome_product_povm() -> Povm:
    """The trine POVM performed independently on each qubit: ``Pi_j ⊗ Pi_k``."""
    pi = single_qubit_trine_povm().elements
    return Povm(
        [tensor_op(pi[j], pi[k]) for j in range(3) for k in range(3)],
        [f"Pi{j}Pi{k}" for j in range(3) for k in range(3)],
    )


def ideal_product_set() -> list[Operator]:
    """The six products ``Pi_j ⊗ Pi_k`` with ``j != k``.

    Each element rules out two of the three double-trine states, but the set is not a
    POVM; its sum falls short of the identity. Ordered as
    ``Pi0Pi1, Pi1Pi0, Pi1Pi2, Pi2Pi1, Pi2Pi0, Pi0Pi2``.
    """
    pi = single_qubit_trine_povm().elements
    pairs = [(0, 1), (1, 0), (1, 2), (2, 1), (2, 0), (0, 2)]
    return [tensor_op(pi[j], pi[k]) for j, k in pairs]


def rotation(theta: float) -> Operator:
    """Real rotation ``R`` turning a qubit state by ``theta`` in the x-z plane of the Bloch sphere."""
    c, s = np.cos(theta / 2), np.sin(theta / 2)
    return Operator([[c, -s], [s, c]])


def rotated_trine_states(theta: float) -> tuple[list[StateVector], list[StateVector]]:
    """``(phi^+, phi^-)`` with ``phi_j^+ = R psi_j`` and ``phi_j^- = R^{-1} psi_j``."""
    r = rotation(theta)
    r_inv = r.dagger()
    psi = trine_states()
    return [r @ p for p in psi], [r_inv @ p for p in psi]


def six_outcome_states(theta: float) -> tuple[list[StateVector], list[StateVector]]:
    """Product kets ``B_j = phi_j^+ ⊗ phi_j^-`` and ``C_j = phi_j^- ⊗ phi_j^+``."""
    plus, minus = rotated_trine_states(theta)
    b = [tensor(plus[j], minus[j]) for j in range(3)]
    c = [tensor(minus[j], plus[j]) for j in range(3)]
    return b, c


def six_outcome_elements(theta: float, alpha: float) -> list[Operator]:
    """``[E_0, E_1, E_2, F_0, F_1, F_2]`` with ``E_j = alpha|B_j><B_j|``, ``F_j = alpha|C_j><C_j|``.

    No validation is done; for most ``(theta, alpha)`` the set is not a POVM. The sum
    of the elements is ``alpha (3/2) [I + cos(2 theta)/2 (X⊗X + Z⊗Z)]``.
    """
    b, c = six_outcome_states(theta)
    return [alpha * projector(v) for v in b + c]


SIX_OUTCOME_LABELS = ["E0", "E1", "E2", "F0", "F1", "F2"]


def six_outcome_unentangled_povm(theta: float = np.pi / 4, alpha: float = 2 / 3) -> Povm:
    """The six-outcome unentangled measurement.

    The set is a POVM only for ``alpha = 2/3`` and ``cos(2 theta) = 0``, i.e. theta of
    45 or 135 degrees. The 45 degree choice is the one matching the entangled basis.

    Args:
        theta (float, optional): Bloch-sphere angle between ``phi_j^±`` and ``psi_j``.
            Defaults to pi/4.
        alpha (float, optional): Common weight of the six projectors. Defaults to 2/3.

    Returns:
        Povm: Outcomes labelled ``E0, E1, E2, F0, F1, F2``.

    Raises:
        IncompleteMeasurementError: If the elements do not sum to the identity; the
            error's ``defect`` holds ``sum(E_j + F_j) - I``.
        InvalidPovmError: If ``alpha`` is negative.
    """
    elements = six_outcome_elements(theta, alpha)
    try:
        return Povm(elements, SIX_OUTCOME_LABELS)
    except IncompleteMeasurementError as e:
        logger.debug(f"Six-outcome set at theta={theta!r}, alpha={alpha!r} is incomplete")
        raise IncompleteMeasurementError(
            f"Six-outcome set at theta={theta!r}, alpha={alpha!r} is not a POVM "
            f"(completeness defect {np.linalg.norm(e.defect):.3e})",
            e.defect,
            e.report,
        ) from e


def trace_weight(operators: list[Operator]) -> float:
    """Uniform weight ``alpha`` for which ``alpha * sum(tr(op)) == dim``.

    This is the necessary trace condition for ``{alpha * op}`` to be a POVM. For the
    six unweighted B/C projectors it gives 2/3.
    """
    dim = operators[0].dim
    total = sum(op.trace().real for op in operators)
    return dim / total


def cyclic_unitary() -> tuple[Operator, Operator]:
    """``(u, U)``: ``u psi_j = psi_{j+1}`` and ``U = u ⊗ u``.

    ``U`` cycles ``A_j``, ``B_j`` and ``C_j`` forward by one index, fixes the
    singlet, satisfies ``U^3 = I`` and commutes with ``Y ⊗ Y``.
    """
    half_root3 = np.sqrt(3) / 2
    u = Operator([[-0.5, half_root3], [-half_root3, -0.5]])
    return u, tensor_op(u, u)


def builtin_identity_povm(dim: int) -> Povm:
    """The single-outcome measurement; yields no information."""
    return Povm([identity(dim)], ["I"])
