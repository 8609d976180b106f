"""Unconstrained real encodings of POVMs.

``global`` mode encodes M arbitrary complex seed matrices and turns them into a POVM
by square-root normalization, so every raw vector decodes to a valid measurement.
``product`` mode encodes, per outcome, a weight and one Bloch direction per qubit;
the weighted products need not sum to the identity, so decoding reports a
feasibility defect instead.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import nnls

from ..config import (
    MAX_SLACK_TRACE,
    POSITIVITY_TOL,
    PRODUCT_FEASIBILITY_TOL,
    REGULARIZATION_EPS,
)
from ..errors import DimensionMismatchError
from ..linalg import Operator, StateVector, operator_sqrt
from ..measurement import (
    Povm,
    entangled_basis_povm,
    nine_outcome_product_povm,
    six_outcome_unentangled_povm,
    trine_perp_states,
)
from ..measurement.constructions import rotated_trine_states
from ..types import ComplexArray, RealArray

logger = logging.getLogger(__name__)

MODES = ["global", "product"]
# reals per outcome in product mode: weight root, (theta, phi) of each qubit
PRODUCT_BLOCK = 5
SLACK_LABEL = "slack"


def global_block(dim: int) -> int:
    """Reals per outcome in global mode: real and imaginary parts of a dim x dim seed."""
    return 2 * dim * dim


def block_size(mode: str, dim: int = 4) -> int:
    if mode == "global":
        return global_block(dim)
    if mode == "product":
        return PRODUCT_BLOCK
    raise ValueError(
        f'Parameterization mode "{mode}" is not implemented. Try one of {MODES}.'
    )


@dataclass(frozen=True)
class PovmParameterization:
    """
    Search space of M-outcome POVMs.

    Attributes:
        mode (str): ``"global"`` or ``"product"``.
        M (int): Number of outcomes (product mode may add a slack outcome on decode).
        raw (RealArray | None): Optional starting point of length ``size``.
        dim (int): Hilbert space dimension; product mode requires 4.
    """

    mode: str
    M: int
    raw: RealArray | None = field(default=None, compare=False)
    dim: int = 4

    def __post_init__(self):
        block_size(self.mode, self.dim)
        if self.M < 1:
            raise ValueError(f"A POVM needs at least one outcome, got M = {self.M}")
        if self.mode == "product" and self.dim != 4:
            raise DimensionMismatchError("Product mode parameterizes two-qubit POVMs only")
        if self.raw is not None and len(self.raw) != self.size:
            raise DimensionMismatchError(
                f"{self.mode} mode with M = {self.M} needs {self.size} reals, got {len(self.raw)}"
            )

    @property
    def size(self) -> int:
        return self.M * block_size(self.mode, self.dim)

    def decode(self, raw: RealArray | None = None) -> Povm | ProductDecode:
        raw = self.raw if raw is None else raw
        if raw is None:
            raise ValueError("No raw parameters to decode")
        if self.mode == "global":
            return decode_global(raw, self.dim)
        return decode_product(raw)


def _seed_matrices(raw: RealArray, dim: int) -> ComplexArray:
    raw = np.asarray(raw, dtype=np.float64)
    block = global_block(dim)
    if raw.size == 0 or raw.size % block != 0:
        raise DimensionMismatchError(
            f"Global raw vector length must be a positive multiple of {block}, got {raw.size}"
        )
    parts = raw.reshape(-1, 2, dim, dim)
    return parts[:, 0] + 1j * parts[:, 1]


def normalized_elements(seeds: ComplexArray, eps: float = REGULARIZATION_EPS) -> ComplexArray:
    """
    Square-root normalization ``S^{-1/2} G_k S^{-1/2}`` of ``G_k = M_k^dagger M_k``.

    ``S = sum_k G_k + eps I``, so the normalized elements sum to ``I - eps S^{-1}``.
    That positive residual is shared equally among the outcomes, which makes the
    result complete to rounding while keeping every element positive.

    Args:
        seeds (ComplexArray): Seed matrices ``M_k``, shape ``(M, d, d)``.
        eps (float, optional): Regularization keeping ``S`` invertible.

    Returns:
        ComplexArray: POVM elements, shape ``(M, d, d)``.
    """
    grams = np.conj(np.transpose(seeds, (0, 2, 1))) @ seeds
    dim = seeds.shape[-1]
    s = grams.sum(axis=0) + eps * np.eye(dim)
    vals, vecs = np.linalg.eigh((s + s.conj().T) / 2)
    s_inv_sqrt = (vecs / np.sqrt(vals)) @ vecs.conj().T
    elements = s_inv_sqrt @ grams @ s_inv_sqrt
    residual = np.eye(dim) - elements.sum(axis=0)
    elements = elements + (residual + residual.conj().T) / (2 * len(seeds))
    return (elements + np.conj(np.transpose(elements, (0, 2, 1)))) / 2


def global_elements(raw: RealArray, dim: int = 4) -> ComplexArray:
    return normalized_elements(_seed_matrices(raw, dim))


def decode_global(raw: RealArray, dim: int = 4) -> Povm:
    """Decode a global-mode raw vector into a POVM; valid for every input.

    Examples:
        >>> decode_global(np.zeros(32)).M
        1
    """
    elements = global_elements(raw, dim)
    return Povm([Operator(el) for el in elements])


def encode_global(povm: Povm) -> RealArray:
    """Raw vector with seeds ``M_k = sqrt(Pi_k)``; decodes back to ``povm`` up to ``eps``."""
    seeds = np.stack([operator_sqrt(el).matrix for el in povm.elements])
    return np.stack([seeds.real, seeds.imag], axis=1).ravel()


def global_from_kets(raw_kets: RealArray, dim: int = 4) -> RealArray:
    """
    Global raw vector whose seeds are ``M_k = |0><v_k|``, so ``G_k = |v_k><v_k|``.

    Decoding gives rank-one elements; with ``dim`` kets they form an orthonormal basis
    up to the regularization.

    Args:
        raw_kets (RealArray): Real and imaginary parts of M kets, shape ``(M * 2 * dim,)``.
        dim (int, optional): Hilbert space dimension. Defaults to 4.

    Returns:
        RealArray: Global-mode raw vector of length ``M * 2 * dim * dim``.
    """
    raw_kets = np.asarray(raw_kets, dtype=np.float64)
    if raw_kets.size == 0 or raw_kets.size % (2 * dim) != 0:
        raise DimensionMismatchError(
            f"Ket vector length must be a positive multiple of {2 * dim}, got {raw_kets.size}"
        )
    parts = raw_kets.reshape(-1, 2, dim)
    kets = parts[:, 0] + 1j * parts[:, 1]
    seeds = np.zeros((len(kets), dim, dim), dtype=np.complex128)
    seeds[:, 0, :] = kets.conj()
    return np.stack([seeds.real, seeds.imag], axis=1).ravel()


def bloch_ket(theta: float, phi: float) -> ComplexArray:
    return np.array([np.cos(theta / 2), np.exp(1j * phi) * np.sin(theta / 2)])


def ket_angles(v: StateVector | ComplexArray) -> tuple[float, float]:
    """``(theta, phi)`` of a qubit ket, ignoring its global phase."""
    amps = np.asarray(v, dtype=np.complex128)
    amps = amps / np.linalg.norm(amps)
    theta = 2 * np.arctan2(abs(amps[1]), abs(amps[0]))
    phi = np.angle(amps[1]) - np.angle(amps[0]) if abs(amps[1]) > 0 else 0.0
    return float(theta), float(phi)


def product_candidates(raw: RealArray) -> ComplexArray:
    """Weighted product projectors ``w_k |p_k q_k><p_k q_k|`` with ``w_k = raw_w^2``."""
    raw = np.asarray(raw, dtype=np.float64)
    if raw.size == 0 or raw.size % PRODUCT_BLOCK != 0:
        raise DimensionMismatchError(
            f"Product raw vector length must be a positive multiple of {PRODUCT_BLOCK}, got {raw.size}"
        )
    blocks = raw.reshape(-1, PRODUCT_BLOCK)
    kets = product_kets(blocks[:, 1:])
    weights = blocks[:, 0] ** 2
    return weights[:, None, None] * np.einsum("ka,kb->kab", kets, kets.conj())


def repair_with_slack(candidates: ComplexArray) -> tuple[ComplexArray, float, bool]:
    """
    Append ``I - sum`` when it is a positive operator of trace at most ``MAX_SLACK_TRACE``.

    Returns:
        tuple[ComplexArray, float, bool]: The (possibly extended) elements, the
        Frobenius completeness defect after repair and whether a slack was added.
    """
    dim = candidates.shape[-1]
    slack = np.eye(dim) - candidates.sum(axis=0)
    defect = float(np.linalg.norm(slack))
    if defect <= PRODUCT_FEASIBILITY_TOL:
        return candidates, defect, False
    slack = (slack + slack.conj().T) / 2
    if (
        np.linalg.eigvalsh(slack)[0] >= -POSITIVITY_TOL
        and np.trace(slack).real <= MAX_SLACK_TRACE
    ):
        repaired = np.concatenate([candidates, slack[None]], axis=0)
        return repaired, float(np.linalg.norm(np.eye(dim) - repaired.sum(axis=0))), True
    return candidates, defect, False


@dataclass
class ProductDecode:
    """Outcome of decoding a product-mode raw vector.

    ``povm`` is None exactly when ``feasible`` is False; ``defect`` is the Frobenius
    norm of ``sum(elements) - I`` after the slack repair.
    """

    povm: Povm | None
    defect: float
    feasible: bool
    slack_added: bool = False


def decode_product(raw: RealArray) -> ProductDecode:
    """Decode a product-mode raw vector; infeasibility is returned, not raised.

    Examples:
        >>> decode_product(np.zeros(5)).defect
        2.0
    """
    candidates = product_candidates(raw)
    elements, defect, slack_added = repair_with_slack(candidates)
    if defect > PRODUCT_FEASIBILITY_TOL:
        return ProductDecode(None, defect, False)
    labels = [f"P{k}" for k in range(len(candidates))]
    if slack_added:
        logger.debug("Product decode completed by a slack element")
        labels.append(SLACK_LABEL)
    povm = Povm(
        [Operator(el) for el in elements], labels, completeness_tol=PRODUCT_FEASIBILITY_TOL
    )
    return ProductDecode(povm, defect, True, slack_added)


def encode_product(
    weights: list[float] | RealArray,
    first: list[StateVector],
    second: list[StateVector],
) -> RealArray:
    """Raw vector for elements ``w_k |first_k><first_k| ⊗ |second_k><second_k|``."""
    if not len(weights) == len(first) == len(second):
        raise DimensionMismatchError("Need one weight and one ket per qubit for every outcome")
    blocks = []
    for w, a, b in zip(weights, first, second):
        if w < 0:
            raise ValueError(f"Weights must be nonnegative, got {w}")
        blocks.append([np.sqrt(w), *ket_angles(a), *ket_angles(b)])
    return np.array(blocks, dtype=np.float64).ravel()


def product_kets(angles: RealArray) -> ComplexArray:
    """Two-qubit product kets from rows ``(theta_0, phi_0, theta_1, phi_1)``."""
    angles = np.asarray(angles, dtype=np.float64).reshape(-1, 4)
    first = np.stack([bloch_ket(t, p) for t, p in angles[:, 0:2]])
    second = np.stack([bloch_ket(t, p) for t, p in angles[:, 2:4]])
    return np.einsum("ka,kb->kab", first, second).reshape(-1, 4)


def product_from_angles(angles: RealArray) -> RealArray:
    """
    Product raw vector for the given Bloch angles, with weights fitted to the identity.

    The weights are the nonnegative least-squares fit of ``sum_k w_k P_k`` to ``I``,
    scaled down (or up) until the largest eigenvalue of the sum is 1. The slack
    ``I - sum`` is then positive, so only its trace decides whether the point decodes.

    Args:
        angles (RealArray): Rows ``(theta_0, phi_0, theta_1, phi_1)``, shape ``(M, 4)``
            or flattened.

    Returns:
        RealArray: Product-mode raw vector of length ``5 * M``.
    """
    angles = np.asarray(angles, dtype=np.float64).reshape(-1, 4)
    kets = product_kets(angles)
    projectors = np.einsum("ka,kb->kab", kets, kets.conj())
    flat = projectors.reshape(len(kets), -1).T
    design = np.concatenate([flat.real, flat.imag], axis=0)
    target = np.concatenate([np.eye(4).ravel(), np.zeros(16)])
    weights, _ = nnls(design, target)
    top = np.linalg.eigvalsh(np.einsum("k,kab->ab", weights, projectors))[-1]
    if top > POSITIVITY_TOL:
        weights = weights / top
    return np.column_stack([np.sqrt(weights), angles]).ravel()


def warm_starts(mode: str, M: int, dim: int = 4) -> list[RealArray]:
    """Raw vectors of the known double-trine constructions with M outcomes.

    Global mode: entangled basis (4), six-outcome measurement (6), nine-outcome product
    measurement (9). Product mode: six-outcome (6) and nine-outcome (9) measurements.
    """
    block_size(mode, dim)
    if dim != 4:
        return []
    if mode == "global":
        builtin = {4: entangled_basis_povm, 6: six_outcome_unentangled_povm, 9: nine_outcome_product_povm}
        return [encode_global(builtin[M]())] if M in builtin else []
    if M == 6:
        # B_j = phi_j^+ ⊗ phi_j^- and C_j = phi_j^- ⊗ phi_j^+
        plus, minus = rotated_trine_states(np.pi / 4)
        return [encode_product([2 / 3] * 6, plus + minus, minus + plus)]
    if M == 9:
        perp = trine_perp_states()
        return [
            encode_product(
                [4 / 9] * 9,
                [perp[j] for j in range(3) for _ in range(3)],
                [perp[k] for _ in range(3) for k in range(3)],
            )
        ]
    return []
