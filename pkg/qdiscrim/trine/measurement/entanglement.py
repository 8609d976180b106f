import logging

import numpy as np

from ..config import PRODUCT_TOL, RANK_TOL
from ..errors import DimensionMismatchError
from ..linalg import Operator, StateVector, conjugate, inner, pauli_y, tensor_op
from .Povm import Povm, PovmClass

logger = logging.getLogger(__name__)

IMAGINARY_TOL = 1e-10


def concurrence_signed(v: StateVector) -> float:
    """Signed concurrence ``c = <v̄| Y⊗Y |v>`` of a two-qubit ket.

    ``<v̄|`` is ``<v|`` conjugated in the standard basis. ``c`` is real for kets with
    real amplitudes; otherwise the real part is returned and a warning is logged when
    the imaginary part exceeds 1e-10.

    Raises:
        DimensionMismatchError: If ``v`` is not a two-qubit ket.

    Examples:
        >>> round(concurrence_signed(StateVector([0, 2**-0.5, -2**-0.5, 0])), 12)
        -1.0
    """
    if v.dim != 4:
        raise DimensionMismatchError(f"Concurrence needs a two-qubit ket, got dim {v.dim}")
    yy = tensor_op(pauli_y(), pauli_y())
    c = inner(conjugate(v), yy @ v)
    if abs(c.imag) > IMAGINARY_TOL:
        logger.warning(
            f"Signed concurrence has imaginary part {c.imag:.3e}; returning the real part"
        )
    return float(c.real)


def concurrence(v: StateVector) -> float:
    """``C = |<v̄| Y⊗Y |v>|``: 0 for product states, 1 for maximally entangled ones."""
    if v.dim != 4:
        raise DimensionMismatchError(f"Concurrence needs a two-qubit ket, got dim {v.dim}")
    yy = tensor_op(pauli_y(), pauli_y())
    return abs(inner(conjugate(v), yy @ v))


def element_rank(element: Operator, tol: float = RANK_TOL) -> int:
    vals, _ = element.eigh()
    return int(np.sum(vals > tol))


def principal_ket(element: Operator) -> StateVector:
    """Normalized eigenvector of the largest eigenvalue: the ket of a rank-1 element."""
    _, vecs = element.eigh()
    return StateVector(vecs[:, -1]).normalized()


def classify_povm(povm: Povm) -> PovmClass:
    """Classify a two-qubit POVM as unentangled, entangled or indeterminate.

    Every rank-1 element is represented by its principal eigenvector; zero elements
    carry no ket and are skipped. Any element of rank two or more makes the
    measurement indeterminate, since separability of mixed operators is not decided.

    Args:
        povm (Povm): A valid two-qubit POVM.

    Returns:
        PovmClass: ``ENTANGLED`` if some ket has concurrence above 1e-9,
        ``UNENTANGLED`` if none has, ``INDETERMINATE`` for higher-rank elements.
    """
    if povm.dim != 4:
        raise DimensionMismatchError(f"Classification needs a two-qubit POVM, got dim {povm.dim}")
    entangled = False
    for label, element in zip(povm.labels, povm.elements):
        rank = element_rank(element)
        if rank == 0:
            continue
        if rank >= 2:
            logger.debug(f"Element {label} has rank {rank}; classification indeterminate")
            return PovmClass.INDETERMINATE
        if concurrence(principal_ket(element)) > PRODUCT_TOL:
            entangled = True
    return PovmClass.ENTANGLED if entangled else PovmClass.UNENTANGLED
