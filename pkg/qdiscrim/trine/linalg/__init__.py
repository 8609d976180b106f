from .Operator import Operator
from .StateVector import StateVector
from .utils import (
    conjugate,
    hermitian_eigenvalues,
    identity,
    inner,
    operator_inverse_sqrt,
    operator_sqrt,
    pauli_x,
    pauli_y,
    pauli_z,
    product_factors,
    projector,
    state_angle,
    tensor,
    tensor_op,
)
