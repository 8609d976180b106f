from __future__ import annotations

import numpy as np

from ..config import EIGEN_HERMITIAN_TOL, HERMITIAN_TOL, POSITIVITY_TOL
from ..errors import DimensionMismatchError, NotHermitianError
from ..types import ComplexArray, ComplexJSON, RealArray, Scalar
from .codec import decode_matrix, encode_matrix
from .StateVector import SUPPORTED_DIMS, StateVector


class Operator:
    """
    An immutable complex square matrix acting on one qubit (dim 2) or two qubits (dim 4).

    Holds POVM elements, Kraus operators, Pauli matrices and the unitaries used to
    build the measurements. ``A @ B`` composes operators and ``A @ v`` applies the
    operator to a :class:`StateVector`.
    """

    __array_ufunc__ = None

    def __init__(self, matrix: ComplexArray | list[list[Scalar]]):
        mat = np.array(matrix, dtype=np.complex128)
        if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
            raise DimensionMismatchError(
                f"Operators must be square matrices, got shape {mat.shape}"
            )
        if mat.shape[0] not in SUPPORTED_DIMS:
            raise DimensionMismatchError(
                f"Operators must have dimension 2 or 4, got {mat.shape[0]}"
            )
        mat.flags.writeable = False
        self.__matrix = mat

    @classmethod
    def identity(cls, dim: int) -> Operator:
        return cls(np.eye(dim, dtype=np.complex128))

    @classmethod
    def zeros(cls, dim: int) -> Operator:
        return cls(np.zeros((dim, dim), dtype=np.complex128))

    @property
    def matrix(self) -> ComplexArray:
        return self.__matrix

    @property
    def dim(self) -> int:
        return self.__matrix.shape[0]

    def dagger(self) -> Operator:
        return Operator(self.__matrix.conj().T)

    def trace(self) -> complex:
        return complex(np.trace(self.__matrix))

    def frobenius_norm(self) -> float:
        return float(np.linalg.norm(self.__matrix))

    def is_hermitian(self, tol: float = HERMITIAN_TOL) -> bool:
        return bool(np.all(np.abs(self.__matrix - self.__matrix.conj().T) <= tol))

    def eigh(self, tol: float = EIGEN_HERMITIAN_TOL) -> tuple[RealArray, ComplexArray]:
        """Ascending eigenvalues and the matching orthonormal eigenvectors (as columns).

        Raises:
            NotHermitianError: If the operator is not Hermitian within ``tol``.
        """
        if not self.is_hermitian(tol):
            raise NotHermitianError(f"Operator is not Hermitian:\n{self}")
        # symmetrize so that LAPACK sees exactly the Hermitian part
        herm = (self.__matrix + self.__matrix.conj().T) / 2
        return np.linalg.eigh(herm)

    def min_eigenvalue(self) -> float:
        return float(self.eigh()[0][0])

    def is_positive(self, tol: float = POSITIVITY_TOL) -> bool:
        return self.is_hermitian(EIGEN_HERMITIAN_TOL) and self.min_eigenvalue() >= -tol

    def expectation(self, state: StateVector) -> complex:
        """<v|A|v>"""
        self._check_dim(state.dim)
        vals = state.amplitudes
        return complex(np.vdot(vals, self.__matrix @ vals))

    def allclose(self, other: Operator, atol: float = 1e-12) -> bool:
        return self.dim == other.dim and np.allclose(
            self.__matrix, other.matrix, rtol=0, atol=atol
        )

    def _check_dim(self, dim: int) -> None:
        if self.dim != dim:
            raise DimensionMismatchError(f"Dimension mismatch: {self.dim} and {dim}")

    def __matmul__(self, other: Operator | StateVector) -> Operator | StateVector:
        if isinstance(other, StateVector):
            self._check_dim(other.dim)
            return StateVector(self.__matrix @ other.amplitudes)
        if isinstance(other, Operator):
            self._check_dim(other.dim)
            return Operator(self.__matrix @ other.matrix)
        return NotImplemented

    def __add__(self, other: Operator) -> Operator:
        self._check_dim(other.dim)
        return Operator(self.__matrix + other.matrix)

    def __sub__(self, other: Operator) -> Operator:
        self._check_dim(other.dim)
        return Operator(self.__matrix - other.matrix)

    def __neg__(self) -> Operator:
        return Operator(-self.__matrix)

    def __mul__(self, scalar: Scalar) -> Operator:
        return Operator(self.__matrix * scalar)

    __rmul__ = __mul__

    def __array__(self, dtype=None, copy=None) -> ComplexArray:
        if dtype is None:
            return self.__matrix.copy()
        return self.__matrix.astype(dtype)

    def to_json(self) -> list[list[ComplexJSON]]:
        return encode_matrix(self.__matrix)

    @classmethod
    def from_json(cls, rows: list[list[ComplexJSON]]) -> Operator:
        return cls(decode_matrix(rows))

    def __repr__(self):
        return f"Operator(dim={self.dim})"

    def __str__(self):
        return np.array2string(self.__matrix, precision=4)
