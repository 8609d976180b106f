from __future__ import annotations

import numpy as np

from ..config import NORMALIZATION_TOL
from ..errors import DimensionMismatchError, NormalizationError
from ..types import ComplexArray, ComplexJSON, Scalar
from .codec import decode_vector, encode_vector

SUPPORTED_DIMS = (2, 4)


class StateVector:
    """
    An immutable ket of one qubit (dim 2) or a pair of qubits (dim 4).

    Two-qubit amplitudes are ordered in the standard basis
    ``{|00>, |01>, |10>, |11>}``, row-major over the first qubit.
    """

    # numpy scalars defer to __rmul__ instead of coercing through __array__
    __array_ufunc__ = None

    def __init__(self, amplitudes: ComplexArray | list[Scalar]):
        vals = np.array(amplitudes, dtype=np.complex128).reshape(-1)
        if vals.shape[0] not in SUPPORTED_DIMS:
            raise DimensionMismatchError(
                f"State vectors must have dimension 2 or 4, got {vals.shape[0]}"
            )
        vals.flags.writeable = False
        self.__amplitudes = vals

    @classmethod
    def basis(cls, index: int, dim: int = 2) -> StateVector:
        vals = np.zeros(dim, dtype=np.complex128)
        vals[index] = 1
        return cls(vals)

    @property
    def amplitudes(self) -> ComplexArray:
        return self.__amplitudes

    @property
    def dim(self) -> int:
        return self.__amplitudes.shape[0]

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.__amplitudes))

    def is_normalized(self, tol: float = NORMALIZATION_TOL) -> bool:
        norm2 = float(np.vdot(self.__amplitudes, self.__amplitudes).real)
        return abs(norm2 - 1) <= tol

    def require_normalized(self, tol: float = NORMALIZATION_TOL) -> None:
        if not self.is_normalized(tol):
            raise NormalizationError(
                f"State {self} is not normalized (norm^2 = {self.norm ** 2!r})"
            )

    def normalized(self) -> StateVector:
        norm = self.norm
        if norm == 0:
            raise NormalizationError("Cannot normalize the zero vector")
        return StateVector(self.__amplitudes / norm)

    def allclose(self, other: StateVector, atol: float = 1e-12) -> bool:
        return self.dim == other.dim and np.allclose(
            self.__amplitudes, other.amplitudes, rtol=0, atol=atol
        )

    def _check_dim(self, other: StateVector) -> None:
        if self.dim != other.dim:
            raise DimensionMismatchError(
                f"Dimension mismatch: {self.dim} and {other.dim}"
            )

    def __add__(self, other: StateVector) -> StateVector:
        self._check_dim(other)
        return StateVector(self.__amplitudes + other.amplitudes)

    def __sub__(self, other: StateVector) -> StateVector:
        self._check_dim(other)
        return StateVector(self.__amplitudes - other.amplitudes)

    def __neg__(self) -> StateVector:
        return StateVector(-self.__amplitudes)

    def __mul__(self, scalar: Scalar) -> StateVector:
        return StateVector(self.__amplitudes * scalar)

    __rmul__ = __mul__

    def __truediv__(self, scalar: Scalar) -> StateVector:
        return StateVector(self.__amplitudes / scalar)

    def __getitem__(self, index: int) -> complex:
        return complex(self.__amplitudes[index])

    def __len__(self) -> int:
        return self.dim

    def __array__(self, dtype=None, copy=None) -> ComplexArray:
        if dtype is None:
            return self.__amplitudes.copy()
        return self.__amplitudes.astype(dtype)

    def to_json(self) -> list[ComplexJSON]:
        return encode_vector(self.__amplitudes)

    @classmethod
    def from_json(cls, objs: list[ComplexJSON]) -> StateVector:
        return cls(decode_vector(objs))

    def __repr__(self):
        return f"StateVector({np.array2string(self.__amplitudes, precision=6)})"

    def __str__(self):
        return np.array2string(self.__amplitudes, precision=4)
