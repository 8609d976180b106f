"""JSON codec for complex numbers: every scalar is written as ``{"re": .., "im": ..}``."""

import numpy as np

from ..errors import TrineError
from ..types import ComplexJSON


def encode_complex(z: complex) -> ComplexJSON:
    z = complex(z)
    return {"re": float(z.real), "im": float(z.imag)}


def decode_complex(obj: ComplexJSON) -> complex:
    try:
        return complex(float(obj["re"]), float(obj["im"]))
    except (KeyError, TypeError) as e:
        raise TrineError(
            f'Complex scalar must be an object with "re" and "im", got {obj!r}'
        ) from e


def encode_vector(vals: np.ndarray) -> list[ComplexJSON]:
    return [encode_complex(z) for z in np.asarray(vals).reshape(-1)]


def decode_vector(objs: list[ComplexJSON]) -> np.ndarray:
    return np.array([decode_complex(o) for o in objs], dtype=np.complex128)


def encode_matrix(mat: np.ndarray) -> list[list[ComplexJSON]]:
    return [encode_vector(row) for row in np.asarray(mat)]


def decode_matrix(rows: list[list[ComplexJSON]]) -> np.ndarray:
    mat = np.array([decode_vector(row) for row in rows], dtype=np.complex128)
    if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
        raise TrineError(f"Matrix must be square, got shape {mat.shape}")
    return mat
