from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Any

import numpy as np

from ..config import COMPLETENESS_TOL, EIGEN_HERMITIAN_TOL, POSITIVITY_TOL
from ..errors import (
    DimensionMismatchError,
    IncompleteMeasurementError,
    InvalidPovmError,
    TrineError,
)
from ..linalg import Operator
from ..types import ComplexArray


class PovmClass(Enum):
    UNENTANGLED = "unentangled"
    ENTANGLED = "entangled"
    INDETERMINATE = "indeterminate"


@dataclass
class PovmReport:
    """Diagnostics of a candidate set of measurement operators."""

    dim: int
    n_elements: int
    hermitian: list[bool] = field(default_factory=list)
    min_eigenvalues: list[float] = field(default_factory=list)
    defect: ComplexArray | None = None
    defect_norm: float = float("nan")
    positivity_tol: float = POSITIVITY_TOL
    completeness_tol: float = COMPLETENESS_TOL

    @property
    def positive(self) -> bool:
        return self.n_elements > 0 and all(
            h and ev >= -self.positivity_tol
            for h, ev in zip(self.hermitian, self.min_eigenvalues)
        )

    @property
    def complete(self) -> bool:
        return self.n_elements > 0 and self.defect_norm <= self.completeness_tol

    @property
    def valid(self) -> bool:
        return self.positive and self.complete

    def problems(self) -> list[str]:
        """Human-readable list of violated invariants (empty if valid)."""
        if self.n_elements == 0:
            return ["empty element list: a POVM needs at least one element"]
        issues = []
        for k, (h, ev) in enumerate(zip(self.hermitian, self.min_eigenvalues)):
            if not h:
                issues.append(f"element {k} is not Hermitian")
            elif ev < -self.positivity_tol:
                issues.append(
                    f"element {k} is not positive (min eigenvalue {ev:.3e} < -{self.positivity_tol:g})"
                )
        if not self.complete:
            issues.append(
                f"elements do not sum to the identity (defect {self.defect_norm:.3e} > {self.completeness_tol:g})"
            )
        return issues


def completeness_defect(elements: list[Operator]) -> ComplexArray:
    """``sum(elements) - I`` as a matrix."""
    if len(elements) == 0:
        raise DimensionMismatchError("Cannot sum an empty list of operators")
    dim = elements[0].dim
    total = np.zeros((dim, dim), dtype=np.complex128)
    for el in elements:
        if el.dim != dim:
            raise DimensionMismatchError(
                f"All elements must share one dimension, got {dim} and {el.dim}"
            )
        total += el.matrix
    return total - np.eye(dim)


def povm_report(
    elements: list[Operator],
    positivity_tol: float = POSITIVITY_TOL,
    completeness_tol: float = COMPLETENESS_TOL,
) -> PovmReport:
    """Check positivity and completeness of a candidate set of operators.

    Args:
        elements (list[Operator]): Candidate POVM elements.
        positivity_tol (float, optional): Allowed negative eigenvalue magnitude.
        completeness_tol (float, optional): Allowed Frobenius norm of ``sum - I``.

    Returns:
        PovmReport: Hermiticity and minimal eigenvalue of each element and the
        completeness defect. ``report.valid`` tells whether the set is a POVM.
    """
    if len(elements) == 0:
        return PovmReport(dim=0, n_elements=0)
    defect = completeness_defect(elements)
    hermitian = [el.is_hermitian(EIGEN_HERMITIAN_TOL) for el in elements]
    min_eigs = [
        el.min_eigenvalue() if h else float("nan")
        for el, h in zip(elements, hermitian)
    ]
    return PovmReport(
        dim=elements[0].dim,
        n_elements=len(elements),
        hermitian=hermitian,
        min_eigenvalues=min_eigs,
        defect=defect,
        defect_norm=float(np.linalg.norm(defect)),
        positivity_tol=positivity_tol,
        completeness_tol=completeness_tol,
    )


class Povm:
    """
    A positive-operator-valued measure: positive operators summing to the identity.

    Construction validates both invariants and raises otherwise, so every
    instance in circulation is a legitimate measurement.
    """

    def __init__(
        self,
        elements: list[Operator],
        labels: list[str] | None = None,
        completeness_tol: float = COMPLETENESS_TOL,
    ):
        elements = list(elements)
        if labels is None:
            labels = [f"P{k}" for k in range(len(elements))]
        if len(labels) != len(elements):
            raise DimensionMismatchError(
                f"Got {len(elements)} elements but {len(labels)} labels"
            )
        report = povm_report(elements, completeness_tol=completeness_tol)
        if not report.valid:
            message = "Not a POVM: " + "; ".join(report.problems())
            if report.positive:
                raise IncompleteMeasurementError(message, report.defect, report)
            raise InvalidPovmError(message, report)
        self.__elements = elements
        self.__labels = list(labels)
        self.__report = report

    @property
    def elements(self) -> list[Operator]:
        return list(self.__elements)

    @property
    def labels(self) -> list[str]:
        return list(self.__labels)

    @property
    def dim(self) -> int:
        return self.__elements[0].dim

    @property
    def M(self) -> int:
        """Number of outcomes."""
        return len(self.__elements)

    @property
    def report(self) -> PovmReport:
        return self.__report

    def __len__(self) -> int:
        return self.M

    def matrices(self) -> ComplexArray:
        """Elements stacked into an array of shape ``(M, dim, dim)``."""
        return np.stack([el.matrix for el in self.__elements])

    def permuted(self, order: list[int]) -> Povm:
        if sorted(order) != list(range(self.M)):
            raise ValueError(f"{order} is not a permutation of the {self.M} outcomes")
        return Povm(
            [self.__elements[i] for i in order],
            [self.__labels[i] for i in order],
            completeness_tol=self.__report.completeness_tol,
        )

    def to_json(self) -> dict[str, Any]:
        return {
            "dim": self.dim,
            "elements": [el.to_json() for el in self.__elements],
            "labels": self.labels,
        }

    @classmethod
    def from_json(cls, obj: dict[str, Any]) -> Povm:
        elements, labels = operators_from_json(obj)
        return cls(elements, labels)

    def __repr__(self):
        return f"Povm(dim={self.dim}, M={self.M}, labels={self.__labels})"


def operators_from_json(obj: dict[str, Any]) -> tuple[list[Operator], list[str] | None]:
    """Parse the operators of a POVM document without validating POVM-ness."""
    try:
        dim = int(obj["dim"])
        elements = [Operator.from_json(rows) for rows in obj["elements"]]
        labels = obj.get("labels")
    except (KeyError, TypeError, AttributeError) as e:
        raise TrineError(f"Malformed POVM document: missing or bad {e}") from e
    for k, el in enumerate(elements):
        if el.dim != dim:
            raise DimensionMismatchError(
                f'POVM document declares "dim": {dim} but element {k} has dimension {el.dim}'
            )
    return elements, labels


def read_povm(path: Path | str) -> Povm:
    with Path(path).open(encoding="utf-8") as f:
        return Povm.from_json(json.load(f))


def write_povm(povm: Povm, path: Path | str) -> None:
    with Path(path).open("w", encoding="utf-8") as f:
        json.dump(povm.to_json(), f, indent=2)
        f.write("\n")
