import numpy as np
import pytest

from qdiscrim.trine.errors import InfeasibleOptimizationError, NormalizationError
from qdiscrim.trine.linalg import StateVector, identity, projector
from qdiscrim.trine.measurement import (
    Povm,
    WeightFit,
    concurrence,
    six_outcome_states,
    singlet_superposition_states,
    solve_completeness_constraint,
    solve_separability_constraint,
)


def test_separability_constraint():
    beta, gamma = solve_separability_constraint()
    assert beta == pytest.approx(np.sqrt(3) / 2, abs=1e-12)
    assert gamma == pytest.approx(0.5, abs=1e-12)


def test_completeness_constraint():
    beta2, gamma2 = solve_completeness_constraint()
    assert beta2 == pytest.approx(0.75, abs=1e-12)
    assert gamma2 == pytest.approx(0.25, abs=1e-12)


def test_constraints_agree():
    beta, gamma = solve_separability_constraint()
    beta2, gamma2 = solve_completeness_constraint()
    assert beta**2 == pytest.approx(beta2, abs=1e-12)
    assert gamma**2 == pytest.approx(gamma2, abs=1e-12)


def test_superpositions_reproduce_six_outcome_kets():
    kets = singlet_superposition_states(np.sqrt(3) / 2, 0.5)
    b, c = six_outcome_states(np.pi / 4)
    for ket, expected in zip(kets, b + c):
        assert ket.allclose(expected)
        assert concurrence(ket) < 1e-9


def test_weighted_superpositions_form_a_povm():
    kets = singlet_superposition_states(np.sqrt(3) / 2, 0.5)
    povm = Povm([(2 / 3) * projector(k) for k in kets])
    assert povm.report.defect_norm < 1e-12


def test_superposition_requires_unit_weights():
    with pytest.raises(NormalizationError):
        singlet_superposition_states(1.0, 0.5)


def test_weight_fit_exact():
    weights, residual = WeightFit().find_weights([identity(2) * 2])
    assert weights[0] == pytest.approx(0.5, abs=1e-12)
    assert residual < 1e-12


def test_weight_fit_reports_residual():
    weights, residual = WeightFit().find_weights([projector(StateVector([1, 0]))])
    assert weights[0] == pytest.approx(1.0, abs=1e-9)
    assert residual == pytest.approx(1.0, abs=1e-9)


def test_weight_fit_without_solution(monkeypatch):
    make_model = WeightFit._make_model

    def model_without_solution(self, columns, target):
        model = make_model(self, columns, target)

        def load_from(result):
            raise ValueError("Cannot load a SolverResults object with bad status: aborted")

        model.solutions.load_from = load_from
        return model

    monkeypatch.setattr(WeightFit, "_make_model", model_without_solution)
    fit = WeightFit()
    with pytest.raises(InfeasibleOptimizationError, match="time_limit"):
        fit.find_weights([identity(2) * 2], time_limit=1)
    assert fit.model is None
