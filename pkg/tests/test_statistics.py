import io
import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from qdiscrim.trine.ensemble import double_trine, make_ensemble, trine_ensemble
from qdiscrim.trine.errors import DimensionMismatchError, NegativeProbabilityError, NormalizationError
from qdiscrim.trine.measurement import (
    builtin_identity_povm,
    entangled_basis_povm,
    nine_outcome_product_povm,
    single_qubit_trine_povm,
    six_outcome_unentangled_povm,
)
from qdiscrim.trine.statistics import (
    JointDistribution,
    mutual_information,
    mutual_information_from_entropies,
    outcome_probabilities,
    shannon_entropy,
)

from .conftest import P_HIT, Q_MISS


def test_entangled_basis_conditionals():
    cond = outcome_probabilities(double_trine(), entangled_basis_povm()).conditionals()
    for j, k in itertools.product(range(3), range(3)):
        expected = P_HIT if j == k else Q_MISS
        assert cond[j, k] == pytest.approx(expected, abs=1e-12)
    np.testing.assert_allclose(cond[:, 3], 0, atol=1e-15)
    assert P_HIT == pytest.approx(0.971, abs=5e-4)
    assert Q_MISS == pytest.approx(0.014, abs=5e-4)


def test_entangled_basis_information(closed_form_bits):
    info = mutual_information(outcome_probabilities(double_trine(), entangled_basis_povm()))
    assert info == pytest.approx(closed_form_bits, abs=1e-12)
    assert info == pytest.approx(1.369, abs=5e-4)


def test_six_outcome_matches_entangled_basis(closed_form_bits):
    six = outcome_probabilities(double_trine(), six_outcome_unentangled_povm())
    assert mutual_information(six) == pytest.approx(closed_form_bits, abs=1e-12)


def test_six_outcome_conditionals_are_halved():
    three = outcome_probabilities(double_trine(), entangled_basis_povm()).conditionals()
    six = outcome_probabilities(double_trine(), six_outcome_unentangled_povm()).conditionals()
    for k in range(3):
        np.testing.assert_allclose(six[:, k], three[:, k] / 2, atol=1e-12)
        np.testing.assert_allclose(six[:, k + 3], three[:, k] / 2, atol=1e-12)


def test_theta_135_is_worse(closed_form_bits):
    info = mutual_information(
        outcome_probabilities(double_trine(), six_outcome_unentangled_povm(3 * np.pi / 4))
    )
    assert info < closed_form_bits - 1e-3


def test_product_baselines():
    nine = mutual_information(outcome_probabilities(double_trine(), nine_outcome_product_povm()))
    assert nine == pytest.approx(np.log2(3) - 0.5, abs=1e-12)
    single = mutual_information(outcome_probabilities(trine_ensemble(), single_qubit_trine_povm()))
    assert single == pytest.approx(np.log2(3) - 1, abs=1e-12)


def test_single_outcome_gives_no_information():
    jd = outcome_probabilities(double_trine(), builtin_identity_povm(4))
    assert mutual_information(jd) == pytest.approx(0, abs=1e-12)


def test_dimension_mismatch():
    with pytest.raises(DimensionMismatchError):
        outcome_probabilities(trine_ensemble(), entangled_basis_povm())


def test_shannon_entropy_examples():
    assert shannon_entropy([0.5, 0.5]) == pytest.approx(1.0)
    assert shannon_entropy([1, 0, 0]) == 0.0
    assert shannon_entropy([1 / 3] * 3) == pytest.approx(np.log2(3))
    assert shannon_entropy([1 - 1e-13, 1e-13, -1e-13]) == pytest.approx(0, abs=1e-10)


def test_shannon_entropy_rejects_negative():
    with pytest.raises(NegativeProbabilityError):
        shannon_entropy([1.1, -0.1])
    with pytest.raises(NormalizationError):
        shannon_entropy([0.5, 0.4])


def test_relabeling_invariance():
    povm = six_outcome_unentangled_povm()
    base = mutual_information(outcome_probabilities(double_trine(), povm))
    rng = np.random.default_rng(3)
    for _ in range(5):
        order = [int(i) for i in rng.permutation(povm.M)]
        permuted = mutual_information(outcome_probabilities(double_trine(), povm.permuted(order)))
        assert permuted == pytest.approx(base, abs=1e-12)


@settings(max_examples=100)
@given(arrays(np.float64, (3, 5), elements=st.floats(0, 1)))
def test_information_formulas_agree(weights):
    if weights.sum() < 1e-3:
        weights = np.ones((3, 5))
    jd = JointDistribution(weights / weights.sum())
    a = mutual_information(jd)
    b = mutual_information_from_entropies(jd)
    assert a == pytest.approx(b, abs=1e-12)
    assert -1e-12 <= a <= min(shannon_entropy(jd.priors), np.log2(5)) + 1e-12


@settings(max_examples=50)
@given(arrays(np.float64, 3, elements=st.floats(0.01, 1)))
def test_information_is_bounded_for_random_priors(raw_priors):
    priors = raw_priors / raw_priors.sum()
    e = make_ensemble(double_trine().states, priors)
    info = mutual_information(outcome_probabilities(e, entangled_basis_povm()))
    assert 0 <= info <= min(shannon_entropy(priors), 2) + 1e-12


def test_joint_distribution_validation():
    with pytest.raises(NegativeProbabilityError):
        JointDistribution([[0.6, -0.1], [0.5, 0.0]])
    with pytest.raises(NormalizationError):
        JointDistribution([[0.5, 0.1], [0.3, 0.0]])
    with pytest.raises(NormalizationError):
        JointDistribution([[0.5, 0.0], [0.5, 0.0]], priors=[0.4, 0.6])
    jd = JointDistribution([[0.5, -1e-13], [0.25, 0.25 + 1e-13]])
    assert jd.p.min() == 0.0


def test_joint_distribution_csv_round_trip():
    jd = outcome_probabilities(double_trine(), entangled_basis_povm())
    buf = io.StringIO(jd.to_csv())
    back = JointDistribution.from_csv(buf)
    assert back.state_labels == ["a0", "a1", "a2"]
    assert back.outcome_labels == ["A0", "A1", "A2", "S"]
    np.testing.assert_array_equal(back.p, jd.p)
    frame = jd.to_frame(conditional=True)
    assert frame.loc["a0", "A0"] == pytest.approx(P_HIT, abs=1e-12)
