import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qdiscrim.trine.ensemble import double_trine
from qdiscrim.trine.errors import IncompleteMeasurementError, InvalidPovmError
from qdiscrim.trine.linalg import (
    Operator,
    StateVector,
    identity,
    inner,
    pauli_x,
    pauli_z,
    projector,
    tensor_op,
)
from qdiscrim.trine.measurement import (
    Povm,
    PovmClass,
    builtin_identity_povm,
    classify_povm,
    completeness_defect,
    concurrence,
    concurrence_signed,
    cyclic_unitary,
    entangled_basis_povm,
    entangled_basis_states,
    ideal_product_set,
    nine_outcome_product_povm,
    povm_report,
    read_povm,
    rotation,
    single_qubit_trine_povm,
    singlet_state,
    six_outcome_elements,
    six_outcome_states,
    six_outcome_unentangled_povm,
    trace_weight,
    write_povm,
)


def test_entangled_basis_is_orthonormal():
    kets = entangled_basis_states() + [singlet_state()]
    gram = np.array([[inner(a, b) for b in kets] for a in kets])
    np.testing.assert_allclose(gram, np.eye(4), atol=1e-12)


def test_entangled_basis_overlap_with_double_trine():
    a = double_trine().states
    for j, ket in enumerate(entangled_basis_states()):
        assert inner(a[j], ket).real == pytest.approx((1 + np.sqrt(2) / 2) / np.sqrt(3), abs=1e-12)


def test_builtin_measurements_are_povms():
    for povm, m in [
        (entangled_basis_povm(), 4),
        (six_outcome_unentangled_povm(), 6),
        (nine_outcome_product_povm(), 9),
        (single_qubit_trine_povm(), 3),
    ]:
        assert povm.M == m
        assert povm.report.valid
        assert povm.report.defect_norm < 1e-12


def test_six_outcome_kets_are_singlet_superpositions():
    b, c = six_outcome_states(np.pi / 4)
    a = entangled_basis_states()
    s = singlet_state()
    for j in range(3):
        assert b[j].allclose(np.sqrt(3) / 2 * a[j] - 0.5 * s)
        assert c[j].allclose(np.sqrt(3) / 2 * a[j] + 0.5 * s)


def test_concurrence_values():
    assert concurrence_signed(singlet_state()) == pytest.approx(-1, abs=1e-12)
    assert concurrence(singlet_state()) == pytest.approx(1, abs=1e-9)
    for ket in entangled_basis_states():
        assert concurrence(ket) == pytest.approx(1 / 3, abs=1e-9)
    b, c = six_outcome_states(np.pi / 4)
    for ket in b + c:
        assert concurrence(ket) < 1e-9


def test_six_outcome_element_expectation():
    e0 = six_outcome_unentangled_povm().elements[0]
    a0 = double_trine().states[0]
    assert e0.expectation(a0).real == pytest.approx(0.25 + np.sqrt(2) / 6, abs=1e-12)


def test_six_outcome_invalid_angle_raises_with_defect():
    with pytest.raises(IncompleteMeasurementError) as info:
        six_outcome_unentangled_povm(np.pi / 3, 4 / 9)
    assert np.linalg.norm(info.value.defect) > 0.1


def test_six_outcome_at_135_degrees_is_valid():
    povm = six_outcome_unentangled_povm(3 * np.pi / 4)
    assert povm.report.valid
    assert classify_povm(povm) is PovmClass.UNENTANGLED


@settings(max_examples=100)
@given(st.floats(0, 2 * np.pi), st.floats(0, 2))
def test_completeness_defect_formula(theta, alpha):
    total = completeness_defect(six_outcome_elements(theta, alpha)) + np.eye(4)
    xx = tensor_op(pauli_x(), pauli_x()).matrix
    zz = tensor_op(pauli_z(), pauli_z()).matrix
    expected = alpha * 1.5 * (np.eye(4) + np.cos(2 * theta) / 2 * (xx + zz))
    assert np.linalg.norm(total - expected) < 1e-10


def test_ideal_product_set_rules_out_two_states():
    pi0_pi1 = ideal_product_set()[0]
    probs = [pi0_pi1.expectation(a).real for a in double_trine().states]
    assert probs[0] == pytest.approx(0, abs=1e-15)
    assert probs[1] == pytest.approx(0, abs=1e-15)
    assert probs[2] > 0
    assert np.linalg.norm(completeness_defect(ideal_product_set())) > 0.1


def test_ideal_product_set_is_six_outcome_set_at_60_degrees():
    ideal = ideal_product_set()
    candidates = six_outcome_elements(np.pi / 3, 4 / 9)
    pi = single_qubit_trine_povm().elements
    assert candidates[0].allclose(tensor_op(pi[2], pi[1]))
    for el in candidates:
        assert any(el.allclose(other) for other in ideal)


def test_trace_weight_of_six_projectors():
    b, c = six_outcome_states(np.pi / 4)
    assert trace_weight([projector(v) for v in b + c]) == pytest.approx(2 / 3)


def test_cyclic_symmetry():
    u, big_u = cyclic_unitary()
    a = entangled_basis_states()
    for j in range(3):
        assert (big_u @ a[j]).allclose(a[(j + 1) % 3], atol=1e-10)
    assert (big_u @ singlet_state()).allclose(singlet_state(), atol=1e-10)
    assert (big_u @ big_u @ big_u).allclose(identity(4), atol=1e-10)


def test_cyclic_unitary_cycles_six_outcome_kets():
    _, big_u = cyclic_unitary()
    b, c = six_outcome_states(np.pi / 4)
    for j in range(3):
        assert (big_u @ b[j]).allclose(b[(j + 1) % 3], atol=1e-10)
        assert (big_u @ c[j]).allclose(c[(j + 1) % 3], atol=1e-10)


@settings(max_examples=50)
@given(st.integers(0, 2**32 - 1), st.floats(0, 2 * np.pi), st.booleans())
def test_concurrence_invariant_under_local_real_orthogonal(seed, angle, reflect):
    rng = np.random.default_rng(seed)
    amps = rng.normal(size=4)
    v = StateVector(amps / np.linalg.norm(amps))
    u = rotation(angle) @ pauli_z() if reflect else rotation(angle)
    assert concurrence(tensor_op(u, u) @ v) == pytest.approx(concurrence(v), abs=1e-10)


@given(st.floats(0, 2 * np.pi))
def test_signed_concurrence_of_singlet_superposition(angle):
    beta, gamma = np.cos(angle), np.sin(angle)
    v = entangled_basis_states()[0] * beta + singlet_state() * gamma
    assert concurrence_signed(v) == pytest.approx(beta**2 / 3 - gamma**2, abs=1e-12)


def test_classification():
    assert classify_povm(entangled_basis_povm()) is PovmClass.ENTANGLED
    assert classify_povm(six_outcome_unentangled_povm()) is PovmClass.UNENTANGLED
    assert classify_povm(nine_outcome_product_povm()) is PovmClass.UNENTANGLED
    assert classify_povm(builtin_identity_povm(4)) is PovmClass.INDETERMINATE


def test_empty_povm_is_invalid():
    assert not povm_report([]).valid
    with pytest.raises(InvalidPovmError):
        Povm([])


def test_negative_element_rejected_with_report():
    with pytest.raises(InvalidPovmError) as info:
        Povm([Operator([[2, 0], [0, 1]]), Operator([[-1, 0], [0, 0]])])
    assert not isinstance(info.value, IncompleteMeasurementError)
    assert info.value.report.min_eigenvalues[1] == pytest.approx(-1)


def test_permuted_povm():
    povm = entangled_basis_povm().permuted([3, 2, 1, 0])
    assert povm.labels == ["S", "A2", "A1", "A0"]
    with pytest.raises(ValueError):
        povm.permuted([0, 0, 1, 2])


def test_povm_file_round_trip(tmp_path):
    path = tmp_path / "six.json"
    write_povm(six_outcome_unentangled_povm(), path)
    povm = read_povm(path)
    assert povm.labels == ["E0", "E1", "E2", "F0", "F1", "F2"]
    for a, b in zip(povm.elements, six_outcome_unentangled_povm().elements):
        assert a.allclose(b, atol=0)
