import numpy as np
import pytest

from qdiscrim.trine.adaptive import (
    LocalInstrument,
    ProtocolNode,
    alternating_protocol,
    leaf_labels,
    one_way_protocol,
    optimize_one_way,
    product_protocol,
    protocol_depth,
    read_protocol,
    run_protocol,
    weak_trine_instrument,
    write_protocol,
)
from qdiscrim.trine.discriminate import discriminate_protocol
from qdiscrim.trine.ensemble import Ensemble, double_trine
from qdiscrim.trine.errors import (
    EntangledStateError,
    KrausCompletenessError,
    ProtocolDepthError,
)
from qdiscrim.trine.linalg import Operator, identity
from qdiscrim.trine.measurement import Povm, single_qubit_trine_povm, singlet_state
from qdiscrim.trine.optimizer import normalized_elements
from qdiscrim.trine.statistics import mutual_information, outcome_probabilities
from qdiscrim.trine.utils import ENTANGLED_OPTIMUM_BITS as ENTANGLED_OPTIMUM


def _random_povm(rng, outcomes):
    seeds = rng.normal(size=(outcomes, 2, 2)) + 1j * rng.normal(size=(outcomes, 2, 2))
    return Povm([Operator(el) for el in normalized_elements(seeds)])


def _random_protocol(rng, depth, counter):
    qubit = int(rng.integers(2))
    povm = _random_povm(rng, int(rng.integers(1, 4)))
    children = []
    for _ in range(povm.M):
        if depth > 1 and rng.random() < 0.7:
            children.append(_random_protocol(rng, depth - 1, counter))
        else:
            counter[0] += 1
            children.append(f"leaf{counter[0] % 5}")
    return ProtocolNode(LocalInstrument.from_povm(qubit, povm), children)


def _trine_on(qubit):
    trine = single_qubit_trine_povm()
    return ProtocolNode(LocalInstrument.from_povm(qubit, trine), trine.labels)


def test_single_round_trine_excludes_the_state():
    cond = run_protocol(double_trine(), _trine_on(0)).conditionals()
    for j in range(3):
        for k in range(3):
            assert cond[j, k] == pytest.approx(0 if j == k else 0.5, abs=1e-12)


@pytest.mark.parametrize("qubit", [0, 1])
def test_single_round_matches_marginal_measurement(qubit):
    povm = _random_povm(np.random.default_rng(qubit), 3)
    protocol = ProtocolNode(LocalInstrument.from_povm(qubit, povm), povm.labels)
    via_protocol = run_protocol(double_trine(), protocol)
    direct = outcome_probabilities(double_trine().marginal(qubit), povm)
    np.testing.assert_allclose(via_protocol.p, direct.p, atol=1e-12)


def test_trine_on_both_qubits():
    trine = single_qubit_trine_povm()
    jd = run_protocol(double_trine(), product_protocol(trine, trine))
    assert mutual_information(jd) == pytest.approx(np.log2(3) - 0.5, abs=1e-12)
    assert jd.outcome_labels[:3] == ["0,0", "0,1", "0,2"]


def test_measurement_order_does_not_matter():
    trine = single_qubit_trine_povm()
    first = run_protocol(double_trine(), product_protocol(trine, trine, first_qubit=0)).to_frame()
    second = run_protocol(double_trine(), product_protocol(trine, trine, first_qubit=1)).to_frame()
    np.testing.assert_allclose(
        first.to_numpy(), second[first.columns].to_numpy(), atol=1e-12
    )


def test_trivial_protocols_give_no_information():
    identity_round = ProtocolNode(LocalInstrument(0, [identity(2)]), ["none"])
    assert mutual_information(run_protocol(double_trine(), identity_round)) == pytest.approx(0, abs=1e-12)
    assert mutual_information(run_protocol(double_trine(), "none")) == pytest.approx(0, abs=1e-12)
    assert protocol_depth("none") == 0
    assert protocol_depth(identity_round) == 1


@pytest.mark.parametrize("seed", range(10))
def test_probability_is_conserved(seed):
    rng = np.random.default_rng(seed)
    protocol = _random_protocol(rng, depth=4, counter=[0])
    assert protocol_depth(protocol) <= 4
    jd = run_protocol(double_trine(), protocol)
    np.testing.assert_allclose(jd.conditionals().sum(axis=1), 1, atol=1e-10)
    assert set(jd.outcome_labels) == set(leaf_labels(protocol))


def test_incomplete_kraus_operators():
    with pytest.raises(KrausCompletenessError):
        LocalInstrument(0, [identity(2) * 0.5])


def test_entangled_state_rejected():
    ensemble = Ensemble([singlet_state()], [1.0])
    with pytest.raises(EntangledStateError):
        run_protocol(ensemble, _trine_on(0))


def test_depth_cap():
    trine = single_qubit_trine_povm()
    protocol = product_protocol(trine, trine)
    with pytest.raises(ProtocolDepthError):
        run_protocol(double_trine(), protocol, max_depth=1)


def test_one_way_protocol_needs_one_povm_per_outcome():
    trine = single_qubit_trine_povm()
    with pytest.raises(ValueError):
        one_way_protocol(trine, [trine])


def test_protocol_file_round_trip(tmp_path):
    trine = single_qubit_trine_povm()
    protocol = product_protocol(trine, trine)
    path = tmp_path / "protocol.json"
    write_protocol(protocol, path)
    back = read_protocol(path)
    assert protocol_depth(back) == 2
    assert leaf_labels(back) == leaf_labels(protocol)
    assert mutual_information(run_protocol(double_trine(), back)) == pytest.approx(
        np.log2(3) - 0.5, abs=1e-12
    )


def test_optimize_one_way_beats_product_baseline():
    result = optimize_one_way(double_trine(), 3, 3, budget=40, seed=0, restarts=2)
    assert result.information_bits >= 1.0849
    assert result.information_bits < ENTANGLED_OPTIMUM
    assert len(result.trace) == 2
    assert result.trace[0]["start"] == "warm"


def test_optimize_one_way_minimal_budget():
    result = optimize_one_way(double_trine(), 2, 2, budget=1, seed=1, restarts=1)
    assert 0 <= result.information_bits <= np.log2(3) + 1e-9
    assert protocol_depth(result.protocol) == 2


def test_optimize_one_way_is_deterministic():
    a = optimize_one_way(double_trine(), 2, 2, budget=20, seed=5, restarts=2)
    b = optimize_one_way(double_trine(), 2, 2, budget=20, seed=5, restarts=2)
    assert a.information_bits == b.information_bits


@pytest.mark.parametrize("strength", [0.0, 0.3, 1.0])
def test_weak_trine_instrument_is_complete(strength):
    instrument = weak_trine_instrument(1, strength)
    total = sum(k.matrix.conj().T @ k.matrix for k in instrument.kraus_ops)
    np.testing.assert_allclose(total, np.eye(2), atol=1e-12)
    assert instrument.qubit == 1
    assert instrument.n_outcomes == 3


def test_full_strength_instrument_is_the_trine_povm():
    for k, el in zip(weak_trine_instrument(0, 1.0).kraus_ops, single_qubit_trine_povm().elements):
        assert (k.dagger() @ k).allclose(el, atol=1e-12)


def test_weak_trine_strength_out_of_range():
    with pytest.raises(ValueError, match="strength"):
        weak_trine_instrument(0, 1.5)


def test_alternating_protocol_without_weak_rounds():
    protocol = alternating_protocol([])
    assert protocol_depth(protocol) == 2
    info = mutual_information(run_protocol(double_trine(), protocol))
    assert info == pytest.approx(np.log2(3) - 0.5, abs=1e-12)


@pytest.mark.parametrize("strengths", [[0.5, 0.5], [0.2, 0.9, 0.4], [1.0, 0.0, 0.6, 0.3]])
def test_alternating_protocol(strengths):
    protocol = alternating_protocol(strengths, first_qubit=1)
    assert protocol_depth(protocol) == len(strengths) + 2
    assert protocol.instrument.qubit == 1
    assert protocol.children[0].instrument.qubit == 0
    jd = run_protocol(double_trine(), protocol)
    np.testing.assert_allclose(jd.conditionals().sum(axis=1), 1, atol=1e-10)
    assert len(jd.outcome_labels) == 3 ** (len(strengths) + 2)
    info = mutual_information(jd)
    assert 0 <= info < ENTANGLED_OPTIMUM


def test_alternating_protocol_depth_cap():
    with pytest.raises(ProtocolDepthError):
        alternating_protocol([0.5] * 5)
    assert protocol_depth(alternating_protocol([0.5] * 4)) == 6


def test_builtin_alternating_protocol():
    info, jd = discriminate_protocol("alternating")
    assert info < ENTANGLED_OPTIMUM
    assert jd.p.shape == (3, 81)
