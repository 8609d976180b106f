import json

import pytest

from qdiscrim.trine.cli import EXIT_INFEASIBLE, EXIT_INVALID_INPUT, EXIT_OK, main
from qdiscrim.trine.linalg import identity
from qdiscrim.trine.measurement import read_povm, write_povm
from qdiscrim.trine.utils import ENTANGLED_OPTIMUM_BITS


def test_mi_entangled(capsys):
    assert main(["mi", "--measurement", "entangled"]) == EXIT_OK
    out = capsys.readouterr().out
    assert "p(outcome | state):" in out
    assert "I = 1.36906842" in out


def test_mi_six_matches_entangled(capsys):
    assert main(["mi", "--measurement", "six"]) == EXIT_OK
    assert "I = 1.36906842" in capsys.readouterr().out


def test_mi_nine(capsys):
    assert main(["mi", "--measurement", "nine"]) == EXIT_OK
    assert "I = 1.08496250" in capsys.readouterr().out


def test_mi_single_qubit_trine(capsys):
    assert main(["mi", "--ensemble", "trine", "--measurement", "trine-local"]) == EXIT_OK
    assert "I = 0.584962501" in capsys.readouterr().out


def test_mi_json(capsys):
    assert main(["mi", "--measurement", "entangled", "--output-format", "json"]) == EXIT_OK
    obj = json.loads(capsys.readouterr().out)
    assert obj["I_bits"] == pytest.approx(ENTANGLED_OPTIMUM_BITS, abs=1e-9)
    assert len(obj["conditionals"]) == 3


def test_mi_dimension_mismatch(capsys):
    assert main(["mi", "--ensemble", "trine", "--measurement", "entangled"]) == EXIT_INVALID_INPUT
    assert "DimensionMismatchError" in capsys.readouterr().err


def test_validate_six(capsys):
    assert main(["validate", "--measurement", "six"]) == EXIT_OK
    out = capsys.readouterr().out
    assert "valid POVM: yes" in out
    assert "classification: unentangled" in out


def test_validate_json_classification(capsys):
    assert main(["validate", "--measurement", "six", "--output-format", "json"]) == EXIT_OK
    obj = json.loads(capsys.readouterr().out)
    assert obj["valid"]
    assert obj["classification"] == "unentangled"


def test_validate_json_of_invalid_povm(capsys):
    code = main(
        ["validate", "--measurement", "six", "--theta-deg", "60", "--alpha", "4/9", "--output-format", "json"]
    )
    assert code == EXIT_INVALID_INPUT
    obj = json.loads(capsys.readouterr().out)
    assert obj["classification"] is None


def test_validate_six_at_invalid_angle(capsys):
    code = main(["validate", "--measurement", "six", "--theta-deg", "60", "--alpha", "4/9"])
    assert code == EXIT_INVALID_INPUT
    assert "valid POVM: no" in capsys.readouterr().out


def test_exported_candidate_fails_validation(tmp_path, capsys):
    path = tmp_path / "candidate.json"
    assert main(["export", "candidate", "--theta-deg", "60", "--alpha", "4/9", "-o", str(path)]) == EXIT_OK
    assert main(["validate", "--povm-file", str(path)]) == EXIT_INVALID_INPUT
    assert "defect" in capsys.readouterr().out


def test_validate_empty_povm(tmp_path, capsys):
    path = tmp_path / "empty.json"
    path.write_text(json.dumps({"dim": 4, "elements": []}))
    assert main(["validate", "--povm-file", str(path)]) == EXIT_INVALID_INPUT
    assert "valid POVM: no" in capsys.readouterr().out


def test_malformed_json(tmp_path, capsys):
    path = tmp_path / "broken.json"
    path.write_text('{"dim": 4, "elements": [')
    assert main(["validate", "--povm-file", str(path)]) == EXIT_INVALID_INPUT
    assert "line" in capsys.readouterr().err


def test_missing_file(tmp_path):
    assert main(["mi", "--measurement-file", str(tmp_path / "nope.json")]) == EXIT_INVALID_INPUT


def test_unknown_measurement():
    with pytest.raises(SystemExit) as info:
        main(["mi", "--measurement", "seven"])
    assert info.value.code == 2


def test_povm_file_is_stable(tmp_path):
    first = tmp_path / "six.json"
    second = tmp_path / "six-again.json"
    assert main(["export", "povm", "--measurement", "six", "-o", str(first)]) == EXIT_OK
    write_povm(read_povm(first), second)
    assert first.read_bytes() == second.read_bytes()


def test_optimize_writes_povm(tmp_path, capsys):
    path = tmp_path / "best.json"
    code = main(
        ["optimize", "--mode", "global", "-M", "4", "--restarts", "1", "--budget", "20", "--seed", "0", "-o", str(path)]
    )
    assert code == EXIT_OK
    assert "I = 1.3690" in capsys.readouterr().out
    assert read_povm(path).M == 4


def test_optimize_with_nelder_mead(capsys):
    code = main(
        ["optimize", "-M", "4", "--restarts", "1", "--budget", "5", "--seed", "0", "--method", "nelder-mead"]
    )
    assert code == EXIT_OK
    assert "classification:" in capsys.readouterr().out


def test_optimize_infeasible(capsys):
    code = main(["optimize", "--mode", "product", "-M", "1", "--restarts", "1", "--budget", "10", "--seed", "0"])
    assert code == EXIT_INFEASIBLE
    assert "no feasible POVM" in capsys.readouterr().err


def test_protocol_trine_both(capsys):
    assert main(["protocol", "--protocol", "trine-both"]) == EXIT_OK
    out = capsys.readouterr().out
    assert "I = 1.08496250" in out
    assert "< 1.369068423 bits" in out


def test_protocol_alternating(capsys):
    assert main(["protocol", "--protocol", "alternating"]) == EXIT_OK
    assert "< 1.369068423 bits" in capsys.readouterr().out


def test_protocol_trivial(capsys):
    assert main(["protocol", "--protocol", "trivial"]) == EXIT_OK
    assert "I = 0.000000000 bits" in capsys.readouterr().out


def test_protocol_bad_kraus_file(tmp_path, capsys):
    path = tmp_path / "protocol.json"
    half = (identity(2) * 0.5).to_json()
    path.write_text(json.dumps({"qubit": 0, "kraus": [half], "children": ["a"]}))
    assert main(["protocol", "--protocol-file", str(path)]) == EXIT_INVALID_INPUT
    assert "KrausCompletenessError" in capsys.readouterr().err


def test_protocol_depth_cap(capsys):
    assert main(["protocol", "--protocol", "trine-both", "--max-depth", "1"]) == EXIT_INVALID_INPUT
    assert "ProtocolDepthError" in capsys.readouterr().err


def test_one_way_then_protocol(tmp_path, capsys):
    path = tmp_path / "one-way.json"
    code = main(
        ["one-way", "--outcomes-first", "2", "--outcomes-second", "2", "--budget", "5",
         "--restarts", "1", "--seed", "0", "-o", str(path)]
    )
    assert code == EXIT_OK
    assert "(entangled-basis optimum)" in capsys.readouterr().out
    assert main(["protocol", "--protocol-file", str(path)]) == EXIT_OK
    assert "p(outcome | state):" in capsys.readouterr().out
