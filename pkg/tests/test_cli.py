import json

import pytest

from tensor_envelope import cli
from tensor_envelope.diagram import DiagramCategory


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_homdim(capsys):
    code, out, _ = run(capsys, "homdim", "2", "2", "--backend", "finset-op")
    rep = json.loads(out)
    assert code == 0 and rep["dim"] == 15 and rep["schema"] == 1


def test_homdim_finvec(capsys):
    code, out, _ = run(capsys, "homdim", "1", "2", "--backend", "finvec", "--q", "2")
    assert code == 0 and json.loads(out)["dim"] == 16


@pytest.mark.parametrize("argv", [
    ["homdim", "2", "2", "--backend", "finvec", "--q", "4"],
    ["homdim", "9", "1"],
    ["homdim", "1", "1", "--t", "oops"],
    ["homdim", "1", "1", "--t", "1/0"],
    ["homdim", "1", "1", "--threads", "0"],
    ["hwc", "verify", "--backend", "finvec"],
    ["hwc", "verify", "--N", "4"],
    ["blocks", "--N", "-1"],
    ["appendix", "fuzz", "--cases", "-3"],
    ["compose", "not-a-file.json"],
    ["compose", "[1, 2, 3]"],
    ["ringel", "sideways"],
    ["no-such-command"],
])
def test_config_errors_exit_two(capsys, argv):
    code, _, _ = run(capsys, *argv)
    assert code == 2


def test_compose_from_file(capsys, tmp_path):
    disconnected = {"source": 1, "target": 1, "terms": [{"relation": [[0], [1]], "coeff": "2"}]}
    half = {"source": 1, "target": 1, "terms": [{"relation": [[0], [1]], "coeff": "1/2"}]}
    path = tmp_path / "pair.json"
    path.write_text(json.dumps({"left": disconnected, "right": half}))
    code, out, _ = run(capsys, "compose", str(path))
    assert code == 0
    assert json.loads(out)["result"]["terms"] == [{"relation": [[0], [1]], "coeff": "t"}]
    code, out, _ = run(capsys, "compose", json.dumps([disconnected, half]), "--t", "3")
    assert json.loads(out)["result"]["terms"][0]["coeff"] == "3"


def test_compose_rejects_foreign_relation(capsys):
    bad = {"source": 1, "target": 1, "terms": [{"relation": [[0, 1, 2]]}]}
    code, _, err = run(capsys, "compose", json.dumps([bad, bad]))
    assert code == 2 and "not a relation" in err


def test_axiom_failure_exits_one_with_witness(capsys, monkeypatch):
    real = DiagramCategory._compose_partitions

    def broken(self, R2, R1):
        e, r = real(self, R2, R1)
        if R1.key == ((0,), (1,)) and R2.key == ((0,), (1,)):
            return e + 1, r
        return e, r

    monkeypatch.setattr(DiagramCategory, "_compose_partitions", broken)
    monkeypatch.delenv("TENSOR_ENVELOPE_CACHE", raising=False)
    code, out, _ = run(capsys, "algebra", "build", "--N", "2")
    rep = json.loads(out)
    assert code == 1 and not rep["ok"]
    assert len(rep["associativity"]["witness"]) == 7


def test_triangular_check(capsys):
    code, out, _ = run(capsys, "triangular-check", "--N", "2", "--t", "2")
    rep = json.loads(out)
    assert code == 0 and rep["triangular"]["ok"]
    assert rep["factorization"]["[2]->[2]"]["relations"] == 15


def test_hwc_verify_generic(capsys, tmp_path):
    csv_path = tmp_path / "dec.csv"
    code, out, _ = run(capsys, "hwc", "verify", "--t", "generic", "--N", "2", "--csv", str(csv_path))
    rep = json.loads(out)
    assert code == 0 and rep["ok"] and rep["report"]["failed"] == []
    rows = csv_path.read_text().splitlines()
    assert len(rows) == 5 and rows[1].endswith(",1,0,0,0")


def test_cache_cold_and_warm_reports_identical(capsys, tmp_path):
    args = ["hwc", "verify", "--t", "2", "--N", "2", "--cache-dir", str(tmp_path)]
    code1, out1, err1 = run(capsys, *args)
    code2, out2, err2 = run(capsys, *args)
    assert code1 == code2 == 0
    assert "miss" in err1 and "hit" in err2
    assert out1 == out2


def test_cache_directory_from_environment(capsys, tmp_path, monkeypatch):
    monkeypatch.setenv("TENSOR_ENVELOPE_CACHE", str(tmp_path))
    run(capsys, "algebra", "build", "--N", "1")
    assert list(tmp_path.glob("structure-*.json"))


def test_outputs_independent_of_thread_count(tmp_path):
    paths = []
    for threads in ("1", "4"):
        p = tmp_path / f"blocks-{threads}.json"
        assert cli.main(["blocks", "--N", "2", "--t", "2", "--threads", threads, "--out", str(p)]) == 0
        paths.append(p)
    for threads in ("1", "3"):
        p = tmp_path / f"ringel-{threads}.json"
        assert cli.main(["ringel", "dual", "--N", "2", "--t", "3", "--threads", threads, "--out", str(p)]) == 0
        paths.append(p)
    assert paths[0].read_bytes() == paths[1].read_bytes()
    assert paths[2].read_bytes() == paths[3].read_bytes()


def test_fuzz_command_is_seeded(capsys):
    code, out1, _ = run(capsys, "appendix", "fuzz", "--seed", "3", "--cases", "30")
    _, out2, _ = run(capsys, "appendix", "fuzz", "--seed", "3", "--cases", "30")
    assert code == 0 and out1 == out2
    assert json.loads(out1)["report"]["failures"] == []


def test_ringel_and_tensor_commands(capsys):
    code, out, _ = run(capsys, "ringel", "tilting", "--N", "2", "--t", "2")
    rep = json.loads(out)
    assert code == 0 and rep["tiltings"]["([1];(1))"]["record"] == ["([1];(1))", "([2];(2))"]
    code, out, _ = run(capsys, "ringel", "resolve", "--N", "1")
    assert code == 0 and json.loads(out)["exceptional"]["ok"]
    code, out, _ = run(capsys, "tensor", "check", "--N", "1", "--t", "2")
    assert code == 0 and json.loads(out)["x_tensor"]["certified"]
