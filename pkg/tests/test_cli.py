import io
import json
from pathlib import Path

import pytest

from khbraid import cli
from khbraid.errors import ConsistencyError

GOLDEN = Path(__file__).parent / "golden"


def run(capsys, *argv, stdin=""):
    code = cli.run(list(argv), stdin=io.StringIO(stdin))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.mark.parametrize("name, argv", [
    ("kh_trefoil", ["kh", "2: 1 1 1"]),
    ("kh_hopf", ["kh", "2: 1 1"]),
    ("module_hopf", ["module", "2: 1 1"]),
    ("certify_unlink3", ["certify", "3:"]),
    ("certify_hopf", ["certify", "2: 1 1"]),
    ("psi_negative_stabilization", ["psi", "2: -1", "--mirror"]),
])
def test_golden_json(capsys, name, argv):
    code, out, _ = run(capsys, *argv, "--json")
    assert code == 0
    assert out == (GOLDEN / f"{name}.json").read_text()


def test_trefoil_json_schema(capsys):
    _, out, _ = run(capsys, "kh", "2: 1 1 1", "--json")
    doc = json.loads(out)
    assert set(doc) == {"word", "n_strands", "writhe", "components", "betti", "module", "psi", "verdict"}
    assert len(doc["betti"]) == 6
    assert doc["betti"] == sorted(doc["betti"], key=lambda r: (r["i"], r["j"]))


def test_json_is_byte_deterministic(capsys):
    outs = {run(capsys, "certify", "3: 1 -2 2 -1", "--json")[1] for _ in range(3)}
    assert len(outs) == 1


def test_certify_unlink_text(capsys):
    code, out, _ = run(capsys, "certify", "3:")
    assert code == 0 and "verdict: CONSISTENT_WITH_TRIVIAL" in out


def test_module_text(capsys):
    code, out, _ = run(capsys, "module", "2:")
    assert code == 0
    assert "free of rank one over A_2: True" in out
    assert "witness: generator 0 at bidegree (0, 2)" in out


def test_psi_text(capsys):
    code, out, _ = run(capsys, "psi", "2: -1")
    assert code == 0 and out.strip() == "psi(2: -1) at (i, j) = (0, -3): zero"


def test_jones(capsys):
    code, out, _ = run(capsys, "jones", "2: 1 1 1", "--json")
    assert code == 0
    doc = json.loads(out)["jones"]
    assert doc["agree"] and doc["state_sum"] == [[1, 1], [3, 1], [5, 1], [9, -1]]


def test_jones_disagreement_exits_4(capsys, monkeypatch):
    monkeypatch.setattr(cli, "kauffman_state_sum", lambda w, cap: {0: 1})
    code, _, err = run(capsys, "jones", "2: 1")
    assert code == cli.EXIT_CONSISTENCY and "consistency" in err


def test_certify_consistency_failure_exits_4(capsys, monkeypatch):
    def boom(w, cap):
        raise ConsistencyError("x_1...x_n theta is not homologous to Psi^-")

    monkeypatch.setattr(cli, "certify", boom)
    code, _, err = run(capsys, "certify", "2:")
    assert code == 4 and "Psi^-" in err


@pytest.mark.parametrize("word", ["2: 2", "x", "0:"])
def test_parse_error(capsys, word):
    code, _, err = run(capsys, "kh", word)
    assert code == 2 and "parse error" in err


def test_cap(capsys):
    code, _, err = run(capsys, "kh", "2: 1 1 1 1 1", "--max-crossings", "4")
    assert code == 3 and "cap" in err


def test_fibered(capsys):
    code, out, _ = run(capsys, "fibered", "--n", "2")
    assert code == 0 and out.strip() == "L_2 = {1, 3}; max chi = -1"
    _, out, _ = run(capsys, "fibered", "--n", "3", "--json")
    assert json.loads(out) == {"admissible_components": [2, 4], "max_euler_characteristic": -2, "n": 3}


def test_fibered_domain(capsys):
    assert run(capsys, "fibered", "--n", "0")[0] == 2


def test_batch_mode(capsys):
    code, out, err = run(capsys, "kh", "-", "--json", stdin="2: 1 1 1\n# comment\n\n2: 1 1\n")
    assert code == 0
    lines = out.splitlines()
    assert len(lines) == 2
    assert lines[0] == (GOLDEN / "kh_trefoil.json").read_text().strip()


def test_batch_keeps_going_after_bad_line(capsys):
    code, out, err = run(capsys, "kh", "-", "--json", stdin="2: 5\n2: 1\n")
    assert code == 2 and len(out.splitlines()) == 1 and "parse error" in err


def test_quiet(capsys):
    code, out, _ = run(capsys, "kh", "2: 1", "--quiet")
    assert code == 0 and out == ""


def test_plot(tmp_path, capsys):
    path = tmp_path / "trefoil.png"
    code, _, _ = run(capsys, "psi", "2: 1 1 1", "--plot", str(path), "--quiet")
    assert code == 0 and path.stat().st_size > 0


def test_batch_plot_names(tmp_path, capsys):
    path = tmp_path / "t.png"
    run(capsys, "kh", "-", "--plot", str(path), "--quiet", stdin="2: 1\n2:\n")
    assert (tmp_path / "t_0.png").exists() and (tmp_path / "t_1.png").exists()


def test_not_n_component_certify_skips_plot(tmp_path, capsys):
    path = tmp_path / "none.png"
    code, out, _ = run(capsys, "certify", "2: 1", "--plot", str(path))
    assert code == 0 and "NOT_N_COMPONENT" in out and not path.exists()
