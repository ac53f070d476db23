"""End-to-end command-line coverage, one happy path and key exits per command."""

import json

import pytest
from click.testing import CliRunner

from tnncells.cli import main


@pytest.fixture()
def runner():
    return CliRunner()


@pytest.fixture()
def demo_diagram(tmp_path):
    f = tmp_path / "demo.diag"
    f.write_text(".#.\n##.\n...\n")
    return str(f)


@pytest.fixture()
def tnn_matrix(tmp_path):
    f = tmp_path / "m.json"
    f.write_text(json.dumps({
        "m": 3, "p": 3,
        "entries": [["2", "1", "1"], ["1", "1", "1"], ["1", "1", "1"]],
    }))
    return str(f)


@pytest.fixture()
def bad_matrix(tmp_path):
    f = tmp_path / "bad.csv"
    f.write_text("0,1\n1,0\n")
    return str(f)


def test_minors_lists_all(runner, tnn_matrix):
    result = runner.invoke(main, ["minors", tnn_matrix, "--format", "json"])
    assert result.exit_code == 0
    payload = json.loads(result.output)
    assert payload["count"] == 19


def test_tp_check_verdicts(runner, tmp_path):
    good = tmp_path / "tp.csv"
    good.write_text("1,1\n1,2\n")
    assert runner.invoke(main, ["tp-check", str(good)]).exit_code == 0
    flat = tmp_path / "flat.csv"
    flat.write_text("1,1\n1,1\n")
    assert runner.invoke(main, ["tp-check", str(flat)]).exit_code == 1


def test_tnn_check_both_routes(runner, tnn_matrix, bad_matrix):
    ok = runner.invoke(main, ["tnn-check", tnn_matrix])
    assert ok.exit_code == 0
    assert "totally nonnegative" in ok.output
    bad = runner.invoke(main, ["tnn-check", bad_matrix])
    assert bad.exit_code == 1
    assert "[1,2|1,2]" in bad.output


def test_restore_and_delete_are_inverse_on_files(runner, tmp_path):
    seed = tmp_path / "seed.csv"
    seed.write_text("1,-1,1\n0,2,1\n1,1,1\n")
    restored = runner.invoke(
        main, ["restore", str(seed), "--format", "json"]
    )
    assert restored.exit_code == 0
    entries = json.loads(restored.output)["final"]["entries"]
    assert entries == [["3", "2", "1"], ["3", "3", "1"], ["1", "1", "1"]]

    back = tmp_path / "restored.json"
    back.write_text(json.dumps(json.loads(restored.output)["final"]))
    deleted = runner.invoke(main, ["delete", str(back), "--format", "json"])
    assert json.loads(deleted.output)["final"]["entries"] == [
        ["1", "-1", "1"], ["0", "2", "1"], ["1", "1", "1"],
    ]


def test_restore_stages_flag(runner, tmp_path):
    seed = tmp_path / "seed.csv"
    seed.write_text("1,-1,1\n0,2,1\n1,1,1\n")
    result = runner.invoke(
        main, ["restore", str(seed), "--stages", "--format", "json"]
    )
    payload = json.loads(result.output)
    assert len(payload["stages"]) == 9


def test_tc_ones_and_symbolic(runner, demo_diagram):
    ones = runner.invoke(main, ["tc", "-d", demo_diagram, "--format", "json"])
    assert json.loads(ones.output)["entries"][0] == ["2", "1", "1"]
    symbolic = runner.invoke(main, ["tc", "-d", demo_diagram, "--symbolic"])
    assert "t[3,3]" in symbolic.output


def test_vanish(runner, demo_diagram):
    result = runner.invoke(main, ["vanish", "-d", demo_diagram, "--format", "json"])
    payload = json.loads(result.output)
    assert len(payload["members"]) == 6


def test_diagram_enum_and_check(runner, tmp_path):
    count = runner.invoke(main, ["diagram", "enum", "2", "2", "--count-only"])
    assert count.output.strip() == "14"
    listing = runner.invoke(
        main, ["diagram", "enum", "2", "2", "--format", "json"]
    )
    assert json.loads(listing.output)["count"] == 14

    ok = runner.invoke(main, ["diagram", "check", ".#/.#"])
    assert ok.exit_code == 0
    bad = runner.invoke(main, ["diagram", "check", "../.#"])
    assert bad.exit_code == 1
    le = runner.invoke(main, ["diagram", "check", "11/10"])
    assert le.exit_code == 1


def test_network_commands(runner, demo_diagram):
    built = runner.invoke(
        main, ["network", "from-diagram", "-d", demo_diagram, "--format", "json"]
    )
    assert built.exit_code == 0
    net_json = built.output

    pm = runner.invoke(
        main, ["network", "path-matrix", "-d", demo_diagram, "--format", "json"]
    )
    assert json.loads(pm.output)["entries"][0] == ["2", "1", "1"]

    lind = runner.invoke(
        main,
        ["network", "lindstrom", "-d", demo_diagram,
         "--rows", "1,2", "--cols", "1,2"],
    )
    assert lind.output.strip() == "1"

    dot = runner.invoke(main, ["network", "from-diagram", "-d", demo_diagram, "--dot"])
    assert "digraph" in dot.output
    assert net_json.startswith("{")


def test_network_needs_exactly_one_input(runner, demo_diagram):
    result = runner.invoke(main, ["network", "path-matrix"])
    assert result.exit_code == 2


def test_perm_commands(runner, demo_diagram):
    enum = runner.invoke(main, ["perm", "enum", "2", "2", "--count-only"])
    assert enum.output.strip() == "14"

    pd = runner.invoke(main, ["perm", "pipedream", "-d", demo_diagram])
    assert pd.output.strip() == "135246"

    inv = runner.invoke(
        main, ["perm", "inverse-pipedream", "135246", "--m", "3", "--p", "3"]
    )
    assert inv.output.strip() == ".#.\n##.\n..."

    mw = runner.invoke(
        main, ["perm", "mw", "(2 3 5 4)", "--m", "3", "--p", "3", "--format", "json"]
    )
    assert len(json.loads(mw.output)["members"]) == 6

    assert runner.invoke(main, ["perm", "bruhat", "1234", "3412"]).exit_code == 0
    assert runner.invoke(main, ["perm", "bruhat", "3412", "1234"]).exit_code == 1


def test_cells_commands(runner, tnn_matrix, bad_matrix, tmp_path):
    enum = runner.invoke(main, ["cells", "enum", "2", "2", "--format", "json"])
    assert json.loads(enum.output)["count"] == 14

    fam = tmp_path / "family.json"
    fam.write_text(json.dumps({
        "m": 2, "p": 2,
        "members": [{"rows": [2], "cols": [2]}],
    }))
    rejected = runner.invoke(main, ["cells", "admissible", "-f", str(fam)])
    assert rejected.exit_code == 1

    of = runner.invoke(main, ["cells", "of", tnn_matrix, "--format", "json"])
    assert json.loads(of.output)["permutation"] == "135246"

    bad = runner.invoke(main, ["cells", "of", bad_matrix])
    assert bad.exit_code == 2

    verify = runner.invoke(main, ["cells", "verify", "2", "2", "--format", "json"])
    assert verify.exit_code == 0
    assert json.loads(verify.output)["agreements"] == 14


def test_quantum_commands(runner):
    nf = runner.invoke(main, ["quantum", "nf", "d*a", "--m", "2", "--p", "2"])
    assert nf.output.strip() == "a*d - (q - q^-1)*b*c"

    qm = runner.invoke(
        main,
        ["quantum", "minor", "--rows", "1,2", "--cols", "1,2",
         "--m", "2", "--p", "2"],
    )
    assert qm.output.strip() == "a*d - q*b*c"

    comm = runner.invoke(
        main, ["quantum", "comm", "a", "d", "--format", "json"]
    )
    payload = json.loads(comm.output)
    assert payload["normal_form"] == "(q - q^-1)*b*c"
    assert payload["zero"] is False


def test_poisson_commands(runner, tmp_path):
    br = runner.invoke(main, ["poisson", "bracket", "a", "d"])
    assert br.output.strip() == "2*Y[1,2]*Y[2,1]"

    jac = runner.invoke(main, ["poisson", "jacobi", "a*d", "b", "c+d"])
    assert jac.exit_code == 0

    semi = runner.invoke(main, ["poisson", "semiclassical", "--format", "json"])
    assert semi.exit_code == 0
    assert json.loads(semi.output)["ok"] is True

    flow = tmp_path / "flow.json"
    flow.write_text(json.dumps({
        "m": 2, "p": 2,
        "entries": [["0", "3"], ["5", "30*t"]],
    }))
    run = runner.invoke(main, ["poisson", "flow", "--path", str(flow)])
    assert run.exit_code == 0
    assert "exactly" in run.output


def test_verify_all(runner):
    result = runner.invoke(
        main, ["verify", "all", "--m", "2", "--p", "2", "--format", "json"]
    )
    assert result.exit_code == 0
    payload = json.loads(result.output)
    assert payload["passed"] == payload["total"]


def test_fixtures_export(runner, tmp_path):
    out = tmp_path / "fx"
    result = runner.invoke(main, ["fixtures", "--out", str(out)])
    assert result.exit_code == 0
    assert (out / "tnn_4x4.json").exists()


def test_domain_errors_exit_2(runner, demo_diagram):
    result = runner.invoke(main, ["tp-check", demo_diagram])
    assert result.exit_code == 2


def test_guard_exits_3(runner, monkeypatch, tmp_path):
    monkeypatch.setenv("CAUCHON_GUARD", "2")
    big = tmp_path / "big.diag"
    big.write_text("..\n..\n")
    result = runner.invoke(main, ["vanish", "-d", str(big)])
    assert result.exit_code == 3


def test_stdin_matrix(runner):
    result = runner.invoke(main, ["tnn-check", "-"], input="1,1\n1,2\n")
    assert result.exit_code == 0
