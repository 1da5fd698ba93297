import json
import subprocess
import sys
from pathlib import Path

import pytest

from embcodes.cli import main

SCHEMA = Path(__file__).resolve().parent.parent / "docs" / "report_schema.json"


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def analyze(capsys, *argv):
    code, out, err = run(capsys, "analyze", *argv)
    return code, json.loads(out)


def test_analyze_grassmann_42(capsys):
    code, rep = analyze(capsys, "--family", "grassmann", "--q", "2", "--n", "4", "--k", "2")
    assert code == 0
    assert rep["code"]["d"] == "16" and rep["code"]["N"] == "35" and rep["code"]["K"] == "6"
    assert rep["code"]["distribution"] == {"0": "1", "16": "35", "20": "28"}
    assert rep["minimal"]["verdict"] is True and rep["ab"]["verdict"] is True
    assert rep["deltas"] == [] and rep["skipped"] == []
    assert rep["embedding"] == {"injective": True, "spans": True, "lines_to_lines": True, "K": 6, "ambient_dim": 6}
    assert rep["oracle"]["fields"]["d"]["tag"] == "grassmann-parameters"
    assert rep["oracle"]["label"] == "paper claim"


def test_analyze_point_hyperplane_f2(capsys):
    # minimality claim fails over F_2; see the point-hyperplane finding
    code, rep = analyze(capsys, "--family", "point_hyperplane", "--q", "2", "--n", "2", "--sigma", "0")
    assert rep["ab"]["verdict"] is False
    assert rep["code"]["w_max"] == "14" and rep["code"]["d"] == "6"
    assert rep["minimal"]["verdict"] is False
    assert rep["minimal"]["non_minimal_classes"] == "42"
    assert [d["field"] for d in rep["deltas"]] == ["minimal"]
    assert code == 1


def test_analyze_input_identity(capsys, tmp_path):
    f = tmp_path / "sys.txt"
    f.write_text("ambient 3 points 3 q 2\n1 0 0\n0 1 0\n0 0 1\n")
    code, rep = analyze(capsys, "--input", str(f))
    assert code == 0
    assert rep["minimal"]["verdict"] is False and rep["minimal"]["witness"] == ["0", "1", "1"]
    assert rep["oracle"] is None and rep["embedding"] is None
    assert rep["geometry"] == {"source": "input"}


def test_analyze_span_deficit_delta(capsys):
    code, rep = analyze(capsys, "--family", "orthogonal_plus", "--q", "2", "--n", "3", "--k", "3")
    assert code == 1
    assert rep["code"]["K"] == "14" and rep["code"]["d"] == "8"
    assert [d["field"] for d in rep["deltas"]] == ["N"]
    assert rep["deltas"][0]["expected"] == "270" and rep["deltas"][0]["computed"] == "30"


def test_no_paper_claim_tag(capsys):
    code, rep = analyze(capsys, "--family", "symplectic", "--q", "2", "--n", "3", "--k", "2")
    assert code == 0
    assert rep["minimal"]["claim"] == "no paper claim"
    assert rep["minimal"]["verdict"] is True
    assert rep["oracle"]["fields"]["minimal"] == "unknown"


def test_oracle_only_descriptors(capsys):
    for argv in (["--family", "grassmann", "--q", "2", "--n", "7", "--k", "3"],
                 ["--family", "orthogonal_plus", "--q", "2", "--n", "4", "--k", "4"]):
        code, rep = analyze(capsys, *argv)
        assert code == 3
        assert "paper claim, not computed" in rep["status"]
        assert rep["oracle"]["fields"]["K"]["value"] in ("35", "42")


def test_cap_exceeded_partial_report(capsys):
    code, rep = analyze(capsys, "--family", "grassmann", "--q", "2", "--n", "5", "--k", "2",
                        "--strategy", "message_enum", "--max-enum", "100")
    assert code == 3
    assert rep["code"]["d"] == "not computed at this scale"
    assert rep["minimal"]["verdict"] is True  # the sweep still runs
    assert any(s.startswith("distribution") for s in rep["skipped"])


@pytest.mark.parametrize("argv", [
    ["analyze"],
    ["analyze", "--family", "grassmann", "--q", "6", "--n", "4", "--k", "2"],
    ["analyze", "--family", "grassmann", "--q", "2", "--n", "4", "--k", "2", "--sigma", "1"],
    ["analyze", "--family", "grassmann", "--q", "2", "--p", "2", "--n", "4", "--k", "2"],
    ["analyze", "--family", "grassmann", "--q", "2", "--n", "4", "--k", "5"],
    ["analyze", "--family", "nonsense", "--q", "2"],
    ["analyze", "--family", "segre", "--q", "2", "--m", "1", "--n", "1", "--m2", "2"],
    ["analyze", "--family", "point_hyperplane", "--q", "2", "--n", "2", "--sigma", "1"],
    ["frobnicate"],
])
def test_usage_errors_exit_2(capsys, argv):
    with pytest.raises(SystemExit) as exc:
        raise SystemExit(main(argv))
    assert exc.value.code == 2


def test_input_excludes_family(capsys, tmp_path):
    f = tmp_path / "s.txt"
    f.write_text("ambient 1 points 1 q 2\n1\n")
    code, _, err = run(capsys, "analyze", "--input", str(f), "--q", "2")
    assert code == 2 and "--input" in err
    code, _, err = run(capsys, "analyze", "--input", str(tmp_path / "missing.txt"))
    assert code == 2


def test_p_h_flags(capsys):
    code, rep = analyze(capsys, "--family", "segre", "--p", "2", "--h", "2", "--m", "1", "--n", "1", "--sigma", "1")
    assert code == 0 and rep["geometry"]["q"] == 4 and rep["geometry"]["sigma"] == 1


@pytest.mark.parametrize("family,argv,minimal", [
    ("grassmann", ["--q", "2", "--n", "4", "--k", "2"], True),
    ("segre", ["--q", "2", "--m", "1", "--n", "1"], True),
    ("point_hyperplane", ["--q", "2", "--n", "2"], False),
])
def test_verify(capsys, family, argv, minimal):
    code, out, _ = run(capsys, "verify", "--family", family, *argv)
    rep = json.loads(out)
    assert code == 0 and rep["implication_holds"] is True
    assert rep["all_preimages_geometric_hyperplanes"] is True
    assert rep["minimal"] is minimal
    assert rep["all_complements_connected"] is minimal
    if not minimal:
        assert len(rep["counterexamples"]) == 84
        assert all(c["geometric_hyperplane"] and not c["complement_connected"] for c in rep["counterexamples"])


def test_verify_needs_geometry(capsys, tmp_path):
    f = tmp_path / "s.txt"
    f.write_text("ambient 2 points 2 q 2\n1 0\n0 1\n")
    code, _, _ = run(capsys, "verify", "--input", str(f))
    assert code == 2


def test_spectrum_csv(capsys):
    code, out, _ = run(capsys, "spectrum", "--family", "grassmann", "--q", "2", "--n", "4", "--k", "2")
    assert code == 0
    assert out == "weight,count,oracle_count\n0,1,1\n16,35,35\n20,28,28\n"
    code, out, _ = run(capsys, "spectrum", "--family", "segre", "--q", "2", "--m", "1", "--n", "1")
    assert code == 0
    assert out.splitlines()[0] == "weight,count" and "# no oracle spectrum" in out
    assert "4,9" in out.splitlines() and "6,6" in out.splitlines()


def test_spectrum_json(capsys):
    code, out, _ = run(capsys, "spectrum", "--family", "grassmann", "--q", "3", "--n", "4", "--k", "2",
                       "--format", "json")
    rep = json.loads(out)
    assert code == 0 and rep["match"] is True
    assert rep["distribution"] == {"0": "1", "81": "260", "90": "468"}


def test_list_families(capsys):
    code, out, _ = run(capsys, "list-families")
    assert code == 0
    for fam in ("grassmann", "symplectic", "orthogonal", "orthogonal_plus", "hermitian_odd", "hermitian_even",
                "segre", "point_hyperplane"):
        assert fam in out
    code, out, _ = run(capsys, "list-families", "--format", "json")
    rows = json.loads(out)
    only = {(r["family"], r["params"].get("n"), r["params"].get("k")) for r in rows if r["feasible"] is False}
    assert ("grassmann", "7", "3") in only and ("orthogonal_plus", "4", "4") in only
    for r in rows:
        if not r["feasible"]:
            assert r["status"].startswith("oracle only")
    code, out, _ = run(capsys, "list-families", "--format", "csv")
    assert out.splitlines()[0] == "family,params,N,K,d,oracle,status"


def test_reports_identical_across_threads(capsys, tmp_path):
    outs = []
    for t in ("1", "2", "3"):
        p = tmp_path / f"r{t}.json"
        code = main(["analyze", "--family", "grassmann", "--q", "2", "--n", "5", "--k", "2",
                     "--strategy", "hyperplane_count", "--threads", t, "--out", str(p)])
        assert code == 0
        outs.append(p.read_bytes())
    assert outs[0] == outs[1] == outs[2]


def test_thread_env_variable(tmp_path, monkeypatch):
    monkeypatch.setenv("EMBCODES_THREADS", "2")
    p = tmp_path / "r.json"
    assert main(["analyze", "--family", "segre", "--q", "3", "--m", "1", "--n", "1", "--out", str(p)]) == 0
    monkeypatch.setenv("EMBCODES_THREADS", "1")
    q = tmp_path / "r1.json"
    assert main(["analyze", "--family", "segre", "--q", "3", "--m", "1", "--n", "1", "--out", str(q)]) == 0
    assert p.read_bytes() == q.read_bytes()


def test_report_matches_schema(capsys):
    jsonschema = pytest.importorskip("jsonschema")
    schema = json.loads(SCHEMA.read_text())
    for argv in (["--family", "grassmann", "--q", "2", "--n", "4", "--k", "2"],
                 ["--family", "point_hyperplane", "--q", "2", "--n", "2"],
                 ["--family", "hermitian_even", "--q", "4", "--n", "2", "--k", "2"]):
        _, rep = analyze(capsys, *argv)
        jsonschema.validate(rep, schema)


def test_console_entry_point():
    r = subprocess.run([sys.executable, "-m", "embcodes.cli", "list-families", "--format", "csv"],
                       capture_output=True, text=True, timeout=120)
    assert r.returncode == 0 and r.stdout.startswith("family,")
