import json
import subprocess
import sys

import pytest

from cosign_kit import io
from cosign_kit.cli import main
from cosign_kit.core import crossing_closure
from cosign_kit.plane import digon
from cosign_kit.testkit import fixture

WORKED = {"n": 9, "sets": [[0, 8], [0, 1, 2], [3, 4, 5], [0, 3, 4, 5, 6, 7, 8]]}
WORKED_CIRCLE = dict(WORKED, signs=list("++-++-++-"))


def put(tmp_path, name, doc):
    path = tmp_path / name
    path.write_text(json.dumps(doc))
    return str(path)


def run_json(capsys, argv):
    code = main(argv + ["--json"])
    return code, json.loads(capsys.readouterr().out)


# ---------------------------------------------------------------- validate


def test_validate_worked_circle_reports_p1(tmp_path, capsys):
    code, rep = run_json(capsys, ["validate", put(tmp_path, "w.json", WORKED_CIRCLE)])
    assert code == 2
    assert rep["property"] == "P1"
    assert [w["set"] for w in rep["witness"]] == [[0, 8], [0, 1, 2]]


def test_validate_p0_fixture(tmp_path, capsys):
    path = tmp_path / "p0.json"
    io.save(fixture("nested_chords_p0").payload, path)
    code, rep = run_json(capsys, ["validate", str(path)])
    assert code == 2 and rep["property"] == "P0"


def test_validate_family(tmp_path, capsys):
    code, rep = run_json(capsys, ["validate", put(tmp_path, "f.json", WORKED)])
    assert code == 2 and rep["witness"][0]["index"] == 0
    closed = io.to_json(crossing_closure(io.from_json(WORKED)))
    assert main(["validate", put(tmp_path, "c.json", closed)]) == 0


def test_validate_plane(tmp_path, capsys):
    code, rep = run_json(capsys, ["validate", put(tmp_path, "d.json", io.to_json(digon()))])
    assert code == 0 and rep["super_proper"] is True
    single = {"vertices": 2, "arcs": [{"id": 0, "tail": 0, "head": 1, "w": 1}],
              "rotation": [[0], [0]]}
    code, rep = run_json(capsys, ["validate", put(tmp_path, "s.json", single)])
    assert code == 2 and rep["property"] == "proper"


def test_validate_bad_json(tmp_path, capsys):
    path = tmp_path / "bad.json"
    path.write_text("{")
    assert main(["validate", str(path)]) == 1
    assert "not valid JSON" in capsys.readouterr().out


def test_missing_file(tmp_path):
    assert main(["validate", str(tmp_path / "nope.json")]) == 1


def test_forced_kind(tmp_path, capsys):
    code, rep = run_json(capsys, ["validate", put(tmp_path, "w.json", WORKED_CIRCLE),
                                  "--kind", "family"])
    assert code == 2 and rep["kind"] == "family"


# ---------------------------------------------------------------- solvers


def test_cosign_needs_crossing(tmp_path, capsys):
    code, rep = run_json(capsys, ["cosign", put(tmp_path, "w.json", WORKED)])
    assert code == 2 and rep["property"] == "crossing"


def test_cosign_condition_failure(tmp_path, capsys):
    code, rep = run_json(capsys, ["cosign", put(tmp_path, "f.json", {"n": 2, "sets": [[0], [1]]})])
    assert code == 2 and rep["condition"] == "missing_u"
    assert rep["witness"][0]["set"] == [0]


@pytest.mark.parametrize("mode", [[], ["--cc"], ["--oracle"]])
def test_cosign_modes_verify(tmp_path, capsys, mode):
    closed = io.to_json(crossing_closure(io.from_json(WORKED)))
    inst = put(tmp_path, "c.json", closed)
    out = str(tmp_path / "s.json")
    assert main(["cosign", inst, "-o", out] + mode) == 0
    capsys.readouterr()
    kind = "cc" if mode == ["--cc"] else "cosign"
    assert main(["verify", kind, inst, out]) == 0


def test_circle_solve_and_verify(tmp_path, capsys):
    path = tmp_path / "c.json"
    io.save(fixture("dual_pair_p4").payload, path)
    assert main(["circle", str(path)]) == 2
    capsys.readouterr()
    inst = put(tmp_path, "ok.json", {"n": 6, "signs": list("+-+-+-"), "sets": [[0], [0, 1, 2]]})
    out = str(tmp_path / "sol.json")
    code, rep = run_json(capsys, ["circle", inst, "-o", out, "--trace"])
    assert code == 0 and rep["trace"][0]["step"] == "1"
    assert main(["verify", "circle", inst, out]) == 0


def test_worked_circle_reference_and_tampered(tmp_path, capsys):
    inst = put(tmp_path, "w.json", WORKED_CIRCLE)
    ref = put(tmp_path, "ref.json", {"arcs": [[5, 0], [2, 4]]})
    assert main(["verify", "circle", inst, ref]) == 0
    capsys.readouterr()
    bad = put(tmp_path, "bad.json", {"arcs": [[5, 0]]})
    code, rep = run_json(capsys, ["verify", "circle", inst, bad])
    assert code == 2
    assert [w["set"] for w in rep["results"][0]["witness"]] == [[3, 4, 5], [0, 3, 4, 5, 6, 7, 8]]


def test_dijoin_solve_trace_dot_and_verify(tmp_path, capsys):
    inst = put(tmp_path, "d.json", io.to_json(fixture("bridge_grid_813").payload))
    out, dot = str(tmp_path / "p.json"), tmp_path / "p.dot"
    code, rep = run_json(capsys, ["dijoin", inst, "-o", out, "--trace", "--dot", str(dot)])
    assert code == 0
    assert "bridge_eliminate" in [t["kind"] for t in rep["trace"]]
    assert dot.read_text().startswith("digraph")
    assert main(["verify", "dijoin", inst, out]) == 0
    wrong = put(tmp_path, "w.json", {"J1": rep["J1"] + rep["J2"], "J2": []})
    assert main(["verify", "dijoin", inst, wrong]) == 2


def test_dijoin_rejects_improper(tmp_path):
    single = {"vertices": 2, "arcs": [{"id": 0, "tail": 0, "head": 1, "w": 1}],
              "rotation": [[0], [0]]}
    assert main(["dijoin", put(tmp_path, "s.json", single)]) == 2


# ---------------------------------------------------------------- gen and verify


@pytest.mark.parametrize("kind", ["family", "circle", "plane"])
def test_gen_writes_valid_instances(tmp_path, kind):
    out = str(tmp_path / f"{kind}.json")
    assert main(["gen", kind, "--seed", "3", "--n", "9", "--sets", "6", "-o", out]) == 0
    assert main(["validate", out]) == 0


def test_gen_extra_knobs(tmp_path, capsys):
    code, rep = run_json(capsys, ["gen", "plane", "--seed", "1", "--n", "12",
                                  "--extra", "template=grid", "--extra", "weight0=1"])
    assert code == 0
    assert rep["result"]["rotation"]


def test_gen_plane_then_dijoin_then_verify(tmp_path, capsys):
    inst, out = str(tmp_path / "g.json"), str(tmp_path / "p.json")
    assert main(["gen", "plane", "--seed", "11", "--n", "11", "-o", inst]) == 0
    assert main(["dijoin", inst, "-o", out]) == 0
    assert main(["verify", "dijoin", inst, out]) == 0


def test_verify_many_with_jobs(tmp_path, capsys):
    files = []
    for seed in range(4):
        inst, sol = str(tmp_path / f"i{seed}.json"), str(tmp_path / f"s{seed}.json")
        main(["gen", "circle", "--seed", str(seed), "--n", "8", "--sets", "10", "-o", inst])
        main(["circle", inst, "-o", sol])
        files += [inst, sol]
    capsys.readouterr()
    code, rep = run_json(capsys, ["verify", "circle", *files, "--jobs", "2"])
    assert code == 0 and len(rep["results"]) == 4


def test_verify_odd_file_count_and_unreadable_solution(tmp_path, capsys):
    inst = put(tmp_path, "w.json", WORKED_CIRCLE)
    assert main(["verify", "circle", inst]) == 1
    assert main(["verify", "circle", inst, str(tmp_path / "missing.json")]) == 1


def test_unsigned_signing_is_rejected(tmp_path):
    closed = io.to_json(crossing_closure(io.from_json(WORKED)))
    inst = put(tmp_path, "c.json", closed)
    sol = put(tmp_path, "s.json", {"signs": list("+++++++++")})
    assert main(["verify", "cosign", inst, sol]) == 2
    short = put(tmp_path, "t.json", {"signs": ["+"]})
    assert main(["verify", "cosign", inst, short]) == 2


def test_module_entry_point(tmp_path):
    inst = put(tmp_path, "w.json", WORKED_CIRCLE)
    got = subprocess.run([sys.executable, "-m", "cosign_kit", "validate", inst],
                         capture_output=True, text=True)
    assert got.returncode == 2 and "P1" in got.stdout
