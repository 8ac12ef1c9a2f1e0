import io
import json
import shutil
import subprocess
import sys

import pytest

from klschow.cli import dumps, main

from conftest import fixture_path, load_fixture


def run(argv):
    out = io.StringIO()
    code = main(argv, out=out)
    return code, out.getvalue()


def test_compute_examples():
    code, out = run(["compute", fixture_path("graded10"), "--kernel", "chi", "--what", "H"])
    assert code == 0 and json.loads(out) == {"H": [1, 8, 20, 20, 8, 1]}
    code, out = run(["compute", fixture_path("eulerian18"), "--kernel", "eps", "--what", "H"])
    assert json.loads(out) == {"H": [1, 12, 6, 12, 1]}


def test_compute_several_functions_and_interval():
    code, out = run(["compute", fixture_path("b3"), "--kernel", "adhoc:m=5", "--what", "H,f,Z,G"])
    assert json.loads(out) == {"H": [1, 12, 1], "f": [1, 8], "Z": [1, 11, 11, 1], "G": [1, 15, 15, 1]}
    code, out = run(["compute", fixture_path("eulerian18"), "--kernel", "eps", "--what", "f",
                     "--interval", "0", "17"])
    assert json.loads(out)["f"] == [1, -1, -6]
    code, out = run(["compute", fixture_path("b3"), "--what", "kappa", "--all-intervals"])
    assert len(json.loads(out)) == 19


def test_missing_file_exit_code(capsys):
    code, _ = run(["compute", "/nonexistent/poset.json"])
    assert code == 1
    assert "no such file" in capsys.readouterr().err


def test_bad_kernel_exit_code():
    code, _ = run(["compute", fixture_path("graded10"), "--kernel", "eps"])
    assert code == 1


def test_assert_mode(capsys):
    code, _ = run(["compute", fixture_path("b3"), "--kernel", "adhoc:m=-8", "--assert", "nonnegative"])
    assert code == 2
    assert "not nonnegative" in capsys.readouterr().err
    code, _ = run(["compute", fixture_path("b3"), "--kernel", "adhoc:m=0", "--assert", "unimodal",
                   "--assert", "real-rooted"])
    assert code == 0


def test_report_flag():
    code, out = run(["compute", fixture_path("eulerian18"), "--kernel", "eps", "--report"])
    rep = json.loads(out)["report"]["H"]
    assert rep["symmetric"] and not rep["unimodal"] and rep["gamma"] == [1, 8, -16]


def test_coxeter_command():
    code, out = run(["coxeter", "--group", "S4", "--v", "1 2 3 2 1", "--what", "R", "--what", "Rtilde",
                     "--what", "H", "--what", "cd", "--order", fixture_path("s4_reflection_order")])
    res = json.loads(out)
    assert res["R"] == [-1, 3, -5, 5, -3, 1]
    assert res["Rtilde"] == [0, 1, 0, 2, 0, 1]
    assert res["H"] == res["H_paths"] == [1, 16, 39, 16, 1]
    assert res["gamma"] == [1, 12, 9]
    code, out = run(["coxeter", "--group", "I2:5", "--v", "w0", "--what", "census"])
    assert json.loads(out)["rank"] == 5


def test_cd_cm_matroid_commands():
    code, out = run(["cd", fixture_path("square")])
    assert json.loads(out)["cd_index"] == {"cc": 1, "d": 2}
    code, out = run(["cd", fixture_path("graded10")])
    assert json.loads(out)["cd_index"] is None
    code, out = run(["cm", fixture_path("cm_negative_f")])
    assert json.loads(out) == {"cohen_macaulay": True}
    code, out = run(["matroid", fixture_path("k4_matroid")])
    res = json.loads(out)
    assert res["H"] == res["fy_hilbert"] == [1, 8, 1]


def test_harness_command_is_deterministic(tmp_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    for path in (a, b):
        code, _ = run(["--seed", "7", "--format", "csv", "harness", "--conjecture", "1.2", "--count", "12",
                       "--out", str(path)])
        assert code == 0
    assert a.read_bytes() == b.read_bytes()
    code, out = run(["harness", "--conjecture", "1.5", "--count", "5"])
    assert json.loads(out)["summary"]["counterexamples"] == 0


def test_verify_passes_on_bundled_corpus():
    code, out = run(["verify"])
    res = json.loads(out)
    assert code == 0 and res["ok"] and res["checks"] > 500


def test_verify_pinpoints_a_mutated_coefficient(tmp_path, capsys):
    data = load_fixture("eulerian18")
    data["expected"]["eps"]["H"][1] = 13
    (tmp_path / "bad.json").write_text(json.dumps(data))
    code, out = run(["verify", str(tmp_path)])
    assert code == 2
    fails = json.loads(out)["failures"]
    assert [f["identity"] for f in fails] == ["expected-eps-H"]
    assert "expected-eps-H" in capsys.readouterr().err


def test_verify_pinpoints_a_corrupted_kernel(tmp_path):
    data = load_fixture("eulerian18")
    data["covers"].remove([5, 7])
    (tmp_path / "broken.json").write_text(json.dumps(data))
    code, out = run(["verify", str(tmp_path)])
    assert code == 2
    idents = {f["identity"] for f in json.loads(out)["failures"]}
    assert {"eulerian-flag", "eps-construct"} <= idents


def test_verify_survives_an_unreadable_fixture(tmp_path):
    (tmp_path / "junk.json").write_text("{not json")
    code, out = run(["verify", str(tmp_path)])
    assert code == 2 and json.loads(out)["failures"][0]["identity"] == "evaluate"


def test_verify_empty_corpus_warns(tmp_path, capsys):
    code, out = run(["verify", str(tmp_path)])
    assert code == 0
    assert "empty fixture corpus" in capsys.readouterr().err


def test_csv_format():
    code, out = run(["--format", "csv", "compute", fixture_path("b3"), "--what", "H", "--all-intervals"])
    lines = out.strip().splitlines()
    assert lines[0] == "interval,H" and len(lines) == 20


def test_dumps_keeps_flat_lists_inline():
    assert dumps({"a": [1, 2], "b": {"c": [[1, 2], [3]]}}) == '{\n  "a": [1, 2],\n  "b": {\n    "c": [[1, 2], [3]]\n  }\n}'


@pytest.mark.skipif(shutil.which("chow") is None, reason="console script not installed")
def test_console_script():
    proc = subprocess.run(["chow", "compute", fixture_path("negative_gamma"), "--what", "H"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and json.loads(proc.stdout) == {"H": [1, 7, 11, 7, 1]}
    proc = subprocess.run([sys.executable, "-m", "klschow.cli", "compute", "missing.json"],
                          capture_output=True, text=True)
    assert proc.returncode == 1


def test_global_options_after_the_subcommand():
    before = run(["--format", "csv", "compute", fixture_path("b3"), "--what", "H"])
    after = run(["compute", fixture_path("b3"), "--what", "H", "--format", "csv"])
    assert before == after == (0, "H\n1 4 1\n")
