import io
import subprocess
import sys
from pathlib import Path

import pytest

from xorsynth.cli import RatioRow, format_ratio_csv, ratio_experiment, run
from xorsynth.gen import gen_prefix

DATA = Path(__file__).parent / "data"


def call(argv, stdin=""):
    out, err = io.StringIO(), io.StringIO()
    code = run(argv, io.StringIO(stdin), out, err)
    return code, out.getvalue(), err.getvalue()


def matrix_file(tmp_path, argv, name="m.txt"):
    code, text, _ = call(argv)
    assert code == 0
    path = tmp_path / name
    path.write_text(text)
    return path


def test_gen_sierpinski():
    code, out, _ = call(["gen", "sierpinski", "--k", "1"])
    assert code == 0 and out == "2 2\n10\n11\n"


def test_gen_random_matches_golden():
    code, out, _ = call(["gen", "random", "--n", "4", "--seed", "42", "--density", "0.5"])
    assert out == (DATA / "random_n4_seed42_d05.txt").read_text()


def test_synth_then_verify(tmp_path):
    m = matrix_file(tmp_path, ["gen", "random", "--n", "6", "--seed", "3"])
    for method in ("naive", "lupanov", "greedy"):
        code, slp, err = call(["synth", "--method", method, str(m)])
        assert code == 0 and err.startswith(f"method={method} gates=")
        assert call(["verify", str(m)], slp)[:2] == (0, "computes\n")


def test_verify_rejects_wrong_matrix(tmp_path):
    m = matrix_file(tmp_path, ["gen", "prefix", "--n", "4"])
    _, slp, _ = call(["synth", "--method", "sierpinski", "--k", "2"])
    assert call(["verify", str(m)], slp)[:2] == (1, "does-not-compute\n")


def test_check_cf_verdicts():
    _, cancel, _ = call(["synth", "--method", "prefix-cancel", "--n", "4"])
    code, out, _ = call(["check", "cf"], cancel)
    assert code == 1 and out.startswith("not-cf ")
    _, cf, _ = call(["synth", "--method", "prefix-cf", "--n", "4"])
    code, out, _ = call(["check", "cf"], cf)
    assert code == 0 and out.startswith("cf ")


def test_eval_and_eliminate():
    _, slp, _ = call(["synth", "--method", "sierpinski", "--k", "2"])
    assert call(["eval", "--x", "1011"], slp)[:2] == (0, "1101\n")
    code, reduced, err = call(["eliminate", "--zero", "1,2"], slp)
    assert code == 0 and err.startswith("eliminated=")
    assert call(["eval", "--x", "0011"], reduced)[1] == "0010\n"


def test_oracle_commands(tmp_path):
    m = matrix_file(tmp_path, ["gen", "sierpinski", "--k", "2"])
    code, out, _ = call(["oracle", "--cf", str(m)])
    assert code == 0 and out.splitlines()[0] == "min=4 mode=cancellation_free"
    code, out, _ = call(["oracle", "--cf", "--budget", "2", str(m)])
    assert code == 2 and out.startswith("status=exceeds_budget")


def test_bound_commands(tmp_path):
    assert call(["bound", "sierpinski", "--n", "4"])[1] == "sierpinski 4 true n=4\n"
    code, out, _ = call(["bound", "counting", "--n", "64", "--m", "85"])
    assert code == 0 and out.startswith("counting ") and " true " in out
    m = matrix_file(tmp_path, ["gen", "brown", "--p", "3"])
    assert call(["bound", "mehlhorn", "--h", "2", "--k", "2", str(m)])[1] == \
        "mehlhorn 27 true h=2 k=2\n"


def test_ratio_golden():
    code, out, _ = call(["ratio", "--n", "4", "--count", "50", "--seed", "7",
                         "--density", "0.5", "--threads", "1"])
    assert code == 0
    assert out == (DATA / "ratio_n4_count50_seed7.csv").read_text()


def test_ratio_with_forced_matrix(tmp_path):
    m = matrix_file(tmp_path, ["gen", "prefix", "--n", "4"])
    code, out, _ = call(["ratio", "--matrix", str(m), "--threads", "1"])
    assert out.splitlines() == [
        "seed_index,min_general,min_cf,ratio,status",
        "0,4,5,5/4,ok",
        "max,,,5/4,summary",
        "mean,,,5/4,summary",
    ]


def test_ratio_budget_rows():
    rows = ratio_experiment(4, 0, matrices=[gen_prefix(4)], budget=3)
    assert rows == [RatioRow(0, None, None, None, "exceeds_budget")]
    assert format_ratio_csv(rows).splitlines()[1] == "0,,,,exceeds_budget"


@pytest.mark.parametrize("argv, stdin", [
    ([], ""),
    (["gen", "sierpinski"], ""),
    (["synth", "--method", "sierpinski"], ""),
    (["eliminate", "--zero", "a,b"], "inputs 1\ny1 = x1\n"),
    (["check", "cf"], "inputs 2\nt1 = x1 + x3\ny1 = t1\n"),
    (["verify", "/nonexistent/matrix.txt"], ""),
    (["oracle"], "2 2\n10\n1\n"),
])
def test_usage_and_format_errors_exit_64(argv, stdin):
    code, _, err = call(argv, stdin)
    assert code == 64 and err


def test_shell_pipeline(tmp_path):
    env_cmd = [sys.executable, "-m", "xorsynth"]
    gen = subprocess.run(env_cmd + ["gen", "sierpinski", "--k", "3"],
                         capture_output=True, text=True, check=True)
    m = tmp_path / "s3.txt"
    m.write_text(gen.stdout)
    synth = subprocess.run(env_cmd + ["synth", "--method", "sierpinski", "--k", "3"],
                           capture_output=True, text=True, check=True)
    assert synth.stderr.strip() == "method=sierpinski gates=12 cf=true"
    verify = subprocess.run(env_cmd + ["verify", str(m)], input=synth.stdout,
                            capture_output=True, text=True)
    assert verify.returncode == 0 and verify.stdout == "computes\n"
