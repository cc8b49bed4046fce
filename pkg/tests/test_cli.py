import io
import json
import subprocess
import sys
from fractions import Fraction

import pytest

from pgradient.cli import RunConfig, main, run


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = None
    sys_out, sys_err = sys.stdout, sys.stderr
    sys.stdout, sys.stderr = out, err
    try:
        code = main(list(argv))
    except SystemExit as exc:
        code = exc.code
    finally:
        sys.stdout, sys.stderr = sys_out, sys_err
    return code, out.getvalue(), err.getvalue()


def test_gradient_json():
    code, out, err = call("gradient", "f2", "-p", "2", "-k", "3", "--threads", "1")
    assert code == 0 and err == ""
    assert out.startswith('{"value":"1/1",')
    rec = json.loads(out)
    assert rec["exact"] is False and rec["depth"] == 3


def test_finite_json():
    code, out, _ = call("finite", "z4", "-p", "2", "--threads", "1")
    assert code == 0 and json.loads(out) == {"value": "-1/4", "exact": True}


def test_input_file_path(tmp_path):
    f = tmp_path / "g.grp"
    f.write_text("gens: a b\nrel: a^2\n")
    code, out, _ = call("gradient", str(f), "-k", "2", "--threads", "1")
    assert code == 0 and json.loads(out)["value"] == "1/2"


def test_finite_not_saturated_exit_2():
    code, out, err = call("finite", "bs12", "-p", "2", "--threads", "1", "--max-cosets", "256")
    assert code == 2 and out == "" and "did not stabilize" in err


def test_enumeration_limit_exit_2():
    code, _, err = call("rank-gradient", "f2", "--max-cosets", "500")
    assert code == 2 and "did not close" in err


@pytest.mark.parametrize("argv", [
    ("gradient", "no_such_group"), ("gradient", "f2", "-p", "4"), ("gradient", "f2", "-k", "-1"),
    ("chase", "--alpha", "0"), ("chase", "--alpha", "x"), ("frobnicate",), ("gradient", "f2", "--node-budget", "0"),
    ("quotient", "f2", "--word", "c"),
])
def test_input_errors_exit_1(argv):
    code, out, err = call(*argv)
    assert code == 1 and out == "" and err


def test_syntax_error_reports_location(tmp_path):
    f = tmp_path / "bad.grp"
    f.write_text("gens: a b\nrel: a c\n")
    code, _, err = call("dp", str(f))
    assert code == 1 and "line 2" in err


def test_dp_enum_rank_gradient():
    assert json.loads(call("dp", "f2xz2", "-p", "2")[1]) == {"p": 2, "dp": 3}
    rec = json.loads(call("enum", "f2", "-p", "2", "-k", "2", "--threads", "1")[1])
    assert rec["levels"] == [1, 3, 7] and rec["saturated"] is False
    assert json.loads(call("rank-gradient", "s4z2")[1]) == {"value": "-1/48", "order": 48}


def test_dump_lattice(tmp_path):
    path = tmp_path / "lat.txt"
    code, _, _ = call("gradient", "f2", "-k", "2", "--dump-lattice", str(path), "--threads", "1")
    lines = path.read_text().splitlines()
    assert code == 0 and len(lines) == 11
    assert all(len(line.split()) == 4 for line in lines)


def test_quotient_and_schreier():
    code, out, _ = call("quotient", "f2", "--word", "a", "-e", "2", "-k", "2", "--threads", "1")
    rec = json.loads(out)
    assert code == 0 and rec["estimate"]["value"] == "1/2" and rec["check"].startswith("PASS")
    code, out, _ = call("schreier", "f2_a2", "--subgroup", "a", "--subgroup", "b a b^-1", "--subgroup", "b^2")
    rec = json.loads(out)
    assert code == 0 and rec["index"] == 2 and rec["dp"] == 3


def test_chase_json_and_human():
    code, out, _ = call("chase", "--alpha", "3/4", "-p", "2", "-k", "2", "--threads", "1")
    rec = json.loads(out)
    assert code == 0 and rec["steps"][0]["k"] == 2 and rec["certified_lower"] == "3/4"
    code, out, _ = call("chase", "--alpha", "1/2", "--human", "--threads", "1")
    assert code == 0 and "step 1: x=a k=1" in out


def test_human_output_has_no_json():
    code, out, _ = call("finite", "z8", "--human", "--threads", "1")
    assert code == 0 and "-1/8" in out and not out.startswith("{")


def test_verify_single_suite():
    code, out, _ = call("verify", "--suite", "rank-gradient", "--threads", "1")
    lines = out.splitlines()
    assert code == 0 and len(lines) >= 8
    assert all(line.startswith("PASS rank-gradient ") for line in lines)


def test_run_config_validation():
    assert run(RunConfig("gradient"), io.StringIO(), io.StringIO()) == 1
    assert run(RunConfig("chase", alpha=Fraction(1, 2), steps=0), io.StringIO(), io.StringIO()) == 1


def test_thread_count_does_not_change_output():
    a = call("enum", "f3", "-k", "2", "--threads", "1")[1]
    b = call("enum", "f3", "-k", "2", "--threads", "3")[1]
    assert a == b


def test_console_script_entry_point():
    res = subprocess.run([sys.executable, "-m", "pgradient.cli", "finite", "z4", "--threads", "1"],
                         capture_output=True, text=True)
    assert res.returncode == 0 and json.loads(res.stdout)["value"] == "-1/4"
