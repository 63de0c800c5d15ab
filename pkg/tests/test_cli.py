"""End-to-end tests of the command-line interface."""

import csv
import io
import json

from mpmath import mp, mpf

from qcgc.cli import build_parser, main


def _run(argv):
    parser = build_parser()
    args = parser.parse_args(argv)
    stream = io.StringIO()
    code = args.func(args, stream=stream)
    return code, stream.getvalue()


def test_cgc_stretched_is_one():
    code, out = _run(["cgc", "--q", "0.5", "--j1", "1/2", "--m1", "1/2",
                      "--j2", "1/2", "--m2", "1/2", "--j", "1", "--m", "1"])
    assert code == 0
    assert out.startswith("<1/2 1/2, 1/2 1/2|1 1> = 1.0")
    assert "[racah]" in out


def test_cgc_selection_failure_prints_zero_with_reason():
    code, out = _run(["cgc", "--j1", "1/2", "--m1", "1/2", "--j2", "1/2",
                      "--m2", "1/2", "--j", "1", "--m", "0"])
    assert code == 0
    assert "= 0.0" in out
    assert "selection" in out


def test_cgc_verify_reports_deviation():
    code, out = _run(["cgc", "--j1", "1", "--m1", "0", "--j2", "1",
                      "--m2", "0", "--j", "2", "--m", "0", "--verify"])
    assert code == 0
    assert "max cross-formula deviation" in out
    deviation = mpf(out.rsplit("deviation", 1)[1].strip())
    assert deviation < mpf("1e-35")


def test_usage_error_exit_code():
    assert main(["cgc", "--j1", "1/3", "--m1", "0", "--j2", "1",
                 "--m2", "0", "--j", "1", "--m", "0"]) == 2


def test_table_csv_and_json_are_value_identical():
    common = ["table", "--j1", "1", "--j2", "1/2", "--q", "0.9"]
    code_csv, out_csv = _run(common + ["--format", "csv"])
    code_json, out_json = _run(common + ["--format", "json"])
    assert code_csv == 0 and code_json == 0
    csv_rows = list(csv.DictReader(io.StringIO(out_csv)))
    payload = json.loads(out_json)
    assert payload["schema_version"] == 1
    assert payload["config"]["q"] == "0.9"
    assert csv_rows == payload["rows"]
    # 1 x 1/2: the j=3/2 states carry 1+2+2+1 product components and the
    # j=1/2 states carry 2+2, so 10 nonzero keys
    assert len(csv_rows) == 10


def test_table_unitarity_checksums():
    _, out = _run(["table", "--j1", "1/2", "--j2", "1/2",
                   "--format", "json"])
    payload = json.loads(out)
    assert len(payload["checksums"]) == 4
    for entry in payload["checksums"]:
        assert abs(mpf(entry["sum_sq"]) - 1) < mpf("1e-25")


def test_table_cap_enforced():
    assert main(["table", "--j1", "4", "--j2", "1", "--cap", "3"]) == 2


def test_table_deterministic():
    argv = ["table", "--j1", "1", "--j2", "1", "--format", "json"]
    assert _run(argv) == _run(argv)


def test_verify_single_suite_passes():
    code, out = _run(["verify", "--quick", "--suite", "recurrence"])
    assert code == 0
    payload = json.loads(out)
    assert payload["passed"] is True
    assert payload["failing_suites"] == []
    checks = payload["suites"]["recurrence"]["checks"]
    assert {c["name"] for c in checks} == {"recurrence_j", "recurrence_m"}


def test_verify_perturbation_flips_exit_code():
    code, out = _run(["verify", "--quick", "--suite", "recurrence",
                      "--perturb", "1e-6"])
    assert code == 1
    payload = json.loads(out)
    assert payload["failing_suites"] == ["recurrence"]


def test_verify_tolerance_override():
    code, _ = _run(["verify", "--quick", "--suite", "recurrence",
                    "--tolerance", "1e-80"])
    assert code == 1


def test_hahn_table_csv():
    code, out = _run(["hahn", "--n", "1", "--N", "4", "--alpha", "1",
                      "--beta", "1"])
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "s,x,weight,value"
    assert len(lines) == 6  # header + 4 lattice rows + norm comment
    assert lines[-1].startswith("# norm_sq,")


def test_hahn_json_single_point():
    code, out = _run(["hahn", "--n", "2", "--N", "5", "--alpha", "1",
                      "--beta", "2", "--s", "3", "--format", "json"])
    assert code == 0
    payload = json.loads(out)
    assert len(payload["rows"]) == 1
    assert payload["rows"][0]["s"] == "3"


def test_limit_report_converges():
    code, out = _run(["limit", "--j1", "1", "--m1", "0", "--j2", "1",
                      "--m2", "0", "--j", "2", "--m", "0"])
    assert code == 0
    payload = json.loads(out)
    devs = [mpf(row["deviation"]) for row in payload["rows"]]
    assert all(devs[i + 1] < devs[i] for i in range(len(devs) - 1))
    assert devs[-1] < mpf("1e-5")


def test_limit_odd_parity_key_converges_to_zero():
    _, out = _run(["limit", "--j1", "1", "--m1", "0", "--j2", "1",
                   "--m2", "0", "--j", "1", "--m", "0"])
    payload = json.loads(out)
    assert mpf(payload["classical_value"]) == 0
    assert mpf(payload["rows"][-1]["value"]) < mpf("1e-5")
