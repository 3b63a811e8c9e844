import json

import pytest

from binomial_permutations import cli
from binomial_permutations.utils.formatting import CSV_COLUMNS


def _run(capsys, *argv):
    status = cli.main(list(argv))
    captured = capsys.readouterr()
    return status, captured.out, captured.err


def _records(out):
    return [json.loads(line) for line in out.splitlines() if line.strip()]


@pytest.mark.parametrize(
    "args, order, d",
    [
        (["--p", "2", "--m", "3", "--e", "3"], 512, 73),
        (["--p", "3", "--m", "2", "--e", "3"], 729, 91),
        (["--p", "13"], 2197, 183),
    ],
)
def test_field_summary(capsys, args, order, d):
    status, out, _ = _run(capsys, "field", *args)
    assert status == 0
    (record,) = _records(out)
    assert record["order"] == order
    assert record["d"] == d


def test_field_order_cap_exit_code(capsys):
    status, out, err = _run(capsys, "field", "--p", "2", "--m", "41", "--e", "1")
    assert status == 3
    assert out == ""
    assert "error" in err


def test_non_prime_is_input_error(capsys):
    status, _, err = _run(capsys, "field", "--p", "6")
    assert status == 2
    assert "prime" in err


def test_binomial_all_methods(capsys):
    status, out, _ = _run(capsys, "test", "--p", "7", "--r", "1", "--a-exp", "1")
    assert status == 0
    records = _records(out)
    assert [r["method"] for r in records] == ["brute", "hermite", "mu", "closed"]
    assert all(r["is_pp"] for r in records)


def test_binomial_single_method(capsys):
    status, out, _ = _run(capsys, "test", "--p", "13", "--r", "53", "--a-exp", "1", "--method", "mu")
    assert status == 0
    (record,) = _records(out)
    assert record["is_pp"] is False
    assert record["witness"]["kind"] == "mu_collision"


def test_binomial_from_coefficients(capsys):
    status, out, _ = _run(capsys, "test", "--p", "3", "--r", "13", "--a-coeffs", "1,0,0", "--method", "brute")
    assert status == 0
    (record,) = _records(out)
    assert record["a_exp"] == 0
    assert record["a"] == "1,0,0"


@pytest.mark.parametrize(
    "extra",
    [["--a-exp", "1", "--a-coeffs", "1,0,0"], [], ["--a-coeffs", "1,x,0"]],
)
def test_binomial_a_errors(capsys, extra):
    status, out, _ = _run(capsys, "test", "--p", "7", "--r", "1", *extra)
    assert status == 2
    assert out == ""


def test_missing_required_flag_exits():
    with pytest.raises(SystemExit) as excinfo:
        cli.main(["test", "--r", "1"])
    assert excinfo.value.code == 2


def test_empty_scan(capsys):
    status, out, _ = _run(capsys, "scan", "--p", "3", "--r-min", "5", "--r-max", "4")
    assert status == 0
    assert out == ""


def test_scan_csv_header(capsys):
    status, out, _ = _run(capsys, "scan", "--p", "3", "--r-max", "3", "--samples", "2", "--format", "csv")
    assert status == 0
    lines = out.splitlines()
    assert lines[0] == ",".join(CSV_COLUMNS["verdict"])
    assert len(lines) == 1 + 3 * 2


def test_scan_output_independent_of_jobs(capsys):
    base = ["scan", "--p", "5", "--samples", "3"]
    _, serial, _ = _run(capsys, *base, "--jobs", "1")
    _, parallel, _ = _run(capsys, *base, "--jobs", "2")
    assert serial == parallel
    assert len(_records(serial)) == 31 * 3


def test_verify_theorem1(capsys):
    status, out, _ = _run(capsys, "verify", "--claim", "theorem1", "--p", "7", "--samples", "3")
    assert status == 0
    (record,) = _records(out)
    assert record["claim_id"] == "theorem1"
    assert record["cases_agreeing"] == record["cases_run"] == 57 * 3
    assert "wall_time_ms" not in record


def test_verify_timing_flag(capsys):
    status, out, _ = _run(capsys, "verify", "--claim", "remark-even", "--p", "2", "--m", "2", "--timing")
    assert status == 0
    (record,) = _records(out)
    assert record["claim_id"] == "remark_even_char"
    assert "wall_time_ms" in record


def test_verify_rejects_wrong_characteristic(capsys):
    status, _, _ = _run(capsys, "verify", "--claim", "remark-even", "--p", "3")
    assert status == 2


@pytest.mark.parametrize("claim", ["lemma4", "theorem1", "conjecture"])
def test_verify_without_valid_a_is_input_error(capsys, claim):
    status, out, _ = _run(capsys, "verify", "--claim", claim, "--p", "2")
    assert status == 2
    assert out == ""


def test_hw_example(capsys):
    status, out, _ = _run(capsys, "hw", "--q", "7", "--e", "8", "--r", "10")
    assert status == 0
    (record,) = _records(out)
    assert record["bound_lower"] == "5326332"
    assert record["predicts_nonpp"] is True


def test_hw_range(capsys):
    status, out, _ = _run(capsys, "hw", "--q", "7", "--e", "3", "--r-min", "2", "--r-max", "6")
    assert status == 0
    records = _records(out)
    assert [r["r"] for r in records] == [2, 3, 4, 5, 6]
    assert not any(r["applicable"] for r in records)


def test_hw_bad_q(capsys):
    status, _, _ = _run(capsys, "hw", "--q", "6", "--e", "3", "--r", "5")
    assert status == 2


def test_certificate(capsys):
    status, out, _ = _run(capsys, "certificate", "--p", "3", "--r", "13", "--a-exp", "0", "--N", "20")
    assert status == 0
    (record,) = _records(out)
    assert record["status"] == "certified"
    assert record["value"] == "2,0,0"


def test_human_format(capsys):
    status, out, _ = _run(capsys, "field", "--p", "5", "--format", "human")
    assert status == 0
    assert "order: 125" in out
