from __future__ import annotations

import io
import json

import pytest

from gapflow.__main__ import main
from gapflow.cli import RunConfig, build_parser, glue_range_values
from gapflow.cli.config import parse_grid
from gapflow.core.exceptions import ValidationError
from gapflow.core.report import read_csv, write_csv
from gapflow.core.settings import Settings


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


# Argument handling


def test_range_flag_values_survive_parsing():
    argv = glue_range_values(["limits", "dpii-to-pii", "--eta", "100,400", "--t", "-4:2:0.5"])
    assert argv[-1] == "--t=-4:2:0.5"
    args = build_parser().parse_args(argv)
    config = RunConfig.from_args(args, Settings({}))
    assert config.eta == (100, 400) and config.model is None
    assert len(config.t_grid) == 13


def test_parse_grid():
    assert [str(v) for v in parse_grid("0:1:1/4")] == ["0", "1/4", "1/2", "3/4", "1"]
    with pytest.raises(ValidationError):
        parse_grid("2:1:0.5")


def test_precision_precedence(monkeypatch):
    parser = build_parser()
    argv = ["compute", "--eta", "1"]
    assert RunConfig.from_args(parser.parse_args(argv), Settings({})).precision_bits == 256
    env = Settings({"GAPFLOW_PRECISION": "512"})
    assert RunConfig.from_args(parser.parse_args(argv), env).precision_bits == 512
    flagged = parser.parse_args([*argv, "--precision", "128"])
    assert RunConfig.from_args(flagged, env).precision_bits == 128


def test_kernel_is_inferred():
    parser = build_parser()
    args = parser.parse_args(["compute", "--z", "0.3", "--zp", "0.7", "--xi", "0.5"])
    config = RunConfig.from_args(args, Settings({}))
    assert config.kernel == "hyp"
    assert config.echo()["zprime"] == "0.7"


# compute


def test_compute_recurrence_rows(capsys):
    code, out, _ = run(
        capsys, "compute", "--kernel", "bessel", "--eta", "1", "--method", "recurrence",
        "--kmax", "25",
    )
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "k,value,method,precision_bits,meta"
    assert len(lines) == 27
    assert lines[1].startswith("0,0.367879441171442321595523770161460867445811131031767834507")
    assert all(line.split(",")[2] == "recurrence" for line in lines[1:])


def test_compute_density_column(capsys):
    code, out, _ = run(capsys, "compute", "--eta", "1", "--kmax", "3", "--density")
    assert code == 0
    lines = out.splitlines()
    assert lines[0].endswith(",density")
    assert lines[-1].endswith(",")


def test_compute_invalid_xi(capsys):
    code, _, err = run(capsys, "compute", "--kernel", "hyp", "--z", "0.3", "--zp", "0.7",
                       "--xi", "1.2")
    assert code == 2
    assert "xi must lie in (0, 1)" in err


@pytest.mark.parametrize("bits", ["32", "20000"])
def test_compute_precision_out_of_range(capsys, bits):
    code, _, _ = run(capsys, "compute", "--eta", "1", "--precision", bits)
    assert code == 2


def test_env_precision_reaches_output(capsys, monkeypatch):
    monkeypatch.setenv("GAPFLOW_PRECISION", "128")
    _, out, _ = run(capsys, "compute", "--eta", "1", "--kmax", "1")
    assert out.splitlines()[1].split(",")[3] == "128"
    _, out, _ = run(capsys, "compute", "--eta", "1", "--kmax", "1", "--precision", "192")
    assert out.splitlines()[1].split(",")[3] == "192"


def test_csv_round_trip_is_byte_identical(capsys, tmp_path):
    path = tmp_path / "figure.csv"
    code, _, _ = run(
        capsys, "compute", "--z", "2.5", "--zp", "2.5", "--xi", "0.85", "--method",
        "recurrence", "--kmax", "40", "--out", str(path),
    )
    assert code == 0
    raw = path.read_bytes()
    assert b"\r\n" not in raw
    with path.open(encoding="utf-8", newline="") as f:
        report = read_csv(f)
    assert len(report.rows) == 41
    buffer = io.StringIO()
    write_csv(report, buffer)
    assert buffer.getvalue().encode("utf-8") == raw

    again = tmp_path / "again.csv"
    run(
        capsys, "compute", "--z", "2.5", "--zp", "2.5", "--xi", "0.85", "--method",
        "recurrence", "--kmax", "40", "--out", str(again),
    )
    assert again.read_bytes() == raw


def test_json_output(capsys):
    code, out, _ = run(capsys, "compute", "--eta", "0.5", "--kmax", "2", "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert data["config"]["precision_bits"] == "256"
    assert data["config"]["eta"] == "0.5"
    assert [row["k"] for row in data["rows"]] == ["0", "1", "2"]
    assert all(isinstance(v, str) for row in data["rows"] for v in row.values())


def test_parallel_workers_do_not_change_output(capsys):
    argv = ["compute", "--eta", "0.5", "--kmax", "4", "--method", "fredholm"]
    _, serial, _ = run(capsys, *argv, "--workers", "1")
    _, parallel, _ = run(capsys, *argv, "--workers", "3")
    assert serial == parallel


# compare


def test_compare_recurrence_against_toeplitz(capsys):
    code, out, err = run(
        capsys, "compare", "--eta", "1", "--kmax", "25", "--tol", "1e-30",
        "--method", "toeplitz", "--method", "recurrence",
    )
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "k,toeplitz,recurrence,abs_diff,rel_diff,max"
    assert sum(line.endswith(",*") for line in lines[1:]) == 1
    assert "max |diff|" in err


def test_compare_at_low_precision_fails(capsys):
    code, _, err = run(
        capsys, "compare", "--eta", "5", "--kmax", "40", "--precision", "64",
        "--method", "toeplitz", "--method", "recurrence",
    )
    assert code == 1
    assert "suggested" in err


def test_compare_needs_two_methods(capsys):
    code, _, _ = run(capsys, "compare", "--eta", "1", "--method", "toeplitz")
    assert code == 2


# oracle


def test_oracle_lis_passes(capsys):
    code, out, _ = run(capsys, "oracle", "lis", "--eta", "0.6", "--kmax", "5", "--nmax", "9")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "k,oracle,determinant,diff,bound,meta,pass"
    assert all(line.endswith(",yes") for line in lines[1:])


def test_oracle_zmeasure_passes(capsys):
    code, _, _ = run(
        capsys, "oracle", "zmeasure", "--z", "0.3", "--zp", "0.7", "--xi", "0.5",
        "--kmax", "6", "--sizemax", "28",
    )
    assert code == 0


@pytest.mark.parametrize(
    "argv",
    [
        ("oracle", "lis", "--z", "0.3", "--zp", "0.7", "--xi", "0.5"),
        ("oracle", "plancherel", "--z", "0.3", "--zp", "0.7", "--xi", "0.5"),
        ("limits", "dpv-to-dpii", "--z", "0.3", "--zp", "0.7", "--xi", "0.5", "--N", "10,20"),
    ],
)
def test_bessel_only_commands_reject_hyp_model(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2
    assert "ValidationError" in err and "needs --eta" in err


def test_oracle_permutation_cap(capsys):
    code, _, err = run(capsys, "oracle", "lis", "--eta", "0.6", "--nmax", "12")
    assert code == 2
    assert "ResourceBoundError" in err


# limits


def test_limits_dpv_to_dpii(capsys):
    code, out, _ = run(capsys, "limits", "dpv-to-dpii", "--eta", "1", "--N", "10,20,40")
    assert code == 0
    assert out.splitlines()[0] == "N,alpha,b,beta,gap"


@pytest.mark.parametrize(
    "argv",
    [
        ("limits", "dpv-to-dpii", "--eta", "1", "--N", "10"),
        ("limits", "dpii-to-pii", "--eta", "100", "--t", "-4:2:0.5"),
    ],
)
def test_limits_need_two_scales(capsys, argv):
    code, _, _ = run(capsys, *argv)
    assert code == 2


@pytest.mark.slow
def test_limits_dpii_to_pii(capsys):
    code, out, _ = run(capsys, "limits", "dpii-to-pii", "--eta", "100,400", "--t", "-4:2:0.5")
    assert code == 0
    assert len(out.splitlines()) == 1 + 2 * 13


# bench


def test_bench_rejects_few_repeats(capsys):
    code, _, _ = run(capsys, "bench", "--eta", "1", "--repeat", "3")
    assert code == 2


def test_bench_small_run(capsys):
    code, out, _ = run(capsys, "bench", "--eta", "1", "--kmax", "2", "--method", "toeplitz",
                       "--method", "fredholm")
    assert code == 0
    rows = out.splitlines()
    assert rows[0] == "method,median_seconds,ratio,peak_truncation,runs"
    assert rows[1].split(",")[2] == "1.000"
    assert rows[2].split(",")[3] != ""


@pytest.mark.slow
def test_recurrence_is_much_faster_than_toeplitz(capsys):
    code, out, _ = run(
        capsys, "bench", "--eta", "5", "--kmax", "200", "--precision", "512",
        "--method", "toeplitz", "--method", "recurrence",
    )
    assert code == 0
    recurrence = out.splitlines()[2].split(",")
    assert recurrence[0] == "recurrence"
    assert float(recurrence[2]) >= 10
