"""End-to-end command-line behaviour: exit codes, JSON report shape,
byte-for-byte determinism, and file round trips."""

import json

import pytest

from edgestats.cli import main
from edgestats.hypergraph import format_hg, from_edges, parse_hg
from edgestats.multilinear import MultilinearPoly, format_mlp


def run_cli(argv, capsys):
    try:
        code = main(argv)
    except SystemExit as exc:  # argparse usage failures
        code = exc.code
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.fixture
def c5_path(tmp_path):
    g = from_edges(5, 2, [(1, 2), (2, 3), (3, 4), (4, 5), (1, 5)])
    path = tmp_path / "c5.hg"
    path.write_text(format_hg(g))
    return str(path)


@pytest.fixture
def poly_path(tmp_path):
    p = MultilinearPoly.from_terms(4, {(1, 2): 1, (3, 4): 1})
    path = tmp_path / "poly.mlp"
    path.write_text(format_mlp(p))
    return str(path)


# ---------------------------------------------------------------------------
# exit code 0 paths


def test_profile_spot(c5_path, capsys):
    code, out, _ = run_cli(["profile", "--input", c5_path, "--k", "3"], capsys)
    assert code == 0
    report = json.loads(out)
    assert report["command"] == "profile"
    assert report["results"]["counts"] == {"1": "5", "2": "5"}
    assert report["violations"] == []
    assert len(report["input_digest"]) == 64


def test_estimate_reports_are_byte_identical(c5_path, capsys):
    argv = [
        "estimate",
        "--input",
        c5_path,
        "--k",
        "3",
        "--level",
        "1",
        "--samples",
        "200",
        "--seed",
        "9",
    ]
    code, first, _ = run_cli(argv, capsys)
    assert code == 0
    code, second, _ = run_cli(argv, capsys)
    assert code == 0
    assert first == second
    assert json.loads(first)["seed"] == 9


def test_estimate_depends_on_the_seed(c5_path, capsys):
    base = ["estimate", "--input", c5_path, "--k", "3", "--level", "1", "--samples", "200"]
    _, a, _ = run_cli(base + ["--seed", "1"], capsys)
    _, b, _ = run_cli(base + ["--seed", "2"], capsys)
    assert json.loads(a)["results"]["hits"] != json.loads(b)["results"]["hits"]


def test_construct_round_trips_through_the_parser(tmp_path, capsys):
    out_path = tmp_path / "split.hg"
    code, out, _ = run_cli(
        ["construct", "split", "--n", "4", "--side", "1 2", "--r", "2", "--out", str(out_path)],
        capsys,
    )
    assert code == 0
    report = json.loads(out)
    assert report["results"]["edge_count"] == 4
    graph = parse_hg(out_path.read_text())
    assert graph.edges == ((1, 3), (1, 4), (2, 3), (2, 4))


def test_construct_lift_is_reproducible(tmp_path, capsys):
    argv = [
        "construct",
        "lift",
        "--n",
        "30",
        "--k",
        "10",
        "--s",
        "1",
        "--r",
        "2",
        "--seed",
        "3",
        "--out",
        str(tmp_path / "lift.hg"),
    ]
    _, a, _ = run_cli(argv, capsys)
    _, b, _ = run_cli(argv, capsys)
    assert json.loads(a)["results"]["out_digest"] == json.loads(b)["results"]["out_digest"]
    assert json.loads(a)["results"]["level"] == 9


def test_coupling_check_with_explicit_pairs(poly_path, capsys):
    code, out, _ = run_cli(
        ["coupling-check", "--input", poly_path, "--pairs", "1,3 2,4"], capsys
    )
    assert code == 0
    report = json.loads(out)
    assert report["results"]["max_abs_discrepancy"] == "0/1"
    assert report["violations"] == []


def test_coupling_check_sampling_mode(poly_path, capsys):
    argv = ["coupling-check", "--input", poly_path, "--sample-k", "2", "--seed", "4"]
    code, a, _ = run_cli(argv, capsys)
    assert code == 0
    _, b, _ = run_cli(argv, capsys)
    assert a == b


def test_discrepancy_with_heaviest(c5_path, capsys):
    code, out, _ = run_cli(
        ["discrepancy", "--input", c5_path, "--s", "1", "--top", "3"], capsys
    )
    assert code == 0
    report = json.loads(out)
    assert report["results"]["total"] == "0"
    assert len(report["results"]["heaviest"]) == 3


def test_anticonc_ehm_spot(capsys):
    code, out, _ = run_cli(["anticonc", "ehm", "--n", "8", "--k", "4", "--t", "4"], capsys)
    assert code == 0
    report = json.loads(out)
    assert report["results"]["tv"] == "39/280"
    assert report["results"]["bound"] == "3/7"


def test_anticonc_poisson_with_rational_flags(tmp_path, capsys):
    path = tmp_path / "pois.mlp"
    path.write_text("3\n1 : 1\n2 : 2 3\n")
    code, out, _ = run_cli(
        [
            "anticonc",
            "poisson",
            "--input",
            str(path),
            "--p",
            "1/50",
            "--level",
            "1",
            "--radius",
            "0",
        ],
        capsys,
    )
    assert code == 0
    report = json.loads(out)
    assert report["results"]["bound_satisfied"] is True
    assert report["violations"] == []


def test_anticonc_junta_tv_spot(tmp_path, capsys):
    path = tmp_path / "junta.mlp"
    path.write_text("6\n1 : 1\n1 : 2\n")
    code, out, _ = run_cli(
        ["anticonc", "junta-tv", "--input", str(path), "--n", "6", "--k", "3"], capsys
    )
    assert code == 0
    report = json.loads(out)
    assert report["results"]["tv"] == "1/10"
    assert report["results"]["bound"] == "3/5"


def test_anticonc_moments_spot(poly_path, capsys):
    code, out, _ = run_cli(
        ["anticonc", "moments", "--input", poly_path, "--n", "4", "--k", "2"], capsys
    )
    assert code == 0
    report = json.loads(out)
    assert report["results"]["mean"] == "1/3"
    assert report["results"]["variance"] == "2/9"


def test_cover_run_then_verify(tmp_path, capsys):
    path = tmp_path / "tri.hg"
    path.write_text("6 3\n1 2 3\n")
    code, out, _ = run_cli(["cover", "run", "--input", str(path), "--m", "2"], capsys)
    assert code == 0
    report = json.loads(out)
    pivot = report["results"]["pivot"]
    assert report["results"]["terminated"] is True
    pivot_arg = " ".join(str(v) for v in pivot)
    code, out, _ = run_cli(
        ["cover", "verify", "--input", str(path), "--pivot", pivot_arg, "--m", "2"],
        capsys,
    )
    assert code == 0
    assert json.loads(out)["results"]["ok"] is True


def test_suite_acceptance_subset(capsys):
    code, out, err = run_cli(["suite", "acceptance", "--only", "4,7"], capsys)
    assert code == 0
    report = json.loads(out)
    criteria = report["results"]["criteria"]
    assert [c["index"] for c in criteria] == [4, 7]
    assert all(c["ok"] for c in criteria)
    assert "PASS" in err  # human-readable lines go to stderr


# ---------------------------------------------------------------------------
# exit code 1: a verified inequality fails


def test_cover_verify_failure_returns_one(tmp_path, capsys):
    path = tmp_path / "one.hg"
    path.write_text("2 2\n1 2\n")
    code, out, _ = run_cli(
        ["cover", "verify", "--input", str(path), "--pivot", "", "--m", "2"], capsys
    )
    assert code == 1
    report = json.loads(out)
    assert report["violations"]
    assert report["results"]["failing_subset"] == []


# ---------------------------------------------------------------------------
# exit code 2: usage and input errors


def test_missing_file_is_a_usage_error(capsys):
    code, _, err = run_cli(["profile", "--input", "no-such-file.hg", "--k", "2"], capsys)
    assert code == 2
    assert "error:" in err


def test_bad_header_names_the_line(tmp_path, capsys):
    path = tmp_path / "bad.hg"
    path.write_text("bad\n1 2\n")
    code, _, err = run_cli(["profile", "--input", str(path), "--k", "2"], capsys)
    assert code == 2
    assert "line 1" in err


def test_sampling_mode_requires_a_seed(poly_path, capsys):
    code, _, err = run_cli(
        ["coupling-check", "--input", poly_path, "--sample-k", "2"], capsys
    )
    assert code == 2
    assert "--seed" in err


def test_pairs_and_sampling_are_mutually_exclusive(poly_path, capsys):
    code, _, err = run_cli(
        [
            "coupling-check",
            "--input",
            poly_path,
            "--pairs",
            "1,2",
            "--sample-k",
            "1",
            "--seed",
            "0",
        ],
        capsys,
    )
    assert code == 2
    assert "excludes" in err


def test_unknown_criterion_is_rejected(capsys):
    code, _, err = run_cli(["suite", "acceptance", "--only", "99"], capsys)
    assert code == 2
    assert "unknown" in err


def test_argparse_usage_error_is_exit_two(capsys):
    code, _, _ = run_cli(["profile", "--k", "2"], capsys)  # no --input
    assert code == 2


def test_malformed_pair_token(poly_path, capsys):
    code, _, err = run_cli(
        ["coupling-check", "--input", poly_path, "--pairs", "1-2"], capsys
    )
    assert code == 2
    assert "a,b" in err
