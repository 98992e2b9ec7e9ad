"""The verification driver: suite selection, report shape, determinism,
negative controls through --perturb, and fixture handling."""

import json

import pytest

from spincert.cli import (
    DEFAULT_SEED,
    SUITES,
    build_parser,
    load_curve_fixture,
    main,
    run,
)
from spincert.hyperell import UPoly


def _strip_times(obj):
    if isinstance(obj, dict):
        return {
            k: _strip_times(v)
            for k, v in obj.items()
            if k not in ("generated", "elapsed_ms")
        }
    if isinstance(obj, list):
        return [_strip_times(v) for v in obj]
    return obj


def _check(block, name):
    matches = [c for c in block["checks"] if c["name"] == name]
    assert len(matches) == 1
    return matches[0]


def _fixture_text(roots):
    f = UPoly((1,))
    for r in roots:
        f = f * UPoly.x_minus(r)
    return "2\n" + " ".join(str(c) for c in f.coeffs) + "\n"


class TestRun:
    def test_all_suites_aggregate(self):
        code, report = run("all")
        assert code == 0
        assert report["schema"] == 1
        assert report["status"] == "pass"
        assert report["seed"] == DEFAULT_SEED
        names = [b["suite"] for b in report["suites"]]
        assert names == sorted(SUITES)
        assert len(names) == 7
        for block in report["suites"]:
            assert block["status"] == "pass"
            assert block["failed_checks"] == []

    def test_unknown_suite(self):
        with pytest.raises(ValueError):
            run("bogus")

    def test_deterministic_reports(self):
        first = json.dumps(_strip_times(run("nr", seed=3)[1]), sort_keys=True)
        second = json.dumps(_strip_times(run("nr", seed=3)[1]), sort_keys=True)
        assert first == second

    def test_reports_are_json_serializable(self):
        _, report = run("theta", g=(1, 2))
        json.dumps(report)


class TestNegativeControls:
    def test_perturbed_instanton_names_components(self):
        code, report = run("instanton", perturb=True)
        assert code == 1
        block = report["suites"][0]
        assert block["status"] == "fail"
        assert "anti_self_dual_curvature" in block["failed_checks"]
        asd = _check(block, "anti_self_dual_curvature")
        assert asd["details"]["self_dual_part_components"] == [
            "1,2",
            "1,3",
            "1,4",
            "2,3",
            "2,4",
            "3,4",
        ]
        dirac = _check(block, "coupled_dirac_solutions")
        assert dirac["details"]["residual_zero"] == [False, False, False, False]
        control = _check(block, "perturbed_control")
        assert control["status"] == "skipped"

    def test_perturbed_nr_fails_consistency(self):
        code, report = run("nr", perturb=True)
        assert code == 1
        block = report["suites"][0]
        assert block["failed_checks"] == ["quadratic_differential_consistency"]
        bad = _check(block, "quadratic_differential_consistency")
        assert bad["details"]["consistent"] is False


class TestFlags:
    def test_branch_kernels_in_report(self):
        code, report = run("nr", branch="0,1,2,3,4,5")
        assert code == 0
        kernels = _check(report["suites"][0], "branch_kernels")["details"]["kernels"]
        assert sorted(kernels) == ["1", "2", "3", "4", "5", "6"]
        for entry in kernels.values():
            assert entry["dimension"] == 1
            assert len(entry["generator"]) == 4
        assert kernels["1"]["reduced_generator"] == [
            "1*q2",
            "-1*q1",
            "1*q4",
            "-1*q3",
        ]

    def test_theta_genus_selection_and_cost_guard(self):
        code, report = run("theta", g="2,6")
        assert code == 0
        block = report["suites"][0]
        names = {c["name"]: c["status"] for c in block["checks"]}
        assert names == {
            "parity_counts_g2": "pass",
            "arf_crosscheck_g2": "pass",
            "parity_counts_g6": "pass",
            "arf_crosscheck_g6": "skipped",
        }

    def test_repsl2_degree_selection(self):
        code, report = run("repsl2", m=(1,))
        assert code == 0
        names = [c["name"] for c in report["suites"][0]["checks"]]
        assert names == [
            "pairing_invariance_m1",
            "contraction_equivariance_m1",
            "nilpotency_m1",
        ]

    def test_malformed_lists_rejected(self):
        with pytest.raises(ValueError):
            run("repsl2", m="1,x")
        with pytest.raises(ValueError):
            run("nr", branch="0,1,2")


class TestCurveFixture:
    def test_valid_fixture(self, tmp_path):
        path = tmp_path / "curve.txt"
        path.write_text(_fixture_text((-1, 0, 1, 2, 3, 4)))
        curve = load_curve_fixture(str(path))
        assert curve.genus == 2
        code, report = run("parity", curve=str(path))
        assert code == 0
        assert report["suites"][0]["conventions"]["curve"][0] == "0"

    def test_genus_mismatch(self, tmp_path):
        path = tmp_path / "curve.txt"
        path.write_text("3\n" + _fixture_text((-1, 0, 1, 2, 3, 4)).split("\n")[1])
        with pytest.raises(ValueError):
            load_curve_fixture(str(path))

    def test_malformed_coefficients(self, tmp_path):
        path = tmp_path / "curve.txt"
        path.write_text("2\nnot a polynomial\n")
        with pytest.raises(ValueError):
            load_curve_fixture(str(path))

    def test_missing_line(self, tmp_path):
        path = tmp_path / "curve.txt"
        path.write_text("2\n")
        with pytest.raises(ValueError):
            load_curve_fixture(str(path))


class TestMain:
    def test_out_file(self, tmp_path, capsys):
        out = tmp_path / "report.json"
        code = main(["run", "clifford", "--out", str(out)])
        assert code == 0
        report = json.loads(out.read_text())
        assert report["schema"] == 1
        assert report["suites"][0]["suite"] == "clifford"
        assert capsys.readouterr().out == ""

    def test_stdout_json(self, capsys):
        code = main(["run", "repsl2", "--m", "3"])
        assert code == 0
        report = json.loads(capsys.readouterr().out)
        assert report["status"] == "pass"

    def test_suite_flag_equivalent(self, capsys):
        code = main(["run", "--suite", "repsl2", "--m", "3"])
        assert code == 0
        capsys.readouterr()

    def test_conflicting_suites(self, capsys):
        with pytest.raises(SystemExit):
            main(["run", "clifford", "--suite", "theta"])
        capsys.readouterr()

    def test_suite_required(self, capsys):
        with pytest.raises(SystemExit):
            main(["run"])
        capsys.readouterr()

    def test_unknown_suite_exits_two(self, capsys):
        with pytest.raises(SystemExit) as info:
            main(["run", "nosuch"])
        assert info.value.code == 2
        capsys.readouterr()

    def test_fixture_error_exit_code(self, tmp_path, capsys):
        path = tmp_path / "bad.txt"
        path.write_text("2\nbroken\n")
        code = main(["run", "parity", "--curve", str(path)])
        assert code == 2
        assert "malformed" in capsys.readouterr().err

    def test_parser_choices(self):
        parser = build_parser()
        args = parser.parse_args(["run", "all", "--seed", "9", "--triples", "5"])
        assert args.suite_pos == "all"
        assert args.seed == 9
        assert args.triples == 5
