"""Command-line behavior: argument validation, output files, exit codes,
and byte-level reproducibility."""

import json

import pytest

from paretopath.cli import (
    OUT_DIR_ENV,
    RunConfig,
    _UsageError,
    main,
    parse_config,
)


def scrub(obj):
    """Drop wall-clock entries so two runs of the same config compare equal."""
    if isinstance(obj, dict):
        return {
            k: scrub(v)
            for k, v in obj.items()
            if k not in ("wall_time", "speedup_wall")
        }
    if isinstance(obj, list):
        return [scrub(v) for v in obj]
    return obj


class TestParseConfig:
    def test_defaults(self):
        config = parse_config([])
        assert config.problem == "paper-toy"
        assert config.d_values == (0.1,)
        assert config.epsilon == 1e-7
        assert config.method == "both"
        assert config.formats == ("csv", "json", "svg")
        assert str(config.out_dir) == "out"
        assert not config.random_x0

    def test_repeated_d_builds_sweep(self):
        config = parse_config(["--d", "0.2", "--d", "0.1", "--d", "0.05"])
        assert config.d_values == (0.2, 0.1, 0.05)

    def test_out_dir_env_fallback(self, monkeypatch, tmp_path):
        monkeypatch.setenv(OUT_DIR_ENV, str(tmp_path / "from_env"))
        assert parse_config([]).out_dir == tmp_path / "from_env"
        # an explicit flag beats the environment
        config = parse_config(["--out-dir", str(tmp_path / "flagged")])
        assert config.out_dir == tmp_path / "flagged"

    @pytest.mark.parametrize("d", ["1.5", "0.0", "-0.1", "1.0"])
    def test_d_out_of_range(self, d):
        with pytest.raises(_UsageError, match=r"d must be in \(0,1\)"):
            parse_config(["--d", d])

    def test_bad_epsilon(self):
        with pytest.raises(_UsageError, match="epsilon"):
            parse_config(["--epsilon", "0"])

    def test_bad_workers(self):
        with pytest.raises(_UsageError, match="workers"):
            parse_config(["--workers", "0"])

    def test_bad_format(self):
        with pytest.raises(_UsageError, match="unknown format"):
            parse_config(["--formats", "csv,xlsx"])

    def test_unknown_flag_is_usage_error(self):
        with pytest.raises(_UsageError):
            parse_config(["--frobnicate"])


class TestMainRuns:
    def test_both_methods_write_all_outputs(self, tmp_path):
        code = main(["--d", "0.1", "--out-dir", str(tmp_path)])
        assert code == 0
        for name in (
            "front_pathfollow_d0.1.csv",
            "front_naive_d0.1.csv",
            "front_pathfollow_d0.1.json",
            "front_naive_d0.1.json",
            "front_d0.1.svg",
            "counters_d0.1.svg",
            "report.json",
        ):
            assert (tmp_path / name).exists(), name
        csv_lines = (tmp_path / "front_pathfollow_d0.1.csv").read_text().strip().splitlines()
        assert len(csv_lines) == 1 + 9
        report = json.loads((tmp_path / "report.json").read_text())
        assert report["problem"] == "paper-toy"
        assert len(report["rows"]) == 2
        pf_row = next(r for r in report["rows"] if r["method"] == "pathfollow")
        assert pf_row["speedup_cost"] > 1.0
        assert pf_row["max_oracle_residual"] <= 1e-12

    def test_formats_subset_limits_files(self, tmp_path):
        code = main(["--d", "0.25", "--method", "pathfollow", "--formats", "csv",
                     "--out-dir", str(tmp_path)])
        assert code == 0
        names = sorted(p.name for p in tmp_path.iterdir())
        assert names == ["front_pathfollow_d0.25.csv", "report.json"]

    def test_spacing_tag_uses_short_float_form(self, tmp_path):
        code = main(["--d", "0.001", "--method", "pathfollow", "--formats", "csv",
                     "--out-dir", str(tmp_path)])
        assert code == 0
        assert (tmp_path / "front_pathfollow_d0.001.csv").exists()

    def test_parallel_method(self, tmp_path):
        code = main(["--d", "0.1", "--method", "parallel", "--workers", "3",
                     "--formats", "json", "--out-dir", str(tmp_path)])
        assert code == 0
        data = json.loads((tmp_path / "front_parallel_d0.1.json").read_text())
        assert data["method"] == "parallel"
        assert data["initial_solves"] == 3
        report = json.loads((tmp_path / "report.json").read_text())
        # no naive run, so no speedup entry
        assert "speedup_cost" not in report["rows"][0]

    def test_problem_spec_file(self, tmp_path):
        spec = tmp_path / "spec.json"
        spec.write_text(json.dumps(
            {"kind": "random-quadratic", "n": 4, "m": 2, "c": 1.0, "L": 10.0, "seed": 3}
        ))
        code = main(["--problem", str(spec), "--d", "0.25", "--method", "pathfollow",
                     "--formats", "csv", "--out-dir", str(tmp_path / "out")])
        assert code == 0
        report = json.loads((tmp_path / "out" / "report.json").read_text())
        assert report["problem"].startswith("random-quadratic")

    def test_random_x0_is_seeded(self, tmp_path):
        args = ["--d", "0.25", "--method", "pathfollow", "--formats", "csv",
                "--random-x0", "--seed", "11"]
        assert main(args + ["--out-dir", str(tmp_path / "a")]) == 0
        assert main(args + ["--out-dir", str(tmp_path / "b")]) == 0
        first = (tmp_path / "a" / "front_pathfollow_d0.25.csv").read_bytes()
        second = (tmp_path / "b" / "front_pathfollow_d0.25.csv").read_bytes()
        assert first == second

    def test_help_exits_zero(self, capsys):
        assert main(["--help"]) == 0
        assert "--problem" in capsys.readouterr().out


class TestExitCodes:
    def test_unknown_problem(self, tmp_path, capsys):
        code = main(["--problem", "nonesuch", "--out-dir", str(tmp_path)])
        assert code == 1
        assert "error:" in capsys.readouterr().err

    def test_invalid_d_message(self, capsys):
        assert main(["--d", "1.5"]) == 1
        assert "d must be in (0,1)" in capsys.readouterr().err

    def test_empty_grid_is_usage_error(self, tmp_path, capsys):
        # a three-objective grid at d=0.5 has no interior points
        spec = tmp_path / "spec.json"
        spec.write_text(json.dumps(
            {"kind": "random-quadratic", "n": 3, "m": 3, "c": 1.0, "L": 5.0, "seed": 0}
        ))
        code = main(["--problem", str(spec), "--d", "0.5", "--out-dir", str(tmp_path)])
        assert code == 1

    def test_unwritable_out_dir(self, tmp_path, capsys):
        blocker = tmp_path / "blocker"
        blocker.write_text("")
        code = main(["--d", "0.25", "--out-dir", str(blocker / "sub")])
        assert code == 1
        assert "output directory" in capsys.readouterr().err

    def test_flagged_front_exits_two(self, tmp_path):
        code = main(["--d", "0.5", "--epsilon", "1e-30", "--method", "naive",
                     "--formats", "csv", "--out-dir", str(tmp_path)])
        assert code == 2
        # outputs are still written for inspection
        assert (tmp_path / "front_naive_d0.5.csv").exists()
        report = json.loads((tmp_path / "report.json").read_text())
        assert report["rows"][0]["converged"] is False


class TestReproducibility:
    def test_identical_runs_produce_identical_bytes(self, tmp_path):
        args = ["--d", "0.1", "--seed", "5"]
        assert main(args + ["--out-dir", str(tmp_path / "a")]) == 0
        assert main(args + ["--out-dir", str(tmp_path / "b")]) == 0
        for name in (
            "front_pathfollow_d0.1.csv",
            "front_naive_d0.1.csv",
            "front_d0.1.svg",
            "counters_d0.1.svg",
        ):
            first = (tmp_path / "a" / name).read_bytes()
            second = (tmp_path / "b" / name).read_bytes()
            assert first == second, f"{name} differs between identical runs"
        # front JSONs embed measured wall times inside the counters; they
        # must agree everywhere else
        for name in ("front_pathfollow_d0.1.json", "front_naive_d0.1.json"):
            first = json.loads((tmp_path / "a" / name).read_text())
            second = json.loads((tmp_path / "b" / name).read_text())
            assert scrub(first) == scrub(second), name

    def test_report_matches_after_wall_time_scrub(self, tmp_path):
        args = ["--d", "0.2", "--method", "both", "--formats", "csv"]
        assert main(args + ["--out-dir", str(tmp_path / "a")]) == 0
        assert main(args + ["--out-dir", str(tmp_path / "b")]) == 0
        first = json.loads((tmp_path / "a" / "report.json").read_text())
        second = json.loads((tmp_path / "b" / "report.json").read_text())
        assert first != second  # wall times genuinely differ...
        first["config"]["out_dir"] = second["config"]["out_dir"] = ""
        assert scrub(first) == scrub(second)  # ...and nothing else does


class TestRunConfig:
    def test_as_dict_round_trips_through_json(self):
        config = RunConfig()
        data = json.loads(json.dumps(config.as_dict()))
        assert data["problem"] == "paper-toy"
        assert data["d"] == [0.1]
        assert data["formats"] == ["csv", "json", "svg"]
