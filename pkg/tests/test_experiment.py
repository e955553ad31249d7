import io
import subprocess
import sys

import numpy as np
import pytest

from decohere import ConfigError, Family
from decohere.experiment import (
    CSV_HEADER,
    ExplicitSchedule,
    HomogeneousSchedule,
    SweepSpec,
    load_config,
    parse_config,
    run_single,
    run_sweep,
    write_csv,
)

SQRT2 = np.sqrt(2.0)


def base_config(**overrides):
    data = {
        "family": "ghz",
        "n_qubits": 3,
        "schedule": {"K": 2, "lambda": 0.9},
    }
    data.update(overrides)
    return data


def csv_text(rows):
    buf = io.StringIO()
    write_csv(rows, buf)
    return buf.getvalue()


class TestParsing:
    def test_homogeneous_round_trip(self):
        config = parse_config(base_config(schedule={"K": 2, "lambda": 0.9, "phi": 0.3}))
        assert config.family is Family.GHZ
        assert config.n_qubits == 3
        assert config.schedule == HomogeneousSchedule(2, 0.9, 0.3)
        assert config.cuts == "all"
        assert config.sweep is None

    def test_explicit_round_trip(self):
        config = parse_config(
            base_config(
                family="cluster",
                schedule={"gammas": [0.5, 0.6, 0.7], "phis": [0.0, 0.1, 0.2]},
                cuts=[1, 3],
            )
        )
        assert config.schedule == ExplicitSchedule((0.5, 0.6, 0.7), (0.0, 0.1, 0.2))
        assert config.cuts == (1, 3)

    def test_phis_default_to_zero(self):
        config = parse_config(base_config(schedule={"gammas": [0.5, 0.6, 0.7]}))
        assert config.schedule.phases == (0.0, 0.0, 0.0)

    @pytest.mark.parametrize(
        "mangle",
        [
            {"family": "bell"},
            {"n_qubits": 1},
            {"n_qubits": 13},
            {"n_qubits": "three"},
            {"schedule": {"K": 2}},
            {"schedule": {"K": -1, "lambda": 0.5}},
            {"schedule": {"K": 2, "lambda": 1.5}},
            {"schedule": {"K": 2, "lambda": -0.1}},
            {"schedule": {"K": True, "lambda": 0.5}},
            {"schedule": {"gammas": [0.5, 0.5]}},
            {"schedule": {"gammas": [0.5, 1.2, 0.5]}},
            {"schedule": {"gammas": [0.5] * 3, "phis": [0.0] * 2}},
            {"schedule": {"K": 1, "lambda": 0.5, "gammas": [0.5] * 3}},
            {"cuts": [0]},
            {"cuts": [7]},
            {"cuts": [1, 6]},
            {"cuts": "some"},
            {"extra_field": 1},
            {"schedule": {"K": 2, "lambda": 0.9, "mu": 1}},
        ],
    )
    def test_rejects_malformed(self, mangle):
        with pytest.raises(ConfigError):
            parse_config(base_config(**mangle))

    def test_rejects_non_mapping(self):
        with pytest.raises(ConfigError):
            parse_config([1, 2, 3])

    def test_all_cuts_capped(self):
        # caught at parse time: cuts 'all' with 11 qubits means 1023 cuts
        with pytest.raises(ConfigError):
            parse_config(base_config(n_qubits=11, schedule={"K": 1, "lambda": 0.5}))

    def test_sweep_parses(self):
        config = parse_config(
            base_config(sweep={"parameter": "n_qubits", "values": [2, 3, 4]})
        )
        assert config.sweep == SweepSpec("n_qubits", (2, 3, 4))

    @pytest.mark.parametrize(
        "sweep",
        [
            {"parameter": "gamma", "values": [0.1, 0.2]},
            {"parameter": "lambda", "values": [0.5, 0.5]},
            {"parameter": "lambda", "values": [0.9, 0.5]},
            {"parameter": "lambda", "values": [0.5, 1.5]},
            {"parameter": "K", "values": [1, 2.5]},
            {"parameter": "n_qubits", "values": [2, 13]},
            {"parameter": "lambda", "values": []},
            {"parameter": "lambda"},
        ],
    )
    def test_rejects_malformed_sweep(self, sweep):
        with pytest.raises(ConfigError):
            parse_config(base_config(sweep=sweep))

    def test_sweep_requires_homogeneous_schedule(self):
        with pytest.raises(ConfigError):
            parse_config(
                base_config(
                    schedule={"gammas": [0.5, 0.5, 0.5]},
                    sweep={"parameter": "lambda", "values": [0.1, 0.2]},
                )
            )

    def test_swept_sizes_validated_against_cuts(self):
        # an n_qubits sweep must keep every listed cut legal at every size
        with pytest.raises(ConfigError):
            parse_config(
                base_config(
                    cuts=[5],
                    sweep={"parameter": "n_qubits", "values": [2, 3]},
                )
            )

    def test_load_config_missing_file(self, tmp_path):
        with pytest.raises(ConfigError):
            load_config(str(tmp_path / "nope.yaml"))

    def test_load_config_bad_yaml(self, tmp_path):
        path = tmp_path / "broken.yaml"
        path.write_text("family: [unclosed\n")
        with pytest.raises(ConfigError):
            load_config(str(path))

    def test_load_config_round_trip(self, tmp_path):
        path = tmp_path / "run.yaml"
        path.write_text(
            "family: w\nn_qubits: 4\nschedule:\n  K: 1\n  lambda: 0.8\ncuts: [3]\n"
        )
        config = load_config(str(path))
        assert config.family is Family.W
        assert config.cuts == (3,)


class TestRunSingle:
    def test_pure_ghz_rows(self):
        config = parse_config(base_config(schedule={"K": 1, "lambda": 1.0}))
        rows = run_single(config)
        assert len(rows) == 3
        for row in rows:
            assert row.family == "ghz"
            assert abs(row.min_eigenvalue - (-0.5)) < 1e-12
            assert abs(row.formula_value - (-0.5)) < 1e-15
            assert row.abs_error < 1e-12
        assert [row.cut.cli_bitmask for row in rows] == [1, 3, 5]

    def test_w_balanced_cut_row(self):
        config = parse_config(
            base_config(family="w", n_qubits=4, schedule={"K": 1, "lambda": 1.0}, cuts=[3])
        )
        (row,) = run_single(config)
        assert row.cut.human() == "1,2|3,4"
        assert abs(row.min_eigenvalue - (-0.5)) < 1e-12

    def test_cluster_rows_use_negativity_sum(self):
        config = parse_config(
            base_config(
                family="cluster",
                schedule={"gammas": [0.5, 0.5, 0.5]},
            )
        )
        rows = run_single(config)
        outer = rows[0]
        assert abs(outer.formula_value - 0.0625) < 1e-15
        assert abs(outer.negativity_sum - outer.formula_value) < 1e-10
        # two negative eigenvalues share that sum on the outer cut
        assert -outer.min_eigenvalue < outer.negativity_sum

    def test_cluster_ppt_row_reports_zero_formula(self):
        config = parse_config(
            base_config(family="cluster", n_qubits=2, schedule={"gammas": [0.2, 0.2]})
        )
        (row,) = run_single(config)
        assert row.formula_value == 0.0
        assert row.negativity_sum == 0.0
        assert row.min_eigenvalue > -1e-12
        assert row.abs_error < 1e-12

    def test_formula_blank_when_unavailable(self):
        config = parse_config(
            base_config(family="cluster", n_qubits=4, schedule={"K": 1, "lambda": 0.7})
        )
        rows = run_single(config)
        assert all(row.formula_value is None for row in rows)
        assert all(row.abs_error is None for row in rows)

    def test_every_formula_row_within_contract_tolerance(self):
        for family in ("ghz", "w", "cluster"):
            config = parse_config(
                base_config(family=family, schedule={"K": 2, "lambda": 0.85})
            )
            for row in run_single(config):
                if row.abs_error is not None:
                    assert row.abs_error <= 1e-8

    def test_rejects_sweep_config(self):
        config = parse_config(
            base_config(sweep={"parameter": "lambda", "values": [0.1, 0.2]})
        )
        with pytest.raises(ConfigError):
            run_single(config)


class TestRunSweep:
    def test_lambda_sweep_tracks_w_closed_form(self):
        values = [0.2, 0.4, 0.6, 0.8, 1.0]
        config = parse_config(
            base_config(
                family="w",
                n_qubits=4,
                cuts=[3],
                schedule={"K": 1, "lambda": 0.5},
                sweep={"parameter": "lambda", "values": values},
            )
        )
        rows = run_sweep(config)
        assert len(rows) == len(values)
        for lam, row in zip(values, rows):
            assert abs(row.min_eigenvalue - (-(lam**2) / 2)) < 1e-10

    def test_n_sweep_recovers_ghz_decay_slope(self):
        sizes = list(range(2, 9))
        config = parse_config(
            base_config(
                cuts=[1],
                schedule={"K": 1, "lambda": 0.9},
                sweep={"parameter": "n_qubits", "values": sizes},
            )
        )
        rows = run_sweep(config)
        slope = np.polyfit(sizes, [np.log(-row.min_eigenvalue) for row in rows], 1)[0]
        assert abs(slope - np.log(0.9)) < 1e-9

    def test_k_sweep_at_unit_strength_is_flat(self):
        config = parse_config(
            base_config(
                cuts=[1],
                schedule={"K": 1, "lambda": 1.0},
                sweep={"parameter": "K", "values": [1, 2, 3]},
            )
        )
        rows = run_sweep(config)
        assert all(abs(row.min_eigenvalue + 0.5) < 1e-12 for row in rows)

    def test_rejects_plain_config(self):
        with pytest.raises(ConfigError):
            run_sweep(parse_config(base_config()))


class TestCSV:
    def test_header_exact(self):
        assert CSV_HEADER == [
            "family",
            "n_qubits",
            "cut_bitmask",
            "cut_human",
            "gammas",
            "min_eigenvalue",
            "negativity_sum",
            "formula_value",
            "abs_error",
        ]
        text = csv_text([])
        assert text == ",".join(CSV_HEADER) + "\n"

    def test_rows_round_trip_through_repr(self):
        import csv

        config = parse_config(base_config(schedule={"gammas": [0.3, 0.7, 0.9]}))
        rows = run_single(config)
        parsed = list(csv.reader(io.StringIO(csv_text(rows))))
        assert len(parsed) == 4
        for row, fields in zip(rows, parsed[1:]):
            assert fields[0] == "ghz"
            assert int(fields[1]) == 3
            assert int(fields[2]) == row.cut.cli_bitmask
            assert fields[3] == row.cut.human()
            gammas = tuple(float(g) for g in fields[4].split(";"))
            assert gammas == row.gammas
            assert float(fields[5]) == row.min_eigenvalue
            assert float(fields[6]) == row.negativity_sum
            assert float(fields[7]) == row.formula_value
            assert float(fields[8]) == row.abs_error

    def test_blank_fields_for_missing_formula(self):
        config = parse_config(
            base_config(family="cluster", n_qubits=4, schedule={"K": 1, "lambda": 0.7})
        )
        line = csv_text(run_single(config)).splitlines()[1]
        assert line.endswith(",,")

    def test_byte_identical_across_runs(self):
        config = parse_config(
            base_config(
                family="w",
                sweep={"parameter": "lambda", "values": [0.3, 0.6, 0.9]},
            )
        )
        assert csv_text(run_sweep(config)) == csv_text(run_sweep(config))


class TestCLI:
    def run_cli(self, *args, cwd=None):
        return subprocess.run(
            [sys.executable, "-m", "decohere", *args],
            capture_output=True,
            text=True,
            cwd=cwd,
            timeout=120,
        )

    def write_yaml(self, tmp_path, text):
        path = tmp_path / "config.yaml"
        path.write_text(text)
        return str(path)

    def test_single_prints_csv(self, tmp_path):
        path = self.write_yaml(
            tmp_path,
            "family: ghz\nn_qubits: 2\nschedule:\n  K: 1\n  lambda: 1.0\n",
        )
        proc = self.run_cli("single", "--config", path)
        assert proc.returncode == 0
        lines = proc.stdout.splitlines()
        assert lines[0] == ",".join(CSV_HEADER)
        assert lines[1].startswith("ghz,2,1,1|2,")
        assert "-0.5" in lines[1]

    def test_sweep_writes_file(self, tmp_path):
        path = self.write_yaml(
            tmp_path,
            "family: ghz\nn_qubits: 2\ncuts: [1]\n"
            "schedule:\n  K: 1\n  lambda: 0.9\n"
            "sweep:\n  parameter: n_qubits\n  values: [2, 3, 4]\n",
        )
        out = tmp_path / "rows.csv"
        proc = self.run_cli("sweep", "--config", path, "--out", str(out))
        assert proc.returncode == 0
        lines = out.read_text().splitlines()
        assert lines[0] == ",".join(CSV_HEADER)
        assert [line.split(",")[1] for line in lines[1:]] == ["2", "3", "4"]

    def test_config_error_exits_2(self, tmp_path):
        path = self.write_yaml(
            tmp_path,
            "family: ghz\nn_qubits: 2\nschedule:\n  K: 1\n  lambda: 1.7\n",
        )
        proc = self.run_cli("single", "--config", path)
        assert proc.returncode == 2
        assert "lambda" in proc.stderr

    def test_missing_config_file_exits_2(self, tmp_path):
        proc = self.run_cli("single", "--config", str(tmp_path / "absent.yaml"))
        assert proc.returncode == 2
        assert proc.stderr.strip()

    def test_unwritable_output_exits_2(self, tmp_path):
        path = self.write_yaml(
            tmp_path,
            "family: ghz\nn_qubits: 2\ncuts: [1]\n"
            "schedule:\n  K: 1\n  lambda: 0.9\n"
            "sweep:\n  parameter: K\n  values: [1, 2]\n",
        )
        proc = self.run_cli(
            "sweep", "--config", path, "--out", str(tmp_path / "no-dir" / "x.csv")
        )
        assert proc.returncode == 2
        assert proc.stderr.strip()

    def test_missing_subcommand_exits_2(self):
        proc = self.run_cli()
        assert proc.returncode == 2

    def test_verify_small_run_passes(self):
        proc = self.run_cli("verify", "--max-n", "3", "--seed", "11")
        assert proc.returncode == 0
        assert "PASS" in proc.stdout
        assert "FAIL" not in proc.stdout

    @pytest.mark.parametrize("bad", ["1", "13"])
    def test_verify_rejects_bad_max_n(self, bad):
        proc = self.run_cli("verify", "--max-n", bad)
        assert proc.returncode == 2
