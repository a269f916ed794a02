import csv
import io
import json

import pytest
from click.testing import CliRunner

from main import main

SMALL_RUN = [
    "--set", "qubits_per_run=5",
    "--set", "replications=2",
    "--set", "route_lengths=2,4",
]


@pytest.fixture
def runner(mocker):
    # Root handlers would otherwise point at the runner's temporary streams
    mocker.patch("main.setup_logging")
    return CliRunner()


@pytest.mark.integration
class TestTopologyCommand:

    def test_default_lattice(self, runner):
        result = runner.invoke(main, ["topology"])

        assert result.exit_code == 0, result.output
        payload = json.loads(result.stdout)
        assert (payload["rows"], payload["cols"]) == (3, 4)
        assert len(payload["nodes"]) == 12
        assert len(payload["channels"]) == 17
        assert all(0.85 <= c["fidelity"] <= 1.0 for c in payload["channels"])

    def test_writes_file_and_honours_seed(self, runner, tmp_path):
        first, second = tmp_path / "a.json", tmp_path / "b.json"

        runner.invoke(main, ["topology", "--seed", "9", "--out", str(first)])
        runner.invoke(main, ["topology", "--seed", "9", "--out", str(second)])

        assert first.read_bytes() == second.read_bytes()
        assert json.loads(first.read_text())["rows"] == 3

    def test_one_by_n_lattice_rejected(self, runner):
        result = runner.invoke(main, ["topology", "--set", "rows=1"])
        assert result.exit_code != 0
        assert "at least 2 rows" in result.output


@pytest.mark.integration
class TestRunCommand:

    def test_writes_summary_and_raw_csv(self, runner, tmp_path):
        out, raw = tmp_path / "table.csv", tmp_path / "raw.csv"

        result = runner.invoke(main, ["run", *SMALL_RUN, "--out", str(out), "--raw-out", str(raw)])

        assert result.exit_code == 0, result.output
        table_rows = list(csv.reader(io.StringIO(out.read_text())))
        raw_rows = list(csv.reader(io.StringIO(raw.read_text())))
        assert table_rows[0][0] == "strategy"
        assert len(table_rows) == 1 + 3 * 2
        assert len(raw_rows) == 1 + 3 * 2 * 2
        assert "Trend check" in result.stdout

    def test_summary_to_stdout_is_reproducible(self, runner):
        first = runner.invoke(main, ["run", *SMALL_RUN, "--seed", "5"])
        second = runner.invoke(main, ["run", *SMALL_RUN, "--seed", "5"])

        assert first.exit_code == 0, first.output
        assert first.stdout == second.stdout
        assert first.stdout.startswith("strategy,route_length,")

    def test_config_file_with_flag_override(self, runner, tmp_path):
        config_file = tmp_path / "experiment.conf"
        config_file.write_text("# small run\nqubits_per_run = 5\nreplications = 9\nroute_lengths = 3\n")
        raw = tmp_path / "raw.csv"

        result = runner.invoke(main, [
            "run", "--config", str(config_file), "--set", "replications=2",
            "--set", "strategies=max_epr", "--out", str(tmp_path / "t.csv"), "--raw-out", str(raw),
        ])

        assert result.exit_code == 0, result.output
        assert len(raw.read_text().splitlines()) == 1 + 2

    def test_invalid_gamma_fails_with_line(self, runner, tmp_path):
        config_file = tmp_path / "bad.conf"
        config_file.write_text("rows = 3\ngamma = 1.5\n")

        result = runner.invoke(main, ["run", "--config", str(config_file)])

        assert result.exit_code != 0
        assert "line 2: gamma" in result.output

    def test_unknown_set_key(self, runner):
        result = runner.invoke(main, ["run", "--set", "speed=3"])
        assert result.exit_code != 0
        assert "speed" in result.output

    def test_malformed_set(self, runner):
        result = runner.invoke(main, ["run", "--set", "replications"])
        assert result.exit_code != 0
        assert "KEY=VALUE" in result.output


@pytest.mark.integration
class TestSingleCommand:

    def test_trace_for_perfect_network(self, runner):
        result = runner.invoke(main, [
            "single", "--length", "3",
            "--set", "gamma=1", "--set", "p_loss=0", "--set", "p_regen=0", "--set", "fidelity_low=1",
        ])

        assert result.exit_code == 0, result.output
        lines = result.stdout.splitlines()
        assert lines[0] == "sending qubit 0 -> 3, length 3, strategy max_fidelity"
        assert lines[1] == "route selected at 0: 0 -> 1 -> 2 -> 3"
        assert "delivered: fidelity 1.000000" in lines
        assert lines[-1] == "hops 3, EPRs created 0, recalculations 0"

    def test_explicit_endpoints(self, runner):
        result = runner.invoke(main, ["single", "--strategy", "max_qubits", "--length", "5", "--src", "0", "--dst", "11"])
        assert result.exit_code == 0, result.output
        assert "sending qubit 0 -> 11" in result.stdout

    def test_source_only_picks_destination_from_source(self, runner):
        result = runner.invoke(main, ["single", "--src", "7", "--length", "6"])
        assert result.exit_code == 0, result.output
        assert result.stdout.splitlines()[0] == "sending qubit 7 -> 0, length 6, strategy max_fidelity"

    def test_destination_only_picks_source_from_destination(self, runner):
        result = runner.invoke(main, ["single", "--dst", "11", "--length", "3"])
        assert result.exit_code == 0, result.output
        assert result.stdout.splitlines()[0] == "sending qubit 2 -> 11, length 3, strategy max_fidelity"

    def test_same_endpoints_rejected(self, runner):
        result = runner.invoke(main, ["single", "--src", "4", "--dst", "4"])
        assert result.exit_code != 0
        assert "both node 4" in result.output
