import csv
import io
import json

import pytest

from sc2combat.cli import TABLE1_COLUMNS, run_command
from sc2combat.units import DEFAULT_CATALOG_ENV

SCENARIO = """
army1:
  zealot: 8
  stalker: 2
army2:
  marine: 12
  marauder: 4
model: apx4
trials: 50
seed: 42
"""

TINY_CATALOG = """
- name: zealot
  race: protoss
  health: 100
  shields: 50
  armor: 1
  dps: 13.33
  aoe_area: 1.0
  ranged: false
  attributes: [light, biological]
  bonus_dps: 0.0
  bonus_aoe_area: 1.0
  bonus_vs: []
"""


def run_cli(capsys, *argv):
    code = run_command(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestListCommands:
    def test_list_units(self, capsys):
        code, out, _ = run_cli(capsys, "list-units")
        assert code == 0
        assert "zealot" in out and "ultralisk" in out

    def test_list_matchups_has_twelve_rows(self, capsys):
        code, out, _ = run_cli(capsys, "list-matchups", "--format", "json")
        assert code == 0
        assert len(json.loads(out)) == 12

    def test_custom_catalog_flag(self, capsys, tmp_path):
        path = tmp_path / "tiny.yaml"
        path.write_text(TINY_CATALOG)
        code, out, _ = run_cli(capsys, "list-units", "--catalog", str(path),
                               "--format", "json")
        assert code == 0
        assert [r["name"] for r in json.loads(out)] == ["zealot"]

    def test_env_var_catalog(self, capsys, tmp_path, monkeypatch):
        path = tmp_path / "tiny.yaml"
        path.write_text(TINY_CATALOG)
        monkeypatch.setenv(DEFAULT_CATALOG_ENV, str(path))
        code, out, _ = run_cli(capsys, "list-units", "--format", "json")
        assert code == 0
        assert len(json.loads(out)) == 1


class TestRun:
    def test_scenario_runs(self, capsys, tmp_path):
        path = tmp_path / "battle.yaml"
        path.write_text(SCENARIO)
        code, out, _ = run_cli(capsys, "run", "--scenario", str(path),
                               "--format", "json")
        assert code == 0
        record = json.loads(out)[0]
        assert record["model"] == "APX4"
        assert record["trials"] == 50 and record["seed"] == 42
        assert 0.0 <= record["win1"] <= 1.0
        assert record["win1"] + record["win2"] + record["draw"] == pytest.approx(1.0, abs=0.01)

    def test_missing_scenario_is_data_error(self, capsys):
        code, _, err = run_cli(capsys, "run", "--scenario", "missing.scn")
        assert code == 1
        assert "error" in err

    def test_unknown_unit_is_data_error(self, capsys, tmp_path):
        path = tmp_path / "battle.yaml"
        path.write_text(SCENARIO.replace("marine", "wraith"))
        code, _, err = run_cli(capsys, "run", "--scenario", str(path))
        assert code == 1
        assert "wraith" in err

    def test_model_flag_overrides_scenario(self, capsys, tmp_path):
        path = tmp_path / "battle.yaml"
        path.write_text(SCENARIO)
        code, out, _ = run_cli(capsys, "run", "--scenario", str(path),
                               "--model", "apx1", "--format", "json")
        assert code == 0
        assert json.loads(out)[0]["model"] == "APX1"


class TestUsageErrors:
    def test_missing_subcommand(self, capsys):
        assert run_cli(capsys, )[0] == 2

    def test_unknown_flag(self, capsys):
        assert run_cli(capsys, "run", "--bogus")[0] == 2

    def test_bad_model_value(self, capsys):
        assert run_cli(capsys, "reproduce", "--model", "apx9")[0] == 2

    def test_run_requires_scenario(self, capsys):
        assert run_cli(capsys, "run")[0] == 2


class TestReproduce:
    def test_single_row_structure(self, capsys):
        code, out, _ = run_cli(capsys, "reproduce", "--model", "apx1",
                               "--round", "1", "--match", "pvt",
                               "--trials", "200", "--seed", "7",
                               "--format", "csv")
        assert code == 0
        parsed = list(csv.reader(io.StringIO(out)))
        assert parsed[0] == list(TABLE1_COLUMNS)
        assert len(parsed) == 2
        row = dict(zip(parsed[0], parsed[1]))
        assert row["round"] == "1" and row["type"] == "APX1" and row["match"] == "PvT"
        win1 = float(row["1-%"])
        assert 0.9 <= win1 <= 1.0

    def test_csv_round_trips_at_emitted_precision(self, capsys):
        code, out, _ = run_cli(capsys, "reproduce", "--round", "1",
                               "--match", "pvt", "--trials", "100",
                               "--format", "csv")
        assert code == 0
        parsed = list(csv.reader(io.StringIO(out)))
        rebuilt = io.StringIO()
        writer = csv.writer(rebuilt, lineterminator="\n")
        writer.writerows(parsed)
        assert rebuilt.getvalue() == out

    def test_all_models_one_match(self, capsys):
        code, out, _ = run_cli(capsys, "reproduce", "--round", "1",
                               "--match", "tvz", "--trials", "50",
                               "--format", "json")
        assert code == 0
        records = json.loads(out)
        assert [r["type"] for r in records] == ["APX1", "APX2", "APX3", "APX4"]

    def test_output_file(self, capsys, tmp_path):
        target = tmp_path / "report.csv"
        code, out, _ = run_cli(capsys, "reproduce", "--round", "1",
                               "--match", "pvt", "--model", "apx1",
                               "--trials", "50", "--format", "csv",
                               "--output", str(target))
        assert code == 0
        assert out == ""
        assert target.read_text().startswith("round,")


class TestCompare:
    def test_deltas_consistent_at_emitted_precision(self, capsys):
        code, out, _ = run_cli(capsys, "compare", "--round", "1",
                               "--match", "pvt", "--model", "apx1",
                               "--trials", "100", "--format", "csv")
        assert code == 0
        row = dict(zip(*list(csv.reader(io.StringIO(out)))[:2]))
        sim = float(row["win1_sim"])
        test = float(row["win1_test"])
        assert row["win1_test"] == "0.92"
        assert abs(float(row["delta_vs_test"]) - abs(sim - test)) <= 0.01


class TestMae:
    def test_from_reference_ordering(self, capsys):
        code, out, _ = run_cli(capsys, "mae", "--format", "json")
        assert code == 0
        by_model = {r["model"]: r["mae"] for r in json.loads(out)}
        assert by_model["APX3"] < by_model["APX4"]

    def test_chart(self, capsys):
        code, out, _ = run_cli(capsys, "mae", "--chart")
        assert code == 0
        assert "#" in out

    def test_simulate_small(self, capsys):
        code, out, _ = run_cli(capsys, "mae", "--simulate", "--trials", "10",
                               "--format", "json")
        assert code == 0
        records = json.loads(out)
        assert len(records) == 4
        assert all(0.0 <= r["mae"] <= 1.0 for r in records)
