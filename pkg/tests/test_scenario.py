"""
Test module for scenario loading, presets and result tables.
"""

import csv
import json
import math

import pytest

from qlink import __version__
from qlink.exceptions import ParseError, UnknownFigureError, ValidationError
from qlink.presets import FIGURES, PRESETS
from qlink.repeater import REPEATER_COLUMNS
from qlink.scenario import (
    ResultTable,
    load_scenario,
    parse_scenario_text,
    parse_series,
    reproduce,
    run,
)

SMALL_FIG5 = ["sweep.points=8"]


@pytest.mark.parametrize("name", list(PRESETS))
def test_every_preset_loads(name):
    scenario = load_scenario(preset=name)

    assert scenario.name == name
    assert scenario.command == PRESETS[name]["command"]


@pytest.mark.parametrize(
    "name", [name for name, preset in PRESETS.items() if preset["command"] == "maqkd"]
)
def test_presets_leave_turbulence_off(name):
    params = load_scenario(preset=name).protocol_params()

    assert params.uplink_penalty_db == 0.0
    assert params.memory_capture_loss_db == 11.5


@pytest.mark.parametrize(
    "command, variable, start, stop, expected",
    [
        ("maqkd", "dephasing_time_ms", 1.0, 100.0, [1.0, 10.0, 100.0]),
        ("maqkd", "distance_km", 100.0, 300.0, [100.0, 200.0, 300.0]),
        ("repeater", "memory_efficiency", 0.5, 0.9, [0.5, 0.7, 0.9]),
        ("repeater", "distance_km", 5000.0, 15000.0, [5000.0, 10000.0, 15000.0]),
    ],
)
def test_default_spacing_follows_the_variable(command, variable, start, stop, expected):
    scenario = load_scenario(
        overrides=[
            f"sweep.variable={variable}",
            f"sweep.start={start}",
            f"sweep.stop={stop}",
            "sweep.points=3",
        ],
        command=command,
    )

    assert scenario.sweep_values() == pytest.approx(expected, rel=1e-12)


def test_tables_are_not_figures():
    assert "fig5" in FIGURES
    assert "table1-uplink" not in FIGURES
    assert "table1-downlink" not in FIGURES


class TestParseScenarioText:
    def test_comments_blank_lines_and_quotes(self):
        text = '# uplink study\n\nbeam.divergence_urad = 5\nmaqkd.series = "e91;uplink"\n'

        assert parse_scenario_text(text) == {
            "beam.divergence_urad": "5",
            "maqkd.series": "e91;uplink",
        }

    @pytest.mark.parametrize(
        "text",
        [
            "beam.divergence_urad 5\n",
            "= 5\n",
            "beam.divergence_urad = 5\nbeam.divergence_urad = 6\n",
        ],
    )
    def test_malformed(self, text):
        with pytest.raises(ParseError):
            parse_scenario_text(text)


class TestLoadScenario:
    """Layering and validation of the scenario sources."""

    def test_layers_apply_in_order(self, tmp_path):
        path = tmp_path / "study.cfg"
        path.write_text("beam.divergence_urad = 7\nsweep.points = 4\n", encoding="utf-8")

        scenario = load_scenario(path, "fig3a", ["sweep.points=3"])

        assert scenario.number("beam.divergence_urad") == 7.0
        assert scenario.integer("sweep.points") == 3
        assert scenario.number("sweep.start") == 2000.0
        assert scenario.number("geometry.altitude_km") == 400.0

    def test_command_from_the_file(self, tmp_path):
        path = tmp_path / "budget.cfg"
        path.write_text(
            "scenario.command = link-budget\nsweep.variable = path_length_km\n"
            "sweep.start = 400\n",
            encoding="utf-8",
        )

        assert load_scenario(path).command == "link-budget"

    def test_command_from_the_caller(self):
        scenario = load_scenario(overrides=["sweep.start=2000"], command="repeater")
        assert scenario.command == "repeater"

    @pytest.mark.parametrize(
        "kwargs, expected",
        [
            ({"preset": "fig7"}, UnknownFigureError),
            ({"path": "/nonexistent/study.cfg"}, ParseError),
            ({"preset": "fig3a", "overrides": ["sweep.points"]}, ParseError),
            ({"preset": "fig3a", "overrides": ["beam.colour=red"]}, ValidationError),
            ({"preset": "fig3a", "overrides": ["sweep.points=many"]}, ValidationError),
            ({"preset": "fig3a", "overrides": ["sweep.points=2.5"]}, ValidationError),
            ({"preset": "fig3a", "overrides": ["pointing.enabled=maybe"]}, ValidationError),
            ({"preset": "fig3a", "overrides": ["sweep.start=nan"]}, ValidationError),
            ({"preset": "fig3a", "command": "maqkd"}, ValidationError),
            ({"overrides": ["scenario.command=plot"]}, ValidationError),
            ({}, ValidationError),
            ({"preset": "fig3a", "overrides": ["sweep.variable=path_length_km"]}, ValidationError),
            ({"preset": "fig4a", "overrides": ["sweep.start=0"]}, ValidationError),
            ({"preset": "fig4a", "overrides": ["sweep.scale=cubic"]}, ValidationError),
            ({"preset": "fig4a", "overrides": ["grid.efficiency_stop=1.5"]}, ValidationError),
            ({"preset": "fig5", "overrides": ["maqkd.series=bb84"]}, ValidationError),
            ({"preset": "fig5", "overrides": ["memory.efficiency=1.2"]}, ValidationError),
            ({"preset": "fig6a", "overrides": ["link.kind=ground-ground"]}, ValidationError),
            ({"preset": "fig6a", "overrides": ["link.divergences_urad=1,0"]}, ValidationError),
            ({"preset": "fig3c", "overrides": ["sweep.stop=1.1"]}, ValidationError),
            ({"preset": "fig3a", "overrides": ["repeater.memory_split=thirds"]}, ValidationError),
        ],
    )
    def test_invalid_sources(self, kwargs, expected):
        with pytest.raises(expected):
            load_scenario(**kwargs)

    def test_hash_follows_the_settings(self):
        first = load_scenario(preset="fig5")
        again = load_scenario(preset="fig5")
        changed = load_scenario(preset="fig5", overrides=["sweep.points=49"])

        assert first.scenario_hash == again.scenario_hash
        assert first.scenario_hash != changed.scenario_hash
        assert first.canonical.startswith("command = maqkd\n")


class TestParseSeries:
    def test_columns(self):
        series = parse_series(PRESETS["fig5"]["settings"]["maqkd.series"])

        assert [entry.column for entry in series] == [
            "R_e91",
            "R_uplink",
            "R_down_m1_N1",
            "R_down_m1_N1000",
            "R_down_m100_N1000",
        ]
        assert dict(series[4].overrides)["tau_ms"] == 100.0

    def test_plain_downlink(self):
        assert parse_series("downlink")[0].column == "R_downlink"

    @pytest.mark.parametrize(
        "text",
        ["", ";", "bb84", "downlink:m", "downlink:k=3", "downlink:m=x"],
    )
    def test_invalid(self, text):
        with pytest.raises(ValidationError):
            parse_series(text)


class TestRun:
    """Shapes and contents of the result tables of each command."""

    def test_key_rate_sweep(self):
        table = run(load_scenario(preset="fig5", overrides=SMALL_FIG5))

        assert table.columns == (
            "L_km",
            "R_e91",
            "R_uplink",
            "R_down_m1_N1",
            "R_down_m1_N1000",
            "R_down_m100_N1000",
        )
        assert table.units == ("km", *("bit/s" for _ in range(5)))
        assert table.column("L_km") == [200.0 + 200.0 * i for i in range(8)]
        assert all(rate > 0 for rate in table.column("R_e91"))
        # no uplink key beyond the cutoff
        assert math.isnan(table.column("R_uplink")[-1])

    def test_runs_are_byte_identical(self):
        scenario = load_scenario(preset="fig5", overrides=SMALL_FIG5)

        first = run(scenario)
        second = run(scenario)
        parallel = run(scenario, jobs=2)

        assert first.to_csv() == second.to_csv() == parallel.to_csv()
        assert first.to_json() == parallel.to_json()

    def test_link_budget(self):
        scenario = load_scenario(
            preset="fig6a", overrides=["sweep.points=3", "sweep.stop=3000"]
        )
        table = run(scenario)

        assert table.columns == (
            "path_length_km",
            "loss_db_1urad",
            "loss_db_5urad",
            "loss_db_10urad",
        )
        first, _, last = table.rows
        assert 0 < first[1] < first[2] < first[3]
        assert all(math.isnan(cell) for cell in last[1:])

    def test_repeater(self):
        table = run(load_scenario(preset="fig3a", overrides=["sweep.points=3"]))

        assert table.columns == ("distance_km", *REPEATER_COLUMNS)
        assert table.units[0] == "km"
        assert len(table.rows) == 3
        assert table.column("distance_km") == [2000.0, 11000.0, 20000.0]

    def test_rate_map(self):
        scenario = load_scenario(
            preset="fig4a", overrides=["sweep.points=2", "grid.efficiency_points=2"]
        )
        table = run(scenario)

        assert table.columns == ("tau_s", "eta_mem", "R_bits_per_s")
        assert table.column("tau_s") == pytest.approx([1e-4, 1e-4, 0.1, 0.1])
        assert table.column("eta_mem") == pytest.approx([0.05, 1.0, 0.05, 1.0])
        # 0.1 ms storage never yields a key
        assert math.isnan(table.rows[0][2])
        assert math.isnan(table.rows[1][2])

    def test_rate_map_beyond_the_horizon(self):
        scenario = load_scenario(
            preset="fig4a",
            overrides=[
                "sweep.points=2",
                "grid.efficiency_points=2",
                "geometry.ground_distance_km=5000",
            ],
        )
        table = run(scenario)

        assert len(table.rows) == 4
        assert all(math.isnan(cell) for cell in table.column("R_bits_per_s"))

    def test_metadata(self):
        scenario = load_scenario(preset="fig5", overrides=SMALL_FIG5)
        table = run(scenario)

        assert table.metadata == {
            "tool_version": __version__,
            "scenario_hash": scenario.scenario_hash,
            "model_ledger_version": "1",
            "scenario": "fig5",
        }

    def test_jobs_must_be_positive(self):
        with pytest.raises(ValidationError):
            run(load_scenario(preset="fig5", overrides=SMALL_FIG5), jobs=0)


class TestResultTable:
    table = ResultTable(
        columns=("L_km", "R_e91"),
        units=("km", "bit/s"),
        rows=((200.0, 1.5), (400.0, float("nan"))),
        metadata={
            "tool_version": "0.1.0",
            "scenario_hash": "abc",
            "model_ledger_version": "1",
            "scenario": "custom",
        },
    )

    def test_csv(self):
        lines = self.table.to_csv().splitlines()

        assert lines[0].startswith("# metadata: {")
        assert lines[1:] == ["L_km,R_e91", "km,bit/s", "200.0,1.5", "400.0,nan"]

    def test_csv_reads_back(self):
        table = ResultTable(
            columns=("tau_s", "eta_mem, combined"),
            units=("s", "1"),
            rows=((1e-3, 0.5),),
            metadata=self.table.metadata,
        )
        body = table.to_csv().splitlines()[1:]

        assert list(csv.reader(body)) == [
            ["tau_s", "eta_mem, combined"],
            ["s", "1"],
            ["0.001", "0.5"],
        ]

    def test_json(self):
        output = json.loads(self.table.to_json())

        assert output["rows"] == [[200.0, 1.5], [400.0, "nan"]]
        assert output["columns"] == ["L_km", "R_e91"]
        assert output["metadata"]["scenario"] == "custom"

    def test_rows_must_match_the_columns(self):
        with pytest.raises(ValidationError):
            ResultTable(("a", "b"), ("1", "1"), ((1.0,),), self.table.metadata)

    def test_units_must_match_the_columns(self):
        with pytest.raises(ValidationError):
            ResultTable(("a", "b"), ("1",), (), self.table.metadata)


@pytest.mark.parametrize("figure_id", ["fig7", "table1-uplink"])
def test_reproduce_unknown_figure(figure_id):
    with pytest.raises(UnknownFigureError):
        reproduce(figure_id)
