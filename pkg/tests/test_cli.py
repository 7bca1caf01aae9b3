"""
Test module for the command-line entry point.
"""

import json

import pytest

from qlink.cli import EXIT_OK, EXIT_PARSE, EXIT_UNKNOWN, EXIT_VALIDATION, main


def test_run_preset_to_stdout(capsys):
    assert main(["maqkd", "--preset", "fig5", "--set", "sweep.points=4"]) == EXIT_OK

    lines = capsys.readouterr().out.splitlines()
    assert lines[0].startswith("# metadata: ")
    assert lines[1] == "L_km,R_e91,R_uplink,R_down_m1_N1,R_down_m1_N1000,R_down_m100_N1000"
    assert len(lines) == 3 + 4


def test_run_to_json_file(tmp_path):
    out = tmp_path / "fig6b.json"

    code = main(
        [
            "link-budget",
            "--preset",
            "fig6b",
            "--set",
            "sweep.points=5",
            "--format",
            "json",
            "--out",
            str(out),
        ]
    )

    assert code == EXIT_OK
    table = json.loads(out.read_text(encoding="utf-8"))
    assert table["columns"][0] == "path_length_km"
    assert len(table["rows"]) == 5


def test_scenario_file(tmp_path):
    path = tmp_path / "repeater.cfg"
    path.write_text(
        "# short sweep\nsweep.start = 5000\nsweep.stop = 20000\nsweep.points = 2\n",
        encoding="utf-8",
    )
    out = tmp_path / "times.csv"

    assert main(["repeater", "--scenario", str(path), "--out", str(out)]) == EXIT_OK
    assert out.read_text(encoding="utf-8").splitlines()[3].startswith("5000.0,")


def test_rate_map_beyond_the_horizon(capsys):
    code = main(
        [
            "maqkd",
            "--preset",
            "fig4a",
            "--set",
            "geometry.ground_distance_km=5000",
            "--set",
            "sweep.points=2",
            "--set",
            "grid.efficiency_points=2",
        ]
    )

    assert code == EXIT_OK
    rows = capsys.readouterr().out.splitlines()[3:]
    assert [row.split(",")[2] for row in rows] == ["nan"] * 4


def test_validate(capsys):
    assert main(["validate", "--preset", "fig4c"]) == EXIT_OK
    assert capsys.readouterr().out.startswith("ok: fig4c (maqkd, ")


@pytest.mark.parametrize(
    "argv, expected",
    [
        (["reproduce", "fig9"], EXIT_UNKNOWN),
        (["maqkd", "--preset", "fig9"], EXIT_UNKNOWN),
        (["validate", "--scenario", "/nonexistent/study.cfg"], EXIT_PARSE),
        (["validate", "--preset", "fig5", "--set", "sweep.points"], EXIT_PARSE),
        (["validate", "--preset", "fig5", "--set", "memory.efficiency=2"], EXIT_VALIDATION),
        (["repeater", "--preset", "fig5"], EXIT_VALIDATION),
        (["maqkd", "--preset", "fig5", "--jobs", "0"], EXIT_VALIDATION),
    ],
)
def test_exit_codes(argv, expected, capsys):
    assert main(argv) == expected
    assert capsys.readouterr().err.startswith("error: ")


def test_malformed_scenario_file(tmp_path):
    path = tmp_path / "broken.cfg"
    path.write_text("sweep.points 4\n", encoding="utf-8")

    assert main(["validate", "--scenario", str(path)]) == EXIT_PARSE


def test_unknown_command():
    with pytest.raises(SystemExit):
        main(["plot"])
