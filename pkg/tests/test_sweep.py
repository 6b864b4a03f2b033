import logging

import pytest

from src.db.database import SweepStore
from src.dynamics.hybrid import SimConfig
from src.errors import ConfigError
from src.lab.sampling import SampleSpec
from src.lab.sweep import (
    FIELDNAMES, SweepProgress, SweepRow, evaluate_cell, parameter_grid, parse_range, run_sweep,
)
from src.models.params import CANONICAL


@pytest.mark.parametrize("text, expected", [
    ("0:0.1:0.05", [0.0, 0.05, 0.1]),
    ("-0.1:0.1:0.1", [-0.1, 0.0, 0.1]),
    ("0:0.3:0.1", [0.0, 0.1, 0.2, 0.3]),
    ("0.25", [0.25]),
    ("1:0:0.1", []),
])
def test_parse_range(text, expected):
    assert parse_range(text) == expected


@pytest.mark.parametrize("text", ["a:b:c", "0:1", "0:1:0", "0:1:-0.1", "0:inf:0.1"])
def test_parse_range_rejects(text):
    with pytest.raises(ConfigError):
        parse_range(text)


def test_parameter_grid():
    cells = parameter_grid({"lambda": [0.0, 0.1], "d": [-2.0, -3.0]})
    assert len(cells) == 4
    assert all(cell["a"] == -1.0 and cell["c"] == 1.0 for cell in cells)
    assert {(cell["d"], cell["lambda"]) for cell in cells} == {(-2.0, 0.0), (-2.0, 0.1), (-3.0, 0.0), (-3.0, 0.1)}


def test_empty_axis_gives_empty_grid():
    assert parameter_grid({"lambda": []}) == []


def test_degenerate_cell_records_error():
    row = evaluate_cell(dict(CANONICAL.as_dict(), b=0.0))
    assert row.error.startswith("DegenerateParameters: ")
    assert row.verdict == ""
    assert row.key == "a=-1|b=0|c=1|d=-2|lambda=0"


def test_hypothesis_failure_keeps_eigen_data():
    row = evaluate_cell(dict(CANONICAL.as_dict(), d=-0.5))
    assert row.error.startswith("RegimeViolation: ")
    assert row.sliding_status == "ok"
    assert row.sliding_eig1 <= row.sliding_eig2
    assert row.return_status == "LambdaZero"
    assert row.xi_plus is None


def test_csv_row_keeps_full_precision():
    row = SweepRow("k", dict(CANONICAL.as_dict(), **{"lambda": 0.1}), verdict="Inconclusive",
                   sliding_eig1=-2.0916079783099616, samples=3, converged_fraction=1 / 3)
    csv_row = row.as_csv_row()
    assert set(csv_row) == set(FIELDNAMES)
    assert csv_row["sliding_eig1"] == "-2.0916079783099616"
    assert csv_row["xi_plus"] == ""
    assert SweepRow.from_csv_row(csv_row) == row


def test_run_sweep_sorts_and_streams():
    cells = [dict(CANONICAL.as_dict(), d=d) for d in (-0.3, -0.5)] + [dict(CANONICAL.as_dict(), b=0.0)]
    seen = []
    rows = run_sweep(cells, on_row=lambda row: seen.append(row.key))
    assert len(seen) == 3
    assert [row.values["b"] for row in rows] == [-1.0, -1.0, 0.0]
    assert [row.values["d"] for row in rows[:2]] == [-0.5, -0.3]


def test_run_sweep_empty():
    assert run_sweep([]) == []


def test_progress_follows_store(tmp_path, caplog):
    store = SweepStore(str(tmp_path / "sweep.db"))
    progress = SweepProgress(2)
    store.row_saved.connect(progress.row_saved)
    rows = [SweepRow(f"k{i}", dict(CANONICAL.as_dict()), verdict="Inconclusive") for i in range(2)]
    with caplog.at_level(logging.INFO, logger="src.lab.sweep"):
        for row in rows:
            store.save_row(row)
    assert progress.stored == 2
    assert "stored cell k1 (2/2)" in caplog.text


@pytest.mark.slow
def test_negative_lambda_cell():
    row = evaluate_cell(dict(CANONICAL.as_dict(), **{"lambda": -0.05}),
                        SampleSpec(count=2), SimConfig(t_max=20.0, max_events=200))
    assert row.verdict == "NotLyapunovStable"
    assert row.error == ""
    assert row.samples >= 2
