import pytest

from src.db.database import SweepStore
from src.lab.sweep import SweepRow
from src.models.params import CANONICAL, param_key


def _row(lam, verdict="Inconclusive"):
    values = dict(CANONICAL.as_dict(), **{"lambda": lam})
    return SweepRow(param_key(values), values, verdict=verdict, sliding_eig1=-2.0916079783099616,
                    samples=4, converged_fraction=0.75)


@pytest.fixture
def store(tmp_path):
    return SweepStore(str(tmp_path / "sweep.db"))


def test_save_and_read_back(store):
    row = _row(0.1)
    assert store.save_row(row)
    assert store.completed_keys() == {row.key}
    (stored,) = store.get_rows()
    assert stored == row


def test_rows_sorted_by_parameters(store):
    for lam in (0.1, -0.1, 0.0):
        store.save_row(_row(lam))
    assert [row.values["lambda"] for row in store.get_rows()] == [-0.1, 0.0, 0.1]


def test_replace_by_key(store):
    store.save_row(_row(0.1))
    store.save_row(_row(0.1, verdict="AsymptoticallyStable"))
    (stored,) = store.get_rows()
    assert stored.verdict == "AsymptoticallyStable"


def test_row_saved_signal(store):
    received = []
    store.row_saved.connect(received.append)
    row = _row(0.05)
    store.save_row(row)
    assert received == [row.key]


def test_clear(store):
    store.save_row(_row(0.1))
    store.clear()
    assert store.get_rows() == []
    assert store.completed_keys() == set()


def test_reopen_keeps_rows(tmp_path):
    path = str(tmp_path / "sweep.db")
    SweepStore(path).save_row(_row(0.2))
    assert len(SweepStore(path).get_rows()) == 1
