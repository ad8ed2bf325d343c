import numpy as np
import pytest

from banachlab.plotting import emit_plot, write_support_csv
from banachlab.schemas import NumericalRangeEstimate

matplotlib = pytest.importorskip("matplotlib")


@pytest.fixture
def disk():
    directions = 2.0 * np.pi * np.arange(16) / 16
    return NumericalRangeEstimate(directions=directions, outer=np.ones(16))


def test_outer_polygon_is_drawn_in_the_plane(disk, tmp_path, monkeypatch):
    from matplotlib.axes import Axes

    calls = []
    original = Axes.plot

    def recording(self, *args, **kwargs):
        calls.append((args, kwargs))
        return original(self, *args, **kwargs)

    monkeypatch.setattr(Axes, "plot", recording)
    path = emit_plot(disk, tmp_path / "disk.svg")
    assert path.exists()

    (xs, ys), _ = next((args[:2], kwargs) for args, kwargs in calls if kwargs.get("label") == "W(x) outer")
    assert len(xs) == disk.vertices().shape[0] + 1
    assert xs[0] == xs[-1] and ys[0] == ys[-1]
    assert np.ptp(ys) > 1.9
    assert np.ptp(xs) > 1.9


def test_overlays_get_their_own_trace(disk, tmp_path, monkeypatch):
    from matplotlib.axes import Axes

    labels = []
    original = Axes.plot

    def recording(self, *args, **kwargs):
        labels.append(kwargs.get("label"))
        return original(self, *args, **kwargs)

    monkeypatch.setattr(Axes, "plot", recording)
    emit_plot(disk, tmp_path / "both.svg", overlays=[("half", NumericalRangeEstimate(disk.directions, 0.5 * disk.outer))])
    assert "W(x) outer" in labels and "half outer" in labels


def test_support_csv_columns(disk, tmp_path):
    path = write_support_csv(disk, tmp_path / "disk.csv")
    data = np.loadtxt(path, delimiter=",", skiprows=1)
    assert data.shape == (16, 2)
    assert np.allclose(data[:, 1], 1.0)
