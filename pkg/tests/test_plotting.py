from __future__ import annotations

from oberwolfach.bounds import bound_tables
from oberwolfach.plotting import plot_bound_tables, plot_decomposition, plot_factor
from oberwolfach.pyramidal import double


def test_figures_are_written(tmp_path, seed_labeling):
    p = double(seed_labeling, 2)
    for path in (
        plot_factor(p.starter, tmp_path / "starter.png", "starter"),
        plot_decomposition(p.orbit, tmp_path / "orbit.svg"),
        plot_bound_tables(bound_tables(), tmp_path / "tables.pdf"),
    ):
        assert path.exists() and path.stat().st_size > 1000
