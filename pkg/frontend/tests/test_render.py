import numpy as np
import pytest

from caventplot.cli import main
from caventplot.render import PlotError, PlotJob, render

from test_csvio import grid_rows, write_csv


def make_grid_csv(tmp_path, name="g.csv", xs=(0.1, 0.2, 0.3, 0.4),
                  ys=(0.1, 0.2, 0.3, 0.4), born_fn=lambda x, y: 0.5,
                  meta=None):
    base_meta = {"preset": "test", "entropy_base": "e",
                 "axis1_key": "p1_eV", "axis2_key": "p2_eV"}
    base_meta.update(meta or {})
    rows = grid_rows(xs, ys, lambda x, y: abs(x - y), born_fn)
    return write_csv(tmp_path / name, base_meta, rows)


def test_heatmap_renders_and_round_trips(tmp_path):
    csv = make_grid_csv(tmp_path)
    out = tmp_path / "g.png"
    res = render(PlotJob(str(csv), "heatmap", str(out)))
    assert out.exists() and out.stat().st_size > 0
    xs = np.array([0.1, 0.2, 0.3, 0.4])
    expected_s = np.abs(xs[:, None] - xs[None, :])
    assert np.array_equal(res.arrays["S"], expected_s)  # exact, never mutated
    assert np.array_equal(res.arrays["x"][:, 0], xs)


def test_heatmap_contour_present_when_born_crosses_one(tmp_path):
    # born = 5x spans [0.5, 2] over the grid, crossing 1 between x=0.2 and 0.3
    csv = make_grid_csv(tmp_path, name="c.csv", born_fn=lambda x, y: 5.0 * x)
    res = render(PlotJob(str(csv), "heatmap", str(tmp_path / "c.png"), contour=True))
    assert res.contour_segments > 0


def test_heatmap_contour_absent_when_no_crossing(tmp_path):
    csv = make_grid_csv(tmp_path, born_fn=lambda x, y: 0.2)
    res = render(PlotJob(str(csv), "heatmap", str(tmp_path / "n.png"), contour=True))
    assert res.contour_segments == 0


def test_heatmap_with_nan_rows(tmp_path):
    meta = {"axis1_key": "p1_eV", "axis2_key": "p2_eV"}
    rows = grid_rows([0.1, 0.2], [0.1, 0.2], lambda x, y: x + y)
    rows[0] = (0.1, 0.1, float("nan"), float("nan"), 100.0, -1)
    csv = write_csv(tmp_path / "nan.csv", meta, rows)
    res = render(PlotJob(str(csv), "heatmap", str(tmp_path / "nan.png")))
    assert np.isnan(res.arrays["S"][0, 0])


def test_heatmap_rejects_one_axis(tmp_path):
    rows = [(v, float("nan"), v, 0.1, 50.0, 0) for v in (0.1, 0.2)]
    csv = write_csv(tmp_path / "one.csv", {"axis2_key": ""}, rows)
    with pytest.raises(PlotError, match="two-axis"):
        render(PlotJob(str(csv), "heatmap", str(tmp_path / "x.png")))


def test_cut_renders_and_round_trips(tmp_path):
    rows = [(v, float("nan"), v * v, 0.1, 50.0, 0) for v in (0.1, 0.2, 0.3)]
    csv = write_csv(tmp_path / "cut.csv", {"axis1_key": "p2_eV", "axis2_key": ""}, rows)
    res = render(PlotJob(str(csv), "cut", str(tmp_path / "cut.png")))
    assert (tmp_path / "cut.png").exists()
    assert np.array_equal(res.arrays["S"], [v * v for v in (0.1, 0.2, 0.3)])


def test_cut_single_row_degenerates_to_marker(tmp_path):
    rows = [(0.13, float("nan"), 0.65, 4.1, 238.0, 0)]
    csv = write_csv(tmp_path / "pt.csv", {"axis1_key": "p1_eV", "axis2_key": ""}, rows)
    res = render(PlotJob(str(csv), "cut", str(tmp_path / "pt.png")))
    assert (tmp_path / "pt.png").exists()
    assert res.arrays["S"].shape == (1,)


def test_taucurve_renders(tmp_path):
    taus = np.geomspace(0.02, 2000.0, 12)
    rows = [(1.0 / t, float("nan"), 1e-3 * t / (1 + t), 0.1, t, 0) for t in taus]
    csv = write_csv(tmp_path / "tau.csv",
                    {"axis1_key": "sigma1_im_eV", "axis2_key": "",
                     "t_light_inv_eV": "0.2"}, rows)
    res = render(PlotJob(str(csv), "taucurve", str(tmp_path / "tau.png")))
    assert (tmp_path / "tau.png").exists()
    assert np.array_equal(np.sort(res.arrays["tau"]), np.sort(taus))


def test_unknown_kind_rejected(tmp_path):
    with pytest.raises(PlotError, match="unknown kind"):
        render(PlotJob("nope.csv", "scatter", "x.png"))


def test_cli_round_trip(tmp_path):
    csv = make_grid_csv(tmp_path)
    out = tmp_path / "cli.png"
    rc = main(["--csv", str(csv), "--kind", "heatmap", "--out", str(out), "--contour"])
    assert rc == 0
    assert out.exists()


def test_cli_missing_file_fails_cleanly(tmp_path, capsys):
    rc = main(["--csv", str(tmp_path / "absent.csv"), "--kind", "cut",
               "--out", str(tmp_path / "x.png")])
    assert rc == 1
    assert "error:" in capsys.readouterr().err
