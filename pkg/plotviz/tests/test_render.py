import numpy as np
import pytest

from plotviz import SurfaceData, load_scan, render
from plotviz.cli import main

PNG_MAGIC = b"\x89PNG\r\n\x1a\n"


def surface(values_c0=None, values_delta=None, n=3):
    shape = (n, n)
    c0 = np.zeros(shape) if values_c0 is None else np.asarray(values_c0, dtype=float)
    delta = np.zeros(shape) if values_delta is None else np.asarray(values_delta, dtype=float)
    return SurfaceData(
        alphas=np.linspace(0.1, 1.0, c0.shape[0]),
        Js=np.linspace(0.5, 2.0, c0.shape[1]),
        C0=c0,
        Cfb=c0 + delta,
        delta=delta,
    )


def test_constant_zero_grid_renders_with_unit_scale(tmp_path):
    info = render(surface(), "C0", tmp_path / "C0.png")
    assert info.path.exists()
    assert info.path.read_bytes().startswith(PNG_MAGIC)
    assert (info.vmin, info.vmax) == (0.0, 1.0)


def test_nonnegative_delta_uses_symmetric_scale(tmp_path):
    delta = np.array([[0.0, 0.01], [0.02, 0.005]])
    data = surface(values_c0=np.zeros((2, 2)), values_delta=delta)
    info = render(data, "delta", tmp_path / "delta.png")
    # symmetric limits + nonnegative data means no negative-side colors appear
    assert info.vmin == -info.vmax
    assert np.nanmin(data.delta) >= 0.0
    assert info.vmax == pytest.approx(0.02)


def test_gap_cells_do_not_break_rendering(tmp_path):
    c0 = np.array([[0.1, np.nan], [0.3, 0.4]])
    info = render(surface(values_c0=c0, values_delta=np.zeros((2, 2))), "C0", tmp_path / "C0.png")
    assert info is not None and info.path.exists()


def test_empty_grid_is_noop_with_warning(tmp_path):
    c0 = np.full((2, 2), np.nan)
    data = surface(values_c0=c0, values_delta=c0)
    with pytest.warns(UserWarning, match="no finite values"):
        info = render(data, "C0", tmp_path / "C0.png")
    assert info is None
    assert not (tmp_path / "C0.png").exists()


def test_surface_mode(tmp_path):
    info = render(surface(), "Cfb", tmp_path / "Cfb.png", surface=True)
    assert info.path.exists()


def test_cli_renders_three_files(tmp_path):
    csv_path = tmp_path / "scan.csv"
    csv_path.write_text(
        "alpha,J,C0,Cfb,lambda_opt,delta\n"
        "0.5,1,0.1,0.2,0.3,0.1\n"
        "0.5,2,0.4,0.5,0.6,0.1\n"
        "1,1,0.7,0.8,0.9,0.1\n"
        "1,2,0.05,0.15,0.25,0.1\n"
    )
    out_dir = tmp_path / "plots"
    assert main([str(csv_path), "--which", "all", "--out", str(out_dir)]) == 0
    produced = sorted(p.name for p in out_dir.glob("*.png"))
    assert produced == ["C0.png", "Cfb.png", "delta.png"]


def test_cli_rejects_bad_csv(tmp_path, capsys):
    bad = tmp_path / "bad.csv"
    bad.write_text("x,y\n1,2\n")
    assert main([str(bad), "--out", str(tmp_path)]) == 2
    assert "error" in capsys.readouterr().err


def test_loader_render_pipeline(tmp_path):
    csv_path = tmp_path / "scan.csv"
    csv_path.write_text(
        "alpha,J,C0,Cfb,lambda_opt,delta\n"
        "0.25,0.5,0.11,0.12,-0.1,0.01\n"
        "0.25,1.5,0.21,0.22,-0.2,0.01\n"
    )
    data = load_scan(csv_path)
    info = render(data, "Cfb", tmp_path / "Cfb.png")
    assert info.path.exists()
    assert data.Cfb[0, 1] == 0.22
