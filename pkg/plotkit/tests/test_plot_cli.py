"""Command-line behavior: exit codes and batch rendering."""

import json

from plotkit.cli import main


def write_recipe(tmp_path, payload, name="r.json"):
    path = tmp_path / name
    path.write_text(json.dumps(payload))
    return str(path)


def test_render_via_cli(sweep_2d_csv, tmp_path, capsys):
    out = tmp_path / "fig.png"
    recipe = write_recipe(tmp_path, {
        "kind": "heatmap", "input": sweep_2d_csv, "output": str(out),
        "axes": {"x": "omega_d", "y": "eta_d", "z": "ED"}})
    assert main([recipe]) == 0
    assert out.exists()
    assert "wrote" in capsys.readouterr().out


def test_multiple_recipes(simulate_csv, tmp_path):
    r1 = write_recipe(tmp_path, {
        "kind": "timeseries", "input": simulate_csv,
        "output": str(tmp_path / "a.png"),
        "axes": {"x": "t", "y": "Sq"}}, "a.json")
    r2 = write_recipe(tmp_path, {
        "kind": "phase_portrait", "input": simulate_csv,
        "output": str(tmp_path / "b.png")}, "b.json")
    assert main([r1, r2]) == 0
    assert (tmp_path / "a.png").exists() and (tmp_path / "b.png").exists()


def test_bad_recipe_exits_1(tmp_path, capsys):
    recipe = write_recipe(tmp_path, {"kind": "pie", "input": "x.csv",
                                     "output": "x.png"})
    assert main([recipe]) == 1
    assert "error" in capsys.readouterr().err


def test_missing_column_exits_1(simulate_csv, tmp_path, capsys):
    recipe = write_recipe(tmp_path, {
        "kind": "timeseries", "input": simulate_csv,
        "output": str(tmp_path / "x.png"),
        "axes": {"x": "t", "y": "Nope"}})
    assert main([recipe]) == 1
    assert "Nope" in capsys.readouterr().err


def test_missing_input_csv_exits_1(tmp_path, capsys):
    recipe = write_recipe(tmp_path, {
        "kind": "timeseries", "input": str(tmp_path / "absent.csv"),
        "output": str(tmp_path / "x.png"),
        "axes": {"x": "t", "y": "Sq"}})
    assert main([recipe]) == 1
    assert "error" in capsys.readouterr().err
