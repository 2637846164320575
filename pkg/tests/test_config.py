"""Config ingestion: schema enforcement, coupling-source exclusivity, sweep
axis parsing, and overrides."""

import pytest

from optosync.config import (ConfigError, load_config, load_overrides_only)


def write(tmp_path, text, name="test.cfg"):
    path = tmp_path / name
    path.write_text(text)
    return str(path)


MINIMAL = """
[drive]
amplitude = 100
"""


def test_defaults_from_minimal_config(tmp_path):
    loaded = load_config(write(tmp_path, MINIMAL))
    assert loaded.params.drive == 100.0
    assert loaded.params.omega_m2 == 1.005      # untouched default
    assert loaded.sweep is None


def test_preset_configs_load(config_dir):
    for name in ("paper_fig2.cfg", "paper_fig3.cfg", "paper_fig4.cfg"):
        loaded = load_config(str(config_dir / name))
        p = loaded.params
        assert p.omega_m1 == 1.0 and p.detuning == -1.0
        assert p.couplings.g1_1 == 5e-5
        assert p.couplings.g2_1 == 5e-7
        assert p.couplings.g3 == 1e-6
        assert p.drive == 250.0 and p.eta_d == 4.0 and p.omega_d == 1.0
        assert p.n_thermal == 0.5 and p.kappa == 0.1
        assert loaded.run.horizon == 500.0
        assert loaded.sweep is not None


def test_fig3_sweep_grid(config_dir):
    loaded = load_config(str(config_dir / "paper_fig3.cfg"))
    sweep = loaded.sweep
    assert sweep.axis1.name == "eta_d" and sweep.axis1.count == 11
    assert sweep.axis2.name == "omega_d" and sweep.axis2.count == 11
    assert sweep.engine == "time"
    assert len(sweep.grid()) == 121


def test_unknown_section_rejected(tmp_path):
    with pytest.raises(ConfigError, match="unknown section"):
        load_config(write(tmp_path, "[nonsense]\nx = 1\n"))


def test_unknown_key_rejected(tmp_path):
    with pytest.raises(ConfigError, match="unknown key"):
        load_config(write(tmp_path, "[drive]\npower = 3\n"))


def test_non_numeric_value_rejected(tmp_path):
    with pytest.raises(ConfigError, match="not a number"):
        load_config(write(tmp_path, "[drive]\namplitude = loud\n"))


def test_invalid_parameter_value_rejected(tmp_path):
    with pytest.raises(ConfigError, match="kappa"):
        load_config(write(tmp_path, "[drive]\nkappa = -1\n"))


def test_couplings_and_geometry_exclusive(tmp_path):
    text = """
[couplings]
g1 = 1e-5
[geometry]
length = 1
reflectivity = 0.3
wavelength = 1
membrane_equilibrium = 0.1
normalization = 1e6
"""
    with pytest.raises(ConfigError, match="not both"):
        load_config(write(tmp_path, text))


def test_geometry_derived_couplings(tmp_path):
    text = """
[geometry]
length = 1
reflectivity = 0.3
wavelength = 1
membrane_equilibrium = 0.1
light_speed = 1.0
normalization = 1e4
"""
    loaded = load_config(write(tmp_path, text))
    assert loaded.params.couplings.g1_2 != 0.0


def test_geometry_missing_key(tmp_path):
    with pytest.raises(ConfigError, match="missing keys"):
        load_config(write(tmp_path, "[geometry]\nlength = 1\n"))


def test_mixed_coupling_styles_rejected(tmp_path):
    with pytest.raises(ConfigError, match="mix"):
        load_config(write(tmp_path, "[couplings]\ng1 = 1e-5\ng1_2 = 2e-5\n"))


def test_per_oscillator_couplings(tmp_path):
    loaded = load_config(write(
        tmp_path, "[couplings]\ng1_1 = 1e-5\ng1_2 = 2e-5\ng3 = 1e-6\n"))
    assert loaded.params.couplings.g1_1 == 1e-5
    assert loaded.params.couplings.g1_2 == 2e-5
    assert loaded.params.couplings.g2_1 == 0.0


def test_bad_axis_spec(tmp_path):
    with pytest.raises(ConfigError, match="axis1"):
        load_config(write(tmp_path, "[sweep]\naxis1 = kappa 0.1\n"))
    with pytest.raises(ConfigError, match="axis1"):
        load_config(write(tmp_path, "[sweep]\n"))
    with pytest.raises(ConfigError):
        load_config(write(tmp_path, "[sweep]\naxis1 = bogus 0 1 5\n"))


def test_overrides(tmp_path):
    path = write(tmp_path, MINIMAL)
    loaded = load_config(path, ["drive.kappa=0.2", "n_thermal=1.5"])
    assert loaded.params.kappa == 0.2
    assert loaded.params.n_thermal == 1.5
    with pytest.raises(ConfigError, match="unknown"):
        load_config(path, ["drive.power=3"])
    with pytest.raises(ConfigError, match="key=value"):
        load_config(path, ["kappa"])


def test_overrides_only():
    loaded = load_overrides_only(["drive.amplitude=42"])
    assert loaded.params.drive == 42.0


def test_missing_file():
    with pytest.raises(ConfigError, match="cannot read"):
        load_config("/nonexistent/path.cfg")
