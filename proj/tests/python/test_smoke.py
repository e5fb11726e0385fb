"""End-to-end smoke checks of the Python bindings."""

import math

import pytest

adm = pytest.importorskip("adm")


def test_grid_and_fields():
    g = adm.make_grid(2.0 * math.pi, 32)
    assert g.M == 32
    assert g.lambda1 == pytest.approx(1.0)
    assert g.dealias_cutoff == 10

    f = adm.cosine_mode(g, 1, 0, 1.0)
    assert f.coeff(1, 0) == pytest.approx(0.5)
    assert f.norm() == pytest.approx(math.sqrt(0.5), rel=1e-12)

    samples = f.to_real()
    assert samples.shape == (32, 32)
    assert samples[0, 0] == pytest.approx(1.0, rel=1e-12)


def test_deconvolution_symbol():
    assert adm.deconvolution_value(1.0, 1, 1.0) == pytest.approx(1.5, rel=1e-15)
    assert adm.deconvolution_value(1.0, 0, 7.0) == 1.0


def test_absorbing_radii_cosine_forcing():
    g = adm.make_grid(2.0 * math.pi, 32)
    p = adm.ModelParams(g)
    p.forcing_f = adm.cosine_mode(g, 1, 0, 2.0)  # filtered forcing cos(x1)
    radii = adm.absorbing_radii(p)
    assert radii["r1sq"] == pytest.approx(2.0, rel=1e-12)
    assert radii["r2sq"] == pytest.approx(2.0, rel=1e-12)
    assert radii["beta"] == pytest.approx(10.0, rel=1e-12)
    assert radii["s1sq"] == pytest.approx(20.0, rel=1e-12)


def test_short_free_decay():
    g = adm.make_grid(2.0 * math.pi, 16)
    p = adm.ModelParams(g)
    v0 = adm.State(g)
    v0.v = adm.taylor_green(g, 1, 0.5)
    v0.theta = adm.random_scalar(g, 3, -2.0, 8.0, 0.5)
    out = adm.simulate(v0, p, t_end=0.1, dt=1e-3, stride=10)
    assert out["steps"] == 100
    ys = out["y"]
    assert len(ys) == len(out["t"])
    assert all(b <= a * (1 + 1e-12) for a, b in zip(ys, ys[1:]))


def test_verify_ops_all_pass():
    g = adm.make_grid(2.0 * math.pi, 16)
    checks = adm.verify_deconvolution(g, 1.0, 4, 1001)
    assert checks and all(c["pass"] for c in checks)


def test_config_errors_are_typed():
    with pytest.raises(adm.ConfigError):
        adm.make_grid(2.0 * math.pi, 7)
