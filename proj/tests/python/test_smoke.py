import math

import pytest

import shotnoise as sn


def test_fano_and_decompose():
    assert sn.fano([0.5]) == 0.5
    assert sn.fano([0.93, 0.07]) == pytest.approx(0.1302)
    model = sn.DecompositionModel.two_channel()
    assert model.saturations == [0.93, 1.0]
    channels = sn.decompose(1.0, model)
    assert channels.transmissions == pytest.approx([0.93, 0.07])
    assert sn.total_transmission(channels) == pytest.approx(1.0)
    assert sn.DecompositionModel.atoms(3).capacity == pytest.approx(3.79)


def test_errors_map_to_python_exceptions():
    with pytest.raises(sn.ZeroConductanceError):
        sn.fano([])
    with pytest.raises(ValueError):
        sn.decompose(5.0, sn.DecompositionModel.two_channel())
    with pytest.raises(ValueError):
        sn.ChannelSet([1.5])


def test_noise_values():
    assert sn.constants.G0 == pytest.approx(2 * sn.constants.e ** 2 / sn.constants.h)
    assert sn.schottky(1e-6) == pytest.approx(3.204353268e-25)
    env = sn.NoiseEnvironment(1.6, 2000.0)
    y = sn.normalized_yield_model(0.93, sn.DecompositionModel.two_channel(), env)
    assert y == pytest.approx(0.2703157624, rel=1e-9)
    jn = sn.thermal_noise([1.0], sn.NoiseEnvironment(0.0, 300.0))
    assert jn == pytest.approx(4 * sn.constants.k * 300 * sn.constants.G0)


def test_fano_curve_minimum():
    curve = sn.fano_curve(sn.DecompositionModel.two_channel(), 0.5, 1.6, 1101, sn.Spacing.linear)
    g_min, f_min = min(curve, key=lambda p: p[1])
    assert g_min == pytest.approx(0.93, abs=1e-3)
    assert f_min == pytest.approx(0.07, abs=1e-3)


def test_mc_fano_matches_closed_form():
    est, err = sn.mc_fano([0.3, 0.6], 200_000, 5)
    assert abs(est - sn.fano([0.3, 0.6])) <= 3 * err


def test_pipeline_round_trip_and_fit():
    cfg = sn.SynthConfig()
    m = sn.synth_map(cfg)
    text = sn.serialize_map(m)
    assert sn.serialize_map(sn.parse_map(text)) == text
    b1, b2 = sn.default_bands(cfg.voltage)
    assert (b1.lo, b1.hi, b2.lo, b2.hi) == pytest.approx((1.19, 1.47, 1.6, 2.08))
    curve = sn.yield_curve(sn.parse_map(text), cfg.voltage, b1, b2)
    env = sn.NoiseEnvironment(cfg.voltage, cfg.temperature)
    for p in curve.points:
        assert p.yield_1e == pytest.approx(sn.normalized_yield_model(p.g, cfg.model, env), abs=1e-8)
    fit = sn.fit_temperature(curve, cfg.model, cfg.voltage)
    assert fit.converged
    assert math.isclose(fit.temperature, 2000.0, abs_tol=1.0)
    residuals = sn.compare_to_model(curve, cfg.model, env)
    assert max(abs(r[3]) for r in residuals) < 1e-8
