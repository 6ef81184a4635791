import numpy as np
import pytest

from hbops.errors import ParameterError, QuadratureError
from hbops.quadrature import QuadratureConfig, integrate


def test_polynomial_exact():
    res = integrate(lambda t: 5 * t**4, QuadratureConfig()).value
    assert res == pytest.approx(1.0, abs=1e-15)


def test_vector_valued_integrand():
    res = integrate(lambda t: np.stack([t, t**2, np.exp(1j * t)], axis=-1), QuadratureConfig()).value
    np.testing.assert_allclose(res, [0.5, 1 / 3, (np.exp(1j) - 1) / 1j], rtol=1e-14)


def test_endpoint_log_singularity():
    # int_0^1 log t dt = -1
    res = integrate(lambda t: np.log(t), QuadratureConfig(rtol=1e-12)).value
    assert res == pytest.approx(-1.0, rel=1e-11)


def test_near_singular_log_kernel():
    # int_0^1 log(1/(1 - 0.999 t)) / t dt = Li_2(0.999)
    from scipy.special import spence

    res = integrate(lambda t: -np.log1p(-0.999 * t) / t, QuadratureConfig(rtol=1e-13)).value
    assert res == pytest.approx(spence(1 - 0.999), rel=1e-12)


def test_diagnostics():
    res = integrate(lambda t: np.sqrt(t), QuadratureConfig(rtol=1e-12))
    assert res.value == pytest.approx(2 / 3, rel=1e-12)
    assert res.error <= 1e-12 and res.panels >= 1 and res.evaluations >= 48


def test_depth_exhaustion_raises():
    cfg = QuadratureConfig(rtol=1e-15, atol=0.0, max_depth=2)
    with pytest.raises(QuadratureError):
        integrate(lambda t: 1.0 / np.sqrt(t), cfg)


@pytest.mark.parametrize("kw", [{"rtol": 0}, {"atol": -1}, {"max_depth": 0}, {"order": 1}])
def test_bad_config(kw):
    with pytest.raises(ParameterError):
        QuadratureConfig(**kw)
