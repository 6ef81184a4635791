import math

import mpmath as mp
import numpy as np
import pytest

from conftest import mp_h, mp_test_value
from hbops.errors import DomainError, ParameterError, RangeViolation
from hbops.geometry import make_grid
from hbops.power_series import coordinate
from hbops.symbols import (
    PROOF_THRESHOLD,
    HoloSelfMap,
    Symbol,
    TestFunction,
    h_scalar,
    validate_self_map,
)


def test_h_scalar_values():
    assert h_scalar(0) == -2
    z = 1 - 1 / math.e
    assert h_scalar(z) == pytest.approx(-5 / math.e, rel=1e-14)
    assert h_scalar(0.5j) == pytest.approx(complex(mp_h(mp.mpc(0, 0.5))), rel=1e-14)
    with pytest.raises(DomainError):
        h_scalar(1.0)


def test_h_a_at_origin():
    a2 = 1 - 1 / math.e
    T = TestFunction("h_a", [math.sqrt(a2)])
    assert T.value([0]) == pytest.approx(-2 * math.e / (math.e - 1), rel=1e-13)
    assert TestFunction("f_a", [math.sqrt(a2)]).value([0]) == pytest.approx(T.value([0]), rel=1e-14)


@pytest.mark.parametrize("family", ["h_a", "f_a", "f_k"])
@pytest.mark.parametrize("z", [0.5, 0.3 - 0.6j, -0.85])
def test_values_match_high_precision(family, z):
    a = 0.9
    T = TestFunction(family, [a])
    ref = mp_test_value(family, a, mp.mpc(z * a))
    assert T.value([z]) == pytest.approx(ref, rel=1e-11)


def test_values_in_two_variables_depend_on_inner_product():
    a = np.array([0.6, 0.3j])
    z = np.array([0.2 + 0.1j, -0.4])
    zeta = complex(np.dot(z, np.conj(a)))
    T = TestFunction("f_a", a)
    ref = mp_test_value("f_a", float(np.linalg.norm(a)), mp.mpc(zeta))
    assert T.value(z) == pytest.approx(ref, rel=1e-11)


def test_radials_vanish_at_origin():
    for fam in ("h_a", "f_a", "f_k"):
        T = TestFunction(fam, [0.7, 0.2])
        assert T.radial_value([0, 0], 1) == 0
        assert T.radial_value([0, 0], 2) == 0


def test_radial_f_a_vanishes_at_a():
    a = np.array([0.8 * np.exp(0.4j)])
    assert abs(TestFunction("f_a", a).radial_value(a)) < 1e-14


def _radial_fd(T, z, h=1e-3):
    s = np.array([1 - 2 * h, 1 - h, 1, 1 + h, 1 + 2 * h])
    v = np.array([T.value(si * z) for si in s])
    d1 = (v[0] - 8 * v[1] + 8 * v[3] - v[4]) / (12 * h)
    d2 = (-v[0] + 16 * v[1] - 30 * v[2] + 16 * v[3] - v[4]) / (12 * h * h)
    # d^2/ds^2 f(sz) = R^2 f - R f
    return d1, d2 + d1


def test_closed_form_radials_match_finite_differences(rng):
    worst1 = worst2 = 0.0
    for i in range(50):
        fam = ("h_a", "f_a")[i % 2]
        n = 1 + i % 3
        a = rng.normal(size=n) + 1j * rng.normal(size=n)
        a *= rng.uniform(0.1, 0.99) / np.linalg.norm(a)
        z = rng.normal(size=n) + 1j * rng.normal(size=n)
        z *= rng.uniform(0.0, 0.9) / np.linalg.norm(z)
        T = TestFunction(fam, a)
        d1, d2 = _radial_fd(T, z)
        scale = max(1.0, abs(d1), abs(d2))
        worst1 = max(worst1, abs(d1 - T.radial_value(z, 1)) / scale)
        worst2 = max(worst2, abs(d2 - T.radial_value(z, 2)) / scale)
    assert worst1 < 1e-6
    assert worst2 < 1e-4


def test_gradient_satisfies_euler_identity(rng):
    for fam in ("h_a", "f_a", "f_k"):
        T = TestFunction(fam, [0.5, 0.5j, -0.3])
        Z = rng.normal(size=(6, 3)) + 1j * rng.normal(size=(6, 3))
        Z *= 0.9 * rng.uniform(size=(6, 1)) / np.linalg.norm(Z, axis=1, keepdims=True)
        euler = np.sum(Z * T.gradient_value(Z), axis=-1)
        np.testing.assert_allclose(euler, T.radial_value(Z), rtol=1e-12, atol=1e-14)
        euler2 = np.sum(Z * T.radial_gradient_value(Z), axis=-1)
        np.testing.assert_allclose(euler2, T.radial_value(Z, 2), rtol=1e-12, atol=1e-14)


def test_proof_regime_flag():
    assert not TestFunction("h_a", [PROOF_THRESHOLD - 1e-9]).in_proof_regime
    assert TestFunction("h_a", [PROOF_THRESHOLD + 1e-9]).in_proof_regime


@pytest.mark.parametrize("a", [[0.0], [1.0], [0.8, 0.7]])
def test_bad_parameters(a):
    with pytest.raises((ParameterError, DomainError)):
        TestFunction("h_a", a)


def test_unknown_family():
    with pytest.raises(ParameterError):
        TestFunction("g_a", [0.5])


# ---------------------------------------------------------------------------
# self-maps and symbols


def test_self_map_examples():
    idm = HoloSelfMap.identity(2)
    z = np.array([0.3, 0.2j])
    np.testing.assert_array_equal(idm.value(z), z)
    np.testing.assert_array_equal(idm.radial(z), z)
    half = HoloSelfMap.scaled_identity(1, 0.5)
    assert half.value([0.8])[0] == pytest.approx(0.4)
    assert half.radial([0.8])[0] == pytest.approx(0.4)
    z1, z2 = coordinate(2, 0), coordinate(2, 1)
    sq = HoloSelfMap.polynomial([z1**2, 0 * z2])
    np.testing.assert_allclose(sq.value([0.5, 0.9]), [0.25, 0])
    np.testing.assert_allclose(sq.radial([0.5, 0.9]), [0.5, 0])


def test_validation_examples():
    G = make_grid(2, 6, 32)
    rep = validate_self_map(HoloSelfMap.scaled_identity(1, 0.5), G.with_dimension(1, 8))
    assert rep.passed and rep.certified_bound == pytest.approx(0.5)
    assert not validate_self_map(HoloSelfMap.scaled_identity(1, 2.0), G.with_dimension(1, 8)).passed
    row = HoloSelfMap.linear([[0.5, 0.5], [0.0, 0.0]])
    rep = validate_self_map(row, G)
    assert rep.passed and rep.certified_bound == pytest.approx(1 / math.sqrt(2), rel=1e-14)
    z1 = coordinate(2, 0)
    rep = validate_self_map(HoloSelfMap.polynomial([0.5 * z1**2, 0.4 * z1]), G)
    assert rep.passed and rep.method == "coefficient-bound"


def test_range_check():
    phi = HoloSelfMap.scaled_identity(1, 1.5)
    with pytest.raises(RangeViolation) as info:
        phi.value([0.8], check=True)
    assert info.value.image_norm == pytest.approx(1.2)


def test_jacobian_of_polynomial_map():
    z1, z2 = coordinate(2, 0), coordinate(2, 1)
    phi = HoloSelfMap.polynomial([0.3 * z1 * z2, 0.2 * z1 + 0.1 * z2**2])
    z = np.array([0.4, -0.3j])
    J = phi.jacobian(z)
    expect = [[0.3 * z[1], 0.3 * z[0]], [0.2, 0.2 * z[1]]]
    np.testing.assert_allclose(J, expect, atol=1e-15)
    closed = HoloSelfMap.closed_form(2, phi.value, phi.radial)
    np.testing.assert_allclose(closed.jacobian(z), expect, atol=1e-9)


def test_symbol_constraints():
    with pytest.raises(ParameterError):
        Symbol.polynomial(coordinate(1, 0) + 1)
    with pytest.raises(ParameterError):
        Symbol.log_form([1.0], 1)
    with pytest.raises(ParameterError):
        Symbol.log_form([0.5], 0)
    assert Symbol.zero(2).is_zero()


def test_log_form_derivatives(rng):
    g = Symbol.log_form([0.6, -0.3j], 2)
    Z = (rng.normal(size=(5, 2)) + 1j * rng.normal(size=(5, 2))) * 0.3
    np.testing.assert_allclose(np.sum(Z * g.gradient_value(Z), axis=-1), g.radial_value(Z),
                               rtol=1e-13, atol=1e-15)
    w = Z @ np.conj(g.b)
    np.testing.assert_allclose(g.value(Z), np.log(1 / (1 - w)) ** 2, rtol=1e-13)
