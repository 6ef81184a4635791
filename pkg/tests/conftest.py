import mpmath as mp
import numpy as np
import pytest

from hbops.geometry import make_grid

mp.mp.dps = 50


def mp_h(zeta):
    L = -mp.log(1 - zeta)
    return (zeta - 1) * ((1 + L) ** 2 + 1)


def mp_test_value(family, a, zeta):
    """High-precision h_a / f_a / f_k as functions of zeta = <z, a> (n = 1 reading)."""
    a2 = mp.mpf(abs(a)) ** 2
    lam = -mp.log(1 - a2)
    out = mp_h(zeta) / (a2 * lam)
    if family == "f_a":
        out -= mp.polylog(2, zeta)
    elif family == "f_k":
        out -= mp.quad(lambda t: (-mp.log(1 - t * zeta)) ** 3 / t, [0, 1]) / lam**2
    return complex(out)


def radial_fd(fun, z, h=1e-3):
    """d/ds fun(s z) at s = 1 (five-point stencil)."""
    s = [1 - 2 * h, 1 - h, 1 + h, 1 + 2 * h]
    v = [fun(si * z) for si in s]
    return (v[0] - 8 * v[1] + 8 * v[2] - v[3]) / (12 * h)


def dense_sup(fun, radii=10**6):
    r = np.linspace(0.0, 1.0, radii, endpoint=False)
    return float(np.max(fun(r)))


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture(scope="session")
def disc_grid():
    return make_grid(1, 16, 256, 0, 8)


@pytest.fixture(scope="session")
def coarse_grid():
    return make_grid(1, 12, 128, 0, 4)


ACCEPTANCE = {}


def record_acceptance(number, title, ok, detail):
    ACCEPTANCE[number] = (title, bool(ok), detail)
    print(f"criterion {number:2d} {'PASS' if ok else 'FAIL'}  {title}: {detail}")


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE):
        title, ok, detail = ACCEPTANCE[number]
        terminalreporter.write_line(f"criterion {number:2d} {'PASS' if ok else 'FAIL'}  {title}: {detail}")
