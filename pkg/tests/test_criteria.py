import math

import numpy as np
import pytest

from conftest import dense_sup
from hbops.criteria import (
    CRITERIA_SETS,
    build_dictionary,
    criteria_set,
    criterion,
    criterion_B10,
    criterion_B11,
    criterion_C21,
    operator_norm_lower_bound,
)
from hbops.geometry import make_grid
from hbops.harness import boundary_log_symbol
from hbops.norms import Classification as K
from hbops.power_series import coordinate
from hbops.symbols import HoloSelfMap, Symbol

z = coordinate(1, 0)
g1 = Symbol.coordinate(1)
half = HoloSelfMap.scaled_identity(1, 0.5)
idm = HoloSelfMap.identity(1)


def b10_oracle():
    return dense_sup(lambda r: (1 - r * r) * 0.5 * r * r / (1 - 0.25 * r * r))


def b11_oracle():
    return dense_sup(lambda r: (1 - r * r) * r * (1 - np.log1p(-0.25 * r * r)))


def test_dense_oracles_match_closed_forms():
    # B10 in u = r^2: 0.5 u (1-u) / (1 - u/4), maximal at u = 4 - 2 sqrt 3
    u = 4 - 2 * math.sqrt(3)
    assert b10_oracle() == pytest.approx(0.5 * u * (1 - u) / (1 - u / 4), abs=1e-10)
    assert b11_oracle() == pytest.approx(0.42, abs=0.01)


def test_B10_B11_values(disc_grid):
    b10 = criterion_B10(half, g1, disc_grid)
    b11 = criterion_B11(half, g1, disc_grid)
    assert b10.estimate.value == pytest.approx(0.1436, abs=0.002)
    assert b11.estimate.value == pytest.approx(0.42, abs=0.01)
    assert abs(b10.estimate.value - b10_oracle()) < 0.002
    assert abs(b11.estimate.value - b11_oracle()) < 0.01
    assert b10.classification == b11.classification == K.FINITE


def test_B10_of_log_symbol(disc_grid):
    g = Symbol.log_form([0.999], 1)
    r = criterion_B10(idm, g, disc_grid)
    assert r.classification == K.FINITE
    assert r.estimate.value == pytest.approx(math.log(1000), rel=0.05)


def test_divergent_probe(disc_grid):
    rep = criteria_set("bounded", idm, boundary_log_symbol(3), disc_grid)
    assert [r.classification for r in rep] == [K.DIVERGENT, K.DIVERGENT]


def test_compactness_examples(disc_grid):
    for g in (g1, Symbol.log_form([0.9], 2)):
        for r in criteria_set("compact", half, g, disc_grid):
            assert r.classification == K.VACUOUSLY_ZERO
    c21 = criterion_C21(idm, g1, disc_grid)
    assert c21.classification == K.NON_VANISHING
    sups = [s for _, s in c21.evidence]
    assert min(sups) >= 0.5 * max(sups)
    # |z|^2 |1-z|^2 vanishes at z = 1 but tends to 4 at z = -1
    r = criterion_C21(idm, Symbol.polynomial(z * (1 - z) ** 2), disc_grid)
    assert r.classification == K.NON_VANISHING
    assert r.evidence[-1][1] == pytest.approx(4, abs=0.01)


def test_empty_region_is_flagged():
    # coefficient certificate 1.4 > 1, true sup 0.7 sqrt 2 ~ 0.99
    z1, z2 = coordinate(2, 0), coordinate(2, 1)
    phi = HoloSelfMap.polynomial([0.7 * (z1 + z2), 0 * z1])
    G = make_grid(2, 10, 64)
    r = criterion("C21", phi, Symbol.coordinate(2), G)
    assert phi.certified_bound > 1
    assert r.empty_region and r.classification == K.INCONCLUSIVE
    assert r.evidence[-1][1] is None


def test_little_examples(disc_grid):
    p = Symbol.polynomial(z + 2 * z**4)
    phi = HoloSelfMap.polynomial([0.4 * z + 0.3 * z**2])
    assert criterion("L27", phi, p, disc_grid).classification == K.VANISHING
    assert criterion("L28", phi, p, disc_grid).classification == K.VANISHING
    # R g = z/(1-z) for g = log 1/(1-z)
    assert criterion("L27", idm, boundary_log_symbol(1), disc_grid).classification == K.NON_VANISHING


def test_compact_little_examples(disc_grid):
    assert [r.classification for r in criteria_set("compact-little", half, g1, disc_grid)] \
        == [K.VANISHING, K.VANISHING]
    lc30 = criterion("LC30", idm, g1, disc_grid)
    assert lc30.classification == K.NON_VANISHING
    assert lc30.estimate.trace[-1] == pytest.approx(1, abs=1e-3)
    assert all(r.classification == K.VANISHING
               for r in criteria_set("compact-little", idm, Symbol.zero(1), disc_grid))


def test_lower_bound_examples(disc_grid):
    d = build_dictionary([z], disc_grid, ["z"])
    assert d[0][2] == pytest.approx(1 + 2 / (3 * math.sqrt(3)), abs=1e-3)
    lb = operator_norm_lower_bound(idm, g1, d, disc_grid)
    assert lb.value == pytest.approx(0.5559, abs=1e-3)
    assert operator_norm_lower_bound(idm, Symbol.zero(1), d, disc_grid).value == 0


def test_lower_bound_running_max_is_monotone(disc_grid):
    from hbops.harness import proof_dictionary

    lb = operator_norm_lower_bound(half, g1, proof_dictionary(1, disc_grid, 4), disc_grid)
    assert all(b >= a for a, b in zip(lb.running, lb.running[1:]))
    assert lb.value == max(lb.ratios)


def test_lower_bound_tracks_B10_via_witness(disc_grid):
    # h_a with a = phi(z*) at the B10 witness is within a bounded factor of B10
    from hbops.symbols import TestFunction

    phi = HoloSelfMap.scaled_identity(1, 0.95)
    b10 = criterion_B10(phi, g1, disc_grid)
    a = phi.value(b10.estimate.witness)
    d = build_dictionary([TestFunction("f_a", a)], disc_grid)
    ratio = operator_norm_lower_bound(phi, g1, d, disc_grid).value
    assert 0.05 * b10.estimate.value < ratio < 20 * b10.estimate.value


def test_sets_and_unknown_id(disc_grid):
    assert set(CRITERIA_SETS) == {"bounded", "compact", "little", "compact-little"}
    with pytest.raises(KeyError):
        criterion("B12", half, g1, disc_grid)


def test_report_serialises(disc_grid):
    d = criterion_B11(half, g1, disc_grid).as_dict()
    assert d["criterion"] == "B11" and d["classification"] == "Finite"
    assert len(d["estimate"]["trace"]) == disc_grid.levels
