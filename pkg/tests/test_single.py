import math
from dataclasses import replace

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nuccr import measures as qm
from nuccr import single as sn
from nuccr.dirac import PhysParams
from nuccr.tensor import reduced_density

S2 = 4 * 0.306 * 0.694  # sin^2(2 theta) for sin^2 theta = 0.306


def test_sin2_2theta_from_default_params():
    assert math.sin(2 * PhysParams(p=1.0).theta) ** 2 == pytest.approx(S2, abs=1e-15)


@pytest.mark.parametrize("i", [1, 2])
def test_omega(i):
    P = PhysParams(p=0.7)
    assert sn.omega(i, 1, 0.0, P) == 1 and sn.omega(i, -1, 0.0, P) == 0
    t = math.pi / (2 * P.energy(i))
    assert sn.omega(i, -1, t, P) == pytest.approx(-1j * P.mass(i) / P.energy(i), abs=1e-15)
    ts = np.linspace(0, 30, 301)
    norm = np.abs(sn.omega(i, 1, ts, P)) ** 2 + np.abs(sn.omega(i, -1, ts, P)) ** 2
    np.testing.assert_allclose(norm, 1, atol=1e-14)
    rest = PhysParams(p=0.0)
    m = rest.mass(i)
    np.testing.assert_allclose(sn.omega(i, 1, ts, rest), np.cos(m * ts), atol=1e-15)
    np.testing.assert_allclose(sn.omega(i, -1, ts, rest), -1j * np.sin(m * ts), atol=1e-15)


def test_omega_bad_args():
    P = PhysParams(p=1.0)
    with pytest.raises(ValueError):
        sn.omega(3, 1, 0.0, P)
    with pytest.raises(ValueError):
        sn.omega(1, 0, 0.0, P)


def test_delta_coeffs():
    P = PhysParams(p=0.4)
    ts = np.linspace(0, 500, 1001)
    e_p, mu_p = sn.delta_coeffs(1, ts, P)
    e_m, mu_m = sn.delta_coeffs(-1, ts, P)
    np.testing.assert_allclose(abs(e_p) ** 2 + abs(mu_p) ** 2 + abs(e_m) ** 2 + abs(mu_m) ** 2, 1, atol=1e-14)
    assert e_p[0] == 1 and mu_p[0] == 0 and e_m[0] == 0 and mu_m[0] == 0
    for c in (1, -1):
        assert np.all(sn.delta_coeffs(c, ts, replace(P, theta=0.0))[1] == 0)
        assert np.max(np.abs(sn.delta_coeffs(c, ts, replace(P, m2=P.m1))[1])) < 1e-15


def test_delta_coeffs_are_state_amplitudes():
    P = PhysParams(p=0.4)
    for t in (0.0, 3.3, 120.0):
        amp = sn.build_state(t, P).tensor()
        # chirality bit 1 = left = initial chirality (c = +1), spin down
        for c, bit in ((1, 1), (-1, 0)):
            de, dmu = sn.delta_coeffs(c, t, P)
            assert amp[bit, 1, 1, 0] == pytest.approx(de, abs=1e-14)
            assert amp[bit, 1, 0, 1] == pytest.approx(dmu, abs=1e-14)


def test_build_state_initial_and_unitarity(default_params):
    s0 = sn.build_state(0.0, default_params)
    assert s0.labels == sn.LABELS
    expected = np.zeros(16)
    expected[0b1110] = 1  # |L>|down>|1_e 0_mu>
    np.testing.assert_allclose(s0.amp, expected, atol=1e-15)
    for t in sn.time_grid(default_params, steps=25):
        s = sn.build_state(t, default_params)
        assert s.norm == pytest.approx(1, abs=1e-12)
        np.testing.assert_allclose(reduced_density(s, "spin").mat, np.diag([0, 1]), atol=1e-12)


def test_G_H_examples():
    P = PhysParams(p=2.0)
    assert sn.G(0.0, P) == 0 and sn.H(0.0, P) == 0
    ts = np.linspace(0, 1e4, 20001)
    g = sn.G(ts, P)
    assert g.min() >= -1e-15 and g.max() <= 2 + 1e-15
    degen = replace(P, m2=P.m1)
    assert np.max(np.abs(sn.G(ts, degen))) < 1e-12
    assert np.max(np.abs(sn.H(ts, degen))) < 1e-12
    # E t reaches ~1e8 here; much larger momenta lose the phase to round-off
    ultra = PhysParams.from_ratios(100.0)
    tu = np.linspace(0, sn.default_t_max(ultra), 5001)
    np.testing.assert_allclose(sn.G(tu, ultra), 1 - np.cos(ultra.delta_E * tu), atol=1e-6)


def test_flavor_density_closed_examples():
    P = PhysParams(p=0.3)
    d0 = sn.flavor_density_closed(0.0, P)
    assert (d0.rho11, d0.rho22, d0.rho12) == (1, 0, 0)
    ts = np.linspace(0, 1e3, 101)
    d = sn.flavor_density_closed(ts, replace(P, theta=0.0))
    np.testing.assert_allclose(d.rho11, 1)
    np.testing.assert_allclose(d.rho12, 0)


def test_flavor_density_matches_bruteforce(default_params):
    ts = np.concatenate([sn.time_grid(default_params, steps=60), np.linspace(0, sn.chiral_zoom_t_max(default_params), 40)])
    closed = sn.flavor_density_closed(ts, default_params)
    for i, t in enumerate(ts):
        b = sn.flavor_density_bruteforce(t, default_params)
        assert abs(b.rho11 - closed.rho11[i]) < 1e-12
        assert abs(b.rho22 - closed.rho22[i]) < 1e-12
        assert abs(b.rho12 - closed.rho12[i]) < 1e-12
        assert abs(b.rho12) ** 2 <= b.rho11 * b.rho22 + 1e-12
        # survival sums |delta_e(c)|^2 over both chiralities
        de = [sn.delta_coeffs(c, t, default_params)[0] for c in (1, -1)]
        assert closed.rho11[i] == pytest.approx(sum(abs(x) ** 2 for x in de), abs=1e-12)


def test_flavor_density_roundtrip():
    d = sn.flavor_density_closed(5.0, PhysParams(p=0.5))
    back = sn.FlavorDensity.from_density(d.to_density())
    assert back.rho11 == pytest.approx(d.rho11) and back.rho12 == pytest.approx(complex(d.rho12))
    with pytest.raises(ValueError):
        sn.FlavorDensity.from_density(reduced_density(sn.build_state(0.0, PhysParams(p=1.0)), ("flavor_mu", "flavor_e")))


def test_survival_standard_formula():
    P = PhysParams(p=1.0)
    t = math.pi / P.delta_E
    assert sn.survival_probability_standard(t, P) == pytest.approx(1 - S2, abs=1e-12)
    assert sn.survival_probability_standard(t, replace(P, theta=0.0)) == 1


def test_survival_lower_bound_approached():
    P = PhysParams.from_ratios(0.5)
    ts = np.linspace(0, sn.default_t_max(P), 400001)
    pee = sn.survival_probability(ts, P)
    assert pee.min() >= 1 - S2 - 1e-12
    assert pee.min() == pytest.approx(1 - S2, abs=5e-3)
    assert np.all(sn.survival_probability(ts[:1000], replace(P, theta=0.0)) == 1)


@settings(max_examples=30, deadline=None)
@given(st.floats(0.01, 100), st.floats(0, 1e5))
def test_survival_upper_bounds_left_chiral_survival(p, t):
    P = PhysParams.from_ratios(p)
    de, _ = sn.delta_coeffs(1, t, P)
    assert sn.survival_probability(t, P) >= abs(de) ** 2 - 1e-12


def test_relativistic_survival_approaches_standard():
    # P_ee - P_ee^S = -(sin^2 2theta / 2)(1 - k) sin(E1 t) sin(E2 t), k = (p^2 + m1 m2) / (E1 E2)
    bounds = []
    for p in (1.0, 3.0, 10.0):
        P = PhysParams.from_ratios(p)
        bound = S2 / 2 * (1 - (P.p**2 + P.m1 * P.m2) / (P.E1 * P.E2))
        ts = np.random.default_rng(0).uniform(0, sn.default_t_max(P), 20001)
        dev = np.abs(sn.survival_probability(ts, P) - sn.survival_probability_standard(ts, P))
        assert dev.max() <= bound + 1e-10
        assert dev.max() > 0.5 * bound
        bounds.append(bound)
    assert bounds[0] > bounds[1] > bounds[2]


def test_flavor_purity_bounds_and_limits():
    for p in (0.1, 1.0, 10.0):
        P = PhysParams.from_ratios(p)
        ts = sn.time_grid(P, steps=20001)
        pur = sn.flavor_purity_closed(ts, P)
        assert pur[0] == 1
        assert pur.min() >= 1 - S2 / 2 - 1e-12 and pur.max() <= 1 + 1e-12
    nr = PhysParams.from_ratios(1e-3)
    t_nr = np.linspace(0, sn.default_t_max(nr), 20001)
    np.testing.assert_allclose(sn.flavor_purity_closed(t_nr, nr), sn.flavor_purity_nonrelativistic(t_nr, nr), atol=1e-3)


def test_flavor_entropy():
    P = PhysParams.from_ratios(1.0)
    assert sn.flavor_entropy(0.0, P) == 0
    ts = np.linspace(0, 2000, 41)
    ent = sn.flavor_entropy(ts, P)
    for t, s in zip(ts, ent):
        ref = qm.von_neumann_entropy(reduced_density(sn.build_state(t, P), sn.FLAVOR_LABELS))
        assert s == pytest.approx(ref, abs=1e-9)
    big = PhysParams.from_ratios(10.0)
    assert np.max(sn.flavor_entropy(sn.time_grid(big, steps=20001), big)) < 0.05


def test_flavor_entropy_of_maximally_mixed_purity(monkeypatch):
    monkeypatch.setattr(sn, "flavor_purity_closed", lambda t, params: np.full(np.shape(t), 0.5))
    assert sn.flavor_entropy(0.0, PhysParams(p=1.0)) == pytest.approx(1)
    monkeypatch.setattr(sn, "flavor_purity_closed", lambda t, params: np.full(np.shape(t), 0.4))
    with pytest.raises(ValueError):
        sn.flavor_entropy(0.0, PhysParams(p=1.0))


def test_purity_deficit_decreases_with_momentum():
    deficits = []
    for p in (0.1, 1.0, 10.0):
        P = PhysParams.from_ratios(p)
        deficits.append(np.max(1 - sn.flavor_purity_closed(sn.time_grid(P, steps=100001), P)))
    assert deficits[0] > deficits[1] > deficits[2]


def test_time_grids():
    P = PhysParams.from_ratios(1.0)
    ts = sn.time_grid(P)
    assert len(ts) == 4000 and ts[0] == 0 and ts[-1] == pytest.approx(4 * math.pi / P.delta_E)
    assert sn.chiral_zoom_t_max(P) == pytest.approx(20 * math.pi / P.E2)
    with pytest.raises(ValueError):
        sn.time_grid(P, steps=1)
    with pytest.raises(ValueError):
        sn.default_t_max(replace(P, m2=P.m1))
