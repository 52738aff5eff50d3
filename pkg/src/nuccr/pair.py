"""Spin-entangled lepton/antineutrino pair from pion decay.

The antineutrino (momentum +z, right-handed, mixing between two mass
eigenstates) and the charged lepton (momentum -z, left-handed) share a spin
singlet-like state.  The global state lives on six qubits:

    ("nubar_chirality", "nubar_spin", "nubar_flavor_e", "nubar_flavor_mu",
     "lepton_chirality", "lepton_spin")

with the bit conventions of :mod:`nuccr.dirac` and :mod:`nuccr.single`.  The
antineutrino starts in mass eigenstate 1 kinematics projected onto electron
flavor.

Two independent routes build the time-evolved state: :func:`evolve_pair_state`
applies the exact Dirac evolution operators to the projected initial state,
while :func:`pair_state_from_gammas` assembles it from the closed-form
``gamma`` coefficients.  The spin-spin reduced density has a closed form in
:func:`spin_density_closed`; the literal printed variants of the published
expressions are kept alongside (``*_printed``) for :func:`reconciliation_report`.

In the coefficient functions ``c``/``c'`` are gamma5 eigenvalues
(``+1`` right, ``-1`` left) of the antineutrino and lepton respectively.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .dirac import (
    Handedness,
    PhysParams,
    basis_spinor,
    chirality_projector,
    evolution_operator,
    kinematic_factors,
)
from .single import IDX_E, IDX_MU
from .tensor import DensityMatrix, LabeledState, reduced_density

LABELS = (
    "nubar_chirality",
    "nubar_spin",
    "nubar_flavor_e",
    "nubar_flavor_mu",
    "lepton_chirality",
    "lepton_spin",
)
SPIN_LABELS = ("nubar_spin", "lepton_spin")

# |up_nubar down_l> and |down_nubar up_l> on SPIN_LABELS
IDX_UD = 0b01
IDX_DU = 0b10

HG_INDICES = ("l", "nubar1", "nubar2")


@dataclass(frozen=True)
class PairCoefficients:
    A: float
    B: float


@dataclass(frozen=True)
class SpinDensity:
    """Spin-spin density on the ordered basis {|up_nubar down_l>, |down_nubar up_l>}.

    The complementary spin sectors carry no population.
    """

    A2: float
    B2: float
    rho12: np.ndarray | complex

    def to_density(self) -> DensityMatrix:
        m = np.zeros((4, 4), dtype=complex)
        m[IDX_UD, IDX_UD] = self.A2
        m[IDX_DU, IDX_DU] = self.B2
        m[IDX_UD, IDX_DU] = self.rho12
        m[IDX_DU, IDX_UD] = np.conj(self.rho12)
        return DensityMatrix(SPIN_LABELS, m)

    @classmethod
    def from_density(cls, rho: DensityMatrix) -> "SpinDensity":
        if rho.labels != SPIN_LABELS:
            raise ValueError(f"expected labels {SPIN_LABELS}, got {rho.labels}")
        m = rho.mat
        return cls(float(m[IDX_UD, IDX_UD].real), float(m[IDX_DU, IDX_DU].real), complex(m[IDX_UD, IDX_DU]))

    @property
    def purity(self):
        return self.A2**2 + self.B2**2 + 2 * np.abs(self.rho12) ** 2


def pair_AB(params: PhysParams) -> PairCoefficients:
    """Branch amplitudes of the chirality-projected pair state."""
    p = params.p
    fp_n, fm_n, N_n = kinematic_factors(p, params.m1)
    fp_l, fm_l, N_l = kinematic_factors(p, params.m_l)
    E_nu, E_l = params.E1, params.E_l
    # 1/2 - p^2 / (2 E_l E_nu), rewritten to avoid cancellation at large p
    gap = (p * p * (params.m1**2 + params.m_l**2) + (params.m1 * params.m_l) ** 2) / (E_l * E_nu + p * p)
    bracket = gap / (2 * E_l * E_nu)
    scale = N_l * N_n / np.sqrt(bracket)
    return PairCoefficients(scale * fp_n * fm_l, scale * fm_n * fp_l)


def _flavor_ket(idx: int) -> np.ndarray:
    return np.eye(4)[idx]


def initial_pair_state(params: PhysParams) -> LabeledState:
    """Chirality-projected spin-entangled pair, antineutrino in electron flavor.

    Built from the unprojected state ``(v_up(p) u_down(-p) - v_down(p) u_up(-p)) / sqrt(2)``
    by applying right/left chirality projectors and renormalizing.
    """
    p, m_nu, m_l = params.p, params.m1, params.m_l
    phi = (
        np.kron(basis_spinor("v", 1, p, m_nu), basis_spinor("u", -1, -p, m_l))
        - np.kron(basis_spinor("v", -1, p, m_nu), basis_spinor("u", 1, -p, m_l))
    ) / np.sqrt(2)
    proj = np.kron(chirality_projector(Handedness.RIGHT), chirality_projector(Handedness.LEFT))
    phi = proj @ phi
    phi = phi / np.linalg.norm(phi)
    # insert the flavor qubits between antineutrino and lepton
    amp = np.einsum("ab,f->afb", phi.reshape(4, 4), _flavor_ket(IDX_E)).reshape(-1)
    return LabeledState(LABELS, amp)


def _mass_projectors(params: PhysParams) -> tuple[np.ndarray, np.ndarray]:
    """Projectors onto mass eigenstates 1, 2 inside the one-occupation flavor block."""
    cos, sin = np.cos(params.theta), np.sin(params.theta)
    e, mu = _flavor_ket(IDX_E), _flavor_ket(IDX_MU)
    k1 = cos * e + sin * mu
    k2 = sin * e - cos * mu
    return np.outer(k1, k1), np.outer(k2, k2)


def antineutrino_propagator(t: float, params: PhysParams) -> np.ndarray:
    """16x16 evolution operator on (chirality, spin, flavor_e, flavor_mu)."""
    P1, P2 = _mass_projectors(params)
    return np.kron(evolution_operator(params.p, params.m1, t), P1) + np.kron(
        evolution_operator(params.p, params.m2, t), P2
    )


def evolve_pair_state(t: float, params: PhysParams) -> LabeledState:
    """Exact evolution of :func:`initial_pair_state` by the free Dirac Hamiltonians."""
    if t < 0:
        raise ValueError("time must be >= 0")
    psi0 = initial_pair_state(params).amp
    U = np.kron(antineutrino_propagator(t, params), evolution_operator(-params.p, params.m_l, t))
    return LabeledState(LABELS, U @ psi0)


def _cpow(c: int, d: int) -> float:
    # c ** ((d - 1) / 2) for c, d in {+1, -1}
    return 1.0 if d == 1 else float(c)


def _f(fp: float, fm: float, sign: int) -> float:
    return fp if sign == 1 else fm


def _nubar_factor(c: int, t: float, params: PhysParams, i: int) -> complex:
    fp, fm, N = kinematic_factors(params.p, params.mass(i))
    E = params.energy(i)
    return sum(
        N * N * _cpow(c, d) * _f(fp, fm, d) * _f(fp, fm, d * c) * np.exp(-1j * d * E * t)
        for d in (1, -1)
    )


def _lepton_factor(c: int, t: float, params: PhysParams) -> complex:
    fp, fm, N = kinematic_factors(params.p, params.m_l)
    E = params.E_l
    return sum(
        d * N * N * _cpow(c, d) * _f(fp, fm, -d) * _f(fp, fm, d * c) * np.exp(-1j * d * E * t)
        for d in (1, -1)
    )


def gamma_coefficients(c: int, cp: int, t: float, params: PhysParams) -> tuple[complex, complex, complex, complex]:
    """Coefficients ``(gamma1, gamma2, gamma3, gamma4)`` of the pair state.

    ``gamma1``/``gamma2`` multiply ``|c, up, e/mu, c', down>`` and ``-gamma3``/``-gamma4``
    multiply ``|c, down, e/mu, c', up>``.
    """
    if c not in (1, -1) or cp not in (1, -1):
        raise ValueError("chiralities must be +1 or -1")
    ab = pair_AB(params)
    cos2, sin2 = np.cos(params.theta) ** 2, np.sin(params.theta) ** 2
    sc = np.sin(params.theta) * np.cos(params.theta)
    lep = _lepton_factor(cp, t, params)
    n1, n2 = _nubar_factor(c, t, params, 1), _nubar_factor(c, t, params, 2)
    w1_1, w2_1, w_2 = n1 * lep, n2 * lep, (n1 - n2) * lep
    w1_3, w2_3, w_4 = (-c * cp * np.conj(w) for w in (w1_1, w2_1, w_2))
    return (
        ab.A * (w1_1 * cos2 + w2_1 * sin2),
        ab.A * w_2 * sc,
        ab.B * (w1_3 * cos2 + w2_3 * sin2),
        ab.B * w_4 * sc,
    )


def pair_state_from_gammas(t: float, params: PhysParams, gamma_fn=gamma_coefficients) -> LabeledState:
    """Assemble the pair state from its ``gamma`` coefficients.

    ``gamma_fn`` is injectable so consistency checks can be fed a corrupted
    coefficient set.
    """
    amp = np.zeros((2,) * 6, dtype=complex)
    up, down = 0, 1
    e, mu = (1, 0), (0, 1)
    for c in (1, -1):
        bc = Handedness(c).bit
        for cp in (1, -1):
            bcp = Handedness(cp).bit
            g1, g2, g3, g4 = gamma_fn(c, cp, t, params)
            amp[(bc, up, *e, bcp, down)] += g1
            amp[(bc, up, *mu, bcp, down)] += g2
            amp[(bc, down, *e, bcp, up)] -= g3
            amp[(bc, down, *mu, bcp, up)] -= g4
    return LabeledState(LABELS, amp.reshape(-1))


def hg_factors(i: str, t, params: PhysParams):
    """``(h_i, g_i)`` for ``i`` in ``{"l", "nubar1", "nubar2"}``."""
    mass_key = {"l": "l", "nubar1": 1, "nubar2": 2}
    if i not in mass_key:
        raise ValueError(f"index must be one of {HG_INDICES}, got {i!r}")
    E = params.energy(mass_key[i])
    p = params.p
    t = np.asarray(t, dtype=float)
    return 1.0 - 2 * p * p / (E * E) * np.sin(E * t) ** 2, p / E * np.sin(2 * E * t)


def gamma_factor(i: str, t, params: PhysParams):
    h, g = hg_factors(i, t, params)
    return h * h + g * g


def spin_density_closed(t, params: PhysParams) -> SpinDensity:
    """Spin-spin reduced density.

    ``rho12 = -A B (cos^2 (h1 - i g1) + sin^2 (h2 - i g2)) (h_l + i g_l)``; the
    sign follows from the relative minus sign of the two spin branches.
    """
    ab = pair_AB(params)
    cos2, sin2 = np.cos(params.theta) ** 2, np.sin(params.theta) ** 2
    h1, g1 = hg_factors("nubar1", t, params)
    h2, g2 = hg_factors("nubar2", t, params)
    hl, gl = hg_factors("l", t, params)
    nubar = cos2 * (h1 - 1j * g1) + sin2 * (h2 - 1j * g2)
    return SpinDensity(ab.A**2, ab.B**2, -ab.A * ab.B * nubar * (hl + 1j * gl))


def spin_density_bruteforce(t: float, params: PhysParams) -> SpinDensity:
    return SpinDensity.from_density(reduced_density(evolve_pair_state(t, params), SPIN_LABELS))


def spin_purity(t, params: PhysParams):
    return spin_density_closed(t, params).purity


def entanglement_amplitude(params: PhysParams) -> float:
    """Initial spin-spin entanglement ``2|AB|``, which sets the purity oscillation scale."""
    ab = pair_AB(params)
    return 2 * abs(ab.A * ab.B)


def amplitude_asymptote(params: PhysParams) -> float:
    """Large-momentum limit of :func:`entanglement_amplitude`.

    Exactly ``2|AB| = m_nu m_l / (E_nu E_l - p^2)``, which tends to
    ``2 m_nu m_l / (m_nu^2 + m_l^2)``.
    """
    return 2 * params.m1 * params.m_l / (params.m1**2 + params.m_l**2)


# literal forms as published, kept only for reconciliation


def rho12_printed(t, params: PhysParams):
    ab = pair_AB(params)
    c4, s4 = np.cos(params.theta) ** 4, np.sin(params.theta) ** 4
    sc2 = (np.sin(params.theta) * np.cos(params.theta)) ** 2
    h1, g1 = hg_factors("nubar1", t, params)
    h2, g2 = hg_factors("nubar2", t, params)
    hl, gl = hg_factors("l", t, params)
    real = c4 * (hl * h1 + gl * g1) + s4 * (hl * h2 + gl * g2) + sc2 * (hl * (h1 + h2) + gl * (g1 + g2))
    imag = c4 * (gl * h1 - g1 * hl) + s4 * (gl * h2 - g2 * hl) + sc2 * (gl * (h1 + h2) - hl * (g1 + g2))
    return ab.A * ab.B * (real + 1j * imag)


def spin_purity_printed(t, params: PhysParams):
    """Purity expression exactly as typeset, including its ``Gamma^2`` factors."""
    n0 = entanglement_amplitude(params)
    c2, s2 = np.cos(params.theta) ** 2, np.sin(params.theta) ** 2
    G1 = gamma_factor("nubar1", t, params)
    G2 = gamma_factor("nubar2", t, params)
    Gl = gamma_factor("l", t, params)
    h1, g1 = hg_factors("nubar1", t, params)
    h2, g2 = hg_factors("nubar2", t, params)
    inner = (
        2 * c2**2 * G1**2
        + 2 * s2**2 * G1**2
        + s2 * c2 * (G1**2 + G2**2)
        + 2 * (h1 * h2 + g1 * g2)
    )
    brace = c2**4 * G1**2 + s2**4 * G2**2 + 2 * s2 * c2 * inner
    return 1.0 - n0 / 2 * (1.0 - Gl**2 * brace)


def spin_purity_theta0_printed(t, params: PhysParams):
    n0 = entanglement_amplitude(params)
    return 1.0 - n0 / 2 * (1.0 - gamma_factor("l", t, params) ** 2 * gamma_factor("nubar1", t, params) ** 2)


def amplitude_asymptote_printed(params: PhysParams) -> float:
    return 2 * params.m1**2 * params.m_l**2 / (params.m1**2 + params.m_l**2)


def reconciliation_report(params: PhysParams, ts) -> dict[str, dict]:
    """Compare the printed closed forms against the brute-force 64-dim evolution.

    Each entry holds the maximum absolute deviation over ``ts`` together with a
    short description; nonzero deviations are expected for the printed forms.
    """
    ts = np.asarray(ts, dtype=float)
    brute = [spin_density_bruteforce(t, params) for t in ts]
    rho12_b = np.array([b.rho12 for b in brute])
    pur_b = np.array([b.purity for b in brute])
    theta0 = PhysParams(p=params.p, m1=params.m1, m2=params.m2, m_l=params.m_l, theta=0.0)
    pur_b0 = np.array([spin_density_bruteforce(t, theta0).purity for t in ts])
    limit_numeric = entanglement_amplitude(
        PhysParams(p=1e6 * params.m1, m1=params.m1, m2=params.m2, m_l=params.m_l, theta=params.theta)
    )
    return {
        "rho12_closed": {
            "max_abs_dev": float(np.max(np.abs(spin_density_closed(ts, params).rho12 - rho12_b))),
            "note": "closed form with the branch sign, vs brute force",
        },
        "rho12_printed": {
            "max_abs_dev": float(np.max(np.abs(rho12_printed(ts, params) - rho12_b))),
            "max_abs_dev_up_to_sign": float(np.max(np.abs(rho12_printed(ts, params) + rho12_b))),
            "note": "printed coherence lacks the overall minus sign of the B branch",
        },
        "purity_printed": {
            "max_abs_dev": float(np.max(np.abs(spin_purity_printed(ts, params) - pur_b))),
            "value_at_t0": float(np.atleast_1d(spin_purity_printed(0.0, params))[0]),
            "note": "printed purity is not 1 at t=0; brute force is",
        },
        "purity_theta0_printed": {
            "max_abs_dev": float(np.max(np.abs(spin_purity_theta0_printed(ts, theta0) - pur_b0))),
            "note": "theta=0 printed form uses N and Gamma^2 where N^2 and Gamma are needed",
        },
        "amplitude_limit": {
            "numeric_2AB_at_p_1e6": limit_numeric,
            "derived": amplitude_asymptote(params),
            "printed": amplitude_asymptote_printed(params),
            "rel_dev_derived": abs(limit_numeric - amplitude_asymptote(params)) / amplitude_asymptote(params),
            "rel_dev_printed": abs(limit_numeric - amplitude_asymptote_printed(params))
            / amplitude_asymptote_printed(params),
            "note": "printed limit carries mass dimension squared and exceeds 1",
        },
    }
