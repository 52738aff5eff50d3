"""Single electron neutrino with chirality, spin and two-qubit flavor.

The neutrino is produced left-handed with spin down along its momentum (+z)
and as a pure electron flavor.  The global state lives on four qubits:

    ("chirality", "spin", "flavor_e", "flavor_mu")

with chirality bit 0 = right / 1 = left, spin bit 0 = up / 1 = down and flavor
in occupation form: ``|nu_e> = |1_e 0_mu>``, ``|nu_mu> = |0_e 1_mu>``.

In the amplitude functions ``c = +1`` labels the initial (left) chirality and
``c = -1`` the flipped (right) one.  Closed forms accept scalar or array ``t``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import measures as qm
from .dirac import PhysParams, evolve_mass_bispinor
from .tensor import DensityMatrix, LabeledState, reduced_density

LABELS = ("chirality", "spin", "flavor_e", "flavor_mu")
FLAVOR_LABELS = LABELS[2:]

# basis indices of |1_e 0_mu> and |0_e 1_mu> on (flavor_e, flavor_mu)
IDX_E = 0b10
IDX_MU = 0b01

_KET_E = np.eye(4)[IDX_E]
_KET_MU = np.eye(4)[IDX_MU]


@dataclass(frozen=True)
class FlavorDensity:
    """The {|1_e 0_mu>, |0_e 1_mu>} block of the reduced flavor density matrix."""

    rho11: np.ndarray | float
    rho22: np.ndarray | float
    rho12: np.ndarray | complex

    def to_density(self) -> DensityMatrix:
        """Embed into the full 4x4 matrix over ``("flavor_e", "flavor_mu")``."""
        m = np.zeros((4, 4), dtype=complex)
        m[IDX_E, IDX_E] = self.rho11
        m[IDX_MU, IDX_MU] = self.rho22
        m[IDX_E, IDX_MU] = self.rho12
        m[IDX_MU, IDX_E] = np.conj(self.rho12)
        return DensityMatrix(FLAVOR_LABELS, m)

    @classmethod
    def from_density(cls, rho: DensityMatrix) -> "FlavorDensity":
        if rho.labels != FLAVOR_LABELS:
            raise ValueError(f"expected labels {FLAVOR_LABELS}, got {rho.labels}")
        m = rho.mat
        return cls(float(m[IDX_E, IDX_E].real), float(m[IDX_MU, IDX_MU].real), complex(m[IDX_E, IDX_MU]))

    @property
    def purity(self):
        return self.rho11**2 + self.rho22**2 + 2 * np.abs(self.rho12) ** 2


def _mixing(params: PhysParams) -> tuple[float, float]:
    return np.cos(params.theta), np.sin(params.theta)


def omega(i: int, c: int, t, params: PhysParams):
    """Amplitude for chirality ``c`` of mass eigenstate ``i`` at time ``t``."""
    if i not in (1, 2):
        raise ValueError(f"mass index must be 1 or 2, got {i!r}")
    m, E, p = params.mass(i), params.energy(i), params.p
    t = np.asarray(t, dtype=float)
    if c == -1:
        return -1j * (m / E) * np.sin(E * t)
    if c == 1:
        return np.cos(E * t) - 1j * (p / E) * np.sin(E * t)
    raise ValueError(f"chirality must be +1 or -1, got {c!r}")


def delta_coeffs(c: int, t, params: PhysParams):
    """Electron and muon flavor amplitudes ``(delta_e, delta_mu)`` for chirality ``c``."""
    cos, sin = _mixing(params)
    w1, w2 = omega(1, c, t, params), omega(2, c, t, params)
    return cos**2 * w1 + sin**2 * w2, sin * cos * (w1 - w2)


def build_state(t: float, params: PhysParams) -> LabeledState:
    """Global four-qubit state at time ``t``.

    Built directly from the Dirac-evolved mass bispinors (not from the
    ``delta`` amplitudes), so it serves as the brute-force reference.
    """
    cos, sin = _mixing(params)
    psi1 = evolve_mass_bispinor("neutrino", -1, params, t, mass_index=1)
    psi2 = evolve_mass_bispinor("neutrino", -1, params, t, mass_index=2)
    amp = np.kron(cos**2 * psi1 + sin**2 * psi2, _KET_E) + np.kron(sin * cos * (psi1 - psi2), _KET_MU)
    return LabeledState(LABELS, amp)


def G(t, params: PhysParams):
    p, m1, m2, E1, E2 = params.p, params.m1, params.m2, params.E1, params.E2
    t = np.asarray(t, dtype=float)
    s1, c1, s2, c2 = np.sin(E1 * t), np.cos(E1 * t), np.sin(E2 * t), np.cos(E2 * t)
    return 1.0 - (p * p + m1 * m2) / (E1 * E2) * s1 * s2 - c1 * c2


def H(t, params: PhysParams):
    p, E1, E2 = params.p, params.E1, params.E2
    t = np.asarray(t, dtype=float)
    return p / E1 * np.sin(E1 * t) * np.cos(E2 * t) - p / E2 * np.cos(E1 * t) * np.sin(E2 * t)


def _s2(params: PhysParams) -> float:
    return np.sin(2 * params.theta) ** 2


def flavor_density_closed(t, params: PhysParams) -> FlavorDensity:
    s2t, c2t = np.sin(2 * params.theta), np.cos(2 * params.theta)
    g, h = G(t, params), H(t, params)
    rho11 = 1.0 - s2t**2 / 2 * g
    return FlavorDensity(rho11, 1.0 - rho11, s2t * c2t / 2 * g + 1j * s2t / 2 * h)


def flavor_density_bruteforce(t: float, params: PhysParams) -> FlavorDensity:
    return FlavorDensity.from_density(reduced_density(build_state(t, params), FLAVOR_LABELS))


def survival_probability(t, params: PhysParams):
    """Electron-flavor survival probability with the chirality traced out."""
    return 1.0 - _s2(params) / 2 * G(t, params)


def survival_probability_standard(t, params: PhysParams):
    """The textbook two-flavor formula ``1 - sin^2(2 theta) sin^2(dE t / 2)``."""
    t = np.asarray(t, dtype=float)
    return 1.0 - _s2(params) * np.sin(params.delta_E * t / 2) ** 2


def flavor_purity_closed(t, params: PhysParams):
    g, h = G(t, params), H(t, params)
    return 1.0 + _s2(params) / 2 * (g * g + h * h - 2 * g)


def flavor_purity_nonrelativistic(t, params: PhysParams):
    """Leading behaviour of the flavor purity for ``p << m1, m2``."""
    t = np.asarray(t, dtype=float)
    return 1.0 - _s2(params) / 2 * np.sin(params.delta_E * t) ** 2


def _binary_entropy_array(x):
    x = np.asarray(x, dtype=float)
    out = np.zeros_like(x)
    for q in (x, 1.0 - x):
        mask = q > qm.DROP_TOL
        out[mask] -= q[mask] * np.log2(q[mask])
    return out


def flavor_entropy(t, params: PhysParams):
    """Von Neumann entropy of the flavor state from its purity.

    The two nonzero eigenvalues are ``(1 +- sqrt(2 Tr rho^2 - 1)) / 2``.
    """
    pur = np.asarray(flavor_purity_closed(t, params))
    if np.any(pur < 0.5 - 1e-12):
        raise ValueError("flavor purity below 1/2 cannot come from a two-level state")
    beta = 0.5 * (1.0 + np.sqrt(np.clip(2 * pur - 1, 0.0, 1.0)))
    out = _binary_entropy_array(beta)
    return out if out.ndim else float(out)


def default_t_max(params: PhysParams) -> float:
    """Two full flavor-oscillation periods."""
    if params.delta_E == 0:
        raise ValueError("degenerate masses have no flavor period; pass t_max explicitly")
    return 4 * np.pi / abs(params.delta_E)


def chiral_zoom_t_max(params: PhysParams) -> float:
    """Short window resolving about ten chiral oscillations of mass eigenstate 2."""
    return 20 * np.pi / params.E2


def time_grid(params: PhysParams, t_max: float | None = None, steps: int = 4000) -> np.ndarray:
    if steps < 2:
        raise ValueError("steps must be >= 2")
    return np.linspace(0.0, default_t_max(params) if t_max is None else t_max, steps)
