"""Gamma matrices, free plane-wave bispinors and their time evolution.

Everything lives in the chiral (Weyl) representation with

    gamma5 = diag(I, -I)

so the upper 2-spinor block of a bispinor is right-handed and the lower block
is left-handed.  A bispinor is a plain complex ``ndarray`` of shape ``(4,)``
whose index is ``2 * chirality_bit + spin_bit`` with

    chirality_bit: 0 = right, 1 = left
    spin_bit:      0 = spin up along z, 1 = spin down along z

which makes a bispinor literally the tensor product chirality (x) spin.

Natural units are used throughout with the lightest neutrino mass set to one,
so momenta and masses are in units of ``m1`` and times in units of ``1/m1``.
All momenta point along the z axis.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

NORM_TOL = 1e-9

I2 = np.eye(2, dtype=complex)
I4 = np.eye(4, dtype=complex)
SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)
PAULI = (SIGMA_X, SIGMA_Y, SIGMA_Z)

_Z2 = np.zeros((2, 2), dtype=complex)

GAMMA0 = np.block([[_Z2, I2], [I2, _Z2]])
GAMMA = (GAMMA0,) + tuple(np.block([[_Z2, -s], [s, _Z2]]) for s in PAULI)
GAMMA5 = 1j * GAMMA[0] @ GAMMA[1] @ GAMMA[2] @ GAMMA[3]
METRIC = np.diag([1.0, -1.0, -1.0, -1.0])

# spin projection along z, acting on a full bispinor
SPIN_Z = np.kron(I2, SIGMA_Z)

for _m in (*GAMMA, GAMMA5, SPIN_Z):
    _m.setflags(write=False)


class Handedness(enum.IntEnum):
    """Chirality, valued by the gamma5 eigenvalue."""

    RIGHT = 1
    LEFT = -1

    @property
    def bit(self) -> int:
        return 0 if self is Handedness.RIGHT else 1


SPECIES = ("neutrino", "antineutrino", "lepton")


@dataclass(frozen=True)
class PhysParams:
    """Kinematic and mixing inputs of both models.

    ``m1``/``m2`` are the two neutrino mass eigenvalues, ``m_l`` the charged
    lepton mass (only used by the pair model) and ``theta`` the mixing angle.
    """

    p: float
    m1: float = 1.0
    m2: float = math.sqrt(1.001)
    m_l: float = 10.0
    theta: float = math.asin(math.sqrt(0.306))

    def __post_init__(self):
        if not self.p >= 0:
            raise ValueError(f"momentum must be >= 0, got {self.p}")
        for name in ("m1", "m2", "m_l"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be > 0")
        if not 0 <= self.theta < math.pi / 2:
            raise ValueError("theta must lie in [0, pi/2)")

    @classmethod
    def from_ratios(
        cls,
        p_over_m1: float,
        sin2_theta: float = 0.306,
        dm2_over_m1sq: float = 0.001,
        ml_over_m1: float = 10.0,
    ) -> "PhysParams":
        """Build parameters from dimensionless inputs with ``m1 = 1``."""
        if not 0 <= sin2_theta < 1:
            raise ValueError("sin^2(theta) must lie in [0, 1)")
        if not dm2_over_m1sq > -1:
            raise ValueError("m2^2 must stay positive")
        return cls(
            p=float(p_over_m1),
            m1=1.0,
            m2=math.sqrt(1.0 + dm2_over_m1sq),
            m_l=float(ml_over_m1),
            theta=math.asin(math.sqrt(sin2_theta)),
        )

    def mass(self, i) -> float:
        """Mass by index: 1, 2 for the neutrino eigenstates, ``"l"`` for the lepton."""
        if i == 1:
            return self.m1
        if i == 2:
            return self.m2
        if i == "l":
            return self.m_l
        raise ValueError(f"unknown mass index {i!r}")

    def energy(self, i) -> float:
        return energy(self.p, self.mass(i))

    @property
    def E1(self) -> float:
        return self.energy(1)

    @property
    def E2(self) -> float:
        return self.energy(2)

    @property
    def E_l(self) -> float:
        return self.energy("l")

    @property
    def delta_E(self) -> float:
        return self.E2 - self.E1


def energy(p: float, m: float) -> float:
    """Relativistic energy ``sqrt(p^2 + m^2)``."""
    if p < 0 or m < 0:
        raise ValueError("momentum and mass must be non-negative")
    if p == 0 and m == 0:
        raise ValueError("momentum and mass cannot both vanish")
    return math.hypot(p, m)


def kinematic_factors(p: float, m: float) -> tuple[float, float, float]:
    """Return ``(f_plus, f_minus, N)`` for momentum component ``p`` and mass ``m``.

    ``f_pm = 1 +- p / (E + m)`` and ``N = sqrt((E + m) / (4 E))``.  ``p`` may be
    negative (momentum along -z), which swaps the two ``f`` factors.
    """
    if not m > 0:
        raise ValueError(f"mass must be > 0, got {m}")
    E = energy(abs(p), m)
    big = 1.0 + abs(p) / (E + m)
    # 1 - |p|/(E+m) without cancellation, using E - |p| = m^2 / (E + |p|)
    small = (m + m * m / (E + abs(p))) / (E + m)
    fp, fm = (big, small) if p >= 0 else (small, big)
    return fp, fm, math.sqrt((E + m) / (4.0 * E))


def _spin_ket(s: int) -> np.ndarray:
    if s == 1:
        return np.array([1.0, 0.0], dtype=complex)
    if s == -1:
        return np.array([0.0, 1.0], dtype=complex)
    raise ValueError(f"spin must be +1 or -1, got {s!r}")


def basis_spinor(kind: str, spin: int, p: float, m: float) -> np.ndarray:
    """Plane-wave bispinor ``u_s(p, m)`` or ``v_s(p, m)``.

    Parameters
    ----------
    kind : {"u", "v"}
        Positive-energy (``u``) or antiparticle (``v``) spinor.
    spin : {+1, -1}
        Spin projection along z.
    p : float
        Signed momentum along z.
    m : float
        Mass.

    Returns
    -------
    numpy.ndarray
        Normalized 4-component bispinor.  ``u_s(p)`` is the ``+E`` eigenvector
        of ``dirac_hamiltonian(p, m)`` and ``v_s(-p)`` the ``-E`` eigenvector.
    """
    f_plus, f_minus, N = kinematic_factors(p, m)
    f_same, f_other = (f_plus, f_minus) if spin == 1 else (f_minus, f_plus)
    ket = _spin_ket(spin)
    if kind == "u":
        lower = f_other
    elif kind == "v":
        lower = -f_other
    else:
        raise ValueError(f"kind must be 'u' or 'v', got {kind!r}")
    return N * np.concatenate([f_same * ket, lower * ket])


def chirality_projector(h: Handedness) -> np.ndarray:
    return 0.5 * (I4 + Handedness(h).value * GAMMA5)


def chirality_expectation(b: np.ndarray) -> float:
    """``<b|gamma5|b>``, i.e. P(right) - P(left)."""
    b = np.asarray(b)
    norm = np.linalg.norm(b)
    if abs(norm - 1.0) > NORM_TOL:
        raise ValueError(f"bispinor is not normalized (norm={norm})")
    return float(np.real(np.vdot(b, GAMMA5 @ b)))


def dirac_hamiltonian(p: float, m: float) -> np.ndarray:
    """Free Dirac Hamiltonian ``alpha_z p + beta m`` for momentum ``p`` along z."""
    return GAMMA0 @ GAMMA[3] * p + GAMMA0 * m


def evolution_operator(p: float, m: float, t) -> np.ndarray:
    """``exp(-i H t)`` via ``H^2 = E^2``; ``t`` may be an array (leading axes)."""
    E = energy(abs(p), m)
    H = dirac_hamiltonian(p, m)
    t = np.asarray(t, dtype=float)[..., None, None]
    return np.cos(E * t) * I4 - 1j * np.sin(E * t) / E * H


def _species_setup(species: str, params: PhysParams, mass_index) -> tuple[float, float, Handedness]:
    if species == "neutrino":
        return params.p, params.mass(mass_index), Handedness.LEFT
    if species == "antineutrino":
        return params.p, params.mass(mass_index), Handedness.RIGHT
    if species == "lepton":
        return -params.p, params.m_l, Handedness.LEFT
    raise ValueError(f"unknown species {species!r}; expected one of {SPECIES}")


def chiral_state(h: Handedness, spin: int) -> np.ndarray:
    """Bispinor with definite chirality and spin-z."""
    return np.kron(np.eye(2)[Handedness(h).bit], _spin_ket(spin))


def evolve_mass_bispinor(
    species: str, spin: int, params: PhysParams, t, mass_index: int = 1
) -> np.ndarray:
    """Evolve a chirality-projected plane-wave bispinor of definite mass.

    The initial state has the chirality fixed by weak production (left for the
    neutrino and lepton, right for the antineutrino) and spin-z ``spin``.  The
    neutrino and antineutrino move along +z, the lepton along -z.  It is split
    into its ``u_s(k)`` and ``v_s(-k)`` components, which then pick up the
    phases ``exp(-iEt)`` and ``exp(+iEt)`` respectively.

    ``t`` may be a scalar or an array; the result has shape ``t.shape + (4,)``.
    ``mass_index`` selects the neutrino eigenstate and is ignored for leptons.
    """
    k, m, handed = _species_setup(species, params, mass_index)
    t = np.asarray(t, dtype=float)
    if np.any(t < 0):
        raise ValueError("time must be >= 0")
    psi0 = chiral_state(handed, spin)
    u = basis_spinor("u", spin, k, m)
    v = basis_spinor("v", spin, -k, m)
    E = energy(abs(k), m)
    cu = np.vdot(u, psi0)
    cv = np.vdot(v, psi0)
    phase = np.exp(-1j * E * t)[..., None]
    return phase * cu * u + np.conj(phase) * cv * v
