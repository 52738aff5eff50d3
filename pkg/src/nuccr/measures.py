"""Entropic and two-qubit quantum-information measures.

All entropies are in bits.  Functions accepting a density matrix take a
:class:`~nuccr.tensor.DensityMatrix`; label subsets name the subsystem ``k``,
the complement being ``B``.
"""

from __future__ import annotations

import math

import numpy as np

from .dirac import SIGMA_Y
from .tensor import EIG_TOL, DensityMatrix, LabeledState, _as_labels, density, partial_trace

DROP_TOL = 1e-12
HERM_TOL = 1e-12

_YY = np.kron(SIGMA_Y, SIGMA_Y)


def _spectrum(mat: np.ndarray) -> np.ndarray:
    mat = np.asarray(mat)
    if np.max(np.abs(mat - mat.conj().T)) > HERM_TOL:
        raise ValueError("density matrix is not Hermitian")
    w = np.linalg.eigvalsh(mat)
    if w.min() < -EIG_TOL:
        raise ValueError(f"negative eigenvalue {w.min():.3g}; input is not a valid state")
    return np.clip(w, 0.0, None)


def shannon_entropy(probs) -> float:
    p = np.asarray(probs, dtype=float)
    p = p[p > DROP_TOL]
    return max(0.0, float(-np.sum(p * np.log2(p))))


def binary_entropy(x) -> float:
    return shannon_entropy([x, 1.0 - x])


def von_neumann_entropy(rho: DensityMatrix) -> float:
    """``-Tr rho log2 rho``; eigenvalues below 1e-12 count as zero."""
    return shannon_entropy(_spectrum(rho.mat))


def diagonal_entropy(rho: DensityMatrix) -> float:
    """Entropy of the dephased state, i.e. Shannon entropy of the populations."""
    return shannon_entropy(np.real(np.diag(rho.mat)))


def relative_entropy_coherence(rho: DensityMatrix) -> float:
    """``S(rho_diag) - S(rho)``, clamped at zero against round-off."""
    return max(0.0, diagonal_entropy(rho) - von_neumann_entropy(rho))


def predictability(rho: DensityMatrix, d: int | None = None) -> float:
    """``log2 d - S(rho_diag)``.

    This uses the entropy of the dephased state rather than of ``rho`` itself;
    only then do the entropic complementarity relations close as identities.
    """
    d = rho.dim if d is None else d
    return max(0.0, math.log2(d) - diagonal_entropy(rho))


def _split(rho: DensityMatrix, k) -> tuple[tuple[str, ...], tuple[str, ...]]:
    k = _as_labels(k)
    if not k or any(x not in rho.labels for x in k):
        raise ValueError(f"subsystem {k} is not a subset of {rho.labels}")
    rest = tuple(x for x in rho.labels if x not in k)
    if not rest:
        raise ValueError("subsystem k must leave a non-empty complement B")
    return k, rest


def mutual_information(rho: DensityMatrix, k) -> float:
    """``S(rho_k) + S(rho_B) - S(rho)``."""
    k, rest = _split(rho, k)
    return (
        von_neumann_entropy(partial_trace(rho, k))
        + von_neumann_entropy(partial_trace(rho, rest))
        - von_neumann_entropy(rho)
    )


def conditional_entropy(rho: DensityMatrix, k) -> float:
    """``S(rho) - S(rho_B)``; negative values witness entanglement."""
    _, rest = _split(rho, k)
    return von_neumann_entropy(rho) - von_neumann_entropy(partial_trace(rho, rest))


def concurrence(rho: DensityMatrix) -> float:
    """Wootters concurrence of a two-qubit state.

    Writing ``rho = W W^dagger`` the square roots of the eigenvalues of
    ``rho (sy x sy) rho* (sy x sy)`` are the singular values of
    ``W^T (sy x sy) W``.  Working with those avoids taking square roots of
    round-off sized eigenvalues.
    """
    if rho.dim != 4:
        raise ValueError(f"concurrence needs a two-qubit state, got dimension {rho.dim}")
    mat = np.asarray(rho.mat)
    w, v = np.linalg.eigh(mat)
    if w.min() < -EIG_TOL:
        raise ValueError("input is not positive semidefinite")
    W = v * np.sqrt(np.clip(w, 0.0, None))
    lam = np.linalg.svd(W.T @ _YY @ W, compute_uv=False)
    return float(min(1.0, max(0.0, lam[0] - lam[1] - lam[2] - lam[3])))


def entanglement_of_formation(C: float) -> float:
    if not -1e-12 <= C <= 1 + 1e-12:
        raise ValueError(f"concurrence must lie in [0, 1], got {C}")
    C = min(max(C, 0.0), 1.0)
    return binary_entropy(0.5 * (1.0 + math.sqrt(1.0 - C * C)))


def qubit_pv(state: LabeledState, k: str) -> tuple[float, float, float, float]:
    """Predictability, visibility and concurrence of qubit ``k`` in a pure two-qubit state.

    Returns ``(P, V, C, residual)`` with ``residual = P^2 + V^2 + C^2 - 1``.
    """
    if state.n_qubits != 2:
        raise ValueError("qubit_pv needs a two-qubit state")
    rho = density(state)
    pur = float(np.sum(np.abs(rho.mat) ** 2))
    if pur < 1 - 1e-9:
        raise ValueError(f"state is not pure (purity {pur})")
    r = partial_trace(rho, k).mat
    P = abs(float(np.real(r[0, 0] - r[1, 1])))
    V = 2.0 * abs(r[0, 1])
    C = concurrence(rho)
    return P, V, C, P * P + V * V + C * C - 1.0
