"""Labeled multi-qubit state vectors and density matrices.

Labels map left to right onto the most to least significant bit of the
computational-basis index, e.g. for labels ``("a", "b")`` the amplitude of
``|a=1, b=0>`` sits at index ``0b10 = 2``.
"""

from __future__ import annotations

from collections.abc import Iterable, Sequence

import numpy as np

STATE_TOL = 1e-12
EIG_TOL = 1e-10


def _as_labels(labels) -> tuple[str, ...]:
    if isinstance(labels, str):
        labels = (labels,)
    labels = tuple(labels)
    if len(set(labels)) != len(labels):
        raise ValueError(f"duplicate labels in {labels}")
    return labels


def _frozen(a) -> np.ndarray:
    a = np.array(a, dtype=complex)
    a.setflags(write=False)
    return a


class LabeledState:
    """Pure state of ``n`` named qubits, stored as a length ``2**n`` vector."""

    __slots__ = ("labels", "amp")

    def __init__(self, labels: Sequence[str], amp):
        self.labels = _as_labels(labels)
        amp = _frozen(amp).reshape(-1)
        if amp.size != 2 ** len(self.labels):
            raise ValueError(
                f"{len(self.labels)} labels need {2 ** len(self.labels)} amplitudes, got {amp.size}"
            )
        self.amp = amp

    @property
    def n_qubits(self) -> int:
        return len(self.labels)

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.amp))

    def normalized(self) -> "LabeledState":
        n = self.norm
        if n == 0:
            raise ValueError("cannot normalize the zero vector")
        return LabeledState(self.labels, self.amp / n)

    def tensor(self) -> np.ndarray:
        """Amplitudes reshaped to one axis per qubit."""
        return self.amp.reshape((2,) * self.n_qubits)

    def __repr__(self):
        return f"LabeledState(labels={self.labels}, amp={self.amp!r})"


class DensityMatrix:
    """Hermitian, unit-trace matrix over named qubits.

    Hermiticity and trace are checked on construction.  Positivity is only
    checked by :meth:`validate` (it costs an eigendecomposition).
    """

    __slots__ = ("labels", "mat")

    def __init__(self, labels: Sequence[str], mat, *, check: bool = True):
        self.labels = _as_labels(labels)
        mat = _frozen(mat)
        d = 2 ** len(self.labels)
        if mat.shape != (d, d):
            raise ValueError(f"expected a {d}x{d} matrix, got shape {mat.shape}")
        self.mat = mat
        if check:
            herm = np.max(np.abs(mat - mat.conj().T))
            if herm > STATE_TOL:
                raise ValueError(f"matrix is not Hermitian (max deviation {herm:.3g})")
            tr = np.trace(mat)
            if abs(tr - 1) > STATE_TOL:
                raise ValueError(f"trace is {tr}, expected 1")

    @property
    def dim(self) -> int:
        return self.mat.shape[0]

    @property
    def n_qubits(self) -> int:
        return len(self.labels)

    def eigenvalues(self) -> np.ndarray:
        return np.linalg.eigvalsh(self.mat)

    def validate(self) -> "DensityMatrix":
        lo = self.eigenvalues().min()
        if lo < -EIG_TOL:
            raise ValueError(f"matrix is not positive semidefinite (min eigenvalue {lo:.3g})")
        return self

    def __repr__(self):
        return f"DensityMatrix(labels={self.labels}, mat=\n{self.mat!r})"


def qubit(label: str, amp) -> LabeledState:
    """Single-qubit state; an int is read as a computational basis bit."""
    if isinstance(amp, (int, np.integer)):
        if amp not in (0, 1):
            raise ValueError("basis bit must be 0 or 1")
        amp = np.eye(2)[amp]
    return LabeledState((label,), amp)


def kron(states: Iterable[LabeledState]) -> LabeledState:
    states = list(states)
    if not states:
        raise ValueError("need at least one state")
    labels: list[str] = []
    amp = np.ones(1, dtype=complex)
    for s in states:
        labels.extend(s.labels)
        amp = np.kron(amp, s.amp)
    return LabeledState(labels, amp)


def density(s: LabeledState) -> DensityMatrix:
    return DensityMatrix(s.labels, np.outer(s.amp, s.amp.conj()))


def _resolve(labels: tuple[str, ...], keep) -> list[int]:
    keep = _as_labels(keep)
    if not keep:
        raise ValueError("keep must name at least one subsystem")
    missing = [k for k in keep if k not in labels]
    if missing:
        raise ValueError(f"unknown labels {missing}; available {labels}")
    return [labels.index(k) for k in keep]


def partial_trace(rho: DensityMatrix, keep) -> DensityMatrix:
    """Trace out every subsystem not named in ``keep``.

    The result is ordered as ``keep`` is given, so ``keep`` may also permute.
    """
    keep_idx = _resolve(rho.labels, keep)
    n = rho.n_qubits
    rest = [i for i in range(n) if i not in keep_idx]
    dk, dr = 2 ** len(keep_idx), 2 ** len(rest)
    t = rho.mat.reshape((2,) * (2 * n))
    order = keep_idx + rest + [n + i for i in keep_idx] + [n + i for i in rest]
    t = t.transpose(order).reshape(dk, dr, dk, dr)
    reduced = np.trace(t, axis1=1, axis2=3)
    return DensityMatrix([rho.labels[i] for i in keep_idx], reduced)


def reduced_density(state: LabeledState, keep) -> DensityMatrix:
    """Reduced density matrix of a pure state without forming the full projector."""
    keep_idx = _resolve(state.labels, keep)
    rest = [i for i in range(state.n_qubits) if i not in keep_idx]
    m = state.tensor().transpose(keep_idx + rest).reshape(2 ** len(keep_idx), -1)
    return DensityMatrix([state.labels[i] for i in keep_idx], m @ m.conj().T)


def purity(rho: DensityMatrix) -> float:
    """``Tr rho^2``, computed as the squared Frobenius norm."""
    return float(np.sum(np.abs(rho.mat) ** 2))


def dephase(rho: DensityMatrix) -> DensityMatrix:
    """Drop all off-diagonal elements in the computational basis."""
    return DensityMatrix(rho.labels, np.diag(np.diag(rho.mat)))
