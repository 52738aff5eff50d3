"""Complete complementarity relations for arbitrary label partitions."""

from __future__ import annotations

import math
from dataclasses import dataclass

from . import measures as qm
from .tensor import DensityMatrix, LabeledState, _as_labels, partial_trace, reduced_density

RESIDUAL_TOL = 1e-10


@dataclass(frozen=True)
class CCRReport:
    """Components of one complementarity identity and how far it is from closing."""

    kind: str
    components: dict[str, float]
    budget: float
    residual: float

    def __getitem__(self, name: str) -> float:
        return self.components[name]

    def ok(self, tol: float = RESIDUAL_TOL) -> bool:
        return abs(self.residual) < tol


def _check_partition(labels: tuple[str, ...], k) -> tuple[str, ...]:
    k = _as_labels(k)
    if not k:
        raise ValueError("subsystem k is empty")
    if any(x not in labels for x in k):
        raise ValueError(f"subsystem {k} is not a subset of {labels}")
    if set(k) == set(labels):
        raise ValueError("subsystem k must not be the whole system")
    return k


def _additive(kind: str, components: dict[str, float], budget: float) -> CCRReport:
    return CCRReport(kind, components, budget, sum(components.values()) - budget)


def ccr_pure(state: LabeledState, k) -> CCRReport:
    """Coherence + predictability + entanglement entropy of ``k`` for a pure global state."""
    k = _check_partition(state.labels, k)
    if abs(state.norm - 1) > 1e-9:
        raise ValueError("global state must be normalized")
    rho_k = reduced_density(state, k)
    return _additive(
        "pure_entropic",
        {
            "coherence": qm.relative_entropy_coherence(rho_k),
            "predictability": qm.predictability(rho_k),
            "entropy": qm.von_neumann_entropy(rho_k),
        },
        math.log2(rho_k.dim),
    )


def ccr_mixed(rho: DensityMatrix, k) -> CCRReport:
    """Mixed-state relation: conditional entropy, predictability, coherence, mutual information."""
    k = _check_partition(rho.labels, k)
    rest = tuple(x for x in rho.labels if x not in k)
    rho_k = partial_trace(rho, k)
    s_all = qm.von_neumann_entropy(rho)
    s_k = qm.von_neumann_entropy(rho_k)
    s_b = qm.von_neumann_entropy(partial_trace(rho, rest))
    return _additive(
        "mixed",
        {
            "conditional_entropy": s_all - s_b,
            "predictability": qm.predictability(rho_k),
            "coherence": qm.relative_entropy_coherence(rho_k),
            "mutual_information": s_k + s_b - s_all,
        },
        math.log2(rho_k.dim),
    )


def ccr_qubit(state: LabeledState, k: str) -> CCRReport:
    """Quadratic relation ``P^2 + V^2 + C^2 = 1`` for a pure two-qubit state."""
    P, V, C, residual = qm.qubit_pv(state, k)
    return CCRReport("qubit_pure", {"P": P, "V": V, "C": C}, 1.0, residual)
