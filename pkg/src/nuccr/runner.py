"""Scenario execution, CSV emission and the invariant verification suite."""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import asdict, dataclass, replace
from pathlib import Path

import numpy as np

from . import pair as pm
from . import single as sn
from .ccr import ccr_mixed, ccr_pure
from .dirac import PhysParams
from .tensor import reduced_density

CSV_RESIDUAL_TOL = 1e-8

SINGLE_QUANTITIES = ("purity", "ccr", "survival", "entropy")
PAIR_QUANTITIES = ("spin_ccr_global", "spin_ccr_parties", "purity", "amplitude")


class InvariantViolation(RuntimeError):
    """A computed identity failed beyond its tolerance."""


@dataclass(frozen=True)
class ScenarioConfig:
    model: str
    quantity: str
    p_over_m1: tuple[float, ...] = (0.1, 1.0, 10.0)
    sin2_theta: float = 0.306
    dm2_over_m1sq: float = 0.001
    ml_over_m1: float = 10.0
    t_max: float | None = None
    steps: int = 4000
    out_path: str | None = None
    precision: int = 12

    def __post_init__(self):
        allowed = {"single": SINGLE_QUANTITIES, "pair": PAIR_QUANTITIES, "verify": ("all",)}
        if self.model not in allowed:
            raise ValueError(f"unknown model {self.model!r}")
        if self.quantity not in allowed[self.model]:
            raise ValueError(f"quantity {self.quantity!r} not available for model {self.model!r}")
        object.__setattr__(self, "p_over_m1", tuple(float(p) for p in self.p_over_m1))
        if not self.p_over_m1 or any(not p >= 0 for p in self.p_over_m1):
            raise ValueError("p_over_m1 needs at least one value, all >= 0")
        if self.steps < 2:
            raise ValueError("steps must be >= 2")
        if self.t_max is not None and not self.t_max > 0:
            raise ValueError("t_max must be > 0")
        if not 0 <= self.sin2_theta < 1:
            raise ValueError("sin2_theta must lie in [0, 1)")
        if self.precision < 1:
            raise ValueError("precision must be >= 1")

    def params(self, p: float) -> PhysParams:
        return PhysParams.from_ratios(p, self.sin2_theta, self.dm2_over_m1sq, self.ml_over_m1)

    def times(self, p: float) -> np.ndarray:
        return sn.time_grid(self.params(p), self.t_max, self.steps)


@dataclass
class Table:
    columns: list[str]
    rows: np.ndarray
    p_over_m1: float | None = None
    comment: str = ""


def _check_residuals(res: np.ndarray, what: str):
    worst = float(np.max(np.abs(res)))
    if worst > CSV_RESIDUAL_TOL:
        raise InvariantViolation(f"{what}: CCR residual {worst:.3g} exceeds {CSV_RESIDUAL_TOL}")


def _single_table(cfg: ScenarioConfig, p: float) -> Table:
    params = cfg.params(p)
    ts = cfg.times(p)
    q = cfg.quantity
    if q == "purity":
        cols, data = ["t", "purity"], [sn.flavor_purity_closed(ts, params)]
    elif q == "survival":
        cols = ["t", "P_ee", "P_ee_standard"]
        data = [sn.survival_probability(ts, params), sn.survival_probability_standard(ts, params)]
    elif q == "entropy":
        cols, data = ["t", "entropy"], [sn.flavor_entropy(ts, params)]
    else:
        reports = [ccr_pure(sn.build_state(t, params), sn.FLAVOR_LABELS) for t in ts]
        cols = ["t", "coherence", "predictability", "entropy", "residual"]
        data = [np.array([r[c] for r in reports]) for c in cols[1:4]]
        data.append(np.array([r.residual for r in reports]))
        _check_residuals(data[-1], f"single ccr p/m1={p:g}")
    return Table(cols, np.column_stack([ts, *data]), p)


def _pair_table(cfg: ScenarioConfig, p: float) -> Table:
    params = cfg.params(p)
    ts = cfg.times(p)
    q = cfg.quantity
    if q == "purity":
        return Table(["t", "purity"], np.column_stack([ts, pm.spin_purity(ts, params)]), p)
    if q == "spin_ccr_global":
        reports = [ccr_pure(pm.evolve_pair_state(t, params), pm.SPIN_LABELS) for t in ts]
        cols = ["t", "coherence", "predictability", "entropy", "residual"]
    else:
        reports = [
            ccr_mixed(reduced_density(pm.evolve_pair_state(t, params), pm.SPIN_LABELS), "nubar_spin")
            for t in ts
        ]
        cols = ["t", "conditional_entropy", "predictability", "coherence", "mutual_information", "residual"]
    data = [np.array([r[c] for r in reports]) for c in cols[1:-1]]
    data.append(np.array([r.residual for r in reports]))
    _check_residuals(data[-1], f"pair {q} p/m1={p:g}")
    return Table(cols, np.column_stack([ts, *data]), p)


def _amplitude_table(cfg: ScenarioConfig) -> Table:
    ps = np.linspace(0.0, max(cfg.p_over_m1), cfg.steps)
    amp = [pm.entanglement_amplitude(cfg.params(p)) for p in ps]
    return Table(["p_over_m1", "amplitude"], np.column_stack([ps, amp]), comment="momentum in units of m1")


def run_scenario(cfg: ScenarioConfig) -> list[Table]:
    """Evaluate a scenario; one table per momentum (a single momentum sweep for ``amplitude``)."""
    if cfg.model == "pair" and cfg.quantity == "amplitude":
        return [_amplitude_table(cfg)]
    build = _single_table if cfg.model == "single" else _pair_table
    tables = []
    for p in cfg.p_over_m1:
        tab = build(cfg, p)
        tab.comment = f"time in units of 1/m1; p/m1={p:g}"
        tables.append(tab)
    return tables


def format_csv(table: Table, precision: int = 12) -> str:
    buf = io.StringIO()
    if table.comment:
        buf.write(f"# {table.comment}\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(table.columns)
    for row in table.rows:
        w.writerow([f"{float(x):.{precision}g}" for x in row])
    return buf.getvalue()


def output_paths(cfg: ScenarioConfig, tables: list[Table]) -> list[Path]:
    base = Path(cfg.out_path)
    if len(tables) == 1:
        return [base]
    return [base.with_name(f"{base.stem}_p{t.p_over_m1:g}{base.suffix}") for t in tables]


def write_outputs(cfg: ScenarioConfig, tables: list[Table]) -> list[Path]:
    """Write CSV files plus a JSON sidecar holding the resolved config."""
    paths = output_paths(cfg, tables)
    for tab, path in zip(tables, paths):
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(format_csv(tab, cfg.precision))
    sidecar = Path(cfg.out_path).with_suffix(".json")
    meta = asdict(cfg) | {"files": [str(p) for p in paths]}
    sidecar.write_text(json.dumps(meta, indent=2, sort_keys=True) + "\n", encoding="utf-8")
    return paths


# ---------------------------------------------------------------- verification


def _max(values) -> float:
    return float(np.max(np.abs(np.asarray(values))))


def _check(value: float, tol: float) -> dict:
    return {"max_residual": value, "tol": tol, "pass": bool(value < tol)}


def verify(cfg: ScenarioConfig, gamma_fn=pm.gamma_coefficients) -> dict:
    """Run the invariant suite over ``cfg``'s momentum and time grids.

    Returns a JSON-serializable summary.  ``gamma_fn`` replaces the pair-state
    coefficient function, which lets a corrupted coefficient set be injected.
    """
    checks: dict[str, dict] = {}

    def record(name, value, tol):
        prev = checks.get(name)
        value = max(value, prev["max_residual"]) if prev else value
        checks[name] = _check(value, tol)

    for p in cfg.p_over_m1:
        params = cfg.params(p)
        ts = cfg.times(p)
        states = [sn.build_state(t, params) for t in ts]
        brute = [sn.FlavorDensity.from_density(reduced_density(s, sn.FLAVOR_LABELS)) for s in states]
        closed = sn.flavor_density_closed(ts, params)
        b11 = np.array([b.rho11 for b in brute])
        b12 = np.array([b.rho12 for b in brute])
        record("flavor_density_closed_vs_brute", max(_max(closed.rho11 - b11), _max(closed.rho12 - b12)), 1e-12)
        record(
            "flavor_purity_closed_vs_brute",
            _max(sn.flavor_purity_closed(ts, params) - np.array([b.purity for b in brute])),
            1e-12,
        )
        record("survival_closed_vs_brute", _max(sn.survival_probability(ts, params) - b11), 1e-12)
        record("ccr_single_flavor", _max([ccr_pure(s, sn.FLAVOR_LABELS).residual for s in states]), 1e-10)
        spin_dev = max(
            _max(reduced_density(s, "spin").mat - np.diag([0.0, 1.0])) for s in states
        )
        record("single_spin_separable", spin_dev, 1e-12)

        pair_states = [pm.evolve_pair_state(t, params) for t in ts]
        record(
            "pair_gamma_vs_direct",
            max(_max(pm.pair_state_from_gammas(t, params, gamma_fn).amp - s.amp) for t, s in zip(ts, pair_states)),
            1e-12,
        )
        spins = [reduced_density(s, pm.SPIN_LABELS) for s in pair_states]
        sd = pm.spin_density_closed(ts, params)
        dev = 0.0
        for i, rho in enumerate(spins):
            ref = pm.SpinDensity(sd.A2, sd.B2, sd.rho12[i]).to_density().mat
            dev = max(dev, _max(rho.mat - ref))
        record("spin_density_closed_vs_brute", dev, 1e-12)
        diag = np.array([np.real(np.diag(r.mat)) for r in spins])
        record("pair_spin_diagonal_constant", _max(diag - diag[0]), 1e-12)
        record("ccr_pair_spins_global", _max([ccr_pure(s, pm.SPIN_LABELS).residual for s in pair_states]), 1e-10)
        record("ccr_pair_spins_parties", _max([ccr_mixed(r, "nubar_spin").residual for r in spins]), 1e-10)

    base = cfg.params(cfg.p_over_m1[0])

    rel = replace(base, p=1e3 * base.m1)
    t_rel = np.linspace(0.0, sn.default_t_max(rel), 200001)
    record(
        "relativistic_survival",
        _max(sn.survival_probability(t_rel, rel) - sn.survival_probability_standard(t_rel, rel)),
        1e-3,
    )
    record("relativistic_purity_deficit", _max(1.0 - sn.flavor_purity_closed(t_rel, rel)), 1e-3)

    nonrel = replace(base, p=1e-3 * base.m1)
    t_nr = np.linspace(0.0, sn.default_t_max(nonrel), 200001)
    record(
        "nonrelativistic_purity",
        _max(sn.flavor_purity_closed(t_nr, nonrel) - sn.flavor_purity_nonrelativistic(t_nr, nonrel)),
        1e-3,
    )

    degen = replace(base, p=1.0, m2=base.m1)
    t_dg = np.linspace(0.0, 200.0, 2001)
    record(
        "degenerate_masses",
        max(_max(sn.G(t_dg, degen)), _max(sn.H(t_dg, degen)), _max(sn.survival_probability(t_dg, degen) - 1)),
        1e-12,
    )

    record("amplitude_p0", abs(pm.entanglement_amplitude(replace(base, p=0.0)) - 1.0), 1e-12)
    big = replace(base, p=1e6 * base.m1)
    asym = pm.amplitude_asymptote(big)
    record("amplitude_asymptote_rel", abs(pm.entanglement_amplitude(big) - asym) / asym, 1e-3)

    t_rec = cfg.times(cfg.p_over_m1[0])[:: max(1, cfg.steps // 200)]
    report = {
        "checks": checks,
        "reconciliation": pm.reconciliation_report(base, t_rec),
        "config": asdict(cfg),
    }
    report["pass"] = all(c["pass"] for c in checks.values())
    return report


def _jsonable(obj):
    if isinstance(obj, dict):
        return {k: _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, (np.floating, np.integer)):
        return obj.item()
    if isinstance(obj, float) and not math.isfinite(obj):
        return str(obj)
    return obj


def dump_report(report: dict) -> str:
    return json.dumps(_jsonable(report), indent=2, sort_keys=True)
