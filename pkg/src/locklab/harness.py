"""Sweep orchestration, power-law fitting, and flat-file persistence.

Ties the exact solver, the closed-form predictions, and the simulation
route together into per-N rows, fits log-log scaling laws, and extracts
the N^(-3/2) prefactor.
"""

from __future__ import annotations

import concurrent.futures
import csv
import json
import logging
import math
import os
from dataclasses import asdict, dataclass

import numpy as np

from . import asymptotics
from .dynamics import SimConfig, threshold_bisect
from .locking import FrequencySpec, Rule, locking_threshold_exact

log = logging.getLogger(__name__)

CSV_COLUMNS = ["n", "rule", "gamma_exact", "gamma_predicted", "gamma_simulated", "residual"]

# Simulation rows above this N are skipped unless the caller raises the cap.
DEFAULT_SIM_CAP = 256


@dataclass(frozen=True)
class SweepRow:
    n: int
    rule: str
    gamma_exact: float
    gamma_predicted: float
    gamma_simulated: float | None
    residual: float  # gamma_predicted - gamma_exact


@dataclass(frozen=True)
class ScalingFit:
    exponent: float
    log_prefactor: float
    r_squared: float
    n_min: int
    n_max: int


def _predicted(spec: FrequencySpec) -> float:
    if spec.rule in (Rule.MIDPOINT, Rule.ENDPOINT):
        return asymptotics.predict_gamma(spec.rule, spec.n).gamma_l
    if spec.rule is Rule.SIGMA_BETA:
        return asymptotics.predict_gamma_custom(spec.sigma, spec.beta, spec.n)
    return math.pi / 4.0  # zeta-corrected: pi/4 + O(N^-2), no closed correction


def worker_count() -> int:
    """Worker cap from LOCKLAB_THREADS, default machine parallelism."""
    env = os.environ.get("LOCKLAB_THREADS")
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


def _simulate_one(args) -> float:
    spec, config = args
    return threshold_bisect(spec, config).gamma_l


def sweep(rule: Rule, n_values, include_simulation: bool = False,
          config: SimConfig = SimConfig(), sigma: float | None = None,
          beta: float | None = None, sim_cap: int = DEFAULT_SIM_CAP) -> list[SweepRow]:
    """One SweepRow per N: exact threshold, prediction, optional simulation.

    A row whose computation fails is kept with NaN values rather than
    dropped.  Simulated thresholds are only attempted for n <= sim_cap.
    Rows are returned sorted by n, duplicates removed.
    """
    rule = Rule(rule)
    n_values = sorted(set(int(n) for n in n_values))
    if not n_values:
        raise ValueError("n_values must be nonempty")

    rows: list[SweepRow] = []
    sim_jobs: list[tuple[int, FrequencySpec]] = []
    for n in n_values:
        spec = FrequencySpec(rule, n, sigma=sigma, beta=beta)
        try:
            exact = locking_threshold_exact(spec).gamma_l
            predicted = _predicted(spec)
        except Exception:
            log.exception("sweep row failed for n=%d rule=%s", n, rule.value)
            rows.append(SweepRow(n, rule.value, math.nan, math.nan, None, math.nan))
            continue
        rows.append(SweepRow(n, rule.value, exact, predicted, None, predicted - exact))
        if include_simulation and n <= sim_cap:
            sim_jobs.append((len(rows) - 1, spec))

    if sim_jobs:
        workers = min(worker_count(), len(sim_jobs))
        if workers > 1:
            with concurrent.futures.ProcessPoolExecutor(max_workers=workers) as pool:
                sims = list(pool.map(_simulate_one, [(spec, config) for _, spec in sim_jobs]))
        else:
            sims = [_simulate_one((spec, config)) for _, spec in sim_jobs]
        for (idx, _), sim in zip(sim_jobs, sims):
            row = rows[idx]
            rows[idx] = SweepRow(row.n, row.rule, row.gamma_exact,
                                 row.gamma_predicted, sim, row.residual)
    return rows


def fit_power_law(pairs) -> ScalingFit:
    """Ordinary least squares on (log n, log |y|); the exponent is the slope.

    Pairs with |y| < 1e-14 (or non-finite) are excluded; at least 3
    usable pairs are required.
    """
    usable = [(n, abs(y)) for n, y in pairs if math.isfinite(y) and abs(y) >= 1e-14]
    skipped = len(list(pairs)) - len(usable)
    if skipped:
        log.info("fit_power_law: excluded %d near-zero/non-finite pairs", skipped)
    if len(usable) < 3:
        raise ValueError(f"need at least 3 usable pairs, got {len(usable)}")
    ns = np.array([n for n, _ in usable], dtype=float)
    ys = np.array([y for _, y in usable])
    x = np.log(ns)
    z = np.log(ys)
    slope, intercept = np.polyfit(x, z, 1)
    pred = slope * x + intercept
    ss_res = float(np.sum((z - pred) ** 2))
    ss_tot = float(np.sum((z - z.mean()) ** 2))
    r2 = 1.0 if ss_tot == 0.0 else 1.0 - ss_res / ss_tot
    return ScalingFit(exponent=float(slope), log_prefactor=float(intercept),
                      r_squared=r2, n_min=int(ns.min()), n_max=int(ns.max()))


def prefactor_extract(rule: Rule, n_values) -> list[tuple[int, float]]:
    """(gamma_exact - leading terms) * n^(3/2) per n; converges to
    4*zeta(-1/2, C1/2) for the midpoint and endpoint rules."""
    rule = Rule(rule)
    if rule not in (Rule.MIDPOINT, Rule.ENDPOINT):
        raise ValueError("prefactor extraction applies to midpoint/endpoint only")
    out = []
    for n in n_values:
        exact = locking_threshold_exact(FrequencySpec(rule, int(n))).gamma_l
        leading = math.pi / 4.0
        if rule is Rule.ENDPOINT:
            leading -= (math.pi / 4.0) / n
        out.append((int(n), (exact - leading) * n ** 1.5))
    return out


def _fmt(v: float | None) -> str:
    return "" if v is None else f"{v:.17g}"


def emit(payload, format: str, destination) -> None:
    """Write sweep rows or a scaling fit to a CSV or JSON flat file.

    `destination` is a path or an open text handle.  CSV rows use the
    fixed column order, 17 significant digits, empty field for a missing
    simulated value.
    """
    if format not in ("csv", "json"):
        raise ValueError(f"unknown format {format!r}")

    def _write(fh):
        if isinstance(payload, ScalingFit):
            if format == "json":
                json.dump(asdict(payload), fh, indent=2)
                fh.write("\n")
            else:
                writer = csv.writer(fh)
                writer.writerow(["exponent", "log_prefactor", "r_squared", "n_min", "n_max"])
                writer.writerow([_fmt(payload.exponent), _fmt(payload.log_prefactor),
                                 _fmt(payload.r_squared), payload.n_min, payload.n_max])
            return
        rows = list(payload)
        if format == "json":
            json.dump([asdict(r) for r in rows], fh, indent=2)
            fh.write("\n")
        else:
            writer = csv.writer(fh)
            writer.writerow(CSV_COLUMNS)
            for r in rows:
                writer.writerow([r.n, r.rule, _fmt(r.gamma_exact), _fmt(r.gamma_predicted),
                                 _fmt(r.gamma_simulated), _fmt(r.residual)])

    if hasattr(destination, "write"):
        _write(destination)
        return
    try:
        with open(destination, "w", newline="") as fh:
            _write(fh)
    except OSError as exc:
        raise OSError(f"cannot write {destination}: {exc}") from exc


def read_rows(path) -> list[SweepRow]:
    """Parse a sweep file (CSV or JSON, by content) back into rows."""
    try:
        with open(path, newline="") as fh:
            text = fh.read()
    except OSError as exc:
        raise OSError(f"cannot read {path}: {exc}") from exc
    if text.lstrip().startswith("["):
        return [SweepRow(**d) for d in json.loads(text)]
    rows = []
    for rec in csv.DictReader(text.splitlines()):
        rows.append(SweepRow(
            n=int(rec["n"]),
            rule=rec["rule"],
            gamma_exact=float(rec["gamma_exact"]),
            gamma_predicted=float(rec["gamma_predicted"]),
            gamma_simulated=float(rec["gamma_simulated"]) if rec["gamma_simulated"] else None,
            residual=float(rec["residual"]),
        ))
    return rows


def geometric_ladder(spec: str) -> list[int]:
    """Parse 'min:max:factor' into the N ladder {min*factor^k <= max}."""
    try:
        lo_s, hi_s, f_s = spec.split(":")
        lo, hi, factor = int(lo_s), int(hi_s), int(f_s)
    except ValueError as exc:
        raise ValueError(f"bad ladder spec {spec!r}, expected min:max:factor") from exc
    if lo < 2 or hi < lo or factor < 2:
        raise ValueError(f"bad ladder spec {spec!r}: need 2 <= min <= max, factor >= 2")
    out = []
    n = lo
    while n <= hi:
        out.append(n)
        n *= factor
    return out
