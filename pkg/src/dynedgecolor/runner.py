"""Drive an engine over a stream and collect metrics."""

from __future__ import annotations

import statistics
from dataclasses import dataclass, field
from typing import Optional

from .checks import IncrementalChecker, check_engine
from .engine import Engine, UpdateReport
from .errors import OracleMismatch
from .randomness import Params, derive_params
from .streams import Stream


@dataclass
class Metrics:
    seed: int
    params: Params
    updates: int = 0
    total_recourse: int = 0
    max_recourse: int = 0
    dirty_total: int = 0
    h_inserts: int = 0
    h_deletes: int = 0
    greedy_recolors: int = 0
    colors_used_peak: int = 0
    failed_peak: int = 0
    h_max_degree_peak: int = 0
    resamples: int = 0
    greedy_fallbacks: int = 0
    final_colors_used: int = 0
    final_edges: int = 0
    oracle_checks: int = 0
    recourse: list[int] = field(default_factory=list, repr=False)
    elapsed: list[int] = field(default_factory=list, repr=False)

    def add(self, eng: Engine, rep: UpdateReport) -> None:
        self.updates += 1
        self.total_recourse += rep.total_recourse
        self.max_recourse = max(self.max_recourse, rep.total_recourse)
        self.dirty_total += rep.dirty_tentative
        self.h_inserts += rep.h_inserts
        self.h_deletes += rep.h_deletes
        self.greedy_recolors += rep.greedy_recolors
        self.colors_used_peak = max(self.colors_used_peak, eng.colors_used())
        self.failed_peak = max(self.failed_peak, eng.num_failed())
        self.h_max_degree_peak = max(self.h_max_degree_peak, eng.h_max_degree())
        self.recourse.append(rep.total_recourse)
        self.elapsed.append(rep.elapsed_ns)

    def finish(self, eng: Engine) -> None:
        self.resamples = eng.resamples
        self.greedy_fallbacks = eng.greedy.fallbacks
        self.final_colors_used = eng.colors_used()
        self.final_edges = eng.graph.num_edges()

    def as_dict(self) -> dict:
        u = self.updates
        el = sorted(self.elapsed)

        def pct(q: float) -> float:
            if not el:
                return 0.0
            return float(el[min(len(el) - 1, int(q * len(el)))])

        return {
            "updates": u,
            "total_recourse": self.total_recourse,
            "mean_recourse": self.total_recourse / u if u else 0.0,
            "max_recourse": self.max_recourse,
            "mean_dirty_tentative": self.dirty_total / u if u else 0.0,
            "h_inserts": self.h_inserts,
            "h_deletes": self.h_deletes,
            "greedy_recolors": self.greedy_recolors,
            "colors_used_peak": self.colors_used_peak,
            "final_colors_used": self.final_colors_used,
            "final_edges": self.final_edges,
            "failed_peak": self.failed_peak,
            "h_max_degree_peak": self.h_max_degree_peak,
            "resamples": self.resamples,
            "greedy_fallbacks": self.greedy_fallbacks,
            "oracle_checks": self.oracle_checks,
            "seed": self.seed,
            "params": self.params.as_dict(),
            # wall-clock fields live here only, so diffs can drop this key
            "timing": {
                "ns_per_update_mean": statistics.fmean(el) if el else 0.0,
                "ns_per_update_p50": pct(0.50),
                "ns_per_update_p99": pct(0.99),
            },
        }


def run_stream(
    stream: Stream,
    epsilon: float,
    seed: int = 0,
    oracle_check: int = 0,
    full_check_every: int = 0,
    resample_every: Optional[int] = None,
    resample_threshold: Optional[float] = None,
    greedy_slack: float = 1.0,
    audit: bool = False,
) -> tuple[Engine, Metrics]:
    """Apply every update; with ``oracle_check=k`` verify after every k-th one.

    With ``k == 1`` the check is incremental (only the subgraph that moved is
    recomputed; see ``IncrementalChecker``), otherwise it is the full battery.

    Raises ``OracleMismatch`` with the update index and seed in its diagnostics.
    """
    params = derive_params(epsilon, stream.delta, greedy_slack)
    eng = Engine(
        stream.n,
        params,
        seed=seed,
        resample_every=resample_every,
        resample_threshold=resample_threshold,
    )
    metrics = Metrics(seed=seed, params=params)
    checker = IncrementalChecker(eng, full_every=full_check_every, audit=audit) if oracle_check else None
    for k, (op, u, v) in enumerate(stream.updates, 1):
        do_check = checker is not None and k % oracle_check == 0
        if do_check:
            checker.before()
        rep = eng.apply_update(op, u, v)
        metrics.add(eng, rep)
        if do_check:
            try:
                # a resample rewrites every subgraph; the incremental check
                # does not apply, so run the full battery
                if rep.resampled or oracle_check > 1:
                    check_engine(eng)
                else:
                    checker.after(rep.edge)
            except OracleMismatch as exc:
                exc.diagnostics.setdefault("update_index", k)
                exc.diagnostics.setdefault("seed", seed)
                exc.diagnostics.setdefault("update", f"{op} {u} {v}")
                raise
            metrics.oracle_checks += 1
    metrics.finish(eng)
    return eng, metrics
