"""Seeded Monte Carlo estimates of the expected additive gap.

Trial ``i`` of a run draws from its own generator seeded by
``SeedSequence(master_seed, spawn_key=(i,))`` and gaps are accumulated as
integers, so results do not depend on how trials are split across workers.
"""

from __future__ import annotations

import csv
import io
import math
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Optional, Union

import numpy as np
from sklearn.base import clone

from .mechanisms import AVDBeats, AVDTie, ConstantMechanism, SelectionMechanism, select_lazy
from .priors import BlockCorrelated, Duplicated, Popularity, Uniform, prior_from_dict, sample_lazy

LAZY_THRESHOLD_M = 4096


class FloorViolation(RuntimeError):
    """An AVD winner had lower in-degree than the default node in some trial."""


def trial_rng(master_seed: int, trial: int) -> np.random.Generator:
    ss = np.random.SeedSequence(master_seed, spawn_key=(trial,))
    return np.random.Generator(np.random.PCG64(ss))


@dataclass
class RunConfig:
    prior: object
    mechanism: SelectionMechanism
    trials: int
    master_seed: int
    workers: int = 1
    path: str = "auto"

    def __post_init__(self):
        if self.trials < 1:
            raise ValueError(f"trials must be >= 1, got {self.trials}")
        if not 0 <= self.master_seed < 2**64:
            raise ValueError("master_seed must be a 64-bit unsigned integer")
        if self.path not in ("auto", "dense", "lazy"):
            raise ValueError(f"unknown sampling path {self.path!r}")

    def to_dict(self) -> dict:
        return {
            "prior": self.prior.to_dict(),
            "mechanism": self.mechanism.to_dict(),
            "trials": self.trials,
            "seed": self.master_seed,
            "workers": self.workers,
            "path": self.path,
        }


@dataclass(frozen=True)
class MCEstimate:
    mean_gap: float
    stderr: float
    trials: int
    seed: int
    gap_histogram: dict
    gap_sum: int
    gap_sq_sum: int
    via_default: int = 0
    cases: dict = field(default_factory=dict)

    @property
    def via_default_fraction(self) -> float:
        return self.via_default / self.trials

    def to_dict(self) -> dict:
        return {
            "mean_gap": self.mean_gap,
            "stderr": self.stderr,
            "trials": self.trials,
            "seed": self.seed,
            "gap_histogram": {str(k): v for k, v in sorted(self.gap_histogram.items())},
            "via_default": self.via_default,
            "cases": dict(sorted(self.cases.items())),
        }


def _estimate(hist: Counter, trials: int, seed: int, via: int, cases: Counter) -> MCEstimate:
    s1 = sum(g * c for g, c in hist.items())
    s2 = sum(g * g * c for g, c in hist.items())
    if trials > 1:
        stderr = math.sqrt((trials * s2 - s1 * s1) / (trials * trials * (trials - 1)))
    else:
        stderr = 0.0
    return MCEstimate(s1 / trials, stderr, trials, seed, dict(sorted(hist.items())),
                      s1, s2, via, dict(cases))


def _use_lazy(prior, path: str) -> bool:
    if path == "dense":
        return False
    lazy_ok = isinstance(prior, (Uniform, Popularity))
    if path == "lazy":
        if not lazy_ok:
            raise ValueError("lazy sampling needs a Uniform or Popularity prior")
        return True
    return lazy_ok and prior.m > LAZY_THRESHOLD_M


def _case_label(prior, degrees) -> Optional[str]:
    if isinstance(prior, BlockCorrelated):
        approved = int(degrees[0] > 0) + int(degrees[1] > 0)
        return ("neither", "one", "both")[approved]
    return None


def _run_block(prior, mech, seed: int, start: int, stop: int, lazy: bool):
    hist, cases = Counter(), Counter()
    via = 0
    check_floor = isinstance(mech, AVDBeats)
    t = mech.resolved_default(prior.m) if mech.uses_default else None
    for i in range(start, stop):
        rng = trial_rng(seed, i)
        if lazy:
            s = sample_lazy(prior, rng)
            out = select_lazy(mech, s, rng)
            degrees = s.totals
        else:
            prof = prior.sample(rng)
            out = mech.select(prof)
            degrees = prof.in_degrees
        if check_floor and out.winner_degree < degrees[t]:
            raise FloorViolation(f"trial {i}: winner degree {out.winner_degree} below default "
                               f"degree {degrees[t]}")
        hist[out.gap] += 1
        via += out.via_default
        label = _case_label(prior, degrees)
        if label is not None:
            cases[label] += 1
    return hist, via, cases


def _blocks(trials: int, workers: int):
    n_blocks = max(1, min(trials, workers * 4))
    edges = np.linspace(0, trials, n_blocks + 1).astype(int)
    return [(int(a), int(b)) for a, b in zip(edges[:-1], edges[1:]) if b > a]


def mc_additive(cfg: RunConfig) -> MCEstimate:
    """Estimate the expected additive gap of ``cfg.mechanism`` under ``cfg.prior``."""
    mech = clone(cfg.mechanism).fit(cfg.prior)
    lazy = _use_lazy(cfg.prior, cfg.path)
    blocks = _blocks(cfg.trials, cfg.workers)
    if cfg.workers > 1:
        with ProcessPoolExecutor(max_workers=cfg.workers) as pool:
            futures = [pool.submit(_run_block, cfg.prior, mech, cfg.master_seed, a, b, lazy)
                       for a, b in blocks]
            parts = [f.result() for f in futures]
    else:
        parts = [_run_block(cfg.prior, mech, cfg.master_seed, a, b, lazy) for a, b in blocks]
    hist, cases, via = Counter(), Counter(), 0
    for h, v, c in parts:
        hist.update(h)
        cases.update(c)
        via += v
    return _estimate(hist, cfg.trials, cfg.master_seed, via, cases)


@dataclass(frozen=True)
class SweepRow:
    n: int
    trials: int
    mean_gap: float
    stderr: float

    @property
    def sqrt_nlogn(self) -> float:
        return math.sqrt(self.n * math.log(self.n))

    @property
    def log_n(self) -> float:
        return math.log(self.n)

    @property
    def log2_n(self) -> float:
        """Squared natural log, ``(ln n)**2``."""
        return math.log(self.n) ** 2

    @property
    def ratios(self) -> dict:
        return {
            "ratio_sqrt_nlogn": self.mean_gap / self.sqrt_nlogn,
            "ratio_log_n": self.mean_gap / self.log_n,
            "ratio_log2_n": self.mean_gap / self.log2_n,
        }

    def as_dict(self) -> dict:
        return {
            "n": self.n,
            "trials": self.trials,
            "mean_gap": self.mean_gap,
            "stderr": self.stderr,
            "sqrt_nlogn": self.sqrt_nlogn,
            "log_n": self.log_n,
            "log2_n": self.log2_n,
            **self.ratios,
        }


SWEEP_COLUMNS = ["n", "trials", "mean_gap", "stderr", "sqrt_nlogn", "log_n", "log2_n",
                 "ratio_sqrt_nlogn", "ratio_log_n", "ratio_log2_n"]


def prior_for_n(family: Union[dict, Callable], n: int):
    """Prior whose in-degrees are sums of ``n`` indicators (``n + 1`` nodes)."""
    if callable(family):
        return family(n)
    kind = family.get("kind")
    if kind == "uniform":
        return Uniform(n + 1, float(family["p"]))
    if kind == "duplicated":
        return Duplicated(prior_for_n(family["base"], n))
    if kind in ("popularity", "edge_matrix", "subset_table", "block_correlated"):
        raise ValueError(f"prior kind {kind!r} is not parameterised by n; use a fixed prior")
    raise ValueError(f"unknown prior family {kind!r}")


def sweep(prior_family, mechanism: SelectionMechanism, n_list, trials: int, master_seed: int,
          workers: int = 1, path: str = "auto") -> list[SweepRow]:
    n_list = [int(n) for n in n_list]
    if not n_list or n_list != sorted(n_list):
        raise ValueError("n_list must be non-empty and ascending")
    rows = []
    for n in n_list:
        est = mc_additive(RunConfig(prior_for_n(prior_family, n), clone(mechanism), trials,
                                    master_seed, workers, path))
        rows.append(SweepRow(n, est.trials, est.mean_gap, est.stderr))
    return rows


def sweep_csv(rows: list[SweepRow]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(SWEEP_COLUMNS)
    for r in rows:
        d = r.as_dict()
        w.writerow([repr(d[c]) if isinstance(d[c], float) else d[c] for c in SWEEP_COLUMNS])
    return buf.getvalue()


@dataclass(frozen=True)
class DuplicationResult:
    estimate: MCEstimate
    via_default_fraction: float
    constant_base: MCEstimate

    def to_dict(self) -> dict:
        return {"avd_duplicated": self.estimate.to_dict(),
                "via_default_fraction": self.via_default_fraction,
                "constant_base": self.constant_base.to_dict()}


def scenario_duplication(n: int, trials: int, seed: int, workers: int = 1) -> DuplicationResult:
    """AVD on the twinned uniform instance, paired with the constant mechanism on the base.

    Both runs share per-trial generators and the duplicated sampler draws the
    base profile first, so trial ``i`` sees the same base profile in each.
    """
    base = Uniform(n + 1, 0.5)
    dup = Duplicated(base)
    est = mc_additive(RunConfig(dup, AVDBeats(), trials, seed, workers, "dense"))
    const = mc_additive(RunConfig(base, ConstantMechanism(), trials, seed, workers, "dense"))
    return DuplicationResult(est, est.via_default_fraction, const)


@dataclass(frozen=True)
class Example1Result:
    estimate: MCEstimate
    variant: str
    default: int
    case_counts: dict

    def to_dict(self) -> dict:
        return {"variant": self.variant, "default": self.default,
                "estimate": self.estimate.to_dict(), "case_counts": self.case_counts}


def scenario_example1(k: int, variant: str = "avd_tie", default: Optional[int] = None,
                      trials: int = 10_000, seed: int = 0, workers: int = 1) -> Example1Result:
    """Correlated block instance; ``default=None`` uses the highest expected in-degree node."""
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    prior = BlockCorrelated(k)
    cls = {"avd_beats": AVDBeats, "avd_tie": AVDTie}[variant]
    mech = cls(default=default).fit(prior)
    est = mc_additive(RunConfig(prior, mech, trials, seed, workers))
    return Example1Result(est, variant, mech.default_, dict(sorted(est.cases.items())))


def config_from_dict(data: dict, base_dir: Optional[str] = None) -> RunConfig:
    from .mechanisms import mechanism_from_dict

    return RunConfig(prior_from_dict(data["prior"], base_dir), mechanism_from_dict(data["mechanism"]),
                     int(data["trials"]), int(data["seed"]), int(data.get("workers", 1)),
                     data.get("path", "auto"))
