"""Acceptance criteria 1-10, one test each; every test prints a PASS/FAIL line."""

import json
import math
import os
import time

import pytest

from impartial.bounds import (
    event_d_lower_bound,
    event_d_target,
    lb_thresholds,
    two_node_analysis,
    verify_event_d,
    verify_section5_lemmas,
    verify_tails,
    verify_technical_lemma,
    verify_zone_lemmas,
)
from impartial.experiments import scenario_duplication, scenario_example1, sweep, sweep_csv
from impartial.impartiality import check_exhaustive, check_structure
from impartial.mechanisms import ApprovalVoting, AVDBeats, AVDTie, ConstantMechanism

BANDS_PATH = os.path.join(os.path.dirname(__file__), "data", "oracle_bands.json")
with open(BANDS_PATH) as fh:
    BANDS = json.load(fh)

N_LIST = [256, 1024, 4096]
TRIALS = BANDS["trials"]
SEED = BANDS["acceptance_seed"]
UNIFORM_HALF = {"kind": "uniform", "p": 0.5}


@pytest.fixture
def report(capsys):
    def emit(number, ok, detail):
        with capsys.disabled():
            print(f"\nCRITERION {number}: {'PASS' if ok else 'FAIL'} | {detail}")
    return emit


@pytest.fixture(scope="module")
def constant_sweep():
    t0 = time.perf_counter()
    rows = sweep(UNIFORM_HALF, ConstantMechanism(), N_LIST, TRIALS, SEED, workers=1)
    return rows, time.perf_counter() - t0


@pytest.fixture(scope="module")
def avd_sweep():
    t0 = time.perf_counter()
    rows = sweep(UNIFORM_HALF, AVDBeats(), N_LIST, TRIALS, SEED, workers=1)
    return rows, time.perf_counter() - t0


def test_criterion_1_exhaustive_impartiality(report):
    t0 = time.perf_counter()
    passes = [check_exhaustive(AVDBeats(default=t), 4).passed for t in range(4)]
    passes += [check_exhaustive(ConstantMechanism(default=t), 4).passed for t in range(4)]
    failures = {}
    for mech in (ApprovalVoting(), AVDTie(default=0)):
        rep = check_exhaustive(mech, 4)
        failures[mech.kind] = (not rep.passed) and rep.counterexample.verify(mech)
    elapsed = time.perf_counter() - t0
    ok = all(passes) and all(failures.values()) and elapsed < 60
    report(1, ok, f"avd/constant pass={all(passes)} foils refuted={failures} time={elapsed:.1f}s")
    assert ok


def test_criterion_2_mechanism_structure(report):
    t0 = time.perf_counter()
    r4 = check_structure(4)
    t4 = time.perf_counter()
    r5 = check_structure(5)
    t5 = time.perf_counter() - t4
    bad = {k: r4["violations"][k] + r5["violations"][k] for k in r4["violations"]}
    ok = not any(bad.values()) and t5 < 900
    report(2, ok, f"violations={sum(bad.values())} over {r4['profiles']}+{r5['profiles']} profiles "
                  f"x all defaults; m=4 {t4 - t0:.1f}s, m=5 {t5:.1f}s")
    assert ok, bad


def test_criterion_3_tail_sandwich(report):
    t0 = time.perf_counter()
    rep = verify_tails([100, 1000, 10_000], [0.1, 0.2, 0.5, 0.8])
    elapsed = time.perf_counter() - t0
    families = {"hoeffding_two_sided", "reverse_chernoff_tail", "inverse_chernoff_tail"}
    chernoff = {"upper_okamoto", "upper_chernoff", "lower_okamoto", "lower_chernoff"} & rep.ids()
    ok = rep.holds and families <= rep.ids() and len(chernoff) == 4 and elapsed < 300
    report(3, ok, f"points={rep.points_checked} violations={len(rep.violations)} "
                  f"families={sorted(rep.ids())} time={elapsed:.1f}s")
    assert ok


def test_criterion_4_zone_and_technical_lemmas(report):
    n = 2**18
    t0 = time.perf_counter()
    zones = verify_zone_lemmas(n, 0.5, 0.5)
    tech = verify_technical_lemma(n, 0.5, 0.5)
    elapsed = time.perf_counter() - t0
    need = {"zone_width_upper", "zone_width_lower", "mu_ratio_lower", "xi_ratio_upper"}
    ells = {b.params["ell"] for b in tech.blocks}
    ok = (zones.holds and tech.holds and need <= zones.ids() and ells == {0, 1, 2}
          and not zones.skipped and not tech.skipped and elapsed < 600)
    report(4, ok, f"zone points={zones.points_checked} technical points={tech.points_checked} "
                  f"violations={len(zones.violations) + len(tech.violations)} {zones.notes} "
                  f"time={elapsed:.1f}s")
    assert ok


def test_criterion_5_lower_bound_lemmas(report):
    t0 = time.perf_counter()
    details, ok = [], True
    for n in (10_000, 100_000):
        rep = verify_section5_lemmas(n)
        rep.extend(verify_event_d(n))
        L, U = lb_thresholds(n)
        ev, target = event_d_lower_bound(n), event_d_target(n)
        ln = math.log(n)
        placed = (L >= n / 2 + math.sqrt(n * ln / 6) and U <= n / 2 + math.sqrt(n * ln)
                  and U - L >= math.sqrt(n / ln) / 6)
        ok &= rep.holds and placed and ev >= target and not rep.skipped
        details.append(f"n={n}: L={L} U={U} points={rep.points_checked} "
                       f"violations={len(rep.violations)} eventD={ev:.4g}>={target:.3g}")
    elapsed = time.perf_counter() - t0
    ok &= elapsed < 600
    report(5, ok, "; ".join(details) + f" time={elapsed:.1f}s")
    assert ok


def test_criterion_6_constant_scaling(report, constant_sweep):
    rows, elapsed = constant_sweep
    ratios = [r.ratios["ratio_sqrt_nlogn"] for r in rows]
    in_band = [BANDS["constant"][str(r.n)]["ratio_low"] <= q <= BANDS["constant"][str(r.n)]["ratio_high"]
               for r, q in zip(rows, ratios)]
    envelope = all(1 / 6 <= q <= 1 for q in ratios)
    drift = [abs(b / a - 1) for a, b in zip(ratios, ratios[1:])]
    ok = all(in_band) and envelope and all(d < 0.25 for d in drift) and elapsed < 600
    report(6, ok, f"ratios={[round(q, 4) for q in ratios]} band={in_band} "
                  f"drift={[round(d, 3) for d in drift]} time={elapsed:.1f}s")
    assert ok


def test_criterion_7_avd_dominance(report, constant_sweep, avd_sweep):
    const, _ = constant_sweep
    avd, elapsed = avd_sweep
    by_n = {r.n: r for r in avd}
    c4096 = next(r for r in const if r.n == 4096)
    dominance = by_n[4096].mean_gap <= c4096.mean_gap / 5
    growth = by_n[4096].mean_gap / by_n[1024].mean_gap
    floor = all(r.mean_gap >= 0.01 * math.log(r.n) for r in avd)
    in_band = [BANDS["avd_beats"][str(r.n)]["gap_low"] <= r.mean_gap <= BANDS["avd_beats"][str(r.n)]["gap_high"]
               for r in avd]
    never_worse = all(a.mean_gap <= c.mean_gap + 3 * math.hypot(a.stderr, c.stderr)
                      for a, c in zip(avd, const))
    ok = dominance and growth <= 2 and floor and all(in_band) and never_worse
    report(7, ok, f"avd gaps={[r.mean_gap for r in avd]} constant@4096={c4096.mean_gap} "
                  f"growth 4096/1024={growth:.3f} band={in_band} time={elapsed:.1f}s")
    assert ok


def test_criterion_8_duplication(report):
    res = scenario_duplication(101, 10_000, SEED)
    est, base = res.estimate, res.constant_base
    sigma = math.hypot(est.stderr, base.stderr)
    ok = res.via_default_fraction == 1.0 and abs(est.mean_gap - base.mean_gap) <= 3 * sigma
    report(8, ok, f"via_default={res.via_default_fraction} avd gap={est.mean_gap} "
                  f"paired constant gap={base.mean_gap} sigma={sigma:.3f}")
    assert ok


def test_criterion_9_two_node_and_block_instance(report):
    ratios = [two_node_analysis(p, AVDBeats(default=0)).ratio for p in (0.1, 0.01, 0.001)]
    exact = ratios[0] == 1.9
    monotone = ratios[0] < ratios[1] < ratios[2] < 2
    tie = scenario_example1(50, "avd_tie", default=2, trials=10_000, seed=SEED)
    near_k = abs(tie.estimate.mean_gap - 50) <= 3 * tie.estimate.stderr
    beats = scenario_example1(50, "avd_beats", default=None, trials=10_000, seed=SEED)
    ok = exact and monotone and near_k
    report(9, ok, f"two-node ratios={ratios}; AvdTie forced default gap={tie.estimate.mean_gap} "
                  f"+/- {tie.estimate.stderr:.3f} cases={tie.case_counts}; "
                  f"AvdBeats max-expected default (reported finding) gap={beats.estimate.mean_gap} "
                  f"cases={beats.case_counts}")
    assert ok


def test_criterion_10_determinism(report, constant_sweep):
    rows, _ = constant_sweep
    serial = sweep_csv(rows)
    parallel = sweep_csv(sweep(UNIFORM_HALF, ConstantMechanism(), N_LIST, TRIALS, SEED, workers=8))
    ok = serial.encode() == parallel.encode()
    report(10, ok, f"csv bytes identical={ok} ({len(serial)} bytes)")
    assert ok
