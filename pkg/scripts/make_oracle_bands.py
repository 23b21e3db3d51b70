"""Regenerate tests/data/oracle_bands.json.

Constant mechanism: in-degrees under Uniform(n+1, 1/2) are independent
Bin(n, 1/2), so E[gap] = E[max of n+1 iid Bin(n, 1/2)] - n/2 is computed
exactly with scipy. AVD has no closed form; its band comes from a dense-path
pre-run under a seed distinct from the acceptance seed.
"""

import json
import math
import os
import sys

import numpy as np
from scipy.stats import binom

from impartial.experiments import RunConfig, mc_additive
from impartial.mechanisms import AVDBeats, ConstantMechanism
from impartial.priors import Uniform

N_LIST = [256, 1024, 4096]
ACCEPTANCE_SEED = 20260601
ORACLE_SEED = 7919
TRIALS = 2000
WIDTH = 5.0


def exact_constant_gap(n: int) -> float:
    xs = np.arange(1, n + 1)
    e_max = float(np.sum(1.0 - binom.cdf(xs - 1, n, 0.5) ** (n + 1)))
    return e_max - n / 2


def main(out_path):
    bands = {"acceptance_seed": ACCEPTANCE_SEED, "oracle_seed": ORACLE_SEED, "trials": TRIALS,
             "width_sigmas": WIDTH, "constant": {}, "avd_beats": {}}
    for n in N_LIST:
        scale = math.sqrt(n * math.log(n))
        exact = exact_constant_gap(n)
        pre = mc_additive(RunConfig(Uniform(n + 1, 0.5), ConstantMechanism(), TRIALS, ORACLE_SEED))
        half = WIDTH * math.sqrt(2) * pre.stderr / scale
        bands["constant"][str(n)] = {
            "exact_mean_gap": exact, "oracle_run_mean_gap": pre.mean_gap, "oracle_stderr": pre.stderr,
            "ratio_low": exact / scale - half, "ratio_high": exact / scale + half}
        avd = mc_additive(RunConfig(Uniform(n + 1, 0.5), AVDBeats(), TRIALS, ORACLE_SEED,
                                    path="dense"))
        half = WIDTH * math.sqrt(2) * avd.stderr
        bands["avd_beats"][str(n)] = {
            "oracle_run_mean_gap": avd.mean_gap, "oracle_stderr": avd.stderr,
            "gap_low": max(0.0, avd.mean_gap - half), "gap_high": avd.mean_gap + half}
        print(n, bands["constant"][str(n)], bands["avd_beats"][str(n)], flush=True)
    with open(out_path, "w") as fh:
        json.dump(bands, fh, indent=2)
        fh.write("\n")


if __name__ == "__main__":
    here = os.path.dirname(os.path.abspath(__file__))
    main(sys.argv[1] if len(sys.argv) > 1 else os.path.join(here, "..", "tests", "data",
                                                            "oracle_bands.json"))
