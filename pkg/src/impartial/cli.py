"""Command-line entry point.

Exit codes: 0 on success, 2 when a verification fails (bound violation,
impartiality counterexample, floor violation), 1 on usage errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Optional

from . import bounds, experiments, impartiality
from .mechanisms import AVDBeats, mechanism_from_dict
from .priors import prior_from_dict
from .validation import check_random_state

EXIT_OK, EXIT_USAGE, EXIT_FAIL = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _load_json(text: str, what: str) -> tuple[dict, Optional[str]]:
    """Parse inline JSON, or read it from a file when ``text`` is a path."""
    base_dir = None
    if not text.lstrip().startswith("{"):
        try:
            with open(text) as fh:
                text_in = fh.read()
        except OSError as exc:
            raise UsageError(f"cannot read {what} file {text!r}: {exc}") from exc
        base_dir = os.path.dirname(os.path.abspath(text))
        text = text_in
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"malformed {what} JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise UsageError(f"{what} JSON must be an object")
    return data, base_dir


def _prior(text: str):
    data, base_dir = _load_json(text, "prior")
    return prior_from_dict(data, base_dir)


def _mechanism(text: str, default: Optional[int] = None):
    data, _ = _load_json(text, "mechanism")
    if default is not None:
        data = {**data, "default": default}
    return mechanism_from_dict(data)


def _int_list(text: str) -> list[int]:
    try:
        return [int(v) for v in text.split(",") if v.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from exc


def _write(text: str, out: Optional[str]):
    if out is None or out == "-":
        sys.stdout.write(text)
        return
    try:
        with open(out, "w") as fh:
            fh.write(text)
    except OSError as exc:
        raise UsageError(f"cannot write output {out!r}: {exc}") from exc


def _emit(obj: dict, out: Optional[str]):
    _write(json.dumps(obj, indent=2) + "\n", out)


def cmd_simulate(args) -> int:
    if args.config:
        data, base_dir = _load_json(args.config, "config")
        data = data.get("config", data)
        cfg = experiments.config_from_dict(data, base_dir)
        if args.workers is not None:
            cfg.workers = args.workers
    else:
        missing = [f for f in ("prior", "mechanism", "trials", "seed") if getattr(args, f) is None]
        if missing:
            raise UsageError("simulate needs --config or all of " + ", ".join("--" + m for m in missing))
        cfg = experiments.RunConfig(_prior(args.prior), _mechanism(args.mechanism, args.default),
                                    args.trials, args.seed, args.workers or 1, args.path)
    est = experiments.mc_additive(cfg)
    _emit({"command": "simulate", "config": cfg.to_dict(), "result": est.to_dict()}, args.out)
    return EXIT_OK


def cmd_sweep(args) -> int:
    family, _ = _load_json(args.prior_family, "prior family")
    mech = _mechanism(args.mechanism_rule, args.default)
    rows = experiments.sweep(family, mech, args.n, args.trials, args.seed, args.workers, args.path)
    _write(experiments.sweep_csv(rows), args.out)
    config = {"command": "sweep", "prior_family": family, "mechanism_rule": mech.to_dict(),
              "n": args.n, "trials": args.trials, "seed": args.seed, "workers": args.workers,
              "path": args.path}
    if args.out and args.out != "-":
        # the CSV stays a plain table; its configuration travels alongside it
        _emit(config, args.out + ".config.json")
    else:
        sys.stderr.write(json.dumps(config) + "\n")
    return EXIT_OK


def cmd_check_impartial(args) -> int:
    mech = _mechanism(args.mechanism, args.default)
    config = {"command": "check-impartial", "mechanism": mech.to_dict()}
    if args.random:
        if args.prior is None:
            raise UsageError("--random needs --prior")
        prior = _prior(args.prior)
        mech.fit(prior)
        config.update(mode="random", prior=prior.to_dict(), trials=args.trials, seed=args.seed)
        report = impartiality.check_random(mech, prior, args.trials, check_random_state(args.seed))
    else:
        if args.m is None:
            raise UsageError("exhaustive mode needs --m")
        if mech.uses_default and mech.default is None:
            mech.default = 0
            config["mechanism"] = mech.to_dict()
        config.update(mode="exhaustive", m=args.m)
        report = impartiality.check_exhaustive(mech, args.m)
    out = {"config": config, **report.to_dict()}
    if report.counterexample is not None:
        out["counterexample_reverified"] = report.counterexample.verify(mech)
    _emit(out, args.out)
    return EXIT_OK if report.passed else EXIT_FAIL


def _bounds_report(args) -> bounds.BoundReport:
    suite = args.suite
    ns = args.n or []
    ps = args.p or []
    if suite == "tails":
        if not ns or not ps:
            raise UsageError("tails suite needs --n and --p")
        return bounds.verify_tails(ns, ps)
    if suite in ("zones", "technical"):
        if len(ns) != 1 or len(ps) != 1:
            raise UsageError(f"{suite} suite needs exactly one --n and one --p (the default's p_t)")
        p_k = ps[0] if args.p_k is None else args.p_k
        fn = bounds.verify_zone_lemmas if suite == "zones" else bounds.verify_technical_lemma
        return fn(ns[0], ps[0], p_k)
    if suite in ("section5", "event-d"):
        if not ns:
            raise UsageError(f"{suite} suite needs --n")
        fn = bounds.verify_section5_lemmas if suite == "section5" else bounds.verify_event_d
        rep = bounds.BoundReport(suite, {"n": ns})
        for n in ns:
            rep.extend(fn(n))
        return rep
    if suite == "two-node":
        if not ps:
            raise UsageError("two-node suite needs --p")
        mech = _mechanism(args.mechanism) if args.mechanism else AVDBeats(default=0)
        return bounds.verify_two_node(ps, mech)
    raise UsageError(f"unknown suite {suite!r}")


def cmd_bounds(args) -> int:
    try:
        rep = _bounds_report(args)
    except bounds.PreconditionError as exc:
        raise UsageError(f"precondition not met: {exc}") from exc
    out = rep.to_dict(with_points=not args.summary)
    out["config"] = {"command": "bounds verify", "suite": args.suite, "n": args.n, "p": args.p,
                     "p_k": args.p_k, "mechanism": args.mechanism}
    _emit(out, args.out)
    return EXIT_OK if rep.holds else EXIT_FAIL


def cmd_zones(args) -> int:
    b = bounds.BinomialSpec(args.n, args.p)
    n_thr = args.n_threshold or args.n
    z = bounds.comfort_zone(b, n_thr)
    _emit({"config": {"command": "zones", "n": args.n, "p": args.p, "n_threshold": n_thr},
           "mu": b.mu, "xi": b.xi, "L": z.L, "U": z.U}, args.out)
    return EXIT_OK


def cmd_hazard(args) -> int:
    b = bounds.BinomialSpec(args.n, args.p)
    xs = args.x if args.x else list(range(args.n + 1))
    for x in xs:
        if not 0 <= x <= args.n:
            raise UsageError(f"x={x} outside [0, {args.n}]")
    out = {"config": {"command": "hazard", "n": args.n, "p": args.p, "x": xs,
                      "exploratory": args.exploratory},
           "hazard": [{"x": x, "ratio": bounds.hazard_ratio(b, x)} for x in xs]}
    code = EXIT_OK
    if args.exploratory:
        if args.p != 0.5:
            raise UsageError("the exploratory monotonicity check runs at p = 0.5 only")
        rep = bounds.exploratory_hazard_monotonicity(args.n)
        out["exploratory"] = rep.to_dict(with_points=False)
        code = EXIT_OK if rep.holds else EXIT_FAIL
    _emit(out, args.out)
    return code


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="impartial", description="Impartial selection with priors.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("simulate", help="Monte Carlo estimate of the expected additive gap")
    s.add_argument("--config", help="RunConfig JSON or a previous simulate output to re-run")
    s.add_argument("--prior")
    s.add_argument("--mechanism")
    s.add_argument("--default", type=int)
    s.add_argument("--trials", type=int)
    s.add_argument("--seed", type=int)
    s.add_argument("--workers", type=int)
    s.add_argument("--path", choices=("auto", "dense", "lazy"), default="auto")
    s.add_argument("--out")
    s.set_defaults(func=cmd_simulate)

    s = sub.add_parser("sweep", help="gap sweep over n, written as CSV")
    s.add_argument("--prior-family", required=True)
    s.add_argument("--mechanism-rule", required=True)
    s.add_argument("--default", type=int)
    s.add_argument("--n", type=_int_list, required=True)
    s.add_argument("--trials", type=int, required=True)
    s.add_argument("--seed", type=int, required=True)
    s.add_argument("--workers", type=int, default=1)
    s.add_argument("--path", choices=("auto", "dense", "lazy"), default="auto")
    s.add_argument("--out")
    s.set_defaults(func=cmd_sweep)

    s = sub.add_parser("check-impartial", help="exhaustive or randomized impartiality check")
    s.add_argument("--mechanism", required=True)
    s.add_argument("--default", type=int)
    s.add_argument("--m", type=int)
    s.add_argument("--random", action="store_true")
    s.add_argument("--prior")
    s.add_argument("--trials", type=int, default=1000)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--out")
    s.set_defaults(func=cmd_check_impartial)

    s = sub.add_parser("bounds", help="numerical verification of tail-bound inequalities")
    bsub = s.add_subparsers(dest="action", required=True, parser_class=_Parser)
    v = bsub.add_parser("verify")
    v.add_argument("--suite", required=True,
                   choices=("tails", "zones", "technical", "section5", "event-d", "two-node"))
    v.add_argument("--n", type=int, nargs="+")
    v.add_argument("--p", type=float, nargs="+")
    v.add_argument("--p-k", type=float)
    v.add_argument("--mechanism")
    v.add_argument("--summary", action="store_true", help="omit the per-point listing")
    v.add_argument("--out")
    v.set_defaults(func=cmd_bounds)

    s = sub.add_parser("zones", help="comfort zone of Bin(n, p)")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--p", type=float, required=True)
    s.add_argument("--n-threshold", type=int)
    s.add_argument("--out")
    s.set_defaults(func=cmd_zones)

    s = sub.add_parser("hazard", help="hazard ratio Pr[B = x] / Pr[B >= x]")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--p", type=float, required=True)
    s.add_argument("--x", type=int, nargs="+")
    s.add_argument("--exploratory", action="store_true")
    s.add_argument("--out")
    s.set_defaults(func=cmd_hazard)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except experiments.FloorViolation as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except (UsageError, ValueError, TypeError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
