"""Exact binomial tails in log space and numeric checks of the tail inequalities.

Tail probabilities are sums of log-pmf terms accumulated with
``logaddexp`` from the far tail inward, so values down to ~1e-300 (and, in
log form, far below) keep their relative accuracy. All inequality checks
compare logarithms.

Every check lands in a :class:`BoundReport` as ``lhs <= rhs`` records;
lower bounds are stored with the bound on the left.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Optional

import numpy as np
from scipy.special import betaln, xlog1py, xlogy

from .profile import new_profile

ZONE_EXPONENT = 5.33
XI_FACTOR = 8200
TECHNICAL_CONSTANT = 264 * math.e
LOG_TOL = 1e-9


class PreconditionError(ValueError):
    """A check's standing assumption cannot hold at the requested parameters."""


def _ceil(v: float) -> int:
    return math.ceil(v - 1e-9)


def _floor(v: float) -> int:
    return math.floor(v + 1e-9)


@dataclass(frozen=True)
class BinomialSpec:
    n: int
    p: float

    def __post_init__(self):
        if self.n < 0:
            raise ValueError(f"n must be >= 0, got {self.n}")
        if not 0.0 <= self.p <= 1.0:
            raise ValueError(f"p must lie in [0, 1], got {self.p}")

    @property
    def mu(self) -> float:
        return self.n * self.p

    @property
    def xi(self) -> float:
        return min(self.mu, self.n - self.mu)

    @cached_property
    def log_pmf(self) -> np.ndarray:
        n, p = self.n, self.p
        x = np.arange(n + 1, dtype=float)
        with np.errstate(divide="ignore"):
            out = -math.log1p(n) - betaln(n - x + 1, x + 1) + xlogy(x, p) + xlog1py(n - x, -p)
        out.flags.writeable = False
        return out

    @cached_property
    def log_sf(self) -> np.ndarray:
        """``log_sf[x] = log Pr[B >= x]`` for ``x = 0 .. n + 1``."""
        acc = np.logaddexp.accumulate(self.log_pmf[::-1])[::-1]
        out = np.append(np.minimum(acc, 0.0), -np.inf)
        out.flags.writeable = False
        return out

    @cached_property
    def log_cdf(self) -> np.ndarray:
        """``log_cdf[x] = log Pr[B <= x]`` for ``x = 0 .. n``."""
        out = np.minimum(np.logaddexp.accumulate(self.log_pmf), 0.0)
        out.flags.writeable = False
        return out


def binom_pmf_log(b: BinomialSpec, x: int) -> float:
    if not 0 <= x <= b.n:
        raise ValueError(f"x={x} outside [0, {b.n}]")
    return float(b.log_pmf[x])


def binom_logsf(b: BinomialSpec, x: int) -> float:
    if x <= 0:
        return 0.0
    if x > b.n:
        return -math.inf
    return float(b.log_sf[x])


def binom_sf(b: BinomialSpec, x: int) -> float:
    """``Pr[B >= x]``."""
    return math.exp(binom_logsf(b, x))


def binom_logcdf(b: BinomialSpec, x: int) -> float:
    if x < 0:
        return -math.inf
    if x >= b.n:
        return 0.0
    return float(b.log_cdf[x])


def hazard_ratio(b: BinomialSpec, x: int) -> float:
    """``Pr[B = x] / Pr[B >= x]``."""
    if not 0 <= x <= b.n:
        raise ValueError(f"x={x} outside [0, {b.n}]")
    lsf = b.log_sf[x]
    if lsf == -math.inf:
        raise ValueError(f"Pr[B >= {x}] is zero")
    return math.exp(b.log_pmf[x] - lsf)


def hoeffding_bound(ranges, nu: float) -> float:
    """Two-sided Hoeffding bound on ``Pr[|X - E X| >= nu]``, capped at 1."""
    if nu < 0:
        raise ValueError(f"nu must be >= 0, got {nu}")
    spread = 0.0
    for a, b in ranges:
        if b < a:
            raise ValueError(f"range ({a}, {b}) has b < a")
        spread += (b - a) ** 2
    if nu == 0:
        return 1.0
    if spread == 0:
        return 0.0
    return min(1.0, 2.0 * math.exp(-2.0 * nu * nu / spread))


@dataclass(frozen=True)
class ChernoffBounds:
    """Applicable bounds at one point; ``None`` where a regime condition fails."""

    upper_okamoto: Optional[float] = None
    upper_chernoff: Optional[float] = None
    lower_okamoto: Optional[float] = None
    lower_chernoff: Optional[float] = None


def _chernoff_logs(n: int, mu: float, x) -> dict:
    """Log of each Chernoff/Okamoto bound with the mask where it applies."""
    x = np.asarray(x, dtype=float)
    var = mu * (n - mu)
    out = {}
    with np.errstate(divide="ignore", invalid="ignore"):
        up = x >= mu - 1e-9
        lo = x <= mu + 1e-9
        if var > 0:
            if mu >= n / 2:
                out["upper_okamoto"] = (up, -(x - mu) ** 2 * n / (2 * var))
            else:
                out["upper_chernoff"] = (up & (x <= 2 * mu + 1e-9), -(x - mu) ** 2 / (3 * mu))
            if mu <= n / 2:
                out["lower_okamoto"] = (lo, -(mu - x) ** 2 * n / (2 * var))
            else:
                out["lower_chernoff"] = (lo & (x >= 2 * mu - n - 1e-9),
                                             -(mu - x) ** 2 / (3 * (n - mu)))
    return out


def chernoff_bounds(b: BinomialSpec, x: int) -> ChernoffBounds:
    vals = {}
    for key, (mask, logb) in _chernoff_logs(b.n, b.mu, [x]).items():
        if mask[0]:
            vals[key] = math.exp(logb[0])
    return ChernoffBounds(
        upper_okamoto=vals.get("upper_okamoto"),
        upper_chernoff=vals.get("upper_chernoff"),
        lower_okamoto=vals.get("lower_okamoto"),
        lower_chernoff=vals.get("lower_chernoff"),
    )


def _log_reverse_chernoff(n: int, p: float, q):
    """Log of the reverse Chernoff lower bound at ``p + delta = q``."""
    q = np.asarray(q, dtype=float)
    with np.errstate(divide="ignore", invalid="ignore"):
        kl = xlogy(q, p) - xlogy(q, q) + xlog1py(1 - q, -p) - xlogy(1 - q, 1 - q)
        return -0.5 * np.log(8 * n * q * (1 - q)) + n * kl


def reverse_chernoff(n: int, p: float, delta: float) -> float:
    """Lower bound on ``Pr[B >= n(p + delta)]`` for ``B ~ Bin(n, p)``."""
    if not 0 <= delta < 1 - p:
        raise ValueError(f"delta must lie in [0, 1 - p) = [0, {1 - p}), got {delta}")
    return float(np.exp(_log_reverse_chernoff(n, p, p + delta)))


def inverse_chernoff(n: int, delta: float) -> float:
    """Lower bound on ``Pr[B >= n(1/2 + delta)]`` for ``B ~ Bin(n, 1/2)``, delta <= 1/10."""
    if not 0 <= delta <= 0.1:
        raise ValueError(f"delta must lie in [0, 1/10], got {delta}")
    return math.exp(-3 * delta * delta * n) / math.sqrt(2 * n)


@dataclass(frozen=True)
class ComfortZone:
    L: int
    U: int

    def __contains__(self, x) -> bool:
        return self.L <= x <= self.U


def comfort_zone(b: BinomialSpec, n_for_threshold: int) -> ComfortZone:
    """Integer range outside which each tail has mass at most ``n**-5.33``.

    ``L`` is the highest ``c`` with ``Pr[B < c] <= thr`` and ``U`` the lowest
    ``c`` with ``Pr[B > c] <= thr``; both found by binary search on the
    monotone log tails.
    """
    if n_for_threshold < 2:
        raise ValueError(f"n_for_threshold must be >= 2, got {n_for_threshold}")
    thr = -ZONE_EXPONENT * math.log(n_for_threshold)
    L = int(np.searchsorted(b.log_cdf, thr, side="right"))
    U = int(np.searchsorted(-b.log_sf[1:], -thr, side="left"))
    return ComfortZone(L, U)


@dataclass
class CheckBlock:
    """A family of ``lhs <= rhs`` checks sharing fixed parameters.

    ``var`` names the swept parameter and ``values`` its values; ``scale`` is
    ``"log"`` when both sides are natural logarithms of probabilities.
    """

    id: str
    params: dict
    var: Optional[str]
    values: np.ndarray
    lhs: np.ndarray
    rhs: np.ndarray
    scale: str = "log"
    tol: float = LOG_TOL

    def __post_init__(self):
        self.values = np.atleast_1d(np.asarray(self.values))
        self.lhs = np.atleast_1d(np.asarray(self.lhs, dtype=float))
        self.rhs = np.atleast_1d(np.asarray(self.rhs, dtype=float))

    @property
    def holds(self) -> np.ndarray:
        if self.scale == "exact":
            return self.lhs <= self.rhs
        slack = self.tol * np.maximum(1.0, np.abs(np.where(np.isfinite(self.rhs), self.rhs, 0.0)))
        with np.errstate(invalid="ignore"):
            return (self.lhs <= self.rhs + slack) | (self.lhs == -np.inf)

    def __len__(self) -> int:
        return self.lhs.size

    def rows(self):
        for v, a, b, ok in zip(self.values.tolist(), self.lhs.tolist(), self.rhs.tolist(),
                               self.holds.tolist()):
            params = dict(self.params)
            if self.var is not None:
                params[self.var] = v
            yield {"id": self.id, "params": params, "lhs": a, "rhs": b,
                   "margin": b - a if math.isfinite(a) or math.isfinite(b) else None,
                   "scale": self.scale, "holds": ok}


@dataclass
class BoundReport:
    suite: str
    grid: dict
    blocks: list = field(default_factory=list)
    skipped: list = field(default_factory=list)
    notes: list = field(default_factory=list)

    def add(self, id, params, var, values, lhs, rhs, scale="log", tol=LOG_TOL):
        self.blocks.append(CheckBlock(id, dict(params), var, values, lhs, rhs, scale, tol))

    def skip(self, id, params, reason):
        self.skipped.append({"id": id, "params": dict(params), "reason": reason})

    def extend(self, other: "BoundReport"):
        self.blocks += other.blocks
        self.skipped += other.skipped
        self.notes += other.notes

    @property
    def points_checked(self) -> int:
        return sum(len(b) for b in self.blocks)

    @property
    def violations(self) -> list:
        out = []
        for b in self.blocks:
            if not b.holds.all():
                out += [r for r in b.rows() if not r["holds"]]
        return sorted(out, key=lambda r: (r["id"], sorted(r["params"].items())))

    @property
    def holds(self) -> bool:
        return all(b.holds.all() for b in self.blocks)

    def ids(self) -> set:
        return {b.id for b in self.blocks}

    def to_dict(self, with_points: bool = True) -> dict:
        out = {
            "suite": self.suite,
            "grid": self.grid,
            "points_checked": self.points_checked,
            "holds": self.holds,
            "violations": self.violations,
            "skipped": self.skipped,
            "notes": self.notes,
        }
        if with_points:
            out["points"] = [r for b in self.blocks for r in b.rows()]
        return out


def verify_tails(n_values, p_values) -> BoundReport:
    """Exact tails against Hoeffding, the four Chernoff/Okamoto bounds, the reverse
    Chernoff bound and (at p = 1/2) the inverse Chernoff bound, over every x."""
    rep = BoundReport("tails", {"n": list(n_values), "p": list(p_values)})
    for n in n_values:
        for p in p_values:
            b = BinomialSpec(int(n), float(p))
            mu = b.mu
            pp = {"n": int(n), "p": float(p)}
            xs = np.arange(n + 1)

            for key, (mask, logb) in _chernoff_logs(n, mu, xs).items():
                sel = xs[mask]
                tail = b.log_sf[sel] if "upper" in key else b.log_cdf[sel]
                rep.add(key, pp, "x", sel, tail, logb[mask])
            if b.mu * (n - b.mu) == 0:
                rep.skip("chernoff", pp, "degenerate binomial: mu(n - mu) = 0")

            # Hoeffding, two-sided, at every deviation realised by an integer x
            nu = np.abs(xs - mu)
            hi_idx = np.array([_ceil(mu + v) for v in nu])
            lo_idx = np.array([_floor(mu - v) for v in nu])
            upper = np.where(hi_idx <= n, b.log_sf[np.clip(hi_idx, 0, n + 1)], -np.inf)
            lower = np.where(lo_idx >= 0, b.log_cdf[np.clip(lo_idx, 0, n)], -np.inf)
            prob = np.where(nu < 1e-9, 0.0, np.minimum(np.logaddexp(upper, lower), 0.0))
            rep.add("hoeffding_two_sided", pp, "x", xs, prob, math.log(2) - 2 * nu**2 / n)

            xr = xs[(xs >= _ceil(mu)) & (xs < n)]
            if 0 < p < 1 and xr.size:
                rep.add("reverse_chernoff_tail", pp, "x", xr,
                        _log_reverse_chernoff(n, p, xr / n), b.log_sf[xr])

            if p == 0.5:
                xc = xs[(xs >= _ceil(n / 2)) & (xs <= _floor(0.6 * n))]
                delta = xc / n - 0.5
                rep.add("inverse_chernoff_tail", pp, "x", xc,
                        -0.5 * math.log(2 * n) - 3 * delta**2 * n, b.log_sf[xc])
    return rep


def _require_xi(n: int, p_t: float):
    xi_t = BinomialSpec(n, p_t).xi
    need = XI_FACTOR * math.log(n)
    if xi_t < need:
        raise PreconditionError(
            f"xi_t = {xi_t:.1f} < 8200 ln n = {need:.1f}: the default node's expected degree "
            f"is too close to 0 or n at n={n}, p_t={p_t}")


def almost_intersect(za: ComfortZone, zb: ComfortZone) -> bool:
    """Zones within distance 2 of each other."""
    return max(zb.L - za.U, za.L - zb.U) <= 2


def verify_zone_lemmas(n: int, p_t: float, p_k: float) -> BoundReport:
    _require_xi(n, p_t)
    rep = BoundReport("zones", {"n": n, "p_t": p_t, "p_k": p_k})
    bt, bk = BinomialSpec(n, p_t), BinomialSpec(n, p_k)
    zt, zk = comfort_zone(bt, n), comfort_zone(bk, n)
    ln = math.log(n)
    rep.notes.append(f"Z_t = [{zt.L}, {zt.U}], Z_k = [{zk.L}, {zk.U}]")
    for name, b, z in (("t", bt, zt), ("k", bk, zk)):
        pp = {"n": n, "p": b.p, "node": name}
        if b.xi < XI_FACTOR * ln:
            rep.skip("zone_width", pp, f"xi_{name} < 8200 ln n")
            continue
        w = 4 * math.sqrt(b.xi * ln)
        rep.add("zone_width_upper", pp, None, [z.U], [z.U], [b.mu + w], scale="linear", tol=0)
        rep.add("zone_width_lower", pp, None, [z.L], [b.mu - w], [z.L], scale="linear", tol=0)
    pp = {"n": n, "p_t": p_t, "p_k": p_k}
    if not almost_intersect(zt, zk):
        rep.skip("almost_intersect_ratios", pp,
                 f"zones [{zt.L}, {zt.U}] and [{zk.L}, {zk.U}] do not almost intersect")
        return rep
    rep.add("mu_ratio_lower", pp, None, [0], [0.75 * bk.mu], [bt.mu], scale="linear", tol=0)
    rep.add("mu_ratio_upper", pp, None, [0], [bt.mu], [4 / 3 * bk.mu], scale="linear", tol=0)
    rep.add("xi_ratio_lower", pp, None, [0], [16 / 25 * bk.xi], [bt.xi], scale="linear", tol=0)
    rep.add("xi_ratio_upper", pp, None, [0], [bt.xi], [25 / 16 * bk.xi], scale="linear", tol=0)
    return rep


def verify_technical_lemma(n: int, p_t: float, p_k: float) -> BoundReport:
    """Hazard-type bound ``Pr[B_k = h - l] <= 264 e sqrt(ln n / xi_t) Pr[B_k > h]``
    for every ``h`` in ``Z_t`` with ``h - 2`` in ``Z_k`` and ``l`` in {0, 1, 2}."""
    _require_xi(n, p_t)
    if p_k * n > p_t * n:
        raise PreconditionError("the default node must have the larger expected degree (mu_k <= mu_t)")
    rep = BoundReport("technical", {"n": n, "p_t": p_t, "p_k": p_k})
    bt, bk = BinomialSpec(n, p_t), BinomialSpec(n, p_k)
    zt, zk = comfort_zone(bt, n), comfort_zone(bk, n)
    pp = {"n": n, "p_t": p_t, "p_k": p_k}
    hs = np.arange(max(zt.L, zk.L + 2), min(zt.U, zk.U + 2) + 1)
    if hs.size == 0:
        rep.skip("technical_lemma", pp,
                 f"no h with h in [{zt.L}, {zt.U}] and h - 2 in [{zk.L}, {zk.U}]: "
                 "zones do not almost intersect")
        return rep
    coef = math.log(TECHNICAL_CONSTANT) + 0.5 * math.log(math.log(n) / bt.xi)
    for ell in (0, 1, 2):
        rep.add("technical_lemma", {**pp, "ell": ell}, "h", hs,
                bk.log_pmf[hs - ell], coef + bk.log_sf[hs + 1])
    return rep


def lb_thresholds(n: int) -> tuple[int, int]:
    """``(L, U)`` for ``Bin(n, 1/2)``: lowest ``c`` with ``Pr[B > c] < 1/(n sqrt 2)``,
    and lowest ``c`` with ``Pr[B > c] <= 1/(3 e^2 n sqrt 6)``."""
    if n < 2:
        raise ValueError(f"n must be >= 2, got {n}")
    b = BinomialSpec(n, 0.5)
    neg_above = -b.log_sf[1:]
    log_l = -math.log(n * math.sqrt(2))
    log_u = -math.log(3 * math.e**2 * n * math.sqrt(6))
    L = int(np.searchsorted(neg_above, -log_l, side="right"))
    U = int(np.searchsorted(neg_above, -log_u, side="left"))
    return L, U


def _claim_grid(n: int, L: int, U: int):
    ys = np.unique(np.concatenate([np.linspace(0, n - 1, 257).astype(int), np.arange(L, U + 1)]))
    for y in ys:
        xs = np.unique(np.concatenate([np.linspace(0, y, 257).astype(int),
                                       np.arange(max(0, y - 64), y + 1)]))
        yield int(y), xs


def verify_section5_lemmas(n: int) -> BoundReport:
    """Threshold placement and the four pmf/tail inequalities for ``Bin(n, 1/2)``."""
    if n < 80:
        raise PreconditionError(f"n must be >= 80, got {n}")
    rep = BoundReport("section5", {"n": n})
    b = BinomialSpec(n, 0.5)
    b1 = BinomialSpec(n - 1, 0.5)
    L, U = lb_thresholds(n)
    ln = math.log(n)
    pp = {"n": n, "L": L, "U": U}
    rep.notes.append(f"L = {L}, U = {U}")

    rep.add("lb_step1_L_lower", pp, None, [L], [n / 2 + math.sqrt(n * ln / 6)], [L],
            scale="linear", tol=0)
    rep.add("chernoff_U_upper", pp, None, [U], [U], [n / 2 + math.sqrt(n * ln)],
            scale="linear", tol=0)
    rep.add("lb_step3_width", pp, None, [U - L], [math.sqrt(n / ln) / 6], [U - L],
            scale="linear", tol=0)
    rep.add("L_le_U", pp, None, [0], [L], [U], scale="exact")

    if 2 * L > n:
        xs = np.arange(L, n + 1)
        rep.add("lb_step2_pmf_vs_tail", pp, "x", xs,
                math.log((2 * L - n) / n) + b.log_sf[xs], b.log_pmf[xs])
    else:
        rep.skip("lb_step2_pmf_vs_tail", pp, "2L <= n, bound is vacuous")

    for y, xs in _claim_grid(n, L, U):
        with np.errstate(divide="ignore", invalid="ignore"):
            slope = math.log(y / (n - y)) if y > 0 else -math.inf
            rhs = np.where(xs == y, 0.0, (y - xs) * slope) + b.log_pmf[y]
        rep.add("claim_expo", {**pp, "y": y}, "x", xs, b.log_pmf[xs], rhs)

    rep.add("pdf_vs_cdf_at_U", pp, None, [U], [b.log_pmf[U]],
            [math.log(8 / (3 * math.e * math.sqrt(6))) + 0.5 * math.log(ln) - 1.5 * math.log(n)])

    xs = np.arange(L + 1, U + 1)
    rep.add("n_minus_1_pmf", pp, "x", xs, math.log(2 / 3) + b.log_pmf[xs], b1.log_pmf[xs])
    return rep


def event_d_lower_bound(n: int) -> float:
    """``(1/2)(L - n/2) * sum_{d=L+1}^{U} C(n,2) Pr[B'=d]^2 Pr[B <= d-1]^(n-2)``."""
    if n < 80:
        raise PreconditionError(f"n must be >= 80, got {n}")
    L, U = lb_thresholds(n)
    b = BinomialSpec(n, 0.5)
    b1 = BinomialSpec(n - 1, 0.5)
    ds = np.arange(L + 1, U + 1)
    if ds.size == 0 or L <= n / 2:
        return 0.0
    terms = (math.log(n * (n - 1) / 2) + 2 * b1.log_pmf[ds] + (n - 2) * b.log_cdf[ds - 1])
    total = np.logaddexp.reduce(terms)
    return float(0.5 * (L - n / 2) * math.exp(total))


def event_d_target(n: int) -> float:
    return math.log(n) / (6561 * math.e**5 * math.sqrt(6))


def verify_event_d(n: int) -> BoundReport:
    rep = BoundReport("event-d", {"n": n})
    val = event_d_lower_bound(n)
    pp = {"n": n}
    rep.notes.append(f"event-D expression = {val!r}")
    rep.add("event_d_vs_log_n", pp, None, [n], [event_d_target(n)], [val], scale="linear", tol=0)
    rep.add("event_d_nonnegative", pp, None, [n], [0.0], [val], scale="linear", tol=0)
    rep.add("event_d_at_most_n", pp, None, [n], [val], [float(n)], scale="linear", tol=0)
    return rep


@dataclass(frozen=True)
class TwoNodeResult:
    expected_max: float
    expected_winner_degree: float
    ratio: float


def two_node_analysis(p: float, mech) -> TwoNodeResult:
    """Exact expected maximum and winner degree over the four 2-node profiles."""
    if not 0 < p <= 1:
        raise ValueError(f"p must lie in (0, 1], got {p}")
    q = Fraction(p)
    e_max = Fraction(0)
    e_win = Fraction(0)
    for e01 in (0, 1):
        for e10 in (0, 1):
            edges = [(0, 1)] * e01 + [(1, 0)] * e10
            prof = new_profile(2, edges)
            w = (q if e01 else 1 - q) * (q if e10 else 1 - q)
            out = mech.select(prof)
            e_max += w * int(prof.in_degrees.max())
            e_win += w * out.winner_degree
    if e_win == 0:
        return TwoNodeResult(float(e_max), 0.0, math.inf)
    return TwoNodeResult(float(e_max), float(e_win), float(e_max / e_win))


def verify_two_node(p_values, mech) -> BoundReport:
    rep = BoundReport("two-node", {"p": list(p_values), "mechanism": mech.to_dict()})
    prev = None
    for p in p_values:
        r = two_node_analysis(p, mech)
        pp = {"p": p}
        rep.add("winner_degree_at_most_p", pp, None, [p], [r.expected_winner_degree], [p],
                scale="linear", tol=1e-15)
        rep.add("expected_max", pp, None, [p], [r.expected_max], [float(2 * Fraction(p) - Fraction(p) ** 2)],
                scale="linear", tol=1e-15)
        rep.notes.append(f"p={p}: ratio={r.ratio!r}")
        if prev is not None and p < prev[0]:
            rep.add("ratio_monotone_as_p_decreases", {"p": p, "p_prev": prev[0]}, None, [p],
                    [prev[1]], [r.ratio], scale="exact")
        prev = (p, r.ratio)
    return rep


def exploratory_hazard_monotonicity(n: int) -> BoundReport:
    """Exploratory only: hazard ratio nondecreasing above the mean at p = 1/2."""
    b = BinomialSpec(n, 0.5)
    rep = BoundReport("hazard-exploratory", {"n": n})
    rep.notes.append("exploratory check, not a claim of the analysed results")
    xs = np.arange(_ceil(b.mu), n)
    h = b.log_pmf - b.log_sf[:-1]
    rep.add("hazard_nondecreasing", {"n": n}, "x", xs, h[xs], h[xs + 1])
    rep.add("hazard_at_most_one", {"n": n}, "x", np.arange(n + 1), h, np.zeros(n + 1))
    return rep
