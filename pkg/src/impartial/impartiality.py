"""Impartiality checks: exhaustive at small m, randomized deviation search above.

A mechanism is impartial when no node can change whether *it* wins by
changing its own votes. Other nodes' winning status may change freely.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .profile import NominationProfile
from .validation import check_random_state

MAX_EXHAUSTIVE_M = 5
_CHUNK = 1 << 16


@dataclass(frozen=True)
class Counterexample:
    profile: NominationProfile
    deviator: int
    alternative_out_edges: frozenset
    winner_before: int
    winner_after: int

    @property
    def deviated_profile(self) -> NominationProfile:
        return self.profile.with_out_edges(self.deviator, self.alternative_out_edges)

    def verify(self, mech) -> bool:
        """Re-run ``mech`` on both profiles and confirm the deviator's status flips."""
        before = mech.select(self.profile).winner
        after = mech.select(self.deviated_profile).winner
        return (before == self.winner_before and after == self.winner_after
                and (before == self.deviator) != (after == self.deviator))

    def to_dict(self) -> dict:
        return {
            "profile": self.profile.to_dict(),
            "deviator": self.deviator,
            "alternative_out_edges": sorted(self.alternative_out_edges),
            "winner_before": self.winner_before,
            "winner_after": self.winner_after,
        }


@dataclass
class CheckReport:
    verdict: str
    profiles_checked: int
    counterexample: Optional[Counterexample] = None
    details: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.verdict == "pass"

    def to_dict(self) -> dict:
        return {
            "verdict": self.verdict,
            "profiles_checked": self.profiles_checked,
            "counterexample": None if self.counterexample is None else self.counterexample.to_dict(),
            **self.details,
        }


def _targets(i: int, m: int) -> np.ndarray:
    return np.array([j for j in range(m) if j != i])


def code_to_targets(code: int, i: int, m: int) -> frozenset:
    tg = _targets(i, m)
    return frozenset(int(tg[b]) for b in range(m - 1) if code >> b & 1)


def enumerate_profiles(m: int, start: int = 0, stop: Optional[int] = None) -> np.ndarray:
    """Adjacency batch for profile indices ``start .. stop - 1``.

    Index ``P`` packs node ``i``'s out-set as the ``(m-1)``-bit digit
    ``(P >> (m-1)*i) & (2**(m-1) - 1)``; bit ``b`` of that digit is the
    ``b``-th other node in increasing order.
    """
    width = m - 1
    total = 1 << (width * m)
    stop = total if stop is None else min(stop, total)
    idx = np.arange(start, stop, dtype=np.int64)
    adj = np.zeros((idx.size, m, m), dtype=bool)
    for i in range(m):
        digit = (idx >> (width * i)) & ((1 << width) - 1)
        for b, j in enumerate(_targets(i, m)):
            adj[:, i, j] = (digit >> b) & 1
    return adj


def _alternative_order(width: int) -> list[int]:
    full = (1 << width) - 1
    return [0, full] + [c for c in range(1, full)]


def exhaustive_winners(mech, m: int) -> np.ndarray:
    total = 1 << ((m - 1) * m)
    out = np.empty(total, dtype=np.int64)
    for start in range(0, total, _CHUNK):
        adj = enumerate_profiles(m, start, start + _CHUNK)
        out[start:start + adj.shape[0]] = mech.select_batch(adj)
    return out


def check_exhaustive(mech, m: int) -> CheckReport:
    """Check the impartiality condition on every profile with ``m`` nodes."""
    if not 1 <= m <= MAX_EXHAUSTIVE_M:
        raise ValueError(f"exhaustive check supports 1 <= m <= {MAX_EXHAUSTIVE_M}, got {m}")
    width = m - 1
    base = 1 << width
    total = base ** m
    winners = exhaustive_winners(mech, m)
    shape = (base,) * m
    bad_any = np.zeros(total, dtype=bool)
    bad_by_node = []
    for i in range(m):
        # C-order reshape: node i's digit sits on axis m-1-i
        won = (winners == i).reshape(shape)
        axis = m - 1 - i
        split = won.any(axis=axis, keepdims=True) & ~won.all(axis=axis, keepdims=True)
        bad = np.broadcast_to(split, shape).reshape(total)
        bad_by_node.append(bad)
        bad_any |= bad
    if not bad_any.any():
        return CheckReport("pass", total)
    P = int(np.argmax(bad_any))
    i = next(i for i in range(m) if bad_by_node[i][P])
    code = (P >> (width * i)) & (base - 1)
    before = int(winners[P])
    for alt in _alternative_order(width):
        Q = P - (code << (width * i)) + (alt << (width * i))
        after = int(winners[Q])
        if (before == i) != (after == i):
            break
    profile = NominationProfile(enumerate_profiles(m, P, P + 1)[0])
    cex = Counterexample(profile, i, code_to_targets(alt, i, m), before, after)
    return CheckReport("fail", P + 1, cex)


def _deviations(adj: np.ndarray, i: int, rng, n_random: int) -> list[np.ndarray]:
    m = adj.shape[0]
    rows = []
    empty = np.zeros(m, dtype=bool)
    full = np.ones(m, dtype=bool)
    full[i] = False
    rows += [empty, full]
    for j in range(m):
        if j != i:
            r = adj[i].copy()
            r[j] = not r[j]
            rows.append(r)
    for _ in range(n_random):
        r = rng.random(m) < 0.5
        r[i] = False
        rows.append(r)
    return rows


def check_random(mech, prior, trials: int, rng=None, n_random: int = 2) -> CheckReport:
    """Sample profiles from ``prior`` and try empty, full, single-flip and random deviations."""
    rng = check_random_state(rng)
    for trial in range(trials):
        profile = prior.sample(rng)
        adj = profile.adjacency
        m = profile.m
        batch, owners = [adj], [-1]
        for i in range(m):
            for row in _deviations(adj, i, rng, n_random):
                dev = adj.copy()
                dev[i] = row
                batch.append(dev)
                owners.append(i)
        winners = mech.select_batch(np.stack(batch))
        before = int(winners[0])
        for w, i, dev in zip(winners[1:], owners[1:], batch[1:]):
            if (before == i) != (int(w) == i):
                cex = Counterexample(profile, i, frozenset(np.flatnonzero(dev[i]).tolist()),
                                     before, int(w))
                return CheckReport("fail", trial + 1, cex)
    return CheckReport("pass", trials)


STRUCTURE_PROPERTIES = (
    "beats_antisymmetric",
    "winner_unique",
    "winner_matches_select",
    "winner_degree_floor",
    "beater_near_max",
    "default_beater_is_max",
    "fallback_default_near_max",
    "third_node_near_max",
)


def _structure_violations(adj: np.ndarray, t: int, winners: np.ndarray) -> dict:
    from .mechanisms import beats_batch

    B, m, _ = adj.shape
    d = adj.sum(axis=1).astype(np.int64)
    top = d.max(axis=1)
    bt = beats_batch(adj, t)
    idx = np.arange(m)
    uni_src = bt.copy()
    uni_src[:, idx, idx] = True
    uni = uni_src.all(axis=2)
    has_uni = uni.any(axis=1)
    rows = np.arange(B)
    w_deg = d[rows, winners]
    d_t = d[:, t]
    is_max = d == top[:, None]
    max_beats_t = is_max & bt[:, :, t]
    max_beats_t[:, t] = False
    no_uni = ~has_uni
    # for every max-degree i != t beating t, a third node j has d_j >= top - 2
    near = d >= (top - 2)[:, None]
    near_count = near.sum(axis=1)
    t_near = near[:, t]
    third_ok = (near_count[:, None] - near - t_near[:, None]) >= 1
    expected = np.where(has_uni, uni.argmax(axis=1), t)
    return {
        "beats_antisymmetric": int((bt & bt.transpose(0, 2, 1)).any(axis=(1, 2)).sum()),
        "winner_unique": int((uni.sum(axis=1) > 1).sum()),
        "winner_matches_select": int((expected != winners).sum()),
        "winner_degree_floor": int((w_deg < d_t).sum()),
        "beater_near_max": int((has_uni & (winners != t) & (w_deg < top - 1)).sum()),
        "default_beater_is_max": int((uni[:, t] & (d_t < top)).sum()),
        "fallback_default_near_max": int((no_uni & ~max_beats_t.any(axis=1) & (d_t < top - 1)).sum()),
        "third_node_near_max": int((no_uni[:, None] & max_beats_t & ~third_ok).any(axis=1).sum()),
    }


def check_structure(m: int, defaults=None) -> dict:
    """Count profiles violating each structural property of AVD, over every profile.

    Properties are evaluated for each default node in ``defaults`` (all nodes
    when omitted); the result maps property name to violation count.
    """
    from .mechanisms import AVDBeats

    if not 2 <= m <= MAX_EXHAUSTIVE_M:
        raise ValueError(f"structure check supports 2 <= m <= {MAX_EXHAUSTIVE_M}, got {m}")
    defaults = range(m) if defaults is None else [int(t) for t in defaults]
    total = 1 << ((m - 1) * m)
    counts = dict.fromkeys(STRUCTURE_PROPERTIES, 0)
    for start in range(0, total, _CHUNK):
        adj = enumerate_profiles(m, start, start + _CHUNK)
        for t in defaults:
            winners = AVDBeats(default=t).select_batch(adj)
            for key, v in _structure_violations(adj, t, winners).items():
                counts[key] += v
    return {"m": m, "defaults": list(defaults), "profiles": total, "violations": counts}
