"""Deterministic selection mechanisms as scikit-learn style estimators.

``fit(prior)`` picks the default node from the prior (the node of highest
expected in-degree unless ``default`` is given); ``predict`` maps profiles to
winners and ``score`` is the negated mean additive gap, so larger is better.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from sklearn.base import BaseEstimator
from sklearn.exceptions import NotFittedError

from .priors import LazySample
from .profile import NominationProfile
from .validation import check_node, check_profiles


@dataclass(frozen=True)
class SelectionOutcome:
    winner: int
    winner_degree: int
    gap: int
    via_default: bool


def default_node(prior) -> int:
    """Highest expected in-degree, ties to the lowest index."""
    return int(np.argmax(prior.expected_in_degrees()))


def beats_batch(adj: np.ndarray, t: int) -> np.ndarray:
    """``out[b, k, j]`` is true iff ``k`` beats ``j`` in profile ``b`` (default ``t``)."""
    A = adj.astype(np.int16)
    d = A.sum(axis=1)
    from_t = A[:, t, :]
    score_k = d[:, :, None] - A.transpose(0, 2, 1) - from_t[:, :, None]
    score_j = d[:, None, :] - A - from_t[:, None, :]
    out = score_k > score_j
    # pairs involving the default exclude only the pair itself
    k_side = d - from_t
    t_side = d[:, t][:, None] - A[:, :, t]
    out[:, :, t] = k_side > t_side
    out[:, t, :] = t_side > k_side
    idx = np.arange(adj.shape[1])
    out[:, idx, idx] = False
    return out


def universal_beaters(adj: np.ndarray, t: int) -> np.ndarray:
    """``out[b, k]`` is true iff ``k`` beats every other node of profile ``b``."""
    b = beats_batch(adj, t)
    m = adj.shape[1]
    idx = np.arange(m)
    b[:, idx, idx] = True
    return b.all(axis=2)


def _beats_all(A: np.ndarray, d: np.ndarray, k: int, t: int) -> bool:
    if k == t:
        mine = d[t] - A[:, t].astype(np.int64)
        theirs = d - A[t].astype(np.int64)
        ok = mine > theirs
        ok[t] = True
        return bool(ok.all())
    mine = d[k] - A[:, k].astype(np.int64) - int(A[t, k])
    theirs = d - A[k].astype(np.int64) - A[t].astype(np.int64)
    ok = mine > theirs
    ok[k] = True
    ok[t] = d[k] - int(A[t, k]) > d[t] - int(A[k, t])
    return bool(ok.all())


class SelectionMechanism(BaseEstimator):
    """Shared estimator plumbing; subclasses implement ``_choose``."""

    kind = "abstract"
    uses_default = True

    def __init__(self, default=None):
        self.default = default

    def fit(self, prior, y=None):
        self.n_nodes_ = prior.m
        self.default_ = default_node(prior) if self.default is None else check_node(
            self.default, prior.m, "default")
        return self

    def resolved_default(self, m: int) -> int:
        if self.default is not None:
            return check_node(self.default, m, "default")
        if not hasattr(self, "default_"):
            raise NotFittedError(
                f"{type(self).__name__} has no default node: pass default= or call fit(prior)")
        return check_node(self.default_, m, "default")

    def _choose(self, A, d, t) -> tuple[int, bool]:
        raise NotImplementedError

    def _choose_batch(self, adj, t) -> np.ndarray:
        raise NotImplementedError

    def select(self, profile: NominationProfile) -> SelectionOutcome:
        t = self.resolved_default(profile.m) if self.uses_default else -1
        d = profile.in_degrees
        w, via = self._choose(profile.adjacency, d, t)
        top = int(d.max())
        return SelectionOutcome(w, int(d[w]), top - int(d[w]), via)

    def select_batch(self, X) -> np.ndarray:
        adj = check_profiles(X)
        t = self.resolved_default(adj.shape[1]) if self.uses_default else -1
        return self._choose_batch(adj, t)

    def predict(self, X) -> np.ndarray:
        if isinstance(X, (NominationProfile, np.ndarray)):
            return self.select_batch(X)
        return np.array([self.select(p).winner for p in X], dtype=np.int64)

    def score(self, X, y=None) -> float:
        adj = check_profiles(X)
        winners = self.select_batch(adj)
        deg = adj.sum(axis=1)
        gaps = deg.max(axis=1) - deg[np.arange(len(deg)), winners]
        return -float(gaps.mean())

    def to_dict(self) -> dict:
        out = {"kind": self.kind}
        if self.uses_default and self.default is not None:
            out["default"] = int(self.default)
        return out


class ConstantMechanism(SelectionMechanism):
    """Ignores the profile and returns the default node."""

    kind = "constant"

    def _choose(self, A, d, t):
        return t, True

    def _choose_batch(self, adj, t):
        return np.full(adj.shape[0], t, dtype=np.int64)


class AVDBeats(SelectionMechanism):
    """Approval voting with default: the node beating every other node, else the default."""

    kind = "avd_beats"

    def _choose(self, A, d, t):
        top = d.max()
        cands = np.flatnonzero(d >= top - 1).tolist()
        if t not in cands:
            cands.append(t)
        for k in sorted(cands):
            if _beats_all(A, d, k, t):
                return k, False
        return t, True

    def _choose_batch(self, adj, t):
        uni = universal_beaters(adj, t)
        has = uni.any(axis=1)
        return np.where(has, uni.argmax(axis=1), t).astype(np.int64)


class AVDTie(SelectionMechanism):
    """The unique maximum in-degree node, or the default on a tie. Not impartial."""

    kind = "avd_tie"

    def _choose(self, A, d, t):
        top = np.flatnonzero(d == d.max())
        if top.size == 1:
            return int(top[0]), False
        return t, True

    def _choose_batch(self, adj, t):
        d = adj.sum(axis=1)
        is_top = d == d.max(axis=1, keepdims=True)
        unique = is_top.sum(axis=1) == 1
        return np.where(unique, is_top.argmax(axis=1), t).astype(np.int64)


class ApprovalVoting(SelectionMechanism):
    """Highest in-degree, ties to the lowest index. Not impartial."""

    kind = "approval"
    uses_default = False

    def __init__(self):
        pass

    def fit(self, prior, y=None):
        self.n_nodes_ = prior.m
        return self

    def _choose(self, A, d, t):
        return int(np.argmax(d)), False

    def _choose_batch(self, adj, t):
        return adj.sum(axis=1).argmax(axis=1).astype(np.int64)


MECHANISMS = {cls.kind: cls for cls in (ConstantMechanism, AVDBeats, AVDTie, ApprovalVoting)}


def mechanism_from_dict(data: dict) -> SelectionMechanism:
    kind = data.get("kind")
    if kind not in MECHANISMS:
        raise ValueError(f"unknown mechanism kind {kind!r}")
    cls = MECHANISMS[kind]
    if not cls.uses_default:
        return cls()
    default = data.get("default")
    return cls(default=None if default is None else int(default))


def select(mech: SelectionMechanism, p: NominationProfile) -> SelectionOutcome:
    return mech.select(p)


def _lazy_beats_all(s: LazySample, k: int, t: int, rng) -> bool:
    diff = s.totals[k] - s.totals
    # Excluding voters moves a comparison by at most 2, or by 1 when the
    # default is one of the pair; outside that band the totals decide.
    lo = np.full(s.m, -2)
    hi = np.full(s.m, 3)
    if k == t:
        lo[:], hi[:] = -1, 2
    else:
        lo[t], hi[t] = -1, 2
    lo[k], hi[k] = np.iinfo(np.int64).min, np.iinfo(np.int64).min
    if np.any(diff <= lo):
        return False
    for j in np.flatnonzero(diff < hi).tolist():
        dj = int(diff[j])
        if k == t:
            margin = dj - s.reveal(j, t, rng) + s.reveal(t, j, rng)
        elif j == t:
            margin = dj - s.reveal(t, k, rng) + s.reveal(k, t, rng)
        else:
            margin = (dj - s.reveal(j, k, rng) - s.reveal(t, k, rng)
                      + s.reveal(k, j, rng) + s.reveal(t, j, rng))
        if margin <= 0:
            return False
    return True


def select_lazy(mech: SelectionMechanism, s: LazySample, rng) -> SelectionOutcome:
    """Run ``mech`` on a lazily sampled profile, revealing only the edges it needs.

    Only near-tied comparisons touch edges; every other mechanism here needs
    the in-degrees alone.
    """
    tot = s.totals
    top = int(tot.max())
    if isinstance(mech, AVDBeats):
        t = mech.resolved_default(s.m)
        cands = np.flatnonzero(tot >= top - 1).tolist()
        if t not in cands:
            cands.append(t)
        w, via = t, True
        for k in sorted(cands):
            if _lazy_beats_all(s, k, t, rng):
                w, via = k, False
                break
    else:
        t = mech.resolved_default(s.m) if mech.uses_default else -1
        w, via = mech._choose(None, tot, t)
    return SelectionOutcome(int(w), int(tot[w]), top - int(tot[w]), via)
