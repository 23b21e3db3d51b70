"""Priors over nomination profiles and their samplers.

Every prior exposes ``m`` (node count), ``expected_in_degrees()``,
``sample(rng)`` and ``to_dict()``. Popularity-type priors (``Uniform`` and
``Popularity``) can also be sampled lazily: in-degrees are drawn marginally and
individual edges are only revealed when a mechanism asks for them.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from typing import Union

import numpy as np

from .profile import NominationProfile
from .validation import check_probability

# Dense EdgeMatrix sampling needs an (m, m) float draw.
EDGE_MATRIX_MAX_M = 2**14
SUBSET_TABLE_MAX_ROW = 2**15


def _random_adjacency(rng: np.random.Generator, m: int, probs) -> np.ndarray:
    adj = rng.random((m, m)) < probs
    np.fill_diagonal(adj, False)
    return adj


@dataclass(frozen=True)
class Uniform:
    m: int
    p: float

    kind = "uniform"

    def __post_init__(self):
        if self.m < 1:
            raise ValueError(f"m must be >= 1, got {self.m}")
        object.__setattr__(self, "p", check_probability(self.p))

    def expected_in_degrees(self) -> np.ndarray:
        return np.full(self.m, (self.m - 1) * self.p)

    def popularities(self) -> np.ndarray:
        return np.full(self.m, self.p)

    def sample(self, rng) -> NominationProfile:
        return NominationProfile(_random_adjacency(rng, self.m, self.p))

    def to_dict(self) -> dict:
        return {"kind": self.kind, "m": self.m, "p": self.p}


@dataclass(frozen=True, eq=False)
class Popularity:
    """Candidate ``j`` receives each vote independently with probability ``p[j]``."""

    p: np.ndarray

    kind = "popularity"

    def __post_init__(self):
        p = np.array(self.p, dtype=float)
        if p.ndim != 1 or p.size < 1:
            raise ValueError("popularity vector must be 1-D and non-empty")
        if np.any((p < 0) | (p > 1)) or np.any(np.isnan(p)):
            raise ValueError("popularities must lie in [0, 1]")
        p.flags.writeable = False
        object.__setattr__(self, "p", p)

    @property
    def m(self) -> int:
        return self.p.size

    def expected_in_degrees(self) -> np.ndarray:
        return (self.m - 1) * self.p

    def popularities(self) -> np.ndarray:
        return self.p

    def sample(self, rng) -> NominationProfile:
        return NominationProfile(_random_adjacency(rng, self.m, self.p[None, :]))

    def to_dict(self) -> dict:
        return {"kind": self.kind, "p": self.p.tolist()}


@dataclass(frozen=True, eq=False)
class EdgeMatrix:
    """Independent edges, edge ``(i, j)`` present with probability ``q[i, j]``."""

    q: np.ndarray

    kind = "edge_matrix"

    def __post_init__(self):
        q = np.array(self.q, dtype=float)
        if q.ndim != 2 or q.shape[0] != q.shape[1] or q.shape[0] < 1:
            raise ValueError(f"edge matrix must be square, got shape {q.shape}")
        if np.any((q < 0) | (q > 1)) or np.any(np.isnan(q)):
            raise ValueError("edge probabilities must lie in [0, 1]")
        if np.any(np.diagonal(q) != 0):
            raise ValueError("edge matrix diagonal must be exactly 0")
        q.flags.writeable = False
        object.__setattr__(self, "q", q)

    @property
    def m(self) -> int:
        return self.q.shape[0]

    def expected_in_degrees(self) -> np.ndarray:
        return self.q.sum(axis=0)

    def sample(self, rng) -> NominationProfile:
        if self.m > EDGE_MATRIX_MAX_M:
            raise ValueError(f"dense EdgeMatrix sampling is capped at m <= {EDGE_MATRIX_MAX_M}")
        return NominationProfile(_random_adjacency(rng, self.m, self.q))

    def to_dict(self) -> dict:
        return {"kind": self.kind, "q": self.q.tolist()}


@dataclass(frozen=True, eq=False)
class SubsetTable:
    """Full opinion-poll prior: voter ``i`` picks subset ``S`` with probability ``rows[i][S]``."""

    m: int
    rows: tuple

    kind = "subset_table"

    def __post_init__(self):
        if len(self.rows) != self.m:
            raise ValueError(f"need one row per voter: {len(self.rows)} rows for m={self.m}")
        rows = []
        for i, row in enumerate(self.rows):
            row = [(frozenset(int(j) for j in subset), float(prob)) for subset, prob in row]
            if not row:
                raise ValueError(f"voter {i} has an empty table")
            if len(row) > SUBSET_TABLE_MAX_ROW:
                raise ValueError(f"voter {i} table exceeds {SUBSET_TABLE_MAX_ROW} entries")
            for subset, prob in row:
                if i in subset:
                    raise ValueError(f"voter {i} approves itself in {sorted(subset)}")
                if any(not 0 <= j < self.m for j in subset):
                    raise ValueError(f"voter {i} subset {sorted(subset)} out of range")
                check_probability(prob, f"probability of voter {i}")
            total = sum(prob for _, prob in row)
            if abs(total - 1.0) > 1e-12:
                raise ValueError(f"voter {i} probabilities sum to {total!r}, not 1")
            rows.append(tuple(row))
        object.__setattr__(self, "rows", tuple(rows))

    def expected_in_degrees(self) -> np.ndarray:
        exp = np.zeros(self.m)
        for row in self.rows:
            for subset, prob in row:
                for j in subset:
                    exp[j] += prob
        return exp

    def sample(self, rng) -> NominationProfile:
        adj = np.zeros((self.m, self.m), dtype=bool)
        for i, row in enumerate(self.rows):
            cum = np.cumsum([prob for _, prob in row])
            idx = min(int(np.searchsorted(cum, rng.random(), side="right")), len(row) - 1)
            for j in row[idx][0]:
                adj[i, j] = True
        return NominationProfile(adj)

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "m": self.m,
            "rows": [[[sorted(s), prob] for s, prob in row] for row in self.rows],
        }


@dataclass(frozen=True, eq=False)
class Duplicated:
    """Every node ``j`` gets a sink twin ``j + m`` receiving a copy of each vote for ``j``."""

    base: Union[Uniform, Popularity, EdgeMatrix]

    kind = "duplicated"

    def __post_init__(self):
        if not isinstance(self.base, (Uniform, Popularity, EdgeMatrix)):
            raise TypeError(f"cannot duplicate a {type(self.base).__name__} prior")

    @property
    def m(self) -> int:
        return 2 * self.base.m

    def expected_in_degrees(self) -> np.ndarray:
        e = self.base.expected_in_degrees()
        return np.concatenate([e, e])

    def sample(self, rng) -> NominationProfile:
        base = self.base.sample(rng).adjacency
        mb = base.shape[0]
        adj = np.zeros((2 * mb, 2 * mb), dtype=bool)
        adj[:mb, :mb] = base
        adj[:mb, mb:] = base
        return NominationProfile(adj)

    def to_dict(self) -> dict:
        return {"kind": self.kind, "base": self.base.to_dict()}


@dataclass(frozen=True)
class BlockCorrelated:
    """Correlated instance on ``8k + 2`` nodes.

    Node 0 (``a``) receives votes from all of block A (nodes ``2 .. 4k+1``)
    or from nobody, each with probability 1/2; node 1 (``b``) likewise from
    block B (nodes ``4k+2 .. 8k+1``), independently.
    """

    k: int

    kind = "block_correlated"

    def __post_init__(self):
        if self.k < 1:
            raise ValueError(f"k must be >= 1, got {self.k}")

    @property
    def m(self) -> int:
        return 8 * self.k + 2

    @property
    def block_a(self) -> range:
        return range(2, 4 * self.k + 2)

    @property
    def block_b(self) -> range:
        return range(4 * self.k + 2, 8 * self.k + 2)

    def expected_in_degrees(self) -> np.ndarray:
        exp = np.zeros(self.m)
        exp[:2] = 2 * self.k
        return exp

    def sample(self, rng) -> NominationProfile:
        coin_a, coin_b = rng.integers(0, 2, size=2)
        adj = np.zeros((self.m, self.m), dtype=bool)
        if coin_a:
            adj[self.block_a.start:self.block_a.stop, 0] = True
        if coin_b:
            adj[self.block_b.start:self.block_b.stop, 1] = True
        return NominationProfile(adj)

    def to_dict(self) -> dict:
        return {"kind": self.kind, "k": self.k}


Prior = Union[Uniform, Popularity, EdgeMatrix, SubsetTable, Duplicated, BlockCorrelated]


def expected_in_degrees(prior: Prior) -> np.ndarray:
    return prior.expected_in_degrees()


def sample_profile(prior: Prior, rng) -> NominationProfile:
    return prior.sample(rng)


def duplicate(base: Prior) -> Duplicated:
    return Duplicated(base)


@dataclass(eq=False)
class LazySample:
    """In-degrees of a popularity prior with edges revealed on demand.

    Conditioned on ``totals[j]``, the voters of ``j`` form a uniformly random
    subset of the ``m - 1`` other nodes, so each reveal draws the next
    indicator with probability (remaining positives) / (remaining voters).
    """

    totals: np.ndarray
    _memo: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        self.totals = np.asarray(self.totals, dtype=np.int64)
        m = self.totals.size
        if np.any(self.totals < 0) or np.any(self.totals > m - 1):
            raise ValueError("totals must lie in [0, m - 1]")
        self._pos = np.zeros(m, dtype=np.int64)
        self._seen = np.zeros(m, dtype=np.int64)

    @property
    def m(self) -> int:
        return self.totals.size

    @property
    def reveals(self) -> int:
        return len(self._memo)

    @property
    def revealed(self) -> dict[int, dict[int, bool]]:
        out: dict[int, dict[int, bool]] = {}
        for (i, j), v in self._memo.items():
            out.setdefault(j, {})[i] = v
        return out

    def reveal(self, i: int, j: int, rng) -> bool:
        if i == j:
            raise ValueError(f"self-loop query ({i}, {j})")
        key = (i, j)
        hit = self._memo.get(key)
        if hit is not None:
            return hit
        left = self.m - 1 - self._seen[j]
        pos_left = self.totals[j] - self._pos[j]
        # integer draw keeps the path platform independent
        x = bool(rng.integers(0, left) < pos_left)
        self._memo[key] = x
        self._seen[j] += 1
        self._pos[j] += x
        return x

    def materialize(self, rng) -> NominationProfile:
        """Reveal every remaining edge and return the full profile."""
        m = self.m
        adj = np.zeros((m, m), dtype=bool)
        for (i, j), v in self._memo.items():
            adj[i, j] = v
        for j in range(m):
            pos_left = int(self.totals[j] - self._pos[j])
            unseen = [i for i in range(m) if i != j and (i, j) not in self._memo]
            if pos_left:
                chosen = rng.permutation(len(unseen))[:pos_left]
                adj[np.asarray(unseen)[chosen], j] = True
            for i in unseen:
                self._memo[(i, j)] = bool(adj[i, j])
            self._seen[j] = m - 1
            self._pos[j] = self.totals[j]
        return NominationProfile(adj)


def sample_lazy(prior: Union[Uniform, Popularity], rng) -> LazySample:
    if not isinstance(prior, (Uniform, Popularity)):
        raise TypeError(f"lazy sampling needs a popularity prior, got {type(prior).__name__}")
    return LazySample(rng.binomial(prior.m - 1, prior.popularities()))


def reveal_edge(s: LazySample, i: int, j: int, rng) -> bool:
    return s.reveal(i, j, rng)


def _load_csv(path: str, base_dir: str | None) -> np.ndarray:
    if base_dir and not os.path.isabs(path):
        path = os.path.join(base_dir, path)
    return np.loadtxt(path, delimiter=",", ndmin=1)


def prior_from_dict(data: dict, base_dir: str | None = None) -> Prior:
    """Build a prior from its JSON form; vectors and matrices may live in CSV files."""
    kind = data.get("kind")
    if kind == "uniform":
        return Uniform(int(data["m"]), float(data["p"]))
    if kind == "popularity":
        p = data["p"] if "p" in data else _load_csv(data["p_csv"], base_dir)
        return Popularity(np.asarray(p, dtype=float).ravel())
    if kind == "edge_matrix":
        q = data["q"] if "q" in data else np.atleast_2d(_load_csv(data["q_csv"], base_dir))
        return EdgeMatrix(np.asarray(q, dtype=float))
    if kind == "subset_table":
        rows = tuple(tuple((tuple(s), prob) for s, prob in row) for row in data["rows"])
        return SubsetTable(int(data["m"]), rows)
    if kind == "duplicated":
        return Duplicated(prior_from_dict(data["base"], base_dir))
    if kind == "block_correlated":
        return BlockCorrelated(int(data["k"]))
    raise ValueError(f"unknown prior kind {kind!r}")
