"""Nomination profiles: directed graphs without self-loops.

A profile over ``m`` nodes is stored as a dense, read-only ``(m, m)`` boolean
adjacency matrix where ``adjacency[i, j]`` is true iff ``i`` nominates ``j``.
Restricted in-degree queries subtract the rows of the excluded voters from the
column of the candidate, which is all the beats relation needs.
"""

from __future__ import annotations

import json
from typing import Iterable

import numpy as np


class ProfileError(ValueError):
    """Base class for malformed nomination profiles."""


class SelfLoopError(ProfileError):
    pass


class NodeRangeError(ProfileError):
    pass


class DuplicateEdgeError(ProfileError):
    pass


class NominationProfile:
    """Immutable nomination profile.

    Parameters
    ----------
    adjacency : array-like of shape (m, m)
        Boolean adjacency matrix with a false diagonal. Use
        :func:`new_profile` to build a profile from an edge list.
    """

    __slots__ = ("_adj", "_deg")

    def __init__(self, adjacency):
        adj = np.array(adjacency, dtype=bool, copy=True)
        if adj.ndim != 2 or adj.shape[0] != adj.shape[1] or adj.shape[0] < 1:
            raise ProfileError(f"adjacency must be a non-empty square matrix, got shape {adj.shape}")
        loops = np.flatnonzero(np.diagonal(adj))
        if loops.size:
            j = int(loops[0])
            raise SelfLoopError(f"self-loop edge ({j}, {j})")
        adj.flags.writeable = False
        deg = adj.sum(axis=0, dtype=np.int64)
        deg.flags.writeable = False
        self._adj = adj
        self._deg = deg

    @property
    def m(self) -> int:
        return self._adj.shape[0]

    @property
    def adjacency(self) -> np.ndarray:
        return self._adj

    @property
    def in_degrees(self) -> np.ndarray:
        return self._deg

    def out_edges(self, i: int) -> frozenset[int]:
        return frozenset(int(j) for j in np.flatnonzero(self._adj[i]))

    def edges(self) -> list[tuple[int, int]]:
        """Edges in lexicographic order."""
        src, dst = np.nonzero(self._adj)
        return [(int(a), int(b)) for a, b in zip(src, dst)]

    def with_out_edges(self, i: int, targets: Iterable[int]) -> "NominationProfile":
        """Profile identical to this one except for node ``i``'s votes."""
        _check_node(i, self.m)
        adj = self._adj.copy()
        adj[i] = False
        for j in targets:
            _check_node(j, self.m)
            if j == i:
                raise SelfLoopError(f"self-loop edge ({i}, {i})")
            adj[i, j] = True
        return NominationProfile(adj)

    def to_dict(self) -> dict:
        return {"m": self.m, "edges": [list(e) for e in self.edges()]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, data: dict) -> "NominationProfile":
        return new_profile(int(data["m"]), [tuple(e) for e in data["edges"]])

    def __eq__(self, other):
        if not isinstance(other, NominationProfile):
            return NotImplemented
        return self.m == other.m and bool(np.array_equal(self._adj, other._adj))

    def __hash__(self):
        return hash((self.m, self._adj.tobytes()))

    def __repr__(self):
        return f"NominationProfile(m={self.m}, edges={self.edges()})"


def _check_node(j, m: int) -> int:
    if isinstance(j, (bool, np.bool_)) or not isinstance(j, (int, np.integer)):
        raise TypeError(f"node index must be an integer, got {j!r}")
    if not 0 <= j < m:
        raise NodeRangeError(f"node {j} out of range [0, {m})")
    return int(j)


def new_profile(m: int, edges: Iterable[tuple[int, int]] = ()) -> NominationProfile:
    """Build a profile on ``m`` nodes containing exactly ``edges``.

    Raises :class:`SelfLoopError`, :class:`NodeRangeError` or
    :class:`DuplicateEdgeError` naming the offending edge.
    """
    if m < 1:
        raise ProfileError(f"m must be >= 1, got {m}")
    adj = np.zeros((m, m), dtype=bool)
    for edge in edges:
        i, j = edge
        if not (0 <= i < m and 0 <= j < m):
            raise NodeRangeError(f"edge ({i}, {j}) references a node outside [0, {m})")
        if i == j:
            raise SelfLoopError(f"self-loop edge ({i}, {j})")
        if adj[i, j]:
            raise DuplicateEdgeError(f"duplicate edge ({i}, {j})")
        adj[i, j] = True
    return NominationProfile(adj)


def in_degree(p: NominationProfile, j: int, exclude: Iterable[int] = ()) -> int:
    """Votes received by ``j`` from voters outside ``exclude``."""
    j = _check_node(j, p.m)
    excl = {_check_node(s, p.m) for s in exclude}
    excl.discard(j)
    d = int(p.in_degrees[j])
    for s in excl:
        d -= int(p.adjacency[s, j])
    return d


def max_in_degree(p: NominationProfile) -> tuple[int, frozenset[int]]:
    deg = p.in_degrees
    top = int(deg.max())
    return top, frozenset(int(j) for j in np.flatnonzero(deg == top))


def beats(p: NominationProfile, k: int, j: int, t: int) -> bool:
    """Whether ``k`` beats ``j`` with ``t`` as the default node.

    Votes from ``j``, ``k`` and ``t`` are ignored; when one of the pair is
    the default only the pair itself is excluded.
    """
    k, j, t = (_check_node(v, p.m) for v in (k, j, t))
    if k == j:
        raise ValueError(f"beats needs two distinct nodes, got k = j = {k}")
    excl = {j, k, t}
    return in_degree(p, k, excl) > in_degree(p, j, excl)


def additive_gap(p: NominationProfile, w: int) -> int:
    w = _check_node(w, p.m)
    return int(p.in_degrees.max()) - int(p.in_degrees[w])
