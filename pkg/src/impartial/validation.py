"""Input validation helpers shared by the estimators and the CLI."""

from __future__ import annotations

import numbers

import numpy as np

from .profile import NominationProfile, NodeRangeError


def check_random_state(seed) -> np.random.Generator:
    """Turn ``seed`` into a :class:`numpy.random.Generator`.

    ``None`` gives fresh OS entropy, an integer seeds a PCG64 generator and an
    existing generator is passed through untouched.
    """
    if isinstance(seed, np.random.Generator):
        return seed
    if seed is None or isinstance(seed, numbers.Integral):
        return np.random.default_rng(seed)
    raise TypeError(f"cannot build a Generator from {seed!r}")


def check_probability(p, name: str = "p") -> float:
    p = float(p)
    if not 0.0 <= p <= 1.0 or np.isnan(p):
        raise ValueError(f"{name} must lie in [0, 1], got {p}")
    return p


def check_node(j, m: int, name: str = "node") -> int:
    if not isinstance(j, numbers.Integral) or isinstance(j, bool):
        raise TypeError(f"{name} must be an integer, got {j!r}")
    if not 0 <= j < m:
        raise NodeRangeError(f"{name} {j} out of range [0, {m})")
    return int(j)


def check_profiles(X) -> np.ndarray:
    """Coerce one profile or a batch of profiles into a ``(B, m, m)`` bool array."""
    if isinstance(X, NominationProfile):
        return X.adjacency[None]
    if isinstance(X, np.ndarray):
        arr = X.astype(bool, copy=False)
        if arr.ndim == 2:
            arr = arr[None]
        if arr.ndim != 3 or arr.shape[1] != arr.shape[2]:
            raise ValueError(f"expected adjacency batch of shape (B, m, m), got {X.shape}")
        if arr.shape[0] and np.any(np.diagonal(arr, axis1=1, axis2=2)):
            raise ValueError("adjacency batch contains self-loops")
        return arr
    profiles = list(X)
    if not profiles:
        raise ValueError("empty profile batch")
    if not all(isinstance(p, NominationProfile) for p in profiles):
        raise TypeError("expected NominationProfile instances")
    ms = {p.m for p in profiles}
    if len(ms) != 1:
        raise ValueError(f"profiles in a batch must share m, got {sorted(ms)}")
    return np.stack([p.adjacency for p in profiles])
