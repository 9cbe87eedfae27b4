"""Stable seed derivation for reproducible simulations.

Every stochastic step (initial sample, fold split, bag draws, boosting
resamples, tie-breaks) derives its own seed from a master seed plus a
purpose tag and positional parts.  Derivation goes through SHA-256 so the
streams are stable across platforms, Python versions, and process counts,
unlike the builtin ``hash``.
"""

from __future__ import annotations

import hashlib

import numpy as np

__all__ = ["derive_seed", "rng_for", "mix_ids"]

_U64 = np.uint64


def derive_seed(master_seed: int, *parts: int | str) -> int:
    """Derive a 64-bit seed from a master seed and a tuple of parts.

    Parts may be ints (fold index, round, member) or strings (purpose
    tags, unit names).  The result depends on order and type.
    """
    h = hashlib.sha256()
    for p in (master_seed, *parts):
        if isinstance(p, str):
            h.update(b"s")
            h.update(p.encode("utf-8"))
        elif isinstance(p, (int, np.integer)):
            h.update(b"i")
            h.update(str(int(p)).encode("ascii"))
        else:
            raise TypeError(f"seed parts must be int or str, got {type(p).__name__}")
        h.update(b"\x00")
    return int.from_bytes(h.digest()[:8], "little")


def rng_for(master_seed: int, *parts: int | str) -> np.random.Generator:
    """A fresh ``numpy`` Generator seeded by :func:`derive_seed`."""
    return np.random.default_rng(derive_seed(master_seed, *parts))


def mix_ids(seed: int, ids: np.ndarray) -> np.ndarray:
    """Map example ids to pseudo-random uint64 keys, keyed by ``seed``.

    Used for deterministic, seed-dependent tie-breaking when sorting
    candidate examples.  splitmix64 finalizer, vectorized.
    """
    z = ids.astype(_U64) + _U64(seed & 0xFFFFFFFFFFFFFFFF)
    with np.errstate(over="ignore"):
        z += _U64(0x9E3779B97F4A7C15)
        z = (z ^ (z >> _U64(30))) * _U64(0xBF58476D1CE4E5B9)
        z = (z ^ (z >> _U64(27))) * _U64(0x94D049BB133111EB)
        z ^= z >> _U64(31)
    return z
