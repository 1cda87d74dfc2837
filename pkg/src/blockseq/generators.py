"""Instance generators: Bose and Skolem Steiner triple systems, random partial systems.

Point ``(x, i)`` of ``Z_m x {0,1,2}`` is relabelled row-major to ``3*x + i``;
Skolem's extra point at infinity becomes ``n - 1``.
"""
from __future__ import annotations

from collections import Counter
from itertools import combinations

import numpy as np

from .design import Params, PartialSystem
from .errors import ParameterError
from .rng import make_rng

STALL_FACTOR = 200


def _triple_system(n: int, blocks: np.ndarray) -> PartialSystem:
    return PartialSystem(Params(n, 3, 2, 1), blocks)


def _quasigroup_blocks(m: int, op) -> np.ndarray:
    """Blocks {(x,i), (y,i), (x*y, i+1)} for x < y and i in Z_3."""
    xs, ys = np.triu_indices(m, k=1)
    xs = xs.astype(np.int32)
    ys = ys.astype(np.int32)
    prod = op(xs, ys).astype(np.int32)
    out = np.empty((3 * xs.size, 3), dtype=np.int32)
    for i in range(3):
        part = out[i * xs.size : (i + 1) * xs.size]
        part[:, 0] = 3 * xs + i
        part[:, 1] = 3 * ys + i
        part[:, 2] = 3 * prod + (i + 1) % 3
    return out


def bose_sts(n: int) -> PartialSystem:
    """Steiner triple system of order n = 6v+3 from the idempotent quasigroup on Z_{2v+1}."""
    if n < 9 or n % 6 != 3:
        raise ParameterError(f"Bose construction needs n = 3 (mod 6), n >= 9; got {n}")
    m = n // 3
    half = (m + 1) // 2  # inverse of 2 mod m (m odd)
    xs = np.arange(m, dtype=np.int32)
    vertical = np.stack([3 * xs, 3 * xs + 1, 3 * xs + 2], axis=1)
    mixed = _quasigroup_blocks(
        m, lambda a, b: ((a.astype(np.int64) + b) * half) % m
    )
    return _triple_system(n, np.concatenate([vertical, mixed]))


def skolem_sts(n: int) -> PartialSystem:
    """Steiner triple system of order n = 6v+1 from the half-idempotent quasigroup on Z_{2v}."""
    if n < 7 or n % 6 != 1:
        raise ParameterError(f"Skolem construction needs n = 1 (mod 6), n >= 7; got {n}")
    v = (n - 1) // 6
    m = 2 * v
    inf = n - 1

    def op(a, b):
        s = (a.astype(np.int64) + b) % m
        # even sums 2c -> c, odd sums 2c+1 -> v + c
        return np.where(s % 2 == 0, s // 2, v + s // 2)

    xs = np.arange(v, dtype=np.int32)
    vertical = np.stack([3 * xs, 3 * xs + 1, 3 * xs + 2], axis=1)
    through_inf = np.concatenate(
        [
            np.stack([3 * (xs + v) + i, 3 * xs + (i + 1) % 3, np.full(v, inf)], axis=1)
            for i in range(3)
        ]
    )
    mixed = _quasigroup_blocks(m, op)
    return _triple_system(n, np.concatenate([vertical, through_inf, mixed]))


def random_partial(params: Params, target_blocks: int, seed: int) -> PartialSystem:
    """Greedy random partial system.

    Uniform k-sets are drawn and kept whenever every t-subset stays within
    multiplicity lambda. Growth stops at ``target_blocks`` or after
    ``200 * target_blocks`` consecutive rejections, so fewer blocks than asked
    for may come back.
    """
    if target_blocks < 0:
        raise ParameterError("target_blocks must be >= 0")
    n, k, t, lam = params.n, params.k, params.t, params.lam
    rng = make_rng(seed)
    counts: Counter = Counter()
    accepted = []
    stall, cap = 0, STALL_FACTOR * target_blocks
    while len(accepted) < target_blocks and stall < cap:
        block = tuple(sorted(int(v) for v in rng.choice(n, size=k, replace=False)))
        tsets = list(combinations(block, t))
        if all(counts[ts] < lam for ts in tsets):
            counts.update(tsets)
            accepted.append(block)
            stall = 0
        else:
            stall += 1
    return PartialSystem(params, accepted)
