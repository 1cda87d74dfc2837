"""Partial (n,k,t)_lambda-systems: the data model, validity and independence.

Vertices are dense integers ``0..n-1``. Blocks are stored as one ``(m, k)``
int32 array with every row sorted ascending; duplicate rows are allowed since a
system's blocks form a collection, not a set. The vertex-to-block index is a
CSR pair built on first use.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from math import comb
from typing import Iterable, Optional

import numpy as np

from .errors import InputError, ParameterError, StructuralError

__all__ = [
    "Params",
    "PartialSystem",
    "ValidationReport",
    "VertexIndex",
    "validate",
    "is_independent",
    "is_complete",
    "truncate_to_order",
]


@dataclass(frozen=True)
class Params:
    n: int
    k: int
    t: int
    lam: int = 1

    def __post_init__(self):
        for name in ("n", "k", "t", "lam"):
            if int(getattr(self, name)) != getattr(self, name):
                raise ParameterError(f"{name} must be an integer")
        if not (self.n >= self.k > self.t >= 2):
            raise ParameterError(
                f"need n >= k > t >= 2, got n={self.n}, k={self.k}, t={self.t}"
            )
        if self.lam < 1:
            raise ParameterError(f"lambda must be >= 1, got {self.lam}")


@dataclass(frozen=True)
class VertexIndex:
    """Blocks containing vertex ``v`` are ``block_ids[indptr[v]:indptr[v+1]]``."""

    indptr: np.ndarray
    block_ids: np.ndarray

    def __getitem__(self, v: int) -> np.ndarray:
        return self.block_ids[self.indptr[v] : self.indptr[v + 1]]

    def degree(self, v: int) -> int:
        return int(self.indptr[v + 1] - self.indptr[v])


def _frozen(a: np.ndarray) -> np.ndarray:
    a.flags.writeable = False
    return a


class PartialSystem:
    """Vertex count, parameters and an (m, k) array of sorted blocks."""

    def __init__(self, params: Params, blocks=()):
        self.params = params
        self.blocks = _frozen(_coerce_blocks(params, blocks))

    @property
    def n(self) -> int:
        return self.params.n

    @property
    def k(self) -> int:
        return self.params.k

    @property
    def num_blocks(self) -> int:
        return int(self.blocks.shape[0])

    def __len__(self):
        return self.num_blocks

    def __repr__(self):
        p = self.params
        return (
            f"PartialSystem(n={p.n}, k={p.k}, t={p.t}, lam={p.lam}, "
            f"blocks={self.num_blocks})"
        )

    @cached_property
    def vertex_index(self) -> VertexIndex:
        n, k = self.n, self.k
        flat = self.blocks.ravel()
        counts = np.bincount(flat, minlength=n)
        indptr = np.zeros(n + 1, dtype=np.int64)
        np.cumsum(counts, out=indptr[1:])
        order = np.argsort(flat, kind="stable")
        block_ids = (order // k).astype(np.int32)
        del order
        return VertexIndex(_frozen(indptr), _frozen(block_ids))

    def blocks_touching(self, vertices: Iterable[int]) -> np.ndarray:
        """Sorted ids of blocks sharing at least one vertex with ``vertices``."""
        idx = self.vertex_index
        parts = [idx[int(v)] for v in vertices]
        if not parts:
            return np.empty(0, dtype=np.int32)
        return np.unique(np.concatenate(parts))


def _coerce_blocks(params: Params, blocks) -> np.ndarray:
    n, k = params.n, params.k
    if isinstance(blocks, np.ndarray):
        arr = blocks
        if arr.size == 0:
            return np.empty((0, k), dtype=np.int32)
        if arr.ndim != 2 or arr.shape[1] != k:
            raise StructuralError(0, f"expected shape (m, {k}), got {arr.shape}")
    else:
        rows = [tuple(b) for b in blocks]
        for i, row in enumerate(rows):
            if len(row) != k:
                raise StructuralError(i, f"has {len(row)} vertices, expected {k}")
        if not rows:
            return np.empty((0, k), dtype=np.int32)
        arr = np.array(rows, dtype=np.int64)
    if not np.issubdtype(arr.dtype, np.integer):
        raise StructuralError(0, f"vertex ids must be integers, got {arr.dtype}")
    bad = np.flatnonzero(((arr < 0) | (arr >= n)).any(axis=1))
    if bad.size:
        raise StructuralError(int(bad[0]), f"vertex id out of range 0..{n - 1}")
    arr = np.sort(arr.astype(np.int32, copy=False), axis=1)
    bad = np.flatnonzero((np.diff(arr, axis=1) == 0).any(axis=1))
    if bad.size:
        raise StructuralError(int(bad[0]), "repeated vertex")
    return arr


@dataclass(frozen=True)
class ValidationReport:
    valid: bool
    max_multiplicity: int
    witness: Optional[tuple] = None


def _tset_keys(blocks: np.ndarray, n: int, t: int) -> np.ndarray:
    """Encode every t-subset of every block as one int64 (base-n digits)."""
    k = blocks.shape[1]
    out = []
    for combo in combinations(range(k), t):
        key = np.zeros(blocks.shape[0], dtype=np.int64)
        for col in combo:
            key *= n
            key += blocks[:, col]
        out.append(key)
    return np.concatenate(out)


def _decode_key(key: int, n: int, t: int) -> tuple:
    digits = []
    for _ in range(t):
        key, d = divmod(key, n)
        digits.append(d)
    return tuple(reversed(digits))


def validate(sys: PartialSystem) -> ValidationReport:
    """Largest t-set multiplicity, counted over t-subsets of blocks only."""
    n, k, t, lam = sys.params.n, sys.params.k, sys.params.t, sys.params.lam
    if sys.num_blocks == 0:
        return ValidationReport(True, 0, None)
    if n**t < 2**62:
        keys, counts = np.unique(_tset_keys(sys.blocks, n, t), return_counts=True)
        top = int(np.argmax(counts))
        witness_of = lambda i: _decode_key(int(keys[i]), n, t)  # noqa: E731
    else:
        cols = list(combinations(range(k), t))
        tsets = sys.blocks[:, cols].reshape(-1, t)
        rows, counts = np.unique(tsets, axis=0, return_counts=True)
        top = int(np.argmax(counts))
        witness_of = lambda i: tuple(int(v) for v in rows[i])  # noqa: E731
    mult = int(counts[top])
    if mult <= lam:
        return ValidationReport(True, mult, None)
    return ValidationReport(False, mult, witness_of(top))


def _vertex_array(sys: PartialSystem, S) -> np.ndarray:
    arr = np.fromiter((int(v) for v in S), dtype=np.int64)
    if arr.size and (arr.min() < 0 or arr.max() >= sys.n):
        raise InputError(f"vertex set contains ids outside 0..{sys.n - 1}")
    return arr


def is_independent(sys: PartialSystem, S) -> bool:
    """True iff no block is a subset of ``S``.

    Only blocks whose smallest vertex lies in ``S`` can fit inside it, so the
    scan walks the vertex index for members of ``S`` and nothing else.
    """
    verts = _vertex_array(sys, S)
    if verts.size < sys.k or sys.num_blocks == 0:
        return True
    mask = np.zeros(sys.n, dtype=bool)
    mask[verts] = True
    idx, blocks = sys.vertex_index, sys.blocks
    for v in np.unique(verts):
        ids = idx[v]
        if ids.size == 0:
            continue
        rows = blocks[ids]
        rows = rows[rows[:, 0] == v]
        if rows.size and mask[rows].all(axis=1).any():
            return False
    return True


def is_complete(sys: PartialSystem) -> bool:
    p = sys.params
    if not validate(sys).valid:
        return False
    total = p.lam * comb(p.n, p.t)
    per_block = comb(p.k, p.t)
    if total % per_block:
        return False
    return sys.num_blocks == total // per_block


def truncate_to_order(sys: PartialSystem) -> PartialSystem:
    """Drop the k-t-1 largest vertices of every block, giving a (n, t+1, t) system."""
    p = sys.params
    if p.k == p.t + 1:
        raise ParameterError("blocks already have size t+1; nothing to truncate")
    new = Params(p.n, p.t + 1, p.t, p.lam)
    return PartialSystem(new, np.ascontiguousarray(sys.blocks[:, : p.t + 1]))
