"""Goodness checks on sequencings, computed block-side from spans.

A block sits inside some (cyclic) window of length ell exactly when its
(cyclic) span is at most ell, so a sequencing is ell-good iff every block's
span exceeds ell. One span per block keeps this linear in the block count.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import ceil

import numpy as np

from .design import PartialSystem, is_independent
from .errors import ContractError, InputError

CHUNK_ROWS = 1 << 21


class Sequencing:
    """Position -> vertex (``order``) together with its inverse."""

    def __init__(self, order):
        order = np.array(order, dtype=np.int32).reshape(-1)
        n = order.size
        inverse = np.full(n, -1, dtype=np.int32)
        if n and (order.min() < 0 or order.max() >= n):
            raise InputError(f"sequencing entries must lie in 0..{n - 1}")
        inverse[order] = np.arange(n, dtype=np.int32)
        if (inverse < 0).any():
            raise InputError("sequencing is not a permutation")
        order.flags.writeable = False
        inverse.flags.writeable = False
        self.order = order
        self.inverse = inverse

    @classmethod
    def identity(cls, n: int) -> "Sequencing":
        return cls(np.arange(n))

    @property
    def n(self) -> int:
        return int(self.order.size)

    def __len__(self):
        return self.n

    def __eq__(self, other):
        return isinstance(other, Sequencing) and np.array_equal(self.order, other.order)

    def __repr__(self):
        head = ", ".join(str(v) for v in self.order[:8])
        return f"Sequencing(n={self.n}, order=[{head}{', ...' if self.n > 8 else ''}])"


@dataclass(frozen=True)
class SpanProfile:
    cyclic: np.ndarray
    linear: np.ndarray


def cyclic_span(positions, n: int) -> int:
    """Length of the shortest cyclic window containing all ``positions``."""
    pos = sorted(int(p) for p in positions)
    if not pos:
        raise InputError("need at least one position")
    if len(set(pos)) != len(pos):
        raise InputError("duplicate positions")
    if pos[0] < 0 or pos[-1] >= n:
        raise InputError(f"positions must lie in 0..{n - 1}")
    gaps = [b - a for a, b in zip(pos, pos[1:])]
    gaps.append(pos[0] + n - pos[-1])
    return n - max(gaps) + 1


def _check_compatible(sys: PartialSystem, seq: Sequencing):
    if seq.n != sys.n:
        raise InputError(f"sequencing has length {seq.n}, system has n={sys.n}")


def span_profile(sys: PartialSystem, seq: Sequencing) -> SpanProfile:
    _check_compatible(sys, seq)
    n, m = sys.n, sys.num_blocks
    cyc = np.empty(m, dtype=np.int32)
    lin = np.empty(m, dtype=np.int32)
    for lo in range(0, m, CHUNK_ROWS):
        pos = np.sort(seq.inverse[sys.blocks[lo : lo + CHUNK_ROWS]], axis=1)
        gaps = np.diff(pos, axis=1)
        wrap = pos[:, 0] + n - pos[:, -1]
        widest = np.maximum(gaps.max(axis=1), wrap) if gaps.shape[1] else wrap
        cyc[lo : lo + CHUNK_ROWS] = n - widest + 1
        lin[lo : lo + CHUNK_ROWS] = pos[:, -1] - pos[:, 0] + 1
    return SpanProfile(cyc, lin)


def min_span(sys: PartialSystem, seq: Sequencing, cyclic: bool = True) -> int:
    """Smallest block span, or n + 1 when there are no blocks."""
    if sys.num_blocks == 0:
        _check_compatible(sys, seq)
        return sys.n + 1
    prof = span_profile(sys, seq)
    return int((prof.cyclic if cyclic else prof.linear).min())


def max_good_ell(sys: PartialSystem, seq: Sequencing, cyclic: bool = True) -> int:
    """Largest ell for which ``seq`` is (cyclically) ell-good; capped at n."""
    return min(min_span(sys, seq, cyclic) - 1, sys.n)


def is_ell_good(sys: PartialSystem, seq: Sequencing, ell: int, cyclic: bool = True) -> bool:
    return ell <= max_good_ell(sys, seq, cyclic)


def _window(seq: Sequencing, start: int, ell: int) -> frozenset:
    n = seq.n
    return frozenset(int(seq.order[(start + i) % n]) for i in range(ell))


def extract_independent_set(sys: PartialSystem, seq: Sequencing, ell: int, start: int = 0) -> frozenset:
    """The ell cyclically consecutive vertices starting at position ``start``."""
    if not is_ell_good(sys, seq, ell, cyclic=True):
        raise ContractError(f"sequencing is not cyclically {ell}-good")
    return _window(seq, start % seq.n, ell)


def coloring_from_sequencing(sys: PartialSystem, seq: Sequencing, ell: int) -> list:
    """Cut the sequencing into ceil(n/ell) runs of at most ell consecutive vertices."""
    if not is_ell_good(sys, seq, ell, cyclic=False):
        raise ContractError(f"sequencing is not {ell}-good")
    n = seq.n
    return [
        frozenset(int(v) for v in seq.order[i * ell : min((i + 1) * ell, n)])
        for i in range(ceil(n / ell))
    ]


@dataclass(frozen=True)
class FractionalCover:
    """Every cyclic ell-window, each carrying the same weight."""

    windows: np.ndarray  # (n, ell) vertex ids, row i starts at position i
    weight: Fraction

    @property
    def total_weight(self) -> Fraction:
        return self.weight * len(self.windows)

    def coverage(self) -> list:
        """Total weight on each vertex, as exact fractions."""
        n = len(self.windows)
        counts = np.bincount(self.windows.ravel(), minlength=n)
        return [self.weight * int(c) for c in counts]


def fractional_cover_weights(seq: Sequencing, ell: int, sys: PartialSystem = None) -> FractionalCover:
    """Weight 1/ell on each cyclic ell-window.

    When ``sys`` is given the sequencing is first checked to be cyclically
    ell-good, so that every window is an independent set.
    """
    n = seq.n
    if not 1 <= ell <= n:
        raise ContractError(f"ell must lie in 1..{n}")
    if sys is not None and not is_ell_good(sys, seq, ell, cyclic=True):
        raise ContractError(f"sequencing is not cyclically {ell}-good")
    idx = (np.arange(n)[:, None] + np.arange(ell)[None, :]) % n
    return FractionalCover(seq.order[idx], Fraction(1, ell))


def classes_independent(sys: PartialSystem, classes) -> bool:
    return all(is_independent(sys, c) for c in classes)
