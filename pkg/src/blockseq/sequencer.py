"""Constructing cyclically ell-good sequencings.

Pipeline: colour the vertices with s classes so that no block lands inside two
cyclically adjacent classes (Moser-Tardos resampling), give every class left
and right buffers, move vertices into undersized classes until each has at
least ell-1 members, then lay the classes out in cyclic order with each
class's left buffer first and right buffer last.
"""
from __future__ import annotations

import math
import time
import warnings
from collections import deque
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .bounds import lll_params, sigma as sigma_bound
from .design import Params, PartialSystem, is_independent, truncate_to_order
from .errors import ContractError, NonConvergenceError, ParameterError, RepairStuckError
from .rng import make_rng
from .verifier import CHUNK_ROWS, Sequencing, is_ell_good

MODES = ("direct", "truncate")
RESAMPLE_FACTOR = 100


@dataclass(frozen=True)
class ClassPartition:
    s: int
    label: np.ndarray

    def classes(self) -> list:
        """Members of each class, ascending."""
        order = np.argsort(self.label, kind="stable")
        sizes = np.bincount(self.label, minlength=self.s)
        return np.split(order, np.cumsum(sizes)[:-1])


def is_bad_block(labels, s: int) -> bool:
    """True iff the labels fit inside {i, i+1 mod s} for some i."""
    if s < 3:
        raise ParameterError("s must be >= 3")
    distinct = {int(x) % s for x in labels}
    if len(distinct) == 1:
        return True
    if len(distinct) == 2:
        a, b = distinct
        return (a - b) % s in (1, s - 1)
    return False


def bad_rows(label_rows: np.ndarray, s: int) -> np.ndarray:
    """Vectorised :func:`is_bad_block` over an (m, k) array of labels."""
    rel = (label_rows - label_rows[:, :1]) % s
    return ((rel == 0) | (rel == 1)).all(axis=1) | ((rel == 0) | (rel == s - 1)).all(axis=1)


def random_partition(sys: PartialSystem, s: int, seed: int, max_resamples: Optional[int] = None):
    """Label vertices uniformly from Z_s, then resample bad blocks until none remain.

    Returns ``(ClassPartition, resample_count)``. Bad blocks wait in a FIFO
    queue; after a resample only the blocks sharing a vertex with the
    resampled block are re-examined.
    """
    if s < 3:
        raise ParameterError(f"s must be >= 3, got {s}")
    p = sys.params
    lll = lll_params(p.k, p.n, p.t, p.lam, s)
    if lll.lll_product > 1:
        warnings.warn(
            f"e*p*(d+1) = {lll.lll_product:.3g} > 1 at s={s}; convergence is not guaranteed",
            RuntimeWarning,
            stacklevel=2,
        )
    if max_resamples is None:
        max_resamples = RESAMPLE_FACTOR * sys.num_blocks
    rng = make_rng(seed)
    labels = rng.integers(0, s, size=sys.n, dtype=np.int64)
    blocks = sys.blocks
    if sys.num_blocks == 0:
        return ClassPartition(s, labels), 0

    initial = [
        lo + np.flatnonzero(bad_rows(labels[blocks[lo : lo + CHUNK_ROWS]], s))
        for lo in range(0, sys.num_blocks, CHUNK_ROWS)
    ]
    queue = deque(int(b) for b in np.concatenate(initial))
    queued = set(queue)
    count = 0
    k = p.k
    while queue:
        b = queue.popleft()
        queued.discard(b)
        verts = blocks[b]
        if not bad_rows(labels[verts][None, :], s)[0]:
            continue
        if count >= max_resamples:
            raise NonConvergenceError(count, len(queue) + 1)
        labels[verts] = rng.integers(0, s, size=k)
        count += 1
        near = sys.blocks_touching(verts)
        for c in near[bad_rows(labels[blocks[near]], s)].tolist():
            if c not in queued:
                queued.add(c)
                queue.append(c)
    return ClassPartition(s, labels), count


@dataclass(frozen=True)
class BufferedClass:
    members: frozenset
    left: frozenset
    right: frozenset

    @property
    def size(self) -> int:
        return len(self.members)

    def is_deficient(self, ell: int) -> bool:
        return self.size <= ell - 2

    def check(self, ell: int) -> None:
        """Raise ContractError unless the buffers obey the size rules for ``ell``."""
        S, L, R = self.members, self.left, self.right
        if not (L <= S and R <= S):
            raise ContractError("buffers must be subsets of the class")
        if len(S) <= ell - 2:
            ok = L == S and R == S
        elif len(S) <= 2 * ell - 2:
            ok = len(L) == len(R) == ell - 1 and (L | R) == S
        else:
            ok = len(L) == len(R) == ell - 1 and not (L & R)
        if not ok:
            raise ContractError(f"class of size {len(S)} has malformed buffers for ell={ell}")


def make_buffered(members, ell: int) -> BufferedClass:
    """Left buffer = smallest ell-1 members, right buffer = largest ell-1."""
    if ell < 1:
        raise ParameterError("ell must be >= 1")
    ordered = sorted(int(v) for v in members)
    S = frozenset(ordered)
    if len(ordered) <= ell - 2:
        return BufferedClass(S, S, S)
    w = ell - 1
    return BufferedClass(S, frozenset(ordered[:w]), frozenset(ordered[len(ordered) - w :]))


@dataclass(frozen=True)
class Presequencing:
    classes: tuple
    ell: int

    @property
    def s(self) -> int:
        return len(self.classes)

    def sizes(self) -> list:
        return [c.size for c in self.classes]

    def deficiency(self) -> int:
        """Total shortfall of classes below ell-1 members."""
        return sum(max(0, self.ell - 1 - c.size) for c in self.classes)

    def is_nondeficient(self) -> bool:
        return all(c.size >= self.ell - 1 for c in self.classes)

    def class_independent(self, sys: PartialSystem, i: int) -> bool:
        return is_independent(sys, self.classes[i].members)

    def seam_independent(self, sys: PartialSystem, i: int) -> bool:
        """Right buffer of class i together with the left buffer of class i+1."""
        nxt = self.classes[(i + 1) % self.s]
        return is_independent(sys, self.classes[i].right | nxt.left)

    def check(self, sys: PartialSystem) -> None:
        """Full structural audit; raises ContractError on the first failure."""
        seen = np.zeros(sys.n, dtype=np.int64)
        for c in self.classes:
            c.check(self.ell)
            seen[list(c.members)] += 1
        if not (seen == 1).all():
            raise ContractError("classes do not partition the vertex set")
        for i in range(self.s):
            if not self.class_independent(sys, i):
                raise ContractError(f"class {i} contains a block")
            if not self.seam_independent(sys, i):
                raise ContractError(f"seam {i}|{(i + 1) % self.s} contains a block")


def presequence(partition: ClassPartition, ell: int) -> Presequencing:
    return Presequencing(tuple(make_buffered(c, ell) for c in partition.classes()), ell)


def _mask(n: int, vertices) -> np.ndarray:
    m = np.zeros(n, dtype=bool)
    if vertices:
        m[list(vertices)] = True
    return m


def _one_short(sys: PartialSystem, target) -> np.ndarray:
    """Vertices x such that some block minus x lies inside ``target``."""
    tmask = _mask(sys.n, target)
    near = sys.blocks_touching(target)
    rows = sys.blocks[near]
    inside = tmask[rows]
    hit = inside.sum(axis=1) == sys.k - 1
    return rows[hit][~inside[hit]]


def repair(sys: PartialSystem, pre: Presequencing, debug: bool = False):
    """Fill deficient classes one vertex at a time.

    Each move takes the lowest-index deficient class j and the smallest vertex
    y that is in no buffer and would not complete a block inside
    ``right(j-1) | U_j`` or ``U_j | left(j+1)``. Returns
    ``(Presequencing, repair_moves)``.
    """
    ell, s, n = pre.ell, pre.s, sys.n
    classes = list(pre.classes)
    owner = np.empty(n, dtype=np.int64)
    for i, c in enumerate(classes):
        owner[list(c.members)] = i
    moves = 0
    while True:
        j = next((i for i, c in enumerate(classes) if c.is_deficient(ell)), None)
        if j is None:
            break
        in_buffer = np.zeros(n, dtype=bool)
        for c in classes:
            if c.left:
                in_buffer[list(c.left)] = True
            if c.right:
                in_buffer[list(c.right)] = True
        cur = classes[j].members
        blocked = np.zeros(n, dtype=bool)
        blocked[_one_short(sys, classes[(j - 1) % s].right | cur)] = True
        blocked[_one_short(sys, cur | classes[(j + 1) % s].left)] = True
        blocked &= ~in_buffer
        free = np.flatnonzero(~(in_buffer | blocked))
        if free.size == 0:
            raise RepairStuckError(int(in_buffer.sum()), int(blocked.sum()), n)
        y = int(free[0])
        src = int(owner[y])
        donor = classes[src]
        if donor.size <= 2 * ell - 2:
            raise ContractError(f"vertex {y} taken from class {src} of size {donor.size}")
        grown = cur | {y}
        classes[j] = BufferedClass(grown, grown, grown)
        classes[src] = BufferedClass(donor.members - {y}, donor.left, donor.right)
        owner[y] = j
        moves += 1
        if debug:
            _audit_move(sys, Presequencing(tuple(classes), ell), j, src)
    return Presequencing(tuple(classes), ell), moves


def _audit_move(sys: PartialSystem, pre: Presequencing, j: int, src: int) -> None:
    s = pre.s
    for i in (j, src):
        pre.classes[i].check(pre.ell)
        if not pre.class_independent(sys, i):
            raise ContractError(f"class {i} contains a block after a repair move")
        for seam in ((i - 1) % s, i):
            if not pre.seam_independent(sys, seam):
                raise ContractError(f"seam {seam} contains a block after a repair move")


def assemble(pre: Presequencing) -> Sequencing:
    """Concatenate classes; each opens with its left buffer and closes with its right."""
    order = []
    for i, c in enumerate(pre.classes):
        if c.size < pre.ell - 1:
            raise ContractError(f"class {i} is deficient (size {c.size} < {pre.ell - 1})")
        L, R = c.left, c.right
        order.extend(sorted(L - R))
        order.extend(sorted(L & R))
        order.extend(sorted(c.members - (L | R)))
        order.extend(sorted(R - L))
    return Sequencing(order)


@dataclass
class RunReport:
    params: Params
    ell: int
    sigma: float
    s: int
    seed: int
    mode: str
    resample_count: int = 0
    repair_moves: int = 0
    initial_deficiency: int = 0
    phase_ms: dict = field(
        default_factory=lambda: {"partition": 0.0, "repair": 0.0, "assemble": 0.0, "verify": 0.0}
    )
    verified: bool = False

    def to_dict(self) -> dict:
        p = self.params
        return {
            "params": {"n": p.n, "k": p.k, "t": p.t, "lambda": p.lam},
            "ell": self.ell,
            "sigma": self.sigma,
            "s": self.s,
            "seed": self.seed,
            "mode": self.mode,
            "resample_count": self.resample_count,
            "repair_moves": self.repair_moves,
            "phase_ms": dict(self.phase_ms),
            "verified": self.verified,
        }


def _ms(start: float) -> float:
    return round((time.perf_counter() - start) * 1000.0, 3)


def sequence(
    sys: PartialSystem,
    ell: int,
    seed: int = 0,
    mode: str = "direct",
    s_override: Optional[int] = None,
    max_resamples: Optional[int] = None,
    debug: bool = False,
):
    """Build a cyclically ell-good sequencing; returns ``(Sequencing, RunReport)``.

    In ``truncate`` mode the blocks are first cut down to size t+1; the result
    is still verified against the original system. A system without blocks
    gets the identity sequencing.
    """
    if ell < 1:
        raise ParameterError(f"ell must be >= 1, got {ell}")
    if mode not in MODES:
        raise ParameterError(f"mode must be one of {MODES}, got {mode!r}")
    work = truncate_to_order(sys) if mode == "truncate" else sys
    p = work.params
    sig = sigma_bound(p.n, p.k, p.t, p.lam)
    s = int(s_override) if s_override is not None else math.ceil(sig)
    report = RunReport(sys.params, ell, sig, s, seed, mode)

    if work.num_blocks == 0:
        seq = Sequencing.identity(sys.n)
    else:
        t0 = time.perf_counter()
        partition, report.resample_count = random_partition(work, s, seed, max_resamples)
        report.phase_ms["partition"] = _ms(t0)

        t0 = time.perf_counter()
        pre = presequence(partition, ell)
        if debug:
            pre.check(work)
        report.initial_deficiency = pre.deficiency()
        pre, report.repair_moves = repair(work, pre, debug=debug)
        if debug:
            pre.check(work)
        report.phase_ms["repair"] = _ms(t0)

        t0 = time.perf_counter()
        seq = assemble(pre)
        report.phase_ms["assemble"] = _ms(t0)

    t0 = time.perf_counter()
    report.verified = is_ell_good(sys, seq, ell, cyclic=True)
    report.phase_ms["verify"] = _ms(t0)
    return seq, report
