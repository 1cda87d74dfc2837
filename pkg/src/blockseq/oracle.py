"""Brute-force ground truth for tiny systems.

Nothing here uses spans: windows are scanned literally, and the best
achievable ell is found by searching permutations.
"""
from __future__ import annotations

from .design import PartialSystem, is_independent
from .errors import ParameterError
from .verifier import Sequencing

MAX_ORACLE_N = 12


def window_scan_verify(sys: PartialSystem, seq: Sequencing, ell: int, cyclic: bool = True) -> bool:
    """Check every window of ell consecutive positions for a contained block."""
    n = seq.n
    if ell > n:
        return False
    order = [int(v) for v in seq.order]
    starts = range(n) if cyclic else range(n - ell + 1)
    for i in starts:
        window = [order[(i + j) % n] for j in range(ell)]
        if not is_independent(sys, window):
            return False
    return True


def exhaustive_max_ell(sys: PartialSystem, cyclic: bool = True):
    """Best ell over all sequencings, with one sequencing attaining it.

    Depth-first branch and bound over placements. A block's span is known once
    its last vertex is placed; a prefix is abandoned as soon as such a span
    cannot beat the best found so far. Cyclic search pins vertex 0 to
    position 0, since rotations preserve cyclic spans.
    """
    n, k = sys.n, sys.k
    if n > MAX_ORACLE_N:
        raise ParameterError(f"exhaustive search refused for n={n} > {MAX_ORACLE_N}")
    blocks = [tuple(int(v) for v in b) for b in sys.blocks]
    if not blocks:
        return n, Sequencing.identity(n)

    blocks_of = [[] for _ in range(n)]
    for b, verts in enumerate(blocks):
        for v in verts:
            blocks_of[v].append(b)
    remaining = [k] * len(blocks)
    pos = [-1] * n
    order = [-1] * n

    def span(b):
        ps = sorted(pos[v] for v in blocks[b])
        if not cyclic:
            return ps[-1] - ps[0] + 1
        widest = max(max(q - p for p, q in zip(ps, ps[1:])), ps[0] + n - ps[-1])
        return n - widest + 1

    # best holds the smallest block span of the best sequencing so far
    best = [0]
    witness = [None]

    def place(v, depth, floor):
        pos[v] = depth
        order[depth] = v
        done = []
        ok = True
        for b in blocks_of[v]:
            remaining[b] -= 1
            done.append(b)
            if remaining[b] == 0:
                sp = span(b)
                if sp <= best[0]:
                    ok = False
                    break
                floor = min(floor, sp)
        if ok:
            if depth == n - 1:
                best[0] = floor
                witness[0] = list(order)
            else:
                for u in range(n):
                    if pos[u] < 0:
                        place(u, depth + 1, floor)
        for b in done:
            remaining[b] += 1
        pos[v] = -1
        order[depth] = -1

    firsts = [0] if cyclic else range(n)
    for v in firsts:
        place(v, 0, n + 1)
    return min(best[0] - 1, n), Sequencing(witness[0])
