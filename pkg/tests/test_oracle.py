from itertools import combinations, permutations

import numpy as np
import pytest

from blockseq import (
    ParameterError,
    Params,
    PartialSystem,
    Sequencing,
    exhaustive_max_ell,
    is_ell_good,
    is_independent,
    max_good_ell,
    random_partial,
    window_scan_verify,
)


def _brute_best(sys_, cyclic):
    return max(max_good_ell(sys_, Sequencing(p), cyclic) for p in permutations(range(sys_.n)))


def test_window_scan_examples(fano):
    assert not window_scan_verify(fano, Sequencing.identity(7), 3, cyclic=True)
    assert window_scan_verify(fano, Sequencing.identity(7), 2, cyclic=True)
    assert window_scan_verify(fano, Sequencing.identity(7), 1, cyclic=True)


def test_exhaustive_empty():
    best, witness = exhaustive_max_ell(PartialSystem(Params(5, 3, 2, 1)))
    assert best == 5 and witness.n == 5


def test_exhaustive_single_block():
    sys_ = PartialSystem(Params(4, 3, 2, 1), [(0, 1, 2)])
    # three of four cyclic positions always leave a span of 3
    assert exhaustive_max_ell(sys_, cyclic=True)[0] == 2
    assert exhaustive_max_ell(sys_, cyclic=False)[0] == 3


def test_exhaustive_fano(fano):
    best, witness = exhaustive_max_ell(fano, cyclic=True)
    assert best == 3
    assert max_good_ell(fano, witness, cyclic=True) == 3
    assert exhaustive_max_ell(fano, cyclic=False)[0] == 3


@pytest.mark.parametrize("seed", range(12))
def test_exhaustive_matches_plain_enumeration(seed):
    rng = np.random.default_rng(seed)
    k, t = [(3, 2), (4, 2), (4, 3)][seed % 3]
    n = int(rng.integers(k, 8))
    sys_ = random_partial(Params(n, k, t, 1 + seed % 2), int(rng.integers(1, 9)), seed)
    for cyc in (True, False):
        best, witness = exhaustive_max_ell(sys_, cyclic=cyc)
        assert best == _brute_best(sys_, cyc)
        assert max_good_ell(sys_, witness, cyc) == best
        assert best >= k - 1


def test_exhaustive_bounded_by_independence_number(fano):
    best, _ = exhaustive_max_ell(fano)
    alpha = max(len(c) for r in range(8) for c in combinations(range(7), r) if is_independent(fano, c))
    assert best <= alpha


def test_exhaustive_refuses_large_n():
    with pytest.raises(ParameterError):
        exhaustive_max_ell(PartialSystem(Params(13, 3, 2, 1), [(0, 1, 2)]))


def test_window_scan_agrees_with_verifier():
    rng = np.random.default_rng(5)
    sys_ = random_partial(Params(9, 3, 2, 1), 10, 77)
    for _ in range(20):
        seq = Sequencing(rng.permutation(9))
        for ell in range(1, 10):
            for cyc in (True, False):
                assert window_scan_verify(sys_, seq, ell, cyc) == is_ell_good(sys_, seq, ell, cyc)
