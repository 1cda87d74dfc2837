"""Numeric thresholds: alpha, the class count sigma/s, ell_max, the repair
condition, and the local-lemma parameters p and d.

The repair condition is decided in exact rational arithmetic; everything else
is double precision.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from decimal import ROUND_FLOOR, Decimal
from fractions import Fraction
from typing import NamedTuple, Optional

from .errors import ParameterError

ALPHA_TOL = 1e-12


def binom(a: int, b: int) -> int:
    """C(a, b), taken as 0 whenever a < b (including negative a)."""
    if b < 0 or a < b:
        return 0
    return math.comb(a, b)


def _check_t_lam(t, lam):
    if t < 2 or lam < 1:
        raise ParameterError(f"need t >= 2 and lambda >= 1, got t={t}, lambda={lam}")


def alpha_equation_lhs(alpha: float, t: int, lam: int) -> float:
    c = lam * (2 ** (t + 1) - 1) / math.factorial(t)
    lin = 2 * (math.e * lam * (t + 1) * (2 ** (t + 1) - 1) / math.factorial(t)) ** (1 / t)
    return c * alpha**t + lin * alpha


def alpha_main(t: int, lam: int = 1) -> float:
    """Unique positive root of the alpha equation, by bisection on [0, 1].

    The left-hand side is 0 at 0, strictly increasing, and exceeds 1 at 1.
    """
    _check_t_lam(t, lam)
    lo, hi = 0.0, 1.0
    while hi - lo > ALPHA_TOL:
        mid = 0.5 * (lo + hi)
        if alpha_equation_lhs(mid, t, lam) < 1.0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def alpha_large_k(k: int, t: int, lam: int = 1) -> float:
    """Supremum of admissible alpha when k >= t+2 (any alpha strictly below works)."""
    _check_t_lam(t, lam)
    if k < t + 2:
        raise ParameterError(f"needs k >= t+2, got k={k}, t={t}")
    falling = math.prod(range(k - t, k))
    return (falling / (lam * (2 ** (t + 1) - 1))) ** (1 / t)


def round_down_sig(x: float, digits: int = 3) -> Decimal:
    """Round a positive number down (never to nearest) to ``digits`` significant figures."""
    d = Decimal(repr(x))
    exp = d.adjusted() - digits + 1
    return d.quantize(Decimal(1).scaleb(exp), rounding=ROUND_FLOOR)


def degree_bound_plus_one(n: int, k: int, t: int, lam: int) -> Fraction:
    """k*lam*C(n-1,t-1)/C(k-1,t-1) - k + 1, the dependency count plus one."""
    return Fraction(k * lam * binom(n - 1, t - 1), binom(k - 1, t - 1)) - k + 1


def sigma(n: int, k: int, t: int, lam: int = 1) -> float:
    base = math.e * (2**k - 1) * float(degree_bound_plus_one(n, k, t, lam))
    return base ** (1 / (k - 1))


def num_classes(n: int, k: int, t: int, lam: int = 1) -> int:
    return math.ceil(sigma(n, k, t, lam))


def condition_rhs(n: int, k: int, t: int, lam: int, ell: int, s: int) -> Fraction:
    blocked = Fraction(lam * (2 * binom(2 * ell - 3, t) - binom(ell - 2, t)), binom(k - 1, t))
    return blocked + (2 * s - 1) * (ell - 1) - 1


def check_condition(n: int, k: int, t: int, lam: int, ell: int, s: int) -> bool:
    """Whether n is large enough for repair to always find a free vertex."""
    if ell < 1 or s < 1:
        raise ParameterError("ell and s must be >= 1")
    return n > condition_rhs(n, k, t, lam, ell, s)


class LLLParams(NamedTuple):
    p: float
    d_bound: float
    lll_product: float  # e * p * (d_bound + 1); the local lemma needs <= 1


def lll_params(k: int, n: int, t: int, lam: int, s: int) -> LLLParams:
    """Bad-event probability for one block and the bound on its dependency degree."""
    if s < 3:
        raise ParameterError(f"s must be >= 3 (at s <= 2 every block is bad), got {s}")
    p = (2**k - 1) / s ** (k - 1)
    d1 = degree_bound_plus_one(n, k, t, lam)
    return LLLParams(p, float(d1 - 1), math.e * p * float(d1))


def ell_max(n: int, t: int, lam: int = 1) -> int:
    """floor(alpha * n^(1/t)), with the floor re-decided exactly near integers."""
    if n < 1:
        raise ParameterError("n must be >= 1")
    alpha = alpha_main(t, lam)
    ell = max(0, math.floor(alpha * n ** (1 / t)))
    target = Fraction(alpha) ** t * n
    while (ell + 1) ** t <= target:
        ell += 1
    while ell > 0 and ell**t > target:
        ell -= 1
    return ell


@dataclass(frozen=True)
class BoundsSummary:
    alpha: float
    alpha_large_k: Optional[float]
    sigma: float
    s: int
    ell_max: int
    condition_ok: bool
    p: float
    d_bound: float
    lll_product: float


def summarize(n: int, k: int, t: int, lam: int = 1) -> BoundsSummary:
    sig = sigma(n, k, t, lam)
    s = math.ceil(sig)
    ell = ell_max(n, t, lam)
    lll = lll_params(k, n, t, lam, s)
    return BoundsSummary(
        alpha=alpha_main(t, lam),
        alpha_large_k=alpha_large_k(k, t, lam) if k >= t + 2 else None,
        sigma=sig,
        s=s,
        ell_max=ell,
        condition_ok=check_condition(n, k, t, lam, max(ell, 1), s),
        p=lll.p,
        d_bound=lll.d_bound,
        lll_product=lll.lll_product,
    )
