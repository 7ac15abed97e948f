"""Pell equation q^2 - d*p^2 = 1 via the periodic continued fraction of sqrt(d).

Orientation: a solution is written (p, q) with q^2 - d*p^2 = 1, so p is the
x-coordinate and q the y-coordinate of y^2 - d*x^2 = 1 (d=2 gives (2,3)).

The expansion sqrt(d) = [a0; t1, t2, ...] is periodic; the state (m, c, a)
follows m' = c*a - m, c' = (d - m'^2)/c, a' = floor((a0 + m')/c') from
(0, 1, a0), and the period closes exactly when the partial quotient 2*a0
appears.  The fundamental solution is the first convergent h/k with
h^2 - d*k^2 = 1; it shows up at the end of the first period when the period
length is even and at the end of the second when odd (the single-period
convergent then solves h^2 - d*k^2 = -1).
"""

from __future__ import annotations

from dataclasses import dataclass

from .arith import Rat, is_square, isqrt

NONSQUARE_MSG = "d must be a positive non-square"


@dataclass(frozen=True)
class ContinuedFractionExpansion:
    d: int
    a0: int
    period: tuple[int, ...]


@dataclass(frozen=True)
class PellSolution:
    p: int
    q: int
    index: int


def _check_d(d: int) -> None:
    if d <= 0 or is_square(d):
        raise ValueError(NONSQUARE_MSG)


def cf_sqrt(d: int) -> ContinuedFractionExpansion:
    """Periodic continued fraction expansion of sqrt(d)."""
    _check_d(d)
    a0 = isqrt(d)
    m, c, a = 0, 1, a0
    period = []
    while True:
        m = c * a - m
        c = (d - m * m) // c
        a = (a0 + m) // c
        period.append(a)
        if a == 2 * a0:
            return ContinuedFractionExpansion(d, a0, tuple(period))


def convergents(cf: ContinuedFractionExpansion, terms: int):
    """Yield convergents (h, k) of [a0; period repeating], `terms` of them.

    The first convergent is a0/1; after that the period is consumed
    cyclically.  h/k approximates sqrt(d) with h^2 - d*k^2 alternating sign.
    """
    h, hm = cf.a0, 1
    k, km = 1, 0
    yield h, k
    produced = 1
    while produced < terms:
        t = cf.period[(produced - 1) % len(cf.period)]
        h, hm = t * h + hm, h
        k, km = t * k + km, k
        yield h, k
        produced += 1


def fundamental_solution(d: int) -> PellSolution:
    """The primitive solution (p0, q0): minimal q >= 2 with q^2 - d*p^2 = 1."""
    cf = cf_sqrt(d)
    # two periods always suffice; +1 for the leading a0/1 convergent
    for h, k in convergents(cf, 2 * len(cf.period) + 1):
        if h * h - d * k * k == 1 and k >= 1:
            return PellSolution(p=k, q=h, index=1)
    raise AssertionError(f"no Pell solution within two periods for d={d}")


def nth_solution(d: int, k: int) -> PellSolution:
    """The k-th solution, k >= 1, via the standard recurrence from the first.

    (q_{j+1}, p_{j+1}) = (q1*q_j + d*p1*p_j, q1*p_j + p1*q_j).
    """
    if k < 1:
        raise ValueError("solution index must be >= 1")
    first = fundamental_solution(d)
    p, q = first.p, first.q
    for _ in range(k - 1):
        p, q = first.q * p + first.p * q, first.q * q + d * first.p * p
    return PellSolution(p=p, q=q, index=k)


def conjecture_bound(d: int) -> Rat:
    """The lower bound (p0/q0)*d predicted for the maximal Seshadri value."""
    s = fundamental_solution(d)
    return Rat(s.p * d, s.q)
