"""Degree classification and mechanical verification of theorem arithmetic.

Two degree patterns admit a closed-form primitive Pell solution and a full
proof that no exceptional value survives:

    d = n^2 - 1  ->  (p0, q0) = (1, n)      (status holds-by-theorem-p0-1)
    d = n^2 + n  ->  (p0, q0) = (2, 2n+1)   (status holds-by-theorem-p0-2)

The patterns are disjoint for d >= 1.  The verifiers below replay the
arithmetic contradictions behind those proofs on finite grids with exact
integers and report the minimal margin by which the contradiction holds:

  verify_p0_1      (kn+1)*kn + 1 - k^2*(n^2-1)  =  kn + k^2 + 1  >= 1
  verify_p0_2 even (2ln+l+1)*(2ln+l) + 1 - 4l^2*(n^2+n)
                                              =  l^2 + 2ln + l + 1  >= 1
  verify_p0_2 odd  ((2l+1)n+l+1)*((2l+1)n+l) + 1 - (2l+1)^2*(n^2+n)
                                              =  l^2 + l + 1  >= 1
  verify_main_bqsq for b >= q^2 every admissible a has a^2 < d*b*(b-1),
                   checked at the maximal a = (b*p*d-1)//q per row, which
                   dominates all smaller a

A margin that differs from its closed form counts as a counterexample, so a
pass certifies both positivity and the algebra.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .arith import is_square, isqrt
from . import pell

PATTERN_N2_MINUS_1 = "n^2-1"
PATTERN_N2_PLUS_N = "n^2+n"
PATTERN_OTHER = "other"

STATUS_P0_1 = "holds-by-theorem-p0-1"
STATUS_P0_2 = "holds-by-theorem-p0-2"
STATUS_OPEN = "open-with-exceptions"
STATUS_NOT_APPLICABLE = "not-applicable-square-d"


@dataclass(frozen=True)
class DegreeClass:
    d: int
    square: bool
    pell_p0: Optional[int]
    pell_q0: Optional[int]
    pattern: str
    n: Optional[int]


@dataclass(frozen=True)
class VerificationReport:
    claim: str
    grid: tuple[tuple[str, int], ...]
    cells: int
    counterexamples: tuple
    min_margin: Optional[int]

    @property
    def passed(self) -> bool:
        return (
            not self.counterexamples
            and self.min_margin is not None
            and self.min_margin >= 1
        )


def classify_d(d: int) -> DegreeClass:
    """Detect the two closed-form patterns and attach the Pell solution."""
    if d < 1:
        raise ValueError("d must be >= 1")
    square = is_square(d)
    pattern, n = PATTERN_OTHER, None
    r = isqrt(d + 1)
    if r * r == d + 1 and r >= 2:
        pattern, n = PATTERN_N2_MINUS_1, r
    else:
        s = isqrt(4 * d + 1)
        if s * s == 4 * d + 1:
            m = (s - 1) // 2
            if m >= 1 and m * m + m == d:
                pattern, n = PATTERN_N2_PLUS_N, m
    if square:
        return DegreeClass(d, True, None, None, pattern, n)
    sol = pell.fundamental_solution(d)
    return DegreeClass(d, False, sol.p, sol.q, pattern, n)


def conjecture_status(d: int) -> str:
    """Report status for a degree, from its classification alone."""
    if d < 1:
        raise ValueError("d must be >= 1")
    if is_square(d):
        return STATUS_NOT_APPLICABLE
    dc = classify_d(d)
    if dc.pattern == PATTERN_N2_MINUS_1:
        return STATUS_P0_1
    if dc.pattern == PATTERN_N2_PLUS_N:
        return STATUS_P0_2
    return STATUS_OPEN


def verify_main_bqsq(d: int, p: int, q: int, window: int = 100) -> VerificationReport:
    """Check that b >= q^2 admits no pair: a^2 < d*b*(b-1) for every
    admissible a, over b in [q^2, q^2 + window).

    Per row only the maximal a = (b*p*d - 1)//q needs checking; smaller a
    only shrink the left side.
    """
    if window < 1:
        raise ValueError("window must be >= 1")
    if p < 1 or q < 2 or q * q - d * p * p != 1:
        raise ValueError(f"(p,q)=({p},{q}) is not a Pell solution for d={d}")
    pd = p * d
    counterexamples = []
    min_margin = None
    for b in range(q * q, q * q + window):
        a_max = (b * pd - 1) // q
        margin = d * b * (b - 1) - a_max * a_max
        if margin < 1:
            counterexamples.append((b, a_max, margin))
        if min_margin is None or margin < min_margin:
            min_margin = margin
    return VerificationReport(
        claim="main",
        grid=(("d", d), ("window", window)),
        cells=window,
        counterexamples=tuple(counterexamples),
        min_margin=min_margin,
    )


def verify_p0_1(n_max: int, k_max: int) -> VerificationReport:
    """Grid-check the d = n^2 - 1 contradiction: the bounds k^2*d >= b(b-1)+1
    and b >= kn+1 are incompatible, with margin kn + k^2 + 1."""
    if n_max < 1 or k_max < 1:
        raise ValueError("n_max and k_max must be >= 1")
    counterexamples = []
    min_margin = None
    for n in range(1, n_max + 1):
        for k in range(1, k_max + 1):
            margin = (k * n + 1) * k * n + 1 - k * k * (n * n - 1)
            closed = k * n + k * k + 1
            if margin != closed or margin < 1:
                counterexamples.append((n, k, margin))
            if min_margin is None or margin < min_margin:
                min_margin = margin
    return VerificationReport(
        claim="p0-1",
        grid=(("n_max", n_max), ("k_max", k_max)),
        cells=n_max * k_max,
        counterexamples=tuple(counterexamples),
        min_margin=min_margin,
    )


def verify_p0_2(n_max: int, l_max: int) -> VerificationReport:
    """Grid-check the d = n^2 + n contradiction in both parities of k.

    Even k = 2l (l >= 1): minimal b is 2ln+l+1, margin l^2 + 2ln + l + 1.
    Odd k = 2l+1 (l >= 0): minimal b is (2l+1)n+l+1, margin l^2 + l + 1.
    """
    if n_max < 1 or l_max < 1:
        raise ValueError("n_max and l_max must be >= 1")
    counterexamples = []
    min_margin = None
    for n in range(1, n_max + 1):
        for l in range(1, l_max + 1):
            b = 2 * l * n + l + 1
            margin = b * (b - 1) + 1 - 4 * l * l * (n * n + n)
            closed = l * l + 2 * l * n + l + 1
            if margin != closed or margin < 1:
                counterexamples.append(("even", n, l, margin))
            if min_margin is None or margin < min_margin:
                min_margin = margin
        for l in range(0, l_max + 1):
            k = 2 * l + 1
            b = k * n + l + 1
            margin = b * (b - 1) + 1 - k * k * (n * n + n)
            closed = l * l + l + 1
            if margin != closed or margin < 1:
                counterexamples.append(("odd", n, l, margin))
            if min_margin is None or margin < min_margin:
                min_margin = margin
    return VerificationReport(
        claim="p0-2",
        grid=(("n_max", n_max), ("l_max", l_max)),
        cells=n_max * l_max + n_max * (l_max + 1),
        counterexamples=tuple(counterexamples),
        min_margin=min_margin,
    )
