"""Exceptional-set enumeration and the elimination filter pipeline.

For a non-square d with Pell solution (p, q), q^2 - d*p^2 = 1, the possible
values of the maximal Seshadri constant below (p/q)*d form a finite set:

    Exc(d; p, q) = {1, ..., floor(sqrt(d))}
                   union {a/b : 1 <= a/b < (p/q)*d, 2 <= b < q^2}

where a plays the role of an intersection number L.C and b the multiplicity
of the candidate curve at the point.  Enumeration is over raw integer pairs
(a, b); set sizes count distinct reduced rational values.

Filters, each a pure predicate on a pair or on a value:

  range             the enumeration window itself (always the first stage)
  gino              area bound a^2 >= d*b*(b-1) from the Newton-Okounkov
                    polygon comparison; non-strict, equality survives
  fibration         value-level: v >= sqrt(3d/4) is kept; below that,
                    non-integers are eliminated and integers are only
                    possible when the surface is fibred (verdict
                    "conditional"; eliminated outright in rho1 mode)
  rho1-divisibility Picard number 1 forces d | a; the quotient k = a/d is
                    the degree of the curve class
  xu-moving-curve   moving-curve bound b*(b-1) + gon >= ... holds only when
                    b*(b-1) + gon_min <= k^2*d; reports max_gon
  rationality       if the xu bound forces gonality exactly 1 the curve
                    family is rational, impossible unless d = 1
  hodge-xu          d*(b*(b-1)+1) <= a^2, evaluated on the reduced pair of
                    the value (the Hodge index bound joined with the
                    moving-curve bound, ignoring integrality)

run_pipeline streams the enumeration once, applies the configured filters in
order with short-circuit elimination per subject, and assembles a
DegreeReport with per-stage surviving pair/value counts, final sets, traces
of every elimination, and the conjecture status of d.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd
from typing import Iterator, Optional, Union

from .arith import Rat, is_square, isqrt, rat_cmp_sqrt
from .pell import NONSQUARE_MSG, PellSolution
from . import analysis

# filter identifiers (CLI-visible names)
RANGE = "range"
GINO = "gino"
FIBRATION = "fibration"
RHO1_DIVISIBILITY = "rho1-divisibility"
XU_MOVING_CURVE = "xu-moving-curve"
HODGE_XU = "hodge-xu"
RATIONALITY = "rationality"

ALL_FILTER_IDS = (
    RANGE,
    GINO,
    FIBRATION,
    RHO1_DIVISIBILITY,
    XU_MOVING_CURVE,
    HODGE_XU,
    RATIONALITY,
)
RHO1_ONLY_FILTERS = frozenset({RHO1_DIVISIBILITY, XU_MOVING_CURVE, RATIONALITY})

# verdicts
KEPT = "kept"
ELIMINATED = "eliminated"
CONDITIONAL = "conditional"


@dataclass(frozen=True)
class CandidatePair:
    a: int
    b: int
    value: Rat


@dataclass(frozen=True)
class FilterTrace:
    subject: Union[CandidatePair, Rat]
    filter: str
    verdict: str
    reason: str


@dataclass(frozen=True)
class StageRecord:
    filter: str
    pairs: int
    values: int


@dataclass(frozen=True)
class PipelineConfig:
    filters: tuple[str, ...] = (RANGE,)
    rho1: bool = False
    gon_min: int = 1
    strict_lower: bool = False
    include_conditional: bool = False
    collect_traces: bool = True
    max_pairs: Optional[int] = None


@dataclass(frozen=True)
class DegreeReport:
    d: int
    solution: Optional[PellSolution]
    bound: Optional[Rat]
    smooth_values: frozenset[int]
    stages: tuple[StageRecord, ...]
    final_values: frozenset[Rat]
    final_pairs: frozenset[CandidatePair]
    conditional_values: frozenset[Rat]
    conjecture_status: str
    traces: tuple[FilterTrace, ...] = field(default=())


class PipelineBudgetError(RuntimeError):
    """Raised when an enumeration would exceed the configured pair budget."""

    def __init__(self, d: int, pairs: int, max_pairs: int):
        self.d = d
        self.pairs = pairs
        self.max_pairs = max_pairs
        super().__init__(
            f"d={d}: enumeration holds {pairs} pairs, over the budget of "
            f"{max_pairs}; raise max_pairs to force the run"
        )


def _check_pell(d: int, p: int, q: int) -> None:
    if p < 1 or q < 2 or q * q - d * p * p != 1:
        raise ValueError(
            f"(p,q)=({p},{q}) is not a Pell solution for d={d}: "
            f"q^2 - d*p^2 must equal 1"
        )


def smooth_values(d: int) -> set[int]:
    """Values {1, ..., floor(sqrt(d))} achievable by smooth curves (b=1)."""
    if d < 1:
        raise ValueError("d must be >= 1")
    return set(range(1, isqrt(d) + 1))


def _raw_pairs(d: int, p: int, q: int, strict_lower: bool) -> Iterator[tuple[int, int]]:
    # a*q < b*p*d with b <= a (or b+1 <= a when strict), 2 <= b <= q^2-1
    pd = p * d
    for b in range(2, q * q):
        lo = b + 1 if strict_lower else b
        hi = (b * pd - 1) // q
        for a in range(lo, hi + 1):
            yield a, b


def enumerate_pairs(
    d: int, p: int, q: int, strict_lower: bool
) -> Iterator[CandidatePair]:
    """All candidate pairs, ordered by (b ascending, a ascending).

    Lazy: the stream can be enormous for large q.  Call pair_count first
    when the size matters.
    """
    _check_pell(d, p, q)
    for a, b in _raw_pairs(d, p, q, strict_lower):
        yield CandidatePair(a, b, Rat(a, b))


def floor_sum(n: int, m: int, a: int, b: int) -> int:
    """Exact sum of (a*i + b) // m over i = 0..n-1, for a, b >= 0, m >= 1."""
    if n <= 0:
        return 0
    ans = 0
    while True:
        if a >= m:
            ans += (n - 1) * n // 2 * (a // m)
            a %= m
        if b >= m:
            ans += n * (b // m)
            b %= m
        y_max = (a * n + b) // m
        if y_max == 0:
            return ans
        x_max = y_max * m - b
        ans += (n - (x_max + a - 1) // a) * y_max
        n, b = y_max, (a - x_max % a) % a
        m, a = a, m


def pair_count(d: int, p: int, q: int, strict_lower: bool) -> int:
    """Exact size of the enumeration, in O(log) arithmetic operations."""
    _check_pell(d, p, q)
    cap = q * q
    n = cap - 2
    if n <= 0:
        return 0
    pd = p * d
    # sum over b in [2, cap-1] of (b*pd - 1)//q, minus the excluded a < b part
    total = floor_sum(n, q, pd, 2 * pd - 1)
    total -= (cap - 2) * (cap - 1) // 2
    if strict_lower:
        total -= cap - 2  # a = b is always admissible because p*d > q
    return total


def exc_set(d: int, p: int, q: int) -> set[Rat]:
    """The full exceptional set: smooth values plus distinct pair values.

    Materializes every distinct value; check pair_count before calling for
    large solutions.
    """
    _check_pell(d, p, q)
    keys = set()
    for a, b in _raw_pairs(d, p, q, strict_lower=False):
        g = gcd(a, b)
        keys.add((a // g, b // g))
    out = {Rat(v) for v in smooth_values(d)}
    out.update(Rat(na, nb) for na, nb in keys)
    return out


def exc_contains(d: int, p: int, q: int, value: Rat) -> bool:
    """Membership in Exc(d;p,q) without materializing the set.

    A rational v >= 1 with reduced denominator den belongs iff either it is
    an integer at most floor(sqrt(d)), or den < q^2 and v < (p/q)*d (any
    multiple of den in [2, q^2) then serves as b).
    """
    _check_pell(d, p, q)
    if value < 1:
        return False
    if value.denominator == 1:
        return value.numerator <= isqrt(d)
    return value.denominator < q * q and value.numerator * q < value.denominator * p * d


def filter_gino(pair: CandidatePair, d: int) -> str:
    """Area bound a^2 >= d*b*(b-1); kept on equality."""
    if pair.b < 2:
        raise ValueError("gino filter requires b >= 2")
    if pair.a * pair.a >= d * pair.b * (pair.b - 1):
        return KEPT
    return ELIMINATED


def filter_fibration(value: Rat, d: int, rho1: bool) -> str:
    """Integrality threshold sqrt(3d/4).

    At or above the threshold: kept.  Below it a non-integer value is
    impossible; an integer value needs the surface to be fibred by its
    Seshadri curves, which rho1 rules out.
    """
    if value < 1:
        raise ValueError("fibration filter requires value >= 1")
    if rat_cmp_sqrt(value, 3 * d, 4) >= 0:
        return KEPT
    if value.denominator != 1:
        return ELIMINATED
    return ELIMINATED if rho1 else CONDITIONAL


def filter_rho1_divisibility(pair: CandidatePair, d: int) -> str:
    """Picard number 1 forces d | a (the curve lies in |k*L|, a = k*d)."""
    if pair.b < 2:
        raise ValueError("rho1-divisibility filter requires b >= 2")
    return KEPT if pair.a % d == 0 else ELIMINATED


def filter_xu(pair: CandidatePair, d: int, gon_min: int) -> tuple[str, int]:
    """Moving-curve bound b*(b-1) + gon_min <= k^2*d, for a = k*d.

    Returns the verdict and max_gon = k^2*d - b*(b-1) clamped at 0, the
    largest gonality the bound leaves possible.
    """
    if pair.b < 2:
        raise ValueError("xu filter requires b >= 2")
    if gon_min < 1:
        raise ValueError("xu filter requires gon_min >= 1")
    if pair.a % d != 0:
        raise ValueError(
            f"xu filter requires d | a (apply rho1-divisibility first): "
            f"d={d}, a={pair.a}"
        )
    k = pair.a // d
    room = k * k * d - pair.b * (pair.b - 1)
    max_gon = room if room > 0 else 0
    return (KEPT if gon_min <= room else ELIMINATED), max_gon


def filter_rationality(pair: CandidatePair, d: int) -> str:
    """Eliminate pairs whose curves would have to be rational.

    When the moving-curve bound leaves exactly gonality 1 (max_gon = 1), the
    surface is covered by rational curves, forcing d = 1.
    """
    verdict, max_gon = filter_xu(pair, d, 1)
    if verdict == KEPT and max_gon == 1 and d != 1:
        return ELIMINATED
    return KEPT


def filter_hodge_xu(pair: CandidatePair, d: int) -> str:
    """d*(b*(b-1)+1) <= a^2 on the reduced pair of the value.

    All representatives of one value share the verdict, so the filter is
    value-consistent by construction.
    """
    if pair.b < 2:
        raise ValueError("hodge-xu filter requires b >= 2")
    na, nb = pair.value.numerator, pair.value.denominator
    if d * (nb * (nb - 1) + 1) <= na * na:
        return KEPT
    return ELIMINATED


def _normalize_filters(config: PipelineConfig) -> tuple[str, ...]:
    seen = []
    for f in config.filters:
        if f not in ALL_FILTER_IDS:
            raise ValueError(f"unknown filter: {f!r}")
        if f in RHO1_ONLY_FILTERS and not config.rho1:
            raise ValueError(f"filter {f!r} is only valid in rho1 mode")
        if f not in seen:
            seen.append(f)
    if RANGE in seen:
        seen.remove(RANGE)
    return (RANGE, *seen)


# integer codes for the hot loop
_CODES = {
    GINO: 1,
    FIBRATION: 2,
    RHO1_DIVISIBILITY: 3,
    XU_MOVING_CURVE: 4,
    RATIONALITY: 5,
    HODGE_XU: 6,
}


def run_pipeline(
    d: int, solution: Optional[PellSolution], config: PipelineConfig
) -> DegreeReport:
    """Enumerate, filter, and report for one degree.

    Square d yields a not-applicable report with empty stages; otherwise a
    valid solution is required.  Eliminations short-circuit per subject, and
    each one is traced (pair filters trace the pair, the fibration filter
    traces each distinct value once).  Smooth values join the final sets in
    general mode only; in rho1 mode the Seshadri curve has multiplicity at
    least 2, so they are excluded.
    """
    if d < 1:
        raise ValueError(NONSQUARE_MSG)
    if is_square(d):
        return DegreeReport(
            d=d,
            solution=None,
            bound=None,
            smooth_values=frozenset(smooth_values(d)),
            stages=(),
            final_values=frozenset(),
            final_pairs=frozenset(),
            conditional_values=frozenset(),
            conjecture_status=analysis.STATUS_NOT_APPLICABLE,
        )
    if solution is None:
        raise ValueError("a Pell solution is required for non-square d")
    p, q = solution.p, solution.q
    _check_pell(d, p, q)
    if config.gon_min < 1:
        raise ValueError("gon_min must be >= 1")

    filters = _normalize_filters(config)
    stage_filters = filters[1:]
    codes = [_CODES[f] for f in stage_filters]
    n_stages = len(codes)

    if config.max_pairs is not None:
        expected = pair_count(d, p, q, config.strict_lower)
        if expected > config.max_pairs:
            raise PipelineBudgetError(d, expected, config.max_pairs)

    rho1 = config.rho1
    gon_min = config.gon_min
    collect = config.collect_traces
    cap = q * q
    survived = n_stages + 1  # sentinel elimination index for survivors

    traces: list[FilterTrace] = []
    pair_hist = [0] * (survived + 1)
    val_state: dict[int, int] = {}  # value key -> max elimination index
    cond_keys: set[int] = set()
    fib_cache: dict[int, str] = {}
    final_raw: list[tuple[int, int, int, int]] = []
    n_pairs = 0
    threshold_num = 3 * d

    def fibration_verdict(key: int, na: int, nb: int) -> str:
        v = fib_cache.get(key)
        if v is not None:
            return v
        # compare na/nb against sqrt(3d/4) by cross-multiplication
        lhs = 4 * na * na
        rhs = threshold_num * nb * nb
        if lhs >= rhs:
            v = KEPT
        elif nb != 1:
            v = ELIMINATED
        elif rho1:
            v = ELIMINATED
        else:
            v = CONDITIONAL
        fib_cache[key] = v
        if v == CONDITIONAL:
            cond_keys.add(key)
        if v != KEPT and collect:
            val = Rat(na, nb)
            if v == ELIMINATED:
                reason = (
                    f"[fibration] value {val} lies below sqrt(3*{d}/4) and "
                    + ("rho1 rules out fibrations" if nb == 1 else "is not an integer")
                )
            else:
                reason = (
                    f"[fibration] integer value {val} lies below sqrt(3*{d}/4): "
                    f"possible only via a fibration"
                )
            traces.append(FilterTrace(val, FIBRATION, v, reason))
        return v

    def trace_pair(a: int, b: int, filt: str, reason: str) -> None:
        traces.append(
            FilterTrace(CandidatePair(a, b, Rat(a, b)), filt, ELIMINATED, reason)
        )

    for a, b in _raw_pairs(d, p, q, config.strict_lower):
        n_pairs += 1
        g = gcd(a, b)
        na = a // g
        nb = b // g
        key = na * cap + nb
        elim = survived
        for i, code in enumerate(codes, start=1):
            if code == 1:  # gino
                if a * a < d * b * (b - 1):
                    if collect:
                        trace_pair(
                            a, b, GINO,
                            f"[gino] area bound fails: {a}^2 < {d}*{b}*{b - 1}",
                        )
                    elim = i
                    break
            elif code == 2:  # fibration (value level)
                if fibration_verdict(key, na, nb) == ELIMINATED:
                    elim = i
                    break
            elif code == 3:  # rho1-divisibility
                if a % d:
                    if collect:
                        trace_pair(
                            a, b, RHO1_DIVISIBILITY,
                            f"[rho1-divisibility] {d} does not divide a={a}",
                        )
                    elim = i
                    break
            elif code == 4:  # xu-moving-curve
                if a % d:
                    if collect:
                        trace_pair(
                            a, b, XU_MOVING_CURVE,
                            f"[xu-moving-curve] divisibility prerequisite "
                            f"fails: {d} does not divide a={a}",
                        )
                    elim = i
                    break
                k = a // d
                if b * (b - 1) + gon_min > k * k * d:
                    if collect:
                        trace_pair(
                            a, b, XU_MOVING_CURVE,
                            f"[xu-moving-curve] moving-curve bound fails: "
                            f"{b}*{b - 1} + {gon_min} > {k}^2*{d}",
                        )
                    elim = i
                    break
            elif code == 5:  # rationality
                if a % d:
                    if collect:
                        trace_pair(
                            a, b, RATIONALITY,
                            f"[rationality] divisibility prerequisite fails: "
                            f"{d} does not divide a={a}",
                        )
                    elim = i
                    break
                k = a // d
                if d != 1 and k * k * d - b * (b - 1) == 1:
                    if collect:
                        trace_pair(
                            a, b, RATIONALITY,
                            f"[rationality] bound forces gonality 1 "
                            f"(k^2*d - b*(b-1) = 1) with d={d} != 1",
                        )
                    elim = i
                    break
            else:  # hodge-xu, on the reduced pair
                if d * (nb * (nb - 1) + 1) > na * na:
                    if collect:
                        trace_pair(
                            a, b, HODGE_XU,
                            f"[hodge-xu] {d}*({nb}*{nb - 1}+1) > {na}^2 "
                            f"on reduced pair ({na},{nb})",
                        )
                    elim = i
                    break
        pair_hist[elim] += 1
        prev = val_state.get(key, 0)
        if elim > prev:
            val_state[key] = elim
        if elim == survived:
            final_raw.append((a, b, na, nb))

    # per-stage surviving counts
    val_hist = [0] * (survived + 1)
    for st in val_state.values():
        val_hist[st] += 1
    stages = [StageRecord(RANGE, n_pairs, len(val_state))]
    alive_pairs = n_pairs
    alive_vals = len(val_state)
    for i, f in enumerate(stage_filters, start=1):
        alive_pairs -= pair_hist[i]
        alive_vals -= val_hist[i]
        stages.append(StageRecord(f, alive_pairs, alive_vals))

    # final sets; smooth values participate in general mode only
    unconditional: set[Rat] = set()
    conditional: set[Rat] = set()
    for key, st in val_state.items():
        if st == survived:
            na, nb = divmod(key, cap)
            val = Rat(na, nb)
            (conditional if key in cond_keys else unconditional).add(val)
    if not (rho1 and d > 1):
        has_fibration = FIBRATION in stage_filters
        for s in sorted(smooth_values(d)):
            key = s * cap + 1
            if has_fibration:
                verdict = fibration_verdict(key, s, 1)
                if verdict == KEPT:
                    unconditional.add(Rat(s))
                elif verdict == CONDITIONAL:
                    conditional.add(Rat(s))
            else:
                unconditional.add(Rat(s))
    conditional -= unconditional

    final_values = set(unconditional)
    if config.include_conditional:
        final_values |= conditional
    final_pairs = {
        CandidatePair(a, b, Rat(na, nb))
        for a, b, na, nb in final_raw
        if config.include_conditional or (na * cap + nb) not in cond_keys
    }

    return DegreeReport(
        d=d,
        solution=solution,
        bound=Rat(p * d, q),
        smooth_values=frozenset(smooth_values(d)),
        stages=tuple(stages),
        final_values=frozenset(final_values),
        final_pairs=frozenset(final_pairs),
        conditional_values=frozenset(conditional),
        conjecture_status=analysis.conjecture_status(d),
        traces=tuple(traces),
    )
