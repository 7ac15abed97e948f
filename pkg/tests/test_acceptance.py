"""Acceptance gate: one test per release criterion, all exact, zero tolerance.

Run `pytest tests/test_acceptance.py -v` for one pass/fail line per criterion.
"""

import itertools
import random

from seshadri.arith import Rat, is_square
from seshadri.analysis import (
    classify_d,
    verify_main_bqsq,
    verify_p0_1,
    verify_p0_2,
)
from seshadri.excset import (
    ELIMINATED,
    KEPT,
    CandidatePair,
    PipelineConfig,
    enumerate_pairs,
    exc_contains,
    exc_set,
    filter_gino,
    filter_hodge_xu,
    pair_count,
    run_pipeline,
)
from seshadri.pell import (
    cf_sqrt,
    conjecture_bound,
    convergents,
    fundamental_solution,
    nth_solution,
)

KNOWN = {2: (2, 3), 3: (1, 2), 5: (4, 9), 6: (2, 5), 7: (3, 8), 8: (1, 3)}


def pairs_of(report):
    return {(p.a, p.b) for p in report.final_pairs}


def test_criterion_01_pell_fundamentals():
    for d, (p, q) in KNOWN.items():
        s = fundamental_solution(d)
        assert (s.p, s.q) == (p, q), d
    for n in range(2, 101):
        s = fundamental_solution(n * n - 1)
        assert (s.p, s.q) == (1, n), n
    for n in range(1, 101):
        s = fundamental_solution(n * n + n)
        assert (s.p, s.q) == (2, 2 * n + 1), n
    print("criterion 1: 6 fundamental solutions + 199 pattern degrees exact")


def test_criterion_02_conjecture_bounds():
    expected = {
        2: Rat(4, 3),
        3: Rat(3, 2),
        5: Rat(20, 9),
        6: Rat(12, 5),
        7: Rat(21, 8),
        8: Rat(8, 3),
    }
    for d, b in expected.items():
        got = conjecture_bound(d)
        assert got == b and (got.num, got.den) == (b.num, b.den), d
    print("criterion 2: bounds 4/3 3/2 20/9 12/5 21/8 8/3 exact")


def test_criterion_03_d5_enumeration_and_gino():
    stream = list(enumerate_pairs(5, 4, 9, strict_lower=True))
    assert len(stream) == 3915
    distinct = {p.value for p in stream}
    assert len(distinct) == 2401
    survivors = [p for p in stream if filter_gino(p, 5) == KEPT]
    assert len(survivors) == 41
    head = [(p.a, p.b) for p in survivors[:8]]
    assert head == [
        (4, 2), (6, 3), (8, 4), (10, 5), (11, 5), (13, 6), (15, 7), (17, 8),
    ]
    assert (survivors[-1].a, survivors[-1].b) == (151, 68)
    # 27 distinct values among the surviving pairs; the smooth integers
    # {1, 2} join the final set (2 is already a survivor value), giving 28
    assert len({p.value for p in survivors}) == 27
    cfg = PipelineConfig(filters=("range", "gino"), strict_lower=True)
    r = run_pipeline(5, fundamental_solution(5), cfg)
    assert r.stages[0].pairs == 3915 and r.stages[0].values == 2401
    assert r.stages[1].pairs == 41 and r.stages[1].values == 27
    assert len(r.final_values) == 28
    print(
        "criterion 3: d=5 strict enumeration 3915 raw / 2401 distinct values; "
        "41 gino survivors, 28 distinct survivor values"
    )


def test_criterion_04_d5_rho1_pipeline():
    cfg = PipelineConfig(
        filters=("range", "gino", "rho1-divisibility"), rho1=True
    )
    r = run_pipeline(5, fundamental_solution(5), cfg)
    assert pairs_of(r) == {(10, 5), (15, 7), (35, 16), (55, 25), (75, 34)}
    assert r.final_values == {
        Rat(2), Rat(11, 5), Rat(15, 7), Rat(35, 16), Rat(75, 34)
    }
    print("criterion 4: d=5 rho1 final pairs/values exact")


def test_criterion_05_d3_fibration():
    assert exc_set(3, 1, 2) == {Rat(1), Rat(4, 3)}
    cfg = PipelineConfig(filters=("range", "fibration"))
    r = run_pipeline(3, fundamental_solution(3), cfg)
    assert r.final_values == frozenset()
    assert r.conditional_values == {Rat(1)}
    print("criterion 5: d=3 exc={1,4/3}; unconditional empty, 1 conditional")


def test_criterion_06_d8():
    e = exc_set(8, 1, 3)
    assert len(e) == 37 and max(e) == Rat(21, 8)
    r = run_pipeline(
        8, fundamental_solution(8), PipelineConfig(filters=("range", "fibration"))
    )
    assert r.final_values == {Rat(5, 2), Rat(18, 7), Rat(13, 5), Rat(21, 8)}
    cfg = PipelineConfig(
        filters=("range", "gino", "rho1-divisibility"), rho1=True
    )
    r = run_pipeline(8, fundamental_solution(8), cfg)
    assert r.final_values == frozenset() and r.final_pairs == frozenset()
    assert r.conjecture_status == "holds-by-theorem-p0-1"
    print("criterion 6: d=8 37 values max 21/8; fibration 4 values; rho1 empty")


def test_criterion_07_d6():
    assert len(exc_set(6, 2, 5)) == 252  # distinct-value convention matches
    r = run_pipeline(
        6, fundamental_solution(6), PipelineConfig(filters=("range", "fibration"))
    )
    values = sorted(r.final_values)
    assert len(values) == 51
    assert values[:3] == [Rat(17, 8), Rat(49, 23), Rat(32, 15)]
    assert values[-3:] == [Rat(31, 13), Rat(43, 18), Rat(55, 23)]
    r = run_pipeline(
        6,
        fundamental_solution(6),
        PipelineConfig(filters=("range", "fibration", "hodge-xu")),
    )
    assert r.final_values == {
        Rat(9, 4), Rat(7, 3), Rat(26, 11), Rat(19, 8), Rat(31, 13), Rat(43, 18)
    }
    print("criterion 7: d=6 252 values; fibration 51; hodge-xu 6 values exact")


def test_criterion_08_d7_rho1():
    base = ("range", "gino", "rho1-divisibility", "xu-moving-curve")
    cfg = PipelineConfig(filters=base, rho1=True, gon_min=1)
    r = run_pipeline(7, fundamental_solution(7), cfg)
    assert pairs_of(r) == {(7, 3), (28, 11), (49, 19)}
    cfg = PipelineConfig(filters=base + ("rationality",), rho1=True, gon_min=1)
    r = run_pipeline(7, fundamental_solution(7), cfg)
    assert pairs_of(r) == {(28, 11)}
    assert r.final_values == {Rat(28, 11)}
    print("criterion 8: d=7 rho1+xu pairs exact; +rationality -> 28/11")


def test_criterion_09_theorem_verifiers():
    r1 = verify_p0_1(50, 50)
    assert r1.passed and r1.counterexamples == () and r1.min_margin == 3
    r2 = verify_p0_2(50, 50)
    assert r2.passed and r2.counterexamples == () and r2.min_margin == 1
    for d in range(2, 51):
        if is_square(d):
            continue
        s = fundamental_solution(d)
        r = verify_main_bqsq(d, s.p, s.q, window=100)
        assert r.passed and r.counterexamples == (), d
    print(
        "criterion 9: p0-1 and p0-2 grids 50x50 pass (margins match closed "
        "forms); main window 100 passes for all non-square d<=50"
    )


def test_criterion_10_pattern_degrees_empty():
    degrees = [
        d
        for d in range(2, 201)
        if not is_square(d) and (is_square(d + 1) or is_square(4 * d + 1))
    ]
    assert len(degrees) == 26
    cfg = PipelineConfig(
        filters=("range", "gino", "rho1-divisibility", "xu-moving-curve"),
        rho1=True,
        gon_min=1,
        collect_traces=False,
    )
    for d in degrees:
        r = run_pipeline(d, fundamental_solution(d), cfg)
        assert r.final_values == frozenset(), d
        assert r.final_pairs == frozenset(), d
    print("criterion 10: rho1+xu pipeline empty for all 26 pattern degrees <=200")


def test_criterion_11_property_suites():
    # Pell identity
    for d in range(2, 501):
        if is_square(d):
            continue
        for k in range(1, 6):
            s = nth_solution(d, k)
            assert s.q * s.q - d * s.p * s.p == 1, (d, k)

    # minimality, brute force over q below the fundamental one
    for d in range(2, 201):
        if is_square(d):
            continue
        s = fundamental_solution(d)
        if s.q <= 20000:
            for q in range(2, s.q):
                assert (q * q - 1) % d != 0 or not is_square((q * q - 1) // d), d
        else:
            cf = cf_sqrt(d)
            first = next(
                (k, h)
                for h, k in convergents(cf, 2 * len(cf.period) + 1)
                if k >= 1 and h * h - d * k * k == 1
            )
            assert first == (s.p, s.q), d

    # exc-set nesting across solution indices
    rng = random.Random(11)
    for d in range(2, 31):
        if is_square(d):
            continue
        sols = [nth_solution(d, k) for k in (1, 2, 3)]
        for j in range(2):
            sj, sk = sols[j], sols[j + 1]
            assert Rat(sj.p * d, sj.q) < Rat(sk.p * d, sk.q)
            if pair_count(d, sj.p, sj.q, False) <= 200_000:
                for v in exc_set(d, sj.p, sj.q):
                    assert exc_contains(d, sk.p, sk.q, v), (d, j, v)
            else:
                pdj = sj.p * d
                for _ in range(100):
                    b = rng.randrange(2, sj.q * sj.q)
                    hi = (b * pdj - 1) // sj.q
                    if hi < b:
                        continue
                    a = rng.randrange(b, hi + 1)
                    assert exc_contains(d, sk.p, sk.q, Rat(a, b)), (d, j)

    # hodge-xu survival implies gino survival (reduced pairs)
    for d in (5, 6, 7, 8):
        s = fundamental_solution(d)
        for p in enumerate_pairs(d, s.p, s.q, False):
            if p.value.den < 2:
                continue
            reduced = CandidatePair(p.value.num, p.value.den, p.value)
            if filter_hodge_xu(reduced, d) == KEPT:
                assert filter_gino(reduced, d) == KEPT, (d, p)

    # filter order independence
    grids = {
        5: ("range", "gino", "rho1-divisibility"),
        6: ("range", "gino", "fibration", "hodge-xu"),
        7: ("range", "gino", "rho1-divisibility", "xu-moving-curve", "rationality"),
        8: ("range", "gino", "rho1-divisibility", "xu-moving-curve", "rationality"),
    }
    for d, filters in grids.items():
        s = fundamental_solution(d)
        rho1 = "rho1-divisibility" in filters
        base = None
        for perm in itertools.permutations(filters):
            cfg = PipelineConfig(filters=perm, rho1=rho1, collect_traces=False)
            r = run_pipeline(d, s, cfg)
            key = (r.final_values, r.final_pairs, r.conditional_values)
            base = key if base is None else base
            assert key == base, (d, perm)

    # b >= q^2 rows always fail the area bound
    for d in range(2, 51):
        if is_square(d):
            continue
        s = fundamental_solution(d)
        for b in range(s.q * s.q, s.q * s.q + 101):
            a_max = (b * s.p * d - 1) // s.q
            assert a_max * a_max < d * b * (b - 1), (d, b)

    print(
        "criterion 11: Pell identity d<=500, minimality d<=200, nesting d<=30, "
        "hodge-xu=>gino, order independence d in {5,6,7,8}, b>=q^2 failure"
    )
