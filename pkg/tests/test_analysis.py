import pytest

from seshadri.arith import Rat, is_square
from seshadri.analysis import (
    PATTERN_N2_MINUS_1,
    PATTERN_N2_PLUS_N,
    PATTERN_OTHER,
    STATUS_NOT_APPLICABLE,
    STATUS_OPEN,
    STATUS_P0_1,
    STATUS_P0_2,
    classify_d,
    conjecture_status,
    verify_main_bqsq,
    verify_p0_1,
    verify_p0_2,
)
from seshadri.pell import fundamental_solution


def test_classify_examples():
    c = classify_d(3)
    assert (c.pattern, c.n, c.pell_p0, c.pell_q0) == (PATTERN_N2_MINUS_1, 2, 1, 2)
    c = classify_d(12)
    assert (c.pattern, c.n, c.pell_p0, c.pell_q0) == (PATTERN_N2_PLUS_N, 3, 2, 7)
    c = classify_d(7)
    assert (c.pattern, c.n) == (PATTERN_OTHER, None)
    assert (c.pell_p0, c.pell_q0) == (3, 8)
    c = classify_d(9)
    assert c.square and c.pell_p0 is None and c.pell_q0 is None
    with pytest.raises(ValueError):
        classify_d(0)


def test_conjecture_status():
    assert conjecture_status(3) == STATUS_P0_1
    assert conjecture_status(8) == STATUS_P0_1
    assert conjecture_status(2) == STATUS_P0_2
    assert conjecture_status(6) == STATUS_P0_2
    assert conjecture_status(5) == STATUS_OPEN
    assert conjecture_status(7) == STATUS_OPEN
    assert conjecture_status(4) == STATUS_NOT_APPLICABLE


def test_patterns_disjoint_and_predictive():
    # d = n^2 - 1 and d = n^2 + n never coincide, and each pattern pins the
    # fundamental solution to (1, n) resp. (2, 2n + 1)
    for d in range(2, 10001):
        c = classify_d(d)
        if c.square:
            # n^2 - 1 and n^2 + n are never perfect squares for n >= 1
            assert c.pattern == PATTERN_OTHER and c.n is None
            continue
        minus = is_square(d + 1)
        plus = is_square(4 * d + 1)
        assert not (minus and plus), d
        if minus:
            assert c.pattern == PATTERN_N2_MINUS_1
            assert (c.pell_p0, c.pell_q0) == (1, c.n) and c.n * c.n - 1 == d
        elif plus:
            assert c.pattern == PATTERN_N2_PLUS_N
            assert (c.pell_p0, c.pell_q0) == (2, 2 * c.n + 1)
            assert c.n * c.n + c.n == d
        else:
            assert c.pattern == PATTERN_OTHER and c.n is None


def test_verify_main_examples():
    s = fundamental_solution(5)
    r = verify_main_bqsq(5, s.p, s.q, window=1)
    assert r.passed and r.counterexamples == ()
    assert r.min_margin == 359  # = 2*p*d*q - 1 at b = q^2
    assert r.cells == 1

    s = fundamental_solution(2)
    r = verify_main_bqsq(2, s.p, s.q, window=1)
    assert r.passed and r.min_margin == 23

    for d in range(2, 51):
        if is_square(d):
            continue
        s = fundamental_solution(d)
        r = verify_main_bqsq(d, s.p, s.q, window=50)
        assert r.passed, d
        assert r.cells == 50
        # b = q^2 itself contributes margin 2*p*d*q - 1, so the window
        # minimum never exceeds it
        assert 1 <= r.min_margin <= 2 * s.p * d * s.q - 1


def test_verify_main_rejects_bad_input():
    with pytest.raises(ValueError):
        verify_main_bqsq(5, 4, 10, window=1)
    with pytest.raises(ValueError):
        verify_main_bqsq(5, 4, 9, window=0)


def test_verify_p0_1():
    r = verify_p0_1(2, 1)
    assert r.passed and r.cells == 2
    r = verify_p0_1(50, 50)
    assert r.passed
    assert r.cells == 2500
    assert r.counterexamples == ()
    assert r.min_margin == 3  # attained at n = k = 1
    with pytest.raises(ValueError):
        verify_p0_1(0, 5)


def test_verify_p0_1_margin_values():
    # margin is (kn+1)kn + 1 - k^2(n^2 - 1) = kn + k^2 + 1
    for n in range(1, 10):
        for k in range(1, 10):
            raw = (k * n + 1) * k * n + 1 - k * k * (n * n - 1)
            assert raw == k * n + k * k + 1
    assert verify_p0_1(1, 1).min_margin == 3
    assert verify_p0_1(9, 9).min_margin == 3


def test_verify_p0_2():
    r = verify_p0_2(50, 50)
    assert r.passed
    # even rows use l in [1, 50], odd rows l in [0, 50]
    assert r.cells == 50 * 50 + 50 * 51
    assert r.min_margin == 1  # odd case at l = 0
    assert r.counterexamples == ()
    # closed forms for both parities
    for n in range(1, 10):
        for l in range(1, 10):
            b = 2 * l * n + l + 1
            assert b * (b - 1) + 1 - 4 * l * l * (n * n + n) == l * l + 2 * l * n + l + 1
        for l in range(0, 10):
            k = 2 * l + 1
            b = k * n + l + 1
            assert b * (b - 1) + 1 - k * k * (n * n + n) == l * l + l + 1
    with pytest.raises(ValueError):
        verify_p0_2(5, -1)


def test_report_passed_semantics():
    r = verify_p0_1(1, 1)
    assert r.passed == (not r.counterexamples and r.min_margin >= 1)
