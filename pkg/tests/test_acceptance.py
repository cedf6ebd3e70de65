"""Acceptance suite: every criterion at its stated tolerance, one printed
pass/fail line per criterion.

Run with `pytest tests/test_acceptance.py -v -s` to see the lines.
"""

import functools
import itertools
import time
from fractions import Fraction

from mzv.exact_core import (
    ZetaCombination,
    ZetaMonomial,
    beta_kernel,
    factorial,
    hat_H,
    hat_K,
    hat_T,
    divisibility_experiment,
    poly_cot_closed_form,
)
from mzv.harness import (
    SuiteConfig,
    verify_cot_power_clausen,
    verify_cot_power_halfpi,
    verify_moments,
    verify_poly_cot,
    verify_wallis,
    verify_zagier,
    verify_t_value,
    random_vanishing_polynomial,
)
from mzv.numerics import (
    RealBall,
    beta_even,
    clausen,
    const_log2,
    const_pi,
    eval_combination,
    render_ball,
    zeta_int,
    THETA_PI,
    THETA_HALF_PI,
)
from mzv.quadrature import poly_cot_quadrature
from mzv.series_mzv import (
    Composition,
    SERIES_T,
    SERIES_ZETA,
    TruncationPlan,
    mzv_extrapolated,
    mzv_truncated,
    single_sum_H,
    single_sum_T,
)

import random


def criterion(number, description):
    def wrap(fn):
        @functools.wraps(fn)
        def run():
            try:
                fn()
            except BaseException:
                print(f"[FAIL] criterion {number}: {description}")
                raise
            print(f"[PASS] criterion {number}: {description}")

        return run

    return wrap


def _mono(arg, pi_exp=0):
    return ZetaMonomial.zeta(arg, pi_exp)


@criterion(1, "exact coefficient suite (hat values, scaling, homogeneity) under 1s")
def test_criterion_01_exact_coefficients():
    started = time.monotonic()
    assert hat_H(0, 0) == ZetaCombination.single(_mono(3), 1)
    assert hat_H(1, 0) == ZetaCombination(
        {_mono(3, 2): Fraction(1, 2), _mono(5): Fraction(-11, 2)}
    )
    assert hat_H(0, 1) == ZetaCombination(
        {_mono(3, 2): Fraction(-1, 3), _mono(5): Fraction(9, 2)}
    )
    assert hat_T(0, 0) == ZetaCombination.single(_mono(3), Fraction(7, 8))
    for a in range(7):
        for b in range(7):
            assert hat_K(a, b) == hat_T(a, b).scale(2 ** (2 * a + 2 * b + 3))
    for a in range(9):
        for b in range(9 - a):
            w = 2 * a + 2 * b + 3
            assert hat_H(a, b).is_homogeneous(w)
            assert hat_T(a, b).is_homogeneous(w)
    assert time.monotonic() - started < 1.0


_CFG_256 = SuiteConfig(digits=30, working_bits=256, tol=1e-30)


@criterion(2, "H(a,b) closed form vs quadrature at 256 bits, a+b<=5, tol 1e-30, <=60s")
def test_criterion_02_theorem_h_numeric():
    started = time.monotonic()
    for a in range(6):
        for b in range(6 - a):
            result = verify_zagier(a, b, _CFG_256, include_series=False)
            assert result.passed, (a, b, result)
            assert result.max_discrepancy <= 1e-30
    assert time.monotonic() - started <= 60.0


@criterion(3, "T(a,b) closed form vs quadrature at 256 bits, a+b<=5, tol 1e-30, <=60s")
def test_criterion_03_theorem_t_numeric():
    started = time.monotonic()
    for a in range(6):
        for b in range(6 - a):
            result = verify_t_value(a, b, _CFG_256, include_series=False)
            assert result.passed, (a, b, result)
            assert result.max_discrepancy <= 1e-30
    assert time.monotonic() - started <= 60.0


@criterion(4, "series route: single sums (N=1e5) and Euler identities within 1e-8")
def test_criterion_04_series_route():
    for a in range(4):
        for b in range(4 - a):
            closed_h = eval_combination(hat_H(a, b), 96).midpoint_float()
            got_h = single_sum_H(a, b, 100_000).midpoint_float()
            assert abs(got_h - closed_h) <= 1e-8, ("H", a, b)
            closed_t = eval_combination(hat_T(a, b), 96).midpoint_float()
            got_t = single_sum_T(a, b, 100_000).midpoint_float()
            assert abs(got_t - closed_t) <= 1e-8, ("T", a, b)
    plan = TruncationPlan(50_000, 4)
    z12 = mzv_extrapolated(Composition((1, 2)), plan, 53, SERIES_ZETA).midpoint_float()
    assert abs(z12 - zeta_int(3, 64).midpoint_float()) <= 1e-8
    t12 = mzv_extrapolated(Composition((1, 2)), plan, 53, SERIES_T).midpoint_float()
    target = eval_combination(
        ZetaCombination({_mono(3): Fraction(-7, 16), ZetaMonomial.log2(2): Fraction(1, 8)}), 64
    ).midpoint_float()
    assert abs(t12 - target) <= 1e-8


@criterion(5, "x^p cot x integrals vs closed forms: p<=12 at z=1/2, p<=8 at z=1/4, tol 1e-30")
def test_criterion_05_cot_power_lemmas():
    for p in range(1, 13):
        result = verify_cot_power_halfpi(p, _CFG_256)
        assert result.passed and result.max_discrepancy <= 1e-30, ("half", p)
    for z in (Fraction(1, 2), Fraction(1, 4)):
        for p in range(1, 9):
            result = verify_cot_power_clausen(z, p, _CFG_256)
            assert result.passed and result.max_discrepancy <= 1e-30, (z, p)


@criterion(6, "polynomial cotangent integral: 20 random P at 1e-30 plus exact basis change")
def test_criterion_06_poly_cot():
    rng = random.Random(_CFG_256.seed)
    for _ in range(20):
        P = random_vanishing_polynomial(rng, 10)
        result = verify_poly_cot(P, _CFG_256)
        assert result.passed and result.max_discrepancy <= 1e-30, P
    for a in range(5):
        for b in range(5 - a):
            w = 2 * a + 2 * b + 3
            lhs = poly_cot_closed_form(beta_kernel(2 * a + 2, 2 * b + 1))
            rhs = hat_H(a, b).scale(factorial(2 * a + 2) * factorial(2 * b + 1)).shift_pi(-w)
            assert lhs == rhs, ("H", a, b)
            lhs_t = poly_cot_closed_form(beta_kernel(2 * a + 1, 2 * b + 1))
            rhs_t = hat_T(a, b).scale(
                Fraction(factorial(2 * a + 1) * factorial(2 * b + 1) * 2**w)
            ).shift_pi(-w)
            assert lhs_t == rhs_t, ("T", a, b)


@criterion(7, "arccos moments: tail forms at 1e-8, I/J recurrences at 1e-25, Wallis n<=8")
def test_criterion_07_moments():
    cfg = SuiteConfig()
    for parity in ("odd_power", "even_power"):
        n_lo = 1 if parity == "odd_power" else 0
        for n in range(n_lo, 6):
            for b in range(6):
                result = verify_moments(parity, n, b, cfg)
                assert result.passed, (parity, n, b, result)
    for n in range(1, 9):
        assert verify_wallis(n, cfg).passed, n


@criterion(8, "divisibility experiment a<=6: exact multiples of (2a+2)!, integral in bound")
def test_criterion_08_divisibility():
    prec = 192
    for a in range(7):
        report = divisibility_experiment(a)
        assert report.all_divisible, a
        for value in report.scaled_integers.values():
            assert value % report.factorial_divisor == 0
        integral = poly_cot_quadrature(beta_kernel(2 * a + 2, 2 * a + 1), prec, 1e-35)
        upper = (
            const_pi(prec)
            .reciprocal()
            .mul_int(2)
            .mul_fraction(Fraction(factorial(2 * a + 1) ** 2, factorial(4 * a + 3)))
        )
        assert integral.midpoint_fraction - integral.radius_fraction > 0, a
        assert (
            integral.midpoint_fraction + integral.radius_fraction
            < upper.midpoint_fraction - upper.radius_fraction
        ), a


@criterion(9, "DP truncation equals naive nested loops for weight<=6, N<=30, exactly")
def test_criterion_09_oracle_equivalence():
    def naive(parts, N, kind):
        total = Fraction(0)
        for combo in itertools.combinations(range(1, N + 1), len(parts)):
            den = 1
            for idx, k in zip(combo, parts):
                w = idx if kind == SERIES_ZETA else 2 * idx - 1
                den *= w**k
            total += Fraction(1, den)
        return total

    comps = []
    for weight in range(2, 7):
        for depth in range(1, weight + 1):
            for cuts in itertools.combinations(range(1, weight), depth - 1):
                parts, prev = [], 0
                for c in list(cuts) + [weight]:
                    parts.append(c - prev)
                    prev = c
                if parts[-1] >= 2:
                    comps.append(tuple(parts))
    assert len(comps) == 31
    for parts in comps:
        c = Composition(parts)
        N = 30 if c.depth <= 3 else 16
        for kind in (SERIES_ZETA, SERIES_T):
            assert mzv_truncated(c, N, kind) == naive(parts, N, kind), (parts, kind)


@criterion(10, "ball discipline: precision doubling preserves containment and digits")
def test_criterion_10_ball_discipline():
    suite = [
        lambda p: const_pi(p),
        lambda p: const_log2(p),
        lambda p: zeta_int(2, p),
        lambda p: zeta_int(3, p),
        lambda p: zeta_int(5, p),
        lambda p: beta_even(2, p),
        lambda p: beta_even(4, p),
        lambda p: clausen(3, THETA_PI, p),
        lambda p: clausen(5, THETA_HALF_PI, p),
        lambda p: eval_combination(hat_H(2, 1), p),
    ]
    for build in suite:
        for p in (64, 128, 192):
            low, high = build(p), build(2 * p)
            assert low.overlaps(high)
            digits = p // 5
            assert render_ball(low, digits).text == render_ball(high, digits).text
