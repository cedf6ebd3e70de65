"""Series-route tests: exact DP against a naive nested-loop oracle, arcsin
Taylor coefficients against symbolic series, tables, extrapolation, and the
single-sum evaluators."""

import itertools
import math
from fractions import Fraction

import pytest
import sympy

from mzv.exact_core import hat_H, hat_T
from mzv.numerics import HEURISTIC, const_log2, eval_combination, zeta_int
from mzv.series_mzv import (
    Composition,
    EXACT_TRUNCATION_DEFAULT,
    MhnTable,
    PARITY_ALL,
    PARITY_ODD,
    SERIES_T,
    SERIES_ZETA,
    TruncationPlan,
    arcsin_even_coeff,
    arcsin_odd_coeff,
    load_or_build_prefix,
    mzv_extrapolated,
    mzv_truncated,
    prefix_mhn,
    single_sum_H,
    single_sum_T,
    tail_mhn,
)


def naive_nested_sum(parts, N, kind):
    """Test oracle: enumerate all strictly increasing index tuples directly."""
    depth = len(parts)
    total = Fraction(0)
    for combo in itertools.combinations(range(1, N + 1), depth):
        den = 1
        for idx, k in zip(combo, parts):
            w = idx if kind == SERIES_ZETA else 2 * idx - 1
            den *= w**k
        total += Fraction(1, den)
    return total


def admissible_compositions(max_weight):
    out = []
    for weight in range(2, max_weight + 1):
        for depth in range(1, weight + 1):
            for cuts in itertools.combinations(range(1, weight), depth - 1):
                parts = []
                prev = 0
                for c in list(cuts) + [weight]:
                    parts.append(c - prev)
                    prev = c
                if parts[-1] >= 2:
                    out.append(tuple(parts))
    return out


class TestComposition:
    def test_properties(self):
        c = Composition((2, 1, 3))
        assert c.weight == 6 and c.depth == 3

    def test_admissibility(self):
        with pytest.raises(ValueError):
            Composition((2, 1))
        with pytest.raises(ValueError):
            Composition(())
        with pytest.raises(ValueError):
            Composition((0, 2))


class TestPrefixTables:
    def test_depth_zero_all_ones(self):
        assert prefix_mhn(0, 5, PARITY_ALL).values == (Fraction(1),) * 5

    def test_hand_recurrences(self):
        assert prefix_mhn(1, 3, PARITY_ALL).values == (0, 1, Fraction(5, 4))
        assert prefix_mhn(1, 3, PARITY_ODD).values == (0, 1, Fraction(10, 9))

    def test_against_naive_depth2(self):
        table = prefix_mhn(2, 8, PARITY_ALL)
        for i in range(8):
            want = sum(
                (Fraction(1, (a * b) ** 2) for a, b in itertools.combinations(range(1, i + 1), 2)),
                Fraction(0),
            )
            assert table.values[i] == want

    def test_cache_round_trip(self, tmp_path):
        table = prefix_mhn(2, 25, PARITY_ODD)
        path = tmp_path / "table.mzvt"
        table.save(path)
        assert MhnTable.load(path) == table
        blob = path.read_bytes()
        assert blob[:4] == b"MZVT"

    def test_load_or_build_uses_cache(self, tmp_path):
        t1 = load_or_build_prefix(1, 10, PARITY_ALL, cache_dir=tmp_path)
        assert (tmp_path / "mhn_all_1_10.mzvt").exists()
        t2 = load_or_build_prefix(1, 10, PARITY_ALL, cache_dir=tmp_path)
        assert t1 == t2 == prefix_mhn(1, 10, PARITY_ALL)

    def test_load_rejects_garbage(self, tmp_path):
        path = tmp_path / "bad.mzvt"
        path.write_bytes(b"NOPE" + b"\x00" * 16)
        with pytest.raises(ValueError):
            MhnTable.load(path)


class TestArcsinCoefficients:
    def test_spec_values(self):
        assert arcsin_even_coeff(1, 1) == Fraction(1, 2)
        assert arcsin_even_coeff(1, 2) == Fraction(1, 6)
        assert arcsin_even_coeff(2, 1) == 0
        assert arcsin_odd_coeff(0, 0) == 1
        assert arcsin_odd_coeff(0, 1) == Fraction(1, 6)
        assert arcsin_odd_coeff(1, 0) == 0

    @pytest.mark.parametrize("r", [1, 2, 3])
    def test_even_against_sympy(self, r):
        x = sympy.Symbol("x")
        series = sympy.series(sympy.asin(x) ** (2 * r) / sympy.factorial(2 * r), x, 0, 2 * 6 + 1)
        for n in range(1, 6):
            want = Fraction(str(series.coeff(x, 2 * n)))
            assert arcsin_even_coeff(r, n) == want

    @pytest.mark.parametrize("r", [0, 1, 2])
    def test_odd_against_sympy(self, r):
        x = sympy.Symbol("x")
        series = sympy.series(
            sympy.asin(x) ** (2 * r + 1) / sympy.factorial(2 * r + 1), x, 0, 2 * 6 + 2
        )
        for n in range(6):
            want = Fraction(str(series.coeff(x, 2 * n + 1)))
            assert arcsin_odd_coeff(r, n) == want

    def test_taylor_sum_at_half(self):
        x = Fraction(1, 2)
        even = sum(arcsin_even_coeff(1, n) * x ** (2 * n) for n in range(1, 41))
        assert abs(float(even) - math.pi**2 / 72) < 1e-10
        odd = sum(arcsin_odd_coeff(0, n) * x ** (2 * n + 1) for n in range(41))
        assert abs(float(odd) - math.pi / 6) < 1e-10


class TestTruncatedSums:
    def test_hand_values(self):
        assert mzv_truncated(Composition((1, 2)), 2) == Fraction(1, 4)
        assert mzv_truncated(Composition((1, 2)), 3) == Fraction(5, 12)
        assert mzv_truncated(Composition((2,)), 2, SERIES_T) == Fraction(10, 9)

    def test_dp_equals_naive_oracle(self):
        # exact equality for every admissible composition of weight <= 6
        comps = admissible_compositions(6)
        assert len(comps) == 31
        for parts in comps:
            c = Composition(parts)
            for kind in (SERIES_ZETA, SERIES_T):
                n_check = 30 if c.depth <= 3 else 18
                assert mzv_truncated(c, n_check, kind) == naive_nested_sum(parts, n_check, kind), (
                    parts,
                    kind,
                )

    def test_monotone_lower_bounds(self):
        c = Composition((2, 3))
        limit = eval_combination(hat_H(0, 1), 96).midpoint_fraction
        prev = Fraction(0)
        for N in (4, 8, 16, 32, 64):
            val = mzv_truncated(c, N)
            assert prev <= val < limit
            prev = val


class TestExtrapolation:
    def test_plan_validation(self):
        with pytest.raises(ValueError):
            TruncationPlan(8)
        with pytest.raises(ValueError):
            TruncationPlan(100, 0)
        with pytest.raises(ValueError):
            TruncationPlan(100, 2, "secret_scheme")

    def test_zeta2_to_1e8(self):
        ball = mzv_extrapolated(Composition((2,)), TruncationPlan(10_000, 3), 53)
        assert ball.rigor == HEURISTIC
        assert abs(ball.midpoint_float() - math.pi**2 / 6) < 1e-8

    def test_euler_identity_zeta12(self):
        ball = mzv_extrapolated(Composition((1, 2)), TruncationPlan(50_000, 4), 53)
        want = zeta_int(3, 64).midpoint_float()
        assert abs(ball.midpoint_float() - want) < 1e-8

    def test_euler_identity_t12(self):
        ball = mzv_extrapolated(Composition((1, 2)), TruncationPlan(50_000, 4), 53, SERIES_T)
        z3 = zeta_int(3, 64).midpoint_float()
        want = -0.5 * (7 / 8) * z3 + (math.pi**2 / 8) * const_log2(64).midpoint_float()
        assert abs(ball.midpoint_float() - want) < 1e-8

    def test_hoffman_closed_forms(self):
        for n in (1, 2, 3):
            zb = mzv_extrapolated(Composition((2,) * n), TruncationPlan(10_000, 3), 53)
            assert abs(zb.midpoint_float() - math.pi ** (2 * n) / math.factorial(2 * n + 1)) < 1e-8
            tb = mzv_extrapolated(Composition((2,) * n), TruncationPlan(10_000, 3), 53, SERIES_T)
            want = math.pi ** (2 * n) / (4**n * math.factorial(2 * n))
            assert abs(tb.midpoint_float() - want) < 1e-8

    def test_exact_threshold_path(self):
        # small plans run on exact rationals; result should match the float path
        small = mzv_extrapolated(Composition((3,)), TruncationPlan(64, 3), 96)
        assert small.prec >= 96
        assert abs(small.midpoint_float() - zeta_int(3, 64).midpoint_float()) < 1e-5
        assert 64 * 4 <= EXACT_TRUNCATION_DEFAULT

    def test_radius_is_honest(self):
        # zeta(2,3) in the increasing convention is H(1,0): the 3 sits last
        ball = mzv_extrapolated(Composition((2, 3)), TruncationPlan(5_000, 4), 53)
        truth = eval_combination(hat_H(1, 0), 96).midpoint_float()
        assert abs(ball.midpoint_float() - truth) <= 20 * ball.radius_float()


class TestSingleSums:
    def test_h00_is_zeta3(self):
        ball = single_sum_H(0, 0, 100_000)
        assert abs(ball.midpoint_float() - zeta_int(3, 64).midpoint_float()) < 1e-8

    def test_t00_is_seven_eighths_zeta3(self):
        ball = single_sum_T(0, 0, 100_000)
        assert abs(ball.midpoint_float() - 0.875 * zeta_int(3, 64).midpoint_float()) < 1e-8

    @pytest.mark.parametrize("a,b", [(1, 0), (0, 1), (2, 1), (1, 2), (3, 0), (0, 3)])
    def test_cross_route_h(self, a, b):
        ball = single_sum_H(a, b, 100_000)
        want = eval_combination(hat_H(a, b), 96).midpoint_float()
        assert abs(ball.midpoint_float() - want) < 1e-8

    @pytest.mark.parametrize("a,b", [(1, 0), (0, 1), (1, 1), (2, 0)])
    def test_cross_route_t(self, a, b):
        ball = single_sum_T(a, b, 100_000)
        want = eval_combination(hat_T(a, b), 96).midpoint_float()
        assert abs(ball.midpoint_float() - want) < 1e-8

    def test_agrees_with_mzv_route(self):
        a, b = 1, 1
        comp = Composition((2,) * a + (3,) + (2,) * b)
        direct = mzv_extrapolated(comp, TruncationPlan(20_000, 4), 53)
        single = single_sum_H(a, b, 100_000)
        assert abs(direct.midpoint_float() - single.midpoint_float()) < 1e-8

    def test_small_n_behavior(self):
        # the raw positive-term partial sums grow monotonically ...
        partials = [mzv_truncated(Composition((3,)), n, SERIES_T) for n in (8, 16, 32, 64)]
        assert partials == sorted(partials)
        # ... and the tail-corrected single sums agree across N within radii
        balls = [single_sum_T(0, 0, n, 53) for n in (256, 1024, 4096)]
        for x, y in zip(balls, balls[1:]):
            assert abs(x.midpoint_float() - y.midpoint_float()) <= x.radius_float() + y.radius_float()


class TestTailMhn:
    def test_depth_zero_is_one(self):
        assert tail_mhn(0, 5).midpoint_float() == 1.0

    def test_all_parity_against_zeta2(self):
        want = math.pi**2 / 6 - sum(1 / k**2 for k in range(1, 8))
        assert abs(tail_mhn(1, 7, PARITY_ALL).midpoint_float() - want) < 1e-10

    def test_odd_parity_against_t2(self):
        # sum over odd squares beyond the first three weights 1, 3, 5
        want = math.pi**2 / 8 - 1 - 1 / 9 - 1 / 25
        assert abs(tail_mhn(1, 2, PARITY_ODD).midpoint_float() - want) < 1e-10

    def test_depth2_against_polygamma(self):
        # elementary symmetric identity: e_2 = (p1^2 - p2)/2 with the power
        # sums over {1/m^2 : m > 3} supplied by polygamma values
        import mpmath

        with mpmath.workdps(30):
            p1 = mpmath.polygamma(1, 4)  # sum_{m>3} 1/m^2
            p2 = mpmath.polygamma(3, 4) / 6  # sum_{m>3} 1/m^4
            want = float((p1 * p1 - p2) / 2)
        got = tail_mhn(2, 3, PARITY_ALL).midpoint_float()
        assert abs(got - want) < 1e-10
