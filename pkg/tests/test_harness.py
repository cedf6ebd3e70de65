"""Harness-level tests: individual verify operations, comparison semantics,
report structure, and suite orchestration."""

import json
from fractions import Fraction

import pytest

from mzv.exact_core import RationalPolynomial, beta_kernel
from mzv.harness import (
    CheckResult,
    REASON_BUDGET,
    REASON_DISCREPANCY,
    RouteValue,
    SuiteConfig,
    TOL_CLASS_EXACT,
    TOL_CLASS_QUAD,
    _equality_check,
    halfpi_cot_power_closed_form,
    run_suite,
    theorem_grid,
    verify_cot_power_clausen,
    verify_cot_power_halfpi,
    verify_divisibility_chain,
    verify_euler_identities,
    verify_moments,
    verify_murakami_scaling,
    verify_poly_cot,
    verify_poly_cot_basis,
    verify_t_value,
    verify_wallis,
    verify_zagier,
)
from mzv.numerics import RealBall, const_log2, const_pi, eval_combination, zeta_int
import time

CFG = SuiteConfig()


class TestComparisonSemantics:
    def test_route_swap_symmetry(self):
        a = RouteValue("A", zeta_int(3, 128), TOL_CLASS_EXACT)
        b = RouteValue("B", zeta_int(3, 160), TOL_CLASS_QUAD)
        r1 = _equality_check("x", {}, [a, b], CFG, time.monotonic())
        r2 = _equality_check("x", {}, [b, a], CFG, time.monotonic())
        assert r1.passed == r2.passed
        assert r1.max_discrepancy == r2.max_discrepancy

    def test_disagreement_detected(self):
        a = RouteValue("A", zeta_int(3, 128), TOL_CLASS_EXACT)
        wrong = RouteValue("B", zeta_int(5, 128), TOL_CLASS_QUAD)
        r = _equality_check("x", {}, [a, wrong], CFG, time.monotonic())
        assert not r.passed and r.failure_reason == REASON_DISCREPANCY
        assert r.max_discrepancy > 0.1

    def test_budget_detected(self):
        fat = RealBall.from_fraction(Fraction(1), 64).pad_radius(
            RealBall.from_fraction(Fraction(1, 1000), 64).mid
        )
        a = RouteValue("A", fat, TOL_CLASS_QUAD)
        b = RouteValue("B", RealBall.from_int(1, 64), TOL_CLASS_EXACT)
        r = _equality_check("x", {}, [a, b], CFG, time.monotonic())
        assert not r.passed and r.failure_reason == REASON_BUDGET

    def test_raising_precision_keeps_pass(self):
        for cfg in (SuiteConfig(), SuiteConfig(working_bits=320)):
            assert verify_zagier(1, 1, cfg).passed


class TestTheoremChecks:
    def test_zagier_examples(self):
        assert verify_zagier(0, 0, CFG).passed
        assert verify_zagier(1, 1, CFG).passed
        assert verify_zagier(2, 3, CFG).passed

    def test_t_examples(self):
        assert verify_t_value(0, 0, CFG).passed
        assert verify_t_value(1, 0, CFG).passed
        assert verify_t_value(0, 2, CFG).passed

    def test_series_route_included_when_small(self):
        r = verify_zagier(1, 0, CFG)
        assert [v["label"] for v in r.route_values] == ["closed_form", "quadrature", "series"]
        r2 = verify_zagier(3, 2, CFG)  # a+b=5 beyond series_ab_max=3
        assert [v["label"] for v in r2.route_values] == ["closed_form", "quadrature"]


class TestLemmaChecks:
    def test_halfpi_closed_form_values(self):
        # p=2: (pi^2/4) log2 - (7/8) zeta(3)
        comb = halfpi_cot_power_closed_form(2)
        got = eval_combination(comb, 192)
        want = const_pi(192).pow_int(2).mul(const_log2(192)).mul_fraction(
            Fraction(1, 4)
        ).sub(zeta_int(3, 192).mul_fraction(Fraction(7, 8)))
        assert got.overlaps(want)

    @pytest.mark.parametrize("p", [1, 2, 5, 12])
    def test_halfpi(self, p):
        assert verify_cot_power_halfpi(p, CFG).passed

    @pytest.mark.parametrize("p", [1, 2, 4, 8])
    def test_clausen_quarter(self, p):
        assert verify_cot_power_clausen(Fraction(1, 4), p, CFG).passed

    def test_clausen_half_matches_halfpi_form(self):
        r = verify_cot_power_clausen(Fraction(1, 2), 2, CFG)
        assert r.passed

    def test_two_closed_forms_agree_at_half(self):
        # the Clausen assembly at z=1/2 and the log2/zeta form describe the
        # same integral; they must coincide as balls for every p
        from mzv.harness import clausen_cot_power_closed_form

        for p in range(1, 9):
            via_clausen = clausen_cot_power_closed_form(Fraction(1, 2), p, 192)
            via_log_form = eval_combination(halfpi_cot_power_closed_form(p), 192)
            assert via_clausen.overlaps(via_log_form), p

    def test_clausen_rejects_other_z(self):
        with pytest.raises(ValueError):
            verify_cot_power_clausen(Fraction(1, 3), 2, CFG)

    def test_poly_cot_simple_and_basis(self):
        assert verify_poly_cot(RationalPolynomial([0, 1]), CFG).passed
        assert verify_poly_cot(beta_kernel(2, 1), CFG).passed
        assert verify_poly_cot_basis("H", 4, CFG).passed
        assert verify_poly_cot_basis("T", 4, CFG).passed


class TestMomentChecks:
    def test_examples(self):
        assert verify_moments("odd_power", 1, 0, CFG).passed
        assert verify_moments("even_power", 0, 1, CFG).passed
        assert verify_moments("odd_power", 3, 2, CFG).passed

    def test_recurrence_route_present(self):
        r = verify_moments("even_power", 2, 2, CFG)
        assert r.passed
        assert "recurrence" in [v["label"] for v in r.route_values]

    def test_wallis(self):
        for n in (1, 5, 8):
            assert verify_wallis(n, CFG).passed


class TestExactChecks:
    def test_murakami_scaling(self):
        for bound in (3, 6):
            r = verify_murakami_scaling(bound, bound, CFG)
            assert r.passed and r.tolerance == 0.0

    def test_divisibility_chain(self):
        for a in (0, 2, 6):
            r = verify_divisibility_chain(a, CFG)
            assert r.passed
            assert r.parameters["all_divisible"] is True
            assert r.parameters["positive"] is True
            assert r.parameters["below_bound"] is True


class TestEuler:
    def test_report(self):
        rep = verify_euler_identities(CFG)
        assert rep.failed == 0
        ids = {r.identity_id for r in rep.results}
        assert {"euler_zeta_1_2", "euler_t_1_2", "hoffman_h_closed", "hoffman_t_closed"} <= ids


class TestSuite:
    def test_unknown_suite_rejected(self):
        with pytest.raises(ValueError):
            run_suite("everything")

    def test_small_grid_all_green(self):
        cfg = SuiteConfig(
            theorem_ab_max=1,
            halfpi_p_max=3,
            clausen_p_max=2,
            moments_n_max=1,
            moments_b_max=1,
            wallis_n_max=2,
            poly_count=3,
            scaling_ab_max=2,
            experiment_a_max=1,
        )
        rep = run_suite("all", cfg)
        assert rep.failed == 0 and rep.passed == len(rep.results)
        assert rep.passed > 25

    def test_json_lines_shape(self):
        cfg = SuiteConfig(theorem_ab_max=0)
        rep = run_suite("zagier", cfg)
        lines = rep.to_json_lines().splitlines()
        *checks, summary = [json.loads(line) for line in lines]
        for c in checks:
            assert set(c) == {
                "identity_id",
                "parameters",
                "route_values",
                "max_discrepancy",
                "tolerance",
                "passed",
                "elapsed_ms",
                "failure_reason",
            }
        assert set(summary) == {"suite", "passed", "failed", "skipped", "wall_ms"}
        assert summary["passed"] + summary["failed"] == len(checks)

    def test_worker_pool_determinism(self):
        cfg1 = SuiteConfig(theorem_ab_max=1, workers=1)
        cfg4 = SuiteConfig(theorem_ab_max=1, workers=4)
        r1 = run_suite("t", cfg1)
        r4 = run_suite("t", cfg4)
        key = lambda rep: [(r.identity_id, str(r.parameters), r.passed, r.max_discrepancy) for r in rep.results]
        assert key(r1) == key(r4)

    def test_budget_config_flags_not_violations(self):
        cfg = SuiteConfig(digits=5, working_bits=64, tol=1e-100, theorem_ab_max=0)
        rep = run_suite("zagier", cfg)
        assert rep.failed == len(rep.results) > 0
        assert rep.any_budget_failures() and not rep.any_identity_failures()

    def test_rectangular_grid_override(self):
        cfg = SuiteConfig(theorem_a_max=3, theorem_b_max=2)
        assert theorem_grid(cfg) == [(a, b) for a in range(4) for b in range(3)]
        assert len(theorem_grid(SuiteConfig())) == 21

    def test_empty_grid_gives_empty_report(self):
        cfg = SuiteConfig(theorem_a_max=-1, theorem_b_max=-1)
        rep = run_suite("zagier", cfg)
        assert rep.passed == rep.failed == 0 and rep.results == []

    def test_full_default_suite_green(self):
        rep = run_suite("all", SuiteConfig())
        assert rep.failed == 0
        assert rep.passed > 150  # full default grid


def test_quadrature_discrepancy_shrinks_with_node_cap():
    # |route A - route B| (ball metric) collapses as the fixed node count
    # doubles, within a factor-4 allowance, for the cotangent moment family
    from mzv.exact_core import factorial as fact
    from mzv.quadrature import IntegrandSpec, integrate_fixed

    prec = 256
    for a in range(6):
        for b in range(6 - a):
            route_a = eval_combination(hat_H_local(a, b), prec)
            prefactor = const_pi(prec).pow_int(2 * b).mul_fraction(
                Fraction(2 ** (2 * a + 3), fact(2 * a + 2) * fact(2 * b + 1))
            )
            spec = IntegrandSpec.cot_moment(2 * a + 2, 2 * b + 1)
            discs = []
            for n in (16, 32, 64):
                route_b = prefactor.mul(integrate_fixed(spec, n, prec))
                gap = abs(route_a.midpoint_fraction - route_b.midpoint_fraction)
                radii = route_a.radius_fraction + route_b.radius_fraction
                discs.append(max(Fraction(0), gap - radii))
            for lo, hi in zip(discs[1:], discs[:-1]):
                assert lo <= hi / 4 or lo == 0, (a, b, discs)


def hat_H_local(a, b):
    from mzv.exact_core import hat_H

    return hat_H(a, b)
