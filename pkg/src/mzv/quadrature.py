"""High-precision Gauss-Legendre quadrature for the cotangent-moment family.

Rules are computed from scratch at the requested precision: Newton
refinement of float-seeded root estimates of the Legendre polynomial, with
nodes cached per (order, precision).  Integrands are always reformulated so
that they are analytic on the closed interval -- cot x never appears bare;
the factor x*cot(x) is evaluated by its Taylor series (exact Bernoulli
coefficient stream) below 1/4 and as x*cos(x)/sin(x) elsewhere.  With every
integrand analytic, node doubling converges geometrically and the returned
ball carries the last doubling difference as a heuristic radius.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field
from fractions import Fraction
from math import cos, pi

from mpmath.libmp import (
    from_float,
    from_int,
    from_man_exp,
    from_rational,
    fzero,
    mpf_abs,
    mpf_add,
    mpf_cos,
    mpf_div,
    mpf_lt,
    mpf_mul,
    mpf_mul_int,
    mpf_neg,
    mpf_pi,
    mpf_pow_int,
    mpf_shift,
    mpf_sin,
    mpf_sub,
    round_ceiling,
    round_nearest,
)

from .exact_core import RationalPolynomial, bernoulli_even, factorial
from .numerics import HEURISTIC, RealBall

_RN = round_nearest
_RU = round_ceiling

_RULE_GUARD = 48  # extra working bits for rule construction and node sums

FAMILY_COT_MOMENT = "cot_moment"
FAMILY_ARCCOS_ODD = "arccos_moment_odd"
FAMILY_ARCCOS_EVEN = "arccos_moment_even"
FAMILY_COT_POWER = "cot_power"
FAMILY_POLY_COT = "poly_cot"


class QuadratureError(RuntimeError):
    """Raised when node refinement or node doubling fails to converge."""


@dataclass(frozen=True)
class QuadratureRule:
    """Gauss-Legendre nodes/weights on (-1, 1) at a given bit precision."""

    order: int
    precision: int
    nodes: tuple[RealBall, ...]
    weights: tuple[RealBall, ...]
    nodes_raw: tuple = field(repr=False, default=())
    weights_raw: tuple = field(repr=False, default=())


_RULE_CACHE: dict[tuple[int, int], QuadratureRule] = {}
_RULE_LOCK = threading.Lock()


def _legendre_pair(n: int, x, wp: int):
    """(P_n(x), P_(n-1)(x)) by the three-term recurrence."""
    pkm1 = from_int(1)
    pk = x
    for k in range(1, n):
        num = mpf_sub(
            mpf_mul_int(mpf_mul(x, pk, wp, _RN), 2 * k + 1, wp, _RN),
            mpf_mul_int(pkm1, k, wp, _RN),
            wp,
            _RN,
        )
        pkm1, pk = pk, mpf_div(num, from_int(k + 1), wp, _RN)
    return pk, pkm1


def gauss_legendre_rule(n_nodes: int, prec: int) -> QuadratureRule:
    """Legendre nodes and weights at precision prec, Newton-refined from the
    cosine asymptotic seeds.  Node residuals are driven below 2^(-prec+8);
    failure to converge signals a precision misconfiguration."""
    if n_nodes < 2:
        raise ValueError("at least 2 nodes required")
    key = (n_nodes, prec)
    hit = _RULE_CACHE.get(key)
    if hit is not None:
        return hit

    wp = prec + _RULE_GUARD
    threshold = from_man_exp(1, -(prec + 40))
    half: list[tuple] = []  # (node > 0 or 0, weight)
    n = n_nodes
    for k in range(1, n // 2 + 1):
        x = from_float(cos(pi * (k - 0.25) / (n + 0.5)), wp, _RN)
        last_dx = None
        for _ in range(120):
            pn, pnm1 = _legendre_pair(n, x, wp)
            # P'_n = n (x P_n - P_(n-1)) / (x^2 - 1)
            x2m1 = mpf_sub(mpf_mul(x, x, wp, _RN), from_int(1), wp, _RN)
            dpn = mpf_div(
                mpf_mul_int(mpf_sub(mpf_mul(x, pn, wp, _RN), pnm1, wp, _RN), n, wp, _RN),
                x2m1,
                wp,
                _RN,
            )
            dx = mpf_div(pn, dpn, wp, _RN)
            x = mpf_sub(x, dx, wp, _RN)
            last_dx = mpf_abs(dx)
            if mpf_lt(last_dx, threshold):
                break
        else:
            raise QuadratureError(
                f"Newton refinement stalled for rule order {n} at {prec} bits"
            )
        pn, pnm1 = _legendre_pair(n, x, wp)
        x2m1 = mpf_sub(mpf_mul(x, x, wp, _RN), from_int(1), wp, _RN)
        dpn = mpf_div(
            mpf_mul_int(mpf_sub(mpf_mul(x, pn, wp, _RN), pnm1, wp, _RN), n, wp, _RN),
            x2m1,
            wp,
            _RN,
        )
        w = mpf_div(from_int(2), mpf_neg(mpf_mul(x2m1, mpf_mul(dpn, dpn, wp, _RN), wp, _RN)), wp, _RN)
        half.append((x, w, last_dx))

    nodes_raw: list = []
    weights_raw: list = []
    # half holds positive roots in descending order (k=1 is the largest)
    for x, w, _ in half:
        nodes_raw.append(mpf_neg(x))
        weights_raw.append(w)
    if n % 2 == 1:
        x0 = fzero
        pn, pnm1 = _legendre_pair(n, x0, wp)
        dpn = mpf_mul_int(pnm1, n, wp, _RN)  # P'_n(0) = n(0 - P_(n-1))/(0-1)
        w0 = mpf_div(from_int(2), mpf_mul(dpn, dpn, wp, _RN), wp, _RN)
        nodes_raw.append(x0)
        weights_raw.append(w0)
    for x, w, _ in reversed(half):
        nodes_raw.append(x)
        weights_raw.append(w)

    node_rad = from_man_exp(1, -(prec + 8))
    nodes = tuple(RealBall.from_mid_rad(x, node_rad, prec) for x in nodes_raw)
    weights = tuple(
        RealBall.from_mid_rad(w, mpf_shift(mpf_abs(w), -(prec + 6)), prec)
        for w in weights_raw
    )
    rule = QuadratureRule(n_nodes, prec, nodes, weights, tuple(nodes_raw), tuple(weights_raw))
    with _RULE_LOCK:
        return _RULE_CACHE.setdefault(key, rule)


# ---------------------------------------------------------------------------
# x*cot(x): analytic evaluation
# ---------------------------------------------------------------------------

_XCOTX_CACHE: dict[int, list] = {}
_XCOTX_LOCK = threading.Lock()


def _xcotx_coeffs(wp: int) -> list:
    """Raw Taylor coefficients of x cot x = sum_k (-4)^k B_(2k)/(2k)! x^(2k),
    enough terms for 2^(-wp) accuracy on [0, 1/4)."""
    hit = _XCOTX_CACHE.get(wp)
    if hit is not None:
        return hit
    terms = int(wp / 7.2) + 6  # term ratio below (1/(4 pi))^2 on [0, 1/4)
    coeffs = []
    for k in range(terms):
        c = Fraction((-4) ** k) * bernoulli_even(k) / factorial(2 * k)
        coeffs.append(from_rational(c.numerator, c.denominator, wp, _RN))
    with _XCOTX_LOCK:
        return _XCOTX_CACHE.setdefault(wp, coeffs)


def _xcotx(x, wp: int):
    """x*cot(x) for raw x in [0, pi/2], analytic through the origin."""
    sign, man, exp, bc = x
    if man == 0:
        return from_int(1)
    if exp + bc <= -2:  # |x| < 1/4: Taylor series, Horner in x^2
        u = mpf_mul(x, x, wp, _RN)
        coeffs = _xcotx_coeffs(wp)
        acc = coeffs[-1]
        for c in reversed(coeffs[:-1]):
            acc = mpf_add(mpf_mul(acc, u, wp, _RN), c, wp, _RN)
        return acc
    return mpf_div(mpf_mul(x, mpf_cos(x, wp, _RN), wp, _RN), mpf_sin(x, wp, _RN), wp, _RN)


# ---------------------------------------------------------------------------
# integrand specifications
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class IntegrandSpec:
    """One member of the verified integrand families, with its interval
    implied by the family (see the named constructors)."""

    family: str
    p_exp: int = 0
    q_exp: int = 0
    moment_n: int = 0
    moment_b: int = 0
    z: Fraction = Fraction(1, 2)
    poly: RationalPolynomial | None = None

    @staticmethod
    def cot_moment(p_exp: int, q_exp: int) -> "IntegrandSpec":
        """x^p (1 - 2x/pi)^q cot(x) on [0, pi/2]; needs p >= 1."""
        if p_exp < 1:
            raise ValueError("cot moment requires p_exp >= 1")
        if q_exp < 0:
            raise ValueError("q_exp must be nonnegative")
        return IntegrandSpec(FAMILY_COT_MOMENT, p_exp=p_exp, q_exp=q_exp)

    @staticmethod
    def arccos_moment_odd(n: int, b: int) -> "IntegrandSpec":
        """post-substitution form of int_0^1 x^(2n-1) (2 arccos x)^(2b+1)/(2b+1)! dx."""
        if n < 1 or b < 0:
            raise ValueError("odd moment requires n >= 1 and b >= 0")
        return IntegrandSpec(FAMILY_ARCCOS_ODD, moment_n=n, moment_b=b)

    @staticmethod
    def arccos_moment_even(n: int, b: int) -> "IntegrandSpec":
        """post-substitution form of int_0^1 x^(2n) arccos(x)^(2b+1)/(2b+1)! dx."""
        if n < 0 or b < 0:
            raise ValueError("even moment requires n >= 0 and b >= 0")
        return IntegrandSpec(FAMILY_ARCCOS_EVEN, moment_n=n, moment_b=b)

    @staticmethod
    def cot_power(p_exp: int, z: Fraction) -> "IntegrandSpec":
        """x^p cot(x) on [0, pi z], rational z in (0, 1/2]."""
        z = Fraction(z)
        if p_exp < 1:
            raise ValueError("cot power requires p_exp >= 1")
        if not 0 < z <= Fraction(1, 2):
            raise ValueError("z must lie in (0, 1/2]")
        return IntegrandSpec(FAMILY_COT_POWER, p_exp=p_exp, z=z)

    @staticmethod
    def poly_cot(poly: RationalPolynomial) -> "IntegrandSpec":
        """P(x) cot(pi x / 2) on [0, 1]; requires P(0) = 0."""
        if poly(0) != 0:
            raise ValueError("polynomial must vanish at 0")
        return IntegrandSpec(FAMILY_POLY_COT, poly=poly)


def _make_evaluator(spec: IntegrandSpec, wp: int):
    """Closure evaluating the reformulated (analytic) integrand at raw x,
    plus the raw upper integration limit."""
    pi_raw = mpf_pi(wp, _RN)
    half_pi = mpf_shift(pi_raw, -1)

    if spec.family == FAMILY_COT_MOMENT:
        two_over_pi = mpf_div(from_int(2), pi_raw, wp, _RN)
        p, q = spec.p_exp, spec.q_exp

        def f(x):
            acc = _xcotx(x, wp)
            if p > 1:
                acc = mpf_mul(acc, mpf_pow_int(x, p - 1, wp, _RN), wp, _RN)
            if q:
                lin = mpf_sub(from_int(1), mpf_mul(two_over_pi, x, wp, _RN), wp, _RN)
                acc = mpf_mul(acc, mpf_pow_int(lin, q, wp, _RN), wp, _RN)
            return acc

        return f, half_pi

    if spec.family == FAMILY_COT_POWER:
        p = spec.p_exp
        upper = mpf_div(
            mpf_mul_int(pi_raw, spec.z.numerator, wp, _RN), from_int(spec.z.denominator), wp, _RN
        )

        def f(x):
            acc = _xcotx(x, wp)
            if p > 1:
                acc = mpf_mul(acc, mpf_pow_int(x, p - 1, wp, _RN), wp, _RN)
            return acc

        return f, upper

    if spec.family in (FAMILY_ARCCOS_ODD, FAMILY_ARCCOS_EVEN):
        n, b = spec.moment_n, spec.moment_b
        odd = spec.family == FAMILY_ARCCOS_ODD
        cos_pow = 2 * n - 1 if odd else 2 * n
        scale = Fraction(2 ** (2 * b + 1) if odd else 1, factorial(2 * b + 1))
        scale_raw = from_rational(scale.numerator, scale.denominator, wp, _RN)

        def f(t):
            acc = mpf_mul(mpf_sin(t, wp, _RN), scale_raw, wp, _RN)
            if cos_pow:
                acc = mpf_mul(acc, mpf_pow_int(mpf_cos(t, wp, _RN), cos_pow, wp, _RN), wp, _RN)
            acc = mpf_mul(acc, mpf_pow_int(t, 2 * b + 1, wp, _RN), wp, _RN)
            return acc

        return f, half_pi

    if spec.family == FAMILY_POLY_COT:
        # P(x) cot(pi x/2) = (P(x)/x) * (2/pi) * g(pi x / 2), g = x cot x
        assert spec.poly is not None
        shifted = spec.poly.coefficients[1:]  # P/x, exact because P(0)=0
        coeffs = [from_rational(c.numerator, c.denominator, wp, _RN) for c in shifted]
        two_over_pi = mpf_div(from_int(2), pi_raw, wp, _RN)

        def f(x):
            acc = coeffs[-1]
            for c in reversed(coeffs[:-1]):
                acc = mpf_add(mpf_mul(acc, x, wp, _RN), c, wp, _RN)
            g = _xcotx(mpf_mul(half_pi, x, wp, _RN), wp)
            return mpf_mul(mpf_mul(acc, g, wp, _RN), two_over_pi, wp, _RN)

        return f, from_int(1)

    raise ValueError(f"unknown integrand family {spec.family!r}")


def _apply_rule(rule: QuadratureRule, f, upper, wp: int):
    """sum w_i f(c + c t_i) * c with c = upper/2, plus a |w f| magnitude tally."""
    c = mpf_shift(upper, -1)
    total = fzero
    mag = fzero
    for t, w in zip(rule.nodes_raw, rule.weights_raw):
        x = mpf_mul(c, mpf_add(t, from_int(1), wp, _RN), wp, _RN)
        v = mpf_mul(w, f(x), wp, _RN)
        total = mpf_add(total, v, wp, _RN)
        mag = mpf_add(mag, mpf_abs(v), wp, _RU)
    return mpf_mul(total, c, wp, _RN), mpf_mul(mag, mpf_abs(c), wp, _RU)


def integrate_fixed(spec: IntegrandSpec, n_nodes: int, prec: int) -> RealBall:
    """Single application of the n-node rule; radius covers rounding only
    (not truncation), so this is a diagnostic value."""
    wp = prec + _RULE_GUARD
    rule = gauss_legendre_rule(n_nodes, prec)
    f, upper = _make_evaluator(spec, wp)
    total, mag = _apply_rule(rule, f, upper, wp)
    rad = mpf_shift(mpf_add(mag, from_int(1), 30, _RU), -(prec + 4))
    return RealBall.from_mid_rad(total, rad, prec, HEURISTIC)


def integrate(
    spec: IntegrandSpec,
    prec: int,
    tol: float | Fraction,
    start_nodes: int = 32,
    node_cap: int = 4096,
) -> RealBall:
    """Node-doubling Gauss-Legendre evaluation: stops when two successive
    results differ by less than tol, returning a HEURISTIC ball whose radius
    is that difference plus rounding slack."""
    wp = prec + _RULE_GUARD
    f, upper = _make_evaluator(spec, wp)
    tol_raw = from_float(float(tol), 53, _RN)
    prev = None
    n = start_nodes
    while n <= node_cap:
        rule = gauss_legendre_rule(n, prec)
        total, mag = _apply_rule(rule, f, upper, wp)
        slack = mpf_shift(mpf_add(mag, from_int(1), 30, _RU), -(prec + 4))
        if prev is not None:
            diff = mpf_abs(mpf_sub(total, prev, wp, _RN))
            # below the rounding floor more nodes cannot help: stop and let
            # the caller judge the (now slack-dominated) radius against tol
            if mpf_lt(diff, tol_raw) or mpf_lt(diff, slack):
                rad = mpf_add(diff, slack, 30, _RU)
                return RealBall.from_mid_rad(total, rad, prec, HEURISTIC)
        prev = total
        n *= 2
    raise QuadratureError(
        f"{spec.family} did not reach tol={float(tol):.3g} within {node_cap} nodes"
    )


# ---------------------------------------------------------------------------
# named integral operations
# ---------------------------------------------------------------------------

def cot_moment_integral(p_exp: int, q_exp: int, prec: int, tol: float | Fraction) -> RealBall:
    """integral_0^(pi/2) x^p_exp (1 - 2x/pi)^q_exp cot(x) dx."""
    return integrate(IntegrandSpec.cot_moment(p_exp, q_exp), prec, tol)


def arccos_moment(parity: str, n: int, b: int, prec: int, tol: float | Fraction) -> RealBall:
    """Moments of arccos powers after the x = cos t substitution.

    parity 'odd_power':  integral_0^1 x^(2n-1) (2 arccos x)^(2b+1)/(2b+1)! dx
    parity 'even_power': integral_0^1 x^(2n)   arccos(x)^(2b+1)/(2b+1)! dx
    """
    if parity == "odd_power":
        spec = IntegrandSpec.arccos_moment_odd(n, b)
    elif parity == "even_power":
        spec = IntegrandSpec.arccos_moment_even(n, b)
    else:
        raise ValueError("parity must be 'odd_power' or 'even_power'")
    return integrate(spec, prec, tol)


def cot_power_integral(p_exp: int, z: Fraction, prec: int, tol: float | Fraction) -> RealBall:
    """integral_0^(pi z) x^p_exp cot(x) dx for rational z in (0, 1/2]."""
    return integrate(IntegrandSpec.cot_power(p_exp, z), prec, tol)


def poly_cot_quadrature(P: RationalPolynomial, prec: int, tol: float | Fraction) -> RealBall:
    """integral_0^1 P(x) cot(pi x / 2) dx by quadrature (P(0) = 0)."""
    return integrate(IntegrandSpec.poly_cot(P), prec, tol)
