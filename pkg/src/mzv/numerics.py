"""Arbitrary-precision real balls, constants, and zeta-family special values.

A RealBall is a midpoint/radius pair built on raw mpmath mantissa-exponent
tuples.  All midpoint operations pass the precision explicitly (no global
context), so balls are safe to create and combine from concurrent workers.
Radius propagation is conservative: radii add, cross terms are included for
products, and every rounded midpoint operation contributes one ulp of slack.

Constants are rigorous:

* pi and log 2 come from the correctly-rounded library kernels, wrapped with
  a one-ulp radius;
* zeta(s) at integer s >= 2 (and the Hurwitz variants needed for Dirichlet
  beta) are summed by Euler-Maclaurin entirely in exact rational arithmetic,
  with the classical first-omitted-term remainder bound;
* Clausen values at the quarter/half-turn angles use their closed forms, and
  generic angles fall back to tail-bounded series.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass
from fractions import Fraction

from mpmath import libmp
from mpmath.libmp import (
    fzero,
    from_int,
    from_man_exp,
    from_rational,
    mpf_abs,
    mpf_add,
    mpf_cos,
    mpf_div,
    mpf_log,
    mpf_lt,
    mpf_mul,
    mpf_mul_int,
    mpf_neg,
    mpf_pi,
    mpf_pow_int,
    mpf_shift,
    mpf_sin,
    mpf_sub,
    to_str,
    round_ceiling,
    round_nearest,
)
from mpmath.libmp.libelefun import mpf_ln2

from .exact_core import (
    KIND_LOG2,
    KIND_ONE,
    KIND_ZETA,
    ZetaCombination,
    bernoulli_even,
    factorial,
)

RIGOROUS = "rigorous"
HEURISTIC = "heuristic"

# Angle tags with exact closed-form Clausen values.
THETA_PI = "pi"
THETA_HALF_PI = "pi/2"

DEFAULT_GUARD_BITS = 32
_RADIUS_PREC = 30  # radii only need an upper bound, kept at low precision
_RN = round_nearest
_RU = round_ceiling  # radii are nonnegative, so ceiling == round away from zero


@dataclass(frozen=True)
class PrecisionConfig:
    """Working precision policy: bits used internally vs digits rendered."""

    working_bits: int
    target_digits: int
    series_truncation: int = 100_000

    def __post_init__(self) -> None:
        if self.target_digits < 1 or self.working_bits < 16:
            raise ValueError("positive digits and working_bits >= 16 required")
        needed = math.ceil(self.target_digits * math.log2(10)) + DEFAULT_GUARD_BITS
        if self.working_bits < needed:
            raise ValueError(
                f"working_bits={self.working_bits} below required {needed} "
                f"for {self.target_digits} digits"
            )

    @staticmethod
    def from_digits(digits: int, series_truncation: int = 100_000) -> "PrecisionConfig":
        return PrecisionConfig(
            working_bits=4 * digits + DEFAULT_GUARD_BITS,
            target_digits=digits,
            series_truncation=series_truncation,
        )


def _fraction_of(x) -> Fraction:
    """Exact rational value of a raw mpf tuple (finite values only)."""
    sign, man, exp, _ = x
    man = int(man)
    if man == 0:
        return Fraction(0)
    val = Fraction(man, 1) * (Fraction(2) ** exp)
    return -val if sign else val


def _ulp(x, prec: int):
    """One ulp of x at precision prec (zero for a zero midpoint)."""
    if x == fzero:
        return fzero
    return mpf_shift(mpf_abs(x), 1 - prec)


def _rad_add(*rads):
    acc = fzero
    for r in rads:
        if r != fzero:
            acc = mpf_add(acc, r, _RADIUS_PREC, _RU)
    return acc


@dataclass(frozen=True)
class RealBall:
    """midpoint +- radius at a stated bit precision, with a rigor flag.

    When rigor is RIGOROUS the represented real is guaranteed to lie inside
    [mid - rad, mid + rad]; HEURISTIC balls carry an error estimate instead
    of a bound.
    """

    mid: tuple
    rad: tuple
    prec: int
    rigor: str = RIGOROUS

    # -- constructors ------------------------------------------------------

    @staticmethod
    def exact_zero(prec: int) -> "RealBall":
        return RealBall(fzero, fzero, prec)

    @staticmethod
    def from_int(n: int, prec: int) -> "RealBall":
        mid = from_int(n, prec, _RN)
        rad = fzero if _fraction_of(mid) == n else _ulp(mid, prec)
        return RealBall(mid, rad, prec)

    @staticmethod
    def from_fraction(q: Fraction, prec: int) -> "RealBall":
        q = Fraction(q)
        mid = from_rational(q.numerator, q.denominator, prec, _RN)
        rad = fzero if _fraction_of(mid) == q else _ulp(mid, prec)
        return RealBall(mid, rad, prec)

    @staticmethod
    def from_mid_rad(mid, rad, prec: int, rigor: str = RIGOROUS) -> "RealBall":
        return RealBall(mid, rad, prec, rigor)

    # -- views -------------------------------------------------------------

    @property
    def midpoint_fraction(self) -> Fraction:
        return _fraction_of(self.mid)

    @property
    def radius_fraction(self) -> Fraction:
        return _fraction_of(self.rad)

    def midpoint_float(self) -> float:
        return libmp.to_float(self.mid)

    def radius_float(self) -> float:
        return libmp.to_float(self.rad)

    def mid_str(self, digits: int) -> str:
        return to_str(self.mid, digits)

    def rad_str(self, digits: int = 3) -> str:
        return to_str(self.rad, digits)

    def is_rigorous(self) -> bool:
        return self.rigor == RIGOROUS

    # -- arithmetic --------------------------------------------------------

    def _rigor_with(self, other: "RealBall") -> str:
        if self.rigor == RIGOROUS and other.rigor == RIGOROUS:
            return RIGOROUS
        return HEURISTIC

    def neg(self) -> "RealBall":
        return RealBall(mpf_neg(self.mid), self.rad, self.prec, self.rigor)

    def add(self, other: "RealBall") -> "RealBall":
        prec = max(self.prec, other.prec)
        mid = mpf_add(self.mid, other.mid, prec, _RN)
        rad = _rad_add(self.rad, other.rad, _ulp(mid, prec))
        return RealBall(mid, rad, prec, self._rigor_with(other))

    def sub(self, other: "RealBall") -> "RealBall":
        return self.add(other.neg())

    def mul(self, other: "RealBall") -> "RealBall":
        prec = max(self.prec, other.prec)
        mid = mpf_mul(self.mid, other.mid, prec, _RN)
        cross1 = mpf_mul(mpf_abs(self.mid), other.rad, _RADIUS_PREC, _RU)
        cross2 = mpf_mul(mpf_abs(other.mid), self.rad, _RADIUS_PREC, _RU)
        cross3 = mpf_mul(self.rad, other.rad, _RADIUS_PREC, _RU)
        rad = _rad_add(cross1, cross2, cross3, _ulp(mid, prec))
        return RealBall(mid, rad, prec, self._rigor_with(other))

    def mul_int(self, n: int) -> "RealBall":
        mid = mpf_mul_int(self.mid, n, self.prec, _RN)
        rad = _rad_add(
            mpf_mul_int(self.rad, abs(n), _RADIUS_PREC, _RU), _ulp(mid, self.prec)
        )
        return RealBall(mid, rad, self.prec, self.rigor)

    def mul_fraction(self, q: Fraction) -> "RealBall":
        q = Fraction(q)
        if q == 0:
            return RealBall(fzero, fzero, self.prec, self.rigor)
        return self.mul(RealBall.from_fraction(q, self.prec))

    def reciprocal(self) -> "RealBall":
        if not mpf_lt(self.rad, mpf_abs(self.mid)):
            raise ZeroDivisionError("ball contains zero; cannot invert")
        prec = self.prec
        mid = mpf_div(from_int(1), self.mid, prec, _RN)
        # |1/x - 1/m| <= r / (|m| (|m| - r)) over the ball
        absm = mpf_abs(self.mid)
        denom = mpf_mul(absm, mpf_sub(absm, self.rad, _RADIUS_PREC, libmp.round_floor), _RADIUS_PREC, libmp.round_floor)
        rad = _rad_add(mpf_div(self.rad, denom, _RADIUS_PREC, _RU), _ulp(mid, prec))
        return RealBall(mid, rad, prec, self.rigor)

    def div(self, other: "RealBall") -> "RealBall":
        return self.mul(other.reciprocal())

    def pow_int(self, e: int) -> "RealBall":
        if e == 0:
            return RealBall(from_int(1), fzero, self.prec, self.rigor)
        if e < 0:
            return self.pow_int(-e).reciprocal()
        result: RealBall | None = None
        base = self
        n = e
        while n:
            if n & 1:
                result = base if result is None else result.mul(base)
            n >>= 1
            if n:
                base = base.mul(base)
        assert result is not None
        return result

    def with_rigor(self, rigor: str) -> "RealBall":
        return RealBall(self.mid, self.rad, self.prec, rigor)

    def pad_radius(self, extra) -> "RealBall":
        return RealBall(self.mid, _rad_add(self.rad, extra), self.prec, self.rigor)

    # -- comparisons -------------------------------------------------------

    def overlaps(self, other: "RealBall") -> bool:
        gap = abs(self.midpoint_fraction - other.midpoint_fraction)
        return gap <= self.radius_fraction + other.radius_fraction

    def contains_fraction(self, q: Fraction) -> bool:
        return abs(self.midpoint_fraction - Fraction(q)) <= self.radius_fraction

    def __repr__(self) -> str:
        return (
            f"RealBall({to_str(self.mid, 17)} +- {to_str(self.rad, 3)}, "
            f"prec={self.prec}, {self.rigor})"
        )


def ball_sum(balls, prec: int) -> RealBall:
    acc = RealBall.exact_zero(prec)
    for b in balls:
        acc = acc.add(b)
    return acc


def ball_log(x: RealBall) -> RealBall:
    """Natural log of a strictly positive ball."""
    if not mpf_lt(x.rad, x.mid) or x.mid[0] == 1 or x.mid == fzero:
        raise ValueError("ball_log requires a ball strictly inside (0, inf)")
    prec = x.prec
    mid = mpf_log(x.mid, prec, _RN)
    lower = mpf_sub(x.mid, x.rad, _RADIUS_PREC, libmp.round_floor)
    rad = _rad_add(mpf_div(x.rad, lower, _RADIUS_PREC, _RU), _ulp(mid, prec))
    return RealBall(mid, rad, prec, x.rigor)


def ball_sin(x: RealBall) -> RealBall:
    mid = mpf_sin(x.mid, x.prec, _RN)
    return RealBall(mid, _rad_add(x.rad, _ulp(mid, x.prec)), x.prec, x.rigor)


def ball_cos(x: RealBall) -> RealBall:
    mid = mpf_cos(x.mid, x.prec, _RN)
    return RealBall(mid, _rad_add(x.rad, _ulp(mid, x.prec)), x.prec, x.rigor)


# ---------------------------------------------------------------------------
# constants, cached by (name, precision)
# ---------------------------------------------------------------------------

_CONST_CACHE: dict[tuple, RealBall] = {}
_CONST_LOCK = threading.Lock()


def _cached(key, builder) -> RealBall:
    hit = _CONST_CACHE.get(key)
    if hit is not None:
        return hit
    value = builder()
    with _CONST_LOCK:
        return _CONST_CACHE.setdefault(key, value)


def const_pi(prec: int) -> RealBall:
    """Rigorous ball for pi; radius at most one ulp (<= 2^(2-prec))."""
    if prec < 16:
        raise ValueError("precision must be at least 16 bits")

    def build() -> RealBall:
        mid = mpf_pi(prec, _RN)
        return RealBall(mid, _ulp(mid, prec), prec)

    return _cached(("pi", prec), build)


def const_log2(prec: int) -> RealBall:
    """Rigorous ball for log 2."""
    if prec < 16:
        raise ValueError("precision must be at least 16 bits")

    def build() -> RealBall:
        mid = mpf_ln2(prec, _RN)
        return RealBall(mid, _ulp(mid, prec), prec)

    return _cached(("log2", prec), build)


# ---------------------------------------------------------------------------
# Euler-Maclaurin zeta / Hurwitz zeta at integer s
# ---------------------------------------------------------------------------

def _em_tail_terms(s: int, shift: Fraction, N: int, threshold: Fraction):
    """Correction terms B_(2j)/(2j)! (s)_(2j-1) (N+shift)^(1-s-2j) plus a
    rigorous bound for the first omitted one.

    For f(x) = (x+shift)^(-s) every derivative has constant sign on
    [N, infinity), so the Euler-Maclaurin remainder is dominated by the first
    omitted correction term; we return 4x that for margin.
    """
    base = N + shift
    terms: list[Fraction] = []
    rising = Fraction(s)  # (s)_(2j-1) built incrementally
    power = base ** (-s - 1)
    j = 1
    while True:
        term = bernoulli_even(j) / factorial(2 * j) * rising * power
        if abs(term) <= threshold:
            return terms, 4 * abs(term)
        terms.append(term)
        rising *= (s + 2 * j - 1) * (s + 2 * j)
        power /= base * base
        j += 1
        if j > 4 * N:  # asymptotic series started diverging: caller must grow N
            return None


def _hurwitz_zeta_fraction(s: int, shift: Fraction, prec: int):
    """(value, remainder_bound) for sum_{n>=0} (n+shift)^(-s), both exact
    rationals, remainder rigorous."""
    if s < 2:
        raise ValueError("s must be at least 2")
    threshold = Fraction(1, 2 ** (prec + 8))
    N = max(8, prec // 4)
    while True:
        tail = _em_tail_terms(s, shift, N, threshold)
        if tail is not None:
            break
        N *= 2
    terms, bound = tail
    acc = sum((Fraction(1) / (n + shift) ** s for n in range(N)), Fraction(0))
    base = N + shift
    acc += base ** (1 - s) / (s - 1)
    acc += base ** (-s) / 2
    for t in terms:
        acc += t
    return acc, bound


def _ball_from_fraction_pair(value: Fraction, err: Fraction, prec: int) -> RealBall:
    ball = RealBall.from_fraction(value, prec)
    if err:
        e = err.numerator.bit_length() - err.denominator.bit_length() + 1
        return ball.pad_radius(from_man_exp(1, e))
    return ball


def zeta_int(s: int, prec: int) -> RealBall:
    """Rigorous ball for zeta(s), integer s >= 2, by Euler-Maclaurin."""
    if s < 2:
        raise ValueError("zeta_int requires s >= 2")

    def build() -> RealBall:
        value, bound = _hurwitz_zeta_fraction(s, Fraction(1), prec)
        return _ball_from_fraction_pair(value, bound, prec)

    return _cached(("zeta", s, prec), build)


def beta_even(m: int, prec: int) -> RealBall:
    """Rigorous ball for the Dirichlet beta function at even m >= 2.

    beta(m) = 4^(-m) (zeta(m, 1/4) - zeta(m, 3/4)); each Hurwitz value is an
    Euler-Maclaurin sum in exact rational arithmetic, so the direct
    alternating sum (which needs ~2^(prec/m) terms) is never formed.
    """
    if m < 2 or m % 2 == 1:
        raise ValueError("beta_even requires even m >= 2")

    def build() -> RealBall:
        a, ea = _hurwitz_zeta_fraction(m, Fraction(1, 4), prec)
        b, eb = _hurwitz_zeta_fraction(m, Fraction(3, 4), prec)
        value = (a - b) / 4**m
        return _ball_from_fraction_pair(value, (ea + eb) / 4**m, prec)

    return _cached(("beta", m, prec), build)


# ---------------------------------------------------------------------------
# Clausen functions
# ---------------------------------------------------------------------------

def _clausen_tag(order: int, theta: str, prec: int) -> RealBall:
    if order == 1:
        # Cl_1(theta) = -log(2 sin(theta/2))
        if theta == THETA_PI:
            return const_log2(prec).neg()
        return const_log2(prec).mul_fraction(Fraction(-1, 2))
    if order % 2 == 0:
        return RealBall.exact_zero(prec) if theta == THETA_PI else beta_even(order, prec)
    m = (order - 1) // 2
    z = zeta_int(order, prec)
    if theta == THETA_PI:
        return z.mul_fraction(Fraction(-(4**m - 1), 4**m))
    return z.mul_fraction(Fraction(-(4**m - 1), 2 ** (4 * m + 1)))


def _clausen_series(order: int, theta: RealBall, prec: int) -> RealBall:
    """Direct sin/cos series with an integral tail bound; order >= 3."""
    target = Fraction(1, 2 ** (prec + 6))
    K = 8
    while Fraction(K) ** (1 - order) / (order - 1) > target and K < 100_000:
        K *= 2
    trig = ball_sin if order % 2 == 0 else ball_cos
    acc = RealBall.exact_zero(prec)
    for k in range(1, K + 1):
        term = trig(theta.mul_int(k)).mul_fraction(Fraction(1, k**order))
        acc = acc.add(term)
    tail = Fraction(K) ** (1 - order) / (order - 1) + Fraction(K) ** (-order)
    e = tail.numerator.bit_length() - tail.denominator.bit_length() + 1
    return acc.pad_radius(from_man_exp(1, e))


def _clausen2_generic(theta: RealBall, prec: int) -> RealBall:
    """Cl_2 at a generic angle in (0, 2 pi) by the log-sine rearrangement

        Cl_2(t) = t (1 - log t) + t sum_{n>=1} q_n t^(2n),
        q_n = |B_(2n)| / (2 (2n)! n (2n+1)),

    which converges geometrically with ratio (t / 2 pi)^2 and has an exact
    rational coefficient stream, so the tail bound is rigorous.
    """
    t = theta
    tf = t.midpoint_fraction
    if not (0 < tf and t.radius_fraction < tf):
        raise ValueError("generic Clausen order 2 implemented for theta > 0")
    # 446/71 < 2 pi, so this overestimates theta/(2 pi): safe for the tail
    ratio = (tf + t.radius_fraction) / Fraction(446, 71)
    if ratio >= 1:
        raise ValueError("theta must lie strictly below 2*pi")
    one = RealBall.from_int(1, prec)
    acc = t.mul(one.sub(ball_log(t)))
    t2 = t.mul(t)
    power = t  # t^(2n+1) built incrementally
    n = 1
    bound = Fraction(1)
    target = Fraction(1, 2 ** (prec + 6))
    while True:
        power = power.mul(t2)
        q = abs(bernoulli_even(n)) / (2 * factorial(2 * n) * n * (2 * n + 1))
        acc = acc.add(power.mul_fraction(q))
        # remaining tail: sum_{m>n} q_m t^(2m+1) <= 4 t (t/2pi)^(2n+2) / (1-r^2)
        bound = 4 * tf * ratio ** (2 * n + 2) / (1 - ratio * ratio)
        if bound <= target or n > 4 * prec:
            break
        n += 1
    e = bound.numerator.bit_length() - bound.denominator.bit_length() + 1
    return acc.pad_radius(from_man_exp(1, e))


def clausen(order: int, theta, prec: int) -> RealBall:
    """Clausen function Cl_order(theta).

    theta is either one of the exact tags THETA_PI / THETA_HALF_PI (closed
    forms: 0, beta(2m), or rational multiples of zeta(2m+1)) or a RealBall.
    Standard convention: denominator exponent equals the order, sine series
    for even order, cosine series for odd order, and Cl_1 = -log(2 sin(t/2)).
    """
    if order < 1:
        raise ValueError("Clausen order must be at least 1")
    if isinstance(theta, str):
        if theta not in (THETA_PI, THETA_HALF_PI):
            raise ValueError(f"unknown angle tag {theta!r}")
        return _clausen_tag(order, theta, prec)
    if not isinstance(theta, RealBall):
        raise TypeError("theta must be a RealBall or an exact tag")
    if order == 1:
        half = theta.mul_fraction(Fraction(1, 2))
        return ball_log(ball_sin(half).mul_int(2)).neg()
    if order == 2:
        return _clausen2_generic(theta, prec)
    return _clausen_series(order, theta, prec)


# ---------------------------------------------------------------------------
# combination evaluation and rendering
# ---------------------------------------------------------------------------

def eval_combination(comb: ZetaCombination, prec: int, guard: int = DEFAULT_GUARD_BITS) -> RealBall:
    """Numeric ball for an exact combination; rigorous because every
    constituent constant is."""
    wp = prec + guard
    for _ in range(4):
        pi = const_pi(wp)
        acc = RealBall.exact_zero(wp)
        for mono, coeff in comb.items():
            term = pi.pow_int(mono.pi_exponent) if mono.pi_exponent else RealBall.from_int(1, wp)
            if mono.kind == KIND_ZETA:
                term = term.mul(zeta_int(mono.zeta_arg, wp))
            elif mono.kind == KIND_LOG2:
                term = term.mul(const_log2(wp))
            acc = acc.add(term.mul_fraction(coeff))
        if acc.radius_fraction <= Fraction(1, 2 ** (prec + 4)) * max(
            1, 1 + abs(acc.midpoint_fraction)
        ):
            return acc
        wp *= 2  # radius budget missed: double the guard and retry
    return acc


@dataclass(frozen=True)
class Rendered:
    """Decimal rendering of a ball: the printed digits are stable iff every
    point of the ball rounds to the same string."""

    text: str
    digits: int
    stable: bool


def render_ball(ball: RealBall, digits: int) -> Rendered:
    if digits < 1:
        raise ValueError("digits must be positive")
    if ball.mid == fzero and ball.rad == fzero:
        return Rendered("0.0", digits, True)
    lo = mpf_sub(ball.mid, ball.rad, ball.prec + 8, _RN)
    hi = mpf_add(ball.mid, ball.rad, ball.prec + 8, _RN)
    for d in range(digits, 0, -1):
        if to_str(lo, d) == to_str(hi, d):
            return Rendered(to_str(ball.mid, d), d, d == digits)
    return Rendered(to_str(ball.mid, 1), 1, False)
