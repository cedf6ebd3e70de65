"""Exact rational layer: coefficient formulas and zeta-monomial algebra.

Everything in this module is computed with arbitrary-size integers and
exact rationals; no floating arithmetic occurs anywhere here.  Closed-form
values live on the canonical monomial basis

    pi^e,   pi^e * zeta(m)  (m odd, m >= 3),   pi^e * log2,

with the Hoffman factors H(n) = pi^(2n)/(2n+1)! and T(n) = pi^(2n)/(4^n (2n)!)
already expanded into pi powers.  That expanded presentation makes equality
of two combinations a plain map comparison (the factored presentation is the
obvious alternative; we document and use the expanded one throughout).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterator

# Exact rationals are stdlib fractions: always reduced, positive denominator.
BigRational = Fraction

KIND_ONE = "one"
KIND_ZETA = "zeta"
KIND_LOG2 = "log2"

_KIND_RANK = {KIND_ONE: 0, KIND_ZETA: 1, KIND_LOG2: 2}


@lru_cache(maxsize=None)
def factorial(n: int) -> int:
    """n! with memoization (idempotent fill, safe under the GIL)."""
    return math.factorial(n)


def binomial(n: int, k: int) -> int:
    """C(n, k); zero outside 0 <= k <= n (the vanishing convention the
    coefficient sums rely on)."""
    if n < 0:
        raise ValueError("binomial: n must be nonnegative")
    if k < 0 or k > n:
        return 0
    return math.comb(n, k)


def bernoulli_numbers(count: int) -> list[Fraction]:
    """B_0 .. B_(count-1) as exact rationals, B_1 = -1/2 convention.

    Uses the binomial-sum recurrence sum_{r<=m} C(m+1, r) B_r = 0.
    """
    out = [Fraction(1)]
    for m in range(1, count):
        acc = Fraction(0)
        for r in range(m):
            acc += binomial(m + 1, r) * out[r]
        out.append(-acc / (m + 1))
    return out


@lru_cache(maxsize=None)
def bernoulli_even(k: int) -> Fraction:
    """B_(2k) exactly."""
    if k < 0:
        raise ValueError("bernoulli_even: k must be nonnegative")
    return _even_bernoulli_through(k)[k]


@lru_cache(maxsize=None)
def _even_bernoulli_through(k: int) -> tuple[Fraction, ...]:
    full = bernoulli_numbers(2 * k + 1)
    return tuple(full[2 * j] for j in range(k + 1))


@dataclass(frozen=True)
class ZetaMonomial:
    """One basis monomial pi^e * (1 | zeta(m) | log2).

    The pair (pi_exponent, kind/zeta_arg) is the unique map key of a
    combination; a monomial never carries both a zeta argument and log2.
    """

    pi_exponent: int
    kind: str = KIND_ONE
    zeta_arg: int | None = None

    def __post_init__(self) -> None:
        if self.kind not in _KIND_RANK:
            raise ValueError(f"unknown monomial kind {self.kind!r}")
        if self.kind == KIND_ZETA:
            if self.zeta_arg is None or self.zeta_arg < 3 or self.zeta_arg % 2 == 0:
                raise ValueError("zeta monomial needs one odd argument >= 3")
        elif self.zeta_arg is not None:
            raise ValueError(f"{self.kind} monomial must not carry a zeta argument")

    @property
    def weight(self) -> int:
        return self.pi_exponent + (self.zeta_arg or 0)

    def sort_key(self) -> tuple[int, int, int]:
        return (self.weight, self.zeta_arg or 0, _KIND_RANK[self.kind])

    def shifted(self, pi_delta: int) -> "ZetaMonomial":
        return ZetaMonomial(self.pi_exponent + pi_delta, self.kind, self.zeta_arg)

    def label(self) -> str:
        parts = []
        if self.pi_exponent != 0:
            parts.append("pi" if self.pi_exponent == 1 else f"pi^{self.pi_exponent}")
        if self.kind == KIND_ZETA:
            parts.append(f"zeta({self.zeta_arg})")
        elif self.kind == KIND_LOG2:
            parts.append("log2")
        return "*".join(parts) if parts else "1"

    @staticmethod
    def one(pi_exponent: int = 0) -> "ZetaMonomial":
        return ZetaMonomial(pi_exponent)

    @staticmethod
    def zeta(arg: int, pi_exponent: int = 0) -> "ZetaMonomial":
        return ZetaMonomial(pi_exponent, KIND_ZETA, arg)

    @staticmethod
    def log2(pi_exponent: int = 0) -> "ZetaMonomial":
        return ZetaMonomial(pi_exponent, KIND_LOG2)


class ZetaCombination:
    """Finite Q-linear combination of ZetaMonomials, canonically stored.

    Zero coefficients are never kept, so equality is dict equality and the
    zero combination is the empty map.  Instances are immutable; arithmetic
    returns new objects.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: dict[ZetaMonomial, Fraction] | None = None) -> None:
        clean: dict[ZetaMonomial, Fraction] = {}
        for mono, coeff in (terms or {}).items():
            coeff = Fraction(coeff)
            if coeff != 0:
                clean[mono] = coeff
        object.__setattr__(self, "_terms", clean)

    @staticmethod
    def zero() -> "ZetaCombination":
        return ZetaCombination()

    @staticmethod
    def single(mono: ZetaMonomial, coeff: Fraction | int = 1) -> "ZetaCombination":
        return ZetaCombination({mono: Fraction(coeff)})

    def coefficient(self, mono: ZetaMonomial) -> Fraction:
        return self._terms.get(mono, Fraction(0))

    def items(self) -> Iterator[tuple[ZetaMonomial, Fraction]]:
        """Terms in the canonical (weight, zeta argument, kind) order."""
        for mono in sorted(self._terms, key=ZetaMonomial.sort_key):
            yield mono, self._terms[mono]

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ZetaCombination):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    def __add__(self, other: "ZetaCombination") -> "ZetaCombination":
        merged = dict(self._terms)
        for mono, coeff in other._terms.items():
            merged[mono] = merged.get(mono, Fraction(0)) + coeff
        return ZetaCombination(merged)

    def __neg__(self) -> "ZetaCombination":
        return ZetaCombination({m: -c for m, c in self._terms.items()})

    def __sub__(self, other: "ZetaCombination") -> "ZetaCombination":
        return self + (-other)

    def scale(self, factor: Fraction | int) -> "ZetaCombination":
        factor = Fraction(factor)
        if factor == 0:
            return ZetaCombination()
        return ZetaCombination({m: c * factor for m, c in self._terms.items()})

    def shift_pi(self, pi_delta: int) -> "ZetaCombination":
        """Multiply the whole combination by pi^pi_delta."""
        return ZetaCombination({m.shifted(pi_delta): c for m, c in self._terms.items()})

    def weights(self) -> set[int]:
        return {m.weight for m in self._terms}

    def is_homogeneous(self, weight: int) -> bool:
        return all(m.weight == weight for m in self._terms)

    def to_json_terms(self) -> list[dict]:
        out = []
        for mono, coeff in self.items():
            out.append(
                {
                    "pi_exp": mono.pi_exponent,
                    "kind": mono.kind,
                    "zeta_arg": mono.zeta_arg,
                    "num": str(coeff.numerator),
                    "den": str(coeff.denominator),
                }
            )
        return out

    @staticmethod
    def from_json_terms(terms: list[dict]) -> "ZetaCombination":
        acc: dict[ZetaMonomial, Fraction] = {}
        for t in terms:
            mono = ZetaMonomial(int(t["pi_exp"]), t["kind"], t.get("zeta_arg"))
            acc[mono] = Fraction(int(t["num"]), int(t["den"]))
        return ZetaCombination(acc)

    def __repr__(self) -> str:
        if not self._terms:
            return "ZetaCombination(0)"
        body = " + ".join(f"({c})*{m.label()}" for m, c in self.items())
        return f"ZetaCombination({body})"


def zagier_coefficient(a: int, b: int, k: int) -> Fraction:
    """c_(a,b)^k = C(2k, 2a+2) - (1 - 2^(-2k)) C(2k, 2b+1), exactly."""
    _check_ab(a, b)
    if not 1 <= k <= a + b + 1:
        raise ValueError(f"k={k} outside [1, {a + b + 1}]")
    return binomial(2 * k, 2 * a + 2) - (1 - Fraction(1, 4**k)) * binomial(2 * k, 2 * b + 1)


def t_coefficient(a: int, b: int, k: int) -> Fraction:
    """Signed rational multiplying T(a+b+1-k) * zeta(2k+1) in the odd variant."""
    _check_ab(a, b)
    if not 1 <= k <= a + b + 1:
        raise ValueError(f"k={k} outside [1, {a + b + 1}]")
    sign = 1 if k % 2 == 1 else -1
    inner = binomial(2 * k, 2 * a + 1) + binomial(2 * k, 2 * b + 1) * (1 - Fraction(1, 4**k))
    return sign * inner * Fraction(1, 4**k)


def hoffman_closed(kind: str, n: int) -> ZetaCombination:
    """Closed form of the all-twos values: H(n) = pi^(2n)/(2n+1)! and
    T(n) = pi^(2n)/(4^n (2n)!)."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if kind == "H":
        coeff = Fraction(1, factorial(2 * n + 1))
    elif kind == "T":
        coeff = Fraction(1, 4**n * factorial(2 * n))
    else:
        raise ValueError("kind must be 'H' or 'T'")
    return ZetaCombination.single(ZetaMonomial.one(2 * n), coeff)


def hat_H(a: int, b: int) -> ZetaCombination:
    """Exact closed form of H(a,b) = zeta(2,..,2,3,2,..,2):
    2 sum_k (-1)^k c_(a,b)^k zeta(2k+1) H(a+b+1-k), H expanded into pi powers.

    Every term has weight 2a+2b+3.
    """
    _check_ab(a, b)
    w = a + b + 1
    acc: dict[ZetaMonomial, Fraction] = {}
    for k in range(1, w + 1):
        n = w - k
        coeff = 2 * (-1) ** k * zagier_coefficient(a, b, k) / factorial(2 * n + 1)
        if coeff != 0:
            mono = ZetaMonomial.zeta(2 * k + 1, 2 * n)
            acc[mono] = acc.get(mono, Fraction(0)) + coeff
    return ZetaCombination(acc)


def hat_T(a: int, b: int) -> ZetaCombination:
    """Exact closed form of T(a,b) = t(2,..,2,3,2,..,2), the odd variant."""
    _check_ab(a, b)
    w = a + b + 1
    acc: dict[ZetaMonomial, Fraction] = {}
    for k in range(1, w + 1):
        n = w - k
        coeff = t_coefficient(a, b, k) / (4**n * factorial(2 * n))
        if coeff != 0:
            mono = ZetaMonomial.zeta(2 * k + 1, 2 * n)
            acc[mono] = acc.get(mono, Fraction(0)) + coeff
    return ZetaCombination(acc)


def hat_K(a: int, b: int) -> ZetaCombination:
    """Closed form of the rescaled odd variant K(a,b), from its own sum

        2 sum_k (-1)^(k-1) [C(2k,2a+1) + (1-2^(-2k)) C(2k,2b+1)] K(a+b+1-k) zeta(2k+1)

    with K(n) = pi^(2n)/(2n)!.  Computed independently of hat_T so that the
    scaling identity hat_K = 2^(2a+2b+3) hat_T stays a meaningful check.
    """
    _check_ab(a, b)
    w = a + b + 1
    acc: dict[ZetaMonomial, Fraction] = {}
    for k in range(1, w + 1):
        n = w - k
        sign = 1 if (k - 1) % 2 == 0 else -1
        bracket = binomial(2 * k, 2 * a + 1) + (1 - Fraction(1, 4**k)) * binomial(2 * k, 2 * b + 1)
        coeff = 2 * sign * bracket / factorial(2 * n)
        if coeff != 0:
            mono = ZetaMonomial.zeta(2 * k + 1, 2 * n)
            acc[mono] = acc.get(mono, Fraction(0)) + coeff
    return ZetaCombination(acc)


class RationalPolynomial:
    """Dense polynomial over Q with exact calculus.

    Degree of the zero polynomial is -1.  Derivatives are exact coefficient
    shifts; evaluation at rational points is exact Horner.
    """

    __slots__ = ("_coeffs",)

    def __init__(self, coefficients) -> None:
        coeffs = [Fraction(c) for c in coefficients]
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        self._coeffs = tuple(coeffs)

    @property
    def coefficients(self) -> tuple[Fraction, ...]:
        return self._coeffs

    @property
    def degree(self) -> int:
        return len(self._coeffs) - 1

    def __call__(self, x: Fraction | int) -> Fraction:
        x = Fraction(x)
        acc = Fraction(0)
        for c in reversed(self._coeffs):
            acc = acc * x + c
        return acc

    def derivative(self, order: int = 1) -> "RationalPolynomial":
        if order < 0:
            raise ValueError("derivative order must be nonnegative")
        coeffs = list(self._coeffs)
        for _ in range(order):
            coeffs = [i * c for i, c in enumerate(coeffs)][1:]
        return RationalPolynomial(coeffs)

    def __add__(self, other: "RationalPolynomial") -> "RationalPolynomial":
        n = max(len(self._coeffs), len(other._coeffs))
        a = list(self._coeffs) + [Fraction(0)] * (n - len(self._coeffs))
        b = list(other._coeffs) + [Fraction(0)] * (n - len(other._coeffs))
        return RationalPolynomial([x + y for x, y in zip(a, b)])

    def __neg__(self) -> "RationalPolynomial":
        return RationalPolynomial([-c for c in self._coeffs])

    def __sub__(self, other: "RationalPolynomial") -> "RationalPolynomial":
        return self + (-other)

    def __mul__(self, other) -> "RationalPolynomial":
        if isinstance(other, (int, Fraction)):
            return RationalPolynomial([c * other for c in self._coeffs])
        out = [Fraction(0)] * (len(self._coeffs) + len(other._coeffs) - 1 or 1)
        for i, ci in enumerate(self._coeffs):
            for j, cj in enumerate(other._coeffs):
                out[i + j] += ci * cj
        return RationalPolynomial(out)

    __rmul__ = __mul__

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RationalPolynomial):
            return NotImplemented
        return self._coeffs == other._coeffs

    def __hash__(self) -> int:
        return hash(self._coeffs)

    def __repr__(self) -> str:
        return f"RationalPolynomial({list(self._coeffs)})"

    @staticmethod
    def x_power(k: int) -> "RationalPolynomial":
        return RationalPolynomial([0] * k + [1])


def beta_kernel(p_exp: int, q_exp: int) -> RationalPolynomial:
    """x^p_exp (1-x)^q_exp expanded."""
    coeffs = [Fraction(0)] * (p_exp + q_exp + 1)
    for j in range(q_exp + 1):
        coeffs[p_exp + j] = Fraction((-1) ** j * binomial(q_exp, j))
    return RationalPolynomial(coeffs)


def poly_cot_closed_form(P: RationalPolynomial) -> ZetaCombination:
    """Exact value of the half-angle cotangent integral of a polynomial,

        integral_0^1 P(x) cot(pi x / 2) dx
          = 2 P(1) log2/pi
            + 2 sum_k (-1)^k [P^(2k)(1) (1 - 2^(-2k)) + P^(2k)(0)] zeta(2k+1)/pi^(2k+1),

    k running from 1 to floor(deg P / 2).  Requires P(0) = 0 (otherwise the
    integrand has a non-integrable singularity at 0).
    """
    if P(0) != 0:
        raise ValueError("polynomial must vanish at 0")
    acc: dict[ZetaMonomial, Fraction] = {}
    p1 = P(1)
    if p1 != 0:
        acc[ZetaMonomial.log2(-1)] = 2 * p1
    deriv = P
    for k in range(1, P.degree // 2 + 1):
        deriv = deriv.derivative(2)
        val = deriv(1) * (1 - Fraction(1, 4**k)) + deriv(0)
        coeff = 2 * (-1) ** k * val
        if coeff != 0:
            acc[ZetaMonomial.zeta(2 * k + 1, -(2 * k + 1))] = coeff
    return ZetaCombination(acc)


@dataclass(frozen=True)
class DivisibilityReport:
    """Outcome of the scaled-coefficient divisibility experiment at one a."""

    a: int
    coefficients: dict[int, Fraction]
    scaled_integers: dict[int, int]
    all_divisible: bool
    factorial_divisor: int


def divisibility_experiment(a: int) -> DivisibilityReport:
    """Divisibility structure of the linear form attached to x^(2a+2)(1-x)^(2a+1).

    Extracts the zeta(2k+1)/pi^(2k+1) coefficients r_k of the exact integral
    value, scales them by 2^(4a+2), and reports whether every scaled value is
    an integer multiple of (2a+2)!.  The log2 coefficient vanishes because the
    kernel vanishes at 1.
    """
    if a < 0:
        raise ValueError("a must be nonnegative")
    P = beta_kernel(2 * a + 2, 2 * a + 1)
    value = poly_cot_closed_form(P)
    if value.coefficient(ZetaMonomial.log2(-1)) != 0:
        raise AssertionError("log2 coefficient must vanish for this kernel")

    divisor = factorial(2 * a + 2)
    scale = 2 ** (4 * a + 2)
    coefficients: dict[int, Fraction] = {}
    scaled_integers: dict[int, int] = {}
    all_divisible = True
    for mono, coeff in value.items():
        if mono.kind != KIND_ZETA:
            raise AssertionError(f"unexpected monomial {mono.label()}")
        k = (mono.zeta_arg - 1) // 2
        coefficients[k] = coeff
        scaled = coeff * scale
        if scaled.denominator != 1:
            all_divisible = False
            continue
        scaled_integers[k] = scaled.numerator
        if scaled.numerator % divisor != 0:
            all_divisible = False
    return DivisibilityReport(
        a=a,
        coefficients=coefficients,
        scaled_integers=scaled_integers,
        all_divisible=all_divisible,
        factorial_divisor=divisor,
    )


def _check_ab(a: int, b: int) -> None:
    if a < 0 or b < 0:
        raise ValueError("a and b must be nonnegative")
