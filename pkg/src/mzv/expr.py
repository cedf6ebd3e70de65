"""Evaluation-request parsing and automatic route selection.

The grammar is deliberately tiny: one call form `name(int, ...)` with names
zeta, t, H, T, hatH, hatT.  Compositions use the increasing-index convention
(the series runs over n_1 < ... < n_r), so admissibility means the *last*
exponent exceeds 1 (note that much of the literature writes indices the
other way around).

Route choice: exact closed form when one exists (hat values and all-twos
compositions), the cotangent-moment quadrature for Hoffman-shaped
compositions 2^a 3 2^b, and the accelerated series otherwise.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .exact_core import ZetaCombination, factorial, hat_H, hat_T, hoffman_closed
from .numerics import RealBall, const_pi, eval_combination
from .quadrature import cot_moment_integral
from .series_mzv import Composition, SERIES_T, SERIES_ZETA, TruncationPlan, mzv_extrapolated

ROUTE_CLOSED = "closed_form"
ROUTE_QUAD = "quadrature"
ROUTE_SERIES = "series"

_CALL_RE = re.compile(r"^\s*([A-Za-z][A-Za-z0-9]*)\s*\(\s*(-?\d+(?:\s*,\s*-?\d+)*)\s*\)\s*$")


class ExpressionError(ValueError):
    """Malformed or inadmissible evaluation request."""


@dataclass(frozen=True)
class EvalOutcome:
    expr: str
    label: str
    route: str
    ball: RealBall
    exact: ZetaCombination | None = None


def parse_expression(expr: str) -> tuple[str, tuple[int, ...]]:
    m = _CALL_RE.match(expr)
    if not m:
        raise ExpressionError(
            f"cannot parse {expr!r}: expected name(k1,...,kr) with integer arguments"
        )
    name = m.group(1)
    args = tuple(int(x) for x in m.group(2).split(","))
    if name not in ("zeta", "t", "H", "T", "hatH", "hatT"):
        raise ExpressionError(f"unknown function {name!r}")
    return name, args


def _hoffman_shape(parts: tuple[int, ...]) -> tuple[int, int] | None:
    """(a, b) when parts == (2,)*a + (3,) + (2,)*b, else None."""
    threes = [i for i, p in enumerate(parts) if p == 3]
    if len(threes) != 1 or any(p not in (2, 3) for p in parts):
        return None
    i = threes[0]
    return i, len(parts) - i - 1


def _require_pair(name: str, args: tuple[int, ...]) -> tuple[int, int]:
    if len(args) != 2 or args[0] < 0 or args[1] < 0:
        raise ExpressionError(f"{name}(a,b) needs two nonnegative integers")
    return args


def _hoffman_quadrature(kind: str, a: int, b: int, prec: int, tol: float) -> RealBall:
    if kind == "H":
        prefactor = const_pi(prec).pow_int(2 * b).mul_fraction(
            Fraction(2 ** (2 * a + 3), factorial(2 * a + 2) * factorial(2 * b + 1))
        )
        integral = cot_moment_integral(2 * a + 2, 2 * b + 1, prec, tol)
    else:
        prefactor = const_pi(prec).pow_int(2 * b + 1).mul_fraction(
            Fraction(1, 2 ** (2 * b + 1) * factorial(2 * a + 1) * factorial(2 * b + 1))
        )
        integral = cot_moment_integral(2 * a + 1, 2 * b + 1, prec, tol)
    return prefactor.mul(integral)


def evaluate_expression(
    expr: str,
    digits: int = 30,
    bits: int | None = None,
    plan: TruncationPlan | None = None,
) -> EvalOutcome:
    name, args = parse_expression(expr)
    prec = bits or (4 * digits + 32)
    tol = 10.0 ** (-(digits + 2))
    plan = plan or TruncationPlan(50_000, 4)
    label = f"{name}({','.join(map(str, args))})"

    if name in ("hatH", "hatT"):
        a, b = _require_pair(name, args)
        comb = hat_H(a, b) if name == "hatH" else hat_T(a, b)
        return EvalOutcome(expr, label, ROUTE_CLOSED, eval_combination(comb, prec), comb)

    if name in ("H", "T"):
        a, b = _require_pair(name, args)
        ball = _hoffman_quadrature(name, a, b, prec, tol)
        return EvalOutcome(expr, label, ROUTE_QUAD, ball)

    # zeta(...) / t(...)
    try:
        comp = Composition(args)
    except ValueError as exc:
        raise ExpressionError(str(exc)) from exc
    kind = "H" if name == "zeta" else "T"
    if all(p == 2 for p in comp.parts):
        comb = hoffman_closed(kind, comp.depth)
        return EvalOutcome(expr, label, ROUTE_CLOSED, eval_combination(comb, prec), comb)
    shape = _hoffman_shape(comp.parts)
    if shape is not None:
        ball = _hoffman_quadrature(kind, shape[0], shape[1], prec, tol)
        return EvalOutcome(expr, label, ROUTE_QUAD, ball)
    series_kind = SERIES_ZETA if name == "zeta" else SERIES_T
    ball = mzv_extrapolated(comp, plan, prec, series_kind)
    return EvalOutcome(expr, label, ROUTE_SERIES, ball)
