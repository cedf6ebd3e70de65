"""HTTP service wrapping the library: evaluation, verification, tables, and
the divisibility experiment.

A long-running process amortizes the expensive shared state (constant and
quadrature-rule caches keyed by precision), so repeated requests at the same
working precision are much cheaper than cold calls.  The CLI talks to this
app over HTTP, either against a real server or an in-process transport.
"""

from __future__ import annotations

from fractions import Fraction

from fastapi import FastAPI, HTTPException

from . import __version__
from .exact_core import beta_kernel, divisibility_experiment, factorial, hat_H, hat_T, zagier_coefficient
from .expr import ExpressionError, evaluate_expression
from .harness import SuiteConfig, run_suite
from .numerics import const_pi, render_ball
from .quadrature import QuadratureError, poly_cot_quadrature
from .schemas import (
    CheckResultModel,
    CoefficientRow,
    CombinationRow,
    CombinationTerm,
    EvalRequest,
    EvalResponse,
    ExperimentRequest,
    ExperimentResponse,
    ExperimentRow,
    HealthResponse,
    ScaledCoefficient,
    TableRequest,
    TableResponse,
    VerifyRequest,
    VerifyResponse,
    VerifySummary,
)

app = FastAPI(
    title="mzv service",
    description="Multiple zeta / t-value evaluation and identity verification",
    version=__version__,
)


@app.get("/healthz", response_model=HealthResponse)
def healthz() -> HealthResponse:
    return HealthResponse(status="ok", version=__version__)


@app.post("/eval", response_model=EvalResponse)
def eval_endpoint(req: EvalRequest) -> EvalResponse:
    try:
        outcome = evaluate_expression(req.expr, digits=req.digits, bits=req.bits)
    except ExpressionError as exc:
        raise HTTPException(status_code=400, detail={"code": "parse_error", "message": str(exc)})
    except QuadratureError as exc:
        raise HTTPException(status_code=422, detail={"code": "non_convergence", "message": str(exc)})
    rendered = render_ball(outcome.ball, req.digits)
    terms = None
    if outcome.exact is not None:
        terms = [CombinationTerm(**t) for t in outcome.exact.to_json_terms()]
    return EvalResponse(
        expr=req.expr,
        label=outcome.label,
        route=outcome.route,
        value=rendered.text,
        radius=outcome.ball.rad_str(),
        rigor=outcome.ball.rigor,
        digits=rendered.digits,
        stable=rendered.stable,
        terms=terms,
    )


def _config_from_request(req: VerifyRequest) -> SuiteConfig:
    kwargs: dict = {
        "digits": req.digits,
        "working_bits": req.bits,
        "workers": req.workers,
    }
    if req.tol is not None:
        kwargs["tol"] = req.tol
    if req.series_tol is not None:
        kwargs["series_tol"] = req.series_tol
    if req.seed is not None:
        kwargs["seed"] = req.seed
    if req.amax is not None:
        kwargs["theorem_a_max"] = req.amax
        kwargs["experiment_a_max"] = req.amax
    if req.bmax is not None:
        kwargs["theorem_b_max"] = req.bmax
        kwargs["moments_b_max"] = req.bmax
    if req.pmax is not None:
        kwargs["halfpi_p_max"] = req.pmax
        kwargs["clausen_p_max"] = min(req.pmax, 8)
    if req.nmax is not None:
        kwargs["moments_n_max"] = req.nmax
    return SuiteConfig(**kwargs)


@app.post("/verify", response_model=VerifyResponse)
def verify_endpoint(req: VerifyRequest) -> VerifyResponse:
    try:
        cfg = _config_from_request(req)
        report = run_suite(req.suite, cfg)
    except ValueError as exc:
        raise HTTPException(status_code=400, detail={"code": "bad_request", "message": str(exc)})
    return VerifyResponse(
        results=[CheckResultModel(**r.to_json_obj()) for r in report.results],
        summary=VerifySummary(**report.summary_obj()),
        config=report.config,
    )


@app.post("/table", response_model=TableResponse)
def table_endpoint(req: TableRequest) -> TableResponse:
    if req.kind == "coeffs":
        rows = []
        for a in range(req.amax + 1):
            for b in range(req.bmax + 1):
                for k in range(1, a + b + 2):
                    c = zagier_coefficient(a, b, k)
                    rows.append(
                        CoefficientRow(
                            a=a, b=b, k=k, numerator=str(c.numerator), denominator=str(c.denominator)
                        )
                    )
        return TableResponse(kind=req.kind, coefficient_rows=rows)
    if req.kind in ("hatH", "hatT"):
        make = hat_H if req.kind == "hatH" else hat_T
        rows = []
        for a in range(req.amax + 1):
            for b in range(req.bmax + 1):
                for mono, coeff in make(a, b).items():
                    rows.append(
                        CombinationRow(
                            a=a,
                            b=b,
                            monomial=mono.label(),
                            numerator=str(coeff.numerator),
                            denominator=str(coeff.denominator),
                        )
                    )
        return TableResponse(kind=req.kind, combination_rows=rows)
    raise HTTPException(
        status_code=400,
        detail={"code": "bad_request", "message": f"unknown table kind {req.kind!r}"},
    )


@app.post("/experiment", response_model=ExperimentResponse)
def experiment_endpoint(req: ExperimentRequest) -> ExperimentResponse:
    prec = 4 * req.digits + 32
    rows = []
    overall = True
    for a in range(req.amax + 1):
        report = divisibility_experiment(a)
        overall = overall and report.all_divisible
        try:
            integral = poly_cot_quadrature(
                beta_kernel(2 * a + 2, 2 * a + 1), prec, 10.0 ** (-(req.digits + 2))
            )
        except QuadratureError as exc:
            raise HTTPException(
                status_code=422, detail={"code": "non_convergence", "message": str(exc)}
            )
        beta_exact = Fraction(factorial(2 * a + 1) ** 2, factorial(4 * a + 3))
        upper = const_pi(prec).reciprocal().mul_int(2).mul_fraction(beta_exact)
        coeffs = []
        for k in sorted(report.coefficients):
            c = report.coefficients[k]
            scaled = c * 2 ** (4 * a + 2)
            divisible = (
                scaled.denominator == 1 and scaled.numerator % report.factorial_divisor == 0
            )
            coeffs.append(
                ScaledCoefficient(
                    k=k,
                    coefficient_num=str(c.numerator),
                    coefficient_den=str(c.denominator),
                    scaled=str(scaled) if scaled.denominator != 1 else str(scaled.numerator),
                    divisible=divisible,
                )
            )
        positive = integral.midpoint_fraction - integral.radius_fraction > 0
        below = (
            integral.midpoint_fraction + integral.radius_fraction
            < upper.midpoint_fraction - upper.radius_fraction
        )
        rows.append(
            ExperimentRow(
                a=a,
                factorial_divisor=str(report.factorial_divisor),
                coefficients=coeffs,
                all_divisible=report.all_divisible,
                integral=render_ball(integral, req.digits).text,
                integral_radius=integral.rad_str(),
                upper_bound=render_ball(upper, req.digits).text,
                positive=positive,
                below_bound=below,
            )
        )
    return ExperimentResponse(rows=rows, all_divisible=overall)
