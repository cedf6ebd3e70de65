"""Request/response models of the evaluation service."""

from __future__ import annotations

from typing import Any, Optional

from pydantic import BaseModel, Field


class HealthResponse(BaseModel):
    status: str
    version: str


class CombinationTerm(BaseModel):
    pi_exp: int
    kind: str
    zeta_arg: Optional[int] = None
    num: str
    den: str


class EvalRequest(BaseModel):
    expr: str
    digits: int = Field(default=30, ge=1, le=10_000)
    bits: Optional[int] = Field(default=None, ge=16)


class EvalResponse(BaseModel):
    expr: str
    label: str
    route: str
    value: str
    radius: str
    rigor: str
    digits: int
    stable: bool
    terms: Optional[list[CombinationTerm]] = None


class VerifyRequest(BaseModel):
    suite: str = "all"
    digits: int = Field(default=30, ge=1, le=10_000)
    bits: Optional[int] = Field(default=None, ge=16)
    tol: Optional[float] = None
    series_tol: Optional[float] = None
    amax: Optional[int] = Field(default=None, ge=0)
    bmax: Optional[int] = Field(default=None, ge=0)
    pmax: Optional[int] = Field(default=None, ge=1)
    nmax: Optional[int] = Field(default=None, ge=0)
    workers: int = Field(default=1, ge=1, le=64)
    seed: Optional[int] = None


class RouteValueModel(BaseModel):
    label: str
    value: str
    radius: str
    rigor: str


class CheckResultModel(BaseModel):
    identity_id: str
    parameters: dict[str, Any]
    route_values: list[RouteValueModel]
    max_discrepancy: Optional[float]
    tolerance: float
    passed: bool
    elapsed_ms: int
    failure_reason: Optional[str] = None


class VerifySummary(BaseModel):
    suite: str
    passed: int
    failed: int
    skipped: int
    wall_ms: int


class VerifyResponse(BaseModel):
    results: list[CheckResultModel]
    summary: VerifySummary
    config: dict[str, Any]


class TableRequest(BaseModel):
    kind: str  # "hatH" | "hatT" | "coeffs"
    amax: int = Field(default=2, ge=0, le=64)
    bmax: int = Field(default=2, ge=0, le=64)


class CoefficientRow(BaseModel):
    a: int
    b: int
    k: int
    numerator: str
    denominator: str


class CombinationRow(BaseModel):
    a: int
    b: int
    monomial: str
    numerator: str
    denominator: str


class TableResponse(BaseModel):
    kind: str
    coefficient_rows: Optional[list[CoefficientRow]] = None
    combination_rows: Optional[list[CombinationRow]] = None


class ExperimentRequest(BaseModel):
    amax: int = Field(default=6, ge=0, le=64)
    digits: int = Field(default=30, ge=1, le=10_000)


class ScaledCoefficient(BaseModel):
    k: int
    coefficient_num: str
    coefficient_den: str
    scaled: str
    divisible: bool


class ExperimentRow(BaseModel):
    a: int
    factorial_divisor: str
    coefficients: list[ScaledCoefficient]
    all_divisible: bool
    integral: str
    integral_radius: str
    upper_bound: str
    positive: bool
    below_bound: bool


class ExperimentResponse(BaseModel):
    rows: list[ExperimentRow]
    all_divisible: bool
