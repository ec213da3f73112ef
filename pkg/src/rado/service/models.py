"""Request and response models for the HTTP service.

Reports are deterministic: responses carry node/edge counts but no wall
times, so identical inputs against identical cache state serialize to
identical bytes.
"""

from __future__ import annotations

from typing import Literal, Optional

from pydantic import BaseModel, Field, model_validator

EquationName = Literal["linear-sum", "unit-fraction", "fractional-power"]
FamilyName = Literal["lemma31", "lemma33", "chi", "interval"]
MethodName = Literal["auto", "enumerate", "brute-force"]


class ColoringModel(BaseModel):
    domain: list[int]
    colors: list[int]
    r: int


class StatsModel(BaseModel):
    nodes: int
    edges: int


class SolutionModel(BaseModel):
    counts: dict[int, int]
    target: int


class WitnessSource(BaseModel):
    """A witness set given either inline or as a named family."""

    values: Optional[list[int]] = None
    family: Optional[FamilyName] = None
    param: Optional[int] = Field(default=None, description="k, or n for interval")

    @model_validator(mode="after")
    def _exactly_one_source(self) -> "WitnessSource":
        if (self.values is None) == (self.family is None):
            raise ValueError("provide either explicit values or a family, not both")
        if self.family is not None and self.param is None:
            raise ValueError("a named family needs its parameter")
        return self


class ComputeRequest(BaseModel):
    equation: Literal["linear-sum", "unit-fraction"]
    r: int = Field(ge=2)
    k: int = Field(ge=2)
    max_n: int = Field(default=100_000, ge=1)
    budget_seconds: Optional[float] = Field(default=None, gt=0)
    threads: int = Field(default=1, ge=1)
    use_cache: bool = True


class ComputeResponse(BaseModel):
    status: Literal["exact", "exhausted"]
    equation: str
    r: int
    k: int
    value: Optional[int] = None
    certificate_low: Optional[ColoringModel] = None
    best_colorable: Optional[int] = None
    undecided: Optional[int] = None
    cached: bool = False
    warnings: list[str] = []


class WitnessRequest(WitnessSource):
    equation: EquationName = "linear-sum"
    r: int = Field(ge=1)
    k: int = Field(ge=2)
    ell: int = Field(default=1, ge=1)
    method: MethodName = "auto"
    threads: int = Field(default=1, ge=1)


class WitnessResponse(BaseModel):
    outcome: Literal["IsWitness", "NotWitness"]
    witness: list[int]
    size: int
    lcm: str
    counterexample: Optional[ColoringModel] = None
    stats: StatsModel
    method: MethodName


class CertificateModel(BaseModel):
    """Mirrors the certificate serialization: lcm as decimal text."""

    equation: str
    k: int
    ell: int
    r: int
    witness: list[int]
    lcm: str
    claim: str
    verifier_version: str


class BoundRequest(WitnessSource):
    r: int = Field(ge=1)
    k: int = Field(ge=2)
    lift: int = Field(default=1, ge=1)
    threads: int = Field(default=1, ge=1)


class BoundResponse(BaseModel):
    ok: bool
    certificate: Optional[CertificateModel] = None
    counterexample: Optional[ColoringModel] = None


class LowerBoundRequest(BaseModel):
    k: int = Field(ge=2)
    r: int = Field(ge=2)
    verify: bool = False
    include_coloring: bool = False


class LowerBoundResponse(BaseModel):
    k: int
    r: int
    domain_max: int
    claim: str
    valid: Optional[bool] = None
    counterexample: Optional[SolutionModel] = None
    coloring: Optional[ColoringModel] = None


class CnfRequest(WitnessSource):
    equation: EquationName = "linear-sum"
    r: int = Field(ge=1)
    k: int = Field(ge=2)
    ell: int = Field(default=1, ge=1)


class ReportRow(BaseModel):
    family: str
    r: int
    k: int
    value: int
    bound_low: Optional[int] = None
    bound_high: Optional[int] = None


class ReportResponse(BaseModel):
    rows: list[ReportRow]
    warnings: list[str] = []
