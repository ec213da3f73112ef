"""FastAPI application wrapping the core package.

One app instance owns one result cache.  Mathematical negatives
(NotWitness, Exhausted, an invalid lower-bound coloring) are ordinary
200 responses with the outcome in the body; domain and usage errors map
to HTTP 422.
"""

from __future__ import annotations

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse, PlainTextResponse

from .. import __version__
from ..cache import ResultCache, resolve_cache_path
from ..colorability import (
    Coloring,
    WitnessVerdict,
    brute_force_is_witness,
    export_cnf,
    find_coloring,
    is_witness,
)
from ..equations import Equation, Family, enumerate_solutions_in_set, solution_supports
from ..errors import NotAWitness, RadoError
from ..exact import Exhausted, RadoResult, lower_bound_coloring, rado_number, verify_no_mono
from ..reduce import (
    certificate_to_dict,
    closed_form_bound,
    lcm_of_set,
    power_lift_bound,
    upper_bound_from_witness,
)
from ..witness_families import FamilySpec, chi_set, family_set
from .models import (
    BoundRequest,
    BoundResponse,
    CertificateModel,
    CnfRequest,
    ColoringModel,
    ComputeRequest,
    ComputeResponse,
    LowerBoundRequest,
    LowerBoundResponse,
    ReportResponse,
    ReportRow,
    SolutionModel,
    StatsModel,
    WitnessRequest,
    WitnessResponse,
    WitnessSource,
)

# Estimated multiset count above which the enumeration path gives way to
# the coloring-iteration path when method is "auto".
_AUTO_ENUM_NODE_LIMIT = 2_000_000
_BRUTE_CAP = 10**7


def _coloring_model(coloring: Coloring | None) -> ColoringModel | None:
    if coloring is None:
        return None
    return ColoringModel(
        domain=list(coloring.domain), colors=list(coloring.colors), r=coloring.r
    )


def _resolve_values(src: WitnessSource) -> list[int]:
    if src.values is not None:
        return sorted({int(v) for v in src.values})
    return family_set(FamilySpec(src.family, src.param))


def _multiset_estimate(m: int, k: int) -> int:
    import math

    return math.comb(m + k - 1, k)


def _pick_method(method: str, m: int, k: int, r: int) -> str:
    if method != "auto":
        return method
    if (
        _multiset_estimate(m, k) > _AUTO_ENUM_NODE_LIMIT
        and r**m <= _BRUTE_CAP
    ):
        return "brute-force"
    return "enumerate"


def _known_bounds(family: str, r: int, k: int) -> tuple[int | None, int | None]:
    """Best generally valid bounds for the report table."""
    if family == Family.UNIT_FRACTION.value:
        low = k**r
        high = None
        if r == 2:
            high = closed_form_bound(k, "new6")
            if k >= 4 and (k % 2 == 0 or k % 3 != 0):
                high = min(high, closed_form_bound(k, "special2"))
            high = min(high, closed_form_bound(k, "brown-rodl"))
        elif r == 3 and k >= 3:
            high = lcm_of_set(chi_set(k))
        return low, high
    if family == Family.LINEAR_SUM.value:
        if r == 2:
            v = k * k + k - 1
            return v, v
        if r == 3:
            v = k**3 + 2 * k * k - 2
            return v, v
    return None, None


def create_app(cache_path: str | None = None) -> FastAPI:
    app = FastAPI(title="rado", version=__version__)
    cache = ResultCache(resolve_cache_path(cache_path))
    app.state.cache = cache

    @app.exception_handler(RadoError)
    async def _rado_error(_: Request, exc: RadoError) -> JSONResponse:
        return JSONResponse(
            status_code=422,
            content={"detail": str(exc), "error": type(exc).__name__},
        )

    @app.get("/")
    def root() -> dict:
        return {
            "name": "rado",
            "version": __version__,
            "endpoints": [
                "/compute",
                "/witness",
                "/bound",
                "/lower-bound",
                "/cnf",
                "/report",
            ],
        }

    @app.post("/compute", response_model=ComputeResponse)
    def compute(req: ComputeRequest) -> ComputeResponse:
        eq = Equation(Family(req.equation), req.k)
        warnings: list[str] = []
        if req.use_cache:
            entry = cache.lookup(req.equation, req.r, req.k)
            warnings.extend(cache.warnings)
            cache.warnings.clear()
            if entry is not None:
                return ComputeResponse(
                    status="exact",
                    equation=req.equation,
                    r=req.r,
                    k=req.k,
                    value=entry.value,
                    certificate_low=_coloring_model(entry.coloring()),
                    cached=True,
                    warnings=warnings,
                )
        res = rado_number(
            eq,
            req.r,
            max_n=req.max_n,
            budget_seconds=req.budget_seconds,
            threads=req.threads,
        )
        if isinstance(res, RadoResult):
            if req.use_cache:
                cache.store(req.equation, req.r, req.k, res.value, res.certificate_low)
            return ComputeResponse(
                status="exact",
                equation=req.equation,
                r=req.r,
                k=req.k,
                value=res.value,
                certificate_low=_coloring_model(res.certificate_low),
                warnings=warnings,
            )
        assert isinstance(res, Exhausted)
        return ComputeResponse(
            status="exhausted",
            equation=req.equation,
            r=req.r,
            k=req.k,
            best_colorable=res.best_colorable,
            undecided=res.undecided,
            certificate_low=_coloring_model(res.coloring),
            warnings=warnings,
        )

    @app.post("/witness", response_model=WitnessResponse)
    def witness(req: WitnessRequest) -> WitnessResponse:
        values = _resolve_values(req)
        eq = Equation(Family(req.equation), req.k, req.ell)
        method = _pick_method(req.method, len(values), req.k, req.r)
        if method == "brute-force":
            verdict: WitnessVerdict = brute_force_is_witness(eq, values, req.r)
        else:
            verdict = is_witness(eq, values, req.r, threads=req.threads)
        return WitnessResponse(
            outcome=verdict.outcome,
            witness=values,
            size=len(values),
            lcm=str(lcm_of_set(values)),
            counterexample=_coloring_model(verdict.counterexample),
            stats=StatsModel(nodes=verdict.stats.nodes, edges=verdict.stats.edges),
            method=method,
        )

    @app.post("/bound", response_model=BoundResponse)
    def bound(req: BoundRequest) -> BoundResponse:
        values = _resolve_values(req)
        try:
            cert = upper_bound_from_witness(values, req.r, req.k, threads=req.threads)
        except NotAWitness as exc:
            return BoundResponse(
                ok=False, counterexample=_coloring_model(exc.counterexample)
            )
        if req.lift > 1:
            cert = power_lift_bound(cert, req.lift)
        return BoundResponse(
            ok=True, certificate=CertificateModel(**certificate_to_dict(cert))
        )

    @app.post("/lower-bound", response_model=LowerBoundResponse)
    def lower_bound(req: LowerBoundRequest) -> LowerBoundResponse:
        coloring = lower_bound_coloring(req.k, req.r)
        top = req.k**req.r - 1
        claim = f"f_{req.r}({req.k}) >= {req.k ** req.r}"
        valid = None
        counterexample = None
        if req.verify:
            eq = Equation(Family.UNIT_FRACTION, req.k)
            bad = verify_no_mono(eq, coloring)
            valid = bad is None
            if bad is not None:
                counterexample = SolutionModel(counts=bad.as_dict(), target=bad.target)
        return LowerBoundResponse(
            k=req.k,
            r=req.r,
            domain_max=top,
            claim=claim,
            valid=valid,
            counterexample=counterexample,
            coloring=_coloring_model(coloring) if req.include_coloring else None,
        )

    @app.post("/cnf", response_class=PlainTextResponse)
    def cnf(req: CnfRequest) -> str:
        values = _resolve_values(req)
        eq = Equation(Family(req.equation), req.k, req.ell)
        solutions = enumerate_solutions_in_set(eq, values)
        edges = solution_supports(solutions)
        return export_cnf(edges, values, req.r)

    @app.get("/report", response_model=ReportResponse)
    def report() -> ReportResponse:
        rows = []
        for entry in cache.rows():
            low, high = _known_bounds(entry.family, entry.r, entry.k)
            rows.append(
                ReportRow(
                    family=entry.family,
                    r=entry.r,
                    k=entry.k,
                    value=entry.value,
                    bound_low=low,
                    bound_high=high,
                )
            )
        warnings = list(cache.warnings)
        cache.warnings.clear()
        return ReportResponse(rows=rows, warnings=warnings)

    return app
