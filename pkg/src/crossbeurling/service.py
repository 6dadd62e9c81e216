"""FastAPI service exposing the workbench over HTTP.

Endpoints mirror the CLI subcommands: config validation, convolution,
crossed-product construction, and suite verification.  Configs are JSON
documents (the same schema the CLI reads from disk); complex scalars are
numbers or [re, im] pairs and functions are maps element-index ->
coefficient array.
"""

from __future__ import annotations

from typing import Any, Literal

from fastapi import FastAPI, HTTPException
from pydantic import BaseModel, ConfigDict, Field

from . import __version__
from .convolution import afunction_from_json, afunction_to_json, twisted_convolve
from .crossed import RepClass, build_crossed_product
from .correspondence import induced_pair
from .errors import ConfigError, CrossBeurlingError
from .harness import SUITE_NAMES, Report, emit_report, resolve_config, run_suite

app = FastAPI(
    title="crossbeurling",
    version=__version__,
    description="Crossed products of normed algebras over finite groups, as a verification service.",
)


class ConfigModel(BaseModel):
    """Free-schema config; deep validation happens in the resolver."""

    model_config = ConfigDict(extra="forbid")

    fixture: str | None = None
    fixtures: list[str] | None = None
    group: Any = None
    algebra: Any = None
    action: Any = None
    weight: list[float] | None = None
    character: list[Any] | None = None
    rep_classes: list[Any] | None = None
    tolerances: dict[str, float] | None = None
    seed: int | None = None

    def as_dict(self) -> dict:
        return {k: v for k, v in self.model_dump().items() if v is not None}


class FixtureSummary(BaseModel):
    fixture: str
    group: str
    group_order: int
    algebra: str
    algebra_dim: int
    norm_tag: str
    action_bound: float
    isometric: bool
    weight: list[float]
    has_character: bool


class ValidateResponse(BaseModel):
    valid: bool
    seed: int
    fixtures: list[FixtureSummary]


class ConvolveRequest(BaseModel):
    config: ConfigModel
    f: dict[str, list[list[float]]]
    g: dict[str, list[list[float]]]


class ConvolveResponse(BaseModel):
    fixture: str
    result: dict[str, list[list[float]]]
    norm_1w: float


class BuildCrossedRequest(BaseModel):
    config: ConfigModel


class CrossedSummary(BaseModel):
    fixture: str
    ambient_dim: int
    quotient_dim: int
    kernel_dim: int
    faithful: bool


class BuildCrossedResponse(BaseModel):
    results: list[CrossedSummary]


class VerifyRequest(BaseModel):
    config: ConfigModel = Field(default_factory=ConfigModel)
    suite: str = "all"
    seed: int | None = None
    tolerance: float | None = None
    timings: bool = False


class CheckModel(BaseModel):
    model_config = ConfigDict(extra="allow")

    check_id: str
    law: str
    fixture: str
    status: str
    max_error: float
    bound_slack: float | None = None


class ReportModel(BaseModel):
    model_config = ConfigDict(extra="allow")

    suite: str
    seed: int
    fixtures: list[str]
    checks: list[CheckModel]


class VerifyResponse(BaseModel):
    ok: bool
    report: ReportModel


class RenderRequest(BaseModel):
    report: ReportModel
    format: Literal["json", "text"] = "text"


class RenderResponse(BaseModel):
    rendered: str


def _config_error(exc: ConfigError) -> HTTPException:
    return HTTPException(status_code=422, detail={"path": exc.path, "reason": exc.reason})


def _resolve(config: ConfigModel, seed: int | None = None, tolerance: float | None = None):
    data = config.as_dict()
    if seed is not None:
        data["seed"] = seed
    if tolerance is not None:
        data.setdefault("tolerances", {})
        data["tolerances"] = {**data["tolerances"], "equality": tolerance}
    try:
        return resolve_config(data)
    except ConfigError as exc:
        raise _config_error(exc) from exc


@app.get("/health")
def health() -> dict:
    return {"status": "ok", "version": __version__}


@app.post("/validate", response_model=ValidateResponse)
def validate(config: ConfigModel) -> ValidateResponse:
    resolved = _resolve(config)
    out = []
    for fx in resolved.fixtures:
        out.append(
            FixtureSummary(
                fixture=fx.fixture_id,
                group=fx.system.group.name,
                group_order=fx.system.group.order,
                algebra=fx.system.algebra.name,
                algebra_dim=fx.system.algebra.dim,
                norm_tag=fx.system.algebra.norm_tag,
                action_bound=fx.system.c_alpha,
                isometric=fx.system.isometric,
                weight=[float(v) for v in fx.weight.values],
                has_character=fx.character is not None,
            )
        )
    return ValidateResponse(valid=True, seed=resolved.seed, fixtures=out)


@app.post("/convolve", response_model=ConvolveResponse)
def convolve(request: ConvolveRequest) -> ConvolveResponse:
    resolved = _resolve(request.config)
    if len(resolved.fixtures) != 1:
        raise HTTPException(
            status_code=422,
            detail={"path": "config", "reason": "convolve needs a config selecting exactly one fixture"},
        )
    fx = resolved.fixtures[0]
    system = fx.system
    try:
        f = afunction_from_json(request.f, system.group.order, system.algebra.dim)
        g = afunction_from_json(request.g, system.group.order, system.algebra.dim)
    except CrossBeurlingError as exc:
        raise HTTPException(status_code=422, detail={"path": "f/g", "reason": str(exc)}) from exc
    out = twisted_convolve(system, f, g)
    from .convolution import weighted_norm

    return ConvolveResponse(
        fixture=fx.fixture_id,
        result=afunction_to_json(out),
        norm_1w=float(weighted_norm(system.algebra, fx.weight, out)),
    )


@app.post("/build-crossed", response_model=BuildCrossedResponse)
def build_crossed(request: BuildCrossedRequest) -> BuildCrossedResponse:
    resolved = _resolve(request.config)
    results = []
    for fx in resolved.fixtures:
        rc = resolved.rep_classes.get(fx.fixture_id)
        if rc is None:
            try:
                rc = RepClass.of(induced_pair(fx.system, fx.weight))
            except CrossBeurlingError as exc:
                raise HTTPException(
                    status_code=422,
                    detail={
                        "path": "rep_classes",
                        "reason": f"fixture {fx.fixture_id}: no class given and {exc}",
                    },
                ) from exc
        try:
            cp = build_crossed_product(fx.system, rc, resolved.kernel_tol)
        except CrossBeurlingError as exc:
            raise HTTPException(status_code=500, detail={"path": "build", "reason": str(exc)}) from exc
        results.append(
            CrossedSummary(
                fixture=fx.fixture_id,
                ambient_dim=cp.ambient_dim,
                quotient_dim=cp.quotient_dim,
                kernel_dim=cp.kernel.shape[0],
                faithful=cp.is_faithful,
            )
        )
    return BuildCrossedResponse(results=results)


@app.post("/verify", response_model=VerifyResponse)
def verify(request: VerifyRequest) -> VerifyResponse:
    if request.suite not in SUITE_NAMES:
        raise HTTPException(
            status_code=422,
            detail={"path": "suite", "reason": f"unknown suite {request.suite!r}; expected one of {SUITE_NAMES}"},
        )
    resolved = _resolve(request.config, seed=request.seed, tolerance=request.tolerance)
    report = run_suite(resolved, request.suite)
    payload = report.to_dict(timings=request.timings)
    return VerifyResponse(ok=report.ok, report=ReportModel(**payload))


@app.post("/report/render", response_model=RenderResponse)
def render_report(request: RenderRequest) -> RenderResponse:
    data = request.report.model_dump()
    report = Report(
        suite=data["suite"],
        seed=data["seed"],
        fixtures=data["fixtures"],
        checks=[_check_from_dict(c) for c in data["checks"]],
    )
    try:
        return RenderResponse(rendered=emit_report(report, request.format))
    except ConfigError as exc:
        raise _config_error(exc) from exc


def _check_from_dict(data: dict):
    from .harness import CheckRecord

    return CheckRecord(
        check_id=data["check_id"],
        law=data["law"],
        fixture=data["fixture"],
        status=data["status"],
        max_error=float(data["max_error"]),
        bound_slack=data.get("bound_slack"),
        repro=data.get("repro"),
        note=data.get("note", ""),
    )
