"""HTTP face of the tool.

Thin layer: routes parse/validate, the catalog does the work, every state
change is durably logged before the response goes out (the catalog's event
sink guarantees that ordering).  The optional UI directory is served
statically at the root.
"""
from __future__ import annotations

import dataclasses
import logging
from pathlib import Path

from fastapi import APIRouter, FastAPI, HTTPException
from fastapi.staticfiles import StaticFiles

from ..catalog import Catalog, CatalogError, NotFoundError
from ..domain import DatasetError, ModelDescriptor
from ..metrics import micro_f1
from ..patterns import detect_patterns
from ..providers import PredictionError, predict
from ..session import EvalSession, SessionError
from . import schemas

log = logging.getLogger("ikiwisi.service")


def _session_payload(session: EvalSession) -> dict:
    return session.snapshot()


def _grid_payload(session: EvalSession) -> dict:
    grid = session.render_display_grid()
    return {
        "session_id": session.session_id,
        "grid": grid.as_dict(),
        "patterns": detect_patterns(grid.rows()).as_dict(),
        "modification_summary": session.modification_summary().as_dict(),
    }


def evaluate_selection(
    catalog: Catalog,
    model_id: str,
    segment_id: str,
    raw_objects: list[str],
    frames: list[int] | None = None,
    seed: int | None = None,
) -> dict:
    """Direct metrics over a selection, no session involved.

    Spy names use the same '*' prefix as the UI.  ``seed`` overrides the
    descriptor seed for stochastic models.
    """
    model = catalog.model(model_id)
    segment = catalog.dataset.segment(segment_id)
    if seed is not None and model.kind in ("random", "synthetic-noisy"):
        model = dataclasses.replace(model, seed=seed)
    if not raw_objects:
        raise SessionError("at least one object is required")
    names: list[str] = []
    spies: set[str] = set()
    for raw in raw_objects:
        raw = raw.strip()
        if raw.startswith("*"):
            name = raw[1:].strip()
            spies.add(name)
        else:
            name = raw
        if not name:
            raise SessionError(f"object name {raw!r} is empty")
        if name in names:
            raise SessionError(f"object {name!r} listed twice")
        if name not in spies and name not in catalog.dataset.vocabulary:
            raise SessionError(f"object {name!r} is not in the vocabulary")
        names.append(name)
    gt = catalog.dataset.ground_truth[segment_id]
    grid = predict(
        model,
        segment,
        names,
        gt,
        spies=frozenset(spies),
        cache=catalog.caches.get(model.model_id, {}).get(segment_id),
    )
    frame_list = list(frames) if frames is not None else list(range(segment.frame_count))
    summary = micro_f1(grid, gt, names, frame_list)
    shown = {obj: tuple(grid.cells[obj][f] for f in frame_list) for obj in names}
    return {
        "model_id": model_id,
        "segment_id": segment_id,
        "objects": names,
        "spies": sorted(spies),
        "frames": frame_list,
        "summary": summary.as_dict(),
        "patterns": detect_patterns(shown).as_dict(),
        "warnings": list(grid.warnings),
    }


def build_router(catalog: Catalog) -> APIRouter:
    router = APIRouter(prefix="/api")

    @router.get("/health")
    def health() -> dict:
        return {"status": "ok", "dataset_id": catalog.dataset.dataset_id}

    @router.get("/datasets", response_model=list[schemas.DatasetInfo])
    def list_datasets() -> list[schemas.DatasetInfo]:
        ds = catalog.dataset
        return [
            schemas.DatasetInfo(
                dataset_id=ds.dataset_id,
                n_objects=ds.vocabulary.size,
                n_segments=ds.segment_count,
                vocabulary=list(ds.vocabulary.objects),
                segments=[s.segment_id for s in ds.segments],
            )
        ]

    @router.get("/datasets/{dataset_id}/segments/{segment_id}", response_model=schemas.SegmentDetail)
    def segment_detail(dataset_id: str, segment_id: str) -> schemas.SegmentDetail:
        return schemas.SegmentDetail(**catalog.segment_detail(dataset_id, segment_id))

    @router.get("/models", response_model=list[schemas.ModelInfo])
    def list_models() -> list[schemas.ModelInfo]:
        return [
            schemas.ModelInfo(
                model_id=m.model_id,
                kind=m.kind,
                seed=m.seed,
                flip_probability=m.flip_probability,
                cache_ref=m.cache_ref,
            )
            for m in catalog.models.values()
        ]

    @router.post("/sessions", status_code=201)
    def create_session(request: schemas.CreateSessionRequest) -> dict:
        session = catalog.create_session(
            request.model_id,
            request.segment_id,
            rater_id=request.rater_id,
            color_mode=request.color_mode,
            session_id=request.session_id,
        )
        return _session_payload(session)

    @router.get("/sessions/{session_id}")
    def get_session(session_id: str) -> dict:
        return _session_payload(catalog.session(session_id))

    @router.post("/sessions/{session_id}/events")
    def post_event(session_id: str, request: schemas.SessionEventRequest) -> dict:
        session = catalog.apply_event(session_id, request.kind, request.payload)
        return _session_payload(session)

    @router.get("/sessions/{session_id}/grid")
    def get_grid(session_id: str) -> dict:
        return _grid_payload(catalog.session(session_id))

    @router.post("/sessions/{session_id}/record", response_model=schemas.RatingRecordResponse)
    def record(session_id: str, request: schemas.RecordRequest) -> schemas.RatingRecordResponse:
        rec = catalog.record(session_id, rating=request.rating, comment=request.comment)
        return schemas.RatingRecordResponse(**dataclasses.asdict(rec))

    @router.get("/analysis/ratings")
    def analysis_ratings() -> dict:
        return catalog.analysis_report()

    @router.post("/eval")
    def eval_selection(request: schemas.EvalRequest) -> dict:
        return evaluate_selection(
            catalog,
            request.model_id,
            request.segment_id,
            request.objects,
            frames=request.frames,
            seed=request.seed,
        )

    return router


def create_app(
    data_dir: str | Path | None = None,
    *,
    log_dir: str | Path | None = None,
    catalog: Catalog | None = None,
    ui_dir: str | Path | None = None,
) -> FastAPI:
    if catalog is None:
        if data_dir is None:
            raise CatalogError("create_app needs a data_dir or a catalog")
        catalog = Catalog(data_dir, log_dir=log_dir)

    app = FastAPI(title="ikiwisi", version="0.1.0")
    app.state.catalog = catalog
    app.include_router(build_router(catalog))

    @app.exception_handler(NotFoundError)
    async def _not_found(request, exc):  # noqa: ANN001 - fastapi signature
        from fastapi.responses import JSONResponse

        return JSONResponse(status_code=404, content={"detail": str(exc)})

    @app.exception_handler(SessionError)
    async def _session_error(request, exc):  # noqa: ANN001
        from fastapi.responses import JSONResponse

        return JSONResponse(status_code=400, content={"detail": str(exc)})

    @app.exception_handler(PredictionError)
    async def _prediction_error(request, exc):  # noqa: ANN001
        from fastapi.responses import JSONResponse

        return JSONResponse(status_code=400, content={"detail": str(exc)})

    @app.exception_handler(DatasetError)
    async def _dataset_error(request, exc):  # noqa: ANN001
        from fastapi.responses import JSONResponse

        return JSONResponse(status_code=400, content={"detail": str(exc)})

    @app.exception_handler(CatalogError)
    async def _catalog_error(request, exc):  # noqa: ANN001
        from fastapi.responses import JSONResponse

        return JSONResponse(status_code=400, content={"detail": str(exc)})

    if ui_dir is not None and Path(ui_dir).is_dir():
        app.mount("/", StaticFiles(directory=str(ui_dir), html=True), name="ui")
        log.info("serving UI from %s", ui_dir)

    return app
