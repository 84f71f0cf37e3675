"""HTTP facade over ServiceState.

Thin endpoint wiring only; every rule lives in the state object.  Errors
are returned as ``{"code", "message"}`` JSON bodies.  Handlers are async
but share one process-wide state guarded by a lock, so writes (serves,
submissions, retraining) are serialized while scoring stays read-only.
"""

from __future__ import annotations

import json

from fastapi import FastAPI, Request
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse

from .state import ApiError, ServiceState


async def _json_body(request: Request, code: str) -> dict:
    try:
        return json.loads(await request.body())
    except (json.JSONDecodeError, UnicodeDecodeError):
        raise ApiError(400, code, "request body is not valid JSON")


def create_app(state: ServiceState) -> FastAPI:
    app = FastAPI(title="botdetect annotation service")
    app.state.service = state
    # The annotation console is a static page on another origin.
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )

    @app.exception_handler(ApiError)
    async def _handle_api_error(request: Request, exc: ApiError):
        return JSONResponse(
            status_code=exc.status,
            content={"code": exc.code, "message": exc.message},
        )

    @app.get("/health")
    async def health():
        return {
            "status": "ok",
            "model_version": "v%d" % state.version if state.model else None,
        }

    @app.post("/score")
    async def score_bundle(request: Request):
        payload = await _json_body(request, "malformed_bundle")
        return state.score_bundle(payload)

    @app.get("/annotation/next")
    async def annotation_next(request: Request):
        annotator = request.query_params.get("annotator", "")
        return state.next_item(annotator)

    @app.post("/annotation")
    async def annotation_submit(request: Request):
        payload = await _json_body(request, "invalid_record")
        return JSONResponse(status_code=201, content=state.submit_annotation(payload))

    @app.get("/annotation/agreement")
    async def annotation_agreement():
        return state.agreement()

    @app.get("/annotation/progress")
    async def annotation_progress():
        return state.progress()

    @app.get("/scores/histogram")
    async def scores_histogram():
        return state.histogram()

    @app.post("/admin/retrain")
    async def admin_retrain(request: Request):
        payload = await _json_body(request, "invalid_mixture")
        if not isinstance(payload, dict):
            raise ApiError(422, "invalid_mixture", "body must be a JSON object")
        return state.retrain(payload.get("mixture"), payload.get("seed"))

    return app
