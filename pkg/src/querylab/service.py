"""Stateless HTTP API over the query pipeline.

Endpoints:

* ``GET /api/relations`` returns the catalog export (names, typed
  attributes, all rows, foreign keys).
* ``POST /api/query`` with ``{"sql": ..., "optimize": bool}`` runs the
  pipeline and returns renderings, the rewrite trace, and the rows of
  every node, so a UI can highlight any subexpression without further
  requests.

SQL problems come back as 400 with ``{"ok": false, "error": {...}}``;
oversized bodies get 413. User input can never produce a 500.

Configuration is via environment variables: PORT (default 8080),
STATIC_DIR (serve a built UI from /), MAX_BODY_BYTES (default 65536)
and CORS_ORIGINS (comma separated, default "*").
"""

from __future__ import annotations

import os

from fastapi import FastAPI, Request
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
from fastapi.staticfiles import StaticFiles
from pydantic import BaseModel

from .catalog import Catalog, catalog_to_dict, load_catalog
from .errors import QueryError
from .evaluator import EvalResult
from .pipeline import run_query
from .render import to_latex, to_tree_json, to_unicode

DEFAULT_PORT = 8080
DEFAULT_MAX_BODY_BYTES = 64 * 1024


class QueryRequest(BaseModel):
    sql: str
    optimize: bool = False


def create_app(
    catalog: Catalog | None = None,
    max_body_bytes: int = DEFAULT_MAX_BODY_BYTES,
    static_dir: str | None = None,
    cors_origins: list[str] | None = None,
) -> FastAPI:
    if catalog is None:
        catalog = load_catalog()
    app = FastAPI(title="querylab", docs_url=None, redoc_url=None)

    app.add_middleware(
        CORSMiddleware,
        allow_origins=cors_origins or ["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )

    relations_payload = catalog_to_dict(catalog)

    @app.middleware("http")
    async def reject_large_bodies(request: Request, call_next):
        length = request.headers.get("content-length")
        if length is not None and length.isdigit() and int(length) > max_body_bytes:
            return JSONResponse(
                status_code=413,
                content={
                    "ok": False,
                    "error": {
                        "kind": "too_large",
                        "message": f"request body exceeds {max_body_bytes} bytes",
                    },
                },
            )
        return await call_next(request)

    @app.get("/api/relations")
    def get_relations():
        return relations_payload

    @app.post("/api/query")
    def post_query(request: QueryRequest):
        try:
            run = run_query(request.sql, catalog, optimize_expr=request.optimize)
        except QueryError as error:
            return JSONResponse(status_code=400, content={"ok": False, "error": _error_json(error)})
        return {
            "ok": True,
            "unicode": to_unicode(run.expr),
            "latex": to_latex(run.expr),
            "tree": to_tree_json(run.expr, run.results),
            "trace": [
                {"rule": step.rule.value, "path": list(step.at)} for step in run.trace
            ],
            "nodes": [_node_json(result) for result in run.results],
        }

    if static_dir is not None:
        app.mount("/", StaticFiles(directory=static_dir, html=True), name="ui")

    return app


def _error_json(error: QueryError) -> dict:
    payload: dict = {"kind": error.kind, "message": error.message}
    if error.position is not None:
        line, column = error.position
        payload["position"] = {"line": line, "column": column}
    return payload


def _node_json(result: EvalResult) -> dict:
    return {
        "path": list(result.path),
        "schema": [
            {"qualifier": col.qualifier, "attribute": col.attribute, "type": col.type.value}
            for col in result.schema
        ],
        "rows": [list(row) for row in result.table.rows],
        "cardinality": result.cardinality,
    }


def main() -> None:
    """Run the service with uvicorn, configured from the environment."""
    import uvicorn

    port = int(os.environ.get("PORT", DEFAULT_PORT))
    static_dir = os.environ.get("STATIC_DIR")
    max_body = int(os.environ.get("MAX_BODY_BYTES", DEFAULT_MAX_BODY_BYTES))
    origins_env = os.environ.get("CORS_ORIGINS", "*")
    origins = [origin.strip() for origin in origins_env.split(",") if origin.strip()]
    app = create_app(max_body_bytes=max_body, static_dir=static_dir, cors_origins=origins)
    uvicorn.run(app, host="0.0.0.0", port=port)


if __name__ == "__main__":
    main()
