"""The shared parse -> bind -> translate -> optimize -> evaluate pipeline.

Both the CLI and the HTTP service run queries through this module so
they agree byte for byte on results and error classification.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .catalog import Catalog, load_catalog
from .errors import InvalidPath
from .evaluator import EvalResult, evaluate_all
from .optimizer import RewriteTrace, optimize
from .ra import NodePath, RaExpr
from .sql_frontend import parse
from .translator import translate


@dataclass
class QueryRun:
    """Everything one query produced, ready for rendering."""

    sql: str
    optimized: bool
    expr: RaExpr
    canonical: RaExpr
    trace: RewriteTrace = field(default_factory=list)
    results: list[EvalResult] = field(default_factory=list)


def run_query(sql: str, catalog: Catalog | None = None, optimize_expr: bool = False) -> QueryRun:
    """Run one query end to end. Raises QueryError subclasses on bad input."""
    if catalog is None:
        catalog = load_catalog()
    query = parse(sql)
    canonical = translate(query, catalog)
    expr = canonical
    trace: RewriteTrace = []
    if optimize_expr:
        expr, trace = optimize(canonical)
    results = evaluate_all(expr, catalog)
    return QueryRun(
        sql=sql,
        optimized=optimize_expr,
        expr=expr,
        canonical=canonical,
        trace=trace,
        results=results,
    )


def parse_node_path(text: str) -> NodePath:
    """Dotted child indices ("0.1") to a path; the empty string is the root."""
    if text == "":
        return ()
    parts = text.split(".")
    if not all(part.isdigit() for part in parts):
        raise InvalidPath(f"malformed node path {text!r}")
    return tuple(int(part) for part in parts)


def format_node_path(path: NodePath) -> str:
    return ".".join(str(i) for i in path)
