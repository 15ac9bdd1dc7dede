"""Command-line front door: show, eval and diff queries; serve the API.

Exit codes: 0 on success, 2 on a lex/parse/bind error in the query text,
3 on an invalid node path. Output is plain UTF-8 with no color unless
--color is given, so it is safe to capture and compare.
"""

from __future__ import annotations

import sys

import click

from .catalog import load_catalog
from .errors import InvalidPath, QueryError
from .evaluator import EvalResult
from .optimizer import RewriteStep
from .pipeline import format_node_path, parse_node_path, run_query
from .render import to_latex, to_text_tree, to_unicode

OPERATOR_GLYPHS = ("σ", "π", "⋈", "×")


@click.group()
def main() -> None:
    """Explore SQL queries as relational algebra over a sample dataset."""


@main.command()
@click.argument("sql")
@click.option("--optimize", is_flag=True, help="Apply heuristic optimization first.")
@click.option(
    "--format",
    "fmt",
    type=click.Choice(["unicode", "latex", "tree"]),
    default="unicode",
    show_default=True,
    help="Rendering to print.",
)
@click.option("--color", is_flag=True, help="Colorize operators (tree and unicode).")
def show(sql: str, optimize: bool, fmt: str, color: bool) -> None:
    """Print the algebra expression for SQL."""
    catalog = load_catalog()
    try:
        run = run_query(sql, catalog, optimize_expr=optimize)
    except QueryError as error:
        _query_error(error)
    if fmt == "tree":
        output = to_text_tree(run.expr, run.results)
    else:
        output = to_unicode(run.expr) if fmt == "unicode" else to_latex(run.expr)
    if color and fmt != "latex":
        click.echo(_colorize(output), color=True)
    else:
        click.echo(output)


@main.command(name="eval")
@click.argument("sql")
@click.option("--optimize", is_flag=True, help="Apply heuristic optimization first.")
@click.option(
    "--node",
    default=None,
    help='Node path as dotted child indices (e.g. "0.1"); empty string or omitted = root.',
)
@click.option("--color", is_flag=True, help="Colorize the header row.")
def eval_cmd(sql: str, optimize: bool, node: str | None, color: bool) -> None:
    """Print the rows produced at one node of the expression."""
    catalog = load_catalog()
    try:
        run = run_query(sql, catalog, optimize_expr=optimize)
    except QueryError as error:
        _query_error(error)
    try:
        path = parse_node_path(node) if node is not None else ()
        result = _result_at(run.results, path)
    except InvalidPath as error:
        click.echo(f"error: {error}", err=True)
        sys.exit(3)
    click.echo(_format_table(result, color), color=color or None)


@main.command()
@click.argument("sql")
def diff(sql: str) -> None:
    """Print the unoptimized tree, the optimized tree, and the rewrites."""
    catalog = load_catalog()
    try:
        plain = run_query(sql, catalog, optimize_expr=False)
        optimized = run_query(sql, catalog, optimize_expr=True)
    except QueryError as error:
        _query_error(error)
    click.echo("-- unoptimized --")
    click.echo(to_text_tree(plain.expr, plain.results))
    click.echo("-- optimized --")
    click.echo(to_text_tree(optimized.expr, optimized.results))
    click.echo("-- rewrites --")
    if not optimized.trace:
        click.echo("(none)")
    for step in optimized.trace:
        click.echo(_trace_line(step))


@main.command()
@click.option("--port", default=8080, show_default=True, help="Port to listen on.")
@click.option("--static-dir", default=None, help="Directory with the built UI to serve at /.")
def serve(port: int, static_dir: str | None) -> None:
    """Run the HTTP API (and optionally the bundled UI)."""
    import uvicorn

    from .service import create_app

    app = create_app(static_dir=static_dir)
    uvicorn.run(app, host="0.0.0.0", port=port)


def _query_error(error: QueryError) -> None:
    click.echo(f"error: {error}", err=True)
    sys.exit(2)


def _result_at(results: list[EvalResult], path: tuple[int, ...]) -> EvalResult:
    for result in results:
        if result.path == path:
            return result
    raise InvalidPath(f"no node at path {format_node_path(path)!r}")


def _trace_line(step: RewriteStep) -> str:
    return f'{step.rule.value}  (path: "{format_node_path(step.at)}")'


def _format_table(result: EvalResult, color: bool) -> str:
    headers = [str(col) for col in result.schema]
    rows = [[_cell(value) for value in row] for row in result.table.rows]
    widths = [len(h) for h in headers]
    for row in rows:
        for i, cell in enumerate(row):
            widths[i] = max(widths[i], len(cell))
    header_line = "  ".join(h.ljust(w) for h, w in zip(headers, widths)).rstrip()
    if color:
        header_line = click.style(header_line, bold=True)
    lines = [header_line, "  ".join("-" * w for w in widths)]
    for row in rows:
        lines.append("  ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip())
    count = len(rows)
    lines.append(f"({count} row)" if count == 1 else f"({count} rows)")
    return "\n".join(lines)


def _cell(value) -> str:
    return value if isinstance(value, str) else str(value)


def _colorize(text: str) -> str:
    for glyph in OPERATOR_GLYPHS:
        text = text.replace(glyph, click.style(glyph, fg="cyan"))
    return text


if __name__ == "__main__":
    main()
