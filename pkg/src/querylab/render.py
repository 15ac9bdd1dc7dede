"""Renderings of algebra trees: linear text, LaTeX, JSON tree, indented tree.

All four forms are deterministic, and the linear forms are injective on
tree structure: subscripts carry the operator's predicate or column
list, and binary operands are parenthesized exactly when they are
themselves binary. JSON field names and nesting are a frozen wire
contract shared with the HTTP service and the browser UI.
"""

from __future__ import annotations

from .evaluator import EvalResult
from .predicates import predicate_to_text
from .ra import (
    CrossProduct,
    Join,
    NodePath,
    Projection,
    RaExpr,
    Relation,
    Selection,
    children,
    kind_of,
)


def to_unicode(expr: RaExpr) -> str:
    """Linear form with σ, π, ⋈ and × and braced subscripts."""
    if isinstance(expr, Relation):
        return _relation_text(expr)
    if isinstance(expr, Selection):
        return f"σ_{{{predicate_to_text(expr.predicate)}}}({to_unicode(expr.child)})"
    if isinstance(expr, Projection):
        columns = ", ".join(str(c) for c in expr.columns)
        return f"π_{{{columns}}}({to_unicode(expr.child)})"
    if isinstance(expr, Join):
        left = _operand_text(expr.left, to_unicode)
        right = _operand_text(expr.right, to_unicode)
        return f"{left} ⋈_{{{predicate_to_text(expr.predicate)}}} {right}"
    if isinstance(expr, CrossProduct):
        return f"{_operand_text(expr.left, to_unicode)} × {_operand_text(expr.right, to_unicode)}"
    raise TypeError(f"not an algebra node: {expr!r}")


def to_latex(expr: RaExpr) -> str:
    """Same structure as to_unicode with LaTeX operator macros."""
    if isinstance(expr, Relation):
        return _relation_text(expr)
    if isinstance(expr, Selection):
        return f"\\sigma_{{{predicate_to_text(expr.predicate)}}}({to_latex(expr.child)})"
    if isinstance(expr, Projection):
        columns = ", ".join(str(c) for c in expr.columns)
        return f"\\pi_{{{columns}}}({to_latex(expr.child)})"
    if isinstance(expr, Join):
        left = _operand_text(expr.left, to_latex)
        right = _operand_text(expr.right, to_latex)
        return f"{left} \\bowtie_{{{predicate_to_text(expr.predicate)}}} {right}"
    if isinstance(expr, CrossProduct):
        return f"{_operand_text(expr.left, to_latex)} \\times {_operand_text(expr.right, to_latex)}"
    raise TypeError(f"not an algebra node: {expr!r}")


def node_label(expr: RaExpr) -> str:
    """Short operator label shown on a single tree node."""
    if isinstance(expr, Relation):
        return _relation_text(expr)
    if isinstance(expr, Selection):
        return f"σ {predicate_to_text(expr.predicate)}"
    if isinstance(expr, Projection):
        return "π " + ", ".join(str(c) for c in expr.columns)
    if isinstance(expr, Join):
        return f"⋈ {predicate_to_text(expr.predicate)}"
    if isinstance(expr, CrossProduct):
        return "×"
    raise TypeError(f"not an algebra node: {expr!r}")


def to_tree_json(expr: RaExpr, results: list[EvalResult] | None = None) -> dict:
    """Recursive {kind, label, path, cardinality?, children} objects.

    Paths match node addressing everywhere else; cardinalities appear
    when per-node results are supplied.
    """
    cardinalities = None
    if results is not None:
        cardinalities = {result.path: result.cardinality for result in results}
    return _tree_json(expr, (), cardinalities)


def _tree_json(expr: RaExpr, path: NodePath, cardinalities: dict | None) -> dict:
    node: dict = {
        "kind": kind_of(expr),
        "label": node_label(expr),
        "path": list(path),
    }
    if cardinalities is not None:
        node["cardinality"] = cardinalities[path]
    node["children"] = [
        _tree_json(child, path + (i,), cardinalities)
        for i, child in enumerate(children(expr))
    ]
    return node


def to_text_tree(expr: RaExpr, results: list[EvalResult] | None = None) -> str:
    """Indented one-node-per-line tree with paths and row counts."""
    cardinalities = None
    if results is not None:
        cardinalities = {result.path: result.cardinality for result in results}
    lines: list[str] = []

    def walk(node: RaExpr, path: NodePath, depth: int) -> None:
        path_text = ".".join(str(i) for i in path)
        suffix = f'(path: "{path_text}")'
        if cardinalities is not None:
            suffix = f'(path: "{path_text}", rows: {cardinalities[path]})'
        lines.append(f"{'  ' * depth}{node_label(node)}  {suffix}")
        for i, child in enumerate(children(node)):
            walk(child, path + (i,), depth + 1)

    walk(expr, (), 0)
    return "\n".join(lines)


def _relation_text(expr: Relation) -> str:
    if expr.alias is not None:
        return f"{expr.name} AS {expr.alias}"
    return expr.name


def _operand_text(child: RaExpr, renderer) -> str:
    text = renderer(child)
    if isinstance(child, (Join, CrossProduct)):
        return f"({text})"
    return text
