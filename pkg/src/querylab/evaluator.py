"""Bag-semantics, nested-loop evaluation of algebra trees.

Duplicates are never eliminated, so algebra results match SQL results
tuple for tuple. Row order is fully specified: base relations scan in
seed order, selections and projections preserve their input order, and
binary nodes enumerate left-major (for each left row, every right row).
The dataset is tiny, so clarity and determinism beat speed throughout.
"""

from __future__ import annotations

from dataclasses import dataclass

from .catalog import Catalog, Schema, Table, Value, scan
from .predicates import And, Comparison, IntLiteral, Not, Operand, Or, Predicate, StrLiteral
from .ra import (
    BoundSchema,
    CrossProduct,
    Join,
    NodePath,
    Projection,
    RaExpr,
    Relation,
    Selection,
    children,
    infer_schema,
    resolve_column,
)

Row = tuple[Value, ...]


@dataclass(frozen=True)
class EvalResult:
    """Materialized table for the node at path."""

    path: NodePath
    schema: BoundSchema
    table: Table

    @property
    def cardinality(self) -> int:
        return len(self.table.rows)


def evaluate(expr: RaExpr, catalog: Catalog) -> Table:
    """Result table of the whole expression."""
    schema, rows = _evaluate_node(expr, catalog)
    return _result_table(schema, rows)


def evaluate_all(expr: RaExpr, catalog: Catalog) -> list[EvalResult]:
    """One result per node, in pre-order; each node is computed once.

    The root entry (empty path) equals evaluate() on the same tree.
    """
    _, results = _collect(expr, (), catalog)
    return results


def eval_predicate(p: Predicate, row: Row, schema: BoundSchema) -> bool:
    """Two-valued predicate evaluation over one row."""
    if isinstance(p, Comparison):
        return _compare(_value_of(p.left, row, schema), p.op, _value_of(p.right, row, schema))
    if isinstance(p, And):
        return eval_predicate(p.left, row, schema) and eval_predicate(p.right, row, schema)
    if isinstance(p, Or):
        return eval_predicate(p.left, row, schema) or eval_predicate(p.right, row, schema)
    if isinstance(p, Not):
        return not eval_predicate(p.child, row, schema)
    raise TypeError(f"not a predicate node: {p!r}")


def _value_of(operand: Operand, row: Row, schema: BoundSchema) -> Value:
    if isinstance(operand, IntLiteral):
        return operand.value
    if isinstance(operand, StrLiteral):
        return operand.value
    return row[resolve_column(schema, operand)]


def _compare(left: Value, op: str, right: Value) -> bool:
    if op == "=":
        return left == right
    if op == "<>":
        return left != right
    # Integers compare numerically, text by code point; binding guarantees
    # both sides have the same type.
    if op == "<":
        return left < right
    if op == "<=":
        return left <= right
    if op == ">":
        return left > right
    return left >= right


NodeData = tuple[BoundSchema, list[Row]]


def _evaluate_node(expr: RaExpr, catalog: Catalog) -> NodeData:
    kids = [_evaluate_node(child, catalog) for child in children(expr)]
    return _compute(expr, catalog, kids)


def _collect(
    expr: RaExpr, path: NodePath, catalog: Catalog
) -> tuple[NodeData, list[EvalResult]]:
    child_data: list[NodeData] = []
    child_results: list[EvalResult] = []
    for i, child in enumerate(children(expr)):
        data, sub = _collect(child, path + (i,), catalog)
        child_data.append(data)
        child_results.extend(sub)
    schema, rows = _compute(expr, catalog, child_data)
    result = EvalResult(path, schema, _result_table(schema, rows))
    return (schema, rows), [result] + child_results


def _compute(expr: RaExpr, catalog: Catalog, child_data: list[NodeData]) -> NodeData:
    """Rows of one node given its children's rows."""
    if isinstance(expr, Relation):
        schema = infer_schema(expr, catalog)
        return schema, list(scan(catalog, expr.name).rows)
    if isinstance(expr, Selection):
        (schema, rows), = child_data
        kept = [row for row in rows if eval_predicate(expr.predicate, row, schema)]
        return schema, kept
    if isinstance(expr, Projection):
        (schema, rows), = child_data
        indices = [resolve_column(schema, ref) for ref in expr.columns]
        out_schema = tuple(schema[i] for i in indices)
        return out_schema, [tuple(row[i] for i in indices) for row in rows]
    if isinstance(expr, CrossProduct):
        (left_schema, left_rows), (right_schema, right_rows) = child_data
        combined = left_schema + right_schema
        return combined, [l + r for l in left_rows for r in right_rows]
    if isinstance(expr, Join):
        (left_schema, left_rows), (right_schema, right_rows) = child_data
        combined = left_schema + right_schema
        rows = [
            l + r
            for l in left_rows
            for r in right_rows
            if eval_predicate(expr.predicate, l + r, combined)
        ]
        return combined, rows
    raise TypeError(f"not an algebra node: {expr!r}")


def _result_table(schema: BoundSchema, rows: list[Row]) -> Table:
    display = Schema("result", tuple((str(col), col.type) for col in schema))
    return Table(display, tuple(rows))
