"""Canonical translation of a parsed query into an algebra tree.

The shape is fixed so the optimization toggle has something visible to
do: FROM items fold left to right into a join/cross-product spine, the
whole WHERE clause becomes a single selection above it, and the select
list becomes a projection on top. SELECT * adds no projection node.
No rewriting happens here; that is the optimizer's job.
"""

from __future__ import annotations

from .catalog import Catalog
from .errors import DuplicateQualifier, UnknownRelation
from .predicates import ColumnRef, Predicate, map_columns
from .ra import (
    BoundSchema,
    CrossProduct,
    Join,
    Projection,
    RaExpr,
    Relation,
    Selection,
    check_predicate,
    infer_schema,
    resolve_column,
)
from .sql_frontend import FromClause, FromItem, JoinKind, SqlQuery, Star, TableRef


def bind(query: SqlQuery, catalog: Catalog) -> SqlQuery:
    """Qualify every column reference and type-check every comparison.

    ON predicates resolve against the tables joined so far, left to
    right; the WHERE clause and the select list see the whole FROM
    clause.
    """
    refs = query.from_clause.table_refs()
    seen: set[str] = set()
    for ref in refs:
        if ref.relation not in catalog.relations:
            raise UnknownRelation(f"unknown relation {ref.relation!r}", ref.pos)
        if ref.qualifier in seen:
            raise DuplicateQualifier(f"duplicate qualifier {ref.qualifier!r}", ref.pos)
        seen.add(ref.qualifier)

    schema = list(_leaf_schema(catalog, query.from_clause.head))
    bound_joins: list[FromItem] = []
    for item in query.from_clause.joins:
        schema.extend(_leaf_schema(catalog, item.table))
        if item.kind is JoinKind.INNER_JOIN_ON:
            on = _bind_predicate(item.on, tuple(schema))
            bound_joins.append(FromItem(item.kind, item.table, on))
        else:
            bound_joins.append(item)

    full = tuple(schema)
    where = _bind_predicate(query.where, full) if query.where is not None else None
    if isinstance(query.select_list, Star):
        select_list: Star | tuple[ColumnRef, ...] = query.select_list
    else:
        select_list = tuple(_qualify(ref, full) for ref in query.select_list)
    return SqlQuery(select_list, FromClause(query.from_clause.head, tuple(bound_joins)), where)


def translate(query: SqlQuery, catalog: Catalog) -> RaExpr:
    """Bind the query, then build the canonical expression tree."""
    bound = bind(query, catalog)
    expr: RaExpr = _leaf(bound.from_clause.head)
    for item in bound.from_clause.joins:
        right = _leaf(item.table)
        if item.kind is JoinKind.COMMA:
            expr = CrossProduct(expr, right)
        else:
            expr = Join(item.on, expr, right)
    if bound.where is not None:
        expr = Selection(bound.where, expr)
    if not isinstance(bound.select_list, Star):
        expr = Projection(bound.select_list, expr)
    return expr


def _leaf(ref: TableRef) -> Relation:
    return Relation(ref.relation, ref.alias)


def _leaf_schema(catalog: Catalog, ref: TableRef) -> BoundSchema:
    return infer_schema(_leaf(ref), catalog)


def _qualify(ref: ColumnRef, schema: BoundSchema) -> ColumnRef:
    column = schema[resolve_column(schema, ref)]
    return ColumnRef(column.qualifier, column.attribute, pos=ref.pos)


def _bind_predicate(p: Predicate, schema: BoundSchema) -> Predicate:
    bound = map_columns(p, lambda ref: _qualify(ref, schema))
    check_predicate(bound, schema)
    return bound
