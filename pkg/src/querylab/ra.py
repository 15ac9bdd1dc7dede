"""Relational algebra expression trees.

Node kinds mirror the operators students see on screen: selection,
projection, theta-join and cross product over base relation leaves.
Every node is an immutable value; rewrites build new trees.

A NodePath addresses a subexpression as the sequence of child indices
from the root, so the UI can highlight any node and ask for its rows.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from .catalog import AttributeType, Catalog, relation_schema
from .errors import (
    AmbiguousColumn,
    BindError,
    DuplicateQualifier,
    InvalidPath,
    TypeMismatch,
    UnknownColumn,
)
from .predicates import (
    ColumnRef,
    IntLiteral,
    Operand,
    Predicate,
    StrLiteral,
    column_refs,
    comparisons,
)


@dataclass(frozen=True)
class Relation:
    """Base relation scan; the alias, when set, renames the qualifier."""

    name: str
    alias: str | None = None

    @property
    def qualifier(self) -> str:
        return self.alias if self.alias is not None else self.name


@dataclass(frozen=True)
class Selection:
    predicate: Predicate
    child: "RaExpr"


@dataclass(frozen=True)
class Projection:
    columns: tuple[ColumnRef, ...]
    child: "RaExpr"


@dataclass(frozen=True)
class Join:
    predicate: Predicate
    left: "RaExpr"
    right: "RaExpr"


@dataclass(frozen=True)
class CrossProduct:
    left: "RaExpr"
    right: "RaExpr"


RaExpr = Union[Relation, Selection, Projection, Join, CrossProduct]

NodePath = tuple[int, ...]


def kind_of(expr: RaExpr) -> str:
    if isinstance(expr, Relation):
        return "relation"
    if isinstance(expr, Selection):
        return "selection"
    if isinstance(expr, Projection):
        return "projection"
    if isinstance(expr, Join):
        return "join"
    if isinstance(expr, CrossProduct):
        return "cross"
    raise TypeError(f"not an algebra node: {expr!r}")


def children(expr: RaExpr) -> tuple[RaExpr, ...]:
    if isinstance(expr, Relation):
        return ()
    if isinstance(expr, (Selection, Projection)):
        return (expr.child,)
    return (expr.left, expr.right)


def with_children(expr: RaExpr, new_children: tuple[RaExpr, ...]) -> RaExpr:
    """Copy of expr with its children replaced (arity must match)."""
    if isinstance(expr, Relation):
        if new_children:
            raise ValueError("relation leaves have no children")
        return expr
    if isinstance(expr, Selection):
        (child,) = new_children
        return Selection(expr.predicate, child)
    if isinstance(expr, Projection):
        (child,) = new_children
        return Projection(expr.columns, child)
    if isinstance(expr, Join):
        left, right = new_children
        return Join(expr.predicate, left, right)
    left, right = new_children
    return CrossProduct(left, right)


def node_at(expr: RaExpr, path: NodePath) -> RaExpr:
    """Subtree addressed by path; the root for the empty path."""
    node = expr
    for depth, index in enumerate(path):
        kids = children(node)
        if not 0 <= index < len(kids):
            raise InvalidPath(f"no child {index} at {tuple(path[:depth])}")
        node = kids[index]
    return node


def replace_at(expr: RaExpr, path: NodePath, replacement: RaExpr) -> RaExpr:
    """New tree with the node at path swapped for replacement."""
    if not path:
        return replacement
    index = path[0]
    kids = children(expr)
    if not 0 <= index < len(kids):
        raise InvalidPath(f"no child {index}")
    new_kids = list(kids)
    new_kids[index] = replace_at(kids[index], path[1:], replacement)
    return with_children(expr, tuple(new_kids))


def enumerate_nodes(expr: RaExpr) -> list[tuple[NodePath, str]]:
    """Pre-order (path, kind) listing: parent first, left before right."""
    out: list[tuple[NodePath, str]] = []

    def walk(node: RaExpr, path: NodePath) -> None:
        out.append((path, kind_of(node)))
        for i, child in enumerate(children(node)):
            walk(child, path + (i,))

    walk(expr, ())
    return out


def node_count(expr: RaExpr) -> int:
    return 1 + sum(node_count(c) for c in children(expr))


def qualifiers(expr: RaExpr) -> set[str]:
    """Qualifiers visible in the expression's output schema."""
    if isinstance(expr, Relation):
        return {expr.qualifier}
    if isinstance(expr, Projection):
        return {c.qualifier for c in expr.columns if c.qualifier is not None}
    return set().union(*(qualifiers(c) for c in children(expr)))


def predicate_columns(p: Predicate) -> set[tuple[str, str]]:
    """Set of (qualifier, attribute) pairs referenced by a bound predicate."""
    refs = column_refs(p)
    for ref in refs:
        if ref.qualifier is None:
            raise ValueError(f"unqualified column {ref.attribute!r} in bound predicate")
    return {(ref.qualifier, ref.attribute) for ref in refs}


# ---------------------------------------------------------------------------
# Bound schemas and static checking


@dataclass(frozen=True)
class BoundColumn:
    qualifier: str
    attribute: str
    type: AttributeType

    def __str__(self) -> str:
        return f"{self.qualifier}.{self.attribute}"


BoundSchema = tuple[BoundColumn, ...]


def resolve_column(schema: BoundSchema, ref: ColumnRef) -> int:
    """Index of the column ref in schema; unqualified refs must be unique."""
    if ref.qualifier is not None:
        for i, col in enumerate(schema):
            if col.qualifier == ref.qualifier and col.attribute == ref.attribute:
                return i
        raise UnknownColumn(f"unknown column {ref}", ref.pos)
    matches = [i for i, col in enumerate(schema) if col.attribute == ref.attribute]
    if not matches:
        raise UnknownColumn(f"unknown column {ref.attribute!r}", ref.pos)
    if len(matches) > 1:
        candidates = ", ".join(str(schema[i]) for i in matches)
        raise AmbiguousColumn(
            f"ambiguous column {ref.attribute!r} (candidates: {candidates})", ref.pos
        )
    return matches[0]


def operand_type(operand: Operand, schema: BoundSchema) -> AttributeType:
    if isinstance(operand, IntLiteral):
        return AttributeType.INTEGER
    if isinstance(operand, StrLiteral):
        return AttributeType.TEXT
    return schema[resolve_column(schema, operand)].type


def check_predicate(p: Predicate, schema: BoundSchema) -> None:
    """Resolve every column and type-check every comparison against schema."""
    for cmp in comparisons(p):
        left = operand_type(cmp.left, schema)
        right = operand_type(cmp.right, schema)
        if left is not right:
            raise TypeMismatch(
                f"cannot compare {left.value} with {right.value} using {cmp.op!r}",
                cmp.pos,
            )


def infer_schema(expr: RaExpr, catalog: Catalog) -> BoundSchema:
    """Output schema of expr, checking names, qualifiers and types.

    Inference is compositional: each node's schema depends only on its
    children's schemas and its own predicate or column list.
    """
    if isinstance(expr, Relation):
        schema = relation_schema(catalog, expr.name)
        return tuple(
            BoundColumn(expr.qualifier, name, attr_type)
            for name, attr_type in schema.attributes
        )
    if isinstance(expr, Selection):
        child = infer_schema(expr.child, catalog)
        check_predicate(expr.predicate, child)
        return child
    if isinstance(expr, Projection):
        child = infer_schema(expr.child, catalog)
        out: list[BoundColumn] = []
        for ref in expr.columns:
            col = child[resolve_column(child, ref)]
            if col in out:
                raise BindError(f"duplicate column {col} in projection", ref.pos)
            out.append(col)
        return tuple(out)
    if isinstance(expr, (Join, CrossProduct)):
        left = infer_schema(expr.left, catalog)
        right = infer_schema(expr.right, catalog)
        shared = {c.qualifier for c in left} & {c.qualifier for c in right}
        if shared:
            raise DuplicateQualifier(
                f"qualifier {sorted(shared)[0]!r} appears on both sides"
            )
        combined = left + right
        if isinstance(expr, Join):
            check_predicate(expr.predicate, combined)
        return combined
    raise TypeError(f"not an algebra node: {expr!r}")
