"""Boolean predicate trees shared by the SQL AST and the algebra tree.

A predicate is a binary tree of AND/OR/NOT nodes over comparisons between
column references and literals. Logic is strictly two-valued: there are no
NULLs anywhere in the engine.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Union

from .errors import Position

COMPARISON_OPS = ("=", "<>", "<", "<=", ">", ">=")


@dataclass(frozen=True)
class ColumnRef:
    """A possibly qualified column name. ``pos`` never affects equality."""

    qualifier: str | None
    attribute: str
    pos: Position | None = field(default=None, compare=False)

    def __str__(self) -> str:
        if self.qualifier is None:
            return self.attribute
        return f"{self.qualifier}.{self.attribute}"


@dataclass(frozen=True)
class IntLiteral:
    value: int

    def __str__(self) -> str:
        return str(self.value)


@dataclass(frozen=True)
class StrLiteral:
    value: str

    def __str__(self) -> str:
        return quote_string(self.value)


Operand = Union[ColumnRef, IntLiteral, StrLiteral]


@dataclass(frozen=True)
class Comparison:
    left: Operand
    op: str
    right: Operand
    pos: Position | None = field(default=None, compare=False)

    def __post_init__(self):
        if self.op not in COMPARISON_OPS:
            raise ValueError(f"unknown comparison operator {self.op!r}")


@dataclass(frozen=True)
class And:
    left: "Predicate"
    right: "Predicate"


@dataclass(frozen=True)
class Or:
    left: "Predicate"
    right: "Predicate"


@dataclass(frozen=True)
class Not:
    child: "Predicate"


Predicate = Union[Comparison, And, Or, Not]


def quote_string(text: str) -> str:
    """Single-quoted SQL form with '' escaping embedded quotes."""
    return "'" + text.replace("'", "''") + "'"


def column_refs(p: Predicate) -> list[ColumnRef]:
    """All column references in p, left to right."""
    if isinstance(p, Comparison):
        return [o for o in (p.left, p.right) if isinstance(o, ColumnRef)]
    if isinstance(p, (And, Or)):
        return column_refs(p.left) + column_refs(p.right)
    if isinstance(p, Not):
        return column_refs(p.child)
    raise TypeError(f"not a predicate node: {p!r}")


def map_columns(p: Predicate, fn: Callable[[ColumnRef], ColumnRef]) -> Predicate:
    """Rebuild p with fn applied to every column reference."""
    if isinstance(p, Comparison):
        left = fn(p.left) if isinstance(p.left, ColumnRef) else p.left
        right = fn(p.right) if isinstance(p.right, ColumnRef) else p.right
        return Comparison(left, p.op, right, pos=p.pos)
    if isinstance(p, And):
        return And(map_columns(p.left, fn), map_columns(p.right, fn))
    if isinstance(p, Or):
        return Or(map_columns(p.left, fn), map_columns(p.right, fn))
    if isinstance(p, Not):
        return Not(map_columns(p.child, fn))
    raise TypeError(f"not a predicate node: {p!r}")


def comparisons(p: Predicate) -> list[Comparison]:
    """All comparison leaves in p, left to right."""
    if isinstance(p, Comparison):
        return [p]
    if isinstance(p, (And, Or)):
        return comparisons(p.left) + comparisons(p.right)
    if isinstance(p, Not):
        return comparisons(p.child)
    raise TypeError(f"not a predicate node: {p!r}")


# Precedence levels used for minimal parenthesization. Comparisons bind
# tighter than NOT, NOT tighter than AND, AND tighter than OR.
_PREC_OR = 1
_PREC_AND = 2
_PREC_NOT = 3
_PREC_CMP = 4


def _precedence(p: Predicate) -> int:
    if isinstance(p, Or):
        return _PREC_OR
    if isinstance(p, And):
        return _PREC_AND
    if isinstance(p, Not):
        return _PREC_NOT
    return _PREC_CMP


def predicate_to_text(p: Predicate) -> str:
    """Deterministic infix rendering with minimal parentheses.

    AND and OR associate to the left, so a right child at the same
    precedence level keeps its parentheses; reparsing the output yields a
    structurally identical tree.
    """
    if isinstance(p, Comparison):
        return f"{p.left} {p.op} {p.right}"
    if isinstance(p, (And, Or)):
        keyword = "AND" if isinstance(p, And) else "OR"
        prec = _precedence(p)
        left = _wrap(p.left, prec, allow_equal=True)
        right = _wrap(p.right, prec, allow_equal=False)
        return f"{left} {keyword} {right}"
    if isinstance(p, Not):
        if isinstance(p.child, Comparison):
            return f"NOT {predicate_to_text(p.child)}"
        return f"NOT ({predicate_to_text(p.child)})"
    raise TypeError(f"not a predicate node: {p!r}")


def _wrap(child: Predicate, parent_prec: int, allow_equal: bool) -> str:
    text = predicate_to_text(child)
    child_prec = _precedence(child)
    if child_prec < parent_prec or (child_prec == parent_prec and not allow_equal):
        return f"({text})"
    return text
