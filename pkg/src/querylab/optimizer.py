"""Heuristic logical optimization of algebra trees.

Two rewrite rules run to a fixpoint:

1. SplitConjunction: a selection over AND becomes two stacked
   selections, exposing conjuncts that mention only one join input.
2. PushPast*: a selection whose columns all come from one input of a
   join or cross product below it moves onto that input. Stacked
   selections are transparent here, so a pushable conjunct can slide
   past selections that themselves have to stay.

Rules apply one at a time, always to the first matching node in
pre-order, which makes the rewrite trace deterministic and replayable.
Join conditions are never decomposed, joins are never reordered, and no
statistics are consulted; the only effect is that filters run earlier.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterator

from .predicates import And
from .ra import (
    CrossProduct,
    Join,
    NodePath,
    RaExpr,
    Selection,
    children,
    node_at,
    predicate_columns,
    qualifiers,
    replace_at,
)


class RewriteRule(Enum):
    SPLIT_CONJUNCTION = "SplitConjunction"
    PUSH_PAST_JOIN_LEFT = "PushPastJoinLeft"
    PUSH_PAST_JOIN_RIGHT = "PushPastJoinRight"
    PUSH_PAST_CROSS_LEFT = "PushPastCrossLeft"
    PUSH_PAST_CROSS_RIGHT = "PushPastCrossRight"


_LEFT_RULES = (RewriteRule.PUSH_PAST_JOIN_LEFT, RewriteRule.PUSH_PAST_CROSS_LEFT)


@dataclass(frozen=True)
class RewriteStep:
    rule: RewriteRule
    at: NodePath


RewriteTrace = list[RewriteStep]


def optimize(expr: RaExpr) -> tuple[RaExpr, RewriteTrace]:
    """Split conjunctions, then push selections down; combined trace."""
    split_expr, trace = split_conjunctions(expr)
    pushed_expr, push_trace = push_down_selections(split_expr)
    return pushed_expr, trace + push_trace


def split_conjunctions(expr: RaExpr) -> tuple[RaExpr, RewriteTrace]:
    """Rewrite every selection over AND into stacked selections.

    Splits outermost-first, so a left-leaning AND chain unwinds into one
    selection per conjunct. OR and NOT groups are never split.
    """
    trace: RewriteTrace = []
    while True:
        step = _find_split(expr)
        if step is None:
            return expr, trace
        expr = apply_step(expr, step)
        trace.append(step)


def push_down_selections(expr: RaExpr) -> tuple[RaExpr, RewriteTrace]:
    """Move selections past joins and cross products, to a fixpoint.

    A selection moves when its (nonempty) qualifier set is contained in
    one input of the first join or cross product below it. Constant
    predicates, and predicates spanning both inputs, stay put. Each step
    moves a selection strictly deeper, so the loop terminates.
    """
    trace: RewriteTrace = []
    while True:
        step = _find_push(expr)
        if step is None:
            return expr, trace
        expr = apply_step(expr, step)
        trace.append(step)


def apply_step(expr: RaExpr, step: RewriteStep) -> RaExpr:
    """Apply one trace step; replaying a trace reproduces the output."""
    node = node_at(expr, step.at)
    if not isinstance(node, Selection):
        raise ValueError(f"step {step.rule.value} targets a non-selection at {step.at}")
    if step.rule is RewriteRule.SPLIT_CONJUNCTION:
        if not isinstance(node.predicate, And):
            raise ValueError(f"no conjunction to split at {step.at}")
        replacement: RaExpr = Selection(
            node.predicate.left, Selection(node.predicate.right, node.child)
        )
    else:
        replacement = _pushed(node, step.rule)
    return replace_at(expr, step.at, replacement)


def replay(expr: RaExpr, trace: RewriteTrace) -> RaExpr:
    for step in trace:
        expr = apply_step(expr, step)
    return expr


def _pushed(selection: Selection, rule: RewriteRule) -> RaExpr:
    """Selection moved onto one input of the binary node below it.

    Selections between the moving one and the binary node stay in place
    and keep their order.
    """
    kept: list[Selection] = []
    node: RaExpr = selection.child
    while isinstance(node, Selection):
        kept.append(node)
        node = node.child
    if not isinstance(node, (Join, CrossProduct)):
        raise ValueError(f"no join or cross product under selection for {rule.value}")
    if rule in _LEFT_RULES:
        wrapped_left: RaExpr = Selection(selection.predicate, node.left)
        binary = _rebuild_binary(node, wrapped_left, node.right)
    else:
        wrapped_right: RaExpr = Selection(selection.predicate, node.right)
        binary = _rebuild_binary(node, node.left, wrapped_right)
    rebuilt: RaExpr = binary
    for inner in reversed(kept):
        rebuilt = Selection(inner.predicate, rebuilt)
    return rebuilt


def _rebuild_binary(node: Join | CrossProduct, left: RaExpr, right: RaExpr) -> RaExpr:
    if isinstance(node, Join):
        return Join(node.predicate, left, right)
    return CrossProduct(left, right)


def _iter_nodes(expr: RaExpr, path: NodePath = ()) -> Iterator[tuple[NodePath, RaExpr]]:
    yield path, expr
    for i, child in enumerate(children(expr)):
        yield from _iter_nodes(child, path + (i,))


def _find_split(expr: RaExpr) -> RewriteStep | None:
    for path, node in _iter_nodes(expr):
        if isinstance(node, Selection) and isinstance(node.predicate, And):
            return RewriteStep(RewriteRule.SPLIT_CONJUNCTION, path)
    return None


def _find_push(expr: RaExpr) -> RewriteStep | None:
    for path, node in _iter_nodes(expr):
        if not isinstance(node, Selection):
            continue
        target = node.child
        while isinstance(target, Selection):
            target = target.child
        if not isinstance(target, (Join, CrossProduct)):
            continue
        quals = {qualifier for qualifier, _ in predicate_columns(node.predicate)}
        if not quals:
            continue
        is_join = isinstance(target, Join)
        if quals <= qualifiers(target.left):
            rule = RewriteRule.PUSH_PAST_JOIN_LEFT if is_join else RewriteRule.PUSH_PAST_CROSS_LEFT
            return RewriteStep(rule, path)
        if quals <= qualifiers(target.right):
            rule = RewriteRule.PUSH_PAST_JOIN_RIGHT if is_join else RewriteRule.PUSH_PAST_CROSS_RIGHT
            return RewriteStep(rule, path)
    return None
