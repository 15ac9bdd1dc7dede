"""Seeded random SPJ query corpus over the seed schema.

Queries are built as ASTs, so they are valid and bindable by
construction: join chains follow the catalog's foreign keys, comma
joins alias repeated relations, every comparison is type-correct, and
unqualified references are only emitted where the attribute is unique.
"""

from __future__ import annotations

import random

from querylab.catalog import AttributeType, Catalog, load_catalog
from querylab.predicates import (
    And,
    ColumnRef,
    Comparison,
    IntLiteral,
    Not,
    Or,
    Predicate,
    StrLiteral,
)
from querylab.sql_frontend import FromClause, FromItem, JoinKind, SqlQuery, Star, TableRef

DEFAULT_SEED = 20260809

COMPARISON_OPS = ("=", "<>", "<", "<=", ">", ">=")

# Literal pools include values missing from the data so selections can
# come up empty or partial.
EXTRA_INTS = (0, 5, 7, 99)
EXTRA_TEXTS = ("Zoe", "Cardiology", "")


class _SchemaInfo:
    def __init__(self, catalog: Catalog):
        self.columns: dict[str, list[tuple[str, AttributeType]]] = {}
        self.values: dict[tuple[str, str], list] = {}
        for name, table in catalog.relations.items():
            self.columns[name] = list(table.schema.attributes)
            for i, (attr, _) in enumerate(table.schema.attributes):
                self.values[(name, attr)] = [row[i] for row in table.rows]
        # (child relation, child attr, parent relation, parent attr)
        self.fk_edges = [
            (fk.from_relation, fk.from_attribute, fk.to_relation, fk.to_attribute)
            for fk in catalog.foreign_keys
        ]


def corpus(count: int = 200, seed: int = DEFAULT_SEED) -> list[SqlQuery]:
    """Deterministic list of generated queries."""
    rng = random.Random(seed)
    info = _SchemaInfo(load_catalog())
    return [random_query(rng, info) for _ in range(count)]


def random_query(rng: random.Random, info: _SchemaInfo) -> SqlQuery:
    from_clause, tables = _random_from(rng, info)
    visible = _visible_columns(tables, info)
    where = _random_predicate(rng, info, visible, depth=3) if rng.random() < 0.75 else None
    select_list = _random_select(rng, visible)
    return SqlQuery(select_list, from_clause, where)


# -- FROM shapes


def _random_from(rng, info) -> tuple[FromClause, list[tuple[str, str]]]:
    """A from clause plus its (qualifier, relation) tables in order."""
    roll = rng.random()
    if roll < 0.20:
        return _single_relation(rng, info)
    if roll < 0.60:
        return _fk_join_chain(rng, info)
    if roll < 0.70:
        return _self_join(rng, info)
    return _comma_join(rng, info)


def _single_relation(rng, info):
    relation = rng.choice(sorted(info.columns))
    ref, qualifier = _table_ref(rng, relation, set())
    return FromClause(ref), [(qualifier, relation)]


def _fk_join_chain(rng, info):
    length = rng.choice((2, 2, 3))
    relations = sorted(info.columns)
    start = rng.choice(relations)
    chain = [start]
    edges_used = []
    while len(chain) < length:
        options = []
        for child, child_attr, parent, parent_attr in info.fk_edges:
            if child in chain and parent not in chain:
                options.append((parent, (child, child_attr, parent, parent_attr)))
            if parent in chain and child not in chain:
                options.append((child, (child, child_attr, parent, parent_attr)))
        if not options:
            break
        table, edge = rng.choice(options)
        chain.append(table)
        edges_used.append(edge)

    taken: set[str] = set()
    refs: list[TableRef] = []
    qualifier_of: dict[str, str] = {}
    for relation in chain:
        ref, qualifier = _table_ref(rng, relation, taken)
        taken.add(qualifier)
        refs.append(ref)
        qualifier_of[relation] = qualifier

    joins = []
    for i, relation in enumerate(chain[1:], start=1):
        child, child_attr, parent, parent_attr = edges_used[i - 1]
        left = ColumnRef(qualifier_of[child], child_attr)
        right = ColumnRef(qualifier_of[parent], parent_attr)
        if rng.random() < 0.5:
            left, right = right, left
        joins.append(FromItem(JoinKind.INNER_JOIN_ON, refs[i], Comparison(left, "=", right)))
    tables = [(qualifier_of[relation], relation) for relation in chain]
    return FromClause(refs[0], tuple(joins)), tables


def _self_join(rng, info):
    relation = rng.choice(sorted(info.columns))
    first = TableRef(relation, "a")
    second = TableRef(relation, "b")
    attr, _ = rng.choice(info.columns[relation])
    on = Comparison(ColumnRef("a", attr), rng.choice(("=", "<", "<>")), ColumnRef("b", attr))
    joins = (FromItem(JoinKind.INNER_JOIN_ON, second, on),)
    return FromClause(first, joins), [("a", relation), ("b", relation)]


def _comma_join(rng, info):
    count = rng.choice((2, 2, 3))
    relations = [rng.choice(sorted(info.columns)) for _ in range(count)]
    taken: set[str] = set()
    refs = []
    tables = []
    for relation in relations:
        ref, qualifier = _table_ref(rng, relation, taken)
        taken.add(qualifier)
        refs.append(ref)
        tables.append((qualifier, relation))
    joins = tuple(FromItem(JoinKind.COMMA, ref) for ref in refs[1:])
    return FromClause(refs[0], joins), tables


def _table_ref(rng, relation: str, taken: set[str]):
    use_alias = relation in taken or rng.random() < 0.25
    if not use_alias:
        return TableRef(relation), relation
    base = relation[0].lower()
    alias = base
    n = 1
    while alias in taken or alias == relation:
        n += 1
        alias = f"{base}{n}"
    return TableRef(relation, alias), alias


# -- predicates and select lists


def _visible_columns(tables, info) -> list[tuple[str, str, AttributeType, str]]:
    """(qualifier, attribute, type, relation) for every visible column."""
    out = []
    for qualifier, relation in tables:
        for attr, attr_type in info.columns[relation]:
            out.append((qualifier, attr, attr_type, relation))
    return out


def _random_predicate(rng, info, visible, depth: int) -> Predicate:
    if depth == 0 or rng.random() < 0.45:
        return _random_comparison(rng, info, visible)
    roll = rng.random()
    if roll < 0.40:
        return And(
            _random_predicate(rng, info, visible, depth - 1),
            _random_predicate(rng, info, visible, depth - 1),
        )
    if roll < 0.75:
        return Or(
            _random_predicate(rng, info, visible, depth - 1),
            _random_predicate(rng, info, visible, depth - 1),
        )
    return Not(_random_predicate(rng, info, visible, depth - 1))


def _random_comparison(rng, info, visible) -> Comparison:
    if rng.random() < 0.04:
        # constant predicate with no column references
        value = rng.choice((1, 2))
        return Comparison(IntLiteral(value), rng.choice(("=", "<>")), IntLiteral(1))
    qualifier, attr, attr_type, relation = rng.choice(visible)
    left = ColumnRef(qualifier, attr)
    op = rng.choice(COMPARISON_OPS)
    same_type = [c for c in visible if c[2] is attr_type]
    if rng.random() < 0.25 and same_type:
        other = rng.choice(same_type)
        right = ColumnRef(other[0], other[1])
        return Comparison(left, op, right)
    if attr_type is AttributeType.INTEGER:
        pool = list(info.values[(relation, attr)]) + list(EXTRA_INTS)
        right = IntLiteral(rng.choice(pool))
    else:
        pool = list(info.values[(relation, attr)]) + list(EXTRA_TEXTS)
        right = StrLiteral(rng.choice(pool))
    if rng.random() < 0.15:
        return Comparison(right, op, left)
    return Comparison(left, op, right)


def _random_select(rng, visible):
    if rng.random() < 0.30:
        return Star()
    count = rng.randint(1, min(4, len(visible)))
    picks = rng.sample(visible, count)
    columns = []
    attribute_counts: dict[str, int] = {}
    for _, attr, _, _ in visible:
        attribute_counts[attr] = attribute_counts.get(attr, 0) + 1
    for qualifier, attr, _, _ in picks:
        if attribute_counts[attr] == 1 and rng.random() < 0.30:
            columns.append(ColumnRef(None, attr))
        else:
            columns.append(ColumnRef(qualifier, attr))
    # duplicate projected columns are rejected at bind time; dedupe
    seen = set()
    unique = []
    for ref in columns:
        key = (ref.qualifier, ref.attribute)
        if key not in seen:
            seen.add(key)
            unique.append(ref)
    return tuple(unique)
