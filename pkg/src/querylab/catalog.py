"""The bundled seed dataset and read access to its relations.

The catalog is a fixed three-relation hospital schema with two foreign
keys, which is just enough data for every interesting join chain while
keeping intermediate results small enough to display in full.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Union

from .errors import UnknownRelation

Value = Union[int, str]


class AttributeType(Enum):
    INTEGER = "Integer"
    TEXT = "Text"

    def accepts(self, value: Value) -> bool:
        if self is AttributeType.INTEGER:
            # bool is an int subclass but never a legal column value
            return isinstance(value, int) and not isinstance(value, bool)
        return isinstance(value, str)


@dataclass(frozen=True)
class Schema:
    """Ordered, uniquely named attributes of one relation."""

    relation_name: str
    attributes: tuple[tuple[str, AttributeType], ...]

    def __post_init__(self):
        names = [name for name, _ in self.attributes]
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate attribute names in {self.relation_name}")

    def attribute_names(self) -> list[str]:
        return [name for name, _ in self.attributes]


@dataclass(frozen=True)
class ForeignKey:
    from_relation: str
    from_attribute: str
    to_relation: str
    to_attribute: str


@dataclass(frozen=True)
class Table:
    """A schema plus an ordered multiset of rows.

    Row order is deterministic and preserved by every operation so that
    displayed intermediate results are stable across runs.
    """

    schema: Schema
    rows: tuple[tuple[Value, ...], ...]

    def __post_init__(self):
        width = len(self.schema.attributes)
        for row in self.rows:
            if len(row) != width:
                raise ValueError(
                    f"row {row!r} has {len(row)} values, schema "
                    f"{self.schema.relation_name!r} has {width} attributes"
                )
            for value, (name, attr_type) in zip(row, self.schema.attributes):
                if not attr_type.accepts(value):
                    raise ValueError(
                        f"value {value!r} does not match {attr_type.value} "
                        f"attribute {name!r}"
                    )

    @property
    def cardinality(self) -> int:
        return len(self.rows)


@dataclass(frozen=True)
class Catalog:
    """Immutable set of named relations plus foreign-key metadata."""

    relations: dict[str, Table]
    foreign_keys: tuple[ForeignKey, ...]

    def __post_init__(self):
        for fk in self.foreign_keys:
            _check_foreign_key(self, fk)


def _check_foreign_key(catalog: Catalog, fk: ForeignKey) -> None:
    from_values = _column_values(catalog, fk.from_relation, fk.from_attribute)
    to_values = _column_values(catalog, fk.to_relation, fk.to_attribute)
    missing = set(from_values) - set(to_values)
    if missing:
        raise ValueError(
            f"foreign key {fk.from_relation}.{fk.from_attribute} -> "
            f"{fk.to_relation}.{fk.to_attribute} has dangling values {sorted(missing)}"
        )


def _column_values(catalog: Catalog, relation: str, attribute: str) -> list[Value]:
    table = catalog.relations[relation]
    index = table.schema.attribute_names().index(attribute)
    return [row[index] for row in table.rows]


INT = AttributeType.INTEGER
TEXT = AttributeType.TEXT


def _table(name: str, columns: list[tuple[str, AttributeType]], rows) -> Table:
    return Table(Schema(name, tuple(columns)), tuple(tuple(r) for r in rows))


def load_catalog() -> Catalog:
    """Build the seed catalog. Deterministic; same data every call."""
    department = _table(
        "Department",
        [("id", INT), ("name", TEXT)],
        [(1, "Cardiology"), (2, "Neurology"), (3, "Oncology")],
    )
    doctor = _table(
        "Doctor",
        [("id", INT), ("name", TEXT), ("departmentId", INT)],
        [(10, "Alice", 1), (11, "Bob", 1), (12, "Carol", 2)],
    )
    patient = _table(
        "Patient",
        [("id", INT), ("name", TEXT), ("doctorId", INT)],
        [(100, "Dan", 10), (101, "Eve", 10), (102, "Fay", 12), (103, "Gus", 11)],
    )
    return Catalog(
        relations={t.schema.relation_name: t for t in (department, doctor, patient)},
        foreign_keys=(
            ForeignKey("Doctor", "departmentId", "Department", "id"),
            ForeignKey("Patient", "doctorId", "Doctor", "id"),
        ),
    )


def relation_schema(catalog: Catalog, name: str) -> Schema:
    """Schema of a relation; lookup is case-sensitive."""
    return scan(catalog, name).schema


def scan(catalog: Catalog, name: str) -> Table:
    """Full contents of a relation, in seed order. Treat as read-only."""
    try:
        return catalog.relations[name]
    except KeyError:
        raise UnknownRelation(f"unknown relation {name!r}") from None


def catalog_to_dict(catalog: Catalog) -> dict:
    """JSON-ready export, the shape served by the relation-browser endpoint."""
    return {
        "relations": [
            {
                "name": table.schema.relation_name,
                "attributes": [
                    {"name": name, "type": attr_type.value}
                    for name, attr_type in table.schema.attributes
                ],
                "rows": [list(row) for row in table.rows],
            }
            for table in catalog.relations.values()
        ],
        "foreign_keys": [
            {
                "from_relation": fk.from_relation,
                "from_attribute": fk.from_attribute,
                "to_relation": fk.to_relation,
                "to_attribute": fk.to_attribute,
            }
            for fk in catalog.foreign_keys
        ],
    }
