"""querylab: explore SQL queries as relational algebra, step by step.

Parse a small select-project-join SQL subset, translate it into an
algebra expression tree, evaluate every subexpression over a bundled
sample catalog, and optionally push selection predicates past joins.
"""

from .catalog import (
    AttributeType,
    Catalog,
    ForeignKey,
    Schema,
    Table,
    catalog_to_dict,
    load_catalog,
    relation_schema,
    scan,
)
from .errors import (
    AmbiguousColumn,
    BindError,
    DuplicateQualifier,
    InvalidPath,
    LexError,
    ParseError,
    QueryError,
    TypeMismatch,
    UnknownColumn,
    UnknownRelation,
)
from .evaluator import EvalResult, eval_predicate, evaluate, evaluate_all
from .optimizer import (
    RewriteRule,
    RewriteStep,
    optimize,
    push_down_selections,
    split_conjunctions,
)
from .pipeline import QueryRun, run_query
from .predicates import (
    And,
    ColumnRef,
    Comparison,
    IntLiteral,
    Not,
    Or,
    Predicate,
    StrLiteral,
)
from .ra import (
    BoundColumn,
    BoundSchema,
    CrossProduct,
    Join,
    NodePath,
    Projection,
    RaExpr,
    Relation,
    Selection,
    enumerate_nodes,
    infer_schema,
    node_at,
    predicate_columns,
)
from .render import to_latex, to_text_tree, to_tree_json, to_unicode
from .sql_frontend import SqlQuery, Star, Token, TokenKind, parse, to_sql, tokenize
from .translator import bind, translate

__version__ = "0.1.0"

__all__ = [
    "AmbiguousColumn",
    "And",
    "AttributeType",
    "BindError",
    "BoundColumn",
    "BoundSchema",
    "Catalog",
    "ColumnRef",
    "Comparison",
    "CrossProduct",
    "DuplicateQualifier",
    "EvalResult",
    "ForeignKey",
    "IntLiteral",
    "InvalidPath",
    "Join",
    "LexError",
    "NodePath",
    "Not",
    "Or",
    "ParseError",
    "Predicate",
    "Projection",
    "QueryError",
    "QueryRun",
    "RaExpr",
    "Relation",
    "RewriteRule",
    "RewriteStep",
    "Schema",
    "Selection",
    "SqlQuery",
    "Star",
    "StrLiteral",
    "Table",
    "Token",
    "TokenKind",
    "TypeMismatch",
    "UnknownColumn",
    "UnknownRelation",
    "bind",
    "catalog_to_dict",
    "enumerate_nodes",
    "eval_predicate",
    "evaluate",
    "evaluate_all",
    "infer_schema",
    "load_catalog",
    "node_at",
    "optimize",
    "parse",
    "predicate_columns",
    "push_down_selections",
    "relation_schema",
    "run_query",
    "scan",
    "split_conjunctions",
    "to_latex",
    "to_sql",
    "to_text_tree",
    "to_tree_json",
    "to_unicode",
    "tokenize",
    "translate",
]
