"""Lexer and recursive-descent parser for the supported SQL subset.

Grammar (EBNF):

    query      := "SELECT" selectList "FROM" fromList ["WHERE" pred]
    selectList := "*" | columnRef {"," columnRef}
    fromList   := tableRef {("," tableRef) | ("JOIN" tableRef "ON" pred)}
    tableRef   := identifier ["AS" identifier]
    columnRef  := [identifier "."] identifier
    pred       := orExpr
    orExpr     := andExpr {"OR" andExpr}
    andExpr    := notExpr {"AND" notExpr}
    notExpr    := ["NOT"] primary
    primary    := comparison | "(" pred ")"
    comparison := operand ("="|"<>"|"<"|"<="|">"|">=") operand
    operand    := columnRef | integerLiteral | stringLiteral

Keywords are case-insensitive; identifiers and string contents are
case-sensitive. String literals are single-quoted with '' escaping one
quote. JOIN is always an inner join; there are no outer-join keywords.

Queries have hard complexity limits (parenthesis nesting, predicate
size, FROM item count) so that arbitrarily adversarial input still
produces a positioned error instead of exhausting the interpreter
stack. The limits are far beyond anything a teaching query needs.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Union

from .errors import LexError, ParseError, Position
from .predicates import (
    And,
    ColumnRef,
    Comparison,
    IntLiteral,
    Not,
    Operand,
    Or,
    Predicate,
    StrLiteral,
    predicate_to_text,
    quote_string,
)

KEYWORDS = frozenset({"SELECT", "FROM", "WHERE", "JOIN", "ON", "AND", "OR", "NOT", "AS"})

SYMBOLS = ("<>", "<=", ">=", "*", ",", ".", "(", ")", "=", "<", ">")

# Complexity limits; exceeding any of them is a positioned ParseError.
MAX_PAREN_DEPTH = 80
MAX_PREDICATE_NODES = 300
MAX_FROM_ITEMS = 64


class TokenKind(Enum):
    KEYWORD = "Keyword"
    IDENTIFIER = "Identifier"
    INTEGER = "IntegerLiteral"
    STRING = "StringLiteral"
    SYMBOL = "Symbol"


@dataclass(frozen=True)
class Token:
    kind: TokenKind
    text: str
    position: Position

    def describe(self) -> str:
        if self.kind is TokenKind.STRING:
            return quote_string(self.text)
        return f"'{self.text}'"


def token_source(token: Token) -> str:
    """The source form of a token (string literals get requoted)."""
    if token.kind is TokenKind.STRING:
        return quote_string(token.text)
    return token.text


# ---------------------------------------------------------------------------
# Lexer


def tokenize(text: str) -> list[Token]:
    tokens, _ = _tokenize(text)
    return tokens


def _tokenize(text: str) -> tuple[list[Token], Position]:
    """Token stream plus the 1-based position just past the input."""
    tokens: list[Token] = []
    line, column = 1, 1
    i = 0
    n = len(text)

    def advance(count: int) -> None:
        nonlocal i, line, column
        for _ in range(count):
            if text[i] == "\n":
                line += 1
                column = 1
            else:
                column += 1
            i += 1

    while i < n:
        ch = text[i]
        if ch.isspace():
            advance(1)
            continue
        start = (line, column)
        if ch == "'":
            value, length = _scan_string(text, i, start)
            tokens.append(Token(TokenKind.STRING, value, start))
            advance(length)
            continue
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            tokens.append(Token(TokenKind.INTEGER, text[i:j], start))
            advance(j - i)
            continue
        if ch.isalpha() or ch == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            word = text[i:j]
            if word.upper() in KEYWORDS:
                tokens.append(Token(TokenKind.KEYWORD, word.upper(), start))
            else:
                tokens.append(Token(TokenKind.IDENTIFIER, word, start))
            advance(j - i)
            continue
        for symbol in SYMBOLS:
            if text.startswith(symbol, i):
                tokens.append(Token(TokenKind.SYMBOL, symbol, start))
                advance(len(symbol))
                break
        else:
            raise LexError(f"illegal character {ch!r}", start)
    return tokens, (line, column)


def _scan_string(text: str, start_index: int, start: Position) -> tuple[str, int]:
    """Contents and source length of a quoted string starting at start_index."""
    parts: list[str] = []
    i = start_index + 1
    n = len(text)
    while i < n:
        ch = text[i]
        if ch == "'":
            if i + 1 < n and text[i + 1] == "'":
                parts.append("'")
                i += 2
                continue
            return "".join(parts), i + 1 - start_index
        parts.append(ch)
        i += 1
    raise LexError("unterminated string literal", start)


# ---------------------------------------------------------------------------
# AST


@dataclass(frozen=True)
class Star:
    """SELECT * marker; produces no projection node on translation."""


class JoinKind(Enum):
    INNER_JOIN_ON = "InnerJoinOn"
    COMMA = "Comma"


@dataclass(frozen=True)
class TableRef:
    relation: str
    alias: str | None = None
    pos: Position | None = field(default=None, compare=False)

    @property
    def qualifier(self) -> str:
        return self.alias if self.alias is not None else self.relation


@dataclass(frozen=True)
class FromItem:
    kind: JoinKind
    table: TableRef
    on: Predicate | None = None

    def __post_init__(self):
        if self.kind is JoinKind.INNER_JOIN_ON and self.on is None:
            raise ValueError("JOIN item requires an ON predicate")
        if self.kind is JoinKind.COMMA and self.on is not None:
            raise ValueError("comma item carries no predicate")


@dataclass(frozen=True)
class FromClause:
    head: TableRef
    joins: tuple[FromItem, ...] = ()

    def table_refs(self) -> list[TableRef]:
        return [self.head] + [item.table for item in self.joins]


@dataclass(frozen=True)
class SqlQuery:
    select_list: Union[Star, tuple[ColumnRef, ...]]
    from_clause: FromClause
    where: Predicate | None = None


# ---------------------------------------------------------------------------
# Parser


def parse(text: str) -> SqlQuery:
    """Parse one query. Raises LexError or ParseError with a position."""
    tokens, end = _tokenize(text)
    return _Parser(tokens, end).parse_query()


class _Parser:
    def __init__(self, tokens: list[Token], end: Position):
        self._tokens = tokens
        self._pos = 0
        self._end = end
        self._paren_depth = 0
        self._predicate_nodes = 0

    def parse_query(self) -> SqlQuery:
        self._expect_keyword("SELECT")
        select_list = self._parse_select_list()
        self._expect_keyword("FROM")
        from_clause = self._parse_from_list()
        where = None
        if self._match_keyword("WHERE"):
            where = self._parse_predicate()
        if self._pos < len(self._tokens):
            self._fail("end of input")
        return SqlQuery(select_list, from_clause, where)

    # -- clauses

    def _parse_select_list(self) -> Union[Star, tuple[ColumnRef, ...]]:
        if self._match_symbol("*"):
            return Star()
        columns = [self._parse_column_ref("select item")]
        while self._match_symbol(","):
            columns.append(self._parse_column_ref("column reference"))
        return tuple(columns)

    def _parse_from_list(self) -> FromClause:
        head = self._parse_table_ref()
        joins: list[FromItem] = []
        while True:
            at = self._here()
            if self._match_symbol(","):
                joins.append(FromItem(JoinKind.COMMA, self._parse_table_ref()))
            elif self._match_keyword("JOIN"):
                table = self._parse_table_ref()
                self._expect_keyword("ON")
                joins.append(FromItem(JoinKind.INNER_JOIN_ON, table, self._parse_predicate()))
            else:
                break
            if 1 + len(joins) > MAX_FROM_ITEMS:
                raise ParseError(at, f"at most {MAX_FROM_ITEMS} tables in FROM", "more")
        return FromClause(head, tuple(joins))

    def _parse_table_ref(self) -> TableRef:
        name = self._expect_identifier("table name")
        alias = None
        if self._match_keyword("AS"):
            alias_token = self._expect_identifier("alias")
            alias = alias_token.text
        return TableRef(name.text, alias, pos=name.position)

    def _parse_column_ref(self, expected: str) -> ColumnRef:
        first = self._expect_identifier(expected)
        if self._match_symbol("."):
            attribute = self._expect_identifier("attribute name")
            return ColumnRef(first.text, attribute.text, pos=first.position)
        return ColumnRef(None, first.text, pos=first.position)

    # -- predicates (precedence: comparisons, then NOT, AND, OR)

    def _parse_predicate(self) -> Predicate:
        return self._parse_or()

    def _parse_or(self) -> Predicate:
        expr = self._parse_and()
        while self._match_keyword("OR"):
            self._count_predicate_node()
            expr = Or(expr, self._parse_and())
        return expr

    def _parse_and(self) -> Predicate:
        expr = self._parse_not()
        while self._match_keyword("AND"):
            self._count_predicate_node()
            expr = And(expr, self._parse_not())
        return expr

    def _parse_not(self) -> Predicate:
        if self._match_keyword("NOT"):
            self._count_predicate_node()
            return Not(self._parse_primary())
        return self._parse_primary()

    def _parse_primary(self) -> Predicate:
        if self._match_symbol("("):
            self._paren_depth += 1
            if self._paren_depth > MAX_PAREN_DEPTH:
                raise ParseError(
                    self._here(), f"at most {MAX_PAREN_DEPTH} nested parentheses", "deeper nesting"
                )
            inner = self._parse_predicate()
            self._expect_symbol(")")
            self._paren_depth -= 1
            return inner
        return self._parse_comparison()

    def _parse_comparison(self) -> Comparison:
        left = self._parse_operand()
        op = self._peek()
        if op is None or op.kind is not TokenKind.SYMBOL or op.text not in ("=", "<>", "<", "<=", ">", ">="):
            self._fail("comparison operator")
        self._pos += 1
        right = self._parse_operand()
        self._count_predicate_node()
        return Comparison(left, op.text, right, pos=op.position)

    def _count_predicate_node(self) -> None:
        self._predicate_nodes += 1
        if self._predicate_nodes > MAX_PREDICATE_NODES:
            raise ParseError(
                self._here(), f"at most {MAX_PREDICATE_NODES} predicate terms", "a larger predicate"
            )

    def _parse_operand(self) -> Operand:
        token = self._peek()
        if token is None:
            self._fail("operand")
        if token.kind is TokenKind.INTEGER:
            self._pos += 1
            return IntLiteral(int(token.text))
        if token.kind is TokenKind.STRING:
            self._pos += 1
            return StrLiteral(token.text)
        if token.kind is TokenKind.IDENTIFIER:
            return self._parse_column_ref("operand")
        self._fail("operand")

    # -- token plumbing

    def _peek(self) -> Token | None:
        if self._pos < len(self._tokens):
            return self._tokens[self._pos]
        return None

    def _here(self) -> Position:
        token = self._peek()
        return token.position if token is not None else self._end

    def _found(self) -> str:
        token = self._peek()
        return token.describe() if token is not None else "end of input"

    def _fail(self, expected: str) -> None:
        raise ParseError(self._here(), expected, self._found())

    def _match_keyword(self, word: str) -> bool:
        token = self._peek()
        if token is not None and token.kind is TokenKind.KEYWORD and token.text == word:
            self._pos += 1
            return True
        return False

    def _match_symbol(self, symbol: str) -> bool:
        token = self._peek()
        if token is not None and token.kind is TokenKind.SYMBOL and token.text == symbol:
            self._pos += 1
            return True
        return False

    def _expect_keyword(self, word: str) -> Token:
        token = self._peek()
        if token is None or token.kind is not TokenKind.KEYWORD or token.text != word:
            self._fail(word)
        self._pos += 1
        return token

    def _expect_symbol(self, symbol: str) -> Token:
        token = self._peek()
        if token is None or token.kind is not TokenKind.SYMBOL or token.text != symbol:
            self._fail(f"'{symbol}'")
        self._pos += 1
        return token

    def _expect_identifier(self, expected: str) -> Token:
        token = self._peek()
        if token is None or token.kind is not TokenKind.IDENTIFIER:
            self._fail(expected)
        self._pos += 1
        return token


# ---------------------------------------------------------------------------
# Canonical rendering (round-trips through parse at the AST level)


def to_sql(query: SqlQuery) -> str:
    if isinstance(query.select_list, Star):
        select = "*"
    else:
        select = ", ".join(str(c) for c in query.select_list)
    parts = [f"SELECT {select} FROM {_table_ref_sql(query.from_clause.head)}"]
    for item in query.from_clause.joins:
        if item.kind is JoinKind.COMMA:
            parts.append(f", {_table_ref_sql(item.table)}")
        else:
            parts.append(
                f" JOIN {_table_ref_sql(item.table)} ON {predicate_to_text(item.on)}"
            )
    if query.where is not None:
        parts.append(f" WHERE {predicate_to_text(query.where)}")
    return "".join(parts)


def _table_ref_sql(ref: TableRef) -> str:
    if ref.alias is not None:
        return f"{ref.relation} AS {ref.alias}"
    return ref.relation
