"""Boolean query parsing and rendering.

Grammar (EBNF):

    query := expr
    expr  := term (("and" | "or" | "and" "not") term)*
    term  := ATOM | PHRASE | "(" expr ")"

All operators share one precedence level and associate left to right, so
``a or b and c`` groups as ``(a or b) and c``; parentheses override.
Consecutive unquoted words merge into a single multi-word atom ("medical
nanorobotics and gold" has the atoms "medical nanorobotics" and "gold");
double-quoted spans form phrase atoms.  The keywords and/or/not are
reserved in any letter case and only as whole words.

Negation exists solely as "and not" and only in conjunctive position:
bare "not", "or not", and any disjunction over a negated term ("a and
not b or c", "c or (a and not b)") are rejected, because the clause
normal form cannot express a negation inside a disjunction.  "and not"
may be applied to one term or to a parenthesised disjunction of terms
("a and not (x or y)"), which becomes two exclusions.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

KEYWORDS = frozenset({"and", "or", "not"})


class QueryError(ValueError):
    """A query string the language rejects; `position` is a character offset."""

    def __init__(self, message: str, position: int | None = None):
        super().__init__(message)
        self.position = position


class EmptyQuery(QueryError):
    pass


class DanglingOperator(QueryError):
    pass


class ForbiddenNegation(QueryError):
    pass


class UnbalancedParens(QueryError):
    pass


class MissingOperator(QueryError):
    pass


@dataclass(frozen=True)
class Atom:
    text: str
    phrase: bool = False


@dataclass(frozen=True)
class And:
    left: "Node"
    right: "Node"


@dataclass(frozen=True)
class Or:
    left: "Node"
    right: "Node"


@dataclass(frozen=True)
class AndNot:
    left: "Node"
    right: "Node"  # an Atom, or an Or whose leaves are all Atoms


Node = Union[Atom, And, Or, AndNot]


@dataclass(frozen=True)
class _Token:
    kind: str  # "word" | "phrase" | "(" | ")"
    value: str
    pos: int


def _scan(text: str) -> list[_Token]:
    tokens: list[_Token] = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
        elif ch in "()":
            tokens.append(_Token(ch, ch, i))
            i += 1
        elif ch == '"':
            end = text.find('"', i + 1)
            if end < 0:
                raise QueryError("unterminated quoted phrase", i)
            tokens.append(_Token("phrase", text[i + 1 : end], i))
            i = end + 1
        else:
            j = i
            while j < n and not text[j].isspace() and text[j] not in '()"':
                j += 1
            tokens.append(_Token("word", text[i:j], i))
            i = j
    return tokens


def contains_negation(node: Node) -> bool:
    if isinstance(node, AndNot):
        return True
    if isinstance(node, (And, Or)):
        return contains_negation(node.left) or contains_negation(node.right)
    return False


def _check_negatable(node: Node, pos: int) -> None:
    if isinstance(node, Atom):
        return
    if isinstance(node, Or):
        _check_negatable(node.left, pos)
        _check_negatable(node.right, pos)
        return
    raise ForbiddenNegation(
        "'and not' applies only to a term or a disjunction of terms", pos
    )


class _Parser:
    def __init__(self, tokens: list[_Token]):
        self.tokens = tokens
        self.i = 0

    def _peek(self) -> _Token | None:
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def _last_pos(self) -> int:
        return self.tokens[self.i - 1].pos if self.i > 0 else 0

    def expr(self) -> Node:
        node = self.term(after_operator=False)
        while True:
            tok = self._peek()
            if tok is None or tok.kind == ")":
                return node
            op, op_pos = self._operator(tok)
            right = self.term(after_operator=True)
            if op == "and":
                node = And(node, right)
            elif op == "or":
                if contains_negation(node) or contains_negation(right):
                    raise ForbiddenNegation(
                        "a negated term cannot take part in an 'or'", op_pos
                    )
                node = Or(node, right)
            else:
                _check_negatable(right, op_pos)
                node = AndNot(node, right)

    def _operator(self, tok: _Token) -> tuple[str, int]:
        if tok.kind != "word" or tok.value.lower() not in KEYWORDS:
            raise MissingOperator(
                "expected 'and', 'or' or 'and not' before %r" % tok.value, tok.pos
            )
        kw = tok.value.lower()
        if kw == "not":
            raise ForbiddenNegation("bare 'not' is not allowed; use 'and not'", tok.pos)
        self.i += 1
        nxt = self._peek()
        if kw == "or":
            if nxt is not None and nxt.kind == "word" and nxt.value.lower() == "not":
                raise ForbiddenNegation("'or not' is not allowed", nxt.pos)
            return "or", tok.pos
        if nxt is not None and nxt.kind == "word" and nxt.value.lower() == "not":
            self.i += 1
            return "andnot", tok.pos
        return "and", tok.pos

    def term(self, after_operator: bool) -> Node:
        tok = self._peek()
        if tok is None:
            raise DanglingOperator("query ends with an operator", self._last_pos())
        if tok.kind == "(":
            self.i += 1
            inner = self._peek()
            if inner is not None and inner.kind == ")":
                raise EmptyQuery("empty parentheses", inner.pos)
            node = self.expr()
            closing = self._peek()
            if closing is None or closing.kind != ")":
                raise UnbalancedParens("missing closing parenthesis", tok.pos)
            self.i += 1
            return node
        if tok.kind == ")":
            if after_operator:
                raise DanglingOperator("operator is missing its right-hand term", tok.pos)
            raise UnbalancedParens("unmatched closing parenthesis", tok.pos)
        if tok.kind == "phrase":
            self.i += 1
            words = tok.value.split()
            if not words:
                raise EmptyQuery("empty quoted phrase", tok.pos)
            return Atom(" ".join(w.lower() for w in words), phrase=len(words) > 1)
        kw = tok.value.lower()
        if kw == "not":
            raise ForbiddenNegation("'not' may only follow 'and'", tok.pos)
        if kw in KEYWORDS:
            raise DanglingOperator("operator where a term was expected", tok.pos)
        words = []
        while True:
            tok = self._peek()
            if tok is None or tok.kind != "word" or tok.value.lower() in KEYWORDS:
                break
            words.append(tok.value.lower())
            self.i += 1
        return Atom(" ".join(words))


def parse(text: str) -> Node:
    """Parse a Boolean query string into an AST."""
    if not text or not text.strip():
        raise EmptyQuery("query is empty", 0)
    tokens = _scan(text)
    if not tokens:
        raise EmptyQuery("query is empty", 0)
    parser = _Parser(tokens)
    node = parser.expr()
    leftover = parser._peek()
    if leftover is not None:
        raise UnbalancedParens("unmatched closing parenthesis", leftover.pos)
    return node


def format_atom_text(text: str, phrase: bool) -> str:
    needs_quote = (
        phrase
        or any(w in KEYWORDS for w in text.split())
        or any(c in text for c in '()"')
    )
    return f'"{text}"' if needs_quote else text


def render_ast(node: Node) -> str:
    """Render an AST back to query text; `parse(render_ast(n))` rebuilds `n`."""
    if isinstance(node, Atom):
        return format_atom_text(node.text, node.phrase)
    op = {And: "and", Or: "or", AndNot: "and not"}[type(node)]
    left = render_ast(node.left)
    right = render_ast(node.right)
    if not isinstance(node.right, Atom):
        right = f"({right})"
    return f"{left} {op} {right}"
