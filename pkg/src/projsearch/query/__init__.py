"""Boolean query language: parse, normalize to clause form, evaluate, render."""

from .clauses import (
    AtomicTerm,
    Clause,
    NormalizedQuery,
    atomic_terms,
    evaluate,
    evaluate_tokens,
    normalize,
    render_clauses,
    term_matches,
)
from .parser import (
    And,
    AndNot,
    Atom,
    DanglingOperator,
    EmptyQuery,
    ForbiddenNegation,
    MissingOperator,
    Node,
    Or,
    QueryError,
    UnbalancedParens,
    contains_negation,
    parse,
    render_ast,
)

__all__ = [
    "And",
    "AndNot",
    "Atom",
    "AtomicTerm",
    "Clause",
    "DanglingOperator",
    "EmptyQuery",
    "ForbiddenNegation",
    "MissingOperator",
    "Node",
    "NormalizedQuery",
    "Or",
    "QueryError",
    "UnbalancedParens",
    "atomic_terms",
    "contains_negation",
    "evaluate",
    "evaluate_tokens",
    "normalize",
    "parse",
    "render",
    "render_ast",
    "render_clauses",
    "term_matches",
]


def render(obj) -> str:
    """Render an AST node or a NormalizedQuery back to query text."""
    if isinstance(obj, NormalizedQuery):
        return render_clauses(obj)
    return render_ast(obj)
