"""Clause normal form for Boolean queries, plus set-algebra evaluation.

A normalized query is an ordered conjunction of clauses.  A positive
clause is a disjunction of atomic terms; a negative clause excludes a
single atomic term.  Clauses never mix the two: ``a or (b and c) and
not e`` becomes ``[{a,b}, {a,c}, {not e}]``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from projsearch.text import contains_tokens, tokenize

from .parser import And, AndNot, Atom, Node, Or, format_atom_text


@dataclass(frozen=True, eq=False)
class AtomicTerm:
    """One searchable term; equality ignores the quoting flag."""

    text: str
    phrase: bool = False

    def __post_init__(self):
        object.__setattr__(self, "text", self.text.strip().lower())
        if not self.text:
            raise ValueError("atomic term is empty")

    def __eq__(self, other):
        if not isinstance(other, AtomicTerm):
            return NotImplemented
        return self.text == other.text

    def __hash__(self):
        return hash(self.text)

    def __repr__(self):
        return f"AtomicTerm({self.text!r})"


@dataclass(frozen=True)
class Clause:
    """Either a disjunction of positive terms or one excluded term."""

    positives: frozenset[AtomicTerm] = field(default_factory=frozenset)
    negatives: frozenset[AtomicTerm] = field(default_factory=frozenset)

    def __post_init__(self):
        if not self.positives and not self.negatives:
            raise ValueError("clause has no terms")
        if self.negatives and (self.positives or len(self.negatives) != 1):
            raise ValueError("a negative clause holds exactly one excluded term")

    @property
    def is_negative(self) -> bool:
        return bool(self.negatives)


@dataclass(frozen=True)
class NormalizedQuery:
    clauses: tuple[Clause, ...]

    @property
    def has_negation(self) -> bool:
        return any(c.is_negative for c in self.clauses)

    def atom_texts(self) -> set[str]:
        texts = set()
        for clause in self.clauses:
            for term in clause.positives | clause.negatives:
                texts.add(term.text)
        return texts


def _term_of(atom: Atom) -> AtomicTerm:
    return AtomicTerm(atom.text, atom.phrase)


def _negation_leaves(node: Node) -> list[Atom]:
    if isinstance(node, Atom):
        return [node]
    if isinstance(node, Or):
        return _negation_leaves(node.left) + _negation_leaves(node.right)
    raise ValueError(f"negation applies only to atoms or disjunctions of atoms: {node!r}")


def _clauses_of(node: Node) -> list[Clause]:
    if isinstance(node, Atom):
        return [Clause(positives=frozenset({_term_of(node)}))]
    if isinstance(node, And):
        return _clauses_of(node.left) + _clauses_of(node.right)
    if isinstance(node, AndNot):
        negs = [
            Clause(negatives=frozenset({_term_of(a)}))
            for a in _negation_leaves(node.right)
        ]
        return _clauses_of(node.left) + negs
    if isinstance(node, Or):
        left = _clauses_of(node.left)
        right = _clauses_of(node.right)
        merged = []
        for cl in left:
            for cr in right:
                if cl.is_negative or cr.is_negative:
                    raise ValueError("disjunction over a negated term has no clause form")
                merged.append(Clause(positives=cl.positives | cr.positives))
        return merged
    raise TypeError(f"not a query node: {node!r}")


def normalize(ast: Node) -> NormalizedQuery:
    """Distribute or-over-and and split into clause form."""
    return NormalizedQuery(clauses=tuple(_clauses_of(ast)))


def atomic_terms(nq: NormalizedQuery) -> set[tuple[AtomicTerm, str]]:
    """All distinct terms of the query, tagged "positive" or "negative"."""
    out: set[tuple[AtomicTerm, str]] = set()
    for clause in nq.clauses:
        for term in clause.positives:
            out.add((term, "positive"))
        for term in clause.negatives:
            out.add((term, "negative"))
    return out


@lru_cache(maxsize=8192)
def _term_tokens(text: str) -> tuple[str, ...]:
    return tuple(tokenize(text))


def term_matches(term: AtomicTerm, doc_tokens) -> bool:
    """Token-boundary match: multi-word terms must appear contiguously."""
    return contains_tokens(doc_tokens, _term_tokens(term.text))


def evaluate_tokens(nq: NormalizedQuery, doc_tokens) -> bool:
    for clause in nq.clauses:
        if clause.is_negative:
            (term,) = clause.negatives
            if term_matches(term, doc_tokens):
                return False
        elif not any(term_matches(t, doc_tokens) for t in clause.positives):
            return False
    return True


def evaluate(nq: NormalizedQuery, text: str) -> bool:
    """True iff `text` satisfies every clause of the query."""
    return evaluate_tokens(nq, tokenize(text))


def render_clauses(nq: NormalizedQuery) -> str:
    """Render clause form back to query text (round-trips at clause level)."""
    clauses = list(nq.clauses)
    if clauses and clauses[0].is_negative:
        idx = next((i for i, c in enumerate(clauses) if not c.is_negative), None)
        if idx is None:
            raise ValueError("a query of only exclusions cannot be rendered")
        clauses.insert(0, clauses.pop(idx))
    parts: list[str] = []
    for i, clause in enumerate(clauses):
        if clause.is_negative:
            (term,) = clause.negatives
            parts.append("and not " + format_atom_text(term.text, term.phrase))
            continue
        atoms = sorted(clause.positives, key=lambda t: t.text)
        body = " or ".join(format_atom_text(t.text, t.phrase) for t in atoms)
        if len(atoms) > 1 and (i > 0 or len(clauses) > 1):
            body = f"({body})"
        parts.append(("and " if i else "") + body)
    return " ".join(parts)
