"""Shared test utilities: independent oracles and random generators."""

from __future__ import annotations

import random

from projsearch.providers.local import LocalProvider
from projsearch.query import And, AndNot, Atom, Node, Or


def ast_truth(node: Node, present: set[str]) -> bool:
    """Direct recursive evaluation of an AST against an atom assignment."""
    if isinstance(node, Atom):
        return node.text in present
    if isinstance(node, And):
        return ast_truth(node.left, present) and ast_truth(node.right, present)
    if isinstance(node, Or):
        return ast_truth(node.left, present) or ast_truth(node.right, present)
    if isinstance(node, AndNot):
        return ast_truth(node.left, present) and not ast_truth(node.right, present)
    raise TypeError(node)


def ast_atoms(node: Node) -> set[str]:
    if isinstance(node, Atom):
        return {node.text}
    return ast_atoms(node.left) | ast_atoms(node.right)


def random_ast(rng: random.Random, atoms: list[str], max_depth: int = 4,
               allow_negation: bool = True) -> Node:
    """Random valid AST: negation never sits below an 'or'."""

    def negation_target() -> Node:
        # an atom, or a small disjunction of atoms
        if rng.random() < 0.7:
            return Atom(rng.choice(atoms))
        node: Node = Atom(rng.choice(atoms))
        for _ in range(rng.randint(1, 2)):
            node = Or(node, Atom(rng.choice(atoms)))
        return node

    def gen(depth: int, neg_ok: bool) -> Node:
        if depth <= 0 or rng.random() < 0.35:
            return Atom(rng.choice(atoms))
        roll = rng.random()
        if neg_ok and roll < 0.25:
            return AndNot(gen(depth - 1, True), negation_target())
        if roll < 0.6:
            return And(gen(depth - 1, neg_ok), gen(depth - 1, neg_ok))
        return Or(gen(depth - 1, False), gen(depth - 1, False))

    return gen(max_depth, allow_negation)


def random_corpus(rng: random.Random, n_docs: int, vocab: list[str],
                  min_len: int = 5, max_len: int = 30) -> LocalProvider:
    provider = LocalProvider()
    for i in range(n_docs):
        tokens = rng.choices(vocab, k=rng.randint(min_len, max_len))
        provider.add(f"c{i:04d}", " ".join(tokens[:3]), " ".join(tokens[3:]))
    return provider
