"""Reference grammars and a pseudo-random grammar generator for experiments."""

from __future__ import annotations

import random
from dataclasses import dataclass

from .grammar import Grammar, Production, parse_grammar

G1_TEXT = """\
# leftmost language {wy}, full language {xz, wy}
initial: S
terminal: w x y z
S -> A B C
A B -> x
B C -> y
C -> z
A -> w
"""

G2_TEXT = """\
# leftmost = full = {xz}; xz is not recognized
initial: S
terminal: x z
S -> A G
F -> C
G -> B C
E -> A B
B C -> z
A -> x
"""

TRIVIAL_TEXT = """\
initial: S
terminal: t
S -> t
"""


def g1() -> Grammar:
    return parse_grammar(G1_TEXT)


def g2() -> Grammar:
    return parse_grammar(G2_TEXT)


def trivial() -> Grammar:
    return parse_grammar(TRIVIAL_TEXT)


NONTERMINALS = ("S", "A", "B", "C", "D", "E")
TERMINALS = ("a", "b", "c")


@dataclass(frozen=True)
class RandomGrammarSpec:
    max_nonterminals: int = 6
    max_productions: int = 10
    max_lhs: int = 2
    max_rhs: int = 3
    max_terminals: int = 3
    terminal_bias: float = 0.55
    pair_lhs_rate: float = 0.3
    cover_nonterminals: bool = True


def random_grammar(rng: random.Random, spec: RandomGrammarSpec = RandomGrammarSpec()) -> Grammar:
    """Draw a grammar with initial symbol S and at least one ``S -> ...`` rule.

    Nonterminals are ranked S < A < B < ...; a right side only mentions
    nonterminals ranked at or above its left side's first symbol, which keeps
    most draws finite enough for bounded enumeration to finish. With
    ``cover_nonterminals`` the first draws give each nonterminal, in rank
    order, its own single-symbol rule while the production budget lasts.
    """
    k = rng.randint(1, spec.max_nonterminals)
    nts = NONTERMINALS[:k]
    ts = TERMINALS[: rng.randint(1, spec.max_terminals)]
    n = rng.randint(1, spec.max_productions)
    prods: list[Production] = []
    for i in range(n):
        if i == 0:
            lhs = ("S",)
        elif spec.cover_nonterminals and i < k:
            lhs = (nts[i],)
        elif spec.max_lhs >= 2 and k > 1 and rng.random() < spec.pair_lhs_rate:
            lhs = (rng.choice(nts), rng.choice(nts))
        else:
            lhs = (rng.choice(nts),)
        rank = nts.index(lhs[0])
        allowed = nts[rank:]
        rhs = tuple(
            rng.choice(ts) if rng.random() < spec.terminal_bias else rng.choice(allowed)
            for _ in range(rng.randint(1, spec.max_rhs))
        )
        prods.append(Production(lhs, rhs, i))
    return Grammar(frozenset({"S"}), frozenset(ts), tuple(dict.fromkeys(prods)))
