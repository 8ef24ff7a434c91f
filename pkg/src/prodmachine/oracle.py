"""Reduction semantics on strings: the ground truth the machine is checked against."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import lru_cache
from typing import NamedTuple, Sequence

from .grammar import Grammar, GrammarError, Production, Word, dual, is_sentence
from .graphs import Bounds, TransitionGraph, explore


class Mode(enum.Enum):
    """How ties between competing occurrences are read.

    OPERATIONAL picks the occurrences with the smallest end index and, among
    those, the longest left side. STRICT takes the literal conjunctive
    reading: shortest left side *and* smallest start, which can be empty.
    """

    OPERATIONAL = "operational"
    STRICT = "strict"


class Relation(enum.Enum):
    LEFTMOST = "leftmost"
    STRICT = "strict"
    FULL = "full"

    @property
    def mode(self) -> Mode:
        return Mode.STRICT if self is Relation.STRICT else Mode.OPERATIONAL


@dataclass(frozen=True)
class Occurrence:
    production: Production
    start: int

    @property
    def end(self) -> int:
        return self.start + len(self.production.lhs)

    def __str__(self) -> str:
        return f"{self.production} at {self.start}"


@lru_cache(maxsize=256)
def _lhs_index(g: Grammar):
    index: dict[tuple, list[Production]] = {}
    for p in g.productions:
        index.setdefault(p.lhs, []).append(p)
    lengths = sorted({len(k) for k in index}, reverse=True)
    return index, lengths


def occurrences(p: Production, s: Sequence) -> list[Occurrence]:
    n = len(p.lhs)
    s = tuple(s)
    return [Occurrence(p, i) for i in range(len(s) - n + 1) if s[i : i + n] == p.lhs]


def all_occurrences(g: Grammar, s: Sequence) -> list[Occurrence]:
    """Every occurrence of every production, ordered by (start, production index)."""
    index, lengths = _lhs_index(g)
    s = tuple(s)
    out = []
    for i in range(len(s)):
        for n in lengths:
            for p in index.get(s[i : i + n], ()) if i + n <= len(s) else ():
                out.append(Occurrence(p, i))
    out.sort(key=lambda o: (o.start, o.production.index))
    return out


def apply_at(s: Sequence, o: Occurrence) -> Word:
    s = tuple(s)
    lhs = o.production.lhs
    if s[o.start : o.end] != lhs:
        raise ValueError(f"{o.production} does not occur at {o.start} in {s}")
    return s[: o.start] + o.production.rhs + s[o.end :]


def leftmost_applicable(g: Grammar, s: Sequence, mode: Mode = Mode.OPERATIONAL) -> list[Occurrence]:
    """The leftmost-applicable occurrences in ``s``, in production order."""
    s = tuple(s)
    if mode is Mode.STRICT:
        occ = all_occurrences(g, s)
        if not occ:
            return []
        shortest = min(len(o.production.lhs) for o in occ)
        first = min(o.start for o in occ)
        return [o for o in occ if len(o.production.lhs) == shortest and o.start == first]
    index, lengths = _lhs_index(g)
    for end in range(1, len(s) + 1):
        for n in lengths:
            if n > end:
                continue
            prods = index.get(s[end - n : end])
            if prods:
                return [Occurrence(p, end - n) for p in prods]
    return []


def leftmost_successors(g: Grammar, s: Sequence, mode: Mode = Mode.OPERATIONAL) -> set:
    return {apply_at(s, o) for o in leftmost_applicable(g, s, mode)}


def full_successors(g: Grammar, s: Sequence) -> set:
    return {apply_at(s, o) for o in all_occurrences(g, s)}


def _step_fn(g: Grammar, relation: Relation):
    if relation is Relation.FULL:
        def succ(s):
            return [(o.production, apply_at(s, o)) for o in all_occurrences(g, s)]
    else:
        mode = relation.mode
        def succ(s):
            return [(o.production, apply_at(s, o)) for o in leftmost_applicable(g, s, mode)]
    return succ


def transition_graph(
    g: Grammar,
    relation: Relation,
    initial,
    bounds: Bounds = Bounds(),
) -> TransitionGraph:
    """Layered graph of ``relation`` generated by the strings in ``initial``.

    Edge labels are the applied productions.
    """
    relation = Relation(relation)
    init = [tuple(s) for s in initial]
    return explore(init, _step_fn(g, relation), len, bounds)


class EnumerationResult(NamedTuple):
    sentences: frozenset
    complete: bool
    graph: TransitionGraph


def sentences_of(g: Grammar, graph: TransitionGraph) -> frozenset:
    return frozenset(n for n in graph.nodes if n and all(x in g.terminal for x in n))


def enumerate_language(
    g: Grammar, relation: Relation = Relation.LEFTMOST, bounds: Bounds = Bounds()
) -> EnumerationResult:
    """Sentences derivable from the initial symbols, within ``bounds``."""
    graph = transition_graph(g, relation, [(a,) for a in sorted(g.initial)], bounds)
    return EnumerationResult(sentences_of(g, graph), graph.complete, graph)


class Recognition(NamedTuple):
    recognized: bool
    graph: TransitionGraph

    @property
    def complete(self) -> bool:
        return self.graph.complete


def recognize_oracle(
    g: Grammar, sentence: Sequence, mode: Mode = Mode.OPERATIONAL, bounds: Bounds = Bounds()
) -> Recognition:
    """Leftmost reduction of ``sentence`` in the dual of ``g``.

    Recognized iff some reachable string is a single initial symbol of ``g``.
    """
    sentence = tuple(sentence)
    if not is_sentence(g, sentence):
        raise GrammarError(f"{sentence} is not a sentence of the grammar")
    rel = Relation.STRICT if mode is Mode.STRICT else Relation.LEFTMOST
    graph = transition_graph(dual(g), rel, [sentence], bounds)
    goals = {(a,) for a in g.initial}
    return Recognition(any(n in goals for n in graph.nodes), graph)
