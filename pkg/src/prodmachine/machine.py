"""Lambek's three-tape production machine.

Three tapes (top storage, middle input/output, bottom storage) each expose
one scanned square; the scanned squares are aligned. Seven moves act on the
scanned squares:

====  ==============================  ====================================
move  guard (top / middle / bottom)   effect
====  ==============================  ====================================
1     C / empty / any                 C goes from top to middle
2     empty / B / empty               B goes to bottom; top moves left
3     C / B / any                     top moves right
4     empty / B / A                   bottom moves left
5     empty / B / (A), (A)B -> C(D)   top gets (D), middle gets C,
                                      bottom moves right
6     empty / D / empty, D terminal   top and middle move left
7     empty / empty / any             middle moves left
====  ==============================  ====================================

A tape "moving left" shifts its contents one square left past the fixed
head, so the head then scans what used to lie to its right. With this
convention the storage tapes behave as stacks: the bottom tape keeps the
already-processed context left of its head, the top tape keeps the
unprocessed suffix right of its head.

Generation runs moves in the order 5, 6, 1, 2, 3, 4 over a prepared
grammar; recognition runs 5, 7, 1, 2, 3, 4 over its dual. The first move
whose guard holds is taken; only move 5 can have several outcomes (one per
matching production).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import NamedTuple, Optional, Sequence

from .grammar import Grammar, GrammarError, Production, Symbol, Word, dual, is_normal, render
from .graphs import Bounds, TransitionGraph, explore
from .oracle import EnumerationResult, _lhs_index, leftmost_applicable

GENERATIVE_ORDER = (5, 6, 1, 2, 3, 4)
RECOGNITIVE_ORDER = (5, 7, 1, 2, 3, 4)


class MachineError(RuntimeError):
    pass


class DeterminacyError(MachineError):
    """A state outside move 5 admitted more than one continuation."""

    def __init__(self, state, outcomes):
        super().__init__(f"{len(outcomes)} non-5 continuations from {state}")
        self.state = state
        self.outcomes = outcomes


@dataclass(frozen=True)
class Tape:
    """A tape as (squares left of the head, scanned square, squares right of it).

    ``left`` is stored in reading order (its last element touches the head),
    ``right`` likewise (its first element touches the head). Runs of empty
    squares at the far ends are trimmed so equal tapes compare equal.
    """

    left: tuple = ()
    scanned: Optional[Symbol] = None
    right: tuple = ()

    def __post_init__(self):
        left, right = tuple(self.left), tuple(self.right)
        i = 0
        while i < len(left) and left[i] is None:
            i += 1
        j = len(right)
        while j > 0 and right[j - 1] is None:
            j -= 1
        object.__setattr__(self, "left", left[i:])
        object.__setattr__(self, "right", right[:j])

    def write(self, sym: Optional[Symbol]) -> "Tape":
        return Tape(self.left, sym, self.right)

    def move_left(self) -> "Tape":
        nxt = self.right[0] if self.right else None
        return Tape(self.left + (self.scanned,), nxt, self.right[1:])

    def move_right(self) -> "Tape":
        prev = self.left[-1] if self.left else None
        return Tape(self.left[:-1], prev, (self.scanned,) + self.right)

    @property
    def is_blank(self) -> bool:
        return self.scanned is None and not self.left and not self.right

    def count(self) -> int:
        return sum(s is not None for s in self.left + (self.scanned,) + self.right)

    def render(self) -> str:
        def region(squares):
            return " ".join("_" if s is None else s for s in squares)

        parts = [region(self.left), f"[{'' if self.scanned is None else self.scanned}]",
                 region(self.right)]
        return " ".join(p for p in parts if p)


@dataclass(frozen=True)
class MachineState:
    top: Tape = Tape()
    middle: Tape = Tape()
    bottom: Tape = Tape()

    def size(self) -> int:
        return self.top.count() + self.middle.count() + self.bottom.count()

    def render(self) -> str:
        return f"T {self.top.render()} | M {self.middle.render()} | B {self.bottom.render()}"

    def as_dict(self) -> dict:
        return {
            name: {"left": list(t.left), "scanned": t.scanned, "right": list(t.right)}
            for name, t in (("top", self.top), ("middle", self.middle), ("bottom", self.bottom))
        }

    def __str__(self) -> str:
        return self.render()


@dataclass(frozen=True)
class MachineConfig:
    """Which grammar drives the machine and how the moves are chosen.

    For recognition ``grammar`` is already the dual of the prepared grammar;
    use :meth:`recognitive` to build it.
    """

    grammar: Grammar
    move_order: tuple = GENERATIVE_ORDER
    extended: bool = False
    strategy: str = "nondeterministic"

    def __post_init__(self):
        if tuple(self.move_order) not in (GENERATIVE_ORDER, RECOGNITIVE_ORDER):
            raise ValueError(f"unsupported move order {self.move_order}")
        if self.strategy not in ("nondeterministic", "markov"):
            raise ValueError(f"unknown strategy {self.strategy!r}")
        if not is_normal(self.grammar):
            raise GrammarError("the production machine needs a normal grammar")

    @classmethod
    def generative(cls, g: Grammar, extended: bool = False, strategy: str = "nondeterministic"):
        return cls(g, GENERATIVE_ORDER, extended, strategy)

    @classmethod
    def recognitive(cls, g: Grammar, extended: bool = False):
        return cls(dual(g), RECOGNITIVE_ORDER, extended)

    @property
    def is_generative(self) -> bool:
        return self.move_order == GENERATIVE_ORDER

    @property
    def goal(self) -> Symbol:
        """S: the initial symbol (generation) or the accepted symbol (recognition)."""
        syms = self.grammar.initial if self.is_generative else self.grammar.terminal
        if len(syms) != 1:
            raise GrammarError("the machine needs a grammar with a unique initial symbol")
        (s,) = syms
        return s


class Outcome(NamedTuple):
    move: int
    production: Optional[Production]
    state: MachineState


def initial_generative(cfg: MachineConfig) -> MachineState:
    return MachineState(top=Tape(scanned=cfg.goal))


def initial_recognitive(sentence: Sequence[Symbol]) -> MachineState:
    sentence = tuple(sentence)
    if not sentence:
        raise ValueError("cannot recognize the empty string")
    return MachineState(middle=Tape(right=sentence))


def is_generated(cfg: MachineConfig, s: MachineState) -> bool:
    """Generative terminal shape: the sentence left of the middle head, all else empty."""
    m = s.middle
    return (
        s.top.is_blank
        and s.bottom.is_blank
        and m.scanned is None
        and not m.right
        and bool(m.left)
        and all(x in cfg.grammar.terminal for x in m.left)
    )


def is_accepted(cfg: MachineConfig, s: MachineState) -> bool:
    """Recognitive terminal shape: S scanned on the bottom tape, all else empty."""
    b = s.bottom
    return (
        s.top.is_blank
        and s.middle.is_blank
        and b.scanned == cfg.goal
        and not b.left
        and not b.right
    )


def _move(cfg: MachineConfig, move: int, s: MachineState) -> list[Outcome]:
    top, mid, bot = s.top, s.middle, s.bottom
    c, b, a = top.scanned, mid.scanned, bot.scanned
    if move == 1:
        if c is not None and b is None:
            return [Outcome(1, None, MachineState(top.write(None), mid.write(c), bot))]
    elif move == 2:
        if c is None and b is not None and a is None:
            return [Outcome(2, None, MachineState(top.move_left(), mid.write(None), bot.write(b)))]
    elif move == 3:
        if c is not None and b is not None:
            return [Outcome(3, None, MachineState(top.move_right(), mid, bot))]
    elif move == 4:
        if c is None and b is not None and a is not None:
            return [Outcome(4, None, MachineState(top, mid, bot.move_left()))]
    elif move == 5:
        if c is None and b is not None:
            key = (b,) if a is None else (a, b)
            prods = _lhs_index(cfg.grammar)[0].get(key, ())
            if cfg.strategy == "markov":
                prods = prods[:1]
            out = []
            for p in prods:
                rhs = p.rhs
                new_top = top.write(rhs[1]) if len(rhs) == 2 else top
                new_bot = bot.write(None) if len(p.lhs) == 2 else bot
                out.append(Outcome(5, p, MachineState(new_top, mid.write(rhs[0]), new_bot.move_right())))
            return out
    elif move == 6:
        if c is None and b is not None and b in cfg.grammar.terminal and a is None:
            return [Outcome(6, None, MachineState(top.move_left(), mid.move_left(), bot))]
    elif move == 7:
        if c is None and b is None and mid.right:
            return [Outcome(7, None, MachineState(top, mid.move_left(), bot))]
    else:
        raise ValueError(f"no move {move}")
    return []


def _check_middle(before: Tape, after: Tape, move: int) -> None:
    if after != before.write(after.scanned) and after != before.move_left():
        raise MachineError(f"move {move} moved the middle tape rightwards")


def step(cfg: MachineConfig, s: MachineState) -> list[Outcome]:
    """Outcomes of the first applicable move; empty when the machine halts.

    In extended mode a state allowing move 5 also offers the next applicable
    move in the order (the branch that applies no production).
    """
    order = cfg.move_order
    for i, m in enumerate(order):
        outs = _move(cfg, m, s)
        if not outs:
            continue
        if m == 5 and cfg.extended:
            for m2 in order[i + 1 :]:
                skip = _move(cfg, m2, s)
                if skip:
                    outs = outs + skip
                    break
        for o in outs:
            _check_middle(s.middle, o.state.middle, o.move)
        return outs
    return []


def allows_move5(cfg: MachineConfig, s: MachineState) -> bool:
    return bool(_move(cfg, 5, s))


def settle(cfg: MachineConfig, s: MachineState, record: list | None = None) -> MachineState:
    """Run non-5 moves until move 5 becomes possible or the machine halts.

    Each non-5 state must have exactly one continuation; otherwise
    :class:`DeterminacyError` is raised. ``record`` collects the outcomes.
    """
    limit = 8 * (s.size() + 4)
    for _ in range(limit):
        outs = step(cfg, s)
        if not outs or any(o.move == 5 for o in outs):
            return s
        if len(outs) != 1:
            raise DeterminacyError(s, outs)
        if record is not None:
            record.append(outs[0])
        s = outs[0].state
    raise MachineError(f"non-5 moves did not settle within {limit} steps from {s}")


def collapse(cfg: MachineConfig, s: MachineState, p: Production) -> MachineState:
    """Move 5 via ``p`` followed by its deterministic continuation."""
    for o in _move(cfg, 5, s):
        if o.production == p:
            return settle(cfg, o.state)
    raise MachineError(f"move 5 via {p} is not possible from {s}")


def _label(o: Outcome):
    return o.production if o.move == 5 else f"skip:{o.move}"


def decision_successors(cfg: MachineConfig, s: MachineState) -> list:
    """``(label, state)`` for each branch out of a settled state.

    Labels are productions for move 5 and ``"skip:<move>"`` for the extended
    branch.
    """
    return [(_label(o), settle(cfg, o.state)) for o in step(cfg, s)]


def explore_machine(cfg: MachineConfig, start: MachineState, bounds: Bounds) -> TransitionGraph:
    """Breadth-first search over settled states; depth counts branch decisions."""
    root = settle(cfg, start)
    return explore([root], lambda st: decision_successors(cfg, st), MachineState.size, bounds)


def run_generative(cfg: MachineConfig, bounds: Bounds = Bounds()) -> EnumerationResult:
    if not cfg.is_generative:
        raise ValueError("run_generative needs a generative configuration")
    graph = explore_machine(cfg, initial_generative(cfg), bounds)
    sentences = frozenset(st.middle.left for st in graph.nodes if is_generated(cfg, st))
    return EnumerationResult(sentences, graph.complete, graph)


class TraceRecord(NamedTuple):
    move: Optional[int]
    production: str
    state: MachineState

    def as_dict(self) -> dict:
        return {
            "move": self.move,
            "production": self.production,
            "snapshot": self.state.render(),
            "tapes": self.state.as_dict(),
        }


def replay(cfg: MachineConfig, start: MachineState, labels: Sequence) -> list[TraceRecord]:
    """Expand a sequence of branch labels into the full move-by-move trace."""
    records = [TraceRecord(None, "-", start)]
    chain: list[Outcome] = []
    s = settle(cfg, start, chain)
    for label in labels:
        outs = [o for o in step(cfg, s) if _label(o) == label]
        if not outs:
            raise MachineError(f"branch {label} not available from {s}")
        chain.append(outs[0])
        s = settle(cfg, outs[0].state, chain)
    for o in chain:
        records.append(TraceRecord(o.move, "-" if o.production is None else str(o.production), o.state))
    return records


def run_trace(cfg: MachineConfig, start: MachineState, limit: int = 1000) -> list[TraceRecord]:
    """Follow the first outcome of every step until halting or ``limit`` moves."""
    records = [TraceRecord(None, "-", start)]
    s = start
    for _ in range(limit):
        outs = step(cfg, s)
        if not outs:
            break
        o = outs[0]
        records.append(TraceRecord(o.move, "-" if o.production is None else str(o.production), o.state))
        s = o.state
    return records


def format_trace(records: Sequence[TraceRecord]) -> str:
    width = max([len(r.production) for r in records] + [10])
    lines = [f"{'#':>4}  {'move':>4}  {'production':<{width}}  tapes"]
    for i, r in enumerate(records):
        mv = "-" if r.move is None else str(r.move)
        lines.append(f"{i:>4}  {mv:>4}  {r.production:<{width}}  {r.state.render()}")
    return "\n".join(lines)


def trace_json(records: Sequence[TraceRecord]) -> str:
    return json.dumps([r.as_dict() for r in records], indent=2)


class RecognitiveRun(NamedTuple):
    recognized: bool
    complete: bool
    witness: list
    graph: TransitionGraph


def run_recognitive(
    g: Grammar, sentence: Sequence[Symbol], bounds: Bounds = Bounds(), extended: bool = False
) -> RecognitiveRun:
    """Explore every branch of the recognitive machine of ``g`` on ``sentence``.

    ``g`` is the prepared grammar (not its dual). The witness is a shortest
    accepting trace when the sentence is recognized.
    """
    sentence = tuple(sentence)
    if not sentence or any(x not in g.terminal for x in sentence):
        raise GrammarError(f"{sentence} is not a sentence of the grammar")
    cfg = MachineConfig.recognitive(g, extended)
    start = initial_recognitive(sentence)
    graph = explore_machine(cfg, start, bounds)
    accepting = sorted(
        (st for st in graph.nodes if is_accepted(cfg, st)), key=lambda st: graph.depth_of(st)
    )
    if not accepting:
        return RecognitiveRun(False, graph.complete, [], graph)
    labels = [label for label, _ in graph.path_to(accepting[0])[1:]]
    return RecognitiveRun(True, graph.complete, replay(cfg, start, labels), graph)


# -- string <-> state correspondence ----------------------------------------


class LeftmostDecomposition(NamedTuple):
    terminals: Word
    context: Word
    p1: Optional[Symbol]
    p2: Optional[Symbol]
    suffix: Word


def decompose(g: Grammar, s: Sequence[Symbol]) -> LeftmostDecomposition:
    """Split ``s`` into terminal prefix, context, application position, suffix.

    Raises :class:`ValueError` when a terminal follows a nonterminal. With no
    applicable production, ``p2`` is None and ``terminals`` holds all of ``s``.
    """
    s = tuple(s)
    k = 0
    while k < len(s) and s[k] in g.terminal:
        k += 1
    if any(x in g.terminal for x in s[k:]):
        raise ValueError(f"terminal after a nonterminal in {render(s)}")
    occ = leftmost_applicable(g, s)
    if not occ:
        return LeftmostDecomposition(s, (), None, None, ())
    o = occ[0]
    lhs = o.production.lhs
    p1 = lhs[0] if len(lhs) == 2 else None
    return LeftmostDecomposition(s[:k], s[k : o.start], p1, s[o.end - 1], s[o.end :])


def f_map(g: Grammar, s: Sequence[Symbol]) -> MachineState:
    """The machine state standing for string ``s`` during generation."""
    d = decompose(g, s)
    if d.p2 is None:
        return MachineState(middle=Tape(left=d.terminals))
    return MachineState(
        top=Tape(right=d.suffix),
        middle=Tape(left=d.terminals, scanned=d.p2),
        bottom=Tape(left=d.context, scanned=d.p1),
    )
