"""Leftmost-language-preserving grammar transformations.

Three rewrites bring an arbitrary grammar into the shape the production
machine expects: a single initial symbol, every production side of length
1 or 2, and every terminal produced by its own ``N -> t`` production with N a
synthesized nonterminal.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .grammar import (
    SYNTH_PREFIX,
    Grammar,
    GrammarError,
    Production,
    Symbol,
    check,
    is_normal,
    is_synthesized,
)


@dataclass
class FreshSymbolSource:
    """Emits ``<prefix><n>`` names never seen in ``taken``."""

    taken: set = field(default_factory=set)
    counter: int = 0
    prefix: str = SYNTH_PREFIX

    @classmethod
    def for_grammar(cls, g: Grammar) -> "FreshSymbolSource":
        return cls(set(g.vocabulary))

    def __call__(self) -> Symbol:
        while True:
            name = f"{self.prefix}{self.counter}"
            self.counter += 1
            if name not in self.taken:
                self.taken.add(name)
                return name


@dataclass
class TransformTrace:
    replaced: list = field(default_factory=list)  # (original, (replacement, ...))
    introduced_symbols: list = field(default_factory=list)

    def extend(self, other: "TransformTrace") -> None:
        self.replaced.extend(other.replaced)
        self.introduced_symbols.extend(other.introduced_symbols)

    def describe(self) -> str:
        lines = []
        for orig, repl in self.replaced:
            lines.append(f"{orig}  =>  " + "; ".join(str(p) for p in repl))
        return "\n".join(lines)


def _fresh_for(g: Grammar, fresh: FreshSymbolSource | None) -> FreshSymbolSource:
    if fresh is None:
        return FreshSymbolSource.for_grammar(g)
    fresh.taken.update(g.vocabulary)
    return fresh


def unique_initial(g: Grammar, fresh: FreshSymbolSource | None = None):
    """Give ``g`` a single initial symbol by adding ``S -> A`` per initial A.

    A grammar whose lone initial symbol never occurs on a right side is
    returned unchanged.
    """
    fresh = _fresh_for(g, fresh)
    trace = TransformTrace()
    if len(g.initial) == 1:
        (s,) = g.initial
        if not any(s in p.rhs for p in g.productions):
            return g, trace
    start = fresh()
    trace.introduced_symbols.append(start)
    added = [Production((start,), (a,)) for a in sorted(g.initial)]
    for p in added:
        trace.replaced.append((None, (p,)))
    return g.with_productions(list(g.productions) + added, initial={start}), trace


def normalize(g: Grammar, fresh: FreshSymbolSource | None = None):
    """Shorten every production side to length 1 or 2.

    Right sides lose their first two symbols to a fresh ``N -> A B``; left
    sides lose their first two symbols to ``A B -> N``, with one shared N
    per distinct prefix pair.
    """
    fresh = _fresh_for(g, fresh)
    trace = TransformTrace()
    shared: dict[tuple, Symbol] = {}
    out: list[Production] = []
    for p in g.productions:
        if len(p.lhs) <= 2 and len(p.rhs) <= 2:
            out.append(p)
            continue
        lhs, rhs = p.lhs, p.rhs
        extra: list[Production] = []
        while len(rhs) > 2:
            n = fresh()
            trace.introduced_symbols.append(n)
            extra.append(Production((n,), rhs[:2]))
            rhs = (n,) + rhs[2:]
        while len(lhs) > 2:
            pair = lhs[:2]
            if pair not in shared:
                n = fresh()
                shared[pair] = n
                trace.introduced_symbols.append(n)
                extra.append(Production(pair, (n,)))
            lhs = (shared[pair],) + lhs[2:]
        repl = (Production(lhs, rhs),) + tuple(extra)
        trace.replaced.append((p, repl))
        out.extend(repl)
    return g.with_productions(out), trace


def is_isolated(g: Grammar, p: Production) -> bool:
    """True for ``N -> t`` with N synthesized and t terminal."""
    return (
        len(p.lhs) == 1
        and is_synthesized(p.lhs[0])
        and len(p.rhs) == 1
        and p.rhs[0] in g.terminal
    )


def isolate_terminals(g: Grammar, fresh: FreshSymbolSource | None = None):
    """Move every terminal into a production of its own, ``N -> t``."""
    if not is_normal(g):
        raise GrammarError("isolate_terminals requires a normal grammar")
    fresh = _fresh_for(g, fresh)
    trace = TransformTrace()
    out: list[Production] = []
    for p in g.productions:
        if not any(s in g.terminal for s in p.rhs) or is_isolated(g, p):
            out.append(p)
            continue
        rhs: list[Symbol] = []
        extra: list[Production] = []
        for s in p.rhs:
            if s in g.terminal:
                n = fresh()
                trace.introduced_symbols.append(n)
                extra.append(Production((n,), (s,)))
                rhs.append(n)
            else:
                rhs.append(s)
        repl = (Production(p.lhs, tuple(rhs)),) + tuple(extra)
        trace.replaced.append((p, repl))
        out.extend(repl)
    return g.with_productions(out), trace


def is_prepared(g: Grammar) -> bool:
    if len(g.initial) != 1 or not is_normal(g):
        return False
    return all(
        is_isolated(g, p) or not any(s in g.terminal for s in p.rhs) for p in g.productions
    )


def prepare(g: Grammar):
    """unique_initial, then normalize, then isolate_terminals, sharing one fresh source."""
    check(g)
    fresh = FreshSymbolSource.for_grammar(g)
    trace = TransformTrace()
    for step in (unique_initial, normalize, isolate_terminals):
        g, t = step(g, fresh)
        trace.extend(t)
    return g, trace
