"""Production grammars (semi-Thue systems): symbols, productions, duality.

Symbols are plain strings and a symbol string ("word") is a tuple of them.
Symbols introduced by the transformations carry the reserved prefix
``SYNTH_PREFIX`` so that their origin survives a round trip through the
grammar file format.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Sequence

Symbol = str
Word = tuple  # tuple[Symbol, ...]

SYNTH_PREFIX = "_N"
_IDENT = re.compile(r"[A-Za-z0-9_]+\Z")


class GrammarError(ValueError):
    """Raised for grammars that violate a structural requirement."""


class GrammarSyntaxError(GrammarError):
    def __init__(self, message: str, line: int, column: int = 1):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


def is_synthesized(sym: Symbol) -> bool:
    return sym.startswith(SYNTH_PREFIX)


def is_identifier(sym: str) -> bool:
    return bool(_IDENT.match(sym))


def word(text: str | Iterable[Symbol]) -> Word:
    """Build a word from whitespace-separated names or an iterable of symbols.

    ``word("A B C") == ("A", "B", "C")``. A string without whitespace is a
    single symbol: ``word("AB") == ("AB",)``.
    """
    if isinstance(text, str):
        return tuple(text.split())
    return tuple(text)


def render(w: Sequence[Symbol]) -> str:
    """Compact rendering: juxtaposed when every symbol is one character."""
    if all(len(s) == 1 for s in w):
        return "".join(w)
    return " ".join(w)


@dataclass(frozen=True)
class Production:
    lhs: Word
    rhs: Word
    index: int = 0

    def __post_init__(self):
        object.__setattr__(self, "lhs", tuple(self.lhs))
        object.__setattr__(self, "rhs", tuple(self.rhs))

    def inverse(self) -> "Production":
        return Production(self.rhs, self.lhs, self.index)

    def __str__(self) -> str:
        return f"{' '.join(self.lhs)} -> {' '.join(self.rhs)}"


@dataclass(frozen=True)
class Grammar:
    """A grammar (V, V_i, V_t, P) over a finite, ordered production list.

    The vocabulary is the union of every symbol mentioned in the initial and
    terminal sets and the productions. ``is_dual`` marks grammars produced by
    :func:`dual`; they are exempt from the no-terminal-on-lhs rule.
    """

    initial: frozenset
    terminal: frozenset
    productions: tuple
    is_dual: bool = False
    vocabulary: frozenset = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        prods = tuple(
            p if p.index == i else Production(p.lhs, p.rhs, i)
            for i, p in enumerate(self.productions)
        )
        object.__setattr__(self, "productions", prods)
        object.__setattr__(self, "initial", frozenset(self.initial))
        object.__setattr__(self, "terminal", frozenset(self.terminal))
        vocab = set(self.initial) | set(self.terminal)
        for p in prods:
            vocab.update(p.lhs)
            vocab.update(p.rhs)
        object.__setattr__(self, "vocabulary", frozenset(vocab))

    @classmethod
    def build(
        cls,
        rules: Iterable[tuple[str | Iterable[Symbol], str | Iterable[Symbol]]],
        initial: Iterable[Symbol],
        terminal: Iterable[Symbol],
    ) -> "Grammar":
        """Convenience constructor: ``Grammar.build([("S", "A B")], ["S"], ["x"])``."""
        prods = tuple(Production(word(l), word(r), i) for i, (l, r) in enumerate(rules))
        return cls(frozenset(initial), frozenset(terminal), prods)

    @property
    def nonterminals(self) -> frozenset:
        return self.vocabulary - self.terminal

    def is_terminal(self, sym: Symbol) -> bool:
        return sym in self.terminal

    def start_symbol(self) -> Symbol:
        if len(self.initial) != 1:
            raise GrammarError(
                f"grammar has {len(self.initial)} initial symbols, expected exactly one"
            )
        (s,) = self.initial
        return s

    def with_productions(self, prods: Iterable[Production], initial=None) -> "Grammar":
        return Grammar(
            frozenset(self.initial if initial is None else initial),
            self.terminal,
            tuple(prods),
            self.is_dual,
        )

    def __str__(self) -> str:
        return serialize(self)


def _violations(g: Grammar) -> tuple[list[str], list[str]]:
    errors: list[str] = []
    warnings: list[str] = []
    for sym in sorted(g.vocabulary):
        if not is_identifier(sym):
            errors.append(f"symbol {sym!r} is not a valid identifier")
    for p in g.productions:
        if not p.lhs:
            errors.append(f"production {p.index} ({p}) has an empty left side")
        if not p.rhs:
            errors.append(f"production {p.index} ({p}) has an empty right side")
        if not g.is_dual:
            bad = [s for s in p.lhs if s in g.terminal]
            if bad:
                errors.append(
                    f"production {p.index} ({p}) has terminal {bad[0]!r} on its left side"
                )
    heads = {p.lhs for p in g.productions}
    for sym in sorted(g.initial):
        if not g.is_dual and (sym,) not in heads:
            warnings.append(f"no production for initial symbol {sym!r}")
    return errors, warnings


def validate(g: Grammar) -> list[str]:
    """Return a description of each violated grammar requirement (empty if none)."""
    errors, warnings = _violations(g)
    return errors + warnings


def check(g: Grammar) -> None:
    """Raise :class:`GrammarError` on hard violations (warnings are tolerated)."""
    errors, _ = _violations(g)
    if errors:
        raise GrammarError("; ".join(errors))


def dual(g: Grammar) -> Grammar:
    """Reverse every production and swap the initial and terminal sets."""
    return Grammar(
        g.terminal,
        g.initial,
        tuple(p.inverse() for p in g.productions),
        not g.is_dual,
    )


def is_sentence(g: Grammar, s: Sequence[Symbol]) -> bool:
    unknown = [x for x in s if x not in g.vocabulary]
    if unknown:
        raise GrammarError(f"unknown symbol {unknown[0]!r}")
    return len(s) > 0 and all(x in g.terminal for x in s)


def is_normal(g: Grammar) -> bool:
    return all(len(p.lhs) in (1, 2) and len(p.rhs) in (1, 2) for p in g.productions)


# -- file format -----------------------------------------------------------


def parse_grammar(text: str) -> Grammar:
    """Parse the plain-text grammar format.

    ::

        # comment
        initial: S
        terminal: w x y z
        S -> A B C
        A B -> x
    """
    initial = terminal = None
    rules: list[tuple[Word, Word, int]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        if not line.strip():
            continue
        indent = len(line) - len(line.lstrip())
        stripped = line.strip()
        m = re.match(r"(initial|terminal)\s*:(.*)\Z", stripped)
        if m:
            key, rest = m.group(1), m.group(2)
            names = rest.split()
            _check_names(names, lineno, raw)
            if key == "initial":
                if initial is not None:
                    raise GrammarSyntaxError("duplicate 'initial:' section", lineno, indent + 1)
                initial = names
            else:
                if terminal is not None:
                    raise GrammarSyntaxError("duplicate 'terminal:' section", lineno, indent + 1)
                terminal = names
            continue
        if "->" not in stripped:
            raise GrammarSyntaxError("expected 'LHS -> RHS' or a section line", lineno, indent + 1)
        if stripped.count("->") > 1:
            col = raw.index("->", raw.index("->") + 2) + 1
            raise GrammarSyntaxError("more than one '->' on a line", lineno, col)
        left, right = stripped.split("->")
        lhs, rhs = left.split(), right.split()
        arrow_col = raw.index("->") + 1
        if not lhs:
            raise GrammarSyntaxError("empty production side (left)", lineno, arrow_col)
        if not rhs:
            raise GrammarSyntaxError("empty production side (right)", lineno, arrow_col + 2)
        _check_names(lhs + rhs, lineno, raw)
        rules.append((tuple(lhs), tuple(rhs), lineno))
    if initial is None:
        raise GrammarSyntaxError("missing 'initial:' section", max(1, len(text.splitlines())))
    if terminal is None:
        raise GrammarSyntaxError("missing 'terminal:' section", max(1, len(text.splitlines())))
    terms = frozenset(terminal)
    for lhs, rhs, lineno in rules:
        bad = [s for s in lhs if s in terms]
        if bad:
            raise GrammarSyntaxError(f"terminal {bad[0]!r} on the left side", lineno)
    g = Grammar(
        frozenset(initial),
        terms,
        tuple(Production(l, r, i) for i, (l, r, _) in enumerate(rules)),
    )
    check(g)
    return g


def _check_names(names: list[str], lineno: int, raw: str) -> None:
    for n in names:
        if not is_identifier(n):
            raise GrammarSyntaxError(f"invalid symbol name {n!r}", lineno, raw.find(n) + 1)


def serialize(g: Grammar) -> str:
    """Render ``g`` in the file format; stable for a fixed grammar."""
    lines = [
        "initial: " + " ".join(sorted(g.initial)),
        "terminal: " + " ".join(sorted(g.terminal)),
    ]
    lines.extend(str(p) for p in g.productions)
    return "\n".join(lines) + "\n"


def load_grammar(path) -> Grammar:
    with open(path, encoding="utf-8") as fh:
        return parse_grammar(fh.read())
