"""Command-line front end.

Exit codes: 0 success or a positive verdict, 1 a negative verdict, 2 usage,
file or grammar errors.
"""

from __future__ import annotations

import argparse
import json
import sys

from .analysis import check_determinacy, check_isomorphism, compare_languages
from .grammar import GrammarError, load_grammar, render, serialize, validate
from .graphs import Bounds
from .machine import (
    MachineConfig,
    format_trace,
    initial_generative,
    initial_recognitive,
    is_generated,
    replay,
    run_generative,
    run_recognitive,
    run_trace,
)
from .oracle import Relation, enumerate_language, recognize_oracle
from .transforms import prepare

COMMANDS = ("validate", "transform", "oracle", "generate", "recognize",
            "compare", "isomorphism", "determinacy", "trace")


class UsageError(Exception):
    pass


def _positive(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not an integer")
    if v <= 0:
        raise argparse.ArgumentTypeError(f"{text!r} is not a positive integer")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--max-len", type=_positive, default=12, help="longest string explored")
    common.add_argument("--max-depth", type=_positive, default=64, help="most reduction steps")
    common.add_argument("--max-states", type=_positive, default=200_000, help="most distinct nodes")
    common.add_argument("--format", choices=("text", "structured"), default="text")

    parser = argparse.ArgumentParser(prog="prodmachine", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", parents=[common], help="check grammar requirements")
    p.add_argument("grammar")

    p = sub.add_parser("transform", parents=[common], help="prepare a grammar for the machine")
    p.add_argument("grammar")
    p.add_argument("--emit", action="store_true", help="print only the prepared grammar")

    p = sub.add_parser("oracle", parents=[common], help="enumerate a language by string reduction")
    p.add_argument("grammar")
    p.add_argument("--relation", choices=("leftmost", "full"), default="leftmost")
    p.add_argument("--strict", action="store_true", help="literal conjunctive leftmost rule")

    p = sub.add_parser("generate", parents=[common], help="run the generative machine")
    p.add_argument("grammar")
    p.add_argument("--extended", action="store_true", help="allow skipping move 5")
    p.add_argument("--markov", action="store_true", help="first matching production only")

    p = sub.add_parser("recognize", parents=[common], help="run the recognitive machine")
    p.add_argument("grammar")
    p.add_argument("sentence", nargs="+")
    p.add_argument("--extended", action="store_true", help="allow skipping move 5")

    p = sub.add_parser("compare", parents=[common], help="compare all language variants")
    p.add_argument("grammar")

    p = sub.add_parser("isomorphism", parents=[common], help="check strings vs machine states")
    p.add_argument("grammar")
    p.add_argument("--depth", type=_positive, default=12)
    p.add_argument("--no-prepare", action="store_true", help="use the grammar as given")

    p = sub.add_parser("determinacy", parents=[common], help="check non-5 moves are forced")
    p.add_argument("grammar")
    p.add_argument("--no-prepare", action="store_true", help="use the grammar as given")

    p = sub.add_parser("trace", parents=[common], help="print a move-by-move machine run")
    p.add_argument("grammar")
    p.add_argument("--sentence", nargs="+", help="trace recognition of this sentence")
    p.add_argument("--limit", type=_positive, default=500, help="most trace records")
    return parser


def parse_sentence(g, tokens) -> tuple:
    """Whitespace-separated symbol names; an unknown token made only of
    one-character terminals is split into characters."""
    out = []
    for tok in tokens:
        for name in tok.split():
            if name in g.vocabulary:
                out.append(name)
            elif all(ch in g.terminal for ch in name):
                out.extend(name)
            else:
                raise UsageError(f"unknown symbol {name!r}")
    if not out:
        raise UsageError("empty sentence")
    return tuple(out)


class Output:
    def __init__(self, args, stream):
        self.structured = args.format == "structured"
        self.stream = stream
        self.doc = {"command": args.command, "complete": True, "warnings": []}
        self.lines: list[str] = []

    def line(self, text: str = "") -> None:
        self.lines.append(text)

    def field(self, **kw) -> None:
        self.doc.update(kw)

    def incomplete(self, what: str, reason: str | None) -> None:
        self.doc["complete"] = False
        msg = f"warning: {what} incomplete (bound {reason or 'reached'} tripped)"
        self.doc["warnings"].append(msg)
        self.lines.append(msg)

    def flush(self) -> None:
        if self.structured:
            self.stream.write(json.dumps(self.doc, indent=2, sort_keys=True) + "\n")
        else:
            self.stream.write("\n".join(self.lines) + ("\n" if self.lines else ""))


def _sorted_words(ws) -> list[str]:
    return sorted(render(w) for w in ws)


def _bounds(args) -> Bounds:
    return Bounds(args.max_len, args.max_depth, args.max_states)


def run(args, out: Output) -> int:
    g = load_grammar(args.grammar)
    b = _bounds(args)
    cmd = args.command

    if cmd == "validate":
        problems = validate(g)
        out.field(violations=problems)
        out.line("\n".join(problems) if problems else "ok")
        return 0

    if cmd == "transform":
        pg, trace = prepare(g)
        out.field(grammar=serialize(pg), introduced=trace.introduced_symbols,
                  replaced=[[str(o) if o else None, [str(p) for p in r]] for o, r in trace.replaced])
        if not args.emit and trace.replaced:
            out.line("# " + trace.describe().replace("\n", "\n# "))
        out.line(serialize(pg).rstrip("\n"))
        return 0

    if cmd == "oracle":
        rel = Relation.FULL if args.relation == "full" else (
            Relation.STRICT if args.strict else Relation.LEFTMOST)
        res = enumerate_language(g, rel, b)
        words = _sorted_words(res.sentences)
        out.field(relation=rel.value, sentences=words)
        out.lines.extend(words)
        if not res.complete:
            out.incomplete("enumeration", res.graph.truncated_by)
        return 0

    if cmd == "generate":
        pg, _ = prepare(g)
        cfg = MachineConfig.generative(pg, args.extended, "markov" if args.markov else "nondeterministic")
        res = run_generative(cfg, b)
        words = _sorted_words(res.sentences)
        out.field(sentences=words, extended=args.extended, markov=args.markov)
        out.lines.extend(words)
        if not res.complete:
            out.incomplete("generation", res.graph.truncated_by)
        return 0

    if cmd == "recognize":
        sentence = parse_sentence(g, args.sentence)
        pg, _ = prepare(g)
        run_ = run_recognitive(pg, sentence, b, args.extended)
        orc = recognize_oracle(g, sentence, bounds=b)
        chain = [sorted(render(n) for n in layer) for layer in orc.graph.layers]
        verdict = "recognized" if run_.recognized else "not recognized"
        out.field(sentence=render(sentence), recognized=run_.recognized,
                  oracle_recognized=orc.recognized, dual_leftmost_layers=chain,
                  witness=[r.as_dict() for r in run_.witness])
        out.line(f"{verdict}: {render(sentence)}")
        if all(len(layer) == 1 for layer in chain):
            out.line("dual-leftmost derivation: " + " -> ".join(layer[0] for layer in chain))
        else:
            out.line("dual-leftmost layers:")
            for i, layer in enumerate(chain):
                out.line(f"  {i}: {', '.join(layer)}")
        out.line(f"oracle: {'recognized' if orc.recognized else 'not recognized'}")
        if not run_.complete:
            out.incomplete("recognition", run_.graph.truncated_by)
        if not orc.complete:
            out.incomplete("dual-leftmost reduction", orc.graph.truncated_by)
        return 0 if run_.recognized else 1

    if cmd == "compare":
        cmp_ = compare_languages(g, b)
        doc = cmp_.as_dict()
        out.field(language_complete=doc.pop("complete"), **doc)
        out.line(cmp_.format())
        for name, ok in cmp_.complete.items():
            if not ok:
                out.incomplete(name, None)
        return 0

    if cmd in ("isomorphism", "determinacy"):
        pg = g if args.no_prepare else prepare(g)[0]
        if cmd == "isomorphism":
            rep = check_isomorphism(pg, args.depth, b)
            out.line(rep.format())
        else:
            rep = check_determinacy(pg, b)
            out.line(f"verdict: {'pass' if rep.verdict else 'fail'}")
            out.line(f"settled states: {rep.settled_states}, raw states: {rep.raw_states}, "
                     f"guard overlaps resolved by order: {rep.guard_overlaps}")
            if rep.counterexample:
                out.line(f"counterexample: {rep.counterexample}")
        out.field(report=rep.as_dict())
        if not rep.complete:
            out.incomplete(cmd, None)
        return 0 if rep.verdict else 1

    if cmd == "trace":
        pg, _ = prepare(g)
        if args.sentence:
            sentence = parse_sentence(g, args.sentence)
            res = run_recognitive(pg, sentence, b)
            records = res.witness
            if not records:
                records = run_trace(MachineConfig.recognitive(pg), initial_recognitive(sentence), args.limit)
        else:
            cfg = MachineConfig.generative(pg)
            res = run_generative(cfg, b)
            done = sorted((st for st in res.graph.nodes if is_generated(cfg, st)),
                          key=lambda st: (res.graph.depth_of(st), render(st.middle.left)))
            if done:
                labels = [lab for lab, _ in res.graph.path_to(done[0])[1:]]
                records = replay(cfg, initial_generative(cfg), labels)
            else:
                records = run_trace(cfg, initial_generative(cfg), args.limit)
        records = records[: args.limit]
        out.field(records=[r.as_dict() for r in records])
        out.line(format_trace(records))
        return 0

    raise UsageError(f"unknown command {cmd}")


def main(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 0 if e.code == 0 else 2
    out = Output(args, stdout)
    try:
        code = run(args, out)
    except OSError as e:
        stderr.write(f"error: cannot read {args.grammar}: {e.strerror or e}\n")
        return 2
    except (GrammarError, UsageError) as e:
        stderr.write(f"error: {e}\n")
        return 2
    out.flush()
    return code


if __name__ == "__main__":
    sys.exit(main())
