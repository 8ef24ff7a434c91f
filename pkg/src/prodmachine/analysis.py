"""Bounded empirical checks relating the machine to leftmost reduction."""

from __future__ import annotations

from dataclasses import asdict, dataclass, field

from .grammar import Grammar, render
from .graphs import Bounds, TransitionGraph, explore
from .machine import (
    DeterminacyError,
    MachineConfig,
    MachineError,
    MachineState,
    Tape,
    _move,
    allows_move5,
    decision_successors,
    f_map,
    initial_generative,
    run_generative,
    run_recognitive,
    step,
)
from .oracle import Relation, enumerate_language, recognize_oracle, transition_graph
from .transforms import prepare


def depth_factor(g: Grammar) -> int:
    """Upper bound on prepared-grammar steps standing in for one step of ``g``."""
    worst = 1
    for p in g.productions:
        terms = sum(s in g.terminal for s in p.rhs)
        extra = max(len(p.rhs) - 2, 0) + max(len(p.lhs) - 2, 0)
        worst = max(worst, 1 + extra + terms)
    return worst


def prepared_bounds(g: Grammar, b: Bounds) -> Bounds:
    """Bounds for ``prepare(g)`` matching ``b`` on ``g`` (one extra step for a new S)."""
    return Bounds(b.max_string_length, depth_factor(g) * b.max_depth + 1, b.max_nodes)


def is_well_formed(g: Grammar, graph: TransitionGraph) -> bool:
    """Every node of a complete reduction graph can still reach a sentence."""
    if not graph.complete:
        return False
    back: dict = {}
    for a, b, _ in graph.edges:
        back.setdefault(b, set()).add(a)
    good = {n for n in graph.nodes if n and all(x in g.terminal for x in n)}
    todo = list(good)
    while todo:
        for a in back.get(todo.pop(), ()):
            if a not in good:
                good.add(a)
                todo.append(a)
    return good == graph.nodes


def terminal_prefix_violations(g: Grammar, graph: TransitionGraph) -> list:
    """Nodes in which some terminal follows a nonterminal."""
    bad = []
    for n in graph.nodes:
        k = 0
        while k < len(n) and n[k] in g.terminal:
            k += 1
        if any(x in g.terminal for x in n[k:]):
            bad.append(n)
    return sorted(bad)


# -- determinacy -------------------------------------------------------------


@dataclass
class DeterminacyReport:
    verdict: bool
    settled_states: int
    raw_states: int
    guard_overlaps: int
    complete: bool
    counterexample: str | None = None

    def as_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, d: dict) -> "DeterminacyReport":
        return cls(**d)


def _non5_guards(cfg: MachineConfig, s: MachineState) -> list[int]:
    return [m for m in cfg.move_order if m != 5 and _move(cfg, m, s)]


def check_determinacy(g: Grammar, bounds: Bounds = Bounds()) -> DeterminacyReport:
    """Explore the generative machine of prepared ``g`` and verify that every
    move-5 outcome has a unique non-5 continuation ending where move 5 is
    possible or nothing is."""
    cfg = MachineConfig.generative(g)
    raw: set = set()
    overlaps = 0

    def successors(s):
        nonlocal overlaps
        out = []
        for o in step(cfg, s):
            chain = [o.state]
            cur = o.state
            while True:
                outs = step(cfg, cur)
                raw.add(cur)
                if not outs or any(x.move == 5 for x in outs):
                    break
                if len(outs) != 1:
                    raise DeterminacyError(cur, outs)
                if len(_non5_guards(cfg, cur)) > 1:
                    overlaps += 1
                cur = outs[0].state
                chain.append(cur)
                if len(chain) > 8 * (cur.size() + 4):
                    raise MachineError(f"no settling from {o.state}")
            if step(cfg, cur) and not allows_move5(cfg, cur):
                raise MachineError(f"continuation stopped early at {cur}")
            out.append((o.production, cur))
        return out

    start = initial_generative(cfg)
    try:
        root = start
        while step(cfg, root) and not allows_move5(cfg, root):
            (o,) = step(cfg, root)
            raw.add(root)
            root = o.state
        graph = explore([root], successors, MachineState.size, bounds)
    except DeterminacyError as e:
        return DeterminacyReport(False, 0, len(raw), overlaps, False, str(e.state))
    except MachineError as e:
        return DeterminacyReport(False, 0, len(raw), overlaps, False, str(e))
    return DeterminacyReport(True, len(graph.nodes), len(raw | graph.nodes), overlaps, graph.complete)


# -- isomorphism -------------------------------------------------------------


@dataclass
class LayerResult:
    index: int
    strings: int
    states: int
    bijective: bool


@dataclass
class IsomorphismReport:
    depth_checked: int
    layers: list = field(default_factory=list)
    matched_edges: int = 0
    unmatched_edges: int = 0
    injective: bool = True
    complete: bool = True
    counterexample: str | None = None

    @property
    def verdict(self) -> bool:
        return (
            self.injective
            and self.unmatched_edges == 0
            and all(layer.bijective for layer in self.layers)
        )

    def as_dict(self) -> dict:
        d = asdict(self)
        d["verdict"] = "pass" if self.verdict else "fail"
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "IsomorphismReport":
        d = {k: v for k, v in d.items() if k != "verdict"}
        d["layers"] = [LayerResult(**x) for x in d["layers"]]
        return cls(**d)

    def format(self) -> str:
        lines = [f"{'layer':>5}  {'|L_i|':>6}  {'|T_i|':>6}  bijective"]
        for r in self.layers:
            lines.append(f"{r.index:>5}  {r.strings:>6}  {r.states:>6}  {'yes' if r.bijective else 'NO'}")
        lines.append(f"edges matched: {self.matched_edges}, unmatched: {self.unmatched_edges}")
        lines.append(f"F injective: {'yes' if self.injective else 'NO'}")
        if self.counterexample:
            lines.append(f"counterexample: {self.counterexample}")
        lines.append(f"verdict: {'pass' if self.verdict else 'fail'}")
        return "\n".join(lines)


def collapsed_graph(g: Grammar, bounds: Bounds) -> TransitionGraph:
    """Graph of collapsed transitions from the state with S scanned on the middle tape."""
    cfg = MachineConfig.generative(g)
    root = MachineState(middle=Tape(scanned=cfg.goal))
    return explore([root], lambda s: decision_successors(cfg, s), MachineState.size, bounds)


def check_isomorphism(g: Grammar, depth: int = 12, bounds: Bounds = Bounds()) -> IsomorphismReport:
    """Compare the leftmost graph of prepared ``g`` with the collapsed machine graph
    under the string-to-state map, layer by layer and edge by edge."""
    b = Bounds(bounds.max_string_length, depth, bounds.max_nodes)
    start = g.start_symbol()
    lgraph = transition_graph(g, Relation.LEFTMOST, [(start,)], b)
    tgraph = collapsed_graph(g, b)
    report = IsomorphismReport(depth_checked=max(len(lgraph.layers), len(tgraph.layers)) - 1)
    report.complete = lgraph.complete and tgraph.complete

    image: dict = {}
    for node in sorted(lgraph.nodes):
        try:
            st = f_map(g, node)
        except ValueError as e:
            report.injective = False
            report.counterexample = report.counterexample or f"{render(node)}: {e}"
            continue
        if st in image:
            report.injective = False
            report.counterexample = report.counterexample or (
                f"F({render(image[st])}) = F({render(node)})"
            )
        image[st] = node
    fmap = {n: s for s, n in image.items()}

    for i in range(report.depth_checked + 1):
        lay_l = lgraph.layers[i] if i < len(lgraph.layers) else frozenset()
        lay_t = tgraph.layers[i] if i < len(tgraph.layers) else frozenset()
        mapped = {fmap[n] for n in lay_l if n in fmap}
        ok = len(mapped) == len(lay_l) == len(lay_t) and mapped == lay_t
        report.layers.append(LayerResult(i, len(lay_l), len(lay_t), ok))
        if not ok and report.counterexample is None:
            extra = sorted(map(str, lay_t - mapped))[:1] or sorted(render(n) for n in lay_l)[:1]
            report.counterexample = f"layer {i}: {extra[0] if extra else '?'}"

    ledges = {(fmap.get(a), fmap.get(c), p) for a, c, p in lgraph.edges}
    tedges = set(tgraph.edges)
    report.matched_edges = len(ledges & tedges)
    report.unmatched_edges = len(ledges ^ tedges)
    if report.unmatched_edges and report.counterexample is None:
        a, c, p = sorted(ledges ^ tedges, key=str)[0]
        report.counterexample = f"edge via {p}: {a} => {c}"
    return report


# -- languages ---------------------------------------------------------------


@dataclass
class LanguageComparison:
    leftmost: frozenset
    full: frozenset
    generated: frozenset
    extended_generated: frozenset
    recognized: frozenset
    extended_recognized: frozenset
    dual_leftmost: frozenset
    complete: dict

    @property
    def all_complete(self) -> bool:
        return all(self.complete.values())

    def as_dict(self) -> dict:
        out = {}
        for name in ("leftmost", "full", "generated", "extended_generated",
                     "recognized", "extended_recognized", "dual_leftmost"):
            out[name] = sorted(render(s) for s in getattr(self, name))
        out["complete"] = dict(self.complete)
        return out

    def format(self) -> str:
        lines = []
        for name, vals in self.as_dict().items():
            if name == "complete":
                continue
            flag = "" if self.complete.get(name, True) else "   (incomplete)"
            lines.append(f"{name:<20} {{{', '.join(vals)}}}{flag}")
        return "\n".join(lines)


def compare_languages(g: Grammar, bounds: Bounds = Bounds()) -> LanguageComparison:
    """Oracle languages of ``g`` next to what the machines on ``prepare(g)`` produce."""
    p, _ = prepare(g)
    pb = prepared_bounds(g, bounds)
    lm = enumerate_language(g, Relation.LEFTMOST, bounds)
    full = enumerate_language(g, Relation.FULL, bounds)
    gen = run_generative(MachineConfig.generative(p), pb)
    egen = run_generative(MachineConfig.generative(p, extended=True), pb)
    rec, erec, dl = set(), set(), set()
    rec_ok = erec_ok = dl_ok = True
    for s in sorted(full.sentences):
        r = run_recognitive(p, s, pb)
        e = run_recognitive(p, s, pb, extended=True)
        o = recognize_oracle(p, s, bounds=pb)
        rec_ok &= r.complete or r.recognized
        erec_ok &= e.complete or e.recognized
        dl_ok &= o.complete or o.recognized
        if r.recognized:
            rec.add(s)
        if e.recognized:
            erec.add(s)
        if o.recognized:
            dl.add(s)
    complete = {
        "leftmost": lm.complete,
        "full": full.complete,
        "generated": gen.complete,
        "extended_generated": egen.complete,
        "recognized": rec_ok and full.complete,
        "extended_recognized": erec_ok and full.complete,
        "dual_leftmost": dl_ok and full.complete,
    }
    return LanguageComparison(
        lm.sentences, full.sentences, gen.sentences, egen.sentences,
        frozenset(rec), frozenset(erec), frozenset(dl), complete,
    )
