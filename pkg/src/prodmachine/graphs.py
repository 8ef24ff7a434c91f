"""Layered transition graphs built by bounded breadth-first search."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Hashable, Iterable


@dataclass(frozen=True)
class Bounds:
    max_string_length: int = 12
    max_depth: int = 64
    max_nodes: int = 200_000

    def __post_init__(self):
        for name in ("max_string_length", "max_depth", "max_nodes"):
            v = getattr(self, name)
            if not isinstance(v, int) or v <= 0:
                raise ValueError(f"{name} must be a positive integer, got {v!r}")


@dataclass
class TransitionGraph:
    """Nodes grouped by distance from the generating set.

    A node sits in the earliest layer that reaches it. ``edges`` holds every
    ``(src, dst, label)`` found while expanding layers, including edges into
    nodes discovered earlier.
    """

    layers: list
    edges: set
    complete: bool
    layer_complete: list
    truncated_by: str | None = None
    parent: dict = field(default_factory=dict, repr=False)

    @property
    def nodes(self) -> set:
        out = set()
        for layer in self.layers:
            out |= layer
        return out

    def depth_of(self, node) -> int | None:
        for i, layer in enumerate(self.layers):
            if node in layer:
                return i
        return None

    def out_edges(self, node) -> list:
        return sorted(((l, d) for s, d, l in self.edges if s == node), key=repr)

    def path_to(self, node) -> list:
        """Shortest ``[(label, node), ...]`` from a generating node to ``node``."""
        steps = []
        while node in self.parent:
            prev, label = self.parent[node]
            steps.append((label, node))
            node = prev
        steps.append((None, node))
        steps.reverse()
        return steps


Successors = Callable[[Hashable], Iterable[tuple]]


def explore(
    initial: Iterable,
    successors: Successors,
    size: Callable[[Hashable], int],
    bounds: Bounds,
) -> TransitionGraph:
    """Breadth-first expansion of ``successors`` (yielding ``(label, node)``).

    Successor nodes longer than ``bounds.max_string_length`` are dropped,
    at most ``bounds.max_depth`` layers past the first are built, and no more
    than ``bounds.max_nodes`` distinct nodes are kept. Tripping any bound
    clears ``complete``; reaching an empty frontier leaves it set.
    """
    frontier = list(dict.fromkeys(initial))
    if not frontier:
        raise ValueError("generating set must be non-empty")
    seen = set(frontier)
    parent: dict = {}
    layers = [frozenset(frontier)]
    layer_complete = [True]
    edges: set = set()
    truncated_by = None

    def trip(reason):
        nonlocal truncated_by
        if truncated_by is None:
            truncated_by = reason

    depth = 0
    while frontier:
        if depth >= bounds.max_depth:
            for n in frontier:
                if any(m not in seen for _, m in successors(n)):
                    trip("max_depth")
                    break
            break
        nxt = []
        ok = True
        for n in frontier:
            for label, m in successors(n):
                if size(m) > bounds.max_string_length:
                    ok = False
                    trip("max_string_length")
                    continue
                if m not in seen:
                    if len(seen) >= bounds.max_nodes:
                        ok = False
                        trip("max_nodes")
                        continue
                    seen.add(m)
                    parent[m] = (n, label)
                    nxt.append(m)
                edges.add((n, m, label))
        if nxt:
            layers.append(frozenset(nxt))
            layer_complete.append(ok)
        elif not ok:
            layer_complete[-1] = False
        frontier = nxt
        depth += 1
    return TransitionGraph(
        layers, edges, truncated_by is None, layer_complete, truncated_by, parent
    )
