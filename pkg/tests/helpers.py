"""Test helpers and brute-force oracles independent of the library code paths."""

from prodmachine.grammar import is_synthesized


def w(text):
    """'ABC' -> ('A', 'B', 'C'): single-letter transcription of paper strings."""
    return tuple(text)


def canonical(g):
    """Productions with synthesized symbols renamed by first appearance."""
    names = {}

    def ren(sym):
        if is_synthesized(sym):
            names.setdefault(sym, f"N{len(names)}")
            return names[sym]
        return sym

    return [(tuple(map(ren, p.lhs)), tuple(map(ren, p.rhs))) for p in g.productions]


def brute_occurrences(g, s):
    """Every (start, end, production) by comparing each slice with each lhs."""
    s = tuple(s)
    out = []
    for i in range(len(s)):
        for j in range(i + 1, len(s) + 1):
            for p in g.productions:
                if s[i:j] == p.lhs:
                    out.append((i, j, p))
    return out


def brute_full_successors(g, s):
    s = tuple(s)
    return {s[:i] + p.rhs + s[j:] for i, j, p in brute_occurrences(g, s)}


def brute_operational(g, s):
    occ = brute_occurrences(g, s)
    if not occ:
        return set()
    e = min(j for _, j, _ in occ)
    longest = max(j - i for i, j, _ in occ if j == e)
    return {(i, p) for i, j, p in occ if j == e and j - i == longest}


def brute_language(g, successors, max_len):
    """Plain worklist closure; returns (sentences, exhausted)."""
    seen = {(a,) for a in g.initial}
    todo = list(seen)
    exhausted = True
    steps = 0
    while todo:
        steps += 1
        if steps > 100_000:
            return None, False
        s = todo.pop()
        for t in successors(g, s):
            if len(t) > max_len:
                exhausted = False
                continue
            if t not in seen:
                seen.add(t)
                todo.append(t)
    return {s for s in seen if all(x in g.terminal for x in s)}, exhausted
