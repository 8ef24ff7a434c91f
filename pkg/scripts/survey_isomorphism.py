"""Isomorphism and determinacy checks on prepared random grammars.

Failures are tallied by whether the grammar is well-formed, since dead
strings break the string-to-state map.
"""

import argparse
import random
from collections import Counter
from dataclasses import dataclass

from prodmachine.analysis import check_determinacy, check_isomorphism, is_well_formed
from prodmachine.corpus import random_grammar
from prodmachine.graphs import Bounds
from prodmachine.oracle import Relation, transition_graph
from prodmachine.transforms import prepare


@dataclass
class IsoConfig:
    grammars: int = 200
    seed: int = 2
    depth: int = 40
    max_len: int = 5


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--grammars", type=int, default=IsoConfig.grammars)
    ap.add_argument("--seed", type=int, default=IsoConfig.seed)
    ap.add_argument("--depth", type=int, default=IsoConfig.depth)
    ap.add_argument("--show-failures", action="store_true")
    args = ap.parse_args()
    cfg = IsoConfig(args.grammars, args.seed, args.depth)

    rng = random.Random(cfg.seed)
    b = Bounds(cfg.max_len, cfg.depth, 20_000)
    tally = Counter()
    for _ in range(cfg.grammars):
        p = prepare(random_grammar(rng))[0]
        rep = check_isomorphism(p, cfg.depth, b)
        if not rep.complete:
            tally["incomplete"] += 1
            continue
        wf = is_well_formed(p, transition_graph(p, Relation.LEFTMOST, [("S",)], b))
        tally[("well-formed" if wf else "ill-formed", "pass" if rep.verdict else "fail")] += 1
        tally["determinacy " + ("pass" if check_determinacy(p, b).verdict else "fail")] += 1
        if args.show_failures and not rep.verdict:
            print("; ".join(map(str, p.productions)), "->", rep.counterexample)
    for k, v in sorted(tally.items(), key=str):
        print(f"{' '.join(k) if isinstance(k, tuple) else k:<24} {v}")


if __name__ == "__main__":
    main()
