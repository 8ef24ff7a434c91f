"""Language identities over a seeded random grammar corpus.

    python scripts/survey_corpus.py --grammars 300 --seed 1

Prints one row of counts per identity; ``--json`` writes per-grammar rows.
"""

import argparse
import json
import random
from dataclasses import asdict, dataclass

from prodmachine.analysis import compare_languages, is_well_formed, prepared_bounds, terminal_prefix_violations
from prodmachine.corpus import RandomGrammarSpec, random_grammar
from prodmachine.graphs import Bounds
from prodmachine.grammar import render
from prodmachine.oracle import Relation, enumerate_language, recognize_oracle
from prodmachine.transforms import prepare


@dataclass
class SurveyConfig:
    grammars: int = 200
    seed: int = 1
    max_len: int = 5
    max_depth: int = 15
    max_nodes: int = 20_000


def survey_one(g, bounds):
    if not all(enumerate_language(g, r, bounds).complete for r in (Relation.LEFTMOST, Relation.FULL)):
        return None
    c = compare_languages(g, bounds)
    if not c.all_complete:
        return None
    p = prepare(g)[0]
    plm = enumerate_language(p, Relation.LEFTMOST, prepared_bounds(g, bounds))
    strict = enumerate_language(g, Relation.STRICT, bounds)
    rec_orig = {s for s in c.full if recognize_oracle(g, s, bounds=prepared_bounds(g, bounds)).recognized}
    return {
        "grammar": [str(x) for x in g.productions],
        "generated=leftmost": c.generated == c.leftmost,
        "extended_generated=full": c.extended_generated == c.full,
        "recognized=dual_leftmost(prepared)": c.recognized == c.dual_leftmost,
        "recognized=dual_leftmost(original)": c.recognized == rec_orig,
        "extended_recognized=full": c.extended_recognized == c.full,
        "strict<=leftmost": not strict.complete or strict.sentences <= c.leftmost,
        "well_formed": is_well_formed(p, plm.graph),
        "terminal_prefix": not terminal_prefix_violations(p, plm.graph),
        "full": sorted(render(s) for s in c.full),
    }


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    for f, v in asdict(SurveyConfig()).items():
        ap.add_argument("--" + f.replace("_", "-"), type=int, default=v)
    ap.add_argument("--json", help="write per-grammar rows here")
    args = ap.parse_args()
    cfg = SurveyConfig(args.grammars, args.seed, args.max_len, args.max_depth, args.max_nodes)

    rng = random.Random(cfg.seed)
    bounds = Bounds(cfg.max_len, cfg.max_depth, cfg.max_nodes)
    rows, skipped = [], 0
    for _ in range(cfg.grammars):
        row = survey_one(random_grammar(rng, RandomGrammarSpec()), bounds)
        if row is None:
            skipped += 1
        else:
            rows.append(row)

    print(f"completed {len(rows)} of {cfg.grammars} (skipped {skipped} incomplete)")
    keys = [k for k in rows[0] if isinstance(rows[0][k], bool)] if rows else []
    for k in keys:
        print(f"  {k:<38} {sum(r[k] for r in rows):>5}/{len(rows)}")
    wf = [r for r in rows if r["well_formed"]]
    print(f"  {'terminal_prefix | well_formed':<38} {sum(r['terminal_prefix'] for r in wf):>5}/{len(wf)}")
    if args.json:
        with open(args.json, "w") as fh:
            json.dump({"config": asdict(cfg), "rows": rows}, fh, indent=1)


if __name__ == "__main__":
    main()
