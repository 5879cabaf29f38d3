"""How often the mutation search certifies a pair, by mode and depth.

For random weight pairs on corpus quivers, records whether the rank
search ("cer": hom-vanishing, surjective or injective) and the pairing
search ("hev": hom-vanishing, or e- and ě-vanishing) succeed within each
depth, and how often the computed rank agrees with the oracle.

    python scripts/hev_coverage.py --pairs 100 --range 4 --depth 8 qp1 [qp2 ...]
"""

import argparse
import json
from collections import Counter

import numpy as np

from qprank.errors import QPRankError, SearchExhausted
from qprank.oracle import FieldConfig, Oracle
from qprank.pairing import duality_condition_check
from qprank.qpfile import load_qp
from qprank.rank import SearchConfig, compute_rank


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("qps", nargs="*", default=["a3.qp", "k3.qp", "two-one.qp", "triangle.qp", "cyclic-four.qp"])
    ap.add_argument("--pairs", type=int, default=60)
    ap.add_argument("--range", type=int, default=3)
    ap.add_argument("--depth", type=int, default=8)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--no-oracle", action="store_true")
    args = ap.parse_args()
    rng = np.random.default_rng(args.seed)
    summary = {}
    for path in args.qps:
        qp = load_qp(path)
        o = Oracle(qp, FieldConfig(seed=args.seed))
        frozen = qp.quiver.frozen
        cer_depths, hev = Counter(), Counter()
        agree = disagree = errors = 0
        for _ in range(args.pairs):
            d, c = (tuple(0 if u + 1 in frozen else int(x)
                          for u, x in enumerate(rng.integers(-args.range, args.range + 1, qp.n)))
                    for _ in range(2))
            try:
                gamma, cert, o2 = compute_rank(qp, d, eps_check=c, oracle=o, config=SearchConfig(depth=args.depth))
                cer_depths[cert.depth] += 1
                if not args.no_oracle:
                    got = o.rank(("delta", d), ("check", c))
                    if got == gamma[:qp.n]:
                        agree += 1
                    else:
                        disagree += 1
            except SearchExhausted:
                cer_depths["exhausted"] += 1
            except QPRankError as exc:
                errors += 1
                print(f"{path} {d} {c}: {type(exc).__name__}: {exc}")
            res = duality_condition_check(qp, d, c, depth=args.depth, oracle=o)
            hev[res["hypothesis"] or "none"] += 1
        summary[path] = {
            "pairs": args.pairs,
            "cer_depths": {str(k): v for k, v in sorted(cer_depths.items(), key=str)},
            "hev": dict(hev),
            "oracle_agree": agree,
            "oracle_disagree": disagree,
            "errors": errors,
        }
        covered = args.pairs - hev["none"]
        print(f"{path}: rank search certified {args.pairs - cer_depths['exhausted']}/{args.pairs}, "
              f"pairing hypothesis {covered}/{args.pairs}, oracle agree {agree} disagree {disagree}")
    print(json.dumps(summary, indent=1, sort_keys=True))


if __name__ == "__main__":
    main()
