"""Search a range of lengths against the published table goals.

Appends one JSON run record per length to --out. Example:

    python scripts/campaign.py --start 106 --stop 115 --target old --time-budget 600
"""

import argparse
import json
import logging
import sys

from pslforge.cli import RunRecord
from pslforge.optimizer import SearchConfig, search
from pslforge.verifier import load_tables


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--start", type=int, default=106)
    ap.add_argument("--stop", type=int, default=300, help="inclusive")
    ap.add_argument("--target", choices=("old", "new"), default="old",
                    help="goal column of the table to aim for")
    ap.add_argument("--time-budget", type=float, default=600.0, help="seconds per length")
    ap.add_argument("--workers", type=int, default=1)
    ap.add_argument("--seed", type=int, default=None)
    ap.add_argument("--out", default="campaign.jsonl")
    args = ap.parse_args(argv)
    logging.basicConfig(level=logging.INFO, stream=sys.stderr, format="%(asctime)s %(message)s")

    rows = {r.n: r for r in load_tables()}
    met = 0
    lengths = [n for n in range(args.start, args.stop + 1) if n in rows]
    with open(args.out, "a", encoding="utf-8") as fh:
        for n in lengths:
            goal = rows[n].old_psl if args.target == "old" else rows[n].new_psl
            seed = None if args.seed is None else args.seed + n
            cfg = SearchConfig(n=n, goal=goal, workers=args.workers, seed=seed, time_budget=args.time_budget)
            res = search(cfg)
            met += res.goal_met
            fh.write(json.dumps(RunRecord.create(cfg, res).to_dict()) + "\n")
            fh.flush()
            logging.info("n=%d goal=%d -> psl %d (%s, %.1fs)", n, goal, res.psl, res.stop_reason, res.elapsed)
    print(f"{met}/{len(lengths)} goals met")


if __name__ == "__main__":
    main()
