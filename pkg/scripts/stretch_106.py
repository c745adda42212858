"""Try to reach PSL 6 at n=106, the value in the first table row.

Not part of the gated suite: success is logged, failure is not an error.
"""

import argparse
import json
import logging
import sys

from pslforge.cli import RunRecord
from pslforge.optimizer import SearchConfig, search

ap = argparse.ArgumentParser()
ap.add_argument("--time-budget", type=float, default=3 * 3600)
ap.add_argument("--workers", type=int, default=1)
ap.add_argument("--seed", type=int, default=None)
ap.add_argument("--log", default="stretch_106.jsonl")
args = ap.parse_args()
logging.basicConfig(level=logging.INFO, stream=sys.stderr, format="%(asctime)s %(message)s")

cfg = SearchConfig(n=106, goal=6, workers=args.workers, seed=args.seed, time_budget=args.time_budget,
                   progress_interval=60)
res = search(cfg)
with open(args.log, "a", encoding="utf-8") as fh:
    fh.write(json.dumps(RunRecord.create(cfg, res).to_dict()) + "\n")
status = "reached" if res.goal_met else "not reached"
print(f"psl 6 {status}: best psl {res.psl}, hex {res.hex}, {res.restarts_used} restarts, {res.elapsed:.0f}s")
