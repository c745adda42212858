"""Command line interface.

Exit codes: 0 success, 1 internal error (undecodable table rows),
2 usage or input error, 3 search budget exhausted without meeting the goal.
Standard output carries only the final result; progress goes to stderr.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import platform
import sys
from dataclasses import dataclass
from datetime import datetime, timezone
from typing import Optional

import numpy as np

from . import __version__
from .codec import CodecError, decode, encode
from .optimizer import ConfigError, SearchConfig, SearchResult, search
from .oracle import DEFAULT_CAP, ResourceLimitError, min_psl_exhaustive
from .sequence import BinarySequence, SequenceError, aacf, merit_factor, psl_db
from .verifier import TableError, load_tables, verify_all

EXIT_OK = 0
EXIT_INTERNAL = 1
EXIT_USAGE = 2
EXIT_GOAL_NOT_MET = 3

log = logging.getLogger("pslforge")

RECORD_FIELDS = (
    "n", "goal", "p", "threshold", "hmin", "hmax", "restarts_cap", "seed", "workers",
    "sequence_hex", "psl", "fitness", "psl_db", "merit_factor", "goal_met",
    "restarts_used", "quakes_used", "neighbor_evaluations", "elapsed_seconds", "version",
)
# fields that legitimately differ between two otherwise identical runs
VOLATILE_FIELDS = ("elapsed_seconds", "timestamp")


class UsageError(Exception):
    pass


def environment_summary() -> dict:
    import numba

    return {
        "python": platform.python_version(),
        "implementation": platform.python_implementation(),
        "system": platform.system(),
        "machine": platform.machine(),
        "numpy": np.__version__,
        "numba": numba.__version__,
    }


@dataclass
class RunRecord:
    config: SearchConfig
    result: SearchResult
    version: str
    timestamp: str
    environment: dict

    @classmethod
    def create(cls, config: SearchConfig, result: SearchResult) -> "RunRecord":
        return cls(config, result, __version__, datetime.now(timezone.utc).isoformat(), environment_summary())

    def to_dict(self) -> dict:
        c, r = self.config, self.result
        return {
            "n": c.n,
            "goal": c.goal,
            "p": c.p,
            "threshold": c.threshold,
            "hmin": c.hmin,
            "hmax": c.hmax,
            "restarts_cap": c.restart_cap,
            # the seed actually used, so that a record alone reproduces a single-worker run
            "seed": r.seed_used,
            "workers": c.workers,
            "sequence_hex": r.hex,
            "psl": r.psl,
            "fitness": r.fitness,
            "psl_db": r.psl_db,
            "merit_factor": r.merit_factor,
            "goal_met": r.goal_met,
            "restarts_used": r.restarts_used,
            "quakes_used": r.quakes_used,
            "neighbor_evaluations": r.neighbor_evaluations,
            "elapsed_seconds": r.elapsed,
            "version": self.version,
            "time_budget": c.time_budget,
            "winner_worker": r.worker,
            "stop_reason": r.stop_reason,
            "timestamp": self.timestamp,
            "environment": self.environment,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    def to_csv(self) -> str:
        buf = io.StringIO()
        d = self.to_dict()
        cols = [k for k in d if k != "environment"]
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(cols)
        w.writerow([d[k] for k in cols])
        return buf.getvalue()


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="pslforge", description="Search and verify low-PSL binary sequences.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="count", default=0, help="more logging on stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    s = sub.add_parser("search", help="shotgun hill climbing for a PSL goal")
    s.add_argument("--length", type=int, required=True)
    s.add_argument("--goal", type=int, required=True)
    s.add_argument("--p", type=int, default=4, help="fitness magnitude (default 4)")
    s.add_argument("--threshold", type=int, default=1000, help="failed quakes before a restart")
    s.add_argument("--hmin", type=int, default=1)
    s.add_argument("--hmax", type=int, default=None, help="default ceil(sqrt(length))")
    s.add_argument("--restarts", type=int, default=100_000)
    s.add_argument("--workers", type=int, default=1)
    s.add_argument("--seed", type=int, default=None, help="default: fresh entropy")
    s.add_argument("--time-budget", type=float, default=None, help="seconds")
    s.add_argument("--deterministic", action="store_true", help="force one worker; requires --seed")
    s.add_argument("--progress-interval", type=float, default=10.0, help="seconds between progress logs")
    s.add_argument("--out", default="-")
    s.add_argument("--format", choices=("json", "csv"), default="json")

    v = sub.add_parser("verify", help="recompute every published table row")
    v.add_argument("--table", default="builtin", help="'builtin' or a CSV path")
    v.add_argument("--report", default="-", help="JSON report path (default stdout)")

    e = sub.add_parser("eval", help="metrics of one hex-encoded sequence")
    e.add_argument("--hex", required=True)
    e.add_argument("--length", type=int, required=True)
    e.add_argument("--p", type=int, default=4)
    e.add_argument("--profile", action="store_true", help="also print C_1..C_{n-1}")
    e.add_argument("--json", action="store_true")

    enc = sub.add_parser("encode", help="+/- string to hex")
    enc.add_argument("--bits", required=True, help="e.g. --bits=--++-++-+++")

    dec = sub.add_parser("decode", help="hex to +/- string")
    dec.add_argument("--hex", required=True)
    dec.add_argument("--length", type=int, required=True)

    b = sub.add_parser("bruteforce", help="exhaustive minimum PSL for small lengths")
    b.add_argument("--length", type=int, required=True)
    b.add_argument("--cap", type=int, default=DEFAULT_CAP)
    b.add_argument("--workers", type=int, default=1)
    b.add_argument("--histogram", action="store_true")
    return parser


def _write(text: str, dest: str) -> None:
    if dest == "-":
        sys.stdout.write(text if text.endswith("\n") else text + "\n")
        sys.stdout.flush()
    else:
        with open(dest, "w", encoding="utf-8") as fh:
            fh.write(text if text.endswith("\n") else text + "\n")


def cmd_search(args) -> int:
    workers = args.workers
    if args.deterministic:
        if args.seed is None:
            raise UsageError("--deterministic requires --seed")
        workers = 1
    try:
        config = SearchConfig(
            n=args.length, goal=args.goal, p=args.p, threshold=args.threshold, hmin=args.hmin,
            hmax=args.hmax, restart_cap=args.restarts, seed=args.seed, workers=workers,
            time_budget=args.time_budget, progress_interval=args.progress_interval,
        )
    except ConfigError as exc:
        raise UsageError(str(exc)) from None
    log.info("search n=%d goal=%d p=%d t=%d h=[%d,%d] workers=%d", config.n, config.goal, config.p,
             config.threshold, config.hmin, config.hmax, config.workers)
    result = search(config)
    record = RunRecord.create(config, result)
    _write(record.to_json() if args.format == "json" else record.to_csv(), args.out)
    log.info("%s: psl %d after %d restarts (%.1fs)", result.stop_reason, result.psl, result.restarts_used, result.elapsed)
    return EXIT_OK if result.goal_met else EXIT_GOAL_NOT_MET


def cmd_verify(args) -> int:
    try:
        rows = load_tables(args.table)
    except TableError as exc:
        raise UsageError(str(exc)) from None
    report = verify_all(rows)
    _write(json.dumps(report.to_dict(), indent=2), args.report)
    s = report.summary()
    print(f"rows {s['rows']}  decode failures {s['decode_failures']}  psl==new {s['psl_matches_new']}  "
          f"db ok {s['db_consistent']}  mf ok {s['mf_consistent']}", file=sys.stderr)
    for v in report.discrepancies:
        print(f"  n={v.n}: {'; '.join(v.notes)}", file=sys.stderr)
    return EXIT_OK if report.ok else EXIT_INTERNAL


def cmd_eval(args) -> int:
    seq = decode(args.hex, args.length)
    prof = aacf(seq)
    out = {
        "n": seq.n,
        "hex": encode(seq),
        "psl": prof.peak,
        "psl_db": round(psl_db(prof.peak, seq.n), 3),
        "merit_factor": round(merit_factor(seq), 3),
        "fitness": prof.fitness(args.p),
        "p": args.p,
    }
    if args.profile:
        out["profile"] = list(prof.values)
    if args.json:
        print(json.dumps(out))
    else:
        for k, val in out.items():
            if k == "profile":
                val = " ".join(map(str, val))
            elif isinstance(val, float):
                val = f"{val:.3f}"
            print(f"{k}: {val}")
    return EXIT_OK


def cmd_encode(args) -> int:
    print(encode(BinarySequence.from_signs(args.bits)))
    return EXIT_OK


def cmd_decode(args) -> int:
    print(decode(args.hex, args.length).signs())
    return EXIT_OK


def cmd_bruteforce(args) -> int:
    report = min_psl_exhaustive(args.length, cap=args.cap, workers=args.workers, histogram=args.histogram)
    print(json.dumps(report.to_dict(), indent=2))
    return EXIT_OK


COMMANDS = {
    "search": cmd_search,
    "verify": cmd_verify,
    "eval": cmd_eval,
    "encode": cmd_encode,
    "decode": cmd_decode,
    "bruteforce": cmd_bruteforce,
}


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    level = logging.WARNING - 10 * min(args.verbose, 2)
    if args.command == "search":
        level = min(level, logging.INFO)
    logging.basicConfig(level=level, stream=sys.stderr, format="%(asctime)s %(levelname)s %(message)s")
    try:
        return COMMANDS[args.command](args)
    except (UsageError, SequenceError, CodecError, ResourceLimitError, ConfigError, TableError, OSError) as exc:
        print(f"pslforge {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
