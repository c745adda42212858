"""Exhaustive PSL histograms for small lengths, written as CSV (n, psl, count)."""

import argparse
import csv
import sys

from pslforge.oracle import enumerate_psl_histogram

ap = argparse.ArgumentParser()
ap.add_argument("--max-length", type=int, default=20)
ap.add_argument("--workers", type=int, default=1)
args = ap.parse_args()

w = csv.writer(sys.stdout, lineterminator="\n")
w.writerow(["n", "psl", "count"])
for n in range(2, args.max_length + 1):
    for value, count in sorted(enumerate_psl_histogram(n, workers=args.workers).items()):
        w.writerow([n, value, count])
