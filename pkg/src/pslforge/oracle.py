"""Exhaustive PSL enumeration for small lengths.

Deliberately naive: every sequence's sidelobes are summed from scratch with
numpy, sharing nothing with the incremental search code, so the two can
cross-check each other.
"""

from __future__ import annotations

from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .codec import encode
from .sequence import BinarySequence

DEFAULT_CAP = 24
BLOCK = 1 << 15


class ResourceLimitError(ValueError):
    """Requested enumeration exceeds the configured length cap."""


@dataclass
class OracleReport:
    n: int
    min_psl: int
    witness: BinarySequence
    count_at_min: int
    enumerated: int
    histogram: Optional[dict[int, int]] = field(default=None)

    def to_dict(self) -> dict:
        d = {
            "n": self.n,
            "min_psl": self.min_psl,
            "witness_hex": encode(self.witness),
            "witness": self.witness.signs(),
            "count_at_min": self.count_at_min,
            "enumerated": self.enumerated,
        }
        if self.histogram is not None:
            d["histogram"] = {str(k): v for k, v in sorted(self.histogram.items())}
        return d


def naive_sidelobes(bits: np.ndarray) -> np.ndarray:
    """C_1..C_{n-1} for each row of a (m, n) array of +-1 values."""
    m, n = bits.shape
    out = np.empty((m, n - 1), dtype=np.int32)
    for u in range(1, n):
        out[:, u - 1] = np.sum(bits[:, : n - u] * bits[:, u:], axis=1, dtype=np.int32)
    return out


def _block_bits(start: int, stop: int, n: int) -> np.ndarray:
    k = np.arange(start, stop, dtype=np.int64)
    shifts = np.arange(n - 1, -1, -1, dtype=np.int64)
    return (((k[:, None] >> shifts) & 1) * 2 - 1).astype(np.int8)


def _scan_block(start: int, stop: int, n: int):
    """(min psl, index of first sequence at the min, count at min, psl counts) for [start, stop)."""
    peaks = np.abs(naive_sidelobes(_block_bits(start, stop, n))).max(axis=1)
    lo = int(peaks.min())
    at = peaks == lo
    counts = np.bincount(peaks)
    return lo, start + int(np.argmax(at)), int(at.sum()), counts


def _check_length(n: int, cap: int) -> None:
    if n < 2:
        raise ValueError(f"n must be >= 2, got {n}")
    if n > cap:
        raise ResourceLimitError(f"n={n} exceeds the exhaustive-search cap of {cap}")


def _enumerate(n: int, cap: int, workers: int):
    _check_length(n, cap)
    # negation symmetry: scan only sequences with b_0 = -1 (top bit clear), then double
    half = 1 << (n - 1)
    ranges = [(s, min(s + BLOCK, half)) for s in range(0, half, BLOCK)]
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(lambda r: _scan_block(r[0], r[1], n), ranges))
    else:
        parts = [_scan_block(a, b, n) for a, b in ranges]
    lo = min(p[0] for p in parts)
    witness_idx = min(p[1] for p in parts if p[0] == lo)
    count = 2 * sum(p[2] for p in parts if p[0] == lo)
    hist: Counter = Counter()
    for p in parts:
        for value, c in enumerate(p[3]):
            if c:
                hist[value] += 2 * int(c)
    witness = BinarySequence(tuple(_block_bits(witness_idx, witness_idx + 1, n)[0].tolist()))
    return lo, witness, count, dict(hist)


def min_psl_exhaustive(n: int, cap: int = DEFAULT_CAP, workers: int = 1, histogram: bool = False) -> OracleReport:
    """Minimum PSL over all 2^n sequences of length n, with a witness and count."""
    lo, witness, count, hist = _enumerate(n, cap, workers)
    return OracleReport(n, lo, witness, count, 1 << n, hist if histogram else None)


def enumerate_psl_histogram(n: int, cap: int = DEFAULT_CAP, workers: int = 1) -> dict[int, int]:
    """Map PSL value -> number of length-n sequences with that PSL."""
    return _enumerate(n, cap, workers)[3]
