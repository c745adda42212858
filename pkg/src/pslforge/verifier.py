"""Check published result rows by decoding and recomputing every column.

Mismatches against the printed columns are recorded on the verdict; only a
row whose hex cannot be decoded counts as a failure.
"""

from __future__ import annotations

import csv
import io
from dataclasses import asdict, dataclass, field
from importlib import resources
from pathlib import Path
from typing import Iterable, Optional, Union

from .codec import CodecError, decode, normalize
from .sequence import aacf, psl_db

TOLERANCE = 5e-4
COLUMNS = ("n", "old_psl", "new_psl", "hex", "db", "mf")
BUILTIN = "builtin"


class TableError(ValueError):
    pass


@dataclass(frozen=True)
class TableRow:
    n: int
    old_psl: int
    new_psl: int
    hex: str
    db_printed: float
    mf_printed: float
    hex_raw: str = ""


@dataclass
class RowVerdict:
    n: int
    computed_psl: Optional[int]
    psl_matches_new: bool
    db_recomputed: Optional[float]
    mf_recomputed: Optional[float]
    db_consistent: bool
    mf_consistent: bool
    db_printed: float
    mf_printed: float
    notes: list[str] = field(default_factory=list)
    decode_error: Optional[str] = None

    @property
    def discrepant(self) -> bool:
        return not (self.psl_matches_new and self.db_consistent and self.mf_consistent) or bool(self.notes)


def _close(printed: float, value: float) -> bool:
    return abs(printed - round(value, 3)) <= TOLERANCE


def _parse_rows(text: str, origin: str) -> list[TableRow]:
    reader = csv.DictReader(io.StringIO(text))
    if reader.fieldnames is None:
        raise TableError(f"{origin}: empty table")
    missing = [c for c in COLUMNS if c not in reader.fieldnames]
    if missing:
        raise TableError(f"{origin}: missing columns {missing}")
    rows = []
    for lineno, rec in enumerate(reader, start=2):
        try:
            hex_text = normalize(rec["hex"])
            row = TableRow(
                n=int(rec["n"]),
                old_psl=int(rec["old_psl"]),
                new_psl=int(rec["new_psl"]),
                hex=hex_text,
                db_printed=float(rec["db"]),
                mf_printed=float(rec["mf"]),
                hex_raw=rec.get("hex_raw") or "",
            )
        except (TypeError, ValueError) as exc:
            raise TableError(f"{origin}: malformed row at line {lineno}: {exc}") from None
        rows.append(row)
    if not rows:
        raise TableError(f"{origin}: table has no rows")
    return rows


def load_tables(source: Union[str, Path] = BUILTIN) -> list[TableRow]:
    """Load result rows from the bundled dataset or a CSV file."""
    if str(source) == BUILTIN:
        text = resources.files("pslforge.data").joinpath("tables.csv").read_text(encoding="utf-8")
        return _parse_rows(text, "builtin")
    path = Path(source)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise TableError(f"cannot read {path}: {exc}") from None
    return _parse_rows(text, str(path))


def verify_row(row: TableRow, previous: Optional[TableRow] = None) -> RowVerdict:
    """Recompute PSL, dB and MF for ``row``.

    ``previous`` (the row for n-1, if known) enables a check for hex strings
    copied from the neighbouring row.
    """
    try:
        seq = decode(row.hex, row.n)
    except CodecError as exc:
        return RowVerdict(row.n, None, False, None, None, False, False, row.db_printed, row.mf_printed,
                          ["decode failed"], decode_error=str(exc))
    prof = aacf(seq)
    value = prof.peak
    db = psl_db(value, row.n)
    mf = row.n * row.n / (2 * prof.energy())
    v = RowVerdict(
        n=row.n,
        computed_psl=value,
        psl_matches_new=value == row.new_psl,
        db_recomputed=db,
        mf_recomputed=mf,
        db_consistent=_close(row.db_printed, db),
        mf_consistent=_close(row.mf_printed, mf),
        db_printed=row.db_printed,
        mf_printed=row.mf_printed,
    )
    if not v.psl_matches_new:
        v.notes.append(f"computed psl {value} differs from new psl {row.new_psl}")
    if not v.db_consistent:
        candidates = {"old": row.old_psl, "new": row.new_psl}
        matched = [name for name, p in candidates.items() if p > 0 and _close(row.db_printed, psl_db(p, row.n))]
        if "old" in matched and "new" not in matched:
            v.notes.append("db column matches old psl, not new")
        elif "new" in matched:
            v.notes.append("db column matches new psl but not the decoded sequence")
        else:
            v.notes.append("db column matches neither old nor new psl")
    if not v.mf_consistent:
        v.notes.append(f"mf printed {row.mf_printed:.3f}, recomputed {mf:.3f}")
    if previous is not None and previous.n == row.n - 1 and row.hex != previous.hex:
        if row.hex.endswith(previous.hex) or row.hex[1:] == previous.hex:
            v.notes.append(f"hex equals the n={previous.n} hex with a prefix {row.hex[: len(row.hex) - len(previous.hex)]!r}")
    return v


@dataclass
class VerificationReport:
    verdicts: list[RowVerdict]

    @property
    def decode_failures(self) -> list[int]:
        return [v.n for v in self.verdicts if v.decode_error is not None]

    @property
    def discrepancies(self) -> list[RowVerdict]:
        return [v for v in self.verdicts if v.discrepant]

    @property
    def ok(self) -> bool:
        return not self.decode_failures

    def summary(self) -> dict:
        vs = self.verdicts
        return {
            "rows": len(vs),
            "decode_failures": len(self.decode_failures),
            "psl_matches_new": sum(v.psl_matches_new for v in vs),
            "db_consistent": sum(v.db_consistent for v in vs),
            "mf_consistent": sum(v.mf_consistent for v in vs),
            "discrepant_rows": [v.n for v in self.discrepancies],
        }

    def to_dict(self) -> dict:
        return {
            "verdicts": [asdict(v) for v in self.verdicts],
            "discrepancies": [{"n": v.n, "notes": v.notes} for v in self.discrepancies],
            "summary": self.summary(),
        }


def verify_all(rows: Iterable[TableRow]) -> VerificationReport:
    ordered = sorted(rows, key=lambda r: r.n)
    by_n = {r.n: r for r in ordered}
    return VerificationReport([verify_row(r, by_n.get(r.n - 1)) for r in ordered])


def write_csv(rows: Iterable[TableRow], path: Union[str, Path]) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(COLUMNS)
        for r in rows:
            w.writerow([r.n, r.old_psl, r.new_psl, r.hex, f"{r.db_printed:.3f}", f"{r.mf_printed:.3f}"])
