"""Per-applicant key figures: publication record, seed record and approximation sizes."""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from typing import Iterable, Sized

from .errors import InvariantViolation

CSV_HEADER = ("applicant", "domain", "pr", "sr", "sa")


@dataclass(frozen=True)
class KeyFigures:
    applicant_label: str
    domain_label: str
    pr_count: int
    sr_count: int
    sa_count: int

    def __post_init__(self) -> None:
        if min(self.pr_count, self.sr_count, self.sa_count) < 0:
            raise InvariantViolation(f"{self.applicant_label}: negative count")
        if self.sr_count < self.pr_count:
            raise InvariantViolation(
                f"{self.applicant_label}: seed record ({self.sr_count}) smaller than "
                f"publication record ({self.pr_count})"
            )

    def row(self) -> tuple[str, str, int, int, int]:
        return (self.applicant_label, self.domain_label, self.pr_count, self.sr_count, self.sa_count)


def _size(x: Sized | int) -> int:
    return x if isinstance(x, int) else len(x)


def key_figures(label: str, domain_label: str, pr: Sized | int, sr: Sized | int,
                sa: Sized | int) -> KeyFigures:
    """Build the figures from pipeline outputs (or bare counts)."""
    return KeyFigures(label, domain_label, _size(pr), _size(sr), _size(sa))


def render_key_figures_csv(rows: Iterable[KeyFigures]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for kf in rows:
        writer.writerow(kf.row())
    return buf.getvalue()


def parse_key_figures_rows(lines: Iterable[str]) -> list[KeyFigures]:
    """Read ``applicant,domain,pr,sr,sa`` rows; a header line is skipped."""
    out = []
    for rec in csv.reader(line for line in lines if line.strip()):
        if tuple(c.strip() for c in rec) == CSV_HEADER:
            continue
        if len(rec) != 5:
            raise ValueError(f"expected 5 columns, got {len(rec)}: {rec!r}")
        label, domain, pr, sr, sa = (c.strip() for c in rec)
        out.append(KeyFigures(label, domain, int(pr), int(sr), int(sa)))
    return out
