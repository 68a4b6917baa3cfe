"""Plain-text and CSV renderings of pipeline outputs."""

from __future__ import annotations

import csv
import io
from typing import Iterable

from .normalize import FIELDS
from .pipeline import KeyValueProfile, SeedRecord
from .reviewers import REASONS, SuggestionReport, format_overlap


def render_id_list(ids: Iterable[str]) -> str:
    return "".join(f"{pid}\n" for pid in sorted(ids))


def render_profile(profile: KeyValueProfile, seed: SeedRecord | None = None) -> str:
    """Each field's key values with seed counts, in selection order."""
    lines = [
        "# key-value profile",
        f"threshold\t{profile.threshold}",
        f"seed_size\t{profile.seed_size}",
        f"target\t{profile.target}",
    ]
    if seed is not None:
        lines.append(f"publication_record_size\t{len(seed.origin.ids)}")
        lines.append(f"references_resolved\t{seed.resolved_references}")
        lines.append(f"references_unresolved\t{seed.unresolved_references}")
    for fld in FIELDS:
        keys = profile.ordered(fld)
        covered = profile.coverage.get(fld, 0)
        lines.append("")
        lines.append(f"[{fld}]\tkeys={len(keys)}\tcovered={covered}/{profile.seed_size}")
        counts = profile.counts.get(fld, {})
        for i, key in enumerate(keys, start=1):
            lines.append(f"{i}\t{key}\t{counts.get(key, '')}")
    return "\n".join(lines) + "\n"


def _reason_text(reasons: Iterable[str]) -> str:
    reasons = set(reasons)
    return ";".join(r for r in REASONS if r in reasons)


def render_suggestions_csv(report: SuggestionReport) -> str:
    selected = {c.author for c in report.selected}
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["rank", "author", "pub_count", "excluded", "reasons", "suggested"])
    for c in report.candidates:
        w.writerow([c.rank, c.author, c.pub_count, "Y" if c.excluded else "N",
                    _reason_text(c.exclusions), "Y" if c.author in selected else "N"])
    return buf.getvalue()


def render_suggestions_text(report: SuggestionReport, label: str = "", domain: str = "") -> str:
    head = "Reviewer suggestions"
    if label:
        head += f" for {label}" + (f" ({domain})" if domain else "")
    lines = [head, f"requested {report.n_min}-{report.n_max}, selected {len(report.selected)}"]
    if report.shortfall:
        lines.append(f"SHORTFALL: fewer than {report.n_min} eligible candidates")
    lines.append("")
    lines.append("Suggested reviewers")
    for i, c in enumerate(report.selected, start=1):
        lines.append(f"  {i}. {c.author}  ({c.pub_count} publications, rank {c.rank})")
    if not report.selected:
        lines.append("  (none)")
    lines.append("")
    lines.append("Ranked candidates")
    lines.append(f"{'rank':>5}  {'pubs':>4}  ex  {'author':<30}  reasons")
    for c in report.candidates:
        lines.append(f"{c.rank:>5}  {c.pub_count:>4}  {'Y ' if c.excluded else 'N '}  "
                     f"{c.author:<30}  {_reason_text(c.exclusions)}".rstrip())
    if report.overlaps:
        lines.append("")
        lines.append("Present as authors in the specialty approximation: total(in_sa)")
        for name, (total, in_sa) in report.overlaps.items():
            lines.append(f"{name}: {format_overlap(total, in_sa)}")
    return "\n".join(lines) + "\n"
