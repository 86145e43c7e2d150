"""Report plumbing: throughput normalization, deterministic JSON, atomic writes."""
from __future__ import annotations

import json
import os
import tempfile

from .errors import DomainError

SECONDS_PER_YEAR = 365.25 * 86_400.0


def throughput_report(entries: list[dict]) -> list[dict]:
    """Normalize throughput entries to tx/s and compute ratios to the smallest.

    Each entry carries a name plus either `tps` or `tx_per_year`.
    """
    if not entries:
        raise DomainError("need at least one throughput entry")
    rows = []
    for e in entries:
        tps = e.get("tps")
        per_year = e.get("tx_per_year")
        if tps is None and per_year is None:
            raise DomainError(f"entry {e.get('name')!r} needs tps or tx_per_year")
        if tps is None:
            tps = per_year / SECONDS_PER_YEAR
        if tps <= 0:
            raise DomainError("throughput must be positive")
        rows.append({"name": e["name"], "tps": float(tps)})
    smallest = min(r["tps"] for r in rows)
    for r in rows:
        r["ratio_to_smallest"] = r["tps"] / smallest
    return rows


def dumps_report(payload: dict) -> str:
    """Deterministic JSON: sorted keys, fixed separators, trailing newline."""
    return json.dumps(payload, indent=2, sort_keys=True, allow_nan=False) + "\n"


def atomic_write_text(path: str, text: str):
    """Write via temp file + rename so readers never see partial artifacts."""
    directory = os.path.dirname(os.path.abspath(path))
    os.makedirs(directory, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-", suffix="~")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def write_csv(path: str, header: list[str], rows: list[list]) -> None:
    """Deterministic CSV dump (repr-stable floats, newline-terminated)."""
    def cell(v) -> str:
        if v is None:
            return ""
        if isinstance(v, float):
            return repr(v)
        return str(v)

    lines = [",".join(header)]
    lines.extend(",".join(cell(v) for v in row) for row in rows)
    atomic_write_text(path, "\n".join(lines) + "\n")
