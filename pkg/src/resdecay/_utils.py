"""Formatting and environment helpers for deterministic output."""

from __future__ import annotations

import os


def worker_count() -> int:
    """Worker cap from RESDECAY_THREADS; defaults to 1 (sequential)."""
    raw = os.environ.get("RESDECAY_THREADS", "1")
    try:
        n = int(raw)
    except ValueError:
        return 1
    return max(1, n)


def fmt_shortest(x: float) -> str:
    """Shortest round-trip decimal representation, uppercase exponent."""
    return repr(float(x)).replace("e", "E")


def fmt_17(x: float) -> str:
    """17-significant-digit scientific representation."""
    return f"{float(x):.16E}"


def write_csv(path, header: list[str], rows) -> None:
    """Comma-separated, newline-terminated rows with a mandatory header."""
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(row))
    with open(path, "w", newline="") as fh:
        fh.write("\n".join(lines) + "\n")
