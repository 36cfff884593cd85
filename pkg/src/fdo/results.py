"""CSV persistence for run records, summaries and convergence traces."""

from __future__ import annotations

import csv
from pathlib import Path

from .runner import RunRecord
from .stats import StatsSummary

RECORD_HEADER = ("algorithm", "function", "run", "seed", "best_fitness", "evaluations", "wall_ms")
SUMMARY_HEADER = ("algorithm", "function", "runs", "avg", "std", "min", "max", "median")
TRACE_HEADER = ("iteration", "best_fitness")


def fmt_real(x) -> str:
    """Round-trippable scientific notation (17 significant digits)."""
    return "%.16e" % float(x)


def _writer(fh):
    return csv.writer(fh, lineterminator="\n")


def write_records(records, path) -> Path:
    path = Path(path)
    with path.open("w", encoding="utf-8", newline="") as fh:
        w = _writer(fh)
        w.writerow(RECORD_HEADER)
        for r in sorted(records, key=RunRecord.sort_key):
            w.writerow((r.algorithm, r.function, r.run, r.seed, fmt_real(r.best_fitness),
                        r.evaluations, "" if r.wall_ms is None else fmt_real(r.wall_ms)))
    return path


def write_summaries(summaries, path_or_file) -> None:
    rows = [(s.algorithm, s.function, s.runs, *(fmt_real(v) for v in
             (s.avg, s.std, s.min, s.max, s.median))) for s in summaries]
    if hasattr(path_or_file, "write"):
        _dump(path_or_file, SUMMARY_HEADER, rows)
        return
    with Path(path_or_file).open("w", encoding="utf-8", newline="") as fh:
        _dump(fh, SUMMARY_HEADER, rows)


def _dump(fh, header, rows):
    w = _writer(fh)
    w.writerow(header)
    w.writerows(rows)


def write_csv(items, path) -> Path:
    """Write run records or summaries, picking the schema from the item type."""
    items = list(items)
    if items and isinstance(items[0], StatsSummary):
        write_summaries(items, path)
        return Path(path)
    return write_records(items, path)


def _check_header(row, expected, path):
    if tuple(row or ()) != expected:
        raise ValueError(f"{path}: unexpected header {row!r}")


def read_records(path) -> list[RunRecord]:
    with Path(path).open(encoding="utf-8", newline="") as fh:
        rows = list(csv.reader(fh))
    _check_header(rows[0] if rows else None, RECORD_HEADER, path)
    return [RunRecord(a, f, int(run), int(seed), float(best), int(ev),
                      float(ms) if ms else None)
            for a, f, run, seed, best, ev, ms in rows[1:]]


def read_summaries(path) -> list[StatsSummary]:
    with Path(path).open(encoding="utf-8", newline="") as fh:
        rows = list(csv.reader(fh))
    _check_header(rows[0] if rows else None, SUMMARY_HEADER, path)
    return [StatsSummary(a, f, int(n), *map(float, rest)) for a, f, n, *rest in rows[1:]]


def trace_path(directory, record: RunRecord) -> Path:
    return Path(directory) / f"{record.algorithm}_{record.function}_run{record.run:03d}.csv"


def emit_convergence(records, directory) -> list[Path]:
    """One ``iteration,best_fitness`` file per record that carries a trace."""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    written = []
    for rec in sorted(records, key=RunRecord.sort_key):
        if rec.trace is None:
            continue
        path = trace_path(directory, rec)
        with path.open("w", encoding="utf-8", newline="") as fh:
            _dump(fh, TRACE_HEADER, ((t, fmt_real(v)) for t, v in enumerate(rec.trace)))
        written.append(path)
    return written
