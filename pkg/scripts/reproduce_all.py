#!/usr/bin/env python3
"""Regenerate every reference table, optionally at extra working precision,
and print a per-table pass count plus the failing rows."""

import argparse
import time
from dataclasses import dataclass

from partasym.reproduce import TABLES, run_table


@dataclass
class Config:
    tables: tuple[str, ...] = TABLES
    extra_digits: int = 0
    cache_dir: str | None = None


def run(cfg: Config) -> int:
    failed_total = 0
    for name in cfg.tables:
        started = time.perf_counter()
        rows = run_table(name, cfg.extra_digits, cfg.cache_dir)
        bad = [r for r in rows if not r.passed]
        failed_total += len(bad)
        print(f"{name:<11} {len(rows) - len(bad):>3}/{len(rows)} rows   {time.perf_counter() - started:6.2f}s")
        for r in bad:
            print(f"    FAIL {r.id:<14} got {r.value}  printed {r.expected}")
    return failed_total


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--table", action="append", choices=TABLES, help="repeatable; default all")
    ap.add_argument("--extra-digits", type=int, default=0)
    ap.add_argument("--cache-dir")
    a = ap.parse_args()
    cfg = Config(tuple(a.table) if a.table else TABLES, a.extra_digits, a.cache_dir)
    failed = run(cfg)
    print(f"{failed} rows differ from the printed values")


if __name__ == "__main__":
    main()
