#!/usr/bin/env python3
"""Estimate-minus-exact error and leading-digit agreement across n for one
family, plus the concave-partition growth check log a_n ~ A n^(1/3)."""

import argparse
import math
from dataclasses import dataclass

from partasym.asymptotics import concave_growth_constant, estimate
from partasym.asymptotics.estimate import leading_digit_agreement
from partasym.exact_oracle import FamilySpec, count_table


@dataclass
class Config:
    family: str = "basic"
    r: int | None = None
    ns: tuple[int, ...] = (100, 200, 400, 800)


def error_table(cfg: Config):
    spec = FamilySpec(cfg.family, cfg.r)
    print(f"{spec.label}: n, error, leading digits correct / digits")
    for n in cfg.ns:
        b = estimate(spec, n, with_exact=True)
        print(f"  {n:>6}  {b.error.to_fixed(6):>16}  {leading_digit_agreement(b.total, b.exact):>4} / {len(str(b.exact))}")


def concave_growth(ns=(500, 1000, 2000, 4000, 8000)):
    A = float(concave_growth_constant(30).value)
    t = count_table(FamilySpec("concave"), max(ns))
    print(f"concave: A = {A:.11f}")
    prev = None
    for n in ns:
        gap = A * n ** (1 / 3) - math.log(t[n])
        step = "" if prev is None else f"   d/d log n: {(gap - prev[1]) / math.log(n / prev[0]):.4f}"
        print(f"  {n:>6}  log a_n / n^(1/3) = {math.log(t[n]) / n ** (1 / 3):.6f}   A n^(1/3) - log a_n = {gap:.4f}{step}")
        prev = (n, gap)


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--family", default="basic")
    ap.add_argument("--r", type=int)
    ap.add_argument("--n", default="100,200,400,800", help="comma-separated")
    ap.add_argument("--skip-concave", action="store_true")
    a = ap.parse_args()
    error_table(Config(a.family, a.r, tuple(int(x) for x in a.n.split(","))))
    if not a.skip_concave:
        concave_growth()


if __name__ == "__main__":
    main()
