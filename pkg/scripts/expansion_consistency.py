#!/usr/bin/env python3
"""Residual of each closed small-t expansion of log f against the direct
log-product, and the fitted log-log slope over a range of t.

For a truncated expansion the slope is the first omitted power of t; for an
expansion that is complete up to exponentially small terms the slope grows
as t shrinks.
"""

import argparse
import math
from dataclasses import dataclass

from partasym.exact_oracle import FamilySpec
from partasym.qseries import direct_log_f, expansion_log_f


@dataclass
class Config:
    family: str = "nsp"
    r: int | None = 12
    h: int = 0
    k: int = 1
    terms: tuple[int, ...] = (1, 2, 3)
    ts: tuple[float, ...] = (0.05, 0.08, 0.12, 0.2)
    precision: int = 50


def residual(spec, h, k, t, J, precision):
    z = direct_log_f(spec, h, k, t, precision).value - expansion_log_f(spec, h, k, t, J, precision).value
    im = (float(z.imag) + math.pi) % (2 * math.pi) - math.pi
    return abs(complex(float(z.real), im))


def slope(ts, rs):
    xs, ys = [math.log(t) for t in ts], [math.log(r) for r in rs]
    mx, my = sum(xs) / len(xs), sum(ys) / len(ys)
    return sum((x - mx) * (y - my) for x, y in zip(xs, ys)) / sum((x - mx) ** 2 for x in xs)


def run(cfg: Config):
    spec = FamilySpec(cfg.family, cfg.r if cfg.family == "nsp" else None)
    print(f"{spec.label} at ({cfg.h},{cfg.k})")
    print("  J  " + "".join(f"{t:>12}" for t in cfg.ts) + "      slope")
    for J in cfg.terms:
        rs = [residual(spec, cfg.h, cfg.k, t, J, cfg.precision) for t in cfg.ts]
        s = f"{slope(cfg.ts, rs):9.2f}" if min(rs) > 0 else "        -"
        print(f"  {J:<3}" + "".join(f"{r:12.3e}" for r in rs) + "  " + s)


def main():
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--family", default="nsp")
    ap.add_argument("--r", type=int, default=12)
    ap.add_argument("--point", default="0/1", help="h/k")
    ap.add_argument("--terms", default="1,2,3", help="comma-separated J values")
    ap.add_argument("--t", default="0.05,0.08,0.12,0.2", help="comma-separated t values")
    a = ap.parse_args()
    h, k = (int(x) for x in a.point.split("/"))
    run(Config(a.family, a.r, h, k, tuple(int(x) for x in a.terms.split(",")),
               tuple(float(x) for x in a.t.split(","))))


if __name__ == "__main__":
    main()
