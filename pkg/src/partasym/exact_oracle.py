"""Exact coefficient tables for the six partition generating functions.

Every generating function is a product of factors (1 - x^m)^(+-e); the tables
are built one factor at a time with the in-place prefix recurrences

    multiply by (1 - x^m):      a[i] -= a[i - m]   (i descending)
    divide   by (1 - x^m):      a[i] += a[i - m]   (i ascending)

on Python integers, so every entry is exact.
"""

from __future__ import annotations

import math
import os
import threading
from dataclasses import dataclass
from pathlib import Path
from typing import Iterator

FAMILIES = ("nsp", "basic", "colored3", "planestrict", "prings", "concave")

# the DP visits N factors per pass; guard against accidental huge requests
TABLE_BUDGET = 10**6


@dataclass(frozen=True)
class FamilySpec:
    """One of the six families; ``r`` (minimal part size) only for ``nsp``."""

    family: str
    r: int | None = None

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}; expected one of {', '.join(FAMILIES)}")
        if self.family == "nsp":
            if self.r is None or int(self.r) != self.r or self.r < 2:
                raise ValueError("family nsp needs an integer r >= 2")
        elif self.r is not None:
            raise ValueError(f"family {self.family} takes no r parameter")

    @property
    def params(self) -> str:
        return f"r={self.r}" if self.family == "nsp" else "-"

    @property
    def label(self) -> str:
        return f"nsp({self.r})" if self.family == "nsp" else self.family

    def __str__(self):
        return self.label


def square_divisor_count(m: int) -> int:
    """#{k >= 1 : k^2 | m}, by counting k up to sqrt(m)."""
    return sum(1 for k in range(1, math.isqrt(m) + 1) if m % (k * k) == 0)


def square_divisor_count_by_scan(m: int) -> int:
    """#{d | m : d a perfect square}, by scanning all divisors of m."""
    count = 0
    for d in range(1, math.isqrt(m) + 1):
        if m % d:
            continue
        for e in {d, m // d}:
            if math.isqrt(e) ** 2 == e:
                count += 1
    return count


def is_triangular(m: int) -> bool:
    # m = j(j+1)/2  <=>  8m + 1 is an odd square
    s = math.isqrt(8 * m + 1)
    return s * s == 8 * m + 1


def log_product_exponent(spec: FamilySpec, m: int) -> int:
    """mu(m) in the normalized form  f(x) = prod_{m>=1} (1 - x^m)^(-mu(m))."""
    if m < 1:
        raise ValueError("m must be positive")
    fam = spec.family
    if fam == "nsp":
        return 1 if m >= spec.r else 0
    if fam == "basic":
        return 2 if m % 2 else 1
    if fam == "colored3":
        return 3 + (m % 3 == 0) - 3 * (m % 9 == 0)
    if fam == "planestrict":
        return (m + 1) // 2
    if fam == "prings":
        return square_divisor_count(m)
    if fam == "concave":
        return 1 if is_triangular(m) else 0
    raise AssertionError(fam)


def _factors(spec: FamilySpec, N: int) -> Iterator[tuple[int, int]]:
    """(m, e) pairs: the generating function is prod (1 - x^m)^e, up to x^N."""
    fam = spec.family
    if fam == "nsp":
        for m in range(spec.r, N + 1):
            yield m, -1
    elif fam == "basic":
        # prod (1 + x^j)/(1 - x^j) = prod (1 - x^{2j}) / (1 - x^j)^2
        for m in range(1, N + 1):
            yield m, -2
        for m in range(2, N + 1, 2):
            yield m, 1
    elif fam == "colored3":
        for m in range(1, N + 1):
            yield m, -3
        for m in range(3, N + 1, 3):
            yield m, -1
        for m in range(9, N + 1, 9):
            yield m, 3
    elif fam == "planestrict":
        for m in range(1, N + 1):
            yield m, -((m + 1) // 2)
    elif fam == "prings":
        for m in range(1, N + 1):
            yield m, -square_divisor_count(m)
    elif fam == "concave":
        j = 1
        while j * (j + 1) // 2 <= N:
            yield j * (j + 1) // 2, -1
            j += 1


def apply_factor(a: list[int], m: int, e: int) -> None:
    """In place: a <- a * (1 - x^m)^e, truncated at len(a) - 1."""
    N = len(a) - 1
    if m > N or e == 0:
        return
    if e > 0:
        for _ in range(e):
            for i in range(N, m - 1, -1):
                a[i] -= a[i - m]
    else:
        for _ in range(-e):
            for i in range(m, N + 1):
                a[i] += a[i - m]


@dataclass(frozen=True)
class CountTable:
    family: FamilySpec
    coeffs: tuple[int, ...]

    @property
    def N(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, n: int) -> int:
        return self.coeffs[n]


def _compute(spec: FamilySpec, N: int) -> tuple[int, ...]:
    a = [1] + [0] * N
    for m, e in _factors(spec, N):
        apply_factor(a, m, e)
    return tuple(a)


_cache: dict[FamilySpec, CountTable] = {}
_cache_lock = threading.Lock()


def cache_dir_from_env(explicit: str | os.PathLike | None = None) -> Path | None:
    """The on-disk cache directory: PARTASYM_CACHE overrides the explicit choice."""
    env = os.environ.get("PARTASYM_CACHE")
    if env:
        return Path(env)
    return Path(explicit) if explicit else None


def _cache_file(cache_dir: Path, spec: FamilySpec, N: int) -> Path:
    suffix = f"_r{spec.r}" if spec.family == "nsp" else ""
    return cache_dir / f"{spec.family}{suffix}_{N}.txt"


def write_table_file(path: Path, table: CountTable) -> None:
    lines = [f"{table.family.family} {table.family.params} {table.N}"]
    lines.extend(str(c) for c in table.coeffs)
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp = path.with_suffix(path.suffix + f".{os.getpid()}.tmp")
    tmp.write_text("\n".join(lines) + "\n", encoding="ascii")
    os.replace(tmp, path)


def read_table_file(path: Path, spec: FamilySpec, N: int) -> CountTable | None:
    try:
        lines = path.read_text(encoding="ascii").splitlines()
    except OSError:
        return None
    if not lines or lines[0] != f"{spec.family} {spec.params} {N}" or len(lines) != N + 2:
        return None
    coeffs = tuple(int(s) for s in lines[1:])
    if coeffs[0] != 1:
        return None
    return CountTable(spec, coeffs)


def count_table(spec: FamilySpec, N: int, cache_dir: str | os.PathLike | None = None) -> CountTable:
    """Exact coefficients a_0..a_N of the family's generating function."""
    if N < 0:
        raise ValueError("N must be non-negative")
    if N > TABLE_BUDGET:
        raise ValueError(f"N = {N} exceeds the table budget {TABLE_BUDGET}")
    cached = _cache.get(spec)
    if cached is not None and cached.N >= N:
        return cached if cached.N == N else CountTable(spec, cached.coeffs[: N + 1])
    disk = cache_dir_from_env(cache_dir)
    table = None
    if disk is not None:
        table = read_table_file(_cache_file(disk, spec, N), spec, N)
    if table is None:
        table = CountTable(spec, _compute(spec, N))
        if disk is not None:
            write_table_file(_cache_file(disk, spec, N), table)
    with _cache_lock:
        current = _cache.get(spec)
        if current is None or current.N < N:
            _cache[spec] = table
    return table


def count(spec: FamilySpec, n: int, cache_dir: str | os.PathLike | None = None) -> int:
    if n < 0:
        raise ValueError("n must be non-negative")
    return count_table(spec, n, cache_dir)[n]


def group_digits(value: int | str, size: int = 5) -> str:
    """Group the integer part in blocks of ``size`` from the right: 4 90015 90791."""
    s = str(value)
    sign = ""
    if s.startswith("-"):
        sign, s = "-", s[1:]
    whole, dot, frac = s.partition(".")
    head = len(whole) % size
    parts = [whole[:head]] if head else []
    parts += [whole[i:i + size] for i in range(head, len(whole), size)]
    return sign + " ".join(parts) + (dot + frac if dot else "")
