import math
from collections import Counter
from concurrent.futures import ThreadPoolExecutor

import pytest

from partasym import exact_oracle
from partasym.exact_oracle import (
    FamilySpec,
    count,
    count_table,
    group_digits,
    log_product_exponent,
    read_table_file,
    square_divisor_count,
    square_divisor_count_by_scan,
    write_table_file,
)

N_BRUTE = 30


def partitions(n, smallest=1, allowed=None):
    """All partitions of n into parts >= smallest (optionally only parts in ``allowed``)."""
    if n == 0:
        yield ()
        return
    for p in range(smallest, n + 1):
        if allowed is not None and p not in allowed:
            continue
        for rest in partitions(n - p, p, allowed):
            yield (p,) + rest


def colored_count(n, colors):
    """Multisets of colored parts: a part m comes in colors(m) kinds."""
    total = 0
    for lam in partitions(n):
        w = 1
        for m, mult in Counter(lam).items():
            c = colors(m)
            w *= math.comb(mult + c - 1, mult) if c else (1 if mult == 0 else 0)
        total += w
    return total


def poly_mul(a, b, N):
    out = [0] * (N + 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b[: N + 1 - i]):
                out[i + j] += x * y
    return out


def naive_colored3(N):
    """Coefficients of prod (1-x^{9j})^3 / ((1-x^{3j}) (1-x^j)^3) by full polynomial products."""
    res = [1] + [0] * N
    for j in range(1, N + 1):
        geo = [1 if i % j == 0 else 0 for i in range(N + 1)]
        for _ in range(3):
            res = poly_mul(res, geo, N)
        if 3 * j <= N:
            res = poly_mul(res, [1 if i % (3 * j) == 0 else 0 for i in range(N + 1)], N)
        if 9 * j <= N:
            f = [0] * (N + 1)
            f[0], f[9 * j] = 1, -1
            for _ in range(3):
                res = poly_mul(res, f, N)
    return res


def squares_dividing(m):
    return sum(1 for k in range(1, m + 1) if m % (k * k) == 0)


TRIANGULAR = {j * (j + 1) // 2 for j in range(1, 10)}

BRUTE = {
    FamilySpec("nsp", 2): lambda n: sum(1 for _ in partitions(n, 2)),
    FamilySpec("nsp", 5): lambda n: sum(1 for _ in partitions(n, 5)),
    # overpartitions: the first occurrence of each distinct part may be overlined
    FamilySpec("basic"): lambda n: sum(2 ** len(set(lam)) for lam in partitions(n)),
    FamilySpec("planestrict"): lambda n: colored_count(n, lambda m: (m + 1) // 2),
    FamilySpec("prings"): lambda n: colored_count(n, squares_dividing),
    FamilySpec("concave"): lambda n: sum(1 for _ in partitions(n, 1, TRIANGULAR)),
}


@pytest.mark.parametrize("spec", list(BRUTE), ids=str)
def test_against_brute_force(spec):
    table = count_table(spec, N_BRUTE)
    assert [table[n] for n in range(N_BRUTE + 1)] == [BRUTE[spec](n) for n in range(N_BRUTE + 1)]


def test_colored3_against_naive_product():
    table = count_table(FamilySpec("colored3"), N_BRUTE)
    assert list(table.coeffs) == naive_colored3(N_BRUTE)


def test_small_examples():
    assert count(FamilySpec("nsp", 2), 5) == 2
    assert count(FamilySpec("concave"), 6) == 4
    assert count(FamilySpec("basic"), 2) == 4
    assert count(FamilySpec("basic"), 0) == 1
    assert count(FamilySpec("nsp", 2), 10) == 12


@pytest.mark.parametrize("family", exact_oracle.FAMILIES)
def test_table_invariants(family):
    spec = FamilySpec(family, 3 if family == "nsp" else None)
    t = count_table(spec, 400)
    assert t[0] == 1
    assert all(c >= 0 for c in t.coeffs)
    assert all(t[n + 1] >= t[n] for n in range(2, 400))


@pytest.mark.parametrize("r", [2, 3, 4, 6, 12])
def test_times_small_parts_gives_all_partitions(r):
    N = 300
    nsp = list(count_table(FamilySpec("nsp", r), N).coeffs)
    small_parts = [1] + [0] * N
    for j in range(1, r):
        exact_oracle.apply_factor(small_parts, j, -1)
    unrestricted = [1] + [0] * N
    for m in range(1, N + 1):
        exact_oracle.apply_factor(unrestricted, m, -1)
    assert poly_mul(nsp, small_parts, N) == unrestricted


def test_overpartitions_are_even():
    t = count_table(FamilySpec("basic"), 2000)
    assert all(t[n] % 2 == 0 for n in range(1, 2001))


def test_square_divisor_routes_agree():
    for m in range(1, 10_001):
        assert square_divisor_count(m) == square_divisor_count_by_scan(m)


def test_log_product_exponents():
    assert [log_product_exponent(FamilySpec("colored3"), m) for m in (1, 3, 9, 18, 27)] == [3, 4, 1, 1, 1]
    assert [log_product_exponent(FamilySpec("planestrict"), m) for m in (1, 2, 3, 4)] == [1, 1, 2, 2]
    assert [log_product_exponent(FamilySpec("concave"), m) for m in (1, 2, 3, 6, 7, 10)] == [1, 0, 1, 1, 0, 1]
    assert log_product_exponent(FamilySpec("prings"), 36) == 4


def test_family_spec_validation():
    with pytest.raises(ValueError):
        FamilySpec("nsp")
    with pytest.raises(ValueError):
        FamilySpec("nsp", 1)
    with pytest.raises(ValueError):
        FamilySpec("basic", 3)
    with pytest.raises(ValueError):
        FamilySpec("overpartitions")
    assert FamilySpec("nsp", 12).params == "r=12"
    assert FamilySpec("concave").params == "-"


def test_budget_guard():
    with pytest.raises(ValueError):
        count_table(FamilySpec("basic"), exact_oracle.TABLE_BUDGET + 1)
    with pytest.raises(ValueError):
        count(FamilySpec("basic"), -1)


def test_group_digits():
    assert group_digits(49001590791729816727884124) == "4 90015 90791 72981 67278 84124"
    assert group_digits("-80756432951.404") == "-8 07564 32951.404"
    assert group_digits(12345) == "12345"


def test_cache_slices_larger_table():
    spec = FamilySpec("nsp", 7)
    big = count_table(spec, 200)
    small = count_table(spec, 50)
    assert small.coeffs == big.coeffs[:51]


def test_concurrent_readers_agree():
    spec = FamilySpec("nsp", 9)
    with ThreadPoolExecutor(8) as pool:
        tables = list(pool.map(lambda N: count_table(spec, N).coeffs, [300] * 8 + [150] * 4))
    assert all(t == tables[0] for t in tables[:8])
    assert all(t == tables[0][:151] for t in tables[8:])


@pytest.fixture
def fresh_memory_cache(monkeypatch):
    monkeypatch.setattr(exact_oracle, "_cache", {})
    monkeypatch.delenv("PARTASYM_CACHE", raising=False)


def test_disk_cache_file_format(tmp_path, fresh_memory_cache):
    spec = FamilySpec("nsp", 4)
    t = count_table(spec, 20, cache_dir=tmp_path)
    path = tmp_path / "nsp_r4_20.txt"
    lines = path.read_text().splitlines()
    assert lines[0] == "nsp r=4 20"
    assert len(lines) == 22
    assert [int(x) for x in lines[1:]] == list(t.coeffs)
    assert path.read_bytes().endswith(b"\n")
    assert read_table_file(path, spec, 20) == t


def test_disk_cache_round_trip_is_byte_exact(tmp_path, fresh_memory_cache):
    spec = FamilySpec("concave")
    t = count_table(spec, 60, cache_dir=tmp_path)
    path = tmp_path / "concave_60.txt"
    before = path.read_bytes()
    write_table_file(tmp_path / "copy.txt", read_table_file(path, spec, 60))
    assert (tmp_path / "copy.txt").read_bytes() == before
    assert t[6] == 4


def test_disk_cache_is_read_back(tmp_path, fresh_memory_cache, monkeypatch):
    spec = FamilySpec("prings")
    count_table(spec, 30, cache_dir=tmp_path)
    monkeypatch.setattr(exact_oracle, "_cache", {})
    monkeypatch.setattr(exact_oracle, "_compute", lambda *a: pytest.fail("table recomputed"))
    assert count_table(spec, 30, cache_dir=tmp_path)[30] == BRUTE[spec](30)


def test_env_overrides_cache_dir(tmp_path, fresh_memory_cache, monkeypatch):
    env_dir = tmp_path / "env"
    monkeypatch.setenv("PARTASYM_CACHE", str(env_dir))
    count_table(FamilySpec("basic"), 10, cache_dir=tmp_path / "explicit")
    assert (env_dir / "basic_10.txt").exists()
    assert not (tmp_path / "explicit").exists()


def test_mismatched_cache_file_ignored(tmp_path, fresh_memory_cache):
    spec = FamilySpec("basic")
    path = tmp_path / "basic_5.txt"
    path.write_text("basic - 6\n1\n2\n4\n8\n14\n24\n")
    assert read_table_file(path, spec, 5) is None
    assert count_table(spec, 5, cache_dir=tmp_path)[5] == 24
