import math

import pytest


def fit_slope(ts, errs):
    """Least-squares slope of log|err| against log t."""
    xs = [math.log(t) for t in ts]
    ys = [math.log(abs(e)) for e in errs]
    mx = sum(xs) / len(xs)
    my = sum(ys) / len(ys)
    return sum((x - mx) * (y - my) for x, y in zip(xs, ys)) / sum((x - mx) ** 2 for x in xs)


@pytest.fixture
def slope():
    return fit_slope


@pytest.fixture(autouse=True)
def high_precision_mpmath():
    """Reference values built with the global mpmath context need more than 15 digits."""
    import mpmath

    with mpmath.workdps(100):
        yield


ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def acceptance_report():
    """Record one PASS/FAIL line per acceptance criterion; echoed now and in the session summary."""

    def report(number: int, ok: bool, detail: str) -> None:
        line = f"criterion {number:>2}: {'PASS' if ok else 'FAIL'}  {detail}"
        ACCEPTANCE_LINES.append(line)
        print(line)

    return report


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
