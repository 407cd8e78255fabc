import itertools

import pytest

from qmax.graph import degrees

ACCEPTANCE_LINES = []


def catalan_recurrence(m):
    """C_0 = 1, C_m = sum C_i C_{m-1-i}; independent of math.comb."""
    c = [1]
    for k in range(1, m + 1):
        c.append(sum(c[i] * c[k - 1 - i] for i in range(k)))
    return c[m]


def brute_isomorphic(g, h):
    """Try every vertex permutation; only for n <= 8."""
    if g.n != h.n or len(g.edges) != len(h.edges):
        return False
    if sorted(degrees(g)) != sorted(degrees(h)):
        return False
    target = h.edges
    for p in itertools.permutations(range(g.n)):
        if all(((p[a], p[b]) if p[a] < p[b] else (p[b], p[a])) in target for a, b in g.edges):
            return True
    return False


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture
def criterion():
    def record(number, ok, detail):
        ACCEPTANCE_LINES.append(f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {detail}")
        print(ACCEPTANCE_LINES[-1])
        return ok
    return record
