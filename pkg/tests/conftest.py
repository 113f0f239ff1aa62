import random
from itertools import combinations

import pytest

from xorsynth.circuit import LinearCircuit, gate, inp
from xorsynth.gf2 import BitMatrix

_ACCEPTANCE = []


def random_circuit(rng: random.Random, n: int, size: int, cf_bias: float = 0.0,
                   num_outputs: int | None = None) -> LinearCircuit:
    """Random fan-in-2 circuit.  With probability ``cf_bias`` per gate the
    children are drawn among pairs with disjoint supports (when one exists)."""
    refs = [inp(i) for i in range(1, n + 1)]
    vals = [1 << i for i in range(n)]
    gates = []
    for j in range(1, size + 1):
        pairs = None
        if rng.random() < cf_bias:
            pairs = [(a, b) for a, b in combinations(range(len(refs)), 2) if not vals[a] & vals[b]]
        if pairs:
            a, b = rng.choice(pairs)
        else:
            a, b = rng.sample(range(len(refs)), 2)
        gates.append((refs[a], refs[b]))
        refs.append(gate(j))
        vals.append(vals[a] ^ vals[b])
    if num_outputs is None:
        num_outputs = rng.randint(1, 4)
    outputs = [rng.choice(refs) for _ in range(num_outputs)]
    return LinearCircuit(n, tuple(gates), tuple(outputs))


def naive_rank(rows: list[list[int]]) -> int:
    m = [r[:] for r in rows]
    rank = 0
    ncols = len(m[0]) if m else 0
    for c in range(ncols):
        piv = next((r for r in range(rank, len(m)) if m[r][c]), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        for r in range(len(m)):
            if r != rank and m[r][c]:
                m[r] = [x ^ y for x, y in zip(m[r], m[rank])]
        rank += 1
    return rank


def brute_min_general(A: BitMatrix, cap: int) -> int | None:
    """Breadth-first over sets of held vectors, no pruning at all."""
    targets = {r for r in A.data if r.bit_count() >= 2}
    start = frozenset(1 << i for i in range(A.ncols))
    level = {start}
    for depth in range(cap + 1):
        if any(targets <= s for s in level):
            return depth
        nxt = set()
        for s in level:
            for a, b in combinations(sorted(s), 2):
                v = a ^ b
                if v and v not in s:
                    nxt.add(s | {v})
        level = nxt
    return None


@pytest.fixture
def rng():
    return random.Random(20240917)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker is None or rep.when != "call":
        return
    number, title = marker.args
    _ACCEPTANCE.append((number, title, rep.outcome))


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number, title, outcome in sorted(_ACCEPTANCE):
        status = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"[{status}] AC{number:>2} {title}")
