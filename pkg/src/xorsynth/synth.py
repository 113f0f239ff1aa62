"""Circuit constructors.

Every public synthesizer returns a :class:`SynthReport` whose circuit has
been checked against the target matrix and whose ``cancellation_free`` flag
comes from running the checkers, not from what the construction promises.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations

from . import cfcheck
from .circuit import ZERO, CircuitBuilder, LinearCircuit, NodeRef, computes, inp
from .gen import gen_prefix, gen_sierpinski
from .gf2 import BitMatrix


@dataclass(frozen=True)
class SynthReport:
    circuit: LinearCircuit
    method: str
    gate_count: int
    cancellation_free: bool

    def summary(self) -> str:
        return f"method={self.method} gates={self.gate_count} cf={str(self.cancellation_free).lower()}"


def _report(C: LinearCircuit, method: str, A: BitMatrix) -> SynthReport:
    if not computes(C, A):
        raise AssertionError(f"{method} produced a circuit that does not compute the matrix")
    return SynthReport(C, method, C.size, cfcheck.check_cf(C).is_cf)


def _support(word: int) -> list[int]:
    out = []
    while word:
        low = word & -word
        out.append(low.bit_length())
        word ^= low
    return out


def synth_naive(A: BitMatrix) -> SynthReport:
    """Each row as its own left-to-right chain."""
    if A.nrows == 0 or A.ncols == 0:
        raise ValueError("matrix has a zero dimension")
    b = CircuitBuilder(A.ncols)
    outs = [b.xor_chain([inp(i) for i in _support(r)]) for r in A.data]
    return _report(b.build(outs), "naive", A)


def default_block_width(n: int) -> int:
    if n < 2:
        return 1
    lg = math.log2(n)
    b = math.floor(lg) - (math.floor(2 * math.log2(lg)) if lg > 0 else 0)
    return min(max(1, b), n)


def lupanov_bound(A: BitMatrix, b: int) -> int:
    """Upper bound on synth_lupanov's gate count for block width ``b``."""
    blocks = _blocks(A.ncols, b)
    per_block = (1 << b) - b - 1
    assembly = 0
    for r in A.data:
        nz = sum(1 for mask in blocks if r & mask)
        assembly += max(nz - 1, 0)
    return len(blocks) * per_block + assembly


def _blocks(ncols: int, b: int) -> list[int]:
    return [((1 << min(b, ncols - s)) - 1) << s for s in range(0, ncols, b)]


def synth_lupanov(A: BitMatrix, block_width: int | None = None) -> SynthReport:
    """Column blocks of width ``b``; within a block, every row pattern that
    occurs is built once from (pattern minus its lowest column) + lowest
    column; rows are then summed across their nonzero blocks."""
    n = A.ncols
    b = default_block_width(n) if block_width is None else block_width
    if not 1 <= b <= max(n, 1):
        raise ValueError(f"block width must lie in 1..{n}, got {b}")
    builder = CircuitBuilder(n)
    blocks = _blocks(n, b)

    pattern_ref: dict[int, NodeRef] = {}
    for mask in blocks:
        needed = set()
        for r in A.data:
            pat = r & mask
            # closure under dropping the lowest column, down to single columns
            while pat.bit_count() >= 2 and pat not in needed:
                needed.add(pat)
                pat &= pat - 1
        for pat in sorted(needed, key=lambda p: (p.bit_count(), p)):
            low = pat & -pat
            rest = pat ^ low
            rest_ref = pattern_ref.get(rest) or inp(rest.bit_length())
            pattern_ref[pat] = builder.xor(rest_ref, inp(low.bit_length()))

    def block_ref(pat: int) -> NodeRef:
        if pat.bit_count() == 1:
            return inp(pat.bit_length())
        return pattern_ref[pat]

    outs = []
    for r in A.data:
        parts = [block_ref(r & mask) for mask in blocks if r & mask]
        outs.append(builder.xor_chain(parts))
    return _report(builder.build(outs), "lupanov", A)


def synth_sierpinski(k: int) -> SynthReport:
    """Divide and conquer: S_k on each half of the inputs, then
    y_{h+j} = y_j + t_j for the bottom half."""
    if k < 0:
        raise ValueError("k must be >= 0")
    builder = CircuitBuilder(1 << k)

    def build(level: int, offset: int) -> list[NodeRef]:
        if level == 0:
            return [inp(offset + 1)]
        half = 1 << (level - 1)
        top = build(level - 1, offset)
        bottom = build(level - 1, offset + half)
        return top + [builder.xor(y, t) for y, t in zip(top, bottom)]

    C = builder.build(build(k, 0))
    return _report(C, "sierpinski", gen_sierpinski(k))


def synth_prefix_cancel(n: int) -> SynthReport:
    """n gates: the running prefix sums give y2..yn, then y1 = yn + x1."""
    if n < 3:
        raise ValueError("prefix matrix needs n >= 3")
    b = CircuitBuilder(n)
    ys = [b.xor(inp(1), inp(2))]
    for j in range(3, n + 1):
        ys.append(b.xor(ys[-1], inp(j)))
    y1 = b.xor(ys[-1], inp(1))
    return _report(b.build([y1] + ys), "prefix-cancel", gen_prefix(n))


def synth_prefix_cf(n: int) -> SynthReport:
    """2n - 3 gates: prefix chain for y2..yn plus a separate x2 + ... + xn for y1."""
    if n < 3:
        raise ValueError("prefix matrix needs n >= 3")
    b = CircuitBuilder(n)
    ys = [b.xor(inp(1), inp(2))]
    for j in range(3, n + 1):
        ys.append(b.xor(ys[-1], inp(j)))
    y1 = b.xor_chain([inp(j) for j in range(2, n + 1)])
    return _report(b.build([y1] + ys), "prefix-cf", gen_prefix(n))


def synth_greedy_cse(A: BitMatrix) -> SynthReport:
    """Pair-extraction heuristic.

    Each row is kept as a set of terms (inputs first, then extracted
    sums).  While some row has two or more terms, the pair of terms that
    co-occurs in the most rows becomes a new gate and replaces the pair in
    every such row.  Ties go to the lexicographically smallest pair of term
    indices.  Terms in a row always have disjoint supports, so every gate
    is cancellation-free.
    """
    n = A.ncols
    builder = CircuitBuilder(n)
    terms: list[NodeRef] = [inp(i) for i in range(1, n + 1)]  # term t -> node
    rows = [set(i - 1 for i in _support(r)) for r in A.data]

    while True:
        counts: dict[tuple[int, int], int] = {}
        for row in rows:
            if len(row) < 2:
                continue
            for pair in combinations(sorted(row), 2):
                counts[pair] = counts.get(pair, 0) + 1
        if not counts:
            break
        best = min(counts, key=lambda p: (-counts[p], p))
        a, b = best
        terms.append(builder.xor(terms[a], terms[b]))
        new = len(terms) - 1
        for row in rows:
            if a in row and b in row:
                row -= {a, b}
                row.add(new)

    outs = [terms[next(iter(row))] if row else ZERO for row in rows]
    return _report(builder.build(outs), "greedy", A)


METHODS = ("naive", "lupanov", "greedy", "sierpinski", "prefix-cancel", "prefix-cf")


def best_cf_size(A: BitMatrix) -> int:
    """Smallest gate count among the matrix-driven synthesizers."""
    return min(s(A).gate_count for s in (synth_naive, synth_lupanov, synth_greedy_cse))
