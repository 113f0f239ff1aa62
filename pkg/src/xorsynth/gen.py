"""Matrix generators."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .gf2 import BitMatrix

_MASK64 = (1 << 64) - 1


class SplitMix64:
    """Steele, Lea & Flood's SplitMix64.  Pure integer arithmetic, so a seed
    gives the same stream on every platform and Python version."""

    GAMMA = 0x9E3779B97F4A7C15

    def __init__(self, seed: int):
        self.state = seed & _MASK64

    def next(self) -> int:
        self.state = (self.state + self.GAMMA) & _MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
        return z ^ (z >> 31)


def gen_sierpinski(k: int) -> BitMatrix:
    """S_0 = [1], S_{k+1} = [[S_k, 0], [S_k, S_k]]."""
    if k < 0:
        raise ValueError("k must be >= 0")
    rows = [1]
    width = 1
    for _ in range(k):
        rows = rows + [r | (r << width) for r in rows]
        width *= 2
    return BitMatrix(width, width, tuple(rows))


def sierpinski_entry(i: int, j: int) -> int:
    """Entry (i, j) of any S_k, 0-based: 1 iff the bits of j are a subset of those of i."""
    return int(j & ~i == 0)


def gen_sierpinski_bitmask(k: int) -> BitMatrix:
    n = 1 << k
    rows = []
    for i in range(n):
        word = 0
        for j in range(n):
            if sierpinski_entry(i, j):
                word |= 1 << j
        rows.append(word)
    return BitMatrix(n, n, tuple(rows))


def gen_prefix(n: int) -> BitMatrix:
    """First row 0 1 1 ... 1; row j >= 2 is j leading ones."""
    if n < 3:
        raise ValueError("prefix matrix needs n >= 3")
    full = (1 << n) - 1
    rows = [full & ~1] + [(1 << j) - 1 for j in range(2, n + 1)]
    return BitMatrix(n, n, tuple(rows))


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


def _is_square_mod(d: int, p: int) -> bool:
    return pow(d, (p - 1) // 2, p) == 1


def brown_default_delta(p: int) -> int:
    """The smallest square mod p when p = 3 (mod 4), else the smallest non-square.

    With the other parity the graph contains K_{3,3} (already at p = 3 and 5).
    For p = 3, 7, 11, ... this is 1."""
    want_square = p % 4 == 3
    return next(d for d in range(1, p) if _is_square_mod(d, p) == want_square)


@dataclass(frozen=True)
class BrownParams:
    p: int
    delta: int | None = None

    def __post_init__(self):
        if not (_is_prime(self.p) and self.p % 2 == 1):
            raise ValueError(f"p must be an odd prime, got {self.p}")
        if self.delta is None:
            object.__setattr__(self, "delta", brown_default_delta(self.p))
        if not 1 <= self.delta <= self.p - 1:
            raise ValueError(f"delta must lie in 1..{self.p - 1}, got {self.delta}")


def brown_vertices(p: int) -> list[tuple[int, int, int]]:
    return list(product(range(p), repeat=3))


def gen_brown(params: BrownParams | int, delta: int | None = None) -> BitMatrix:
    """Brown's distance graph on F_p^3: u ~ v iff sum (u_i - v_i)^2 == delta (mod p).

    Both sides of the bipartite graph are F_p^3 in lexicographic order.
    K_{3,3}-freeness depends on delta (see ``brown_default_delta``); callers
    that need it should check with ``bounds.kab_free``.
    """
    if not isinstance(params, BrownParams):
        params = BrownParams(params, delta)
    p, d = params.p, params.delta
    verts = brown_vertices(p)
    rows = []
    for u in verts:
        word = 0
        for col, v in enumerate(verts):
            if sum((a - b) ** 2 for a, b in zip(u, v)) % p == d:
                word |= 1 << col
        rows.append(word)
    return BitMatrix(len(verts), len(verts), tuple(rows))


def gen_random(n: int, m: int | None = None, density: float = 0.5, seed: int = 0) -> BitMatrix:
    """An m x n matrix (m defaults to n) of independent Bernoulli(density) entries.

    Entries are drawn row-major from SplitMix64(seed); an entry is 1 iff the
    64-bit draw is below density * 2**64.
    """
    if not 0.0 <= density <= 1.0:
        raise ValueError("density must lie in [0, 1]")
    m = n if m is None else m
    rng = SplitMix64(seed)
    threshold = int(density * (1 << 64))
    rows = []
    for _ in range(m):
        word = 0
        for j in range(n):
            if rng.next() < threshold:
                word |= 1 << j
        rows.append(word)
    return BitMatrix(m, n, tuple(rows))
