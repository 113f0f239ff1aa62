"""Lower-bound calculators for cancellation-free circuit size."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .gf2 import BitMatrix

KAB_LIMIT = 10**8


class CombinatorialLimitError(ValueError):
    pass


@dataclass(frozen=True)
class BoundReport:
    name: str
    value: Fraction | float | int
    params: dict = field(default_factory=dict, hash=False)
    applicable: bool = True

    def line(self) -> str:
        extras = " ".join(f"{k}={v}" for k, v in self.params.items())
        applicable = "true" if self.applicable else "false"
        return f"{self.name} {self.value} {applicable} {extras}".rstrip()


def kab_free(A: BitMatrix, a: int, b: int) -> bool:
    """True iff no ``a`` rows and ``b`` columns of ``A`` form an all-ones submatrix."""
    if a < 1 or b < 1:
        raise ValueError("a and b must be >= 1")
    if math.comb(A.ncols, b) * A.nrows > KAB_LIMIT:
        raise CombinatorialLimitError(
            f"C({A.ncols},{b}) * {A.nrows} exceeds the enumeration limit {KAB_LIMIT}")
    cols = [A.column(j) for j in range(1, A.ncols + 1)]

    # depth-first over increasing column subsets, carrying the rows that
    # contain every chosen column; stop a branch once fewer than a rows remain
    def search(start: int, depth: int, rows: int) -> bool:
        if depth == b:
            return rows.bit_count() >= a
        for j in range(start, A.ncols - (b - depth) + 1):
            common = rows & cols[j]
            if common.bit_count() >= a and search(j + 1, depth + 1, common):
                return True
        return False

    return not search(0, 0, (1 << A.nrows) - 1)


def mehlhorn_bound(A: BitMatrix, h: int, k: int) -> BoundReport:
    """sum_i max(|M_i|/k - 1, 0) / h, valid when A has no K_{h+1,k+1}."""
    if h < 1 or k < 1:
        raise ValueError("h and k must be >= 1")
    total = Fraction(0)
    for w in A.row_weights():
        total += max(Fraction(w, k) - 1, Fraction(0))
    value = total / h
    return BoundReport("mehlhorn", value, {"h": h, "k": k}, kab_free(A, h + 1, k + 1))


def log2_factorial(M: int) -> float:
    return math.log2(math.factorial(M)) if M > 1 else 0.0


def log2_circuit_count(n: int, M: int) -> float:
    """log2 of (n+M)^(2M) (n+M+1)^n / M!, the bound on the number of
    circuits with n inputs, n outputs and M gates."""
    if n < 1 or M < 0:
        raise ValueError("need n >= 1 and M >= 0")
    return 2 * M * math.log2(n + M) + n * math.log2(n + M + 1) - log2_factorial(M)


def counting_bound(n: int, M: int) -> BoundReport:
    value = log2_circuit_count(n, M)
    # fewer than 2^(n^2) circuits means some n x n matrix needs more than M gates
    return BoundReport("counting", value, {"n": n, "M": M}, value < n * n)


def _power_of_two_exponent(n: int) -> int:
    if n < 1 or n & (n - 1):
        raise ValueError(f"{n} is not a power of two")
    return n.bit_length() - 1


def sierpinski_cf_lower(n: int) -> int:
    """n log2(n) / 2 for the n x n Sierpinski matrix."""
    k = _power_of_two_exponent(n)
    return (n * k) // 2


def sierpinski_bound(n: int) -> BoundReport:
    return BoundReport("sierpinski", sierpinski_cf_lower(n), {"n": n}, True)
