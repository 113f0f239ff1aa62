"""Exhaustive minimum-size search for small matrices.

Two iterative-deepening searches over sets of distinct value vectors,
starting from the unit vectors.  The goal is reached when every row of
weight >= 2 is in the set; the first limit at which the goal is reachable
is the minimum.

Forward search (both modes): one step XORs two held vectors into a new
one; in cancellation-free mode the two must have disjoint supports.
Pruning, all admissible:

* each missing row needs its own gate;
* cancellation-free only: a missing row ``r`` is a disjoint union of held
  vectors joined by fresh gates, so it needs ceil(|r| / s) - 1 more gates
  (s = largest held subset of r).  Those gates form a nested-or-disjoint
  family, so every other missing row that cannot join it costs one more;
* cancellation-free only: a useful gate lies inside some missing row;
* when the budget equals the number of missing rows, each remaining gate
  must produce a missing row;
* gate orders are canonical: consecutive gates that do not feed each other
  must have increasing vectors, which loses no gate set.

Split search (cancellation-free only, the default there): see
``_SplitSearch``.  It never revisits a family in another order, which is
what makes the 8 x 8 Sierpinski instance tractable.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .circuit import ZERO, LinearCircuit, NodeRef, gate, inp
from .gf2 import BitMatrix

GENERAL = "general"
CF = "cancellation_free"


@dataclass(frozen=True)
class OracleResult:
    status: str  # "found" | "exceeds_budget"
    mode: str
    min_gates: Optional[int]
    circuit: Optional[LinearCircuit]
    nodes_expanded: int

    @property
    def found(self) -> bool:
        return self.status == "found"


def _ceil_div(a: int, b: int) -> int:
    return -(-a // b)


class _Search:
    def __init__(self, targets: tuple[int, ...], cf: bool):
        self.targets = targets
        self.cf = cf
        self.expanded = 0
        self.failed: dict[tuple[int, int], int] = {}
        self.index = {t: i for i, t in enumerate(targets)}
        # laminar[i]: targets that can share a tree with target i (nested or disjoint)
        self.laminar = [0] * len(targets)
        self.inside = [0] * len(targets)
        for i, a in enumerate(targets):
            for j, b in enumerate(targets):
                if i == j:
                    continue
                if a & b == 0 or a & ~b == 0 or b & ~a == 0:
                    self.laminar[i] |= 1 << j
                if b & ~a == 0:
                    self.inside[i] |= 1 << j
        self._clique_memo: dict[int, int] = {0: 0}

    def _max_laminar(self, mask: int) -> int:
        """Largest pairwise nested-or-disjoint subfamily of the targets in ``mask``."""
        got = self._clique_memo.get(mask)
        if got is not None:
            return got
        low = mask & -mask
        i = low.bit_length() - 1
        rest = mask ^ low
        best = max(self._max_laminar(rest), 1 + self._max_laminar(rest & self.laminar[i]))
        self._clique_memo[mask] = best
        return best

    def lower_bound(self, have: list[int], missing: list[int]) -> int:
        lb = len(missing)
        if self.cf:
            mask = 0
            for r in missing:
                mask |= 1 << self.index[r]
            for r in missing:
                s = max(v.bit_count() for v in have if v & ~r == 0)
                tree = _ceil_div(r.bit_count(), s) - 1
                # the gates of r's tree form a laminar family; any other missing
                # row that does not fit into it needs a gate of its own
                i = self.index[r]
                fits = self._max_laminar(mask & self.inside[i])
                lb = max(lb, tree + len(missing) - 1 - fits)
        return lb

    def moves(self, have: list[int], have_set: set[int], missing: list[int],
              remaining: int, last: int) -> list[tuple[int, int, int]]:
        tight = remaining == len(missing)
        seen: dict[int, tuple[int, int]] = {}
        size = len(have)
        for ia in range(size):
            a = have[ia]
            for ib in range(ia + 1, size):
                b = have[ib]
                if self.cf:
                    if a & b:
                        continue
                    v = a | b
                else:
                    v = a ^ b
                if v in have_set or v in seen:
                    continue
                if tight and v not in missing:
                    continue
                if self.cf and not any(v & ~r == 0 for r in missing):
                    continue
                if v < last and a != last and b != last:
                    continue
                seen[v] = (a, b)
        return [(v, a, b) for v, (a, b) in sorted(seen.items())]

    def dfs(self, have: list[int], have_set: set[int], key: int, missing: list[int],
            remaining: int, last: int, path: list[tuple[int, int, int]]) -> bool:
        if not missing:
            return True
        if remaining <= 0 or self.lower_bound(have, missing) > remaining:
            return False
        memo_key = (key, last)
        if self.failed.get(memo_key, -1) >= remaining:
            return False
        self.expanded += 1
        for v, a, b in self.moves(have, have_set, missing, remaining, last):
            have.append(v)
            have_set.add(v)
            path.append((v, a, b))
            rest = [r for r in missing if r != v]
            if self.dfs(have, have_set, key | (1 << v), rest, remaining - 1, v, path):
                return True
            path.pop()
            have_set.discard(v)
            have.pop()
        self.failed[memo_key] = remaining
        return False


    def root_jobs(self, have: list[int], missing: list[int], limit: int) -> list[tuple]:
        if self.lower_bound(have, missing) > limit:
            return []
        self.expanded += 1
        return [(tuple(have) + (v,), ((v, a, b),))
                for v, a, b in self.moves(have, set(have), missing, limit, 0)]

    def resume(self, job: tuple, limit: int) -> tuple[bool, list]:
        have, path = list(job[0]), list(job[1])
        key = 0
        for v in have:
            key |= 1 << v
        held = set(have)
        missing = [r for r in self.targets if r not in held]
        ok = self.dfs(have, held, key, missing, limit - len(path), path[-1][0], path)
        return ok, path


class _SplitSearch:
    """Cancellation-free search that ignores gate order.

    A CF circuit is a family F of vectors (containing every target) in
    which each member is the disjoint union of two members of F or unit
    vectors.  Pick the largest member whose split is still open, branch on
    its split, add any new parts to F, repeat.  Every minimal family is
    reachable, and no family is generated in more than one order.
    """

    def __init__(self, targets: tuple[int, ...]):
        self.targets = targets
        self.expanded = 0
        self.failed: dict[tuple[frozenset, frozenset], int] = {}

    @staticmethod
    def _has_split(v: int, family: set[int]) -> bool:
        if v.bit_count() == 2:
            return True
        for a in family:
            if a & ~v == 0 and a != v:
                b = v ^ a
                if b.bit_count() == 1 or b in family:
                    return True
        # a unit plus a member of the family
        word = v
        while word:
            low = word & -word
            if v ^ low in family:
                return True
            word ^= low
        return False

    def lower_bound(self, family: set[int], pending: list[int]) -> int:
        lb = len(family)
        if any(not self._has_split(v, family) for v in pending):
            lb += 1
        return lb

    @staticmethod
    def splits(v: int, family: set[int]) -> list[tuple[int, int, int, tuple[int, ...]]]:
        low = v & -v
        rest = v ^ low
        out = []
        sub = rest
        while True:
            sub = (sub - 1) & rest
            # sub == rest is skipped: it would leave an empty second part
            a = low | sub
            b = v ^ a
            new = tuple(p for p in (a, b) if p.bit_count() >= 2 and p not in family)
            out.append((len(new), a, b, new))
            if sub == 0:
                break
        out.sort()
        return out

    def dfs(self, family: set[int], pending: list[int], limit: int,
            path: list[tuple[int, int, int]]) -> bool:
        if not pending:
            return True
        if self.lower_bound(family, pending) > limit:
            return False
        memo_key = (frozenset(family), frozenset(pending))
        if self.failed.get(memo_key, -1) >= limit:
            return False
        self.expanded += 1
        v = max(pending, key=lambda p: (p.bit_count(), p))
        others = [p for p in pending if p != v]
        for n_new, a, b, new in self.splits(v, family):
            if len(family) + n_new > limit:
                break
            family.update(new)
            path.append((v, a, b))
            if self.dfs(family, others + list(new), limit, path):
                return True
            path.pop()
            family.difference_update(new)
        self.failed[memo_key] = limit
        return False

    def root_jobs(self, limit: int) -> list[tuple]:
        family, pending = set(self.targets), list(self.targets)
        if self.lower_bound(family, pending) > limit:
            return []
        self.expanded += 1
        v = max(pending, key=lambda p: (p.bit_count(), p))
        return [(tuple(sorted(family | set(new))), ((v, a, b),))
                for n_new, a, b, new in self.splits(v, family)
                if len(family) + n_new <= limit]

    def resume(self, job: tuple, limit: int) -> tuple[bool, list]:
        family, path = set(job[0]), list(job[1])
        done = {v for v, _, _ in path}
        pending = [p for p in family if p not in done]
        ok = self.dfs(family, pending, limit, path)
        return ok, path


def _start(n: int) -> tuple[list[int], int]:
    have = [1 << i for i in range(n)]
    key = 0
    for v in have:
        key |= 1 << v
    return have, key


def _make_search(strategy: str, targets: tuple[int, ...], cf: bool):
    return _SplitSearch(targets) if strategy == "split" else _Search(targets, cf)


def _branch(args):
    strategy, targets, cf, job, limit = args
    s = _make_search(strategy, targets, cf)
    ok, path = s.resume(job, limit)
    return ok, path, s.expanded


def _witness(A: BitMatrix, path: list[tuple[int, int, int]]) -> LinearCircuit:
    where: dict[int, NodeRef] = {1 << i: inp(i + 1) for i in range(A.ncols)}
    gates = []
    for v, a, b in path:
        gates.append((where[a], where[b]))
        where[v] = gate(len(gates))
    outs = [where[r] if r else ZERO for r in A.data]
    return LinearCircuit(A.ncols, tuple(gates), tuple(outs))


def default_workers() -> int:
    try:
        return max(1, int(os.environ.get("XORSYNTH_THREADS", "1")))
    except ValueError:
        return 1


def min_circuit_size(A: BitMatrix, mode: str = GENERAL, budget: int | None = None,
                     workers: int | None = None, strategy: str = "auto") -> OracleResult:
    """Smallest number of XOR gates computing ``A`` (``mode`` = "general" or
    "cancellation_free"), searching up to ``budget`` gates.

    ``strategy`` picks the search: "forward" adds one gate at a time (both
    modes), "split" is the order-free family search (cancellation-free
    only), "auto" uses split for cancellation-free and forward otherwise.
    ``workers`` > 1 farms out the root branches of each deepening level to
    processes; the minimum and the witness do not depend on it.
    """
    if mode not in (GENERAL, CF):
        raise ValueError(f"unknown mode {mode!r}")
    cf = mode == CF
    if strategy == "auto":
        strategy = "split" if cf else "forward"
    if strategy not in ("forward", "split") or (strategy == "split" and not cf):
        raise ValueError(f"strategy {strategy!r} does not apply to mode {mode!r}")
    if budget is None:
        from .synth import best_cf_size
        budget = 2 * best_cf_size(A)
    if budget < 0:
        raise ValueError("budget must be >= 0")
    workers = default_workers() if workers is None else workers

    targets = tuple(sorted({r for r in A.data if r.bit_count() >= 2}))
    if not targets:
        return OracleResult("found", mode, 0, _witness(A, []), 0)

    have, key = _start(A.ncols)
    search = _make_search(strategy, targets, cf)
    if strategy == "split":
        first = search.lower_bound(set(targets), list(targets))
    else:
        first = search.lower_bound(have, list(targets))

    expanded = 0
    for limit in range(first, budget + 1):
        search.failed.clear()
        if workers > 1:
            ok, path, count = _parallel_level(strategy, search, have, limit, workers)
        else:
            path = []
            if strategy == "split":
                ok = search.dfs(set(targets), list(targets), limit, path)
            else:
                ok = search.dfs(list(have), set(have), key, list(targets), limit, 0, path)
            count = search.expanded
        search.expanded = 0
        expanded += count
        if ok:
            if strategy == "split":
                path.sort(key=lambda step: (step[0].bit_count(), step[0]))
            return OracleResult("found", mode, len(path), _witness(A, path), expanded)
    return OracleResult("exceeds_budget", mode, None, None, expanded)


def _parallel_level(strategy, search, have, limit, workers):
    if strategy == "split":
        jobs = search.root_jobs(limit)
    else:
        jobs = search.root_jobs(list(have), list(search.targets), limit)
    count = search.expanded
    if not jobs:
        return False, [], count
    args = [(strategy, search.targets, search.cf if strategy == "forward" else True, job, limit)
            for job in jobs]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        # map yields in submission order, so the witness does not depend on scheduling
        for ok, path, expanded in pool.map(_branch, args):
            count += expanded
            if ok:
                return True, path, count
    return False, [], count


def cancellation_ratio(A: BitMatrix, budget: int | None = None,
                       workers: int | None = None) -> Fraction | None:
    """min CF size / min general size, or None when either search runs out of budget.
    Defined as 1 when there is nothing to compute."""
    general = min_circuit_size(A, GENERAL, budget, workers)
    cf = min_circuit_size(A, CF, budget, workers)
    if not (general.found and cf.found):
        return None
    if general.min_gates == 0:
        return Fraction(1)
    return Fraction(cf.min_gates, general.min_gates)
