"""Cancellation-freeness, decided three independent ways.

* ``is_cf_disjoint_support``: the two children of every gate have disjoint
  value-vector supports.
* ``is_cf_monotone``: every gate dominates (coordinatewise) the value vector
  of each node it is reachable from.
* ``is_cf_reachability``: whenever kappa(v)_i = 0, input x_i has no path to v.

All three report the first violation in topological order.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .circuit import LinearCircuit, NodeRef, _kappa_ints, inp

Path = tuple[NodeRef, ...]


class CheckerDisagreement(AssertionError):
    pass


@dataclass(frozen=True)
class CfVerdict:
    is_cf: bool
    checker: str
    node: Optional[NodeRef] = None  # violating gate / node
    coordinate: Optional[int] = None  # offending input index (1-based)
    other: Optional[NodeRef] = None  # monotone checker: the dominated predecessor
    paths: Optional[tuple[Path, Path]] = None  # two internally disjoint paths

    def __bool__(self) -> bool:
        return self.is_cf

    def describe(self) -> str:
        if self.is_cf:
            return "cancellation-free"
        if self.checker == "disjoint_support":
            p, q = (" -> ".join(map(str, path)) for path in self.paths)
            return (f"gate {self.node}: both children contain x{self.coordinate}; "
                    f"disjoint paths [{p}] and [{q}]")
        if self.checker == "monotone":
            return (f"gate {self.node} is reachable from {self.other} but lacks "
                    f"x{self.coordinate} which {self.other} has")
        return f"x{self.coordinate} reaches {self.node} but kappa({self.node}) has no x{self.coordinate}"


def _low_coord(word: int) -> int:
    return (word & -word).bit_length()


def _trace_to_input(C: LinearCircuit, vals: list[int], pos: int, bit: int) -> list[int]:
    """Positions of a path input -> ... -> pos along nodes whose kappa has ``bit``."""
    path = [pos]
    while pos >= C.num_inputs:
        a, b = C.children(pos)
        pos = a if vals[a] & bit else b
        path.append(pos)
    path.reverse()
    return path


def is_cf_disjoint_support(C: LinearCircuit) -> CfVerdict:
    vals = _kappa_ints(C)
    n = C.num_inputs
    for j in range(C.size):
        u = n + j
        a, b = C.children(u)
        overlap = vals[a] & vals[b]
        if overlap:
            bit = overlap & -overlap
            p1 = _trace_to_input(C, vals, a, bit) + [u]
            p2 = _trace_to_input(C, vals, b, bit) + [u]
            on_p2 = set(p2)
            # last shared node before u; later parts of the two paths cannot meet
            split = max(k for k, node in enumerate(p1[:-1]) if node in on_p2)
            start = p1[split]
            q1 = p1[split:]
            q2 = p2[p2.index(start):]
            paths = (tuple(C.node_ref(p) for p in q1), tuple(C.node_ref(p) for p in q2))
            return CfVerdict(False, "disjoint_support", C.node_ref(u),
                             bit.bit_length(), paths=paths)
    return CfVerdict(True, "disjoint_support")


def is_cf_monotone(C: LinearCircuit) -> CfVerdict:
    vals = _kappa_ints(C)
    n = C.num_inputs
    # above[u]: union of kappa over every node u is reachable from
    above = [0] * C.num_nodes
    for j in range(C.size):
        u = n + j
        a, b = C.children(u)
        above[u] = vals[a] | vals[b] | above[a] | above[b]
        if above[u] & ~vals[u]:
            w = _first_dominated_pred(C, vals, u)
            missing = vals[w] & ~vals[u]
            return CfVerdict(False, "monotone", C.node_ref(u), _low_coord(missing),
                             other=C.node_ref(w))
    return CfVerdict(True, "monotone")


def _predecessors(C: LinearCircuit, u: int) -> set[int]:
    seen = set()
    stack = [u]
    while stack:
        v = stack.pop()
        ch = C.children(v)
        if ch is None:
            continue
        for c in ch:
            if c not in seen:
                seen.add(c)
                stack.append(c)
    return seen


def _first_dominated_pred(C: LinearCircuit, vals: list[int], u: int) -> int:
    for w in sorted(_predecessors(C, u)):
        if vals[w] & ~vals[u]:
            return w
    raise AssertionError("no violating predecessor")


def is_cf_reachability(C: LinearCircuit) -> CfVerdict:
    vals = _kappa_ints(C)
    n = C.num_inputs
    reach = [1 << i for i in range(n)]
    for j in range(C.size):
        u = n + j
        a, b = C.children(u)
        reach.append(reach[a] | reach[b])
        stray = reach[u] & ~vals[u]
        if stray:
            return CfVerdict(False, "reachability", C.node_ref(u), _low_coord(stray))
    return CfVerdict(True, "reachability")


CHECKERS = (is_cf_disjoint_support, is_cf_monotone, is_cf_reachability)


def check_cf(C: LinearCircuit) -> CfVerdict:
    """Run all three checkers; raise if they disagree, else return the
    disjoint-support verdict (it carries the richest witness)."""
    verdicts = [check(C) for check in CHECKERS]
    if len({v.is_cf for v in verdicts}) != 1:
        detail = ", ".join(f"{v.checker}={v.is_cf}" for v in verdicts)
        raise CheckerDisagreement(f"checkers disagree: {detail}")
    return verdicts[0]


def is_cancellation_free(C: LinearCircuit) -> bool:
    return check_cf(C).is_cf


def _reaches(C: LinearCircuit, src: int, dst: int) -> bool:
    return src == dst or src in _predecessors(C, dst)


def witness_holds(C: LinearCircuit, verdict: CfVerdict) -> bool:
    """Re-check a negative verdict's witness against the circuit."""
    if verdict.is_cf:
        return False
    vals = _kappa_ints(C)
    bit = 1 << (verdict.coordinate - 1)
    u = C.node_index(verdict.node)
    if verdict.checker == "disjoint_support":
        ch = C.children(u)
        if ch is None or not all(vals[c] & bit for c in ch):
            return False
        p, q = verdict.paths
        if p[0] != q[0] or p[-1] != verdict.node or q[-1] != verdict.node:
            return False
        if set(p[1:-1]) & set(q[1:-1]):
            return False
        # identical paths are only two paths when they are the parallel edges of t = w + w
        if p == q and not (len(p) == 2 and ch[0] == ch[1]):
            return False
        for path in (p, q):
            pos = [C.node_index(r) for r in path]
            for s, t in zip(pos, pos[1:]):
                ch = C.children(t)
                if ch is None or s not in ch:
                    return False
        return True
    if verdict.checker == "monotone":
        w = C.node_index(verdict.other)
        return (w != u and _reaches(C, w, u)
                and bool(vals[w] & bit) and not vals[u] & bit)
    if verdict.checker == "reachability":
        return _reaches(C, C.node_index(inp(verdict.coordinate)), u) and not vals[u] & bit
    return False
