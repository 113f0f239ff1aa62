"""Linear (XOR-only) circuits: construction, value vectors, evaluation,
gate elimination and the SLP text format.

Nodes are numbered ``x1..xn`` (inputs) then ``t1..tg`` (gates, in order).
An output may point at a gate, at an input, or at the ``ZERO`` marker for
an all-zero row.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, NamedTuple, Sequence

from .gf2 import BitMatrix, BitVector, DimensionError


class NodeRef(NamedTuple):
    kind: str  # "input" | "gate" | "zero"
    index: int  # 1-based within its kind; 0 for the zero marker

    def __str__(self) -> str:
        if self.kind == "input":
            return f"x{self.index}"
        if self.kind == "gate":
            return f"t{self.index}"
        return "0"


ZERO = NodeRef("zero", 0)


def inp(i: int) -> NodeRef:
    return NodeRef("input", i)


def gate(j: int) -> NodeRef:
    return NodeRef("gate", j)


class CircuitError(ValueError):
    """Structurally invalid circuit."""


class SlpParseError(ValueError):
    def __init__(self, lineno: int, message: str):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


@dataclass(frozen=True)
class LinearCircuit:
    """Gates reference earlier nodes only, which keeps the graph acyclic.
    A gate may take the same node twice (it then computes 0); elimination
    produces such gates in circuits that are not cancellation-free."""

    num_inputs: int
    gates: tuple[tuple[NodeRef, NodeRef], ...]
    outputs: tuple[NodeRef, ...]

    def __post_init__(self):
        object.__setattr__(self, "gates", tuple(tuple(g) for g in self.gates))
        object.__setattr__(self, "outputs", tuple(self.outputs))
        for j, (a, b) in enumerate(self.gates, start=1):
            for ref in (a, b):
                self._check_ref(ref, before_gate=j)
        for ref in self.outputs:
            if ref != ZERO:
                self._check_ref(ref, before_gate=len(self.gates) + 1)

    def _check_ref(self, ref: NodeRef, before_gate: int) -> None:
        if ref.kind == "input":
            if not 1 <= ref.index <= self.num_inputs:
                raise CircuitError(f"unknown input {ref}")
        elif ref.kind == "gate":
            if not 1 <= ref.index < before_gate:
                raise CircuitError(f"{ref} used before definition")
        else:
            raise CircuitError(f"bad node reference {ref!r}")

    @property
    def size(self) -> int:
        """|C|: the number of gates."""
        return len(self.gates)

    @property
    def num_outputs(self) -> int:
        return len(self.outputs)

    @property
    def num_nodes(self) -> int:
        return self.num_inputs + len(self.gates)

    def node_index(self, ref: NodeRef) -> int:
        """Position of ``ref`` in the node list (inputs first, then gates)."""
        if ref.kind == "input":
            return ref.index - 1
        if ref.kind == "gate":
            return self.num_inputs + ref.index - 1
        raise CircuitError("the zero marker is not a node")

    def node_ref(self, pos: int) -> NodeRef:
        if pos < self.num_inputs:
            return inp(pos + 1)
        return gate(pos - self.num_inputs + 1)

    def children(self, pos: int) -> tuple[int, int] | None:
        """Node positions of the two children of node ``pos``; None for inputs."""
        if pos < self.num_inputs:
            return None
        a, b = self.gates[pos - self.num_inputs]
        return self.node_index(a), self.node_index(b)

    def with_outputs(self, outputs: Sequence[NodeRef]) -> "LinearCircuit":
        return LinearCircuit(self.num_inputs, self.gates, tuple(outputs))

    def __str__(self) -> str:
        return serialize_slp(self)


class CircuitBuilder:
    """Incremental construction helper used by the synthesizers."""

    def __init__(self, num_inputs: int):
        self.num_inputs = num_inputs
        self.gates: list[tuple[NodeRef, NodeRef]] = []

    def x(self, i: int) -> NodeRef:
        if not 1 <= i <= self.num_inputs:
            raise CircuitError(f"unknown input x{i}")
        return inp(i)

    def xor(self, a: NodeRef, b: NodeRef) -> NodeRef:
        self.gates.append((a, b))
        return gate(len(self.gates))

    def xor_chain(self, refs: Sequence[NodeRef]) -> NodeRef:
        """Left-to-right sum of ``refs``; ZERO when empty."""
        if not refs:
            return ZERO
        acc = refs[0]
        for r in refs[1:]:
            acc = self.xor(acc, r)
        return acc

    def build(self, outputs: Iterable[NodeRef]) -> LinearCircuit:
        return LinearCircuit(self.num_inputs, tuple(self.gates), tuple(outputs))


def _kappa_ints(C: LinearCircuit) -> list[int]:
    vals = [1 << i for i in range(C.num_inputs)]
    n = C.num_inputs
    for a, b in C.gates:
        va = vals[a.index - 1] if a.kind == "input" else vals[n + a.index - 1]
        vb = vals[b.index - 1] if b.kind == "input" else vals[n + b.index - 1]
        vals.append(va ^ vb)
    return vals


def kappa_of(C: LinearCircuit, vals: list[int], ref: NodeRef) -> int:
    if ref == ZERO:
        return 0
    return vals[C.node_index(ref)]


def value_vectors(C: LinearCircuit) -> list[BitVector]:
    """kappa for every node: inputs x1..xn first, then gates t1..tg."""
    n = C.num_inputs
    out = [BitVector(n, v) for v in _kappa_ints(C)]
    for j, (a, b) in enumerate(C.gates):
        u = out[n + j]
        assert u == out[C.node_index(a)] ^ out[C.node_index(b)]
    return out


def output_vectors(C: LinearCircuit) -> list[BitVector]:
    vals = _kappa_ints(C)
    return [BitVector(C.num_inputs, kappa_of(C, vals, r)) for r in C.outputs]


def computes(C: LinearCircuit, A: BitMatrix) -> bool:
    """True iff output i of ``C`` has value vector equal to row i of ``A``."""
    if C.num_inputs != A.ncols or C.num_outputs != A.nrows:
        raise DimensionError(
            f"circuit is {C.num_outputs}x{C.num_inputs}, matrix is {A.nrows}x{A.ncols}")
    vals = _kappa_ints(C)
    return all(kappa_of(C, vals, r) == row for r, row in zip(C.outputs, A.data))


def evaluate(C: LinearCircuit, x: BitVector) -> BitVector:
    """Run the circuit on input bits ``x``, gate by gate."""
    if x.length != C.num_inputs:
        raise DimensionError(f"circuit has {C.num_inputs} inputs, got {x.length} bits")
    vals = x.to_list()
    for a, b in C.gates:
        vals.append(vals[C.node_index(a)] ^ vals[C.node_index(b)])
    out = [0 if r == ZERO else vals[C.node_index(r)] for r in C.outputs]
    return BitVector.from_bits(out)


def circuit_matrix(C: LinearCircuit) -> BitMatrix:
    """The matrix whose rows are the output value vectors."""
    vals = _kappa_ints(C)
    return BitMatrix(C.num_outputs, C.num_inputs,
                     tuple(kappa_of(C, vals, r) for r in C.outputs))


@dataclass(frozen=True)
class EliminationResult:
    reduced: LinearCircuit
    eliminated: frozenset[int]
    forwarded_outputs: dict[int, NodeRef] = field(hash=False)
    # survivors[j-1] is the original index of reduced gate t<j>
    survivors: tuple[int, ...] = ()


def eliminate(C: LinearCircuit, zeroed: Iterable[int]) -> EliminationResult:
    """Fix the inputs in ``zeroed`` to 0 and drop the gates that stop computing.

    A gate is eliminated when, after the zeroing, one or both of its
    children have value vector 0; it then forwards its other child (or
    zero).  Forwarding cascades through chains of eliminated gates.  The
    reduced circuit keeps all ``num_inputs`` inputs, the zeroed ones simply
    become unused, so it computes the original matrix with those columns
    cleared.
    """
    zeroed = set(zeroed)
    n = C.num_inputs
    for i in zeroed:
        if not 1 <= i <= n:
            raise CircuitError(f"cannot zero unknown input x{i}")
    keep = ~sum(1 << (i - 1) for i in zeroed)
    vals = [v & keep for v in _kappa_ints(C)]

    # rep[pos]: NodeRef in the reduced circuit standing for original node pos
    rep: list[NodeRef] = [ZERO if (i + 1) in zeroed else inp(i + 1) for i in range(n)]
    new_gates: list[tuple[NodeRef, NodeRef]] = []
    eliminated = set()
    survivors = []
    for j, (a, b) in enumerate(C.gates, start=1):
        pa, pb = C.node_index(a), C.node_index(b)
        if vals[pa] == 0 or vals[pb] == 0:
            eliminated.add(j)
            if vals[pa] == 0 and vals[pb] == 0:
                rep.append(ZERO)
            else:
                rep.append(rep[pb] if vals[pa] == 0 else rep[pa])
        else:
            new_gates.append((rep[pa], rep[pb]))
            survivors.append(j)
            rep.append(gate(len(new_gates)))

    outputs = []
    forwarded = {}
    for label, r in enumerate(C.outputs, start=1):
        if r == ZERO:
            outputs.append(ZERO)
            continue
        pos = C.node_index(r)
        new = ZERO if vals[pos] == 0 else rep[pos]
        outputs.append(new)
        if r.kind == "input" or (r.kind == "gate" and r.index in eliminated):
            forwarded[label] = new
    reduced = LinearCircuit(n, tuple(new_gates), tuple(outputs))
    return EliminationResult(reduced, frozenset(eliminated), forwarded, tuple(survivors))


# --- SLP text format -------------------------------------------------------

_GATE_RE = re.compile(r"^t(\d+)\s*=\s*(.*)$")
_OUT_RE = re.compile(r"^y(\d+)\s*=\s*(.*)$")
_REF_RE = re.compile(r"^(x|t)(\d+)$")


def serialize_slp(C: LinearCircuit) -> str:
    lines = [f"inputs {C.num_inputs}"]
    for j, (a, b) in enumerate(C.gates, start=1):
        lines.append(f"t{j} = {a} + {b}")
    for i, r in enumerate(C.outputs, start=1):
        lines.append(f"y{i} = {r}")
    return "\n".join(lines) + "\n"


def parse_slp(text: str) -> LinearCircuit:
    num_inputs = None
    gates: list[tuple[NodeRef, NodeRef]] = []
    outputs: dict[int, NodeRef] = {}

    def ref(tok: str, lineno: int, allow_zero: bool = False) -> NodeRef:
        tok = tok.strip()
        if allow_zero and tok == "0":
            return ZERO
        m = _REF_RE.match(tok)
        if not m:
            raise SlpParseError(lineno, f"unknown identifier {tok!r}")
        idx = int(m.group(2))
        if m.group(1) == "x":
            if not 1 <= idx <= num_inputs:
                raise SlpParseError(lineno, f"unknown input {tok}")
            return inp(idx)
        if not 1 <= idx <= len(gates):
            raise SlpParseError(lineno, f"{tok} used before definition")
        return gate(idx)

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if num_inputs is None:
            parts = line.split()
            if len(parts) != 2 or parts[0] != "inputs" or not parts[1].isdigit():
                raise SlpParseError(lineno, "expected header 'inputs <n>'")
            num_inputs = int(parts[1])
            continue
        m = _GATE_RE.match(line)
        if m:
            if outputs:
                raise SlpParseError(lineno, "gate defined after outputs")
            j = int(m.group(1))
            if j != len(gates) + 1:
                raise SlpParseError(lineno, f"expected t{len(gates) + 1}, got t{j}")
            operands = m.group(2).split("+")
            if len(operands) != 2:
                raise SlpParseError(lineno, f"gate needs fan-in 2, got {len(operands)}")
            a, b = (ref(tok, lineno) for tok in operands)
            gates.append((a, b))
            continue
        m = _OUT_RE.match(line)
        if m:
            i = int(m.group(1))
            if i in outputs:
                raise SlpParseError(lineno, f"duplicate output y{i}")
            if "+" in m.group(2):
                raise SlpParseError(lineno, "output lines take a single reference")
            outputs[i] = ref(m.group(2), lineno, allow_zero=True)
            continue
        raise SlpParseError(lineno, f"cannot parse {line!r}")

    if num_inputs is None:
        raise SlpParseError(0, "missing 'inputs' header")
    if sorted(outputs) != list(range(1, len(outputs) + 1)):
        raise SlpParseError(0, "outputs must be labelled y1..ym without gaps")
    return LinearCircuit(num_inputs, tuple(gates),
                         tuple(outputs[i] for i in range(1, len(outputs) + 1)))
