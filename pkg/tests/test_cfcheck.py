import pytest

from conftest import random_circuit
from xorsynth.cfcheck import (
    CHECKERS, check_cf, is_cf_disjoint_support, is_cf_monotone, is_cf_reachability, witness_holds,
)
from xorsynth.circuit import LinearCircuit, gate, inp, parse_slp
from xorsynth.gen import gen_random
from xorsynth.synth import (
    synth_greedy_cse, synth_lupanov, synth_naive, synth_prefix_cancel, synth_prefix_cf,
    synth_sierpinski,
)

CHAIN = LinearCircuit(4, ((inp(1), inp(2)), (gate(1), inp(3)), (gate(2), inp(4))), (gate(3),))
CANCEL = LinearCircuit(2, ((inp(1), inp(2)), (gate(1), inp(2))), (gate(2),))


@pytest.mark.parametrize("check", CHECKERS)
def test_chain_is_cf(check):
    assert check(CHAIN).is_cf


@pytest.mark.parametrize("check", CHECKERS)
def test_cancelling_pair_is_not_cf(check):
    verdict = check(CANCEL)
    assert not verdict.is_cf
    assert witness_holds(CANCEL, verdict)


def test_cancel_witness_names_gate_and_coordinate():
    verdict = is_cf_disjoint_support(CANCEL)
    assert verdict.node == gate(2) and verdict.coordinate == 2
    p, q = verdict.paths
    assert {p, q} == {(inp(2), gate(1), gate(2)), (inp(2), gate(2))}


@pytest.mark.parametrize("check", CHECKERS)
def test_prefix_cancel_circuit_rejected(check):
    C = synth_prefix_cancel(4).circuit
    verdict = check(C)
    assert not verdict.is_cf
    assert witness_holds(C, verdict)


def test_self_xor_gate():
    C = parse_slp("inputs 2\nt1 = x1 + x1\ny1 = t1\n")
    verdict = check_cf(C)
    assert not verdict.is_cf
    assert witness_holds(C, verdict)


def test_witness_reports_first_violation_in_order():
    C = parse_slp("inputs 3\nt1 = x1 + x2\nt2 = t1 + x1\nt3 = t1 + x2\ny1 = t3\n")
    for check in CHECKERS:
        assert check(C).node == gate(2)


def test_tampered_witness_is_rejected():
    verdict = is_cf_monotone(CANCEL)
    assert witness_holds(CANCEL, verdict)
    assert not witness_holds(CHAIN, verdict.__class__(False, "monotone", gate(2), 1, other=gate(1)))


def test_checkers_agree_on_random_circuits(rng):
    for i in range(2000):
        n = rng.randint(2, 12)
        C = random_circuit(rng, n, rng.randint(0, 40), cf_bias=[0.0, 0.9, 1.0][i % 3])
        verdicts = [check(C) for check in CHECKERS]
        assert len({v.is_cf for v in verdicts}) == 1
        for v in verdicts:
            if not v.is_cf:
                assert witness_holds(C, v)


def test_support_size_bound_on_cf_cones(rng):
    # a sum of s inputs without cancellation needs s - 1 gates in its cone
    from xorsynth.cfcheck import _predecessors
    from xorsynth.circuit import ZERO, circuit_matrix
    checked = 0
    for _ in range(500):
        C = random_circuit(rng, rng.randint(2, 10), rng.randint(0, 30), cf_bias=1.0)
        if not check_cf(C).is_cf:
            continue
        rows = circuit_matrix(C).data
        for ref, row in zip(C.outputs, rows):
            if ref == ZERO:
                continue
            pos = C.node_index(ref)
            cone = {p for p in _predecessors(C, pos) | {pos} if p >= C.num_inputs}
            assert row.bit_count() - 1 <= len(cone)
            checked += 1
    assert checked > 500


def test_synthesizer_outputs_pass_all_checkers():
    A = gen_random(12, 12, 0.5, 3)
    circuits = [synth_naive(A).circuit, synth_lupanov(A, 3).circuit, synth_greedy_cse(A).circuit,
                synth_sierpinski(4).circuit, synth_prefix_cf(9).circuit]
    for C in circuits:
        for check in CHECKERS:
            assert check(C).is_cf
