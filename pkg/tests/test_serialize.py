import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from flowtrotter.circuit import Circuit, Gate, rz
from flowtrotter.encodings import gse_encode
from flowtrotter.exact import circuit_to_unitary, unitary_distance
from flowtrotter.lattice import Lattice
from flowtrotter.serialize import (QasmError, circuit_from_json, circuit_to_dict, circuit_to_json,
                                   from_qasm, lower_permutes, permute_to_swap_layers, to_qasm)
from flowtrotter.trotter import CompilationPlan, compile_trotter_step

from strategies import clifford_circuits


@given(clifford_circuits(max_qubits=5))
def test_lowering_preserves_unitary(c):
    low = lower_permutes(c)
    assert all(g.name != "permute" for g in low.gates())
    assert unitary_distance(circuit_to_unitary(c), circuit_to_unitary(low)) < 1e-12


@given(clifford_circuits(max_qubits=5), st.floats(-10, 10, allow_nan=False))
def test_roundtrips(c, angle):
    c.append_layer([rz(0, angle)])
    assert circuit_to_dict(circuit_from_json(circuit_to_json(c))) == circuit_to_dict(c)
    assert circuit_to_dict(from_qasm(to_qasm(c))) == circuit_to_dict(lower_permutes(c))


def test_permute_depth_of_reversal():
    g = Gate("permute", (0, 1, 2, 3), perm=(3, 2, 1, 0))
    assert len(permute_to_swap_layers(g)) == 4


def test_compiled_gse_step_roundtrips():
    tc = compile_trotter_step(CompilationPlan("GSE", "line", dt=0.3), Lattice(4, 4))
    text = to_qasm(tc.circuit)
    assert text.startswith("OPENQASM 2.0;")
    back = from_qasm(text)
    assert circuit_to_dict(back) == circuit_to_dict(lower_permutes(tc.circuit))
    assert circuit_to_dict(from_qasm(to_qasm(back))) == circuit_to_dict(back)


def test_qasm_without_layer_comments_is_scheduled():
    text = 'OPENQASM 2.0;\ninclude "qelib1.inc";\nqreg q[3];\nh q[0];\nh q[1];\ncx q[0],q[1];\nrz(0.5) q[2];\n'
    c = from_qasm(text)
    assert len(c) == 2
    assert [g.name for g in c.layers[0]] == ["h", "h", "rz"]


@pytest.mark.parametrize("text", [
    "qreg q[2];\nccx q[0],q[1];\n",
    "h q[0];\n",
    "qreg q[2];\nh r[0];\n",
    "OPENQASM 2.0;\n",
])
def test_qasm_errors(text):
    with pytest.raises((QasmError, ValueError)):
        from_qasm(text)
