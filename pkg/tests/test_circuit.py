import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from flowtrotter.circuit import (Circuit, DepthMode, Gate, Tableau, conjugate_pauli, cx, cx_depth, cz,
                                 h, permutation_swap_depth, rz, s, swap, swap_layer_count,
                                 two_qubit_count)
from flowtrotter.exact import circuit_to_unitary, pauli_to_matrix
from flowtrotter.pauli import PauliString

from strategies import clifford_circuits, pauli_strings


@given(st.integers(2, 4).flatmap(lambda n: st.tuples(clifford_circuits(n), pauli_strings(n))))
def test_tableau_matches_dense(args):
    c, p = args
    u = circuit_to_unitary(c)
    expect = u @ pauli_to_matrix(p) @ u.conj().T
    assert np.allclose(pauli_to_matrix(conjugate_pauli(c, p)), expect)
    assert np.allclose(pauli_to_matrix(Tableau.from_circuit(c).conjugate(p)), expect)


@given(clifford_circuits())
def test_tableau_symplectic_and_inverse(c):
    t = Tableau.from_circuit(c)
    assert t.is_symplectic()
    both = Circuit(c.n_qubits, c.layers + c.inverse().layers)
    assert Tableau.from_circuit(both).is_identity()


def test_layer_disjointness_enforced():
    c = Circuit(3)
    with pytest.raises(ValueError):
        c.append_layer([cx(0, 1), h(1)])
    with pytest.raises(ValueError):
        Gate("cx", (0, 0))
    with pytest.raises(ValueError):
        Gate("rz", (0,))


def test_non_clifford_rejected_by_tableau():
    with pytest.raises(ValueError):
        Tableau.from_circuit(Circuit(1, [[rz(0, 0.3)]]))


def test_depth_accounting():
    c = Circuit(4, [[h(0)], [cx(0, 1), cz(2, 3)], [swap(1, 2)], [rz(0, 0.1)]])
    assert cx_depth(c, DepthMode.CX) == 4
    assert cx_depth(c, DepthMode.NATIVE) == 2
    assert two_qubit_count(c) == 3
    assert swap_layer_count(c) == 1
    rev = Gate("permute", (0, 1, 2, 3), perm=(3, 2, 1, 0))
    assert permutation_swap_depth(rev) == 4
    assert cx_depth(Circuit(4, [[rev]]), "native") == 4
    assert cx_depth(Circuit(4, [[rev]]), "cx") == 12


def test_permute_semantics():
    # state on qubit 0 moves to qubit 1
    c = Circuit(2, [[Gate("permute", (0, 1), perm=(1, 0))]])
    x0 = PauliString.from_label("XI")
    assert conjugate_pauli(c, x0) == PauliString.from_label("IX")
    assert np.allclose(circuit_to_unitary(c), circuit_to_unitary(Circuit(2, [[swap(0, 1)]])))


def test_s_gate_maps_x_to_y():
    c = Circuit(1, [[s(0)]])
    assert conjugate_pauli(c, PauliString.from_label("X")) == PauliString.from_label("Y")
