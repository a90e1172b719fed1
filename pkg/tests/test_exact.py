import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from flowtrotter.circuit import Circuit, cx
from flowtrotter.encodings import gse_encode, jw_encode, kw_dual_encode, vc_encode
from flowtrotter.exact import (QubitCapError, circuit_to_unitary, free_fermion_spectrum_check,
                               frobenius_distance, gauge_generators, ham_exp, hamiltonian_matrix,
                               is_unitary, kw_cz_identity_distance, pauli_to_matrix,
                               trotter_error_sweep, unitary_distance, write_sweep_csv)
from flowtrotter.lattice import Lattice, build_chain
from flowtrotter.pauli import PauliString
from flowtrotter.trotter import CompilationPlan

from strategies import pauli_strings

P = PauliString.from_label


def test_pauli_matrix_basics():
    assert np.allclose(pauli_to_matrix(P("Z")), np.diag([1, -1]))
    assert np.allclose(pauli_to_matrix(P("X") * P("Z")), pauli_to_matrix(P("X")) @ pauli_to_matrix(P("Z")))
    xx, zz = pauli_to_matrix(P("XX")), pauli_to_matrix(P("ZZ"))
    assert not np.allclose(xx, np.eye(4)) and np.allclose(xx @ zz, zz @ xx)


def test_cap():
    with pytest.raises(QubitCapError):
        pauli_to_matrix(PauliString.identity(15))
    with pytest.raises(QubitCapError):
        ham_exp([(PauliString.identity(13), 1.0)], 0.1)


def test_circuit_unitary_basics():
    assert np.allclose(circuit_to_unitary(Circuit(2)), np.eye(4))
    assert np.allclose(circuit_to_unitary(Circuit(2, [[cx(0, 1)], [cx(0, 1)]])), np.eye(4))


@given(pauli_strings(max_qubits=3).filter(lambda p: p.is_hermitian), st.floats(-3, 3))
def test_ham_exp_single_pauli(p, theta):
    m = pauli_to_matrix(p)
    assert np.allclose(ham_exp([(p, 1.0)], theta), math.cos(theta) * np.eye(len(m)) - 1j * math.sin(theta) * m)
    assert np.allclose(ham_exp([(p, 1.0)], theta) @ ham_exp([(p, 1.0)], -theta), np.eye(len(m)), atol=1e-10)


def test_ham_exp_rejects_non_hermitian():
    with pytest.raises(ValueError):
        ham_exp([(P("+iX"), 1.0)], 0.1)


def test_two_site_jw_spectrum():
    enc = jw_encode(2)
    w = np.linalg.eigvalsh(hamiltonian_matrix(enc.hamiltonian(1.0), 2))
    assert np.allclose(w, [-1, 0, 0, 1])


def test_unitary_distance():
    rng = np.random.default_rng(1)
    a = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
    u, _ = np.linalg.qr(a)
    assert unitary_distance(u, u) < 1e-12
    assert unitary_distance(u, np.exp(0.7j) * u) < 1e-12
    # phase-minimised: min_phi ||I - e^{i phi} X|| = sqrt(2)
    assert unitary_distance(np.eye(2), pauli_to_matrix(P("X"))) == pytest.approx(math.sqrt(2))
    assert frobenius_distance(u, 1j * u) < 1e-12
    with pytest.raises(ValueError):
        unitary_distance(np.eye(2), np.eye(4))


@given(st.floats(0, 2 * math.pi), st.floats(0, 2 * math.pi))
def test_unitary_distance_matches_brute_force(a, b):
    u = np.diag([1, np.exp(1j * a), np.exp(1j * b)])
    phis = np.linspace(0, 2 * math.pi, 20001)
    brute = min(np.linalg.norm(u - np.exp(1j * p) * np.eye(3), 2) for p in phis[::50])
    fine = min(max(abs(1 - np.exp(1j * p)), abs(np.exp(1j * a) - np.exp(1j * p)),
                   abs(np.exp(1j * b) - np.exp(1j * p))) for p in phis)
    assert unitary_distance(u, np.eye(3)) == pytest.approx(fine, abs=1e-3)
    assert unitary_distance(u, np.eye(3)) <= brute + 1e-9


def test_trotter_sweep_and_csv(tmp_path):
    rows = trotter_error_sweep(CompilationPlan("JW", "line"), build_chain(4), [0.0, 0.1, 0.05])
    assert rows[0][1] < 1e-10
    assert rows[1][1] / rows[2][1] == pytest.approx(4, rel=0.1)
    path = tmp_path / "sweep.csv"
    write_sweep_csv(rows, path)
    assert path.read_text().splitlines()[0] == "dt,error"


@pytest.mark.parametrize("enc", [jw_encode(6), vc_encode(Lattice(2, 2)), gse_encode(Lattice(2, 2)),
                                 kw_dual_encode(5), jw_encode(1)], ids=lambda e: f"{e.name.value}{e.n_qubits}")
def test_free_fermion_spectrum(enc):
    rep = free_fermion_spectrum_check(enc)
    assert rep["ok"], rep


def test_gauge_generators_commute_with_hamiltonian():
    enc = vc_encode(Lattice(2, 2))
    gens = gauge_generators(enc)
    assert len(gens) == 1
    g = gens[0][1]
    assert g.is_hermitian and g.weight > 0
    assert all(p.commutes(g) for p, _ in enc.hamiltonian(1.0))
    assert gauge_generators(jw_encode(4)) == []


def test_kw_identity_is_nontrivial():
    assert kw_cz_identity_distance(6, 1.0, 0.3) < 1e-10


def test_is_unitary():
    assert is_unitary(circuit_to_unitary(Circuit(2, [[cx(1, 0)]])))
    assert not is_unitary(2 * np.eye(2))
