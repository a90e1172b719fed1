import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from flowtrotter.circuit import Circuit
from flowtrotter.encodings import dk_encode, gse_encode, jw_encode, kw_dual_encode, vc_encode
from flowtrotter.exact import (circuit_to_unitary, flow_set_exactness, ham_exp, is_unitary,
                               kw_cz_identity_distance, pauli_to_matrix, trotter_error_sweep,
                               unitary_distance)
from flowtrotter.flowsets import line_flow_sets, plaquette_flow_sets
from flowtrotter.lattice import Lattice, build_chain
from flowtrotter.trotter import (CompilationPlan, InadmissiblePlan, compile_evolution, compile_flow_set,
                                 compile_flow_set_factor, compile_trotter_step, depth_report,
                                 orientation_identity_holds, pauli_rotation, reversed_factor)

from strategies import pauli_strings


def report(name, lattice, strategy="line"):
    return depth_report(compile_trotter_step(CompilationPlan(name, strategy), lattice))


@pytest.mark.parametrize("size", [4, 6])
def test_vc_line_depth_is_size_independent(size):
    rep = report("VC", Lattice(size, size))
    assert rep["cx_depth"] == 16
    assert [f["cx_depth"] for f in rep["flow_sets"]] == [4, 4, 4, 4]
    assert rep["swap_layers"] == 0


@pytest.mark.parametrize("size", [4, 6])
def test_vc_petal_baseline(size):
    rep = report("VC", Lattice(size, size), "petal-baseline")
    assert rep["cx_depth"] == 40
    assert {f["label"]: f["cx_depth"] for f in rep["flow_sets"]} == {"H-even": 8, "H-odd": 8,
                                                                      "V-even": 12, "V-odd": 12}


def test_gse_line_swaps():
    rep = report("GSE", Lattice(4, 4))
    assert rep["cx_depth"] == 16
    assert rep["swap_layers"] == 2
    assert rep["depth_native"] == 18


def test_kw_orientations():
    rep = report("KWDual", build_chain(8))
    depths = {f["label"]: f["cx_depth"] for f in rep["flow_sets"]}
    assert depths["WE"] == 0
    assert depths["EA"] == 4


def test_dk_line_rejected_plaquette_accepted():
    lat = Lattice(4, 4, "periodic")
    with pytest.raises(InadmissiblePlan, match="overlapping supports"):
        compile_trotter_step(CompilationPlan("DK", "line"), lat)
    rep = report("DK", lat, "plaquette")
    assert rep["qubits"] == 24
    assert all(f["cx_depth"] <= 8 for f in rep["flow_sets"])


def test_plan_validation():
    with pytest.raises(ValueError):
        CompilationPlan("VC", "zigzag")
    with pytest.raises(InadmissiblePlan):
        compile_trotter_step(CompilationPlan("VC", "line", order=("EA", "WE")), Lattice(2, 2))


def test_evolution_repeats_step():
    lat = Lattice(2, 2)
    one = compile_trotter_step(CompilationPlan("VC", "line", dt=0.2), lat)
    three = compile_evolution(CompilationPlan("VC", "line", dt=0.2), lat, steps=3)
    assert len(three.circuit) == 3 * len(one.circuit)
    u1 = circuit_to_unitary(one.circuit)
    assert unitary_distance(circuit_to_unitary(three.circuit), u1 @ u1 @ u1) < 1e-10


@pytest.mark.parametrize("make", [lambda: vc_encode(Lattice(2, 2)), lambda: jw_encode(6),
                                  lambda: gse_encode(Lattice(2, 2)), lambda: kw_dual_encode(5)],
                         ids=["VC2x2", "JW6", "GSE2x2", "KW5"])
@pytest.mark.parametrize("dt", [0.05, 0.3, 1.0])
def test_flow_set_factors_are_exact(make, dt):
    enc = make()
    for fs in line_flow_sets(enc.lattice):
        if fs.components:
            assert flow_set_exactness(enc, fs, 1.0, dt) <= 1e-10


def test_dk_plaquette_factors_are_exact():
    enc = dk_encode(Lattice(2, 2))
    assert enc.n_qubits <= 10
    for fs in plaquette_flow_sets(enc.lattice):
        if fs.components:
            assert flow_set_exactness(enc, fs, 0.7, 0.4) <= 1e-10


def test_factor_is_unitary_and_time_reversible():
    enc = vc_encode(Lattice(2, 2))
    fs = line_flow_sets(enc.lattice)[2]
    u = circuit_to_unitary(compile_flow_set(enc, fs, 1.0, 0.3))
    v = circuit_to_unitary(compile_flow_set(enc, fs, 1.0, -0.3))
    assert is_unitary(u)
    assert unitary_distance(u @ v, np.eye(len(u))) < 1e-10


def test_vc_orientation_identity():
    enc = vc_encode(Lattice(2, 2))
    sets = {fs.label: fs for fs in line_flow_sets(enc.lattice)}
    assert orientation_identity_holds(enc, sets["NO"], sets["SO"])
    assert orientation_identity_holds(enc, sets["EA"], sets["WE"])
    fwd = compile_flow_set_factor(enc, sets["NO"], 1.0, 0.3)
    got = circuit_to_unitary(reversed_factor(enc, fwd, "SO"))
    want = circuit_to_unitary(compile_flow_set(enc, sets["SO"], 1.0, 0.3))
    assert unitary_distance(got, want) <= 1e-10


def test_orientation_identity_fails_without_matching_structure():
    enc = kw_dual_encode(5)
    sets = {fs.label: fs for fs in line_flow_sets(enc.lattice)}
    assert not orientation_identity_holds(enc, sets["EA"], sets["WE"])


def test_kw_cz_identity():
    for dt in (0.05, 0.3, 1.0):
        assert kw_cz_identity_distance(6, 1.0, dt) <= 1e-10


@pytest.mark.parametrize("name,lattice", [("JW", build_chain(4)), ("VC", Lattice(2, 2))])
def test_st1_scaling(name, lattice):
    rows = trotter_error_sweep(CompilationPlan(name, "line"), lattice, [0.2, 0.1, 0.05, 0.025])
    errs = [e for _, e in rows]
    assert errs == sorted(errs, reverse=True)
    for a, b in zip(errs, errs[1:]):
        assert 3.6 <= a / b <= 4.4


@given(pauli_strings(max_qubits=4).filter(lambda p: p.is_hermitian and p.weight > 0),
       st.floats(-2, 2, allow_nan=False))
def test_pauli_rotation_gadget(p, theta):
    u = circuit_to_unitary(pauli_rotation(p, theta))
    m = pauli_to_matrix(p)
    want = math.cos(theta) * np.eye(len(m)) - 1j * math.sin(theta) * m
    assert unitary_distance(u, want) < 1e-10


def test_petal_baseline_is_a_valid_trotter_step():
    lat = Lattice(2, 2)
    enc = vc_encode(lat)
    tc = compile_trotter_step(CompilationPlan("VC", "petal-baseline", dt=0.05), lat)
    exact = ham_exp(enc.hamiltonian(1.0), 0.05)
    assert unitary_distance(circuit_to_unitary(tc.circuit), exact) < 0.05


def test_report_fields():
    rep = report("VC", Lattice(2, 2))
    for key in ("encoding", "qubits", "fermions", "ratio", "cx_depth", "swap_layers", "depth_native",
                "depth_cx_decomposed", "two_qubit_gates", "flow_sets"):
        assert key in rep
    assert rep["ratio"] == 2.0
