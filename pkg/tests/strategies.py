"""Shared hypothesis strategies."""
from hypothesis import strategies as st

from flowtrotter.circuit import Circuit, Gate
from flowtrotter.pauli import PauliString


@st.composite
def pauli_strings(draw, n_qubits=None, max_qubits=5):
    n = n_qubits or draw(st.integers(1, max_qubits))
    mask = (1 << n) - 1
    return PauliString(n, draw(st.integers(0, mask)), draw(st.integers(0, mask)), draw(st.integers(0, 3)))


@st.composite
def clifford_circuits(draw, n_qubits=None, max_qubits=4, max_gates=12, with_permute=True):
    n = n_qubits or draw(st.integers(2, max_qubits))
    c = Circuit(n)
    names = ["h", "s", "sdg", "cx", "cz", "swap"] + (["permute"] if with_permute else [])
    for _ in range(draw(st.integers(0, max_gates))):
        name = draw(st.sampled_from(names))
        if name in ("h", "s", "sdg"):
            c.append_layer([Gate(name, (draw(st.integers(0, n - 1)),))])
        elif name == "permute":
            qs = draw(st.permutations(range(n)))
            k = draw(st.integers(2, n))
            qs = tuple(qs[:k])
            perm = tuple(draw(st.permutations(qs)))
            c.append_layer([Gate("permute", qs, perm=perm)])
        else:
            a, b = draw(st.permutations(range(n)))[:2]
            c.append_layer([Gate(name, (a, b))])
    return c
