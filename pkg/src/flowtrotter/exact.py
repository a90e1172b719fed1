"""Dense-matrix oracle for small systems.

Everything here builds explicit ``2**n x 2**n`` matrices, so sizes are
capped at ``MAX_QUBITS``.  Qubit 0 is the leftmost Kronecker factor.
"""
from __future__ import annotations

from functools import reduce
from typing import Sequence

import numpy as np
from scipy.linalg import eigh

from .circuit import Circuit, Gate, PERMUTE
from .pauli import PauliString

MAX_QUBITS = 14

_I2 = np.eye(2, dtype=complex)
_X = np.array([[0, 1], [1, 0]], dtype=complex)
_Z = np.array([[1, 0], [0, -1]], dtype=complex)
_Y = 1j * _X @ _Z
_H = np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2)
_S = np.diag([1, 1j])
_SINGLE = {"h": _H, "s": _S, "sdg": _S.conj(), "x": _X, "y": _Y, "z": _Z}
_LETTER = {"I": _I2, "X": _X, "Y": _Y, "Z": _Z}


class QubitCapError(ValueError):
    pass


def _cap(n: int, cap: int = MAX_QUBITS) -> None:
    if n > cap:
        raise QubitCapError(f"{n} qubits exceeds the dense-matrix cap of {cap}")


def pauli_to_matrix(p: PauliString) -> np.ndarray:
    _cap(p.n_qubits)
    mats = [_LETTER[c] for c in p.letters()]
    return p.sign * reduce(np.kron, mats)


def _apply_1q(state: np.ndarray, m: np.ndarray, q: int, n: int) -> np.ndarray:
    psi = state.reshape((2 ** q, 2, -1))
    return np.einsum("ab,ibj->iaj", m, psi).reshape(state.shape)


def _gate_matrix(g: Gate) -> np.ndarray:
    if g.name in _SINGLE:
        return _SINGLE[g.name]
    if g.name in ("rx", "ry", "rz"):
        p = {"rx": _X, "ry": _Y, "rz": _Z}[g.name]
        return np.cos(g.angle / 2) * _I2 - 1j * np.sin(g.angle / 2) * p
    raise ValueError(g.name)


def _apply_gate(state: np.ndarray, g: Gate, n: int) -> np.ndarray:
    """Apply ``g`` to every column of ``state`` (shape ``(2**n, m)``)."""
    m = state.shape[1]
    t = state.reshape((2,) * n + (m,))
    if len(g.qubits) == 1 and g.name != PERMUTE:
        (q,) = g.qubits
        t = np.tensordot(_gate_matrix(g), t, axes=([1], [q]))
        t = np.moveaxis(t, 0, q)
    elif g.name == "cx":
        c, tq = g.qubits
        t = t.copy()
        idx = [slice(None)] * (n + 1)
        idx[c] = 1
        sub = t[tuple(idx)]
        axis = tq - (1 if tq > c else 0)
        t[tuple(idx)] = np.flip(sub, axis=axis)
    elif g.name == "cz":
        a, b = g.qubits
        t = t.copy()
        idx = [slice(None)] * (n + 1)
        idx[a] = 1
        idx[b] = 1
        t[tuple(idx)] *= -1
    elif g.name in ("swap", PERMUTE):
        src = g.qubits
        dst = g.perm if g.name == PERMUTE else (g.qubits[1], g.qubits[0])
        axes = list(range(n + 1))
        for s_, d_ in zip(src, dst):
            axes[d_] = s_
        t = np.transpose(t, axes)
    else:
        raise ValueError(f"unsupported gate {g}")
    return t.reshape(2 ** n, m)


def circuit_to_unitary(c: Circuit) -> np.ndarray:
    _cap(c.n_qubits)
    u = np.eye(2 ** c.n_qubits, dtype=complex)
    for g in c.gates():
        u = _apply_gate(u, g, c.n_qubits)
    return u


def hamiltonian_matrix(terms: Sequence[tuple[PauliString, float]], n_qubits: int) -> np.ndarray:
    _cap(n_qubits)
    h = np.zeros((2 ** n_qubits, 2 ** n_qubits), dtype=complex)
    for p, c in terms:
        if p.n_qubits != n_qubits:
            raise ValueError("qubit count mismatch")
        h += c * pauli_to_matrix(p)
    return h


def ham_exp(terms: Sequence[tuple[PauliString, float]], t: float, n_qubits: int | None = None) -> np.ndarray:
    """``exp(-i t sum_k c_k P_k)`` by Hermitian eigendecomposition."""
    if n_qubits is None:
        if not terms:
            raise ValueError("n_qubits required for an empty term list")
        n_qubits = terms[0][0].n_qubits
    _cap(n_qubits, 12)
    h = hamiltonian_matrix(terms, n_qubits)
    if not np.allclose(h, h.conj().T, atol=1e-12):
        raise ValueError("Hamiltonian is not Hermitian")
    w, v = eigh(h)
    return (v * np.exp(-1j * t * w)) @ v.conj().T


def unitary_distance(u: np.ndarray, v: np.ndarray) -> float:
    """``min_phi ||u - e^{i phi} v||_2`` (spectral norm)."""
    if u.shape != v.shape:
        raise ValueError(f"dimension mismatch {u.shape} vs {v.shape}")
    # W = v^dag u is unitary; the optimal phase rotates its spectrum onto 1
    w = v.conj().T @ u
    angles = np.angle(np.linalg.eigvals(w))
    # try the circular midpoint of every gap between sorted eigen-angles
    a = np.sort(angles)
    gaps = np.diff(np.concatenate([a, [a[0] + 2 * np.pi]]))
    k = int(np.argmax(gaps))
    centre = a[k] + gaps[k] / 2 + np.pi
    spread = np.abs(np.angle(np.exp(1j * (angles - centre))))
    return float(2 * np.sin(min(np.max(spread), np.pi) / 2))


def frobenius_distance(u: np.ndarray, v: np.ndarray) -> float:
    """Phase-invariant Frobenius distance, normalised by ``sqrt(dim)``."""
    if u.shape != v.shape:
        raise ValueError(f"dimension mismatch {u.shape} vs {v.shape}")
    overlap = np.trace(v.conj().T @ u)
    phase = overlap / abs(overlap) if abs(overlap) > 1e-15 else 1.0
    return float(np.linalg.norm(u - phase * v) / np.sqrt(u.shape[0]))


def is_unitary(u: np.ndarray, atol: float = 1e-10) -> bool:
    return bool(np.max(np.abs(u.conj().T @ u - np.eye(u.shape[0]))) <= atol)


# -- compiled-circuit checks ------------------------------------------------------------

def flow_set_exactness(enc, fs, J: float, dt: float) -> float:
    """Distance between the compiled flow-set factor and ``exp(-i dt J sum T)``."""
    from .trotter import compile_flow_set
    circ = compile_flow_set(enc, fs, J, dt)
    return unitary_distance(circuit_to_unitary(circ), ham_exp(enc.transfer_terms(fs.edges(), J), dt, enc.n_qubits))


def trotter_error_sweep(plan, lattice, dts: Sequence[float]) -> list[tuple[float, float]]:
    """``(dt, ||step(dt) - exp(-i dt H)||)`` for each ``dt`` (phase-invariant spectral norm)."""
    from dataclasses import replace
    from .encodings import build_encoding
    from .trotter import compile_trotter_step
    enc = build_encoding(plan.encoding, lattice)
    _cap(enc.n_qubits, 12)
    terms = enc.hamiltonian(plan.J)
    out = []
    for dt in dts:
        tc = compile_trotter_step(replace(plan, dt=dt), lattice, enc)
        exact = ham_exp(terms, dt, enc.n_qubits) if terms else np.eye(2 ** enc.n_qubits)
        out.append((float(dt), unitary_distance(circuit_to_unitary(tc.circuit), exact)))
    return out


def write_sweep_csv(rows: Sequence[tuple[float, float]], path) -> None:
    import csv
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["dt", "error"])
        for dt, err in rows:
            w.writerow([repr(dt), repr(err)])


# -- free-fermion spectrum ----------------------------------------------------------------

def lattice_cycles(lattice) -> list[list[int]]:
    """Plaquette loops plus, for periodic lattices, one winding loop per periodic axis."""
    cycles = [list(lattice.plaquette_sites(x, y)) for (x, y) in lattice.plaquettes()
              if lattice.width > 1 and lattice.height > 1]
    if lattice.periodic:
        if lattice.width >= 3:
            cycles.append([lattice.index(x, 0) for x in range(lattice.width)])
        if lattice.height >= 3:
            cycles.append([lattice.index(0, y) for y in range(lattice.height)])
    return cycles


def gauge_generators(enc, lattice=None) -> list[tuple[str, PauliString]]:
    """Encoded loop relations: ``G = (prod of T images around a loop) (i^k prod V images)^-1``.

    On the fermionic side the loop product equals ``i^k prod V``, so physical
    states satisfy ``G = +1``.  For Jordan-Wigner type encodings ``G`` is the
    identity.
    """
    from .majorana import loop_identity
    lattice = lattice or enc.lattice
    n = lattice.n_sites
    out = []
    for cyc in lattice_cycles(lattice):
        _, k = loop_identity(cyc, n)
        loop = PauliString.identity(enc.n_qubits)
        for a, b in zip(cyc, cyc[1:] + cyc[:1]):
            loop = loop * enc.transfer(a, b)
        vprod = PauliString.identity(enc.n_qubits)
        for j in cyc:
            vprod = vprod * enc.parity_image[j]
        out.append(("loop " + "-".join(map(str, cyc)), loop * vprod.times_phase(-k)))
    return out


def _subset_sums(eps: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    sums = np.zeros(1)
    parity = np.zeros(1, dtype=int)
    for e in eps:
        sums = np.concatenate([sums, sums + e])
        parity = np.concatenate([parity, parity + 1])
    return sums[parity % 2 == 0], sums[parity % 2 == 1]


def _range_basis(proj: np.ndarray) -> np.ndarray:
    w, v = eigh(proj)
    return v[:, w > 0.5]


def free_fermion_spectrum_check(enc, lattice=None, J: float = 1.0, tol: float = 1e-8) -> dict:
    """Compare the encoded spectrum with subset sums of single-particle energies.

    The encoded Hamiltonian is restricted to the common ``+1`` eigenspace of
    the loop relations and split by total parity ``prod V``; each parity
    sector must reproduce the even (resp. odd) subset sums of the
    eigenvalues of ``-J * adjacency``, every level with the same multiplicity.
    """
    lattice = lattice or enc.lattice
    _cap(enc.n_qubits, 12)
    n = lattice.n_sites
    adj = np.zeros((n, n))
    for j, k in lattice.bonds():
        adj[j, k] = adj[k, j] = 1.0
    eps = np.linalg.eigvalsh(-J * adj)
    even, odd = _subset_sums(eps)
    dim = 2 ** enc.n_qubits
    H = hamiltonian_matrix(enc.hamiltonian(J), enc.n_qubits) if lattice.bonds() else np.zeros((dim, dim))
    gens = gauge_generators(enc, lattice)
    proj = np.eye(dim, dtype=complex)
    for _, g in gens:
        if not g.is_hermitian:
            return {"ok": False, "reason": f"non-hermitian loop relation {g}"}
        proj = proj @ (np.eye(dim) + pauli_to_matrix(g)) / 2
    parity = PauliString.identity(enc.n_qubits)
    for j in range(n):
        parity = parity * enc.parity_image[j]
    pmat = pauli_to_matrix(parity)
    report = {"ok": True, "gauge_generators": [f"{name}: {g}" for name, g in gens], "sectors": []}
    for label, sign, target in (("even", 1, even), ("odd", -1, odd)):
        Q = _range_basis(proj @ (np.eye(dim) + sign * pmat) / 2)
        if Q.shape[1] == 0:
            report["ok"] = False
            report["sectors"].append({"parity": label, "dim": 0})
            continue
        levels = np.linalg.eigvalsh(Q.conj().T @ H @ Q)
        mult, rem = divmod(len(levels), len(target))
        err = float("inf")
        if rem == 0 and mult > 0:
            err = float(np.max(np.abs(np.sort(levels) - np.sort(np.repeat(target, mult)))))
        ok = err <= tol
        report["ok"] &= ok
        report["sectors"].append({"parity": label, "dim": int(Q.shape[1]), "multiplicity": mult,
                                  "max_error": err, "ok": ok})
    return report


def kw_cz_identity_distance(chain_length: int, J: float = 1.0, dt: float = 0.3) -> float:
    """Check ``U_EA(dt) = C U_WE(-dt) C`` with ``C`` the CZ chain on all neighbouring qubits.

    ``C X_{j+1} C = Z_j X_{j+1} Z_{j+2}`` and the east images carry an extra
    minus sign, which flips the time direction of the conjugated west factor.
    """
    from .encodings import kw_dual_encode
    from .flowsets import line_flow_sets
    from .trotter import compile_flow_set
    from .circuit import cz
    enc = kw_dual_encode(chain_length)
    sets = {fs.label: fs for fs in line_flow_sets(enc.lattice)}
    c = Circuit(enc.n_qubits)
    c.append_layer([cz(q, q + 1) for q in range(0, enc.n_qubits - 1, 2)])
    c.append_layer([cz(q, q + 1) for q in range(1, enc.n_qubits - 1, 2)])
    cmat = circuit_to_unitary(c)
    west = circuit_to_unitary(compile_flow_set(enc, sets["WE"], J, -dt))
    east = circuit_to_unitary(compile_flow_set(enc, sets["EA"], J, dt))
    return unitary_distance(east, cmat @ west @ cmat.conj().T)
