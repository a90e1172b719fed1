"""Layered gate circuits, Clifford conjugation of Pauli strings, and depth counting."""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Sequence

from .pauli import PauliString

CLIFFORD_1Q = ("h", "s", "sdg", "x", "y", "z")
CLIFFORD_2Q = ("cx", "cz", "swap")
ROTATIONS = ("rx", "ry", "rz")
PERMUTE = "permute"
GATE_NAMES = CLIFFORD_1Q + CLIFFORD_2Q + ROTATIONS + (PERMUTE,)


@dataclass(frozen=True)
class Gate:
    """A gate on ``qubits``.  ``cx`` is (control, target).

    ``permute`` carries a relabelling in ``perm``: the state on
    ``qubits[i]`` moves to ``perm[i]`` (a permutation of ``qubits``).
    """

    name: str
    qubits: tuple[int, ...]
    angle: float | None = None
    perm: tuple[int, ...] | None = None

    def __post_init__(self):
        if self.name not in GATE_NAMES:
            raise ValueError(f"unknown gate {self.name!r}")
        if len(set(self.qubits)) != len(self.qubits):
            raise ValueError(f"repeated qubit in {self.name}{self.qubits}")
        arity = 1 if self.name in CLIFFORD_1Q + ROTATIONS else 2 if self.name in CLIFFORD_2Q else None
        if arity is not None and len(self.qubits) != arity:
            raise ValueError(f"{self.name} acts on {arity} qubit(s)")
        if self.name in ROTATIONS and self.angle is None:
            raise ValueError(f"{self.name} needs an angle")
        if self.name == PERMUTE and (self.perm is None or sorted(self.perm) != sorted(self.qubits)):
            raise ValueError("permute needs perm to be a rearrangement of its qubits")

    @property
    def is_clifford(self) -> bool:
        return self.name not in ROTATIONS

    @property
    def is_entangling(self) -> bool:
        return self.name in CLIFFORD_2Q or (self.name == PERMUTE and self.perm != self.qubits)

    def inverse(self) -> "Gate":
        if self.name == "s":
            return Gate("sdg", self.qubits)
        if self.name == "sdg":
            return Gate("s", self.qubits)
        if self.name in ROTATIONS:
            return Gate(self.name, self.qubits, -self.angle)
        if self.name == PERMUTE:
            inv = {dst: src for src, dst in zip(self.qubits, self.perm)}
            return Gate(PERMUTE, self.qubits, perm=tuple(inv[q] for q in self.qubits))
        return self

    def __str__(self) -> str:
        args = ",".join(map(str, self.qubits))
        if self.angle is not None:
            return f"{self.name}({self.angle:.6g}) {args}"
        if self.perm is not None:
            return f"permute {args} -> {','.join(map(str, self.perm))}"
        return f"{self.name} {args}"


def cx(c, t): return Gate("cx", (c, t))
def cz(a, b): return Gate("cz", (a, b))
def swap(a, b): return Gate("swap", (a, b))
def h(q): return Gate("h", (q,))
def s(q): return Gate("s", (q,))
def sdg(q): return Gate("sdg", (q,))
def rz(q, theta): return Gate("rz", (q,), float(theta))
def rx(q, theta): return Gate("rx", (q,), float(theta))
def ry(q, theta): return Gate("ry", (q,), float(theta))


@dataclass
class Circuit:
    """Ordered layers; gates inside a layer act on pairwise-disjoint qubits.

    ``labels`` is an optional per-layer provenance string.
    """

    n_qubits: int
    layers: list[list[Gate]] = field(default_factory=list)
    labels: list[str] = field(default_factory=list)

    def __post_init__(self):
        self.layers = [list(layer) for layer in self.layers]
        for layer in self.layers:
            self._check_layer(layer)
        if len(self.labels) < len(self.layers):
            self.labels = list(self.labels) + [""] * (len(self.layers) - len(self.labels))

    def _check_layer(self, layer: Sequence[Gate]) -> None:
        seen: set[int] = set()
        for g in layer:
            for q in g.qubits:
                if not 0 <= q < self.n_qubits:
                    raise ValueError(f"qubit {q} out of range in {g}")
                if q in seen:
                    raise ValueError(f"qubit {q} used twice in one layer")
                seen.add(q)

    def append_layer(self, gates: Iterable[Gate], label: str = "") -> None:
        gates = list(gates)
        if not gates:
            return
        self._check_layer(gates)
        self.layers.append(gates)
        self.labels.append(label)

    def extend(self, other: "Circuit", label: str | None = None) -> None:
        if other.n_qubits != self.n_qubits:
            raise ValueError("qubit count mismatch")
        for layer, lab in zip(other.layers, other.labels):
            self.append_layer(layer, lab if label is None else label)

    def gates(self) -> Iterable[Gate]:
        for layer in self.layers:
            yield from layer

    def inverse(self) -> "Circuit":
        return Circuit(self.n_qubits, [[g.inverse() for g in layer] for layer in reversed(self.layers)],
                       list(reversed(self.labels)))

    @property
    def is_clifford(self) -> bool:
        return all(g.is_clifford for g in self.gates())

    def relabel(self, mapping: dict[int, int], n_qubits: int | None = None) -> "Circuit":
        def move(g: Gate) -> Gate:
            qs = tuple(mapping[q] for q in g.qubits)
            perm = tuple(mapping[q] for q in g.perm) if g.perm is not None else None
            return Gate(g.name, qs, g.angle, perm)
        return Circuit(n_qubits or self.n_qubits, [[move(g) for g in layer] for layer in self.layers],
                       list(self.labels))

    def __len__(self) -> int:
        return len(self.layers)


def parallel(circuits: Sequence[Circuit], n_qubits: int) -> Circuit:
    """Stack circuits on disjoint qubits layer by layer."""
    out = Circuit(n_qubits)
    depth = max((len(c) for c in circuits), default=0)
    for i in range(depth):
        layer: list[Gate] = []
        for c in circuits:
            if i < len(c):
                layer.extend(c.layers[i])
        out.append_layer(layer)
    return out


# -- Clifford conjugation ---------------------------------------------------

def conjugate_gate(p: PauliString, g: Gate) -> PauliString:
    """``g p g^dag`` for a Clifford gate."""
    n, x, z, r = p.n_qubits, p.x, p.z, p.phase
    name = g.name
    if name == "h":
        (q,) = g.qubits
        xq, zq = x >> q & 1, z >> q & 1
        x = x & ~(1 << q) | zq << q
        z = z & ~(1 << q) | xq << q
        r += 2 * (xq & zq)
    elif name in ("s", "sdg"):
        (q,) = g.qubits
        xq = x >> q & 1
        z ^= xq << q
        r += xq if name == "s" else 3 * xq
    elif name in ("x", "y", "z"):
        (q,) = g.qubits
        xq, zq = x >> q & 1, z >> q & 1
        anti = {"x": zq, "z": xq, "y": xq ^ zq}[name]
        r += 2 * anti
    elif name == "cx":
        c, t = g.qubits
        xc, zt = x >> c & 1, z >> t & 1
        x ^= xc << t
        z ^= zt << c
    elif name == "cz":
        a, b = g.qubits
        xa, xb = x >> a & 1, x >> b & 1
        z ^= xb << a
        z ^= xa << b
        r += 2 * (xa & xb)
    elif name == "swap":
        a, b = g.qubits
        for bits in ("x", "z"):
            v = x if bits == "x" else z
            va, vb = v >> a & 1, v >> b & 1
            v = v & ~(1 << a) & ~(1 << b) | vb << a | va << b
            if bits == "x":
                x = v
            else:
                z = v
    elif name == PERMUTE:
        nx, nz = x, z
        for src in g.qubits:
            nx &= ~(1 << src)
            nz &= ~(1 << src)
        for src, dst in zip(g.qubits, g.perm):
            nx |= (x >> src & 1) << dst
            nz |= (z >> src & 1) << dst
        x, z = nx, nz
    else:
        raise ValueError(f"non-Clifford gate {g} cannot conjugate a Pauli string")
    return PauliString(n, x, z, r)


def conjugate_pauli(circuit: Circuit, p: PauliString) -> PauliString:
    """``U p U^dag`` where ``U`` is the circuit unitary (first layer acts first)."""
    if p.n_qubits != circuit.n_qubits:
        raise ValueError("qubit count mismatch")
    for g in circuit.gates():
        p = conjugate_gate(p, g)
    return p


class Tableau:
    """Images of every ``X_q`` and ``Z_q`` under a Clifford unitary."""

    def __init__(self, n_qubits: int):
        self.n_qubits = n_qubits
        self.x_images = [PauliString(n_qubits, x=1 << q) for q in range(n_qubits)]
        self.z_images = [PauliString(n_qubits, z=1 << q) for q in range(n_qubits)]

    @classmethod
    def from_circuit(cls, circuit: Circuit) -> "Tableau":
        t = cls(circuit.n_qubits)
        for g in circuit.gates():
            t = apply_gate(t, g)
        return t

    def copy(self) -> "Tableau":
        t = Tableau.__new__(Tableau)
        t.n_qubits = self.n_qubits
        t.x_images = list(self.x_images)
        t.z_images = list(self.z_images)
        return t

    def conjugate(self, p: PauliString) -> PauliString:
        """Image of an arbitrary Pauli string, assembled from generator images."""
        out = PauliString.identity(self.n_qubits).times_phase(p.phase)
        for q in range(self.n_qubits):
            if p.x >> q & 1:
                out = out * self.x_images[q]
            if p.z >> q & 1:
                out = out * self.z_images[q]
        return out

    def is_symplectic(self) -> bool:
        n = self.n_qubits
        for a in range(n):
            for b in range(n):
                if not self.x_images[a].commutes(self.x_images[b]):
                    return False
                if not self.z_images[a].commutes(self.z_images[b]):
                    return False
                if self.x_images[a].commutes(self.z_images[b]) != (a != b):
                    return False
        return True

    def __eq__(self, other) -> bool:
        return (isinstance(other, Tableau) and self.x_images == other.x_images
                and self.z_images == other.z_images)

    def is_identity(self) -> bool:
        return self == Tableau(self.n_qubits)


def apply_gate(t: Tableau, g: Gate) -> Tableau:
    if not g.is_clifford:
        raise ValueError(f"non-Clifford gate {g} rejected by the tableau")
    out = t.copy()
    out.x_images = [conjugate_gate(p, g) for p in t.x_images]
    out.z_images = [conjugate_gate(p, g) for p in t.z_images]
    return out


# -- depth accounting ---------------------------------------------------------

class DepthMode(str, Enum):
    NATIVE = "native"
    CX = "cx"


def permutation_swap_depth(g: Gate) -> int:
    """Odd-even transposition depth to realise ``g.perm`` on a line of its qubits."""
    order = list(g.qubits)
    pos = {q: i for i, q in enumerate(order)}
    # arr[i] = final line position of the state that starts at position i
    arr = [pos[dst] for dst in g.perm]
    depth = 0
    while arr != sorted(arr):
        start = depth % 2
        for i in range(start, len(arr) - 1, 2):
            if arr[i] > arr[i + 1]:
                arr[i], arr[i + 1] = arr[i + 1], arr[i]
        depth += 1
    return depth


def gate_depth_cost(g: Gate, mode: DepthMode) -> int:
    mode = DepthMode(mode)
    if g.name in ("cx", "cz"):
        return 1
    if g.name == "swap":
        return 1 if mode == DepthMode.NATIVE else 3
    if g.name == PERMUTE:
        d = permutation_swap_depth(g)
        return d if mode == DepthMode.NATIVE else 3 * d
    return 0


def layer_cost(layer: Sequence[Gate], mode: DepthMode) -> int:
    return max((gate_depth_cost(g, mode) for g in layer), default=0)


def cx_depth(circuit: Circuit, mode: DepthMode | str = DepthMode.CX) -> int:
    """Entangling depth; single-qubit layers are free.

    In ``cx`` mode a SWAP layer costs three CX layers and a CZ layer one.
    """
    return sum(layer_cost(layer, DepthMode(mode)) for layer in circuit.layers)


def two_qubit_count(circuit: Circuit) -> int:
    return sum(1 for g in circuit.gates() if g.name in CLIFFORD_2Q)


def swap_layer_count(circuit: Circuit) -> int:
    return sum(1 for layer in circuit.layers if any(g.name == "swap" for g in layer))
