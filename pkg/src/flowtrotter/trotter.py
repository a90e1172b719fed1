"""First-order Trotter steps assembled from flow-set factors.

A flow-set factor is ``exp(-i dt sum_{(jk) in F} J T_jk)``.  Its circuit
is: encoder ``U`` (all components in parallel), one layer of Z-rotations
at the landing qubits, then ``U^dag``.  With ``R_Z(theta) = exp(-i theta Z/2)``
a term ``c P`` landing on ``s Z`` needs ``R_Z(2 dt c s)``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

from .circuit import (Circuit, DepthMode, Gate, PERMUTE, conjugate_pauli, cx, cx_depth, rz,
                      swap_layer_count, two_qubit_count)
from .encodings import Encoding, EncodingName, build_encoding
from .flowsets import (FlowSet, Strategy, petal_flow_sets, strategy_flow_sets,
                       verify_nonoverlap_after_encoding)
from .lattice import Lattice
from .pauli import PauliString
from .synthesis import Encoder, _local_word, resolve_category, synthesize_component_encoder

SECTION_ORDER = ("swap", "basis", "entangle", "basis-out")
LINE_ORDER = ("EA", "WE", "SO", "NO")
# literature depths quoted for comparison only; nothing here compiles them
LITERATURE_DEPTHS = {"XYZ (VC, petal)": 44, "all-to-all connectivity": 6}


class InadmissiblePlan(ValueError):
    pass


@dataclass
class CompilationPlan:
    encoding: EncodingName
    strategy: str = "line"          # line | plaquette | petal | petal-baseline
    dt: float = 0.1
    J: float = 1.0
    order: tuple[str, ...] | None = None
    use_orientation_identity: bool = True

    def __post_init__(self):
        self.encoding = EncodingName(self.encoding)
        if self.strategy not in ("line", "plaquette", "petal", "petal-baseline"):
            raise ValueError(f"unknown strategy {self.strategy!r}")


@dataclass
class FactorSpan:
    label: str
    start: int
    stop: int
    note: str = ""


@dataclass
class TrotterCircuit:
    circuit: Circuit
    encoding: Encoding
    spans: list[FactorSpan] = field(default_factory=list)

    def factor(self, label: str) -> Circuit:
        span = next(s for s in self.spans if s.label == label)
        return Circuit(self.circuit.n_qubits, self.circuit.layers[span.start:span.stop],
                       self.circuit.labels[span.start:span.stop])


# -- merging encoders by section -------------------------------------------------------

def _sections(c: Circuit) -> dict[str, list[list[Gate]]]:
    out: dict[str, list[list[Gate]]] = {k: [] for k in SECTION_ORDER}
    for layer, lab in zip(c.layers, c.labels):
        out[lab if lab in out else "entangle"].append(layer)
    return out


def merge_encoders(encoders: Sequence[Encoder], n_qubits: int) -> Circuit:
    """Run encoders on disjoint qubits side by side, aligning their sections."""
    secs = [_sections(e.circuit) for e in encoders]
    out = Circuit(n_qubits)
    for name in SECTION_ORDER:
        depth = max((len(s[name]) for s in secs), default=0)
        for i in range(depth):
            layer = [g for s in secs if i < len(s[name]) for g in s[name][i]]
            out.append_layer(layer, name)
    return out


# -- flow-set factors ---------------------------------------------------------------------

@dataclass
class FlowSetFactor:
    label: str
    circuit: Circuit
    encoders: list[Encoder]


def check_admissible(enc: Encoding, fs: FlowSet) -> None:
    rep = verify_nonoverlap_after_encoding(fs, enc)
    if not rep.ok:
        raise InadmissiblePlan(f"{enc.name.value}: {rep.describe(enc)}")


def compile_flow_set_factor(enc: Encoding, fs: FlowSet, J: float, dt: float) -> FlowSetFactor:
    check_admissible(enc, fs)
    n = enc.n_qubits
    encoders = [synthesize_component_encoder(resolve_category(enc, comp, fs.label), comp, enc)
                for comp in fs.components]
    U = merge_encoders(encoders, n)
    coeff = J * enc.transfer_coefficient
    rotations = []
    for encd in encoders:
        for key, (q, sign) in encd.encmap.targets.items():
            rotations.append(rz(q, 2 * dt * coeff * sign))
    c = Circuit(n)
    c.extend(U, f"{fs.label}:encode")
    c.append_layer(rotations, f"{fs.label}:rotate")
    c.extend(U.inverse(), f"{fs.label}:decode")
    return FlowSetFactor(fs.label, c, encoders)


def compile_flow_set(enc: Encoding, fs: FlowSet, J: float, dt: float) -> Circuit:
    """Circuit for ``exp(-i dt J sum_{(jk) in fs} T_jk)`` (exact, no Trotter error)."""
    return compile_flow_set_factor(enc, fs, J, dt).circuit


def physical_rz_layer(enc: Encoding, theta: float) -> list[Gate]:
    return [rz(q, theta) for q in sorted(enc.layout.physical.values())]


def orientation_identity_holds(enc: Encoding, forward: FlowSet, backward: FlowSet) -> bool:
    """Check ``L T_jk L^dag = T_kj`` for every edge, ``L`` the R_Z(pi/2) layer on physical qubits.

    R_Z(pi/2) equals S up to a global phase, so the check is exact Pauli conjugation.
    """
    from .circuit import s as s_gate
    L = Circuit(enc.n_qubits, [[s_gate(q) for q in sorted(enc.layout.physical.values())]])
    pairs = {tuple(e) for e in backward.edges()}
    for e in forward.edges():
        if (e.target, e.source) not in pairs:
            return False
        if conjugate_pauli(L, enc.transfer(e.source, e.target)) != enc.transfer(e.target, e.source):
            return False
    return len(pairs) == len(forward.edges())


def reversed_factor(enc: Encoding, forward: FlowSetFactor, label: str) -> Circuit:
    """Factor for the reversed set: R_Z(-pi/2) layer, forward factor, R_Z(pi/2) layer."""
    n = enc.n_qubits
    c = Circuit(n)
    c.append_layer(physical_rz_layer(enc, -math.pi / 2), f"{label}:orient")
    c.extend(forward.circuit, label)
    c.append_layer(physical_rz_layer(enc, math.pi / 2), f"{label}:orient")
    return c


# -- full steps ---------------------------------------------------------------------------

def _flow_sets_for(plan: CompilationPlan, lattice: Lattice) -> list[FlowSet]:
    strategy = "petal" if plan.strategy == "petal-baseline" else plan.strategy
    sets = strategy_flow_sets(lattice, Strategy(strategy))
    by_label = {fs.label: fs for fs in sets}
    order = plan.order or (LINE_ORDER if strategy == "line" else tuple(fs.label for fs in sets))
    missing = [lab for lab in order if lab not in by_label]
    if missing or sorted(order) != sorted(by_label):
        raise InadmissiblePlan(f"flow-set order {order} does not match sets {sorted(by_label)}")
    return [by_label[lab] for lab in order]


_REVERSE = {"WE": "EA", "SO": "NO"}


def compile_trotter_step(plan: CompilationPlan, lattice: Lattice, enc: Encoding | None = None) -> TrotterCircuit:
    enc = enc or build_encoding(plan.encoding, lattice)
    if plan.strategy == "petal-baseline":
        return compile_petal_baseline(enc, lattice, plan.J, plan.dt)
    sets = _flow_sets_for(plan, lattice)
    for fs in sets:
        check_admissible(enc, fs)
    by_label = {fs.label: fs for fs in sets}
    out = Circuit(enc.n_qubits)
    spans: list[FactorSpan] = []
    factors: dict[str, FlowSetFactor] = {}
    for fs in sets:
        start = len(out)
        note = ""
        src = _REVERSE.get(fs.label)
        if (plan.use_orientation_identity and enc.name == EncodingName.VC and src in by_label
                and orientation_identity_holds(enc, by_label[src], fs)):
            fwd = factors.get(src) or compile_flow_set_factor(enc, by_label[src], plan.J, plan.dt)
            factors[src] = fwd
            out.extend(reversed_factor(enc, fwd, fs.label))
            note = f"from {src} by R_Z(pi/2) layers on physical qubits"
        else:
            f = factors.get(fs.label) or compile_flow_set_factor(enc, fs, plan.J, plan.dt)
            factors[fs.label] = f
            out.extend(f.circuit)
            cats = sorted({e.category.value for e in f.encoders})
            note = ",".join(cats)
        spans.append(FactorSpan(fs.label, start, len(out), note))
    return TrotterCircuit(out, enc, spans)


def compile_evolution(plan: CompilationPlan, lattice: Lattice, steps: int = 1) -> TrotterCircuit:
    """``steps`` repetitions of one Trotter step."""
    if steps < 1:
        raise ValueError("steps must be >= 1")
    one = compile_trotter_step(plan, lattice)
    out = Circuit(one.circuit.n_qubits)
    spans = []
    for k in range(steps):
        base = len(out)
        out.extend(one.circuit)
        spans += [FactorSpan(f"{s.label}" if steps == 1 else f"{s.label}#{k}", base + s.start, base + s.stop, s.note)
                  for s in one.spans]
    return TrotterCircuit(out, one.encoding, spans)


# -- naive petal baseline -------------------------------------------------------------------

def pauli_rotation(p: PauliString, theta: float) -> Circuit:
    """``exp(-i theta P)`` via basis change and a linear CX ladder onto the last support qubit."""
    n = p.n_qubits
    sup = list(p.support)
    c = Circuit(n)
    basis = []
    for q in sup:
        letter = p.letter(q)
        # any word sending ``letter`` to Z will do
        for g in _local_word("Z" if letter == "X" else "X", letter):
            basis.append(Gate(g, (q,)))
    pre = Circuit(n)
    for g in basis:
        pre.append_layer([g])
    c.extend(_pack(pre), "basis")
    for a, b in zip(sup, sup[1:]):
        c.append_layer([cx(a, b)], "ladder")
    img = conjugate_pauli(c, p)
    assert img.weight == 1 and not img.x, img
    body = Circuit(n, c.layers, c.labels)
    c.append_layer([rz(sup[-1], 2 * theta * (1 if img.sign == 1 else -1))], "rotate")
    c.extend(body.inverse(), "unladder")
    return c


def _pack(c: Circuit) -> Circuit:
    """Greedy ASAP packing of a single-qubit-gate circuit."""
    out = Circuit(c.n_qubits)
    depth: dict[int, int] = {}
    layers: list[list[Gate]] = []
    for g in c.gates():
        d = max(depth.get(q, 0) for q in g.qubits)
        if d == len(layers):
            layers.append([])
        layers[d].append(g)
        for q in g.qubits:
            depth[q] = d + 1
    for layer in layers:
        out.append_layer(layer)
    return out


def _parallel_rotations(circs: Sequence[Circuit], n: int, label: str) -> Circuit:
    """Run gadgets side by side; gadgets sharing a qubit go into later rounds."""
    rounds: list[tuple[set[int], list[Circuit]]] = []
    for c in circs:
        qs = {q for g in c.gates() for q in g.qubits}
        slot = next((r for r in rounds if r[0].isdisjoint(qs)), None)
        if slot is None:
            rounds.append((set(qs), [c]))
        else:
            slot[0].update(qs)
            slot[1].append(c)
    out = Circuit(n)
    for _, group in rounds:
        depth = max(len(c) for c in group)
        for i in range(depth):
            out.append_layer([g for c in group if i < len(c) for g in c.layers[i]], label)
    return out


def compile_petal_baseline(enc: Encoding, lattice: Lattice, J: float, dt: float) -> TrotterCircuit:
    """Every petal split into its two transfer rotations, each compiled as a CX-ladder gadget."""
    n = enc.n_qubits
    coeff = J * enc.transfer_coefficient
    out = Circuit(n)
    spans = []
    for fs in petal_flow_sets(lattice):
        if not fs.components:
            continue
        start = len(out)
        for half in (0, 1):
            rots = []
            for comp in fs.components:
                e = comp.edges[half]
                rots.append(pauli_rotation(enc.transfer(e.source, e.target), dt * coeff))
            # align gadgets of equal weight so their ladders share layers
            out.extend(_parallel_rotations(rots, n, f"{fs.label}:half{half}"))
        spans.append(FactorSpan(fs.label, start, len(out), "CX-ladder gadgets"))
    return TrotterCircuit(out, enc, spans)


# -- reporting -----------------------------------------------------------------------------

def _strip_swaps(c: Circuit) -> Circuit:
    return Circuit(c.n_qubits, [[g for g in layer if g.name not in ("swap", PERMUTE)] for layer in c.layers])


def depth_report(tc: TrotterCircuit) -> dict:
    c = tc.circuit
    enc = tc.encoding
    per_set = []
    for s in tc.spans:
        sub = tc.factor(s.label)
        per_set.append({"label": s.label, "cx_depth": cx_depth(_strip_swaps(sub), DepthMode.CX),
                        "swap_layers": swap_layer_count(sub),
                        "depth_native": cx_depth(sub, DepthMode.NATIVE),
                        "depth_cx_decomposed": cx_depth(sub, DepthMode.CX),
                        "note": s.note})
    return {
        "encoding": enc.name.value,
        "lattice": str(enc.lattice),
        "qubits": enc.n_qubits,
        "fermions": enc.lattice.n_sites,
        "ratio": round(enc.ratio, 6),
        "cx_depth": cx_depth(_strip_swaps(c), DepthMode.CX),
        "swap_layers": swap_layer_count(c),
        "depth_native": cx_depth(c, DepthMode.NATIVE),
        "depth_cx_decomposed": cx_depth(c, DepthMode.CX),
        "two_qubit_gates": two_qubit_count(c),
        "rotations": sum(1 for g in c.gates() if g.name in ("rx", "ry", "rz")),
        "layers": len(c),
        "flow_sets": per_set,
    }
