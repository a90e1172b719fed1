"""Circuit serialisation: a JSON layer format and an OpenQASM 2.0 subset.

Only ``cx cz swap h s sdg rx ry rz`` are emitted; permutation gates are
lowered to SWAP layers first.  Layer boundaries survive in QASM as
``// layer`` comments, so QASM -> Circuit -> JSON is lossless.
"""
from __future__ import annotations

import json
import re
from typing import Any

from .circuit import PERMUTE, Circuit, Gate, swap

QASM_GATES = ("cx", "cz", "swap", "h", "s", "sdg", "rx", "ry", "rz")


class QasmError(ValueError):
    pass


# -- permutation lowering -----------------------------------------------------------------

def permute_to_swap_layers(g: Gate) -> list[list[Gate]]:
    """Odd-even transposition sort over the gate's qubits (in ascending order)."""
    pos = sorted(g.qubits)
    idx = {q: i for i, q in enumerate(pos)}
    dest = {q: d for q, d in zip(g.qubits, g.perm)}
    # content[i] = destination index of the state now at position i
    content = [idx[dest[q]] for q in pos]
    layers = []
    for rnd in range(len(pos)):
        layer = []
        for i in range(rnd % 2, len(pos) - 1, 2):
            if content[i] > content[i + 1]:
                content[i], content[i + 1] = content[i + 1], content[i]
                layer.append(swap(pos[i], pos[i + 1]))
        if layer:
            layers.append(layer)
    return layers


def lower_permutes(c: Circuit) -> Circuit:
    out = Circuit(c.n_qubits)
    for layer, label in zip(c.layers, c.labels):
        perms = [g for g in layer if g.name == PERMUTE]
        rest = [g for g in layer if g.name != PERMUTE]
        if not perms:
            out.append_layer(layer, label)
            continue
        out.append_layer(rest, label)
        stacks = [permute_to_swap_layers(g) for g in perms]
        for i in range(max(map(len, stacks), default=0)):
            out.append_layer([gg for st in stacks if i < len(st) for gg in st[i]], label)
    return out


# -- JSON --------------------------------------------------------------------------------------

def gate_to_dict(g: Gate) -> dict[str, Any]:
    d: dict[str, Any] = {"name": g.name, "qubits": list(g.qubits)}
    if g.angle is not None:
        d["angle"] = g.angle
    if g.perm is not None:
        d["perm"] = list(g.perm)
    return d


def gate_from_dict(d: dict) -> Gate:
    perm = tuple(d["perm"]) if d.get("perm") is not None else None
    angle = float(d["angle"]) if d.get("angle") is not None else None
    return Gate(d["name"], tuple(d["qubits"]), angle, perm)


def circuit_to_dict(c: Circuit) -> dict:
    return {"n_qubits": c.n_qubits,
            "layers": [{"label": lab, "gates": [gate_to_dict(g) for g in layer]}
                       for layer, lab in zip(c.layers, c.labels)]}


def circuit_from_dict(d: dict) -> Circuit:
    return Circuit(d["n_qubits"], [[gate_from_dict(g) for g in L["gates"]] for L in d["layers"]],
                   [L.get("label", "") for L in d["layers"]])


def circuit_to_json(c: Circuit) -> str:
    return json.dumps(circuit_to_dict(c), indent=1) + "\n"


def circuit_from_json(text: str) -> Circuit:
    return circuit_from_dict(json.loads(text))


# -- QASM ------------------------------------------------------------------------------------

def to_qasm(c: Circuit) -> str:
    c = lower_permutes(c)
    lines = ["OPENQASM 2.0;", 'include "qelib1.inc";', f"qreg q[{c.n_qubits}];"]
    for layer, label in zip(c.layers, c.labels):
        lines.append(f"// layer {label}".rstrip())
        for g in layer:
            if g.name not in QASM_GATES:
                raise QasmError(f"gate {g.name!r} outside the supported subset")
            args = ",".join(f"q[{q}]" for q in g.qubits)
            head = g.name if g.angle is None else f"{g.name}({g.angle!r})"
            lines.append(f"{head} {args};")
    return "\n".join(lines) + "\n"


_GATE_RE = re.compile(r"^([a-z]+)(?:\(([^)]*)\))?\s+(.+);$")
_ARG_RE = re.compile(r"^q\[(\d+)\]$")


def from_qasm(text: str) -> Circuit:
    """Parse the emitted subset.  Without layer comments gates are scheduled ASAP."""
    n = None
    layers: list[list[Gate]] = []
    labels: list[str] = []
    explicit = "// layer" in text
    frontier: dict[int, int] = {}
    for raw in text.splitlines():
        line = raw.strip()
        if not line:
            continue
        if line.startswith("// layer"):
            layers.append([])
            labels.append(line[len("// layer"):].strip())
            continue
        if line.startswith("//") or line.startswith("OPENQASM") or line.startswith("include"):
            continue
        m = re.match(r"^qreg\s+q\[(\d+)\];$", line)
        if m:
            n = int(m.group(1))
            continue
        m = _GATE_RE.match(line)
        if not m:
            raise QasmError(f"cannot parse line {raw!r}")
        name, angle, args = m.groups()
        if name not in QASM_GATES:
            raise QasmError(f"gate {name!r} outside the supported subset")
        qs = []
        for a in args.split(","):
            am = _ARG_RE.match(a.strip())
            if not am:
                raise QasmError(f"bad argument {a!r}")
            qs.append(int(am.group(1)))
        g = Gate(name, tuple(qs), float(angle) if angle is not None else None)
        if n is None:
            raise QasmError("gate before qreg declaration")
        if explicit:
            if not layers:
                raise QasmError("gate before the first layer comment")
            layers[-1].append(g)
        else:
            at = max(frontier.get(q, 0) for q in qs)
            while len(layers) <= at:
                layers.append([])
                labels.append("")
            layers[at].append(g)
            for q in qs:
                frontier[q] = at + 1
    if n is None:
        raise QasmError("missing qreg declaration")
    kept = [(L, lab) for L, lab in zip(layers, labels) if L]
    return Circuit(n, [L for L, _ in kept], [lab for _, lab in kept])
