"""Clifford encoders for flow-set components.

An encoder ``U`` for a commuting family of Pauli stabilizers ``S_l`` is a
Clifford circuit with ``U S_l U^dag = s_l Z_{q_l}`` on distinct qubits.
The circuits are produced by structural templates; each template is only
accepted after ``verify_encoder`` confirms the contract.

Most templates work in a CSS frame: a layer of single-qubit Cliffords that
turns every stabilizer into a pure X- or pure Z-string.  Entangling layers
then act on bit vectors only, which keeps the constructions transparent.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from itertools import combinations
from typing import Sequence

from .circuit import Circuit, Gate, conjugate_gate, conjugate_pauli, cx, cx_depth, cz, h, s, swap
from .encodings import Encoding, EncodingName
from .flowsets import ConnectedComponent, Shape
from .pauli import PauliString


class Category(str, Enum):
    JW_LADDER = "JWLadder"
    JW_AUGMENTED_TRIANGLE = "JWAugmentedTriangle"
    TRIANGLE_3EDGES = "Triangle3Edges"
    TORIC_PERIODIC = "ToricPeriodic"
    MIXED_3TO2 = "Mixed3to2"
    SQUARE_2TO1 = "Square2to1"
    VC_TRIANGLE = "VCTriangle"
    VC_SQUARE = "VCSquare"
    DK_PERIODIC_TRIANGLE = "DKPeriodicTriangle"
    GSE_TRIANGLE_NORTH = "GSETriangleNorth"
    GSE_TRIANGLE_SOUTH_SYM = "GSETriangleSouthSym"
    GSE_HORIZONTAL_SWAPPED = "GSEHorizontalSwapped"
    KW_CZ_LAYERS = "KWCZLayers"
    GENERIC = "Generic"


# depth bounds promised per category (CX-decomposed entangling layers)
DEPTH_BOUND: dict[Category, int | None] = {
    Category.JW_LADDER: None,            # component length, checked separately
    Category.JW_AUGMENTED_TRIANGLE: 2,
    Category.TRIANGLE_3EDGES: 2,
    Category.TORIC_PERIODIC: 4,
    Category.MIXED_3TO2: 3,
    Category.SQUARE_2TO1: 2,
    Category.VC_TRIANGLE: 2,
    Category.VC_SQUARE: 2,
    Category.DK_PERIODIC_TRIANGLE: 4,
    Category.GSE_TRIANGLE_NORTH: 2,
    Category.GSE_TRIANGLE_SOUTH_SYM: 2,
    Category.GSE_HORIZONTAL_SWAPPED: 2,
    Category.KW_CZ_LAYERS: 2,
    Category.GENERIC: None,
}


class SynthesisError(RuntimeError):
    pass


class EncoderVerificationError(AssertionError):
    def __init__(self, index: int, stabilizer: PauliString, image: PauliString, reason: str):
        self.index, self.stabilizer, self.image = index, stabilizer, image
        super().__init__(f"stabilizer #{index} {stabilizer} -> {image}: {reason}")


@dataclass
class EncMap:
    """Landing qubit and sign of every stabilizer, keyed by directed edge."""

    targets: dict[tuple[int, int], tuple[int, int]] = field(default_factory=dict)

    def qubit(self, key) -> int:
        return self.targets[tuple(key)][0]

    def sign(self, key) -> int:
        return self.targets[tuple(key)][1]

    def __len__(self) -> int:
        return len(self.targets)


@dataclass
class Encoder:
    category: Category
    circuit: Circuit
    encmap: EncMap

    def depth(self, mode: str = "cx") -> int:
        return cx_depth(self.circuit, mode)


def verify_encoder(circuit: Circuit, stabilizers: Sequence[PauliString],
                   keys: Sequence | None = None) -> EncMap:
    """Check ``U S U^dag = +-Z_q`` on distinct qubits for every stabilizer."""
    if not circuit.is_clifford:
        raise ValueError("encoder must be Clifford")
    keys = list(keys) if keys is not None else list(range(len(stabilizers)))
    out = EncMap()
    used: dict[int, int] = {}
    for i, (key, st) in enumerate(zip(keys, stabilizers)):
        img = conjugate_pauli(circuit, st)
        if img.weight != 1 or img.x:
            raise EncoderVerificationError(i, st, img, "not a single-qubit Z")
        q = img.support[0]
        if q in used:
            raise EncoderVerificationError(i, st, img, f"shares landing qubit {q} with #{used[q]}")
        used[q] = i
        sign = img.sign
        out.targets[tuple(key) if isinstance(key, tuple) else key] = (q, 1 if sign == 1 else -1)
    return out


# -- CSS frame -----------------------------------------------------------------------

_LOCAL_WORDS: dict[tuple[str, str], tuple[str, ...]] = {}


def _local_word(lx: str, lz: str) -> tuple[str, ...]:
    """Shortest word in {h, s, sdg} conjugating letter ``lx`` to X and ``lz`` to Z (signs ignored)."""
    if not _LOCAL_WORDS:
        frontier = [()]
        seen = set()
        while frontier:
            nxt = []
            for word in frontier:
                imgs = []
                for letter in "XZ":
                    p = PauliString.from_label(letter)
                    for g in word:
                        p = conjugate_gate(p, Gate(g, (0,)))
                    imgs.append(p.letters())
                # word maps X -> imgs[0], Z -> imgs[1]; its inverse does the reverse
                key = (imgs[0], imgs[1])
                if key not in seen:
                    seen.add(key)
                    _LOCAL_WORDS[key] = _invert(word)
                for g in ("h", "s", "sdg"):
                    if len(word) < 4:
                        nxt.append(word + (g,))
            frontier = nxt
    return _LOCAL_WORDS[(lx, lz)]


def _invert(word: tuple[str, ...]) -> tuple[str, ...]:
    inv = {"h": "h", "s": "sdg", "sdg": "s"}
    return tuple(inv[g] for g in reversed(word))


@dataclass
class CSSFrame:
    rotation: list[Gate]
    types: list[str]                  # "X" or "Z" per stabilizer
    stabilizers: list[PauliString]    # images after the rotation layer


def css_frame(stabs: Sequence[PauliString], prefer: dict[int, str] | None = None) -> CSSFrame | None:
    """Per-qubit Cliffords making every stabilizer a pure X- or Z-string.

    Stabilizers sharing a letter on a qubit must get the same type, those
    with different letters opposite types; solved as a 2-colouring.  Returns
    ``None`` if no such frame exists.
    """
    m = len(stabs)
    parent = list(range(m))
    rel = [0] * m

    def find(i):
        if parent[i] == i:
            return i, 0
        r, p = find(parent[i])
        parent[i] = r
        rel[i] ^= p
        return r, rel[i]

    n = stabs[0].n_qubits if stabs else 0
    for q in range(n):
        present = [(i, st.letter(q)) for i, st in enumerate(stabs) if st.letter(q) != "I"]
        if len({c for _, c in present}) > 2:
            return None
        for (i, a), (j, b) in combinations(present, 2):
            ri, pi = find(i)
            rj, pj = find(j)
            want = 0 if a == b else 1
            if ri == rj:
                if pi ^ pj != want:
                    return None
            else:
                parent[rj] = ri
                rel[rj] = pi ^ pj ^ want
    root_flip: dict[int, int] = {}
    for i, t in (prefer or {}).items():
        r, p = find(i)
        root_flip.setdefault(r, p ^ (t == "X"))
    types = []
    for i in range(m):
        r, p = find(i)
        types.append("X" if p ^ root_flip.get(r, 0) else "Z")
    rotation: list[Gate] = []
    for q in range(n):
        letters = {"X": None, "Z": None}
        for st, t in zip(stabs, types):
            c = st.letter(q)
            if c != "I":
                letters[t] = c
        lx, lz = letters["X"], letters["Z"]
        if lx is None and lz is None:
            continue
        if lx is None:
            lx = next(c for c in "XYZ" if c != lz)
        if lz is None:
            lz = next(c for c in "ZYX" if c != lx)
        for g in _local_word(lx, lz):
            rotation.append(Gate(g, (q,)))
    c = Circuit(n)
    for g in rotation:
        c.append_layer([g])
    images = [conjugate_pauli(c, st) for st in stabs]
    return CSSFrame(rotation, types, images)


def _single_qubit_layers(gates: list[Gate], n: int) -> list[list[Gate]]:
    """Pack single-qubit gates into as few layers as possible, preserving per-qubit order."""
    layers: list[list[Gate]] = []
    depth: dict[int, int] = {}
    for g in gates:
        (q,) = g.qubits
        d = depth.get(q, 0)
        if d == len(layers):
            layers.append([])
        layers[d].append(g)
        depth[q] = d + 1
    return layers


def _assemble(n: int, pre: list[list[Gate]], frame: CSSFrame | None, cx_layers: list[list[Gate]],
              stabs: Sequence[PauliString]) -> Circuit:
    """pre-layers, CSS rotation, entangling layers, then H on X-landing qubits."""
    c = Circuit(n)
    for layer in pre:
        c.append_layer(layer, "swap")
    if frame is not None:
        for layer in _single_qubit_layers(frame.rotation, n):
            c.append_layer(layer, "basis")
    for layer in cx_layers:
        c.append_layer(layer, "entangle")
    finals = []
    for st in stabs:
        img = conjugate_pauli(c, st)
        if img.weight == 1 and img.x and not img.z:
            finals.append(h(img.support[0]))
        elif img.weight == 1 and img.x and img.z:
            q = img.support[0]
            finals.extend([s(q), h(q)])  # Y -> X -> Z
    for layer in _single_qubit_layers(finals, n):
        c.append_layer(layer, "basis-out")
    return c


# -- templates (operate on CSS-frame stabilizers) ---------------------------------------

def _bits(p: PauliString) -> int:
    return p.x | p.z


def bipartite_edge_coloring(edges: Sequence[tuple[int, int]]) -> list[list[tuple[int, int]]]:
    """Proper edge colouring of a bipartite multigraph with max-degree colours (alternating paths)."""
    if not edges:
        return []
    deg: dict[tuple[str, int], int] = {}
    for u, v in edges:
        deg[("L", u)] = deg.get(("L", u), 0) + 1
        deg[("R", v)] = deg.get(("R", v), 0) + 1
    k = max(deg.values())
    at: dict[tuple[str, int], dict[int, int]] = {x: {} for x in deg}   # vertex -> colour -> edge id
    colour = [-1] * len(edges)

    def ends(e):
        return ("L", edges[e][0]), ("R", edges[e][1])

    for e in range(len(edges)):
        u, v = ends(e)
        a = next(c for c in range(k) if c not in at[u])
        b = next(c for c in range(k) if c not in at[v])
        if a not in at[v]:
            b = a
        else:
            # flip the a/b alternating path starting at v so that a becomes free at v
            path = []
            x, cur = v, a
            while cur in at[x]:
                f = at[x][cur]
                path.append(f)
                fu, fv = ends(f)
                x = fu if fv == x else fv
                cur = b if cur == a else a
            for f in path:
                for end in ends(f):
                    at[end].pop(colour[f], None)
            for f in path:
                colour[f] = b if colour[f] == a else a
            for f in path:
                for end in ends(f):
                    at[end][colour[f]] = f
            b = a
        colour[e] = b
        at[u][b] = e
        at[v][b] = e
    layers = [[] for _ in range(k)]
    for e, c in enumerate(colour):
        layers[c].append(edges[e])
    return layers


def _template_star(frame: CSSFrame) -> list[list[Gate]] | None:
    """All-Z stabilizers, each with a private qubit: CX(q -> private) for every other q."""
    if set(frame.types) != {"Z"}:
        return None
    sup = [_bits(p) for p in frame.stabilizers]
    pairs = []
    for i, b in enumerate(sup):
        others = 0
        for j, c in enumerate(sup):
            if j != i:
                others |= c
        private = b & ~others
        if not private:
            return None
        r = (private & -private).bit_length() - 1
        for q in range(b.bit_length()):
            if b >> q & 1 and q != r:
                pairs.append((q, r))
    return [[cx(c, t) for c, t in layer] for layer in bipartite_edge_coloring(pairs)]


def _chain_order(sup: list[int]) -> list[int] | None:
    """Order stabilizers into a path where only consecutive supports overlap."""
    m = len(sup)
    if m == 1:
        return [0]
    adj = {i: [j for j in range(m) if j != i and sup[i] & sup[j]] for i in range(m)}
    if any(len(v) > 2 for v in adj.values()):
        return None
    ends = [i for i in range(m) if len(adj[i]) == 1]
    if len(ends) != 2:
        return None
    order = [ends[0]]
    while len(order) < m:
        nxt = [j for j in adj[order[-1]] if j not in order]
        if len(nxt) != 1:
            return None
        order.append(nxt[0])
    return order


def _template_ladder(frame: CSSFrame) -> list[list[Gate]] | None:
    """Weight-2 Z-strings along a path: CX(next -> current) one after another."""
    if set(frame.types) != {"Z"} or any(p.weight != 2 for p in frame.stabilizers):
        return None
    sup = [_bits(p) for p in frame.stabilizers]
    order = _chain_order(sup)
    if order is None:
        return None
    layers = []
    for a, b in zip(order, order[1:]):
        shared = sup[a] & sup[b]
        own = sup[a] & ~shared
        q_own = own.bit_length() - 1
        q_sh = shared.bit_length() - 1
        layers.append([cx(q_sh, q_own)])
    last = order[-1]
    rest = sup[last]
    if len(order) > 1:
        rest &= ~sup[order[-2]]
    prev = sup[last] & ~rest
    q_last = rest.bit_length() - 1
    if len(order) == 1:
        qs = [q for q in range(sup[last].bit_length()) if sup[last] >> q & 1]
        return [[cx(qs[1], qs[0])]]
    layers.append([cx(q_last, prev.bit_length() - 1)])
    return layers


def _template_square(frame: CSSFrame) -> list[list[Gate]] | None:
    """Weight-4 strings on consecutive pairs of qubits with alternating X/Z type."""
    sup = [_bits(p) for p in frame.stabilizers]
    if any(p.weight != 4 for p in frame.stabilizers):
        return None
    order = _chain_order(sup)
    if order is None:
        return None
    types = [frame.types[i] for i in order]
    if any(a == b for a, b in zip(types, types[1:])):
        return None
    sups = [sup[i] for i in order]
    pairs = []
    if len(sups) == 1:
        qs = [q for q in range(sups[0].bit_length()) if sups[0] >> q & 1]
        pairs = [qs[:2], qs[2:]]
    for i in range(len(sups) + 1 if len(sups) > 1 else 0):
        if i == 0:
            pr = sups[0] & ~(sups[1] if len(sups) > 1 else 0)
        elif i == len(sups):
            pr = sups[-1] & ~sups[-2]
        else:
            pr = sups[i - 1] & sups[i]
        qs = [q for q in range(pr.bit_length()) if pr >> q & 1]
        if len(qs) != 2:
            return None
        pairs.append(qs)
    first = [cx(u, w) for u, w in pairs]
    second = []
    for i, t in enumerate(types):
        (u0, w0), (u1, w1) = pairs[i], pairs[i + 1]
        second.append(cx(u0, u1) if t == "X" else cx(w0, w1))
    return [first, second]


def _template_mixed(frame: CSSFrame, roles: list[dict]) -> list[list[Gate]] | None:
    """Alternating X-triangles (even bonds) and Z-strings (odd bonds) of the 3-to-2 chain.

    ``roles[i]`` gives ``lo``, ``hi`` (physical qubits) and ``anc`` for
    stabilizer ``i``.  X-type: CX(anc -> hi) then CX(anc -> lo).  Z-type
    strings are left on (lo, hi) after that and closed with CX(lo -> hi).
    """
    l1, l2, l3 = [], [], []
    for t, r in zip(frame.types, roles):
        if t == "X":
            if len(r["anc"]) != 1:
                return None
            (a,) = r["anc"]
            l1.append(cx(a, r["hi"]))
            l2.append(cx(a, r["lo"]))
        else:
            l3.append(cx(r["lo"], r["hi"]))
    return [l1, l2, l3]


def _template_toric(frame: CSSFrame, loop: list[int], anc: int) -> list[list[Gate]] | None:
    """Four triangles around a loop sharing one ancilla (toric-code-like); depth 4."""
    if len(loop) != 4 or frame.types != ["Z", "X", "Z", "X"]:
        return None
    c0, c1, c2, c3 = loop
    prep = [[cx(anc, c0)], [cx(anc, c2)], [cx(c1, anc), cx(c3, c0)], [cx(c1, c2), cx(c3, anc)]]
    return [[g.inverse() for g in layer] for layer in reversed(prep)]


def _generic_layers(stabs: Sequence[PauliString]) -> list[list[Gate]]:
    """Sequential reduction that works for any independent commuting family (no depth promise)."""
    n = stabs[0].n_qubits
    c = Circuit(n)
    used: list[int] = []
    for st in stabs:
        img = conjugate_pauli(c, st)
        free = [q for q in img.support if q not in used]
        if not free:
            raise SynthesisError(f"stabilizer {st} depends on earlier ones")
        for q in free:
            letter = img.letter(q)
            if letter == "X":
                c.append_layer([h(q)])
            elif letter == "Y":
                c.append_layer([s(q)])
                c.append_layer([h(q)])  # Y -> -X -> -Z up to sign
        img = conjugate_pauli(c, st)
        target = free[0]
        for q in free[1:]:
            c.append_layer([cx(q, target)])
        for q in used:
            if img.letter(q) == "Z":
                c.append_layer([cx(q, target)])
        used.append(target)
    return c.layers


# -- search ------------------------------------------------------------------------------

def _layers_on(qubits: Sequence[int], pairs: Sequence[tuple[int, int]]) -> list[list[Gate]]:
    """Every non-empty set of disjoint directed CX gates drawn from ``pairs``."""
    out: list[list[Gate]] = []

    def rec(i: int, used: frozenset, acc: list[Gate]):
        if i == len(pairs):
            if acc:
                out.append(list(acc))
            return
        rec(i + 1, used, acc)
        a, b = pairs[i]
        if a not in used and b not in used:
            for g in (cx(a, b), cx(b, a)):
                acc.append(g)
                rec(i + 1, used | {a, b}, acc)
                acc.pop()

    rec(0, frozenset(), [])
    return out


def search_cx_layers(frame: CSSFrame, max_depth: int) -> list[list[Gate]] | None:
    """Iterative-deepening search over CX layers on co-supported pairs (small components only).

    Prunes with the halving bound: one layer of two-qubit gates can at most
    halve the weight of a Pauli string.
    """
    stabs = frame.stabilizers
    sup = 0
    for p in stabs:
        sup |= _bits(p)
    qubits = [q for q in range(sup.bit_length()) if sup >> q & 1]
    pairs = sorted({(a, b) for p in stabs for a, b in combinations(p.support, 2)})
    layers = _layers_on(qubits, pairs)

    def need(ps) -> int:
        return max(((p.weight - 1).bit_length() for p in ps), default=0)

    def done(ps) -> bool:
        seen = set()
        for p in ps:
            if p.weight != 1:
                return False
            seen.add(p.support[0])
        return len(seen) == len(ps)

    for depth in range(0, max_depth + 1):
        seen: set = set()

        def dfs(ps, left, path):
            if done(ps):
                return path
            if left == 0 or need(ps) > left:
                return None
            key = (tuple((p.x, p.z) for p in ps), left)
            if key in seen:
                return None
            seen.add(key)
            for layer in layers:
                nxt = []
                for p in ps:
                    for g in layer:
                        p = conjugate_gate(p, g)
                    nxt.append(p)
                res = dfs(nxt, left - 1, path + [layer])
                if res is not None:
                    return res
            return None

        res = dfs(list(stabs), depth, [])
        if res is not None:
            return res
    return None


def depth1_encoder_exists(stabilizers: Sequence[PauliString]) -> bool:
    """Exhaustive check whether single-qubit gates plus ONE layer of two-qubit gates can encode.

    After one layer of gates on disjoint pairs, a single-qubit Pauli pulls
    back to an operator supported inside one pair.  So every stabilizer must
    live inside a block of some matching; the blocks are then searched over
    the full two-qubit Clifford group (local Cliffords times the CX-class
    representatives).
    """
    sup = 0
    for p in stabilizers:
        sup |= _bits(p)
    qubits = [q for q in range(sup.bit_length()) if sup >> q & 1]
    if any(p.weight > 2 for p in stabilizers):
        return False
    for matching in _matchings(qubits):
        block_of = {}
        for bi, blk in enumerate(matching):
            for q in blk:
                block_of[q] = bi
        groups: dict[int, list[PauliString]] = {}
        ok = True
        for p in stabilizers:
            bs = {block_of[q] for q in p.support}
            if len(bs) != 1:
                ok = False
                break
            groups.setdefault(bs.pop(), []).append(p)
        if ok and all(_block_encodable(matching[b], ps) for b, ps in groups.items()):
            return True
    return False


def _matchings(qubits: Sequence[int]):
    if not qubits:
        yield []
        return
    first, rest = qubits[0], list(qubits[1:])
    for m in _matchings(rest):
        yield [(first,)] + m
    for i, other in enumerate(rest):
        for m in _matchings(rest[:i] + rest[i + 1:]):
            yield [(first, other)] + m


_TWO_QUBIT_CLIFFORDS: list[Circuit] | None = None


def _two_qubit_cliffords() -> list[Circuit]:
    """Representatives of the two-qubit Clifford group modulo Paulis (720 elements) by BFS."""
    global _TWO_QUBIT_CLIFFORDS
    if _TWO_QUBIT_CLIFFORDS is None:
        gens = [h(0), h(1), s(0), s(1), cx(0, 1)]
        basis = [PauliString.from_label(l) for l in ("XI", "ZI", "IX", "IZ")]

        def key(c: Circuit):
            return tuple(conjugate_pauli(c, b).unsigned().letters() for b in basis)

        start = Circuit(2)
        seen = {key(start): start}
        frontier = [start]
        while frontier:
            nxt = []
            for c in frontier:
                for g in gens:
                    d = Circuit(2, [list(layer) for layer in c.layers])
                    d.append_layer([g])
                    k = key(d)
                    if k not in seen:
                        seen[k] = d
                        nxt.append(d)
            frontier = nxt
        _TWO_QUBIT_CLIFFORDS = list(seen.values())
    return _TWO_QUBIT_CLIFFORDS


def _block_encodable(block: tuple[int, ...], ps: list[PauliString]) -> bool:
    local = []
    for p in ps:
        local.append(PauliString.from_letters(len(block), {i: p.letter(q) for i, q in enumerate(block)}))
    if len(block) == 1:
        return len(local) == 1
    for c in _two_qubit_cliffords():
        imgs = [conjugate_pauli(c, p) for p in local]
        if all(i.weight == 1 for i in imgs) and len({i.support[0] for i in imgs}) == len(imgs):
            return True
    return False


# -- category resolution and synthesis -------------------------------------------------

def component_stabilizers(enc: Encoding, component: ConnectedComponent) -> list[PauliString]:
    return [enc.transfer(e.source, e.target) for e in component.edges]


def resolve_category(enc: Encoding, component: ConnectedComponent, flow_label: str = "") -> Category:
    name = enc.name
    if name == EncodingName.JW:
        return Category.JW_LADDER if component.shape == Shape.LINE else Category.GENERIC
    if name == EncodingName.JW_AUGMENTED:
        return Category.JW_AUGMENTED_TRIANGLE if component.shape == Shape.LINE else Category.GENERIC
    if name == EncodingName.SINGLE_ANCILLA_3EDGE:
        return Category.TRIANGLE_3EDGES if len(component) == 3 else Category.GENERIC
    if name == EncodingName.TORIC_4EDGE:
        return Category.TORIC_PERIODIC if component.is_loop and len(component) == 4 else Category.GENERIC
    if name == EncodingName.RATIO_3TO2:
        return Category.MIXED_3TO2 if component.shape == Shape.LINE else Category.GENERIC
    if name == EncodingName.RATIO_2TO1:
        return Category.SQUARE_2TO1 if component.shape == Shape.LINE else Category.GENERIC
    if name == EncodingName.VC and component.shape == Shape.LINE:
        o = component.edges[0].orientation
        return Category.VC_TRIANGLE if o.is_horizontal else Category.VC_SQUARE
    if name == EncodingName.DK and component.shape == Shape.PLAQUETTE:
        return Category.DK_PERIODIC_TRIANGLE
    if name == EncodingName.GSE and component.shape == Shape.LINE:
        o = component.edges[0].orientation.value
        return {"N": Category.GSE_TRIANGLE_NORTH, "E": Category.GSE_TRIANGLE_NORTH,
                "S": Category.GSE_TRIANGLE_SOUTH_SYM, "W": Category.GSE_HORIZONTAL_SWAPPED}[o]
    if name == EncodingName.KW_DUAL and component.shape == Shape.LINE:
        return Category.KW_CZ_LAYERS
    return Category.GENERIC


def _restrict_frame(stabs) -> CSSFrame:
    frame = css_frame(stabs)
    if frame is None:
        raise SynthesisError("component has no CSS frame")
    return frame


def synthesize_component_encoder(category: Category | str, component: ConnectedComponent,
                                 enc: Encoding) -> Encoder:
    category = Category(category)
    stabs = component_stabilizers(enc, component)
    keys = [tuple(e) for e in component.edges]
    n = enc.n_qubits
    pre: list[list[Gate]] = []
    frame = None
    ent: list[list[Gate]] | None = None

    if category == Category.GENERIC:
        ent = _generic_layers(stabs)
    elif category == Category.JW_LADDER:
        if component.shape != Shape.LINE:
            raise SynthesisError("JWLadder needs an open line component")
        frame = _restrict_frame(stabs)
        ent = _template_ladder(frame)
    elif category in (Category.JW_AUGMENTED_TRIANGLE, Category.VC_TRIANGLE, Category.GSE_TRIANGLE_NORTH,
                      Category.GSE_TRIANGLE_SOUTH_SYM):
        frame = css_frame(stabs, {i: "Z" for i in range(len(stabs))})
        ent = _template_star(frame) if frame else None
    elif category == Category.GSE_HORIZONTAL_SWAPPED:
        sites = component.sites
        lay = enc.layout.ancilla
        swaps = [swap(lay[f"v({i})"], lay[f"h({i})"]) for i in sites]
        pre = [swaps]
        moved = [conjugate_pauli(Circuit(n, [swaps]), st) for st in stabs]
        frame = css_frame(moved, {i: "Z" for i in range(len(stabs))})
        ent = _template_star(frame) if frame else None
    elif category in (Category.SQUARE_2TO1, Category.VC_SQUARE):
        frame = _restrict_frame(stabs)
        ent = _template_square(frame)
    elif category == Category.MIXED_3TO2:
        if enc.name != EncodingName.RATIO_3TO2:
            raise SynthesisError("Mixed3to2 needs the 3-to-2 chain encoding")
        prefer = {}
        roles = []
        phys = enc.layout.physical
        for i, e in enumerate(component.edges):
            lo, hi = sorted((e.source, e.target))
            prefer[i] = "X" if lo % 2 == 0 else "Z"
            anc = [q for q in stabs[i].support if q not in (phys[lo], phys[hi])]
            roles.append({"lo": phys[lo], "hi": phys[hi], "anc": anc})
        frame = css_frame(stabs, prefer)
        ent = _template_mixed(frame, roles) if frame else None
    elif category in (Category.TORIC_PERIODIC, Category.DK_PERIODIC_TRIANGLE):
        if not component.is_loop or len(component) != 4:
            raise SynthesisError(f"{category.value} needs a 4-loop component")
        loop = [e.source for e in component.edges]
        phys_q = [enc.layout.physical[j] for j in loop]
        extra = set()
        for st in stabs:
            extra |= set(st.support) - set(phys_q)
        if len(extra) != 1:
            raise SynthesisError(f"{category.value} needs exactly one shared ancilla")
        frame = css_frame(stabs, {0: "Z"})
        ent = _template_toric(frame, phys_q, extra.pop()) if frame else None
    elif category == Category.TRIANGLE_3EDGES:
        frame = css_frame(stabs, {0: "Z"})
        ent = search_cx_layers(frame, 2) if frame else None
    elif category == Category.KW_CZ_LAYERS:
        if enc.name != EncodingName.KW_DUAL:
            raise SynthesisError("KWCZLayers needs the KW dual encoding")
        weights = {st.weight for st in stabs}
        if weights == {1}:
            ent = []
        else:
            lo = min(component.sites)
            hi = max(component.sites) + 1
            qs = list(range(lo, hi + 1))
            ent = [[cz(q, q + 1) for q in qs[:-1] if (q - lo) % 2 == par] for par in (0, 1)]
            ent = [layer for layer in ent if layer]
    if ent is None:
        raise SynthesisError(f"template {category.value} does not fit component {component}")

    circuit = _assemble(n, pre, frame, ent, stabs)
    try:
        encmap = verify_encoder(circuit, stabs, keys)
    except EncoderVerificationError as err:
        raise SynthesisError(f"{category.value} encoder failed verification: {err}") from err
    bound = DEPTH_BOUND[category]
    if category == Category.JW_LADDER:
        bound = len(component)
    depth = cx_depth(Circuit(n, [l for l, lab in zip(circuit.layers, circuit.labels) if lab != "swap"]))
    if bound is not None and depth > bound:
        raise SynthesisError(f"{category.value} encoder has depth {depth} > {bound}")
    return Encoder(category, circuit, encmap)
