"""Fermion-to-qubit encodings as explicit images of the vertex, edge and transfer operators.

Every encoding is materialised as three lookup tables (``parity_image``,
``edge_image``, ``transfer_image``) of Pauli strings.  Transfer images hold
the Pauli part only; the factor 1/2 of ``T_jk`` lives in
``Encoding.transfer_coefficient``.

Encodings are built in one of two ways:

* from Majorana images (Jordan-Wigner style), optionally dressing chosen
  edges with an auxiliary Majorana bilinear, which leaves every pairwise
  commutation relation untouched;
* from a table of edge or transfer images for one orientation per bond,
  with the other operators filled in through ``T_jk = (i/2) V_j E_jk`` and
  ``T_jk = -V_j V_k T_kj``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from itertools import combinations
from typing import Callable, Iterable, Mapping

from .lattice import Boundary, DirectedEdge, Lattice, Orientation, build_chain
from .majorana import (FermionicTerm, MajoranaMonomial, TermKind, edge_op, iter_terms,
                       majorana_commutes, transfer_op, vertex_op)
from .pauli import PauliString


class EncodingName(str, Enum):
    JW = "JW"
    JW_AUGMENTED = "JWAugmented"
    SINGLE_ANCILLA_3EDGE = "SingleAncilla3Edge"
    TORIC_4EDGE = "Toric4Edge"
    RATIO_3TO2 = "Ratio3to2"
    RATIO_2TO1 = "Ratio2to1"
    VC = "VC"
    DK = "DK"
    GSE = "GSE"
    KW_DUAL = "KWDual"


ONE_D_VARIANTS = (EncodingName.JW_AUGMENTED, EncodingName.SINGLE_ANCILLA_3EDGE,
                  EncodingName.TORIC_4EDGE, EncodingName.RATIO_3TO2, EncodingName.RATIO_2TO1)
DELOCALIZED = (EncodingName.GSE, EncodingName.KW_DUAL)


@dataclass(frozen=True)
class QubitLayout:
    n_qubits: int
    physical: Mapping[int, int]
    ancilla: Mapping[str, int]

    def __post_init__(self):
        phys, anc = set(self.physical.values()), set(self.ancilla.values())
        if phys & anc:
            raise ValueError("physical and ancilla qubits overlap")
        if phys | anc != set(range(self.n_qubits)) or len(phys) + len(anc) != self.n_qubits:
            raise ValueError("layout must cover every qubit exactly once")

    def name_of(self, q: int) -> str:
        for j, qq in self.physical.items():
            if qq == q:
                return f"p({j})"
        for role, qq in self.ancilla.items():
            if qq == q:
                return role
        raise KeyError(q)


@dataclass
class Encoding:
    name: EncodingName
    lattice: Lattice
    layout: QubitLayout
    parity_image: dict[int, PauliString]
    edge_image: dict[tuple[int, int], PauliString]
    transfer_image: dict[tuple[int, int], PauliString]
    transfer_coefficient: float = 0.5
    metadata: dict[str, str] = field(default_factory=dict)

    @property
    def n_qubits(self) -> int:
        return self.layout.n_qubits

    @property
    def ratio(self) -> float:
        return self.n_qubits / self.lattice.n_sites

    def transfer(self, j: int, k: int) -> PauliString:
        return self.transfer_image[(j, k)]

    def image(self, term: FermionicTerm) -> PauliString:
        """Pauli image of ``term.monomial`` (the coefficient is not included)."""
        if term.kind == TermKind.VERTEX:
            return self.parity_image[term.sites[0]]
        if term.kind == TermKind.EDGE:
            return self.edge_image[term.sites]
        return self.transfer_image[term.sites]

    def transfer_terms(self, edges: Iterable[DirectedEdge | tuple[int, int]], J: float = 1.0
                       ) -> list[tuple[PauliString, float]]:
        """``J * T_jk`` as (Pauli, real coefficient) pairs."""
        return [(self.transfer_image[tuple(e)], J * self.transfer_coefficient) for e in edges]

    def hamiltonian(self, J: float = 1.0) -> list[tuple[PauliString, float]]:
        return self.transfer_terms(self.lattice.directed_edges(), J)

    def edge_support(self, edges: Iterable[DirectedEdge | tuple[int, int]]) -> set[int]:
        out: set[int] = set()
        for e in edges:
            out.update(self.transfer_image[tuple(e)].support)
        return out

    def to_dict(self) -> dict:
        lat = self.lattice
        return {
            "name": self.name.value,
            "lattice": {"width": lat.width, "height": lat.height, "boundary": lat.boundary.value},
            "n_qubits": self.n_qubits,
            "physical": {str(j): q for j, q in sorted(self.layout.physical.items())},
            "ancilla": dict(sorted(self.layout.ancilla.items(), key=lambda kv: kv[1])),
            "transfer_coefficient": self.transfer_coefficient,
            "parity": {str(j): str(p) for j, p in sorted(self.parity_image.items())},
            "edge": {f"{j},{k}": str(p) for (j, k), p in sorted(self.edge_image.items())},
            "transfer": {f"{j},{k}": str(p) for (j, k), p in sorted(self.transfer_image.items())},
            "metadata": dict(sorted(self.metadata.items())),
        }

    @classmethod
    def from_dict(cls, d: Mapping) -> "Encoding":
        lat = Lattice(d["lattice"]["width"], d["lattice"]["height"], Boundary(d["lattice"]["boundary"]))

        def pair(key: str) -> tuple[int, int]:
            a, b = key.split(",")
            return int(a), int(b)

        return cls(
            name=EncodingName(d["name"]),
            lattice=lat,
            layout=QubitLayout(d["n_qubits"], {int(j): q for j, q in d["physical"].items()}, dict(d["ancilla"])),
            parity_image={int(j): PauliString.from_label(p) for j, p in d["parity"].items()},
            edge_image={pair(k): PauliString.from_label(p) for k, p in d["edge"].items()},
            transfer_image={pair(k): PauliString.from_label(p) for k, p in d["transfer"].items()},
            transfer_coefficient=d.get("transfer_coefficient", 0.5),
            metadata=dict(d.get("metadata", {})),
        )


# -- assembly helpers -------------------------------------------------------------

def _from_edge_images(name, lattice, layout, parity, oriented_edges: Mapping[tuple[int, int], PauliString],
                      metadata=None) -> Encoding:
    """Complete the tables from one oriented edge image per bond."""
    edge_image: dict[tuple[int, int], PauliString] = {}
    transfer_image: dict[tuple[int, int], PauliString] = {}
    for (j, k), e in oriented_edges.items():
        edge_image[(j, k)] = e
        edge_image[(k, j)] = -e
        # T_jk = (i/2) V_j E_jk, T_kj = (i/2) V_k E_kj
        transfer_image[(j, k)] = (parity[j] * e).times_phase(1)
        transfer_image[(k, j)] = (parity[k] * -e).times_phase(1)
    _check_bonds(lattice, edge_image)
    return Encoding(name, lattice, layout, dict(parity), edge_image, transfer_image, metadata=dict(metadata or {}))


def _from_transfer_images(name, lattice, layout, parity, oriented_transfers: Mapping[tuple[int, int], PauliString],
                          metadata=None) -> Encoding:
    """Complete the tables from one oriented transfer image per bond."""
    transfer_image: dict[tuple[int, int], PauliString] = {}
    edge_image: dict[tuple[int, int], PauliString] = {}
    for (j, k), t in oriented_transfers.items():
        transfer_image[(j, k)] = t
        transfer_image[(k, j)] = -(parity[j] * parity[k] * t)
        # E_jk = -2i V_j T_jk; the 1/2 is carried separately
        e = (parity[j] * t).times_phase(3)
        edge_image[(j, k)] = e
        edge_image[(k, j)] = -e
    _check_bonds(lattice, edge_image)
    return Encoding(name, lattice, layout, dict(parity), edge_image, transfer_image, metadata=dict(metadata or {}))


def _check_bonds(lattice: Lattice, edge_image) -> None:
    want = {tuple(e) for e in lattice.directed_edges()}
    if set(edge_image) != want:
        missing = sorted(want - set(edge_image))
        extra = sorted(set(edge_image) - want)
        raise ValueError(f"edge table does not match the lattice (missing {missing[:4]}, extra {extra[:4]})")


def jw_majorana_images(n_qubits: int, mode_qubits: list[int]) -> list[PauliString]:
    """Jordan-Wigner images of ``gamma_{2m}``, ``gamma_{2m+1}`` for mode ``m`` on ``mode_qubits[m]``.

    The Z string runs over every qubit below the mode's qubit, so qubits that
    carry no mode still pick up a Z when a string passes them.
    """
    out = []
    for q in mode_qubits:
        string = (1 << q) - 1
        out.append(PauliString(n_qubits, x=1 << q, z=string | 1 << q, phase=1))  # Z..Z Y_q
        out.append(PauliString(n_qubits, x=1 << q, z=string, phase=2))           # -Z..Z X_q
    return out


def map_monomial(mono: MajoranaMonomial, images: list[PauliString], n_qubits: int) -> PauliString:
    out = PauliString.identity(n_qubits).times_phase(mono.phase)
    for a in mono.indices:
        out = out * images[a]
    return out


def _jw_tables(lattice: Lattice, n_qubits: int, mode_qubits: list[int], site_mode: Callable[[int], int]):
    """Parity and oriented edge images from Jordan-Wigner over ``mode_qubits``."""
    images = jw_majorana_images(n_qubits, mode_qubits)
    n_modes = len(mode_qubits)
    n = lattice.n_sites

    def lift(term: FermionicTerm) -> MajoranaMonomial:
        # re-index the site Majoranas onto the enlarged mode register
        idx = []
        for a in term.monomial.indices:
            j, r = divmod(a, 2)
            idx.append(2 * site_mode(j) + r)
        return MajoranaMonomial.from_indices(n_modes, idx, term.monomial.phase)

    parity = {j: map_monomial(lift(vertex_op(j, n)), images, n_qubits) for j in range(n)}
    edges = {(j, k): map_monomial(lift(edge_op(j, k, n)), images, n_qubits) for j, k in lattice.bonds()}
    return images, parity, edges


def _aux_bilinear(images: list[PauliString], a: int, b: int) -> PauliString:
    """Image of ``i mu_a mu_b`` for two auxiliary Majoranas."""
    return (images[a] * images[b]).times_phase(1)


# -- encodings ----------------------------------------------------------------------

def jw_encode_lattice(lattice: Lattice) -> Encoding:
    """Jordan-Wigner along the row-major site order."""
    n = lattice.n_sites
    layout = QubitLayout(n, {j: j for j in range(n)}, {})
    _, parity, edges = _jw_tables(lattice, n, list(range(n)), lambda j: j)
    return _from_edge_images(EncodingName.JW, lattice, layout, parity, edges,
                             {"ordering": "row-major snake-free Jordan-Wigner"})


def jw_encode(chain_length: int, boundary: Boundary | str = Boundary.OPEN) -> Encoding:
    if chain_length < 1:
        raise ValueError("chain_length must be >= 1")
    return jw_encode_lattice(build_chain(chain_length, boundary))


def _variant_jw_augmented(n: int) -> Encoding:
    lattice = build_chain(n)
    # p(0), a(0), p(1), a(1), ..., p(n-1): a Jordan-Wigner string through a(j) leaves Z_{a(j)}
    phys = {j: 2 * j for j in range(n)}
    anc = {f"a({j},{j + 1})": 2 * j + 1 for j in range(n - 1)}
    nq = 2 * n - 1
    _, parity, edges = _jw_tables(lattice, nq, [phys[j] for j in range(n)], lambda j: j)
    return _from_edge_images(EncodingName.JW_AUGMENTED, lattice, QubitLayout(nq, phys, anc), parity, edges,
                             {"ancilla": "one per edge, interleaved"})


def _letters(nq: int, spec: Mapping[int, str], sign: int = 1) -> PauliString:
    return PauliString.from_letters(nq, spec, sign)


def _variant_single_ancilla(n: int) -> Encoding:
    if n != 4:
        raise ValueError("SingleAncilla3Edge is defined for an open chain of 4 sites")
    lattice = build_chain(4)
    a = 4
    parity = {j: _letters(5, {j: "Z"}) for j in range(4)}
    edges = {(0, 1): _letters(5, {0: "X", a: "Z", 1: "X"}),
             (1, 2): _letters(5, {1: "X", a: "X", 2: "X"}),
             (2, 3): _letters(5, {2: "X", a: "Z", 3: "X"})}
    layout = QubitLayout(5, {j: j for j in range(4)}, {"a": a})
    return _from_edge_images(EncodingName.SINGLE_ANCILLA_3EDGE, lattice, layout, parity, edges)


def _variant_toric(n: int) -> Encoding:
    if n != 4:
        raise ValueError("Toric4Edge is defined for a periodic chain of 4 sites")
    lattice = build_chain(4, Boundary.PERIODIC)
    a = 4
    parity = {j: _letters(5, {j: "Z"}) for j in range(4)}
    edges = {(0, 1): _letters(5, {0: "X", a: "Z", 1: "X"}),
             (1, 2): _letters(5, {1: "X", a: "X", 2: "X"}),
             (2, 3): _letters(5, {2: "X", a: "Z", 3: "X"}),
             (0, 3): _letters(5, {3: "X", a: "X", 0: "X"})}
    layout = QubitLayout(5, {j: j for j in range(4)}, {"a": a})
    return _from_edge_images(EncodingName.TORIC_4EDGE, lattice, layout, parity, edges)


def _variant_ratio_3to2(n: int) -> Encoding:
    if n < 2:
        raise ValueError("Ratio3to2 needs at least 2 sites")
    lattice = build_chain(n)
    n_anc = (n - 1 + 1) // 2            # one per even-indexed edge
    nq = n + n_anc
    anc = {f"a({2 * m},{2 * m + 1})": n + m for m in range(n_anc)}
    parity = {j: _letters(nq, {j: "Z"}) for j in range(n)}
    edges = {}
    for b in range(n - 1):
        spec = {b: "X", b + 1: "X"}
        if b % 2 == 0:
            spec[n + b // 2] = "X"
        else:
            for m in ((b - 1) // 2, (b + 1) // 2):
                if m < n_anc:
                    spec[n + m] = "Z"
        edges[(b, b + 1)] = _letters(nq, spec)
    layout = QubitLayout(nq, {j: j for j in range(n)}, anc)
    return _from_edge_images(EncodingName.RATIO_3TO2, lattice, layout, parity, edges,
                             {"ancilla": "one per even edge (b, b+1)"})


def _aux_jw_encoding(name: EncodingName, lattice: Lattice, dressed: Callable[[int, int], bool],
                     extra_meta: Mapping[str, str]) -> Encoding:
    """Physical + auxiliary qubit per site, JW over both; ``dressed`` bonds get an aux bilinear.

    Site ``j`` owns qubits p(j) = 2j and a(j) = 2j+1.  The auxiliary mode on
    a(j) supplies two Majoranas, one for the bond leaving ``j`` towards higher
    index and one for the bond arriving from lower index, so each auxiliary
    Majorana is used at most once and all bilinears commute with everything.
    """
    n = lattice.n_sites
    nq = 2 * n
    phys = {j: 2 * j for j in range(n)}
    anc = {f"a({j})": 2 * j + 1 for j in range(n)}
    images, parity, edges = _jw_tables(lattice, nq, list(range(nq)), lambda j: 2 * j)
    used: set[int] = set()
    for (j, k) in list(edges):
        if not dressed(j, k):
            continue
        up = 2 * (2 * j + 1) + 1       # second Majorana of the mode on a(j)
        down = 2 * (2 * k + 1)         # first Majorana of the mode on a(k)
        if up in used or down in used:
            raise ValueError(f"auxiliary Majorana reused on bond ({j},{k})")
        used.update((up, down))
        edges[(j, k)] = edges[(j, k)] * _aux_bilinear(images, up, down)
    meta = {"qubit_order": "p(0), a(0), p(1), a(1), ... row-major"}
    meta.update(extra_meta)
    return _from_edge_images(name, lattice, QubitLayout(nq, phys, anc), parity, edges, meta)


def _variant_ratio_2to1(n: int) -> Encoding:
    if n < 2:
        raise ValueError("Ratio2to1 needs at least 2 sites")
    return _aux_jw_encoding(EncodingName.RATIO_2TO1, build_chain(n), lambda j, k: True,
                            {"ancilla": "one per site; every bond dressed"})


_VARIANTS = {
    EncodingName.JW_AUGMENTED: _variant_jw_augmented,
    EncodingName.SINGLE_ANCILLA_3EDGE: _variant_single_ancilla,
    EncodingName.TORIC_4EDGE: _variant_toric,
    EncodingName.RATIO_3TO2: _variant_ratio_3to2,
    EncodingName.RATIO_2TO1: _variant_ratio_2to1,
}


def encode_1d_variant(category: EncodingName | str, chain_length: int,
                      boundary: Boundary | str = Boundary.OPEN) -> Encoding:
    category = EncodingName(category)
    if category not in _VARIANTS:
        raise ValueError(f"{category.value} is not a 1D ancilla variant")
    want = Boundary.PERIODIC if category == EncodingName.TORIC_4EDGE else Boundary.OPEN
    if Boundary(boundary) != want:
        raise ValueError(f"{category.value} requires a {want.value} chain")
    if chain_length < 1:
        raise ValueError("chain_length must be >= 1")
    return _VARIANTS[category](chain_length)


def vc_encode(lattice: Lattice) -> Encoding:
    """Two qubits per site; vertical bonds are dressed with auxiliary bilinears.

    Horizontal images have weight 3 (the string only crosses a(j)), vertical
    images weight 4 (the two strings cancel between a(j) and p(k)).
    """
    if lattice.periodic:
        raise ValueError("VC is implemented for open lattices only")
    W = lattice.width
    return _aux_jw_encoding(EncodingName.VC, lattice, lambda j, k: k - j == W and lattice.height > 1,
                            {"vertical": "dressed with i*mu_up(j)*mu_down(k) on a(j), a(k)"})


def _dk_orientations(lattice: Lattice, anc_of: Mapping[tuple[int, int], str]) -> dict[tuple[int, int], int]:
    """Choose, per bond, which end carries X so that bonds meeting at a site anticommute.

    Bonds at a common site must carry equal letters there iff they share an
    ancilla.  This is a parity constraint system solved by union-find.
    Returns the site carrying X for each bond.
    """
    bonds = lattice.bonds()
    parent = {b: b for b in bonds}
    rel = {b: 0 for b in bonds}          # parity relative to parent

    def find(b):
        if parent[b] == b:
            return b, 0
        root, r = find(parent[b])
        parent[b] = root
        rel[b] ^= r
        return root, rel[b]

    def union(a, b, want: int):
        ra, pa = find(a)
        rb, pb = find(b)
        if ra == rb:
            if pa ^ pb != want:
                raise ValueError("no consistent DK orientation for this lattice")
            return
        parent[rb] = ra
        rel[rb] = pa ^ pb ^ want

    # o(b) = 1 means X on the higher-index end; role at s is o(b) XOR [s is the high end]
    by_site: dict[int, list[tuple[int, int]]] = {}
    for b in bonds:
        for s in b:
            by_site.setdefault(s, []).append(b)
    for s, incident in by_site.items():
        for b1, b2 in combinations(incident, 2):
            share = anc_of.get(b1) is not None and anc_of.get(b1) == anc_of.get(b2)
            flip = (s == b1[1]) ^ (s == b2[1])
            union(b1, b2, (0 if share else 1) ^ flip)
    out = {}
    for b in bonds:
        _, o = find(b)
        out[b] = b[1] if o else b[0]
    return out


def dk_encode(lattice: Lattice) -> Encoding:
    """One ancilla per plaquette with even ``x + y``.

    A bond's ancilla is that of the ancilla-carrying plaquette it borders
    (if any).  Transfer image oriented from its X-end: ``s (Y_j Y_k) A_f``
    with ``A = X`` on vertical and ``A = Y`` on horizontal bonds, and
    ``s = -1`` for north-pointing bonds.
    """
    if lattice.width % 2 or lattice.height % 2:
        raise ValueError("DK needs even lattice dimensions")
    n = lattice.n_sites
    anc_plaquettes = [(x, y) for (x, y) in lattice.plaquettes() if (x + y) % 2 == 0]
    nq = n + len(anc_plaquettes)
    anc_names = {p: f"f({p[0]},{p[1]})" for p in anc_plaquettes}
    anc_qubit = {anc_names[p]: n + i for i, p in enumerate(anc_plaquettes)}
    anc_of: dict[tuple[int, int], str] = {}
    for p in anc_plaquettes:
        c = lattice.plaquette_sites(*p)
        for a, b in zip(c, c[1:] + c[:1]):
            bond = (min(a, b), max(a, b))
            if bond in anc_of:
                raise ValueError("bond borders two ancilla plaquettes")
            anc_of[bond] = anc_names[p]
    x_end = _dk_orientations(lattice, anc_of)
    parity = {j: _letters(nq, {j: "Z"}) for j in range(n)}
    transfers = {}
    for (a, b) in lattice.bonds():
        j = x_end[(a, b)]
        k = b if j == a else a
        e = lattice.edge(j, k)
        spec = {j: "Y", k: "Y"}
        if (a, b) in anc_of:
            spec[anc_qubit[anc_of[(a, b)]]] = "Y" if e.orientation.is_horizontal else "X"
        sign = -1 if e.orientation == Orientation.NORTH else 1
        transfers[(j, k)] = _letters(nq, spec, sign)
    layout = QubitLayout(nq, {j: j for j in range(n)}, anc_qubit)
    return _from_transfer_images(EncodingName.DK, lattice, layout, parity, transfers,
                                 {"ancilla_plaquettes": "(x + y) even",
                                  "orientation": "X-end per bond from site parity constraints"})


def gse_encode(lattice: Lattice) -> Encoding:
    """Qubits v(i) = 2i, h(i) = 2i+1; parity ``Z_v Z_h``."""
    if lattice.periodic:
        raise ValueError("GSE is implemented for open lattices only")
    n = lattice.n_sites
    nq = 2 * n
    v = {i: 2 * i for i in range(n)}
    hq = {i: 2 * i + 1 for i in range(n)}
    parity = {j: _letters(nq, {v[j]: "Z", hq[j]: "Z"}) for j in range(n)}
    transfers = {}
    for e in lattice.directed_edges():
        j, k = e.source, e.target
        if e.orientation == Orientation.NORTH:
            transfers[(j, k)] = _letters(nq, {v[j]: "Y", v[k]: "Y", hq[k]: "Z"})
        elif e.orientation == Orientation.EAST:
            transfers[(j, k)] = _letters(nq, {hq[j]: "Y", hq[k]: "Y", v[j]: "Z"})
    anc = {f"v({i})": v[i] for i in range(n)} | {f"h({i})": hq[i] for i in range(n)}
    return _from_transfer_images(EncodingName.GSE, lattice, QubitLayout(nq, {}, anc), parity, transfers,
                                 {"south_west": "derived from north/east by T_kj = -V_j V_k T_jk"})


def kw_dual_encode(chain_length: int) -> Encoding:
    """``N + 1`` qubits, ``V_j = Z_j Z_{j+1}``; the west transfer ``(j+1 -> j)`` is ``X_{j+1}``."""
    if chain_length < 2:
        raise ValueError("KW dual needs chain_length >= 2")
    n = chain_length
    nq = n + 1
    lattice = build_chain(n)
    parity = {j: _letters(nq, {j: "Z", j + 1: "Z"}) for j in range(n)}
    transfers = {(j + 1, j): _letters(nq, {j + 1: "X"}) for j in range(n - 1)}
    layout = QubitLayout(nq, {j: j for j in range(n)}, {"b": n})
    return _from_transfer_images(EncodingName.KW_DUAL, lattice, layout, parity, transfers,
                                 {"weight_one": "west-pointing transfers"})


def build_encoding(name: EncodingName | str, lattice: Lattice) -> Encoding:
    """Dispatch by name for a given lattice (1D encodings need ``height == 1``)."""
    name = EncodingName(name)
    if name == EncodingName.JW:
        return jw_encode_lattice(lattice)
    if name == EncodingName.VC:
        return vc_encode(lattice)
    if name == EncodingName.DK:
        return dk_encode(lattice)
    if name == EncodingName.GSE:
        return gse_encode(lattice)
    if lattice.height != 1:
        raise ValueError(f"{name.value} is a 1D encoding; use a chain lattice")
    if name == EncodingName.KW_DUAL:
        if lattice.periodic:
            raise ValueError("KW dual is implemented for open chains only")
        return kw_dual_encode(lattice.width)
    return encode_1d_variant(name, lattice.width, lattice.boundary)


# -- validation ----------------------------------------------------------------------

@dataclass
class EncodingReport:
    encoding: str
    checked_pairs: int = 0
    violations: list[tuple[str, str, bool, bool]] = field(default_factory=list)
    product_failures: list[str] = field(default_factory=list)
    product_sign_flips: list[str] = field(default_factory=list)
    non_hermitian: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not (self.violations or self.product_failures or self.non_hermitian)

    def to_dict(self) -> dict:
        return {
            "encoding": self.encoding,
            "checked_pairs": self.checked_pairs,
            "ok": self.ok,
            "violations": [{"a": a, "b": b, "majorana_commute": m, "pauli_commute": p}
                           for a, b, m, p in self.violations],
            "product_failures": self.product_failures,
            "product_sign_flips": self.product_sign_flips,
            "non_hermitian": self.non_hermitian,
        }


def validate_encoding(enc: Encoding, lattice: Lattice | None = None) -> EncodingReport:
    """Exhaustive pairwise comparison of Majorana and Pauli commutation.

    Also checks hermiticity of every image and ``T_jk = -V_j V_k T_kj``
    letter-for-letter; a mismatch only in sign is listed separately and does
    not fail the report.
    """
    lattice = lattice or enc.lattice
    report = EncodingReport(enc.name.value)
    terms = list(iter_terms(lattice, include_edges=True))
    images = [enc.image(t) for t in terms]
    for t, p in zip(terms, images):
        if not p.is_hermitian:
            report.non_hermitian.append(f"{t.name}: {p}")
    for (a, pa), (b, pb) in combinations(zip(terms, images), 2):
        report.checked_pairs += 1
        m, q = majorana_commutes(a.monomial, b.monomial), pa.commutes(pb)
        if m != q:
            report.violations.append((a.name, b.name, m, q))
    for e in lattice.directed_edges():
        j, k = e.source, e.target
        lhs = enc.transfer(j, k)
        rhs = -(enc.parity_image[j] * enc.parity_image[k] * enc.transfer(k, j))
        if (lhs.x, lhs.z) != (rhs.x, rhs.z):
            report.product_failures.append(f"T({j},{k})")
        elif lhs.phase != rhs.phase:
            report.product_sign_flips.append(f"T({j},{k})")
    return report
