"""Flow-set decompositions of the directed interaction graph."""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from itertools import combinations
from typing import TYPE_CHECKING, Iterable

from .lattice import DirectedEdge, Lattice, Orientation
from .majorana import majorana_commutes, transfer_op

if TYPE_CHECKING:
    from .encodings import Encoding


class Shape(str, Enum):
    PETAL = "Petal2Loop"
    PLAQUETTE = "Plaquette4Loop"
    LINE = "LineChain"
    LINE_LOOP = "LineLoop"


class Strategy(str, Enum):
    LINE = "line"
    PLAQUETTE = "plaquette"
    PETAL = "petal"


@dataclass(frozen=True)
class ConnectedComponent:
    edges: tuple[DirectedEdge, ...]
    shape: Shape

    def __post_init__(self):
        for a, b in zip(self.edges, self.edges[1:]):
            if a.target != b.source:
                raise ValueError(f"edges {a} and {b} do not chain head to tail")

    @property
    def is_loop(self) -> bool:
        return len(self.edges) > 1 and self.edges[-1].target == self.edges[0].source

    @property
    def sites(self) -> tuple[int, ...]:
        out = [self.edges[0].source] if self.edges else []
        for e in self.edges:
            if e.target not in out:
                out.append(e.target)
        return tuple(out)

    def __len__(self) -> int:
        return len(self.edges)

    def __str__(self) -> str:
        return "->".join(map(str, self.sites + ((self.sites[0],) if self.is_loop else ())))


@dataclass(frozen=True)
class FlowSet:
    label: str
    components: tuple[ConnectedComponent, ...] = ()

    def edges(self) -> list[DirectedEdge]:
        return [e for c in self.components for e in c.edges]

    def __len__(self) -> int:
        return sum(len(c) for c in self.components)


# -- constructions -------------------------------------------------------------

def _loop(lattice: Lattice, sites: Iterable[int], shape: Shape) -> ConnectedComponent:
    """Directed loop through ``sites`` rotated to start at the smallest index."""
    sites = list(sites)
    i = sites.index(min(sites))
    sites = sites[i:] + sites[:i]
    edges = tuple(lattice.edge(a, b) for a, b in zip(sites, sites[1:] + sites[:1]))
    return ConnectedComponent(edges, shape)


def _petal(lattice: Lattice, j: int, k: int) -> ConnectedComponent:
    return ConnectedComponent((lattice.edge(j, k), lattice.edge(k, j)), Shape.PETAL)


def petal_flow_sets(lattice: Lattice) -> list[FlowSet]:
    """Size-2 loops on bonds, four sets: horizontal/vertical by parity of the west/south site."""
    if lattice.periodic and ((lattice.width > 1 and lattice.width % 2) or (lattice.height > 1 and lattice.height % 2)):
        raise ValueError("periodic petal sets need even extents along every bonded axis")
    groups: dict[str, list[ConnectedComponent]] = {"H-even": [], "H-odd": [], "V-even": [], "V-odd": []}
    for y in range(lattice.height):
        for x in range(lattice.width):
            j = lattice.index(x, y)
            east = lattice.neighbor(j, Orientation.EAST)
            if east is not None and east != j:
                groups["H-even" if x % 2 == 0 else "H-odd"].append(_petal(lattice, j, east))
    for x in range(lattice.width):
        for y in range(lattice.height):
            j = lattice.index(x, y)
            north = lattice.neighbor(j, Orientation.NORTH)
            if north is not None and north != j:
                groups["V-even" if y % 2 == 0 else "V-odd"].append(_petal(lattice, j, north))
    return [FlowSet(label, tuple(comps)) for label, comps in groups.items()]


def plaquette_flow_sets(lattice: Lattice) -> list[FlowSet]:
    """Disjoint directed 4-loops on the plaquettes with even ``x + y``.

    Those plaquettes split into the (even, even) and (odd, odd) classes,
    each taken with both loop orientations.  On open lattices the bonds that
    border no such plaquette are added as petals to an (odd, odd) set.
    """
    if lattice.width % 2 or lattice.height % 2:
        raise ValueError("plaquette flow sets need even lattice dimensions")
    plaqs = [p for p in lattice.plaquettes() if (p[0] + p[1]) % 2 == 0]
    sets: dict[str, list[ConnectedComponent]] = {"PQ-even-cw": [], "PQ-even-ccw": [],
                                                 "PQ-odd-cw": [], "PQ-odd-ccw": []}
    covered: set[tuple[int, int]] = set()
    for (x, y) in plaqs:
        corners = lattice.plaquette_sites(x, y)
        cls = "even" if x % 2 == 0 else "odd"
        sets[f"PQ-{cls}-cw"].append(_loop(lattice, corners, Shape.PLAQUETTE))
        sets[f"PQ-{cls}-ccw"].append(_loop(lattice, corners[::-1], Shape.PLAQUETTE))
        for a, b in zip(corners, corners[1:] + corners[:1]):
            covered.add((min(a, b), max(a, b)))
    leftovers = [b for b in lattice.bonds() if b not in covered]
    for target in ("PQ-odd-cw", "PQ-odd-ccw", "PQ-even-cw", "PQ-even-ccw"):
        used = {s for c in sets[target] for s in c.sites}
        for b in list(leftovers):
            if used.isdisjoint(b):
                sets[target].append(_petal(lattice, *b))
                used.update(b)
                leftovers.remove(b)
    if leftovers:
        raise ValueError(f"could not place boundary bonds {leftovers}")
    return [FlowSet(label, tuple(comps)) for label, comps in sets.items()]


def line_flow_sets(lattice: Lattice) -> list[FlowSet]:
    """Four sets EA, WE, SO, NO; one chain (or ring) per row or column."""
    out: dict[str, list[ConnectedComponent]] = {"EA": [], "WE": [], "SO": [], "NO": []}
    W, H = lattice.width, lattice.height
    for label, o, lines in (
        ("EA", Orientation.EAST, [[lattice.index(x, y) for x in range(W)] for y in range(H)]),
        ("WE", Orientation.WEST, [[lattice.index(x, y) for x in reversed(range(W))] for y in range(H)]),
        ("SO", Orientation.SOUTH, [[lattice.index(x, y) for y in reversed(range(H))] for x in range(W)]),
        ("NO", Orientation.NORTH, [[lattice.index(x, y) for y in range(H)] for x in range(W)]),
    ):
        for sites in lines:
            if len(sites) < 2:
                continue
            if lattice.periodic:
                out[label].append(_loop(lattice, sites, Shape.LINE_LOOP))
            else:
                edges = tuple(lattice.edge(a, b) for a, b in zip(sites, sites[1:]))
                out[label].append(ConnectedComponent(edges, Shape.LINE))
    return [FlowSet(label, tuple(comps)) for label, comps in out.items()]


def strategy_flow_sets(lattice: Lattice, strategy: Strategy | str) -> list[FlowSet]:
    strategy = Strategy(strategy)
    return {Strategy.LINE: line_flow_sets, Strategy.PLAQUETTE: plaquette_flow_sets,
            Strategy.PETAL: petal_flow_sets}[strategy](lattice)


# -- certification ------------------------------------------------------------------

@dataclass
class FlowReport:
    label: str
    violations: list[tuple[str, str]] = field(default_factory=list)
    dependent_components: list[int] = field(default_factory=list)
    site_overlaps: list[tuple[int, int]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not (self.violations or self.dependent_components or self.site_overlaps)


def _gf2_rank(vectors: list[int]) -> int:
    rank = 0
    rows = list(vectors)
    while rows:
        pivot = rows.pop()
        if not pivot:
            continue
        rank += 1
        top = pivot.bit_length() - 1
        rows = [r ^ pivot if r >> top & 1 else r for r in rows]
    return rank


def verify_flow_property(fs: FlowSet, n_sites: int | None = None) -> FlowReport:
    """Pairwise commutation of all transfer operators in the set, plus component checks."""
    report = FlowReport(fs.label)
    edges = fs.edges()
    if not edges:
        return report
    n = n_sites or 1 + max(max(e.source, e.target) for e in edges)
    ops = [(e, transfer_op(e.source, e.target, n).monomial) for e in edges]
    for (ea, a), (eb, b) in combinations(ops, 2):
        if not majorana_commutes(a, b):
            report.violations.append((str(ea), str(eb)))
    for i, comp in enumerate(fs.components):
        bits = [transfer_op(e.source, e.target, n).monomial.bits for e in comp.edges]
        if _gf2_rank(bits) != len(bits):
            report.dependent_components.append(i)
    for i, j in combinations(range(len(fs.components)), 2):
        if set(fs.components[i].sites) & set(fs.components[j].sites):
            report.site_overlaps.append((i, j))
    return report


@dataclass
class OverlapReport:
    label: str
    overlaps: list[tuple[int, int, tuple[int, ...]]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.overlaps

    def describe(self, enc: "Encoding | None" = None) -> str:
        if self.ok:
            return f"{self.label}: components act on disjoint qubits"
        parts = []
        for i, j, qs in self.overlaps:
            names = [enc.layout.name_of(q) for q in qs] if enc else list(map(str, qs))
            parts.append(f"components {i} and {j} share {', '.join(names)}")
        return f"{self.label}: overlapping supports ({'; '.join(parts)})"


def verify_nonoverlap_after_encoding(fs: FlowSet, enc: "Encoding") -> OverlapReport:
    report = OverlapReport(fs.label)
    supports = [enc.edge_support(c.edges) for c in fs.components]
    for i, j in combinations(range(len(supports)), 2):
        shared = supports[i] & supports[j]
        if shared:
            report.overlaps.append((i, j, tuple(sorted(shared))))
    return report


def check_coverage(lattice: Lattice, sets: list[FlowSet]) -> bool:
    """Every directed edge appears in exactly one set."""
    seen = [tuple(e) for fs in sets for e in fs.edges()]
    return sorted(seen) == sorted(tuple(e) for e in lattice.directed_edges())


def flow_sets_to_dict(lattice: Lattice, sets: list[FlowSet]) -> dict:
    assignment = {}
    for fs in sets:
        for ci, comp in enumerate(fs.components):
            for e in comp.edges:
                assignment[f"{e.source},{e.target}"] = {"set": fs.label, "component": ci}
    return {"lattice": str(lattice), "sets": [fs.label for fs in sets],
            "assignment": dict(sorted(assignment.items(), key=lambda kv: tuple(map(int, kv[0].split(",")))))}
