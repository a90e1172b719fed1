"""Exact algebra of Majorana monomials and the vertex/edge/transfer operators.

Indices are 0-based: site ``j`` owns ``gamma_{2j}`` (= c_j + c_j^dag) and
``gamma_{2j+1}`` (= -i(c_j - c_j^dag)).  In this indexing

    V_j  = -i gamma_{2j} gamma_{2j+1}           = 1 - 2 n_j
    E_jk = -i gamma_{2j} gamma_{2k}             = -E_kj
    T_jk = (i/2) gamma_{2j+1} gamma_{2k}        = (i/2) V_j E_jk

so ``H = J * sum over directed edges of T_jk`` is the hopping Hamiltonian
``-J sum (c_j^dag c_k + h.c.)``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from itertools import combinations
from typing import Iterable, Sequence

from .lattice import Lattice


def _popcount(v: int) -> int:
    return bin(v).count("1")


@dataclass(frozen=True)
class MajoranaMonomial:
    """``i**phase * gamma_{a_1} ... gamma_{a_m}`` with ``a_1 < ... < a_m``.

    ``bits`` is the index set as a bitmask, ``n_modes`` the number of
    fermionic modes (so indices run over ``0..2*n_modes-1``).
    """

    n_modes: int
    bits: int = 0
    phase: int = 0

    def __post_init__(self):
        if self.bits >> (2 * self.n_modes):
            raise ValueError("Majorana index out of range")
        object.__setattr__(self, "phase", self.phase % 4)

    @classmethod
    def from_indices(cls, n_modes: int, indices: Sequence[int], phase: int = 0) -> "MajoranaMonomial":
        """Product of the generators in the given (arbitrary) order."""
        out = cls(n_modes, 0, phase)
        for a in indices:
            if not 0 <= a < 2 * n_modes:
                raise ValueError(f"Majorana index {a} out of range")
            out = majorana_mul(out, cls(n_modes, 1 << a))
        return out

    @property
    def indices(self) -> tuple[int, ...]:
        return tuple(a for a in range(2 * self.n_modes) if self.bits >> a & 1)

    @property
    def degree(self) -> int:
        return _popcount(self.bits)

    @property
    def is_identity(self) -> bool:
        return self.bits == 0

    @property
    def is_hermitian(self) -> bool:
        # (g_1...g_m)^dag = (-1)^{m(m-1)/2} g_1...g_m
        m = self.degree
        return (self.phase - m * (m - 1) // 2) % 2 == 0

    def __mul__(self, other: "MajoranaMonomial") -> "MajoranaMonomial":
        return majorana_mul(self, other)

    def __str__(self) -> str:
        head = ("", "i·", "-", "-i·")[self.phase]
        body = "·".join(f"g{a}" for a in self.indices) or "I"
        return head + body


def _reorder_sign(a_bits: int, b_bits: int) -> int:
    """Transpositions needed to sort ``gamma_A gamma_B``: pairs a in A, b in B with a > b."""
    count = 0
    b = b_bits
    while b:
        low = b & -b
        # elements of A strictly above this b
        count += _popcount(a_bits & ~((low << 1) - 1))
        b ^= low
    return count


def majorana_mul(a: MajoranaMonomial, b: MajoranaMonomial) -> MajoranaMonomial:
    if a.n_modes != b.n_modes:
        raise ValueError(f"mode count mismatch: {a.n_modes} vs {b.n_modes}")
    swaps = _reorder_sign(a.bits, b.bits)
    # shared generators square to the identity after sorting
    return MajoranaMonomial(a.n_modes, a.bits ^ b.bits, a.phase + b.phase + 2 * swaps)


def majorana_commutes(a: MajoranaMonomial, b: MajoranaMonomial) -> bool:
    if a.n_modes != b.n_modes:
        raise ValueError(f"mode count mismatch: {a.n_modes} vs {b.n_modes}")
    return (a.degree * b.degree + _popcount(a.bits & b.bits)) % 2 == 0


class TermKind(str, Enum):
    VERTEX = "V"
    EDGE = "E"
    TRANSFER = "T"


@dataclass(frozen=True)
class FermionicTerm:
    """``coefficient * monomial`` tagged with the operator it stands for."""

    kind: TermKind
    sites: tuple[int, ...]
    monomial: MajoranaMonomial
    coefficient: float = 1.0

    @property
    def name(self) -> str:
        return f"{self.kind.value}{''.join(map(str, self.sites))}" if max(self.sites, default=0) < 10 \
            else f"{self.kind.value}({','.join(map(str, self.sites))})"


def vertex_op(j: int, n_modes: int) -> FermionicTerm:
    mono = MajoranaMonomial.from_indices(n_modes, [2 * j, 2 * j + 1], phase=3)
    return FermionicTerm(TermKind.VERTEX, (j,), mono)


def edge_op(j: int, k: int, n_modes: int) -> FermionicTerm:
    if j == k:
        raise ValueError("edge operator needs two distinct sites")
    mono = MajoranaMonomial.from_indices(n_modes, [2 * j, 2 * k], phase=3)
    return FermionicTerm(TermKind.EDGE, (j, k), mono)


def transfer_op(j: int, k: int, n_modes: int) -> FermionicTerm:
    """``T_jk = (1/2) * (i gamma_{2j+1} gamma_{2k})``; the 1/2 lives in ``coefficient``."""
    if j == k:
        raise ValueError("transfer operator needs two distinct sites")
    mono = MajoranaMonomial.from_indices(n_modes, [2 * j + 1, 2 * k], phase=1)
    return FermionicTerm(TermKind.TRANSFER, (j, k), mono, 0.5)


def _end_roles(term: FermionicTerm) -> dict[int, str]:
    if term.kind == TermKind.VERTEX:
        return {term.sites[0]: "V"}
    if term.kind == TermKind.EDGE:
        return {s: "head" for s in term.sites}
    j, k = term.sites
    return {j: "tail", k: "head"}


def expected_commutation(a: FermionicTerm, b: FermionicTerm) -> bool:
    """Commutation predicted by the flow/clash index rule (True = commute).

    Transfer operators are arrows tail->head, edge operators double-headed
    arrows, vertex operators clash with everything at their site except
    other vertex operators.  Two terms anticommute iff they clash at an
    odd number of shared sites.
    """
    ra, rb = _end_roles(a), _end_roles(b)
    clashes = 0
    for s in ra.keys() & rb.keys():
        x, y = ra[s], rb[s]
        if x == "V" and y == "V":
            continue
        if x == "V" or y == "V" or x == y:
            clashes += 1
    return clashes % 2 == 0


@dataclass
class RelationReport:
    checked: int = 0
    violations: list[tuple[str, str, bool]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def check_mixed_relations(terms: Sequence[FermionicTerm]) -> RelationReport:
    """Pairwise check that monomial commutation matches the index rule."""
    report = RelationReport()
    for a, b in combinations(terms, 2):
        actual = majorana_commutes(a.monomial, b.monomial)
        report.checked += 1
        if actual != expected_commutation(a, b):
            report.violations.append((a.name, b.name, actual))
    return report


def build_hopping_hamiltonian(lattice: Lattice, J: float = 1.0) -> list[tuple[FermionicTerm, float]]:
    """``J * T_jk`` for every directed edge, in ``directed_edges`` order."""
    n = lattice.n_sites
    return [(transfer_op(e.source, e.target, n), J) for e in lattice.directed_edges()]


def loop_identity(cycle: Sequence[int], n_modes: int) -> tuple[MajoranaMonomial, int]:
    """For a directed cycle j0->j1->...->j0 return ``(product of T monomials, k)``.

    The product of the transfer monomials around the loop equals
    ``i**k * prod_j V_j`` (vertex monomials multiplied in cycle order).
    """
    prod = MajoranaMonomial(n_modes)
    for a, b in zip(cycle, list(cycle[1:]) + [cycle[0]]):
        prod = prod * transfer_op(a, b, n_modes).monomial
    vprod = MajoranaMonomial(n_modes)
    for j in cycle:
        vprod = vprod * vertex_op(j, n_modes).monomial
    if prod.bits != vprod.bits:
        raise ValueError("cycle does not close on the vertex operators")
    return prod, (prod.phase - vprod.phase) % 4


def iter_terms(lattice: Lattice, include_edges: bool = False) -> Iterable[FermionicTerm]:
    n = lattice.n_sites
    for j in range(n):
        yield vertex_op(j, n)
    for e in lattice.directed_edges():
        yield transfer_op(e.source, e.target, n)
    if include_edges:
        for j, k in lattice.bonds():
            yield edge_op(j, k, n)
