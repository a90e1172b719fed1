"""Signed Pauli strings in symplectic form.

A string is stored as ``i**phase * prod_q X_q**x_q Z_q**z_q`` with the
per-qubit factor ordered X before Z.  With the convention ``Y = iXZ`` a
qubit carrying both bits is a Y up to a factor of ``-i``; rendering and
parsing take care of that bookkeeping so callers can think in letters.

Bit vectors are Python ints (bit ``q`` is qubit ``q``), which keeps the
algebra exact and fast enough for the lattice sizes used here.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping

_PHASE_TEXT = {0: "+", 1: "+i", 2: "-", 3: "-i"}


def _popcount(v: int) -> int:
    return bin(v).count("1")


@dataclass(frozen=True)
class PauliString:
    n_qubits: int
    x: int = 0
    z: int = 0
    phase: int = 0

    def __post_init__(self):
        if self.n_qubits < 1:
            raise ValueError("n_qubits must be positive")
        mask = (1 << self.n_qubits) - 1
        if self.x & ~mask or self.z & ~mask:
            raise ValueError("bit vector exceeds n_qubits")
        object.__setattr__(self, "phase", self.phase % 4)

    # -- construction -------------------------------------------------
    @classmethod
    def identity(cls, n_qubits: int) -> "PauliString":
        return cls(n_qubits)

    @classmethod
    def from_letters(cls, n_qubits: int, letters: Mapping[int, str], sign: int = 1) -> "PauliString":
        """Build ``sign * prod_q letters[q]`` where letters are I/X/Y/Z."""
        x = z = 0
        n_y = 0
        for q, c in letters.items():
            if not 0 <= q < n_qubits:
                raise ValueError(f"qubit {q} out of range")
            c = c.upper()
            if c == "I":
                continue
            if c in "XY":
                x |= 1 << q
            if c in "ZY":
                z |= 1 << q
            if c == "Y":
                n_y += 1
            if c not in "XYZ":
                raise ValueError(f"bad Pauli letter {c!r}")
        sign_phase = {1: 0, 1j: 1, -1: 2, -1j: 3}[sign]
        return cls(n_qubits, x, z, sign_phase + n_y)

    @classmethod
    def from_label(cls, label: str) -> "PauliString":
        """Parse text like ``"+XIZY"``, ``"-iXX"`` or ``"YZ"`` (qubit 0 first)."""
        for prefix, sign in (("+i", 1j), ("-i", -1j), ("+", 1), ("-", -1)):
            if label.startswith(prefix) and (prefix[-1] != "i" or len(label) > len(prefix)):
                body = label[len(prefix):]
                break
        else:
            body, sign = label, 1
        if not body:
            raise ValueError("empty Pauli label")
        return cls.from_letters(len(body), dict(enumerate(body)), sign)

    # -- inspection ---------------------------------------------------
    @property
    def weight(self) -> int:
        return _popcount(self.x | self.z)

    @property
    def support(self) -> tuple[int, ...]:
        s = self.x | self.z
        return tuple(q for q in range(self.n_qubits) if s >> q & 1)

    def letter(self, q: int) -> str:
        return "IXZY"[(self.x >> q & 1) | (self.z >> q & 1) << 1]

    @property
    def sign(self) -> complex:
        """Coefficient in front of the letter string (one of 1, i, -1, -i)."""
        return (1, 1j, -1, -1j)[(self.phase - _popcount(self.x & self.z)) % 4]

    @property
    def is_hermitian(self) -> bool:
        return (self.phase - _popcount(self.x & self.z)) % 2 == 0

    @property
    def is_identity(self) -> bool:
        return self.x == 0 and self.z == 0

    def letters(self) -> str:
        return "".join(self.letter(q) for q in range(self.n_qubits))

    def __str__(self) -> str:
        return _PHASE_TEXT[(self.phase - _popcount(self.x & self.z)) % 4] + self.letters()

    def __repr__(self) -> str:
        return f"PauliString({str(self)!r})"

    # -- algebra ------------------------------------------------------
    def __mul__(self, other: "PauliString") -> "PauliString":
        return pauli_mul(self, other)

    def __neg__(self) -> "PauliString":
        return PauliString(self.n_qubits, self.x, self.z, self.phase + 2)

    def times_phase(self, k: int) -> "PauliString":
        """Multiply by ``i**k``."""
        return PauliString(self.n_qubits, self.x, self.z, self.phase + k)

    def unsigned(self) -> "PauliString":
        """Same letters with a ``+`` sign."""
        return PauliString(self.n_qubits, self.x, self.z, _popcount(self.x & self.z))

    def commutes(self, other: "PauliString") -> bool:
        return pauli_commutes(self, other)

    def restrict(self, qubits: Iterable[int]) -> dict[int, str]:
        return {q: self.letter(q) for q in qubits if self.letter(q) != "I"}


def _check_sizes(a: PauliString, b: PauliString) -> None:
    if a.n_qubits != b.n_qubits:
        raise ValueError(f"size mismatch: {a.n_qubits} vs {b.n_qubits} qubits")


def pauli_mul(a: PauliString, b: PauliString) -> PauliString:
    _check_sizes(a, b)
    # moving Z^{z_a} past X^{x_b} costs (-1)^{|z_a & x_b|}
    phase = a.phase + b.phase + 2 * _popcount(a.z & b.x)
    return PauliString(a.n_qubits, a.x ^ b.x, a.z ^ b.z, phase)


def pauli_commutes(a: PauliString, b: PauliString) -> bool:
    _check_sizes(a, b)
    return (_popcount(a.x & b.z) + _popcount(a.z & b.x)) % 2 == 0


def pauli_weight(a: PauliString) -> int:
    return a.weight


def pauli_product(paulis: Iterable[PauliString], n_qubits: int) -> PauliString:
    out = PauliString.identity(n_qubits)
    for p in paulis:
        out = out * p
    return out
