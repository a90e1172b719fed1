"""Square fermionic lattices with row-major site indexing."""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from functools import cached_property


class Boundary(str, Enum):
    OPEN = "open"
    PERIODIC = "periodic"


class Orientation(str, Enum):
    EAST = "E"
    WEST = "W"
    NORTH = "N"
    SOUTH = "S"

    @property
    def is_horizontal(self) -> bool:
        return self in (Orientation.EAST, Orientation.WEST)

    @property
    def reverse(self) -> "Orientation":
        return {Orientation.EAST: Orientation.WEST, Orientation.WEST: Orientation.EAST,
                Orientation.NORTH: Orientation.SOUTH, Orientation.SOUTH: Orientation.NORTH}[self]


@dataclass(frozen=True)
class DirectedEdge:
    source: int
    target: int
    orientation: Orientation

    def __iter__(self):
        return iter((self.source, self.target))

    @property
    def reversed(self) -> "DirectedEdge":
        return DirectedEdge(self.target, self.source, self.orientation.reverse)

    def __str__(self) -> str:
        return f"({self.source},{self.target})"


@dataclass(frozen=True)
class Lattice:
    """``width x height`` grid; site ``(x, y)`` has index ``y * width + x``.

    North is increasing ``y``, east is increasing ``x``.  A periodic
    lattice of height (or width) 1 is a ring: the extent-1 axis carries
    no bonds.
    """

    width: int
    height: int
    boundary: Boundary = Boundary.OPEN

    def __post_init__(self):
        if self.width < 1 or self.height < 1:
            raise ValueError("lattice dimensions must be positive")
        object.__setattr__(self, "boundary", Boundary(self.boundary))
        if self.boundary == Boundary.PERIODIC and (self.width == 2 or self.height == 2):
            raise ValueError("periodic lattices need both dimensions >= 3 to avoid doubled bonds")
        if self.boundary == Boundary.PERIODIC and self.width == 1 and self.height == 1:
            raise ValueError("a single periodic site has no bonds")

    @property
    def n_sites(self) -> int:
        return self.width * self.height

    @property
    def sites(self) -> range:
        return range(self.n_sites)

    @property
    def periodic(self) -> bool:
        return self.boundary == Boundary.PERIODIC

    def index(self, x: int, y: int) -> int:
        if self.periodic:
            x, y = x % self.width, y % self.height
        if not (0 <= x < self.width and 0 <= y < self.height):
            raise IndexError(f"site ({x}, {y}) outside the lattice")
        return y * self.width + x

    def coords(self, j: int) -> tuple[int, int]:
        return j % self.width, j // self.width

    def neighbor(self, j: int, orientation: Orientation) -> int | None:
        x, y = self.coords(j)
        dx, dy = {Orientation.EAST: (1, 0), Orientation.WEST: (-1, 0),
                  Orientation.NORTH: (0, 1), Orientation.SOUTH: (0, -1)}[orientation]
        x, y = x + dx, y + dy
        if not self.periodic and not (0 <= x < self.width and 0 <= y < self.height):
            return None
        return self.index(x, y)

    @cached_property
    def _directed(self) -> tuple[DirectedEdge, ...]:
        edges = []
        for j in self.sites:
            for o in Orientation:
                k = self.neighbor(j, o)
                if k is not None and k != j:
                    edges.append(DirectedEdge(j, k, o))
        return tuple(sorted(edges, key=lambda e: (e.source, e.target)))

    def directed_edges(self) -> list[DirectedEdge]:
        """Both orientations of every bond, sorted by (source, target)."""
        return list(self._directed)

    def bonds(self) -> list[tuple[int, int]]:
        """Undirected bonds as ``(j, k)`` with ``j < k``."""
        return sorted({(min(e.source, e.target), max(e.source, e.target)) for e in self._directed})

    def edge(self, j: int, k: int) -> DirectedEdge:
        for e in self._directed:
            if e.source == j and e.target == k:
                return e
        raise KeyError(f"({j},{k}) is not a lattice edge")

    def degree(self, j: int) -> int:
        return sum(1 for e in self._directed if e.source == j)

    def plaquettes(self) -> list[tuple[int, int]]:
        """Lower-left corners ``(x, y)`` of all elementary squares."""
        xs = range(self.width) if self.periodic else range(self.width - 1)
        ys = range(self.height) if self.periodic else range(self.height - 1)
        return [(x, y) for y in ys for x in xs]

    def plaquette_sites(self, x: int, y: int) -> tuple[int, int, int, int]:
        """Corners in the order SW, NW, NE, SE (a north-first loop)."""
        return (self.index(x, y), self.index(x, y + 1), self.index(x + 1, y + 1), self.index(x + 1, y))

    def __str__(self) -> str:
        return f"{self.width}x{self.height}-{self.boundary.value}"


def build_square_lattice(width: int, height: int, boundary: Boundary | str = Boundary.OPEN) -> Lattice:
    return Lattice(width, height, Boundary(boundary))


def directed_edges(lattice: Lattice) -> list[DirectedEdge]:
    return lattice.directed_edges()


def build_chain(length: int, boundary: Boundary | str = Boundary.OPEN) -> Lattice:
    """A 1D chain (``length x 1``); periodic chains are rings."""
    return Lattice(length, 1, Boundary(boundary))
