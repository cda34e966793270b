"""Bipartite graph states: builders, validation, JSON import/export.

A graph state lives on a bipartite graph whose vertices are split into a
black set B and a white set W. The adjacency matrix A has one row per B
vertex and one column per W vertex; entry (j, i) = 1 means B vertex j is
joined to W vertex i. Vertex numbering within each color class follows
position order (row-major for lattices), so constructions are reproducible.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property

from .gf2 import BitMatrix

__all__ = [
    "BipartiteGraphState",
    "path_graph",
    "grid_graph",
    "rhg_lattice",
    "edgeless_graph",
    "validate",
    "edges",
    "to_json",
    "from_json",
]


@dataclass(frozen=True)
class BipartiteGraphState:
    """Graph state data: B/W sizes, n_b x n_w adjacency, optional labels."""

    n_b: int
    n_w: int
    adjacency: BitMatrix
    labels: tuple[str, ...] | None = None

    def __post_init__(self) -> None:
        if self.n_b < 0 or self.n_w < 0:
            raise ValueError("negative vertex count")
        if self.adjacency.n_rows != self.n_b or self.adjacency.n_cols != self.n_w:
            raise ValueError(
                f"adjacency is {self.adjacency.n_rows}x{self.adjacency.n_cols}, "
                f"declared n_b={self.n_b}, n_w={self.n_w}"
            )
        if self.labels is not None and len(self.labels) != self.n_b + self.n_w:
            raise ValueError("label count does not match vertex count")

    @property
    def n(self) -> int:
        return self.n_b + self.n_w

    @cached_property
    def adjacency_t(self) -> BitMatrix:
        return self.adjacency.transpose()


def path_graph(n: int) -> BipartiteGraphState:
    """Linear chain on n vertices, odd positions (1-indexed) black."""
    if n < 1:
        raise ValueError("path needs at least one vertex")
    n_b = (n + 1) // 2
    n_w = n // 2
    rows = [0] * n_b
    for pos in range(n - 1):
        # Edge between positions pos and pos+1; the even 0-indexed one is black.
        if pos % 2 == 0:
            rows[pos // 2] |= 1 << (pos // 2)
        else:
            rows[(pos + 1) // 2] |= 1 << (pos // 2)
    return BipartiteGraphState(n_b, n_w, BitMatrix(n_b, n_w, tuple(rows)))


def grid_graph(w: int, h: int) -> BipartiteGraphState:
    """w x h square lattice with checkerboard bipartition ((row+col) even -> B)."""
    if w < 1 or h < 1:
        raise ValueError("grid dimensions must be positive")
    b_index: dict[tuple[int, int], int] = {}
    w_index: dict[tuple[int, int], int] = {}
    for r in range(h):
        for c in range(w):
            if (r + c) % 2 == 0:
                b_index[(r, c)] = len(b_index)
            else:
                w_index[(r, c)] = len(w_index)
    rows = [0] * len(b_index)
    for (r, c), j in b_index.items():
        for rr, cc in ((r - 1, c), (r + 1, c), (r, c - 1), (r, c + 1)):
            if 0 <= rr < h and 0 <= cc < w:
                rows[j] |= 1 << w_index[(rr, cc)]
    n_b, n_w = len(b_index), len(w_index)
    return BipartiteGraphState(n_b, n_w, BitMatrix(n_b, n_w, tuple(rows)))


def _axes_other_than(a: int) -> tuple[int, ...]:
    return tuple(x for x in range(3) if x != a)


def rhg_lattice(lx: int, ly: int, lz: int) -> BipartiteGraphState:
    """Cluster state on the faces and edges of an lx x ly x lz cubic complex.

    Open boundaries. One qubit per face (black) and per edge (white); a face
    qubit is joined to the four edge qubits on its boundary. Faces and edges
    are numbered by sorted (axis, x, y, z) keys, where axis is the face normal
    or the edge direction.
    """
    if lx < 1 or ly < 1 or lz < 1:
        raise ValueError("lattice dimensions must be positive")
    dims = (lx, ly, lz)

    edge_keys = []
    for a in range(3):
        ranges = [range(dims[d] + 1) for d in range(3)]
        ranges[a] = range(dims[a])
        for x in ranges[0]:
            for y in ranges[1]:
                for z in ranges[2]:
                    edge_keys.append((a, x, y, z))
    edge_keys.sort()
    edge_index = {key: i for i, key in enumerate(edge_keys)}

    face_keys = []
    for a in range(3):
        ranges = [range(dims[d]) for d in range(3)]
        ranges[a] = range(dims[a] + 1)
        for x in ranges[0]:
            for y in ranges[1]:
                for z in ranges[2]:
                    face_keys.append((a, x, y, z))
    face_keys.sort()

    rows = [0] * len(face_keys)
    for j, (a, x, y, z) in enumerate(face_keys):
        t1, t2 = _axes_other_than(a)
        origin = (x, y, z)
        for direction, shift_axis in ((t1, t2), (t2, t1)):
            for shift in (0, 1):
                corner = list(origin)
                corner[shift_axis] += shift
                rows[j] |= 1 << edge_index[(direction, *corner)]
    n_b, n_w = len(face_keys), len(edge_keys)
    labels = tuple(f"face{key}" for key in face_keys) + tuple(
        f"edge{key}" for key in edge_keys
    )
    return BipartiteGraphState(n_b, n_w, BitMatrix(n_b, n_w, tuple(rows)), labels)


def edgeless_graph(n: int) -> BipartiteGraphState:
    """n isolated vertices with the same alternating coloring as path_graph."""
    if n < 1:
        raise ValueError("need at least one vertex")
    n_b = (n + 1) // 2
    n_w = n // 2
    return BipartiteGraphState(n_b, n_w, BitMatrix.zeros(n_b, n_w))


def validate(g: BipartiteGraphState) -> list[str]:
    """Check dimension consistency; return notes about isolated vertices.

    Isolated vertices are allowed, so the return value is informational. A
    malformed adjacency raises ValueError.
    """
    if g.adjacency.n_rows != g.n_b or g.adjacency.n_cols != g.n_w:
        raise ValueError("adjacency dimensions do not match declared sizes")
    notes = []
    for j in range(g.n_b):
        if g.adjacency.rows[j] == 0:
            notes.append(f"isolated B vertex {j}")
    col_union = 0
    for r in g.adjacency.rows:
        col_union |= r
    for i in range(g.n_w):
        if not (col_union >> i) & 1:
            notes.append(f"isolated W vertex {i}")
    return notes


def edges(g: BipartiteGraphState) -> list[tuple[int, int]]:
    """Sorted (B index, W index) pairs."""
    out = []
    for j in range(g.n_b):
        row = g.adjacency.rows[j]
        while row:
            low = row & -row
            out.append((j, low.bit_length() - 1))
            row ^= low
    return out


def to_json(g: BipartiteGraphState) -> str:
    return json.dumps({"n_b": g.n_b, "n_w": g.n_w, "edges": edges(g)})


def from_json(text: str) -> BipartiteGraphState:
    doc = json.loads(text)
    try:
        n_b = int(doc["n_b"])
        n_w = int(doc["n_w"])
        edge_list = doc["edges"]
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed graph document: {exc}") from exc
    rows = [0] * n_b
    for item in edge_list:
        j, i = int(item[0]), int(item[1])
        if not (0 <= j < n_b and 0 <= i < n_w):
            raise ValueError(f"edge ({j}, {i}) out of range")
        rows[j] |= 1 << i
    return BipartiteGraphState(n_b, n_w, BitMatrix(n_b, n_w, tuple(rows)))
