"""Hexagonal lattices and their iterated clique-inserted descendants.

The torus is the brick-wall quotient of the honeycomb: vertex ``(i, j, s)``
with ``0 <= i <= n``, ``0 <= j <= m`` and sublattice ``s in {0, 1}``.
Wrap edges crossing the ``i`` boundary are the *a*-edges (one per ``j``,
``m + 1`` of them); wrap edges crossing the ``j`` boundary are the
*b*-edges (``n + 1`` of them).  Cylinder drops the b-edges, free drops
both, and for k >= 1 the dropped edges are the images of the torus wrap
edges carried through every clique-insertion.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal

import numpy as np

from .errors import ValidationError
from .graph import Edge, Graph, build_graph, clique_insert
from .spectral import Spectrum

Boundary = Literal["torus", "cylinder", "free"]
BOUNDARIES: tuple[str, ...] = ("torus", "cylinder", "free")

LATTICE_NAMES = {0: "hexagonal", 1: "3-12-12", 2: "3-6-24"}


@dataclass(frozen=True)
class LatticeSpec:
    m: int
    n: int
    boundary: Boundary = "torus"
    k: int = 0
    base: str = "hexagonal"

    def __post_init__(self):
        if self.base != "hexagonal":
            raise ValidationError(f"unsupported base lattice {self.base!r}")
        if self.boundary not in BOUNDARIES:
            raise ValidationError(f"boundary must be one of {BOUNDARIES}, got {self.boundary!r}")
        lo = 1 if self.boundary == "free" else 2
        if self.m < lo or self.n < lo:
            raise ValidationError(
                f"{self.boundary} lattice needs m, n >= {lo}, got m={self.m}, n={self.n}"
            )
        if self.k < 0:
            raise ValidationError(f"clique-insert depth must be >= 0, got {self.k}")

    @property
    def cells(self) -> int:
        return (self.m + 1) * (self.n + 1)

    @property
    def vertex_count(self) -> int:
        return 2 * self.cells * 3**self.k

    def header(self) -> str:
        return f"lattice {LATTICE_NAMES.get(self.k, f'C^{self.k}(hexagonal)')} m={self.m} n={self.n} boundary={self.boundary} k={self.k}"


@dataclass(frozen=True)
class LatticeBuild:
    spec: LatticeSpec
    graph: Graph
    boundary_a_edges: tuple[Edge, ...]
    boundary_b_edges: tuple[Edge, ...]


def _hex_vertex(i: int, j: int, s: int, m: int) -> int:
    return 2 * (i * (m + 1) + j) + s


def _hex_torus(m: int, n: int) -> tuple[Graph, list[Edge], list[Edge]]:
    edges: list[Edge] = []
    a_wrap: list[Edge] = []
    b_wrap: list[Edge] = []
    for i in range(n + 1):
        for j in range(m + 1):
            u0 = _hex_vertex(i, j, 0, m)
            u1 = _hex_vertex(i, j, 1, m)
            edges.append((u0, u1))
            up = (u1, _hex_vertex(i, (j + 1) % (m + 1), 0, m))
            right = (u1, _hex_vertex((i + 1) % (n + 1), j, 0, m))
            edges.extend((up, right))
            if j == m:
                b_wrap.append(up)
            if i == n:
                a_wrap.append(right)
    g = build_graph(2 * (m + 1) * (n + 1), edges)
    norm = lambda e: (min(e), max(e))  # noqa: E731
    return g, [norm(e) for e in a_wrap], [norm(e) for e in b_wrap]


def _finish(spec: LatticeSpec, g: Graph, a: list[Edge], b: list[Edge]) -> LatticeBuild:
    if spec.boundary == "cylinder":
        g = g.remove_edges(b)
    elif spec.boundary == "free":
        g = g.remove_edges(a + b)
    return LatticeBuild(spec, g, tuple(a), tuple(b))


def build_hex_lattice(m: int, n: int, boundary: Boundary = "torus") -> LatticeBuild:
    return build_iterated_lattice(LatticeSpec(m, n, boundary, 0))


def build_iterated_lattice(spec: LatticeSpec) -> LatticeBuild:
    """Torus H(n, m), clique-inserted ``spec.k`` times, then boundary deletions."""
    # a 1-wide torus (free boundary only) is still a simple graph, so the
    # deletion route works for every accepted spec
    g, a, b = _hex_torus(spec.m, spec.n)
    for _ in range(spec.k):
        index = g.edge_index
        a_idx = [index[e] for e in a]
        b_idx = [index[e] for e in b]
        g, image = clique_insert(g)
        a = [g.edges[image[i]] for i in a_idx]
        b = [g.edges[image[i]] for i in b_idx]
    return _finish(spec, g, a, b)


def hex_torus_eigenvalues(m: int, n: int) -> np.ndarray:
    """Unsorted +/- sqrt(3 + 2cos x + 2cos y + 2cos(x+y)) over the torus momenta."""
    x = 2 * np.pi * np.arange(n + 1) / (n + 1)
    y = 2 * np.pi * np.arange(m + 1) / (m + 1)
    xx, yy = np.meshgrid(x, y, indexing="ij")
    rad = 3 + 2 * np.cos(xx) + 2 * np.cos(yy) + 2 * np.cos(xx + yy)
    root = np.sqrt(np.clip(rad, 0.0, None)).ravel()
    return np.concatenate([root, -root])


def hex_torus_closed_form_spectrum(m: int, n: int) -> Spectrum:
    if m < 2 or n < 2:
        raise ValidationError(f"torus needs m, n >= 2, got m={m}, n={n}")
    vals = hex_torus_eigenvalues(m, n)
    return Spectrum(vals, "adjacency", len(vals))
