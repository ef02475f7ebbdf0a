"""Undirected simple graphs and the line / subdivision / clique-insert transforms.

Edges are stored as sorted ``(u, v)`` pairs with ``u < v`` and the edge
list itself is sorted, so edge ``i`` of a graph is well defined and every
provenance map in the package keys off that index.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from pathlib import Path
from typing import Iterable, Sequence, TextIO

import numpy as np

from .errors import (
    DuplicateEdgeError,
    EdgeListFormatError,
    NotRegularError,
    SelfLoopError,
    ValidationError,
    VertexRangeError,
)

Edge = tuple[int, int]


@dataclass(frozen=True)
class Graph:
    """Immutable undirected simple graph on vertices ``0..vertex_count-1``.

    Construct through :func:`build_graph`; the dataclass constructor assumes
    the edge tuple is already canonical.
    """

    vertex_count: int
    edges: tuple[Edge, ...]

    @cached_property
    def adjacency(self) -> tuple[tuple[int, ...], ...]:
        nbrs: list[list[int]] = [[] for _ in range(self.vertex_count)]
        for u, v in self.edges:
            nbrs[u].append(v)
            nbrs[v].append(u)
        return tuple(tuple(sorted(x)) for x in nbrs)

    @cached_property
    def incident_edges(self) -> tuple[tuple[int, ...], ...]:
        """Edge indices incident to each vertex, ascending."""
        inc: list[list[int]] = [[] for _ in range(self.vertex_count)]
        for i, (u, v) in enumerate(self.edges):
            inc[u].append(i)
            inc[v].append(i)
        return tuple(tuple(x) for x in inc)

    @cached_property
    def edge_index(self) -> dict[Edge, int]:
        return {e: i for i, e in enumerate(self.edges)}

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def degrees(self) -> list[int]:
        return [len(a) for a in self.adjacency]

    def has_edge(self, u: int, v: int) -> bool:
        return (min(u, v), max(u, v)) in self.edge_index

    def adjacency_matrix(self, dtype=float) -> np.ndarray:
        a = np.zeros((self.vertex_count, self.vertex_count), dtype=dtype)
        if self.edges:
            e = np.asarray(self.edges)
            a[e[:, 0], e[:, 1]] = 1
            a[e[:, 1], e[:, 0]] = 1
        return a

    def laplacian_matrix(self, dtype=float) -> np.ndarray:
        a = self.adjacency_matrix(dtype)
        return np.diag(a.sum(axis=1)) - a

    def remove_edges(self, edges: Iterable[Edge]) -> Graph:
        drop = {(min(u, v), max(u, v)) for u, v in edges}
        missing = drop - self.edge_index.keys()
        if missing:
            raise ValidationError(f"edges not in graph: {sorted(missing)[:5]}")
        return Graph(self.vertex_count, tuple(e for e in self.edges if e not in drop))


def build_graph(vertex_count: int, edges: Iterable[Sequence[int]]) -> Graph:
    """Validate an edge list and return the canonical :class:`Graph`."""
    if vertex_count < 0:
        raise ValidationError(f"vertex_count must be nonnegative, got {vertex_count}")
    seen: set[Edge] = set()
    for pair in edges:
        u, v = int(pair[0]), int(pair[1])
        if not (0 <= u < vertex_count and 0 <= v < vertex_count):
            raise VertexRangeError(f"edge ({u}, {v}) has an id outside 0..{vertex_count - 1}")
        if u == v:
            raise SelfLoopError(f"self-loop at vertex {u}")
        e = (u, v) if u < v else (v, u)
        if e in seen:
            raise DuplicateEdgeError(f"duplicate edge {e}")
        seen.add(e)
    return Graph(vertex_count, tuple(sorted(seen)))


def complete_graph(n: int) -> Graph:
    return build_graph(n, combinations(range(n), 2))


def cycle_graph(n: int) -> Graph:
    return build_graph(n, [(i, (i + 1) % n) for i in range(n)])


def path_graph(n: int) -> Graph:
    return build_graph(n, [(i, i + 1) for i in range(n - 1)])


def complete_bipartite_graph(a: int, b: int) -> Graph:
    return build_graph(a + b, [(i, a + j) for i in range(a) for j in range(b)])


def generalized_petersen_graph(n: int, k: int) -> Graph:
    """GP(n, k): outer n-cycle, inner star polygon {n/k}, spokes."""
    edges = set()
    for i in range(n):
        edges.add((i, (i + 1) % n))
        edges.add((i, n + i))
        a, b = n + i, n + (i + k) % n
        edges.add((min(a, b), max(a, b)))
    return build_graph(2 * n, {(min(u, v), max(u, v)) for u, v in edges})


def petersen_graph() -> Graph:
    return generalized_petersen_graph(5, 2)


def mobius_kantor_graph() -> Graph:
    return generalized_petersen_graph(8, 3)


def hypercube_graph(d: int) -> Graph:
    n = 1 << d
    return build_graph(n, [(v, v ^ (1 << b)) for v in range(n) for b in range(d) if v < v ^ (1 << b)])


def circulant_graph(n: int, jumps: Iterable[int]) -> Graph:
    edges = set()
    for i in range(n):
        for j in jumps:
            a, b = i, (i + j) % n
            if a != b:
                edges.add((min(a, b), max(a, b)))
    return build_graph(n, edges)


def disjoint_union(g: Graph, h: Graph) -> Graph:
    off = g.vertex_count
    return build_graph(off + h.vertex_count, list(g.edges) + [(u + off, v + off) for u, v in h.edges])


# ---------------------------------------------------------------------------
# transforms
# ---------------------------------------------------------------------------


def line_graph(g: Graph) -> Graph:
    """Vertex ``i`` of the result is edge ``i`` of ``g``."""
    edges = []
    for inc in g.incident_edges:
        edges.extend(combinations(inc, 2))
    return build_graph(g.edge_count, edges)


def subdivision(g: Graph) -> Graph:
    """Original vertices keep their ids; edge ``i`` becomes vertex ``n + i``."""
    n = g.vertex_count
    edges = []
    for i, (u, v) in enumerate(g.edges):
        edges.append((u, n + i))
        edges.append((v, n + i))
    return build_graph(n + g.edge_count, edges)


def _require_regular(g: Graph) -> int:
    degs = set(g.degrees())
    if len(degs) != 1:
        raise NotRegularError(f"graph is not regular (degrees {sorted(degs)})")
    r = degs.pop()
    if r < 3:
        raise NotRegularError(f"clique-inserting needs degree >= 3, got {r}")
    return r


def clique_insert(g: Graph) -> tuple[Graph, tuple[int, ...]]:
    """Replace every vertex of an r-regular graph by an r-clique.

    Returns the new graph and the edge image map: entry ``i`` is the index,
    in the new graph, of the edge bridging the two cliques that came from
    the endpoints of edge ``i`` of ``g``.

    The vertex ``(v, e)`` for each incident vertex/edge pair is numbered in
    ``(v, edge index)`` order, which makes the result identical (not merely
    isomorphic) to ``line_graph(subdivision(g))``.
    """
    _require_regular(g)
    slot: dict[tuple[int, int], int] = {}
    for v, inc in enumerate(g.incident_edges):
        for e in inc:
            slot[(v, e)] = len(slot)
    edges: list[Edge] = []
    for v, inc in enumerate(g.incident_edges):
        for e1, e2 in combinations(inc, 2):
            edges.append((slot[(v, e1)], slot[(v, e2)]))
    bridges = [(slot[(u, i)], slot[(v, i)]) for i, (u, v) in enumerate(g.edges)]
    result = build_graph(len(slot), edges + bridges)
    index = result.edge_index
    return result, tuple(index[(min(a, b), max(a, b))] for a, b in bridges)


def iterate_clique_insert(g: Graph, k: int) -> Graph:
    if k < 0:
        raise ValidationError(f"iteration depth must be >= 0, got {k}")
    _require_regular(g)
    for _ in range(k):
        g, _ = clique_insert(g)
    return g


# ---------------------------------------------------------------------------
# predicates
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GraphPredicates:
    regular_degree: int | None
    connected: bool
    two_connected: bool
    max_degree: int


def is_connected(g: Graph) -> bool:
    if g.vertex_count == 0:
        return True
    seen = [False] * g.vertex_count
    seen[0] = True
    queue = deque([0])
    count = 1
    adj = g.adjacency
    while queue:
        u = queue.popleft()
        for w in adj[u]:
            if not seen[w]:
                seen[w] = True
                count += 1
                queue.append(w)
    return count == g.vertex_count


def articulation_points(g: Graph) -> set[int]:
    """Iterative Hopcroft-Tarjan lowpoint search."""
    n = g.vertex_count
    adj = g.adjacency
    disc = [-1] * n
    low = [0] * n
    cut: set[int] = set()
    timer = 0
    for root in range(n):
        if disc[root] != -1:
            continue
        disc[root] = low[root] = timer
        timer += 1
        root_children = 0
        stack = [(root, -1, 0)]
        while stack:
            u, parent, i = stack[-1]
            if i < len(adj[u]):
                stack[-1] = (u, parent, i + 1)
                w = adj[u][i]
                if disc[w] == -1:
                    disc[w] = low[w] = timer
                    timer += 1
                    if u == root:
                        root_children += 1
                    stack.append((w, u, 0))
                elif w != parent:
                    low[u] = min(low[u], disc[w])
            else:
                stack.pop()
                if parent != -1:
                    low[parent] = min(low[parent], low[u])
                    if parent != root and low[u] >= disc[parent]:
                        cut.add(parent)
        if root_children > 1:
            cut.add(root)
    return cut


def is_bipartite(g: Graph) -> bool:
    color = [-1] * g.vertex_count
    adj = g.adjacency
    for s in range(g.vertex_count):
        if color[s] != -1:
            continue
        color[s] = 0
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for w in adj[u]:
                if color[w] == -1:
                    color[w] = 1 - color[u]
                    queue.append(w)
                elif color[w] == color[u]:
                    return False
    return True


def graph_predicates(g: Graph) -> GraphPredicates:
    degs = g.degrees()
    regular = degs[0] if degs and all(d == degs[0] for d in degs) else None
    connected = is_connected(g)
    two_connected = connected and g.vertex_count >= 3 and not articulation_points(g)
    return GraphPredicates(
        regular_degree=regular,
        connected=connected,
        two_connected=two_connected,
        max_degree=max(degs, default=0),
    )


# ---------------------------------------------------------------------------
# edge-list text format
# ---------------------------------------------------------------------------


def format_edge_list(g: Graph, header: Sequence[str] = ()) -> str:
    lines = [f"# {h}" for h in header]
    lines.append(f"{g.vertex_count} {g.edge_count}")
    lines.extend(f"{u} {v}" for u, v in g.edges)
    return "\n".join(lines) + "\n"


def write_edge_list(g: Graph, path: str | Path, header: Sequence[str] = ()) -> None:
    with open(path, "w", newline="\n") as fh:
        fh.write(format_edge_list(g, header))


def parse_edge_list(text: str | TextIO) -> Graph:
    if not isinstance(text, str):
        text = text.read()
    rows = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2:
            raise EdgeListFormatError(f"line {lineno}: expected two integers, got {raw!r}")
        try:
            rows.append((int(parts[0]), int(parts[1])))
        except ValueError:
            raise EdgeListFormatError(f"line {lineno}: non-integer token in {raw!r}") from None
    if not rows:
        raise EdgeListFormatError("missing 'n m' header line")
    (n, m), body = rows[0], rows[1:]
    if len(body) != m:
        raise EdgeListFormatError(f"header declares {m} edges but {len(body)} follow")
    return build_graph(n, body)


def read_edge_list(path: str | Path) -> Graph:
    with open(path) as fh:
        return parse_edge_list(fh.read())
