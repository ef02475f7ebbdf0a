"""Exact spanning-tree and perfect-matching counts, and the derived entropies."""

from __future__ import annotations

import math
import sys
from dataclasses import dataclass
from fractions import Fraction

from .errors import ValidationError
from .graph import Graph, graph_predicates, line_graph

LN2_OVER_3 = math.log(2) / 3


def bareiss_determinant(matrix: list[list[int]]) -> int:
    """Fraction-free Gaussian elimination; every intermediate is an exact integer."""
    a = [list(map(int, row)) for row in matrix]
    n = len(a)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = a[k][k]
        row_k = a[k]
        for i in range(k + 1, n):
            row_i = a[i]
            f = row_i[k]
            if f == 0:
                # (pivot * x - 0 * y) / prev
                for j in range(k + 1, n):
                    row_i[j] = row_i[j] * pivot // prev
            else:
                for j in range(k + 1, n):
                    row_i[j] = (row_i[j] * pivot - f * row_k[j]) // prev
            row_i[k] = 0
        prev = pivot
    return sign * a[n - 1][n - 1]


def count_spanning_trees(g: Graph) -> int:
    """Matrix-Tree count; 0 for a disconnected graph."""
    n = g.vertex_count
    if n < 1:
        raise ValidationError("spanning trees of the empty graph are undefined")
    if n == 1:
        return 1
    lap = [[0] * (n - 1) for _ in range(n - 1)]
    for v, nb in enumerate(g.adjacency[1:], start=1):
        lap[v - 1][v - 1] = len(nb)
        for w in nb:
            if w:
                lap[v - 1][w - 1] = -1
    return bareiss_determinant(lap)


def _iterate_exponent(r: int, k: int) -> Fraction:
    return Fraction(r - 2, 2) * (r**k - 1) / (r - 1)


def predict_spanning_trees_iterated(n_st: int, r: int, n: int, k: int) -> int:
    """Spanning trees of C^k(G) from N_ST(G), G r-regular on n vertices."""
    if r < 3:
        raise ValidationError(f"r must be >= 3, got {r}")
    if k < 0:
        raise ValidationError(f"k must be >= 0, got {k}")
    if n_st < 0:
        raise ValidationError("spanning-tree count must be nonnegative")
    if k == 0:
        return n_st
    ns = n * _iterate_exponent(r, k)
    if ns.denominator != 1:
        raise ValidationError(f"n*s = {ns} is not an integer for r={r}, n={n}, k={k}")
    lo, hi = int(ns) - k, int(ns) + k
    if lo < 0:
        raise ValidationError(f"exponent n*s - k = {lo} is negative for r={r}, n={n}, k={k}")
    return r**lo * (r + 2) ** hi * n_st


def tree_entropy_iterated(z_h: float, r: int, k: int) -> float:
    if r < 3:
        raise ValidationError(f"r must be >= 3, got {r}")
    if k < 0:
        raise ValidationError(f"k must be >= 0, got {k}")
    s = _iterate_exponent(r, k)
    return (z_h + float(s) * math.log(r * (r + 2))) / r**k


def tree_entropy_finite(g: Graph) -> float:
    """(1/|V|) ln N_ST(g)."""
    count = count_spanning_trees(g)
    if count == 0:
        raise ValidationError("graph has no spanning tree")
    return math.log(count) / g.vertex_count


def count_perfect_matchings(g: Graph) -> int:
    """Exact perfect-matching count by branching with a residual-set memo.

    Branches on the uncovered vertex with fewest uncovered neighbours (a
    zero there prunes immediately).  The memo keys are bitmasks of the
    uncovered vertices.  Intended for graphs up to a few dozen vertices,
    more for lattice-like graphs where the live frontier stays narrow.
    """
    n = g.vertex_count
    if n % 2:
        return 0
    if n == 0:
        return 1
    nbr_mask = [0] * n
    for u, v in g.edges:
        nbr_mask[u] |= 1 << v
        nbr_mask[v] |= 1 << u
    memo: dict[int, int] = {}

    def count(free: int) -> int:
        if free == 0:
            return 1
        hit = memo.get(free)
        if hit is not None:
            return hit
        best = -1
        best_deg = n + 1
        rest = free
        while rest:
            low = rest & -rest
            v = low.bit_length() - 1
            d = (nbr_mask[v] & free).bit_count()
            if d < best_deg:
                best, best_deg = v, d
                if d <= 1:
                    break
            rest ^= low
        total = 0
        if best_deg:
            base = free & ~(1 << best)
            opts = nbr_mask[best] & free
            while opts:
                low = opts & -opts
                total += count(base & ~low)
                opts ^= low
        memo[free] = total
        return total

    limit = sys.getrecursionlimit()
    sys.setrecursionlimit(max(limit, 4 * n + 100))
    try:
        return count((1 << n) - 1)
    finally:
        sys.setrecursionlimit(limit)


@dataclass(frozen=True)
class DimerLineGraphCheck:
    bound: int
    count: int
    equality: bool
    delta_le_3: bool

    @property
    def consistent(self) -> bool:
        return self.equality == self.delta_le_3


def dimer_line_graph_check(g: Graph) -> DimerLineGraphCheck:
    """Compare M(L(G)) with 2^(m-n+1) for a 2-connected G with an even edge count."""
    pred = graph_predicates(g)
    if not pred.two_connected:
        raise ValidationError("graph must be 2-connected")
    if g.edge_count % 2:
        raise ValidationError(f"edge count must be even, got {g.edge_count}")
    bound = 2 ** (g.edge_count - g.vertex_count + 1)
    count = count_perfect_matchings(line_graph(g))
    return DimerLineGraphCheck(bound, count, count == bound, pred.max_degree <= 3)


def dimer_free_energy(g: Graph) -> float:
    """(2/|V|) ln M(g) for a finite graph."""
    m = count_perfect_matchings(g)
    if m == 0:
        raise ValidationError("graph has no perfect matching")
    return 2.0 * math.log(m) / g.vertex_count


def dimer_free_energy_line_of_subdivision(parent: Graph) -> float:
    """(2/|V|) ln M(C(parent)) via the line-graph bound on S(parent).

    For a 2-connected cubic parent, C(parent) = L(S(parent)), S(parent) has
    maximum degree 3 and an even edge count, so M = 2^(|E(S)| - |V(S)| + 1)
    holds with equality.
    """
    pred = graph_predicates(parent)
    if pred.regular_degree != 3 or not pred.two_connected:
        raise ValidationError("needs a 2-connected cubic graph")
    n, m = parent.vertex_count, parent.edge_count
    exponent = 2 * m - (n + m) + 1
    return 2.0 * exponent * math.log(2) / (3 * n)


def dimer_free_energy_limit_cubic() -> float:
    """Bulk dimer free energy of any iterated clique-inserted cubic lattice: ln(2)/3."""
    return LN2_OVER_3
