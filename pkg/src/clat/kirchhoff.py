"""Resistance distance, Kirchhoff index and its closed-form transforms."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Literal

import numpy as np

from .errors import DisconnectedGraphError, ValidationError
from .graph import Graph, is_connected

Transform = Literal["line", "subdivision", "clique_insert"]
TRANSFORMS: tuple[str, ...] = ("line", "subdivision", "clique_insert")

LimitLattice = Literal["t_3_12_12", "s_3_6_24"]

# Carried into CLI diagnostics next to kf-limit output.
KF_LIMIT_CAVEAT = (
    "limit keeps only the N^2 coefficient produced by the clique-insert "
    "recursion and treats the base hexagonal Kirchhoff index as sub-dominant; "
    "the hexagonal estimate Kf(H) ~ 10.9322 N^2 would otherwise contribute at the "
    "same order, and a 2-D torus average resistance is expected to grow "
    "logarithmically"
)


@dataclass(frozen=True)
class KfReport:
    kf: float
    average_kf: float
    n: int


def _require_connected(g: Graph) -> None:
    if g.vertex_count < 1:
        raise ValidationError("empty graph")
    if not is_connected(g):
        raise DisconnectedGraphError("resistance distance is infinite on a disconnected graph")


def laplacian_pseudoinverse(g: Graph) -> np.ndarray:
    _require_connected(g)
    w, v = np.linalg.eigh(g.laplacian_matrix())
    inv = np.zeros_like(w)
    inv[1:] = 1.0 / w[1:]
    return (v * inv) @ v.T


def resistance_distance(g: Graph, u: int, v: int) -> float:
    if not (0 <= u < g.vertex_count and 0 <= v < g.vertex_count):
        raise ValidationError(f"vertex out of range: {u}, {v}")
    if u == v:
        return 0.0
    lp = laplacian_pseudoinverse(g)
    return float(lp[u, u] + lp[v, v] - 2 * lp[u, v])


def resistance_matrix(g: Graph) -> np.ndarray:
    lp = laplacian_pseudoinverse(g)
    d = np.diag(lp)
    return d[:, None] + d[None, :] - 2 * lp


def kirchhoff_index(g: Graph) -> KfReport:
    """Kf = n * sum over nonzero Laplacian eigenvalues of 1/mu."""
    _require_connected(g)
    n = g.vertex_count
    if n == 1:
        return KfReport(0.0, 0.0, 1)
    mu = np.linalg.eigvalsh(g.laplacian_matrix())
    kf = n * math.fsum(1.0 / mu[1:])
    return KfReport(kf, kf / math.comb(n, 2), n)


def kirchhoff_index_pairwise(g: Graph) -> KfReport:
    """Same quantity by summing resistance distances over all pairs."""
    _require_connected(g)
    n = g.vertex_count
    if n == 1:
        return KfReport(0.0, 0.0, 1)
    r = resistance_matrix(g)
    kf = math.fsum(r[np.triu_indices(n, 1)])
    return KfReport(kf, kf / math.comb(n, 2), n)


def kf_transform(kf, r: int, n: int, which: Transform):
    """Kirchhoff index of L(G), S(G) or C(G) from Kf(G) of a connected r-regular G.

    Coefficients are exact rationals, so integer or Fraction input gives an
    exact Fraction back; float input gives a float.
    """
    which = which.replace("-", "_")
    if which not in TRANSFORMS:
        raise ValidationError(f"unknown transform {which!r}; expected one of {TRANSFORMS}")
    if which == "clique_insert" and r < 3:
        raise ValidationError(f"clique-insert needs r >= 3, got {r}")
    if r < 2:
        raise ValidationError(f"r must be >= 2, got {r}")
    if n < 2:
        raise ValidationError(f"n must be >= 2, got {n}")
    if kf < 0:
        raise ValidationError(f"Kirchhoff index must be nonnegative, got {kf}")
    if isinstance(kf, int):
        kf = Fraction(kf)
    if which == "line":
        return Fraction(r, 2) * kf + Fraction((r - 2) * n * n, 8)
    if which == "subdivision":
        return Fraction((r + 2) ** 2, 2) * kf + Fraction((r * r - 4) * n * n + 4 * n, 8)
    return Fraction(r * (r + 2) ** 2, 4) * kf + Fraction(
        r**3 * n * n - 2 * r * n * n + 4 * r * n - 4 * n * n, 16
    )


# Reported next to clique-insert predictions.
CLIQUE_INSERT_CAVEAT = (
    "the closed-form clique-insert transform applies the regular line-graph "
    "rule to S(G), which is not regular; it overestimates Kf(C(G)) "
    "(K4: 305/4 vs the true 301/5). kf_clique_insert_spectral gives the exact value"
)


def kf_clique_insert_spectral(kf, r: int, n: int):
    """Exact Kf(C(G)) for connected r-regular G, from the clique-insert spectrum map.

    Each Laplacian eigenvalue mu != 0 of G yields two eigenvalues of C(G)
    whose reciprocals sum to (r+2)/mu; the 0 and -2 adjacency blocks and the
    image of lambda = r add the constant terms:
    Kf(C(G)) = r(r+2) Kf(G) + ((r-2)(r+1) n^2 + r n) / (r+2).
    """
    if r < 3:
        raise ValidationError(f"clique-insert needs r >= 3, got {r}")
    if n < 2:
        raise ValidationError(f"n must be >= 2, got {n}")
    if kf < 0:
        raise ValidationError(f"Kirchhoff index must be nonnegative, got {kf}")
    if isinstance(kf, int):
        kf = Fraction(kf)
    return r * (r + 2) * kf + Fraction((r - 2) * (r + 1) * n * n + r * n, r + 2)


def kf_clique_insert_cubic(kf, n: int):
    """The r = 3 clique-insert transform, written out on its own."""
    if isinstance(kf, int):
        kf = Fraction(kf)
    return Fraction(75, 4) * kf + Fraction(17 * n * n + 12 * n, 16)


def kf_leading_coefficients(depth: int, base_coefficient: Fraction = Fraction(0)) -> list[Fraction]:
    """N^2 coefficient of Kf(C^k(H)) for k = 0..depth, H cubic with 2N vertices.

    With Kf(C^{k-1}) ~ c N^2 and |V(C^{k-1})| = 2*3^{k-1} N, the cubic
    transform gives c' = 75/4 c + 17 (2*3^{k-1})^2 / 16.
    """
    coeffs = [Fraction(base_coefficient)]
    for k in range(1, depth + 1):
        size = 2 * 3 ** (k - 1)
        coeffs.append(Fraction(75, 4) * coeffs[-1] + Fraction(17 * size * size, 16))
    return coeffs


def average_kf_limit(lattice: LimitLattice) -> Fraction:
    """Large-torus average resistance of the 3-12-12 or 3-6-24 lattice, exactly.

    Dominant coefficient over the N^2 coefficient of C(|V|, 2) with
    |V| = 2*3^k N, i.e. (2*3^k)^2 / 2.
    """
    aliases = {"3-12-12": "t_3_12_12", "3-6-24": "s_3_6_24"}
    depth = {"t_3_12_12": 1, "s_3_6_24": 2}.get(aliases.get(lattice, lattice))
    if depth is None:
        raise ValidationError(f"unknown lattice {lattice!r}; expected t_3_12_12 or s_3_6_24")
    coeff = kf_leading_coefficients(depth)[depth]
    size = 2 * 3**depth
    return coeff / Fraction(size * size, 2)
