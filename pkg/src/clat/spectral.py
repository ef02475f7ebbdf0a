"""Adjacency/Laplacian spectra, the clique-insert spectrum map, energy and gaps."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal

import numpy as np

from .errors import ComputationError, DisconnectedGraphError, ValidationError
from .graph import Graph

SpectrumKind = Literal["adjacency", "laplacian"]

EIG_TOL = 1e-10


@dataclass(frozen=True, eq=False)
class Spectrum:
    """Eigenvalue multiset, sorted descending with repetition."""

    values: np.ndarray
    kind: SpectrumKind
    source_order: int

    def __post_init__(self):
        vals = np.sort(np.asarray(self.values, dtype=float))[::-1]
        vals.setflags(write=False)
        object.__setattr__(self, "values", vals)
        if len(vals) != self.source_order:
            raise ValidationError(f"spectrum has {len(vals)} values for order {self.source_order}")

    def __len__(self) -> int:
        return len(self.values)

    @property
    def ascending(self) -> np.ndarray:
        return self.values[::-1]

    def distance(self, other: Spectrum) -> float:
        """Max elementwise deviation after sorting both multisets."""
        if len(self) != len(other):
            return math.inf
        if not len(self):
            return 0.0
        return float(np.max(np.abs(self.values - other.values)))


def _require_nonempty(g: Graph) -> None:
    if g.vertex_count < 1:
        raise ValidationError("spectrum of the empty graph is undefined")


def adjacency_spectrum(g: Graph) -> Spectrum:
    _require_nonempty(g)
    return Spectrum(np.linalg.eigvalsh(g.adjacency_matrix()), "adjacency", g.vertex_count)


def laplacian_spectrum(g: Graph) -> Spectrum:
    _require_nonempty(g)
    return Spectrum(np.linalg.eigvalsh(g.laplacian_matrix()), "laplacian", g.vertex_count)


def spectral_gap(g: Graph) -> float:
    """Second-smallest Laplacian eigenvalue (algebraic connectivity)."""
    if g.vertex_count < 2:
        raise ValidationError("spectral gap needs at least two vertices")
    return float(laplacian_spectrum(g).ascending[1])


def _clique_insert_pair(lam: np.ndarray, r: int) -> tuple[np.ndarray, np.ndarray]:
    disc = r * r + 4.0 * (lam + 1.0)
    if np.any(disc < -EIG_TOL):
        raise ComputationError("negative discriminant in clique-insert spectrum map")
    root = np.sqrt(np.clip(disc, 0.0, None))
    return (r - 2 + root) / 2.0, (r - 2 - root) / 2.0


def _check_regular_top(values: np.ndarray, r: int, tol: float = 1e-8) -> None:
    if r < 3:
        raise ValidationError(f"degree must be >= 3, got {r}")
    if abs(values.max() - r) > tol:
        raise ValidationError(
            f"top eigenvalue {values.max():.12g} != {r}: not the spectrum of an {r}-regular graph"
        )


def map_clique_insert_values(values: np.ndarray, r: int) -> np.ndarray:
    """Vectorised clique-insert map on a raw eigenvalue array (unsorted)."""
    values = np.asarray(values, dtype=float)
    n = len(values)
    if (n * (r - 2)) % 2:
        raise ValidationError(f"n*(r-2) must be even for an {r}-regular graph on {n} vertices")
    extra = n * (r - 2) // 2
    plus, minus = _clique_insert_pair(values, r)
    return np.concatenate([plus, minus, np.zeros(extra), np.full(extra, -2.0)])


def map_spectrum_clique_insert(spec: Spectrum, r: int) -> Spectrum:
    """Spectrum of C(G) predicted from the spectrum of an r-regular G."""
    if spec.kind != "adjacency":
        raise ValidationError("clique-insert map needs an adjacency spectrum")
    _check_regular_top(spec.values, r)
    mapped = map_clique_insert_values(spec.values, r)
    return Spectrum(mapped, "adjacency", r * spec.source_order)


def graph_energy(spec: Spectrum) -> float:
    if spec.kind != "adjacency":
        raise ValidationError("graph energy is defined on the adjacency spectrum")
    return math.fsum(abs(float(x)) for x in spec.values)


def clique_insert_energy(spec: Spectrum, r: int) -> float:
    """Energy of C(G) straight from G's spectrum, without forming C(G).

    Each pair of mapped eigenvalues contributes sqrt(r^2 + 4(lambda + 1))
    and the 0/-2 block adds n(r-2).
    """
    if spec.kind != "adjacency":
        raise ValidationError("needs an adjacency spectrum")
    _check_regular_top(spec.values, r)
    n = spec.source_order
    root = np.sqrt(np.clip(r * r + 4.0 * (spec.values + 1.0), 0.0, None))
    plus = (r - 2 + root) / 2.0
    minus = (root - r + 2) / 2.0
    return math.fsum(plus) + math.fsum(minus) + n * (r - 2)


def gap_map(x: float, r: int) -> float:
    """(r + 2 - sqrt((r+2)^2 - 4x)) / 2, rationalised to stay accurate near x = 0."""
    return 2.0 * x / (r + 2 + math.sqrt((r + 2) ** 2 - 4.0 * x))


def gap_iterate(mu2: float, r: int, k: int) -> float:
    """Spectral gap after ``k`` clique-insertions of an r-regular graph."""
    if r < 3:
        raise ValidationError(f"degree must be >= 3, got {r}")
    if k < 0:
        raise ValidationError(f"k must be >= 0, got {k}")
    if not 0.0 <= mu2 <= 2 * r:
        raise ValidationError(f"mu2={mu2} outside the Laplacian gap range [0, {2 * r}]")
    x = float(mu2)
    for _ in range(k):
        x = gap_map(x, r)
    return x


@dataclass(frozen=True)
class RamanujanCheck:
    is_ramanujan: bool
    lambda2: float
    bound: float
    bipartite: bool


def ramanujan_check(
    spec: Spectrum, r: int, bipartite: bool | None = None, tol: float = 1e-8
) -> RamanujanCheck:
    """Test max |lambda| over the non-trivial adjacency eigenvalues against 2*sqrt(r-1).

    ``bipartite`` may be declared by the caller (from a 2-colouring);
    otherwise it is read off the spectrum, which for a connected regular
    graph is equivalent: -r is an eigenvalue iff the graph is bipartite.
    """
    if spec.kind != "adjacency":
        raise ValidationError("Ramanujan test needs an adjacency spectrum")
    vals = spec.values
    if abs(vals[0] - r) > tol:
        raise ValidationError(f"top eigenvalue {vals[0]:.12g} != {r}")
    if len(vals) > 1 and abs(vals[1] - r) <= tol:
        raise DisconnectedGraphError("top eigenvalue has multiplicity > 1: graph is disconnected")
    if bipartite is None:
        bipartite = bool(abs(vals[-1] + r) <= tol)
    rest = vals[1:-1] if bipartite else vals[1:]
    lambda2 = float(np.max(np.abs(rest))) if len(rest) else 0.0
    bound = 2.0 * math.sqrt(r - 1)
    return RamanujanCheck(lambda2 <= bound + 1e-9, lambda2, bound, bipartite)
