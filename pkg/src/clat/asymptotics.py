"""Periodic 2-D quadrature and bulk energy-per-vertex integrals.

The integrands are built from R(x, y) = |1 + e^{ix} + e^{iy}|, the
magnitude of the honeycomb band, and the clique-insert map applied to +/-R.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from typing import Callable, Iterable, Literal

import numpy as np

from .errors import QuadratureError, ValidationError
from .lattice import hex_torus_eigenvalues
from .spectral import map_clique_insert_values

EnergyLattice = Literal["t_3_12_12", "s_3_6_24"]
LATTICE_DEPTH = {"t_3_12_12": 1, "s_3_6_24": 2}

RADICAND_CLAMP = 1e-12
DEFAULT_GRID = 512


def default_grid() -> int:
    raw = os.environ.get("CLAT_QUAD_GRID")
    return int(raw) if raw else DEFAULT_GRID


@dataclass(frozen=True)
class QuadratureConfig:
    grid: int = DEFAULT_GRID
    refine_limit: int = 4
    tol: float = 1e-6

    def __post_init__(self):
        if self.grid < 8:
            raise ValidationError(f"grid must be >= 8, got {self.grid}")
        if self.tol <= 0:
            raise ValidationError(f"tol must be positive, got {self.tol}")
        if self.refine_limit < 1:
            raise ValidationError(f"refine_limit must be >= 1, got {self.refine_limit}")

    @classmethod
    def from_env(cls, **overrides) -> QuadratureConfig:
        overrides.setdefault("grid", default_grid())
        return cls(**overrides)


@dataclass(frozen=True)
class QuadratureResult:
    value: float
    delta: float
    grid: int
    history: tuple[tuple[int, float], ...]


def _trapezoid(f: Callable[[np.ndarray, np.ndarray], np.ndarray], grid: int) -> float:
    h = 2 * np.pi / grid
    x = h * np.arange(grid)
    # row-wise accumulation keeps memory at O(grid) per row block and the
    # summation order fixed
    total = 0.0
    block = max(1, 2**22 // grid)
    for start in range(0, grid, block):
        xx, yy = np.meshgrid(x[start : start + block], x, indexing="ij")
        vals = np.asarray(f(xx, yy), dtype=float)
        total += math.fsum(vals.sum(axis=1))
    return total * h * h


def integrate_periodic_2d(
    f: Callable[[np.ndarray, np.ndarray], np.ndarray], cfg: QuadratureConfig | None = None
) -> QuadratureResult:
    """Integrate a doubly 2pi-periodic ``f`` over [0, 2pi]^2.

    Uses the periodic trapezoid rule, doubling the grid until successive
    values differ by less than ``cfg.tol``.  ``f`` must accept broadcast
    numpy arrays.
    """
    cfg = cfg or QuadratureConfig.from_env()
    grid = cfg.grid
    prev = _trapezoid(f, grid)
    history = [(grid, prev)]
    for _ in range(cfg.refine_limit):
        grid *= 2
        cur = _trapezoid(f, grid)
        history.append((grid, cur))
        delta = abs(cur - prev)
        if delta < cfg.tol:
            return QuadratureResult(cur, delta, grid, tuple(history))
        prev = cur
    raise QuadratureError(cur, delta, grid, cfg.tol)


def honeycomb_band(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """R = sqrt(3 + 2cos x + 2cos y + 2cos(x+y)), radicand clamped at its zeros."""
    rad = 3 + 2 * np.cos(x) + 2 * np.cos(y) + 2 * np.cos(x + y)
    if np.any(rad < -RADICAND_CLAMP):
        raise QuadratureError(float(rad.min()), float("nan"), x.shape[-1], RADICAND_CLAMP)
    return np.sqrt(np.where(rad < 0, 0.0, rad))


def t_lattice_integrand(x, y):
    r = honeycomb_band(x, y)
    return np.sqrt(13 + 4 * r) + np.sqrt(13 - 4 * r)


def s_lattice_integrand(x, y):
    r = honeycomb_band(x, y)
    a = np.sqrt(13 + 4 * r)
    b = np.sqrt(13 - 4 * r)
    return np.sqrt(15 + 2 * a) + np.sqrt(15 + 2 * b) + np.sqrt(15 - 2 * a) + np.sqrt(15 - 2 * b)


def _lattice_key(lattice: str) -> str:
    key = {"3-12-12": "t_3_12_12", "3-6-24": "s_3_6_24"}.get(lattice, lattice.replace("-", "_"))
    if key not in LATTICE_DEPTH:
        raise ValidationError(f"unknown lattice {lattice!r}; expected 3-12-12 or 3-6-24")
    return key


@dataclass(frozen=True)
class EnergyLimit:
    lattice: str
    per_vertex: float
    quadrature: QuadratureResult

    @property
    def per_cell(self) -> float:
        """Energy per hexagonal cell, i.e. per unit of m*n."""
        return self.per_vertex * 2 * 3 ** LATTICE_DEPTH[self.lattice]


def asymptotic_energy_per_vertex(lattice: str, cfg: QuadratureConfig | None = None) -> EnergyLimit:
    key = _lattice_key(lattice)
    if key == "t_3_12_12":
        q = integrate_periodic_2d(t_lattice_integrand, cfg)
        value = 1 / 3 + q.value / (24 * math.pi**2)
    else:
        q = integrate_periodic_2d(s_lattice_integrand, cfg)
        value = q.value / (72 * math.pi**2) + (math.sqrt(5) + math.sqrt(13) + 6) / 18
    return EnergyLimit(key, value, q)


@dataclass(frozen=True)
class EnergyRow:
    m: int
    n: int
    vertices: int
    energy: float
    per_vertex: float


def finite_size_energy(m: int, n: int, k: int) -> EnergyRow:
    """Energy of C^k(H^t(n, m)) from the closed-form torus spectrum."""
    if m < 2 or n < 2:
        raise ValidationError(f"sizes must be at least (2, 2), got ({m}, {n})")
    vals = hex_torus_eigenvalues(m, n)
    for _ in range(k):
        vals = map_clique_insert_values(vals, 3)
    energy = math.fsum(np.abs(vals))
    return EnergyRow(m, n, len(vals), energy, energy / len(vals))


def finite_size_energy_table(lattice: str, sizes: Iterable[tuple[int, int]]) -> list[EnergyRow]:
    depth = LATTICE_DEPTH[_lattice_key(lattice)]
    return [finite_size_energy(m, n, depth) for m, n in sizes]
