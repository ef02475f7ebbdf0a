"""LPS and Chiu Cayley graphs over PGL(2, q) / PSL(2, q).

Group elements are 2x2 matrices over Z_q kept in a canonical projective
form, so two matrices represent the same group element exactly when their
canonical tuples are equal.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import product
from typing import Literal

from .errors import ComputationError, NonResidueError, ValidationError
from .graph import Graph, build_graph, graph_predicates, is_bipartite
from .spectral import adjacency_spectrum, gap_iterate, ramanujan_check

GroupKind = Literal["psl", "pgl"]

DEFAULT_MAX_ORDER = 3000


# ---------------------------------------------------------------------------
# modular arithmetic
# ---------------------------------------------------------------------------


def is_probable_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    return all(n % d for d in range(3, math.isqrt(n) + 1, 2))


def _require_odd_prime(q: int, name: str = "q") -> None:
    if q < 3 or not is_probable_prime(q):
        raise ValidationError(f"{name} must be an odd prime, got {q}")


def legendre(a: int, q: int) -> int:
    """Legendre symbol via Euler's criterion: 1, -1 or 0."""
    t = pow(a % q, (q - 1) // 2, q)
    return -1 if t == q - 1 else t


def is_quadratic_residue(a: int, q: int) -> bool:
    return legendre(a, q) != -1


def sqrt_mod(a: int, q: int, label: str | None = None) -> int:
    """Smaller square root of ``a`` mod an odd prime ``q`` (Tonelli-Shanks)."""
    _require_odd_prime(q)
    a %= q
    if a == 0:
        return 0
    if legendre(a, q) != 1:
        raise NonResidueError(a, q, label)
    # q - 1 = odd * 2^s
    odd, s = q - 1, 0
    while odd % 2 == 0:
        odd //= 2
        s += 1
    z = 2
    while legendre(z, q) != -1:
        z += 1
    m, c, t, x = s, pow(z, odd, q), pow(a, odd, q), pow(a, (odd + 1) // 2, q)
    while t != 1:
        i, t2 = 0, t
        while t2 != 1:
            t2 = t2 * t2 % q
            i += 1
        b = pow(c, 1 << (m - i - 1), q)
        m, c = i, b * b % q
        t, x = t * c % q, x * b % q
    return min(x, q - x)


# ---------------------------------------------------------------------------
# projective matrices
# ---------------------------------------------------------------------------

Entries = tuple[int, int, int, int]


def _det(e: Entries, q: int) -> int:
    a, b, c, d = e
    return (a * d - b * c) % q


def canonical_entries(e: Entries, q: int, kind: GroupKind) -> Entries:
    e = tuple(x % q for x in e)
    det = _det(e, q)
    if det == 0:
        raise ValidationError(f"matrix {e} is singular mod {q}")
    if kind == "pgl":
        lead = next(x for x in e if x)
        inv = pow(lead, -1, q)
        return tuple(x * inv % q for x in e)
    if kind != "psl":
        raise ValidationError(f"group kind must be 'psl' or 'pgl', got {kind!r}")
    if legendre(det, q) != 1:
        raise ValidationError(
            f"matrix {e} has determinant {det}, a non-square mod {q}: not an element of PSL(2, {q})"
        )
    scale = sqrt_mod(pow(det, -1, q), q)
    m = tuple(x * scale % q for x in e)
    neg = tuple(-x % q for x in m)
    return min(m, neg)


def _mul(x: Entries, y: Entries, q: int) -> Entries:
    a, b, c, d = x
    e, f, g, h = y
    return ((a * e + b * g) % q, (a * f + b * h) % q, (c * e + d * g) % q, (c * f + d * h) % q)


@dataclass(frozen=True, order=True)
class ProjMatrix:
    """Element of PGL(2, q) or PSL(2, q) in canonical form; build with :meth:`of`."""

    entries: Entries
    q: int = field(compare=False)
    kind: GroupKind = field(compare=False)

    @classmethod
    def of(cls, a: int, b: int, c: int, d: int, q: int, kind: GroupKind) -> ProjMatrix:
        return cls(canonical_entries((a, b, c, d), q, kind), q, kind)

    @classmethod
    def identity(cls, q: int, kind: GroupKind) -> ProjMatrix:
        return cls.of(1, 0, 0, 1, q, kind)

    def __mul__(self, other: ProjMatrix) -> ProjMatrix:
        if (self.q, self.kind) != (other.q, other.kind):
            raise ValidationError("cannot multiply elements of different groups")
        prod = _mul(self.entries, other.entries, self.q)
        return ProjMatrix(canonical_entries(prod, self.q, self.kind), self.q, self.kind)

    def inverse(self) -> ProjMatrix:
        a, b, c, d = self.entries
        # adjugate is the inverse up to a scalar
        return ProjMatrix.of(d, -b, -c, a, self.q, self.kind)

    @property
    def det(self) -> int:
        return _det(self.entries, self.q)

    def is_identity(self) -> bool:
        return self == ProjMatrix.identity(self.q, self.kind)


def group_order(q: int, kind: GroupKind) -> int:
    full = q * (q * q - 1)
    return full if kind == "pgl" else full // 2


def group_elements(q: int, kind: GroupKind) -> list[Entries]:
    """All canonical forms, sorted."""
    _require_odd_prime(q)
    out = set()
    if kind == "pgl":
        for b, c, d in product(range(q), repeat=3):
            if (d - b * c) % q:
                out.add((1, b, c, d))
        for c, d in product(range(1, q), range(q)):
            out.add((0, 1, c, d))
    elif kind == "psl":
        for a, b, c, d in product(range(q), repeat=4):
            if (a * d - b * c) % q == 1:
                neg = ((-a) % q, (-b) % q, (-c) % q, (-d) % q)
                out.add(min((a, b, c, d), neg))
    else:
        raise ValidationError(f"group kind must be 'psl' or 'pgl', got {kind!r}")
    elems = sorted(out)
    if len(elems) != group_order(q, kind):
        raise ComputationError(f"enumerated {len(elems)} elements, expected {group_order(q, kind)}")
    return elems


# ---------------------------------------------------------------------------
# generator sets
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GeneratorSet:
    elements: tuple[ProjMatrix, ...]
    p: int
    q: int
    kind: GroupKind

    @property
    def degree(self) -> int:
        return len(self.elements)

    def is_symmetric(self) -> bool:
        s = set(self.elements)
        return all(x.inverse() in s for x in s)


def _finish_generators(mats: list[ProjMatrix], p: int, q: int, kind: GroupKind) -> GeneratorSet:
    if len(set(mats)) != len(mats):
        raise ComputationError("generator matrices coincide after canonicalisation")
    gens = GeneratorSet(tuple(sorted(mats)), p, q, kind)
    if any(x.is_identity() for x in gens.elements):
        raise ComputationError("identity appears in the generator set")
    if not gens.is_symmetric():
        raise ComputationError("generator set is not closed under inverses")
    return gens


def x_kind(p: int, q: int) -> GroupKind:
    """PSL when p is a square mod q, PGL otherwise."""
    return "psl" if legendre(p, q) == 1 else "pgl"


def four_square_reps(p: int) -> list[tuple[int, int, int, int]]:
    """Solutions of a0^2+a1^2+a2^2+a3^2 = p under the LPS sign normalisation.

    p = 1 mod 4: a0 positive and odd.  p = 3 mod 4: a0 even and the first
    nonzero entry positive.
    """
    bound = math.isqrt(p)
    reps = []
    for a in product(range(-bound, bound + 1), repeat=4):
        if sum(x * x for x in a) != p:
            continue
        if p % 4 == 1:
            if a[0] > 0 and a[0] % 2 == 1:
                reps.append(a)
        else:
            if a[0] % 2 == 0 and next(x for x in a if x) > 0:
                reps.append(a)
    return reps


def sum_of_two_squares_plus_one(q: int) -> tuple[int, int]:
    """Lexicographically smallest (x, y) with x^2 + y^2 + 1 = 0 mod q."""
    for x in range(q):
        for y in range(q):
            if (x * x + y * y + 1) % q == 0:
                return x, y
    raise ComputationError(f"no solution of x^2+y^2+1 = 0 mod {q}")


def lps_generators(p: int, q: int, kind: GroupKind | None = None) -> GeneratorSet:
    """The p+1 LPS generators in PGL(2, q) or PSL(2, q)."""
    _require_odd_prime(p, "p")
    _require_odd_prime(q)
    if p == q:
        raise ValidationError("p and q must be distinct")
    if q * q <= 4 * p:
        raise ValidationError(f"need q > 2*sqrt(p), got p={p}, q={q}")
    kind = kind or x_kind(p, q)
    x, y = sum_of_two_squares_plus_one(q)
    mats = []
    for a0, a1, a2, a3 in four_square_reps(p):
        mats.append(
            ProjMatrix.of(
                a0 + a1 * x + a3 * y,
                -a1 * y + a2 + a3 * x,
                -a1 * y - a2 + a3 * x,
                a0 - a1 * x - a3 * y,
                q,
                kind,
            )
        )
    if len(mats) != p + 1:
        raise ComputationError(f"found {len(mats)} generators, expected {p + 1}")
    return _finish_generators(mats, p, q, kind)


CHIU_RADICANDS = (("-2", -2), ("26", 26))


def chiu_roots(q: int) -> dict[str, int]:
    """Canonical square roots of -2 and 26 mod q, or an error naming the missing one."""
    _require_odd_prime(q)
    if 26 % q == 0:
        raise ValidationError(f"q={q} divides 26")
    return {label: sqrt_mod(value, q, label) for label, value in CHIU_RADICANDS}


def chiu_generators(q: int, kind: GroupKind | None = None) -> GeneratorSet:
    """Three cubic generators: the reflection diag(1, -1) and a mutually inverse pair.

    The pair is [[2+w, t], [-t, 2-w]] and its adjugate, with w^2 = -2 and
    t^2 = 26; the determinant is 32, so both sit in the square class of 2.
    """
    roots = chiu_roots(q)
    kind = kind or x_kind(2, q)
    w, t = roots["-2"], roots["26"]
    reflection = ProjMatrix.of(1, 0, 0, -1, q, kind)
    forward = ProjMatrix.of(2 + w, t, -t, 2 - w, q, kind)
    backward = ProjMatrix.of(2 - w, -t, t, 2 + w, q, kind)
    if not (forward * backward).is_identity():
        raise ComputationError("Chiu pair is not mutually inverse")
    if not (reflection * reflection).is_identity():
        raise ComputationError("reflection is not an involution")
    return _finish_generators([reflection, forward, backward], 2, q, kind)


def smallest_chiu_prime(start: int = 3, stop: int = 10_000) -> int:
    for q in range(max(start, 3), stop):
        if not is_probable_prime(q) or 26 % q == 0:
            continue
        if all(legendre(v, q) == 1 for _, v in CHIU_RADICANDS):
            return q
    raise ComputationError(f"no valid prime below {stop}")


# ---------------------------------------------------------------------------
# Cayley graphs
# ---------------------------------------------------------------------------


def cayley_graph(kind: GroupKind, q: int, s: GeneratorSet) -> Graph:
    """Vertices are the sorted canonical group elements; edges {g, g*s}."""
    for x in s.elements:
        if x.kind != kind or x.q != q:
            raise ValidationError(f"generator {x.entries} is not an element of {kind.upper()}(2, {q})")
        if x.entries != canonical_entries(x.entries, q, kind):
            raise ValidationError(f"generator {x.entries} is not in canonical {kind} form")
    if not s.is_symmetric():
        raise ValidationError("generator set must be closed under inverses")
    if any(x.is_identity() for x in s.elements):
        raise ValidationError("identity must not be a generator")
    elems = group_elements(q, kind)
    index = {e: i for i, e in enumerate(elems)}
    gens = [x.entries for x in s.elements]
    edges = set()
    for i, g in enumerate(elems):
        for h in gens:
            j = index[canonical_entries(_mul(g, h, q), q, kind)]
            edges.add((i, j) if i < j else (j, i))
    graph = build_graph(len(elems), edges)
    if graph_predicates(graph).regular_degree != s.degree:
        raise ComputationError("Cayley graph is not |S|-regular")
    return graph


@dataclass(frozen=True)
class XReport:
    p: int
    q: int
    kind: GroupKind
    graph: Graph
    degree: int
    connected: bool
    bipartite: bool
    lambda2: float
    bound: float
    ramanujan: bool
    mu2: float
    epsilon: float | None = None
    gap_bounds: tuple[float, ...] = ()


def expander_gap_bound(p: int, gamma: float) -> float:
    """(p+1) - p^(5/6+gamma) - p^(1/6-gamma), for 0 < gamma < 1/6."""
    if not 0 < gamma < 1 / 6:
        raise ValidationError(f"gamma must lie in (0, 1/6), got {gamma}")
    return (p + 1) - p ** (5 / 6 + gamma) - p ** (1 / 6 - gamma)


def build_X(p: int, q: int, max_order: int = DEFAULT_MAX_ORDER) -> tuple[Graph, GeneratorSet]:
    _require_odd_prime(q)
    kind = x_kind(p, q)
    order = group_order(q, kind)
    if order > max_order:
        raise ValidationError(
            f"{kind.upper()}(2, {q}) has {order} elements, above the dense-eigensolve limit {max_order}"
        )
    gens = chiu_generators(q, kind) if p == 2 else lps_generators(p, q, kind)
    return cayley_graph(kind, q, gens), gens


def build_and_verify_X(
    p: int,
    q: int,
    gamma: float | None = None,
    k: int = 0,
    max_order: int = DEFAULT_MAX_ORDER,
) -> XReport:
    """Build X^{p,q}, eigensolve it, and report the Ramanujan and gap data.

    With ``gamma`` set, also reports the asymptotic gap lower bound and its
    images under ``k`` clique-insertions.
    """
    graph, gens = build_X(p, q, max_order)
    r = gens.degree
    pred = graph_predicates(graph)
    bip = is_bipartite(graph)
    adj = adjacency_spectrum(graph)
    if pred.connected:
        check = ramanujan_check(adj, r, bipartite=bip)
        lambda2, bound, ok = check.lambda2, check.bound, check.is_ramanujan
    else:
        lambda2, bound, ok = float(r), 2 * math.sqrt(r - 1), False
    # for a regular graph the Laplacian spectrum is r - adjacency
    mu2 = float(r - adj.values[1])
    eps = None
    bounds: tuple[float, ...] = ()
    if gamma is not None:
        eps = expander_gap_bound(p, gamma)
        if eps > 0:
            bounds = tuple(gap_iterate(eps, r, j) for j in range(k + 1))
    return XReport(p, q, gens.kind, graph, r, pred.connected, bip, lambda2, bound, ok, mu2, eps, bounds)

