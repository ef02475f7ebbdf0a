import math
import random
from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from clat.errors import DisconnectedGraphError, ValidationError
from clat.graph import (
    clique_insert,
    complete_graph,
    cycle_graph,
    disjoint_union,
    graph_predicates,
    hypercube_graph,
    is_connected,
    line_graph,
    path_graph,
    subdivision,
)
from clat.kirchhoff import (
    KF_LIMIT_CAVEAT,
    average_kf_limit,
    kf_clique_insert_cubic,
    kf_clique_insert_spectral,
    kf_leading_coefficients,
    kf_transform,
    kirchhoff_index,
    kirchhoff_index_pairwise,
    resistance_distance,
    resistance_matrix,
)

from conftest import named_cubic_graphs, random_cubic_graph, random_graph


def _fraction_det(rows):
    a = [[Fraction(x) for x in r] for r in rows]
    n, det = len(a), Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if a[r][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            det = -det
        det *= a[c][c]
        for r in range(c + 1, n):
            f = a[r][c] / a[c][c]
            for j in range(c, n):
                a[r][j] -= f * a[c][j]
    return det


def _minor(lap, drop):
    keep = [i for i in range(len(lap)) if i not in drop]
    return [[lap[i][j] for j in keep] for i in keep]


def exact_kirchhoff(g) -> Fraction:
    """Sum over pairs of det(L minus u,v) / det(L minus v)."""
    lap = [[int(x) for x in row] for row in g.laplacian_matrix()]
    trees = _fraction_det(_minor(lap, {0}))
    return sum((_fraction_det(_minor(lap, {u, v})) / trees for u, v in combinations(range(g.vertex_count), 2)), Fraction(0))


def test_exact_oracle_small_cases():
    assert exact_kirchhoff(complete_graph(4)) == 3
    assert exact_kirchhoff(path_graph(4)) == 10
    # cycle C_n: Kf = (n^3 - n) / 12
    assert exact_kirchhoff(cycle_graph(6)) == Fraction(216 - 6, 12)


@pytest.mark.parametrize(
    "make, value",
    [
        (lambda: line_graph(complete_graph(4)), Fraction(13, 2)),
        (lambda: subdivision(complete_graph(4)), Fraction(99, 2)),
        (lambda: clique_insert(complete_graph(4))[0], Fraction(301, 5)),
    ],
)
def test_k4_oracle_values(make, value):
    g = make()
    assert exact_kirchhoff(g) == value
    assert kirchhoff_index(g).kf == pytest.approx(float(value), abs=1e-9)
    assert kirchhoff_index_pairwise(g).kf == pytest.approx(float(value), abs=1e-9)


def test_k4_transforms_exact():
    assert kf_transform(3, 3, 4, "line") == Fraction(13, 2)
    assert kf_transform(3, 3, 4, "subdivision") == Fraction(99, 2)
    assert kf_transform(3, 3, 4, "clique-insert") == Fraction(305, 4)
    assert kf_clique_insert_cubic(3, 4) == Fraction(305, 4)
    assert kf_clique_insert_spectral(3, 3, 4) == Fraction(301, 5)


@pytest.mark.parametrize("name", list(named_cubic_graphs()))
@pytest.mark.parametrize("which", ["line", "subdivision"])
def test_transforms_match_direct_cubic(name, which):
    g = named_cubic_graphs()[name]
    target = {"line": line_graph, "subdivision": subdivision}[which](g)
    predicted = kf_transform(kirchhoff_index(g).kf, 3, g.vertex_count, which)
    assert predicted == pytest.approx(kirchhoff_index_pairwise(target).kf, rel=1e-6)


@pytest.mark.parametrize("g, r", [(complete_graph(5), 4), (hypercube_graph(4), 4), (complete_graph(6), 5)])
@pytest.mark.parametrize("which", ["line", "subdivision"])
def test_transforms_match_direct_higher_degree(g, r, which):
    target = {"line": line_graph, "subdivision": subdivision}[which](g)
    predicted = kf_transform(kirchhoff_index(g).kf, r, g.vertex_count, which)
    assert predicted == pytest.approx(kirchhoff_index(target).kf, rel=1e-6)


@pytest.mark.parametrize(
    "g, r",
    [*((g, 3) for g in named_cubic_graphs().values()), (complete_graph(5), 4), (hypercube_graph(4), 4), (complete_graph(6), 5)],
)
def test_spectral_clique_insert_formula_matches_direct(g, r):
    direct = kirchhoff_index_pairwise(clique_insert(g)[0]).kf
    assert float(kf_clique_insert_spectral(kirchhoff_index(g).kf, r, g.vertex_count)) == pytest.approx(direct, rel=1e-9)


@settings(max_examples=10, deadline=None)
@given(st.integers(2, 8), st.integers(0, 2**32))
def test_spectral_clique_insert_formula_random_cubic(half, seed):
    g = random_cubic_graph(2 * half, random.Random(seed))
    direct = kirchhoff_index(clique_insert(g)[0]).kf
    assert kf_clique_insert_spectral(kirchhoff_index(g).kf, 3, g.vertex_count) == pytest.approx(direct, rel=1e-9)


def test_closed_form_clique_insert_overshoots():
    # composing the line-graph rule with S(G) (not regular) gives the wrong constants
    for g in named_cubic_graphs().values():
        kf = kirchhoff_index(g).kf
        n = g.vertex_count
        assert kf_transform(kf, 3, n, "clique_insert") > kf_clique_insert_spectral(kf, 3, n) + 1


def test_cubic_special_case_agrees_with_general():
    for kf, n in [(Fraction(3), 4), (Fraction(77, 3), 10), (Fraction(1000), 30)]:
        assert kf_clique_insert_cubic(kf, n) == kf_transform(kf, 3, n, "clique_insert")


def test_transform_validation():
    with pytest.raises(ValidationError):
        kf_transform(3, 3, 4, "dual")
    with pytest.raises(ValidationError):
        kf_transform(3, 2, 4, "clique_insert")
    with pytest.raises(ValidationError):
        kf_transform(-1, 3, 4, "line")
    assert isinstance(kf_transform(3.0, 3, 4, "line"), float)


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 9), st.floats(0.3, 1), st.integers(0, 2**32))
def test_resistance_is_a_metric(n, p, seed):
    g = random_graph(n, p, random.Random(seed))
    if not is_connected(g):
        return
    r = resistance_matrix(g)
    assert r == pytest.approx(r.T, abs=1e-9)
    for u, v, w in combinations(range(n), 3):
        for a, b, c in ((u, v, w), (v, w, u), (w, u, v)):
            assert r[a, b] <= r[a, c] + r[c, b] + 1e-9
    # Foster: the edge resistances sum to n - 1
    assert math.fsum(r[u, v] for u, v in g.edges) == pytest.approx(n - 1, abs=1e-9)
    assert kirchhoff_index(g).kf == pytest.approx(kirchhoff_index_pairwise(g).kf, rel=1e-9)


@settings(max_examples=15, deadline=None)
@given(st.integers(2, 7), st.integers(0, 2**32))
def test_kirchhoff_matches_exact_oracle(n, seed):
    g = random_graph(n, 0.6, random.Random(seed))
    if not is_connected(g):
        return
    assert kirchhoff_index(g).kf == pytest.approx(float(exact_kirchhoff(g)), rel=1e-9)


def test_resistance_distance_basics():
    g = cycle_graph(4)
    assert resistance_distance(g, 0, 0) == 0.0
    assert resistance_distance(g, 0, 1) == pytest.approx(0.75)
    assert resistance_distance(g, 0, 2) == pytest.approx(1.0)
    with pytest.raises(ValidationError):
        resistance_distance(g, 0, 4)
    with pytest.raises(DisconnectedGraphError):
        kirchhoff_index(disjoint_union(complete_graph(3), complete_graph(3)))


def test_average_kirchhoff():
    rep = kirchhoff_index(complete_graph(4))
    assert rep.average_kf == pytest.approx(0.5)
    assert graph_predicates(complete_graph(4)).connected


def test_leading_coefficients_and_limits():
    c = kf_leading_coefficients(2)
    assert c == [0, Fraction(17, 4), Fraction(1887, 16)]
    assert average_kf_limit("t_3_12_12") == Fraction(17, 72)
    assert average_kf_limit("3-6-24") == Fraction(1887, 2592)
    assert float(average_kf_limit("3-12-12")) == pytest.approx(0.2361111111)
    assert float(average_kf_limit("s_3_6_24")) == pytest.approx(0.7280092593)
    with pytest.raises(ValidationError):
        average_kf_limit("4-8-8")
    assert "N^2" in KF_LIMIT_CAVEAT
