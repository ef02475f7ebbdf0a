import math
import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from clat.errors import DisconnectedGraphError, ValidationError
from clat.graph import (
    circulant_graph,
    clique_insert,
    complete_bipartite_graph,
    complete_graph,
    cycle_graph,
    disjoint_union,
    hypercube_graph,
    is_bipartite,
    petersen_graph,
)
from clat.spectral import (
    Spectrum,
    adjacency_spectrum,
    clique_insert_energy,
    gap_iterate,
    gap_map,
    graph_energy,
    laplacian_spectrum,
    map_clique_insert_values,
    map_spectrum_clique_insert,
    ramanujan_check,
    spectral_gap,
)

from conftest import random_cubic_graph


def _multiset(*pairs):
    return sorted((v for v, mult in pairs for _ in range(mult)), reverse=True)


def test_known_spectra():
    assert np.allclose(adjacency_spectrum(complete_graph(4)).values, [3, -1, -1, -1])
    assert np.allclose(adjacency_spectrum(petersen_graph()).values, _multiset((3, 1), (1, 5), (-2, 4)))
    assert np.allclose(adjacency_spectrum(complete_bipartite_graph(3, 3)).values, _multiset((3, 1), (0, 4), (-3, 1)))
    # Laplacian of C_6: 2 - 2cos(2 pi j / 6)
    expected = sorted(2 - 2 * math.cos(2 * math.pi * j / 6) for j in range(6))
    assert np.allclose(laplacian_spectrum(cycle_graph(6)).ascending, expected)


def test_truncated_tetrahedron_spectrum():
    # C(K4) worked out by hand from the map: 3 -> {3, -2}, -1 -> {2, -1}, plus 0,0 and -2,-2
    c, _ = clique_insert(complete_graph(4))
    expected = _multiset((3, 1), (2, 3), (0, 2), (-1, 3), (-2, 3))
    assert np.allclose(adjacency_spectrum(c).values, expected, atol=1e-12)
    mapped = map_spectrum_clique_insert(adjacency_spectrum(complete_graph(4)), 3)
    assert np.allclose(mapped.values, expected, atol=1e-12)


def test_spectrum_is_sorted_and_frozen():
    s = Spectrum(np.array([0.0, 2.0, -1.0]), "adjacency", 3)
    assert list(s.values) == [2.0, 0.0, -1.0]
    assert list(s.ascending) == [-1.0, 0.0, 2.0]
    with pytest.raises(ValueError):
        s.values[0] = 5.0
    with pytest.raises(ValidationError):
        Spectrum(np.zeros(2), "adjacency", 3)


def test_map_values_r4():
    # r = 4: lambda = 4 -> {4, -2}; lambda = -2 -> 1 +- sqrt 3; n(r-2)/2 = 2 copies of 0 and -2
    out = map_clique_insert_values(np.array([4.0, -2.0]), 4)
    r3 = math.sqrt(3)
    assert sorted(out) == pytest.approx(sorted([4, -2, 1 + r3, 1 - r3, 0, 0, -2, -2]))


@settings(max_examples=20, deadline=None)
@given(st.integers(2, 9), st.integers(0, 2**32))
def test_lemma_spectrum_map_random_cubic(half, seed):
    g = random_cubic_graph(2 * half, random.Random(seed))
    c, _ = clique_insert(g)
    direct = adjacency_spectrum(c)
    mapped = map_spectrum_clique_insert(adjacency_spectrum(g), 3)
    assert direct.distance(mapped) < 1e-8


@pytest.mark.parametrize("g, r", [(complete_graph(5), 4), (hypercube_graph(4), 4), (circulant_graph(12, [1, 2, 5]), 6)])
def test_lemma_spectrum_map_higher_degree(g, r):
    c, _ = clique_insert(g)
    assert adjacency_spectrum(c).distance(map_spectrum_clique_insert(adjacency_spectrum(g), r)) < 1e-8


def test_map_rejects_wrong_degree():
    with pytest.raises(ValidationError):
        map_spectrum_clique_insert(adjacency_spectrum(complete_graph(4)), 4)
    with pytest.raises(ValidationError):
        map_spectrum_clique_insert(laplacian_spectrum(complete_graph(4)), 3)


def test_energy_examples():
    assert graph_energy(adjacency_spectrum(complete_graph(4))) == pytest.approx(6)
    assert graph_energy(adjacency_spectrum(petersen_graph())) == pytest.approx(16)
    assert clique_insert_energy(adjacency_spectrum(complete_graph(4)), 3) == pytest.approx(18)


@pytest.mark.parametrize(
    "g, r",
    [(complete_graph(4), 3), (petersen_graph(), 3), (complete_graph(6), 5), (hypercube_graph(3), 3), (circulant_graph(10, [1, 3]), 4)],
)
def test_clique_insert_energy_matches_direct(g, r):
    c, _ = clique_insert(g)
    assert clique_insert_energy(adjacency_spectrum(g), r) == pytest.approx(graph_energy(adjacency_spectrum(c)), abs=1e-9)


@settings(max_examples=60, deadline=None)
@given(st.integers(3, 12), st.floats(0, 1))
def test_gap_map_properties(r, t):
    x = t * 2 * r
    y = gap_map(x, r)
    assert 0 <= y <= x + 1e-12
    assert y < (r + 2) / 2
    if 0 < x < r + 1:
        assert y < x
    # f is increasing
    assert gap_map(min(x + 0.1, 2 * r), r) >= y


def test_gap_map_only_fixed_point_is_zero():
    for r in (3, 4, 7):
        assert gap_map(0.0, r) == 0.0
        # r + 1 solves the squared equation but is not a fixed point
        assert gap_map(r + 1.0, r) == pytest.approx(1.0)


def test_gap_map_small_argument_is_accurate():
    # f(x) ~ x / (r + 2) near zero
    assert gap_map(1e-20, 3) == pytest.approx(2e-21, rel=1e-9)


def test_gap_iterate_decreases_to_zero():
    vals = [gap_iterate(1.0, 3, k) for k in range(40)]
    assert all(a > b > 0 for a, b in zip(vals, vals[1:]))
    assert vals[-1] < 1e-6
    with pytest.raises(ValidationError):
        gap_iterate(-0.1, 3, 1)
    with pytest.raises(ValidationError):
        gap_iterate(1.0, 2, 1)


@pytest.mark.parametrize("g", [complete_graph(4), petersen_graph(), complete_bipartite_graph(3, 3)])
def test_gap_map_matches_clique_insert(g):
    c, _ = clique_insert(g)
    assert spectral_gap(c) == pytest.approx(gap_map(spectral_gap(g), 3), abs=1e-10)


@settings(max_examples=15, deadline=None)
@given(st.integers(2, 8), st.integers(0, 2**32))
def test_gap_map_random_cubic(half, seed):
    g = random_cubic_graph(2 * half, random.Random(seed))
    c, _ = clique_insert(g)
    assert spectral_gap(c) == pytest.approx(gap_map(spectral_gap(g), 3), abs=1e-9)


def test_ramanujan_petersen():
    chk = ramanujan_check(adjacency_spectrum(petersen_graph()), 3)
    assert chk.is_ramanujan and chk.lambda2 == pytest.approx(2) and not chk.bipartite
    assert chk.bound == pytest.approx(2 * math.sqrt(2))


def test_ramanujan_bipartite_excludes_minus_r():
    chk = ramanujan_check(adjacency_spectrum(complete_bipartite_graph(3, 3)), 3)
    assert chk.bipartite and chk.is_ramanujan and chk.lambda2 == pytest.approx(0, abs=1e-9)
    chk = ramanujan_check(adjacency_spectrum(hypercube_graph(3)), 3, bipartite=is_bipartite(hypercube_graph(3)))
    assert chk.lambda2 == pytest.approx(1)


def test_not_ramanujan_long_cycle_with_chords():
    # eigenvalues 2cos(2 pi j/100) + (-1)^j; the largest nontrivial modulus is at j = 51
    chk = ramanujan_check(adjacency_spectrum(circulant_graph(100, [1, 50])), 3)
    assert not chk.is_ramanujan
    assert chk.lambda2 == pytest.approx(abs(2 * math.cos(2 * math.pi * 51 / 100) - 1))


def test_ramanujan_disconnected_raises():
    g = disjoint_union(complete_graph(4), complete_graph(4))
    with pytest.raises(DisconnectedGraphError):
        ramanujan_check(adjacency_spectrum(g), 3)
