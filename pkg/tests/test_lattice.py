import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from clat.errors import ValidationError
from clat.graph import graph_predicates, is_bipartite
from clat.lattice import (
    LatticeSpec,
    build_hex_lattice,
    build_iterated_lattice,
    hex_torus_closed_form_spectrum,
)
from clat.spectral import adjacency_spectrum


def _triangles(g) -> int:
    a = g.adjacency_matrix()
    return int(round(np.trace(a @ a @ a) / 6))


@pytest.mark.parametrize("m, n", [(2, 2), (3, 2), (4, 5)])
def test_hex_torus_shape(m, n):
    b = build_hex_lattice(m, n)
    g = b.graph
    cells = (m + 1) * (n + 1)
    assert (g.vertex_count, g.edge_count) == (2 * cells, 3 * cells)
    p = graph_predicates(g)
    assert p.regular_degree == 3 and p.connected and p.two_connected
    assert is_bipartite(g)
    assert len(b.boundary_a_edges) == m + 1
    assert len(b.boundary_b_edges) == n + 1


@pytest.mark.parametrize("m, n", [(2, 2), (2, 3), (3, 3), (5, 4), (6, 6)])
def test_hex_torus_closed_form(m, n):
    g = build_hex_lattice(m, n).graph
    assert adjacency_spectrum(g).distance(hex_torus_closed_form_spectrum(m, n)) < 1e-10


def test_cylinder_and_free_degrees():
    cyl = build_hex_lattice(3, 4, "cylinder").graph
    free = build_hex_lattice(3, 4, "free").graph
    torus = build_hex_lattice(3, 4).graph
    assert torus.edge_count - cyl.edge_count == 5
    assert torus.edge_count - free.edge_count == 4 + 5
    assert sorted(cyl.degrees()).count(2) == 2 * 5
    assert graph_predicates(cyl).connected and graph_predicates(free).connected


def test_t_lattice_triangles():
    # the only triangles in C(H) are the inserted cliques, one per vertex of H
    t = build_iterated_lattice(LatticeSpec(2, 2, "torus", 1)).graph
    assert t.vertex_count == 54 and t.edge_count == 81
    assert _triangles(t) == 18
    s = build_iterated_lattice(LatticeSpec(2, 2, "torus", 2)).graph
    assert s.vertex_count == 162 and _triangles(s) == 54


def test_t_cylinder_counts():
    t = build_iterated_lattice(LatticeSpec(2, 2, "cylinder", 1)).graph
    assert (t.vertex_count, t.edge_count) == (54, 78)
    assert t.degrees().count(2) == 6


def test_transported_boundary_edges_are_bridges_between_cliques():
    b = build_iterated_lattice(LatticeSpec(3, 2, "torus", 1))
    for u, v in b.boundary_a_edges + b.boundary_b_edges:
        assert b.graph.has_edge(u, v)
        assert u // 3 != v // 3


@settings(max_examples=25, deadline=None)
@given(
    st.integers(1, 5),
    st.integers(1, 5),
    st.sampled_from(["torus", "cylinder", "free"]),
    st.integers(0, 1),
)
def test_boundary_edge_counts(m, n, boundary, k):
    if boundary != "free" and min(m, n) < 2:
        with pytest.raises(ValidationError):
            LatticeSpec(m, n, boundary, k)
        return
    spec = LatticeSpec(m, n, boundary, k)
    g = build_iterated_lattice(spec).graph
    removed = {"torus": 0, "cylinder": n + 1, "free": m + n + 2}[boundary]
    assert g.vertex_count == spec.vertex_count
    assert g.edge_count == 3 * spec.vertex_count // 2 - removed
    assert graph_predicates(g).connected


def test_spec_validation_and_header():
    with pytest.raises(ValidationError):
        LatticeSpec(2, 2, "mobius")
    with pytest.raises(ValidationError):
        LatticeSpec(2, 2, k=-1)
    with pytest.raises(ValidationError):
        LatticeSpec(2, 2, base="square")
    with pytest.raises(ValidationError):
        hex_torus_closed_form_spectrum(1, 3)
    assert LatticeSpec(3, 4, "torus", 1).header() == "lattice 3-12-12 m=3 n=4 boundary=torus k=1"
