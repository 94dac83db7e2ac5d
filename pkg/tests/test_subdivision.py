import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from realchip import errors
from realchip.builders import edge_split, example1, random_real_graph, subdivide, subdivide_edges
from realchip.graph import RealGraph, invariants, validate
from tests.oracles import real_isomorphic


@pytest.fixture
def isolated_edge() -> RealGraph:
    return validate(
        {"vertices": ["v", "w"], "edges": [{"id": "e", "ends": ["v", "w"]}], "sigma_v": {"v": "w", "w": "v"}}
    )


def test_isolated_edge_even_split(isolated_edge: RealGraph):
    G = subdivide(isolated_edge, 2)
    assert G.vertices == ("e.v1", "v", "w")
    assert G.ends("e.1") == ("v", "e.v1")
    assert G.ends("e.2") == ("e.v1", "w")
    # the new midpoint is real, the two halves are swapped
    assert G.real_vertices == ("e.v1",)
    assert G.conj_edge("e.1") == "e.2"
    assert G.isolated_real_edges == ()
    assert invariants(G).gsa == (0, 1, 0)


def test_isolated_edge_odd_split(isolated_edge: RealGraph):
    G = subdivide(isolated_edge, 3)
    assert G.real_vertices == ()
    assert G.conj_vertex("e.v1") == "e.v2"
    assert G.conj_edge("e.1") == "e.3"
    # the middle edge stays an isolated real edge
    assert G.isolated_real_edges == ("e.2",)
    assert invariants(G).gsa == (0, 1, 0)


def test_edge_split(isolated_edge: RealGraph):
    assert edge_split(isolated_edge) == subdivide(isolated_edge, 2)
    G = example1(4, 3, 0)
    # no isolated real edges: nothing to split
    assert edge_split(G) == G


def test_subdivide_identity_and_errors(isolated_edge: RealGraph):
    assert subdivide(isolated_edge, 1) is isolated_edge
    with pytest.raises(errors.InvalidParameterError):
        subdivide(isolated_edge, 0)
    with pytest.raises(errors.InvalidParameterError):
        subdivide_edges(isolated_edge, {"e": 2}, {"e": "nope"})
    G = example1(1, 2, 0)
    with pytest.raises(errors.InvalidParameterError):
        subdivide_edges(G, {"e1": 2, "e1_bar": 3})
    clash = validate({"vertices": ["a", "e.v1"], "edges": [{"id": "e", "ends": ["a", "e.v1"]}]})
    with pytest.raises(errors.MalformedGraphError):
        subdivide(clash, 2)


def test_conjugate_chains_follow_the_involution():
    G = subdivide(example1(1, 0, 1), 2)
    assert G.conj_vertex("e1.v1") == "e1_bar.v1"
    assert G.conj_edge("e1.1") == "e1_bar.1"
    # chain of e1 starts at v, the conjugate chain at v_bar
    assert G.ends("e1.1") == ("v", "e1.v1")
    assert G.ends("e1_bar.1") == ("v_bar", "e1_bar.v1")


def test_explicit_chain_start(isolated_edge: RealGraph):
    G = subdivide_edges(isolated_edge, {"e": 2}, {"e": "w"})
    assert G.ends("e.1") == ("w", "e.v1")


@settings(max_examples=60, deadline=None)
@given(seed=st.integers(0, 10**9), d=st.integers(1, 4))
def test_subdivision_preserves_invariants(seed: int, d: int):
    G = random_real_graph(seed, 6, 8)
    H = subdivide(G, d)
    assert invariants(H).gsa == invariants(G).gsa
    assert len(H.edges) == d * len(G.edges)


@settings(max_examples=60, deadline=None)
@given(seed=st.integers(0, 10**9))
def test_edge_split_removes_isolated_edges(seed: int):
    G = random_real_graph(seed, 6, 8)
    H = edge_split(G)
    assert H.isolated_real_edges == ()
    assert invariants(H).gsa == invariants(G).gsa


@settings(max_examples=20, deadline=None)
@given(seed=st.integers(0, 10**9))
def test_subdivision_composes(seed: int):
    G = random_real_graph(seed, 4, 5)
    assume(not any(G.is_loop(e) for e in G.edges))
    assert real_isomorphic(subdivide(subdivide(G, 2), 3), subdivide(G, 6))
    assert real_isomorphic(subdivide(subdivide(G, 3), 2), subdivide(G, 6))
