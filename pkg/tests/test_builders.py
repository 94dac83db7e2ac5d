import pytest

from realchip import errors
from realchip.builders import (
    banana_graph,
    check_admissible,
    cycle_graph,
    example1,
    example2,
    identity_structure,
    path_graph,
)
from realchip.graph import invariants, serialize, validate


def admissible_triples(max_genus: int):
    for g in range(max_genus + 1):
        for s in range(g + 2):
            for a in (0, 1):
                try:
                    check_admissible(g, s, a)
                except errors.InadmissibleTripleError:
                    continue
                yield g, s, a


def test_every_admissible_triple_is_realized():
    triples = list(admissible_triples(10))
    assert (0, 1, 0) in triples
    assert (1, 0, 1) in triples
    for g, s, a in triples:
        G = example1(g, s, a)
        report = invariants(G)
        assert report.gsa == (g, s, a), (g, s, a)
        assert report.violations() == []
        assert validate(serialize(G)) == G


@pytest.mark.parametrize(
    "g, s, a",
    [
        (-1, 0, 0),
        (2, 1, 2),
        (2, 4, 0),
        (2, 2, 0),
        (3, 0, 0),
        (3, 4, 1),
        (1, 2, 1),
    ],
)
def test_inadmissible_triples(g: int, s: int, a: int):
    with pytest.raises(errors.InadmissibleTripleError):
        example1(g, s, a)


def test_example1_layout():
    G = example1(3, 0, 1)
    assert G.vertices == ("v", "v_bar")
    assert G.real_vertices == ()
    assert len(G.edges) == 4
    # a = 1 family with real vertices: the pair hangs off the last real vertex
    G = example1(5, 2, 1)
    assert G.real_vertices == ("v1", "v2")
    assert sorted(G.ends("f")) == ["v", "v2"]
    assert sorted(G.ends("f1")) == ["v", "v_bar"]
    assert G.conj_edge("f1") == "f1_bar"


def test_example2_layout():
    G, D = example2(cycle_graph(3), "c0")
    assert G.real_vertices == ("v",)
    assert G.genus() == 2
    assert D.to_json() == {"v": 1}
    assert G.conj_vertex("a:c1") == "b:c1"
    assert G.conj_edge("e1") == "e2"
    report = invariants(G)
    assert report.gsa == (2, 1, 0)


def test_plain_families():
    assert cycle_graph(1).is_loop("k0")
    assert cycle_graph(4).genus() == 1
    assert not banana_graph(0).is_connected()
    assert banana_graph(5).genus() == 4
    assert path_graph(1).edges == ()
    assert path_graph(5).genus() == 0
    G = identity_structure(banana_graph(3))
    assert G.real_vertices == ("u", "w")
    assert all(G.is_real_edge(e) for e in G.edges)
    for build in (cycle_graph, path_graph):
        with pytest.raises(errors.InvalidParameterError):
            build(0)
    with pytest.raises(errors.InvalidParameterError):
        banana_graph(-1)
