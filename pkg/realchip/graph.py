"""
Finite multigraphs with a real structure.

A real structure is a pair of involutions on vertices and edges compatible with incidence. Loops and parallel
edges are allowed everywhere. Vertex and edge ids are opaque strings; every iteration runs in sorted id order so
that all results are deterministic.
"""

from __future__ import annotations

import logging
import typing
from dataclasses import dataclass

import networkx as nx

from realchip import errors

log = logging.getLogger(__name__)

Ends = tuple[str, str]


class Graph:
    """Finite multigraph without real structure."""

    __slots__ = ("vertices", "edges", "_vertex_set", "_ends", "_incident", "_nx")

    def __init__(self, vertices: typing.Iterable[str], ends: typing.Mapping[str, typing.Sequence[str]]):
        vertex_list = list(vertices)
        self._vertex_set = frozenset(vertex_list)
        if len(self._vertex_set) != len(vertex_list):
            duplicate = next(v for v in vertex_list if vertex_list.count(v) > 1)
            raise errors.MalformedGraphError(f"Duplicate vertex id {duplicate!r}", witness=duplicate)
        self.vertices: tuple[str, ...] = tuple(sorted(self._vertex_set))
        self.edges: tuple[str, ...] = tuple(sorted(ends))
        # ends keep the given order, which doubles as an edge orientation
        self._ends: dict[str, Ends] = {}
        for e in self.edges:
            pair = tuple(ends[e])
            if len(pair) != 2:
                raise errors.MalformedGraphError(f"Edge {e!r} must have exactly two ends, got {list(pair)}", witness=e)
            for x in pair:
                if x not in self._vertex_set:
                    raise errors.DanglingIncidenceError(f"Edge {e!r} is incident to unknown vertex {x!r}", witness=e)
            self._ends[e] = (pair[0], pair[1])
        # incidence lists: non-loop edges appear at both ends, loops once
        self._incident: dict[str, list[tuple[str, str]]] = {v: [] for v in self.vertices}
        for e, (a, b) in self._ends.items():
            self._incident[a].append((e, b))
            if a != b:
                self._incident[b].append((e, a))
        self._nx = nx.MultiGraph()
        self._nx.add_nodes_from(self.vertices)
        self._nx.add_edges_from((a, b, e) for e, (a, b) in self._ends.items())

    def _fields(self) -> list[str]:
        return [f"vertices={len(self.vertices)}", f"edges={len(self.edges)}"]

    def __repr__(self) -> str:
        return f"{self.__class__.__name__}({', '.join(self._fields())})"

    def _key(self) -> tuple:
        return (self.vertices, tuple(self._ends[e] for e in self.edges), self.edges)

    def __eq__(self, other: object) -> bool:
        if self is other:
            return True
        if not isinstance(other, Graph) or type(other) is not type(self):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self) -> int:
        return hash(self._key())

    def __contains__(self, vertex: object) -> bool:
        return vertex in self._vertex_set

    @property
    def vertex_set(self) -> frozenset[str]:
        return self._vertex_set

    def ends(self, e: str) -> Ends:
        try:
            return self._ends[e]
        except KeyError:
            raise errors.UnknownEdgeError(f"Unknown edge {e!r}", witness=e) from None

    def is_loop(self, e: str) -> bool:
        a, b = self.ends(e)
        return a == b

    def incident(self, v: str) -> list[tuple[str, str]]:
        """Pairs (edge, other end) of edges at v; a loop is listed once with other end v."""
        try:
            return self._incident[v]
        except KeyError:
            raise errors.UnknownVertexError(f"Unknown vertex {v!r}", witness=v) from None

    def valence(self, v: str) -> int:
        """Number of edge ends at v; loops count twice."""
        return sum(2 if w == v else 1 for _, w in self.incident(v))

    def components(self) -> list[frozenset[str]]:
        """Vertex sets of the connected components, ordered by their least vertex id."""
        return sorted((frozenset(c) for c in nx.connected_components(self._nx)), key=min)

    def is_connected(self) -> bool:
        return len(self.vertices) > 0 and nx.is_connected(self._nx)

    def genus(self) -> int:
        """Genus c + e - v; isolated vertices contribute nothing."""
        return len(self.components()) + len(self.edges) - len(self.vertices)

    def plain(self) -> Graph:
        """Copy of the underlying multigraph without any additional structure."""
        return Graph(self.vertices, self._ends)

    def bfs_levels(self, root: str) -> list[list[str]]:
        """Vertices grouped by edge distance from root, each level sorted."""
        lengths = nx.single_source_shortest_path_length(self._nx, root)
        levels: list[list[str]] = [[] for _ in range(max(lengths.values()) + 1)]
        for v in self.vertices:
            if v in lengths:
                levels[lengths[v]].append(v)
        return levels


class RealGraph(Graph):
    """Connected multigraph with an involution on vertices and edges compatible with incidence."""

    __slots__ = ("_sigma_v", "_sigma_e")

    def __init__(
        self,
        vertices: typing.Iterable[str],
        ends: typing.Mapping[str, typing.Sequence[str]],
        sigma_v: typing.Mapping[str, str] | None = None,
        sigma_e: typing.Mapping[str, str] | None = None,
    ):
        super().__init__(vertices, ends)
        self._sigma_v = _total_involution(self.vertices, sigma_v or {}, "vertex")
        self._sigma_e = _total_involution(self.edges, sigma_e or {}, "edge")
        # compatibility: ends of the conjugate edge are the conjugates of the ends
        for e in self.edges:
            expected = sorted(self._sigma_v[x] for x in self.ends(e))
            actual = sorted(self.ends(self._sigma_e[e]))
            if expected != actual:
                raise errors.IncompatibleInvolutionError(
                    f"Edge {e!r} has ends {sorted(self.ends(e))} but its conjugate {self._sigma_e[e]!r} has ends "
                    f"{actual}, expected {expected}",
                    witness=e,
                )
        if not self.vertices:
            raise errors.DisconnectedError("A graph with a real structure needs at least one vertex")
        components = self.components()
        if len(components) > 1:
            witness = min(components[1])
            raise errors.DisconnectedError(
                f"Graph is disconnected: vertex {witness!r} is not reachable from {self.vertices[0]!r}",
                witness=witness,
            )

    def _fields(self) -> list[str]:
        return [*super()._fields(), f"real_vertices={len(self.real_vertices)}"]

    def _key(self) -> tuple:
        return (
            *super()._key(),
            tuple(self._sigma_v[v] for v in self.vertices),
            tuple(self._sigma_e[e] for e in self.edges),
        )

    def conj_vertex(self, v: str) -> str:
        try:
            return self._sigma_v[v]
        except KeyError:
            raise errors.UnknownVertexError(f"Unknown vertex {v!r}", witness=v) from None

    def conj_edge(self, e: str) -> str:
        try:
            return self._sigma_e[e]
        except KeyError:
            raise errors.UnknownEdgeError(f"Unknown edge {e!r}", witness=e) from None

    def is_real_vertex(self, v: str) -> bool:
        return self.conj_vertex(v) == v

    def is_real_edge(self, e: str) -> bool:
        return self.conj_edge(e) == e

    def is_isolated_real_edge(self, e: str) -> bool:
        return self.is_real_edge(e) and not all(self.is_real_vertex(x) for x in self.ends(e))

    @property
    def real_vertices(self) -> tuple[str, ...]:
        return tuple(v for v in self.vertices if self._sigma_v[v] == v)

    @property
    def non_real_vertices(self) -> tuple[str, ...]:
        return tuple(v for v in self.vertices if self._sigma_v[v] != v)

    @property
    def isolated_real_edges(self) -> tuple[str, ...]:
        return tuple(e for e in self.edges if self.is_isolated_real_edge(e))

    def vertex_pairs(self) -> list[tuple[str, str]]:
        """Non-real vertex pairs (v, conjugate of v) with v the smaller id."""
        return [(v, self._sigma_v[v]) for v in self.vertices if v < self._sigma_v[v]]

    def relabel(self, vertex_map: typing.Mapping[str, str], edge_map: typing.Mapping[str, str]) -> RealGraph:
        """Isomorphic copy with ids renamed (ids missing from the maps are kept)."""
        vmap = {v: vertex_map.get(v, v) for v in self.vertices}
        emap = {e: edge_map.get(e, e) for e in self.edges}
        return RealGraph(
            vmap.values(),
            {emap[e]: tuple(vmap[x] for x in self.ends(e)) for e in self.edges},
            {vmap[v]: vmap[self._sigma_v[v]] for v in self.vertices},
            {emap[e]: emap[self._sigma_e[e]] for e in self.edges},
        )


def _total_involution(
    ids: tuple[str, ...], mapping: typing.Mapping[str, str], kind: str
) -> dict[str, str]:
    """Complete a partial involution with the identity and check that it is an involution."""
    id_set = set(ids)
    unknown_error = errors.UnknownVertexError if kind == "vertex" else errors.UnknownEdgeError
    for x, y in mapping.items():
        if x not in id_set:
            raise unknown_error(f"Involution defined on unknown {kind} {x!r}", witness=x)
        if y not in id_set:
            raise errors.NotInvolutiveError(f"Involution maps {kind} {x!r} to unknown {kind} {y!r}", witness=x)
    sigma = {x: mapping.get(x, x) for x in ids}
    for x in ids:
        if sigma[sigma[x]] != x:
            raise errors.NotInvolutiveError(
                f"Not an involution on {kind}s: {x!r} -> {sigma[x]!r} -> {sigma[sigma[x]]!r}", witness=x
            )
    return sigma


@dataclass(frozen=True)
class SubgraphRef:
    """Subgraph of a parent graph given by vertex and edge subsets."""

    parent: Graph
    vertices: frozenset[str]
    edges: frozenset[str]

    def __post_init__(self):
        if not self.vertices <= self.parent.vertex_set:
            unknown = min(self.vertices - self.parent.vertex_set)
            raise errors.UnknownVertexError(f"Subgraph vertex {unknown!r} is not in the parent", witness=unknown)
        for e in sorted(self.edges):
            if not set(self.parent.ends(e)) <= self.vertices:
                raise errors.DanglingIncidenceError(f"Subgraph edge {e!r} has an end outside the subgraph", witness=e)

    def __repr__(self) -> str:
        return f"SubgraphRef(vertices={sorted(self.vertices)}, edges={sorted(self.edges)})"

    def as_graph(self) -> Graph:
        return Graph(self.vertices, {e: self.parent.ends(e) for e in self.edges})

    def genus(self) -> int:
        return self.as_graph().genus()

    def components(self) -> list[SubgraphRef]:
        """Connected components as subgraphs of the same parent, ordered by least vertex id."""
        graph = self.as_graph()
        return [
            SubgraphRef(self.parent, vs, frozenset(e for e in self.edges if self.parent.ends(e)[0] in vs))
            for vs in graph.components()
        ]

    def as_dict(self) -> dict:
        return {"vertices": sorted(self.vertices), "edges": sorted(self.edges), "genus": self.genus()}


@dataclass(frozen=True)
class InvariantReport:
    """Genus and real-locus invariants of a graph with a real structure."""

    genus: int
    s_prime: int
    isolated_real_edge_count: int
    s: int
    a: int
    components_of_real_locus: tuple[SubgraphRef, ...]

    @property
    def gsa(self) -> tuple[int, int, int]:
        return (self.genus, self.s, self.a)

    def violations(self) -> list[str]:
        """Constraints between g, s and a that fail (always empty for a valid graph)."""
        g, s, a = self.gsa
        found = []
        if (s - g - 1) % 2:
            found.append(f"s={s} is not congruent to g+1={g + 1} mod 2")
        if not 0 <= s <= g + 1:
            found.append(f"s={s} is outside [0, g+1={g + 1}]")
        if a == 1 and s > g - 1:
            found.append(f"a=1 but s={s} exceeds g-1={g - 1}")
        if a == 0 and s < 1:
            found.append("a=0 but s=0")
        return found

    def constraints_hold(self) -> bool:
        return not self.violations()

    def as_dict(self) -> dict:
        return {
            "genus": self.genus,
            "s_prime": self.s_prime,
            "isolated_real_edges": self.isolated_real_edge_count,
            "s": self.s,
            "a": self.a,
            "real_locus_components": [c.as_dict() for c in self.components_of_real_locus],
        }


def validate(raw: typing.Mapping[str, typing.Any]) -> RealGraph:
    """Build a RealGraph from the JSON interchange form, rejecting anything that violates the axioms."""
    if not isinstance(raw, typing.Mapping):
        raise errors.MalformedGraphError(f"Graph data must be an object, got {type(raw).__name__}")
    vertices = raw.get("vertices", [])
    edges = raw.get("edges", [])
    if not isinstance(vertices, list) or not all(isinstance(v, str) for v in vertices):
        raise errors.MalformedGraphError("'vertices' must be a list of string ids")
    if not isinstance(edges, list):
        raise errors.MalformedGraphError("'edges' must be a list of edge objects")
    ends: dict[str, list[str]] = {}
    for entry in edges:
        if not isinstance(entry, typing.Mapping) or not isinstance(entry.get("id"), str):
            raise errors.MalformedGraphError(f"Edge entry must be an object with a string 'id', got {entry!r}")
        e = entry["id"]
        pair = entry.get("ends")
        if not isinstance(pair, list) or not all(isinstance(x, str) for x in pair):
            raise errors.MalformedGraphError(f"Edge {e!r} must have a list of string 'ends'", witness=e)
        if e in ends:
            raise errors.MalformedGraphError(f"Duplicate edge id {e!r}", witness=e)
        ends[e] = pair
    sigma_v = raw.get("sigma_v", {})
    sigma_e = raw.get("sigma_e", {})
    for name, sigma in (("sigma_v", sigma_v), ("sigma_e", sigma_e)):
        if not isinstance(sigma, typing.Mapping) or not all(isinstance(y, str) for y in sigma.values()):
            raise errors.MalformedGraphError(f"'{name}' must map string ids to string ids")
    return RealGraph(vertices, ends, sigma_v, sigma_e)


def serialize(G: RealGraph) -> dict:
    """JSON interchange form with complete involution maps."""
    return {
        "vertices": list(G.vertices),
        "edges": [{"id": e, "ends": list(G.ends(e))} for e in G.edges],
        "sigma_v": {v: G.conj_vertex(v) for v in G.vertices},
        "sigma_e": {e: G.conj_edge(e) for e in G.edges},
    }


def genus(G: Graph) -> int:
    return G.genus()


def real_locus(G: RealGraph) -> SubgraphRef:
    """Real vertices together with the non-isolated real edges."""
    real = frozenset(G.real_vertices)
    return SubgraphRef(
        G,
        real,
        frozenset(e for e in G.edges if G.is_real_edge(e) and set(G.ends(e)) <= real),
    )


def real_locus_components(G: RealGraph) -> list[SubgraphRef]:
    return real_locus(G).components()


def _non_real_connection(G: RealGraph) -> int:
    """1 iff some non-real vertex reaches its conjugate avoiding real vertices and real edges."""
    non_real = G.non_real_vertices
    if not non_real:
        return 0
    edges = [e for e in G.edges if not G.is_real_edge(e) and not any(G.is_real_vertex(x) for x in G.ends(e))]
    component = {}
    for i, vs in enumerate(SubgraphRef(G, frozenset(non_real), frozenset(edges)).as_graph().components()):
        for v in vs:
            component[v] = i
    return int(any(component[v] == component[G.conj_vertex(v)] for v in non_real))


def invariants(G: RealGraph) -> InvariantReport:
    components = tuple(real_locus_components(G))
    isolated = len(G.isolated_real_edges)
    s = isolated + sum(c.genus() + 1 for c in components)
    report = InvariantReport(
        genus=G.genus(),
        s_prime=len(components),
        isolated_real_edge_count=isolated,
        s=s,
        a=_non_real_connection(G),
        components_of_real_locus=components,
    )
    log.debug("invariants of %r: g=%d s=%d a=%d", G, report.genus, report.s, report.a)
    return report


# proof calculus: plain graphs and subgraphs without real structure


def induced_subgraph(G: Graph, W: typing.Iterable[str]) -> SubgraphRef:
    """G[W]: the vertices W and every edge with both ends in W."""
    vertices = frozenset(W)
    return SubgraphRef(G, vertices, frozenset(e for e in G.edges if set(G.ends(e)) <= vertices))


def edge_span(G: Graph, S: typing.Iterable[str]) -> SubgraphRef:
    """G[S]: the edges S and their ends."""
    edges = frozenset(S)
    return SubgraphRef(G, frozenset(x for e in edges for x in G.ends(e)), edges)


def delete_edges(G: Graph, S: typing.Iterable[str]) -> Graph:
    """G minus S: all vertices, edges outside S; possibly disconnected."""
    removed = set(S)
    for e in sorted(removed):
        G.ends(e)
    return Graph(G.vertices, {e: G.ends(e) for e in G.edges if e not in removed})


def contract_complement(G: Graph, S: typing.Iterable[str]) -> Graph:
    """G(S): contract every edge outside S, naming each merged vertex after its least member."""
    edges = set(S)
    representative = {}
    for vs in delete_edges(G, edges).components():
        for v in vs:
            representative[v] = min(vs)
    return Graph(
        sorted(set(representative.values())),
        {e: tuple(representative[x] for x in G.ends(e)) for e in sorted(edges)},
    )


def genus_decomposition_check(G: Graph, S: typing.Iterable[str]) -> bool:
    """Whether g(G) = g(G(S)) + g(G minus S)."""
    edges = set(S)
    return G.genus() == contract_complement(G, edges).genus() + delete_edges(G, edges).genus()
