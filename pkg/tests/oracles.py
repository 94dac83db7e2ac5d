"""Definition-level oracles used to cross-check the chip-firing algorithms."""

import itertools

import networkx as nx
import sympy
from networkx.algorithms import isomorphism
from networkx.utils import UnionFind

from realchip.divisor import Divisor, effective_divisors
from realchip.graph import Graph, RealGraph


class LatticeOracle:
    """Membership in the lattice of principal divisors, by exact solution of the reduced Laplacian system."""

    def __init__(self, G: Graph):
        self.graph = G
        self.base = G.vertices[0]
        self.others = list(G.vertices[1:])
        index = {v: i for i, v in enumerate(self.others)}
        matrix = sympy.zeros(len(self.others), len(self.others))
        for e in G.edges:
            a, b = G.ends(e)
            if a == b:
                continue
            for x, y in ((a, b), (b, a)):
                if x in index:
                    matrix[index[x], index[x]] += 1
                    if y in index:
                        matrix[index[x], index[y]] -= 1
        self.inverse = matrix.inv() if self.others else matrix

    def is_principal(self, D: Divisor) -> bool:
        if D.degree != 0:
            return False
        if not self.others:
            return True
        rhs = sympy.Matrix([D[v] for v in self.others])
        return all(x.is_integer for x in self.inverse * rhs)

    def equivalent(self, D1: Divisor, D2: Divisor) -> bool:
        return self.is_principal(D1 - D2)

    def has_effective_class(self, D: Divisor) -> bool:
        if D.degree < 0:
            return False
        return any(self.equivalent(D, E) for E in effective_divisors(self.graph, D.degree))

    def rank(self, D: Divisor) -> int:
        if not self.has_effective_class(D):
            return -1
        r = 0
        while r < D.degree and all(
            self.has_effective_class(D - E) for E in effective_divisors(self.graph, r + 1)
        ):
            r += 1
        return r


def incidence_graph(G: RealGraph) -> nx.Graph:
    """Simple graph on vertex and edge nodes carrying the real structure, for isomorphism tests."""
    H = nx.Graph()
    for v in G.vertices:
        H.add_node(("v", v), kind="vertex", real=G.is_real_vertex(v))
    for e in G.edges:
        H.add_node(("e", e), kind="edge", real=G.is_real_edge(e))
        a, b = G.ends(e)
        H.add_edge(("e", e), ("v", a), link="end")
        if a != b:
            H.add_edge(("e", e), ("v", b), link="end")
        else:
            H.nodes[("e", e)]["loop"] = True
    for v in G.vertices:
        if G.conj_vertex(v) != v:
            H.add_edge(("v", v), ("v", G.conj_vertex(v)), link="sigma")
    for e in G.edges:
        if G.conj_edge(e) != e:
            H.add_edge(("e", e), ("e", G.conj_edge(e)), link="sigma")
    return H


def real_isomorphic(G1: RealGraph, G2: RealGraph) -> bool:
    matcher = isomorphism.GraphMatcher(
        incidence_graph(G1),
        incidence_graph(G2),
        node_match=lambda x, y: x["kind"] == y["kind"] and x["real"] == y["real"] and x.get("loop") == y.get("loop"),
        edge_match=lambda x, y: x["link"] == y["link"],
    )
    return matcher.is_isomorphic()


def connected_multigraphs(n: int, max_edges: int) -> list[Graph]:
    """
    Every connected loopless multigraph on n vertices x0..x{n-1} with at most max_edges edges, one per isomorphism
    class, in a fixed order. Loops are left out since they do not change the Laplacian.
    """
    pairs = list(itertools.combinations(range(n), 2))
    permutations = list(itertools.permutations(range(n)))
    seen = set()
    graphs = []
    for m in range(n - 1, max_edges + 1):
        for chosen in itertools.combinations_with_replacement(pairs, m):
            components = UnionFind(range(n))
            for a, b in chosen:
                components.union(a, b)
            if len({components[v] for v in range(n)}) > 1:
                continue
            key = min(tuple(sorted(tuple(sorted((p[a], p[b]))) for a, b in chosen)) for p in permutations)
            if key in seen:
                continue
            seen.add(key)
            graphs.append(
                Graph([f"x{i}" for i in range(n)], {f"k{j}": (f"x{a}", f"x{b}") for j, (a, b) in enumerate(chosen)})
            )
    return graphs
