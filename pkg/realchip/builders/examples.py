"""Named graph families: realizations of every admissible (g, s, a), the real-rank gap example and plain helpers."""

import logging

from realchip import errors
from realchip.divisor import Divisor
from realchip.graph import Graph, RealGraph

log = logging.getLogger(__name__)


def _bar(x: str) -> str:
    return f"{x}_bar"


class _Draft:
    """Accumulates vertices, edges and conjugations before the graph is validated in one go."""

    def __init__(self):
        self.vertices: list[str] = []
        self.ends: dict[str, tuple[str, str]] = {}
        self.sigma_v: dict[str, str] = {}
        self.sigma_e: dict[str, str] = {}

    def real_vertex(self, v: str):
        self.vertices.append(v)

    def vertex_pair(self, v: str):
        self.vertices += [v, _bar(v)]
        self.sigma_v[v] = _bar(v)
        self.sigma_v[_bar(v)] = v

    def edge_pair(self, e: str, a: str, b: str):
        """Edge e between a and b together with its conjugate between the conjugate ends."""
        self.ends[e] = (a, b)
        self.ends[_bar(e)] = (self.sigma_v.get(a, a), self.sigma_v.get(b, b))
        self.sigma_e[e] = _bar(e)
        self.sigma_e[_bar(e)] = e

    def build(self) -> RealGraph:
        return RealGraph(self.vertices, self.ends, self.sigma_v, self.sigma_e)


def check_admissible(g: int, s: int, a: int):
    """Raise InadmissibleTripleError naming the first constraint on (g, s, a) that fails."""
    if g < 0:
        raise errors.InadmissibleTripleError(f"Genus must be nonnegative, got g={g}")
    if a not in (0, 1):
        raise errors.InadmissibleTripleError(f"a must be 0 or 1, got a={a}")
    if not 0 <= s <= g + 1:
        raise errors.InadmissibleTripleError(f"Need 0 <= s <= g+1, got s={s}, g={g}")
    if (g + 1 - s) % 2:
        raise errors.InadmissibleTripleError(f"Need s = g+1 mod 2, got s={s}, g={g}")
    if a == 0 and s == 0:
        raise errors.InadmissibleTripleError("a=0 requires s >= 1")
    if a == 1 and s > g - 1:
        raise errors.InadmissibleTripleError(f"a=1 requires s <= g-1, got s={s}, g={g}")


def example1(g: int, s: int, a: int) -> RealGraph:
    """Graph with a real structure whose genus, number s and connectivity flag a are exactly (g, s, a)."""
    check_admissible(g, s, a)
    x = (g + 1 - s) // 2
    draft = _Draft()
    if s == 0:
        # two conjugate vertices joined by x conjugate pairs of parallel edges
        draft.vertex_pair("v")
        for i in range(1, x + 1):
            draft.edge_pair(f"e{i}", "v", "v_bar")
        return draft.build()

    # real vertices v1..vs joined consecutively by conjugate pairs of parallel edges
    for i in range(1, s + 1):
        draft.real_vertex(f"v{i}")
    for i in range(1, s):
        draft.edge_pair(f"e{i}", f"v{i}", f"v{i + 1}")
    if a == 0:
        # two conjugate chains of doubled edges hanging off v1
        previous = "v1"
        for i in range(1, x + 1):
            draft.vertex_pair(f"w{i}")
            draft.edge_pair(f"f{i}", previous, f"w{i}")
            draft.edge_pair(f"f{i}'", previous, f"w{i}")
            previous = f"w{i}"
    else:
        # a conjugate pair hanging off vs, joined to its conjugate by x conjugate pairs of edges
        draft.vertex_pair("v")
        draft.edge_pair("f", f"v{s}", "v")
        for i in range(1, x + 1):
            draft.edge_pair(f"f{i}", "v", "v_bar")
    G = draft.build()
    log.debug("example1(g=%d, s=%d, a=%d) -> %r", g, s, a, G)
    return G


def example2(base: Graph, vertex: str) -> tuple[RealGraph, Divisor]:
    """
    Two swapped copies of a plain graph of positive genus hung from a new real vertex v by a conjugate pair of
    edges, with the divisor D = v (rank 0, real rank 1).
    """
    if base.genus() < 1:
        raise errors.GenusTooSmallError(f"Base graph must have genus at least 1, got {base.genus()}")
    if vertex not in base:
        raise errors.UnknownVertexError(f"Unknown vertex {vertex!r}", witness=vertex)
    vertices = ["v"]
    ends: dict[str, tuple[str, str]] = {}
    sigma_v: dict[str, str] = {}
    sigma_e: dict[str, str] = {}
    for u in base.vertices:
        vertices += [f"a:{u}", f"b:{u}"]
        sigma_v[f"a:{u}"] = f"b:{u}"
        sigma_v[f"b:{u}"] = f"a:{u}"
    for e in base.edges:
        x, y = base.ends(e)
        ends[f"a:{e}"] = (f"a:{x}", f"a:{y}")
        ends[f"b:{e}"] = (f"b:{x}", f"b:{y}")
        sigma_e[f"a:{e}"] = f"b:{e}"
        sigma_e[f"b:{e}"] = f"a:{e}"
    ends["e1"] = ("v", f"a:{vertex}")
    ends["e2"] = ("v", f"b:{vertex}")
    sigma_e["e1"] = "e2"
    sigma_e["e2"] = "e1"
    G = RealGraph(vertices, ends, sigma_v, sigma_e)
    return G, Divisor.from_vertices(G, "v")


def identity_structure(G: Graph) -> RealGraph:
    """The graph with the trivial real structure: every vertex and edge real."""
    return RealGraph(G.vertices, {e: G.ends(e) for e in G.edges})


def cycle_graph(n: int) -> Graph:
    """Cycle on n >= 1 vertices c0..c{n-1}; n = 1 is a single loop."""
    if n < 1:
        raise errors.InvalidParameterError(f"A cycle needs at least one vertex, got {n}")
    return Graph([f"c{i}" for i in range(n)], {f"k{i}": (f"c{i}", f"c{(i + 1) % n}") for i in range(n)})


def banana_graph(k: int) -> Graph:
    """Two vertices joined by k parallel edges."""
    if k < 0:
        raise errors.InvalidParameterError(f"Number of edges must be nonnegative, got {k}")
    return Graph(["u", "w"], {f"k{i}": ("u", "w") for i in range(k)})


def path_graph(n: int) -> Graph:
    if n < 1:
        raise errors.InvalidParameterError(f"A path needs at least one vertex, got {n}")
    return Graph([f"p{i}" for i in range(n)], {f"k{i}": (f"p{i}", f"p{i + 1}") for i in range(n - 1)})
