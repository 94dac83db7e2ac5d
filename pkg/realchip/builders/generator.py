"""
Seeded random graphs with a real structure.

Structures are assembled orbit by orbit so that every output satisfies the involution axioms by construction.
Vertex ids are r<k> for real vertices and u<k>, u<k>_bar for conjugate pairs; edge ids are k<j> for real edges and
k<j>, k<j>_bar for conjugate edge pairs.
"""

import logging
import random

from realchip import errors
from realchip.graph import RealGraph

log = logging.getLogger(__name__)

PROFILES = ("general", "m_graph", "strong_m_graph", "no_real")


class _Builder:
    __slots__ = ("rng", "max_vertices", "max_edges", "vertices", "ends", "sigma_v", "sigma_e", "_vertex_count")

    def __init__(self, rng: random.Random, max_vertices: int, max_edges: int):
        self.rng = rng
        self.max_vertices = max_vertices
        self.max_edges = max_edges
        self.vertices: list[str] = []
        self.ends: dict[str, tuple[str, str]] = {}
        self.sigma_v: dict[str, str] = {}
        self.sigma_e: dict[str, str] = {}
        self._vertex_count = 0

    @property
    def free_vertices(self) -> int:
        return self.max_vertices - len(self.vertices)

    @property
    def free_edges(self) -> int:
        return self.max_edges - len(self.ends)

    def conj(self, v: str) -> str:
        return self.sigma_v.get(v, v)

    def is_real(self, v: str) -> bool:
        return self.conj(v) == v

    def add_real_vertex(self) -> str:
        v = f"r{self._vertex_count}"
        self._vertex_count += 1
        self.vertices.append(v)
        return v

    def add_vertex_pair(self) -> str:
        v = f"u{self._vertex_count}"
        self._vertex_count += 1
        self.vertices += [v, f"{v}_bar"]
        self.sigma_v[v] = f"{v}_bar"
        self.sigma_v[f"{v}_bar"] = v
        return v

    def _edge_id(self) -> str:
        return f"k{len(self.ends)}"

    def add_fixed_edge(self, a: str, b: str):
        """A real edge: either between real vertices or between a vertex and its conjugate."""
        e = self._edge_id()
        self.ends[e] = (a, b)

    def add_edge_pair(self, a: str, b: str):
        e = self._edge_id()
        self.ends[e] = (a, b)
        self.ends[f"{e}_bar"] = (self.conj(a), self.conj(b))
        self.sigma_e[e] = f"{e}_bar"
        self.sigma_e[f"{e}_bar"] = e

    def choice(self, items):
        return items[self.rng.randrange(len(items))]

    def build(self) -> RealGraph:
        return RealGraph(self.vertices, self.ends, self.sigma_v, self.sigma_e)


def _attach(builder: _Builder, allow_real: bool) -> bool:
    """Add one more orbit joined to the existing graph; False when the budgets leave no room."""
    anchor = builder.choice(builder.vertices)
    options = []
    # a real vertex hangs on one real edge, or on a conjugate edge pair from a non-real anchor
    if allow_real and builder.free_vertices >= 1:
        cost = 1 if builder.is_real(anchor) else 2
        if builder.free_edges >= cost:
            options.append("real")
    if builder.free_vertices >= 2 and builder.free_edges >= 2:
        options.append("pair")
    if not options:
        return False
    if builder.choice(options) == "real":
        v = builder.add_real_vertex()
        if builder.is_real(anchor):
            builder.add_fixed_edge(anchor, v)
        else:
            builder.add_edge_pair(v, anchor)
    else:
        v = builder.add_vertex_pair()
        builder.add_edge_pair(v, anchor)
    return True


def _extra_edge(builder: _Builder, allow_real: bool):
    real = [v for v in builder.vertices if builder.is_real(v)]
    non_real = [v for v in builder.vertices if v < builder.conj(v)]
    kinds = []
    if allow_real and real:
        kinds.append("real")
    if allow_real and non_real:
        kinds.append("isolated")
    if builder.free_edges >= 2:
        kinds.append("pair")
    if not kinds:
        return
    kind = builder.choice(kinds)
    if kind == "real":
        builder.add_fixed_edge(builder.choice(real), builder.choice(real))
    elif kind == "isolated":
        v = builder.choice(non_real)
        builder.add_fixed_edge(v, builder.conj(v))
    else:
        builder.add_edge_pair(builder.choice(builder.vertices), builder.choice(builder.vertices))


def _general(builder: _Builder, allow_real: bool):
    target = builder.rng.randint(1, builder.max_vertices)
    first_real = allow_real and (builder.max_vertices < 2 or builder.max_edges < 1 or builder.rng.random() < 0.5)
    if first_real:
        builder.add_real_vertex()
    else:
        v = builder.add_vertex_pair()
        if allow_real and (builder.max_edges < 2 or builder.rng.random() < 0.5):
            builder.add_fixed_edge(v, builder.conj(v))
        else:
            builder.add_edge_pair(v, builder.conj(v))
    while len(builder.vertices) < target and _attach(builder, allow_real):
        pass
    for _ in range(builder.rng.randint(0, max(builder.free_edges, 0))):
        if builder.free_edges < 1:
            break
        _extra_edge(builder, allow_real)


def _m_graph(builder: _Builder, strong: bool):
    """
    Real trees (with extra real cycles unless strong) joined in a tree pattern by conjugate paths, plus pendant
    conjugate pairs. Each join adds one to the genus and each real component contributes its genus plus one to s,
    so s = g + 1.
    """
    rng = builder.rng
    components = [[builder.add_real_vertex()]]
    while builder.free_vertices >= 1 and builder.free_edges >= 1:
        step = rng.random()
        if step < 0.4:
            # grow a real tree
            component = builder.choice(components)
            anchor = builder.choice(component)
            v = builder.add_real_vertex()
            builder.add_fixed_edge(anchor, v)
            component.append(v)
        elif step < 0.6 and builder.free_edges >= 2:
            # new real component joined to an older one by a conjugate path of length one or two
            anchor = builder.choice(builder.choice(components))
            if builder.free_vertices >= 3 and builder.free_edges >= 4 and rng.random() < 0.5:
                v = builder.add_real_vertex()
                middle = builder.add_vertex_pair()
                builder.add_edge_pair(middle, anchor)
                builder.add_edge_pair(middle, v)
            else:
                v = builder.add_real_vertex()
                builder.add_edge_pair(anchor, v)
            components.append([v])
        elif step < 0.8 and builder.free_vertices >= 2 and builder.free_edges >= 2:
            # pendant conjugate pair
            anchor = builder.choice(builder.vertices)
            builder.add_edge_pair(builder.add_vertex_pair(), anchor)
        elif not strong:
            # real cycle inside a component
            component = builder.choice(components)
            builder.add_fixed_edge(builder.choice(component), builder.choice(component))
        elif rng.random() < 0.2:
            break


def random_real_graph(seed: int, max_vertices: int, max_edges: int, profile: str = "general") -> RealGraph:
    """Deterministic random graph with a real structure within the given vertex and edge budgets."""
    if max_vertices < 1 or max_edges < 0:
        raise errors.InvalidParameterError(
            f"Need max_vertices >= 1 and max_edges >= 0, got {max_vertices}, {max_edges}"
        )
    if profile not in PROFILES:
        raise errors.InvalidParameterError(f"Unknown profile {profile!r}, expected one of {PROFILES}")
    builder = _Builder(random.Random(seed), max_vertices, max_edges)
    if profile == "general":
        _general(builder, allow_real=True)
    elif profile == "no_real":
        if max_vertices < 2 or max_edges < 2:
            raise errors.InvalidParameterError("An empty real locus needs at least two vertices and two edges")
        _general(builder, allow_real=False)
    else:
        _m_graph(builder, strong=profile == "strong_m_graph")
    G = builder.build()
    log.debug("random_real_graph(seed=%d, profile=%s) -> %r", seed, profile, G)
    return G
