"""
Divisors, the Laplacian and chip-firing on finite multigraphs.

Sign convention: the Laplacian of f at v is the sum over edges v-w of f(w) - f(v), so D + Laplacian(f) is obtained
from D by firing every vertex f(v) times. Loops never move chips.
"""

from __future__ import annotations

import logging
import typing
from abc import ABC
from dataclasses import dataclass

from realchip import config, errors, utils
from realchip.budget import EnumerationBudget
from realchip.graph import Graph

log = logging.getLogger(__name__)

VF = typing.TypeVar("VF", bound="VertexFunction")


class VertexFunction(ABC):
    """Base class for integer-valued functions on the vertices of a fixed graph."""

    __slots__ = ("graph", "values")

    def __init__(self, graph: Graph, values: typing.Mapping[str, int] | None = None):
        data = dict.fromkeys(graph.vertices, 0)
        for v, x in (values or {}).items():
            if v not in data:
                raise errors.UnknownVertexError(f"Unknown vertex {v!r}", witness=v)
            if isinstance(x, bool) or not isinstance(x, int):
                raise errors.MalformedDivisorError(f"Value at {v!r} must be an integer, got {x!r}")
            data[v] = x
        self.graph = graph
        self.values = data

    def _fields(self) -> list[str]:
        return [f"{v}: {x}" for v, x in self.values.items() if x]

    def __repr__(self) -> str:
        return f"{self.__class__.__name__}({{{', '.join(self._fields())}}})"

    def __getitem__(self, v: str) -> int:
        try:
            return self.values[v]
        except KeyError:
            raise errors.UnknownVertexError(f"Unknown vertex {v!r}", witness=v) from None

    def __eq__(self, other: object) -> bool:
        if type(other) is not type(self):
            return NotImplemented
        return self.values == other.values and (self.graph is other.graph or self.graph == other.graph)

    def __hash__(self) -> int:
        return hash((self.__class__.__name__, tuple(self.values.items())))

    def _check(self, other: VertexFunction):
        if self.graph is not other.graph and self.graph != other.graph:
            raise errors.GraphMismatchError(f"{self!r} and {other!r} live on different graphs")

    def __add__(self: VF, other: VertexFunction) -> VF:
        self._check(other)
        return self.__class__(self.graph, {v: x + other.values[v] for v, x in self.values.items()})

    def __sub__(self: VF, other: VertexFunction) -> VF:
        self._check(other)
        return self.__class__(self.graph, {v: x - other.values[v] for v, x in self.values.items()})

    def __neg__(self: VF) -> VF:
        return self.__class__(self.graph, {v: -x for v, x in self.values.items()})

    def __mul__(self: VF, k: int) -> VF:
        return self.__class__(self.graph, {v: k * x for v, x in self.values.items()})

    __rmul__ = __mul__

    def items(self) -> typing.ItemsView[str, int]:
        return self.values.items()

    def support(self) -> list[str]:
        return [v for v, x in self.values.items() if x]

    def is_zero(self) -> bool:
        return not any(self.values.values())


class Divisor(VertexFunction):
    """Formal integer combination of vertices."""

    __slots__ = ()

    @classmethod
    def zero(cls, graph: Graph) -> Divisor:
        return cls(graph)

    @classmethod
    def from_vertices(cls, graph: Graph, *vertices: str) -> Divisor:
        """Effective divisor with one chip per listed vertex (repetitions allowed)."""
        values: dict[str, int] = {}
        for v in vertices:
            values[v] = values.get(v, 0) + 1
        return cls(graph, values)

    @property
    def degree(self) -> int:
        return sum(self.values.values())

    def degree_on(self, vertices: typing.Iterable[str]) -> int:
        return sum(self[v] for v in vertices)

    def is_effective(self) -> bool:
        return all(x >= 0 for x in self.values.values())

    def __ge__(self, other: Divisor) -> bool:
        self._check(other)
        return all(x >= other.values[v] for v, x in self.values.items())

    def __le__(self, other: Divisor) -> bool:
        return other >= self

    def to_json(self) -> dict[str, int]:
        return {v: x for v, x in self.values.items() if x}

    @classmethod
    def from_json(cls, graph: Graph, raw: object) -> Divisor:
        if not isinstance(raw, typing.Mapping):
            raise errors.MalformedDivisorError(f"Divisor must be an object mapping vertex ids to integers, got {raw!r}")
        return cls(graph, raw)


class PotentialFunction(VertexFunction):
    """Integer function on vertices recording how often each vertex fires."""

    __slots__ = ()

    def is_constant(self) -> bool:
        return len(set(self.values.values())) <= 1

    def normalized(self, base: str) -> PotentialFunction:
        """Shift by a constant so that the value at base is 0 (the Laplacian is unchanged)."""
        shift = self[base]
        return PotentialFunction(self.graph, {v: x - shift for v, x in self.values.items()})

    def maximum(self, other: PotentialFunction) -> PotentialFunction:
        self._check(other)
        return PotentialFunction(self.graph, {v: max(x, other.values[v]) for v, x in self.values.items()})

    def to_json(self) -> dict[str, int]:
        return dict(self.values)


@dataclass(frozen=True)
class ReducedForm:
    """The unique base-vertex-reduced divisor of a linear equivalence class."""

    base_vertex: str
    divisor: Divisor

    @property
    def has_effective_class(self) -> bool:
        return self.divisor[self.base_vertex] >= 0


def base_vertex(G: Graph) -> str:
    """Default base vertex: the least vertex id."""
    return G.vertices[0]


def laplacian(G: Graph, f: PotentialFunction) -> Divisor:
    if f.graph is not G and f.graph != G:
        raise errors.GraphMismatchError(f"{f!r} does not live on {G!r}")
    values = dict.fromkeys(G.vertices, 0)
    for e in G.edges:
        a, b = G.ends(e)
        if a != b:
            values[a] += f.values[b] - f.values[a]
            values[b] += f.values[a] - f.values[b]
    return Divisor(G, values)


def _fire(G: Graph, chips: dict[str, int], potential: dict[str, int], fired: typing.Collection[str], times: int):
    """Fire every vertex of the set the given number of times, in place."""
    for v in fired:
        potential[v] += times
        for _, w in G.incident(v):
            if w not in fired:
                chips[v] -= times
                chips[w] += times


def _unburnt(G: Graph, chips: dict[str, int], q: str) -> tuple[list[str], dict[str, int]]:
    """Run the burning algorithm from q and return the unburnt vertices with their edge counts to burnt ones."""
    burnt = {q}
    burning = dict.fromkeys(G.vertices, 0)
    stack = [q]
    while stack:
        x = stack.pop()
        for _, w in G.incident(x):
            if w == x or w in burnt:
                continue
            burning[w] += 1
            if burning[w] > chips[w]:
                burnt.add(w)
                stack.append(w)
    unburnt = [v for v in G.vertices if v not in burnt]
    return unburnt, {v: burning[v] for v in unburnt}


def q_reduce(D: Divisor, q: str | None = None) -> tuple[ReducedForm, PotentialFunction]:
    """
    Compute the q-reduced divisor linearly equivalent to D together with a potential f with D + Laplacian(f) equal
    to it. The graph must be connected.
    """
    G = D.graph
    q = base_vertex(G) if q is None else q
    if q not in G:
        raise errors.UnknownVertexError(f"Unknown base vertex {q!r}", witness=q)
    if not G.is_connected():
        raise errors.DisconnectedError("Reduced divisors need a connected graph")
    chips = dict(D.values)
    potential = dict.fromkeys(G.vertices, 0)

    # make every vertex except q nonnegative, from the deepest level inwards: firing the ball of radius k-1 only
    # moves chips from level k-1 into level k
    levels = G.bfs_levels(q)
    depth = {v: k for k, level in enumerate(levels) for v in level}
    for k in range(len(levels) - 1, 0, -1):
        times = 0
        for v in levels[k]:
            if chips[v] < 0:
                gain = sum(1 for _, w in G.incident(v) if depth[w] < k)
                times = max(times, -(chips[v] // gain))
        if times:
            _fire(G, chips, potential, {v for v, d in depth.items() if d < k}, times)

    # fire the unburnt set until everything burns
    rounds = 0
    while True:
        unburnt, out = _unburnt(G, chips, q)
        if not unburnt:
            break
        times = min(chips[v] // out[v] for v in unburnt if out[v] > 0)
        _fire(G, chips, potential, set(unburnt), max(times, 1))
        rounds += 1
    log.debug("reduced %r at %r after %d burning rounds", D, q, rounds)
    return ReducedForm(q, Divisor(G, chips)), PotentialFunction(G, potential)


def has_effective_class(D: Divisor, q: str | None = None) -> bool:
    if D.degree < 0:
        return False
    reduced, _ = q_reduce(D, q)
    return reduced.has_effective_class


def linearly_equivalent(D1: Divisor, D2: Divisor) -> PotentialFunction | None:
    """A potential f with D1 + Laplacian(f) = D2 (zero at the base vertex), or None if there is none."""
    D1._check(D2)
    if D1.degree != D2.degree:
        return None
    reduced1, f1 = q_reduce(D1)
    reduced2, f2 = q_reduce(D2)
    if reduced1 != reduced2:
        return None
    return (f1 - f2).normalized(reduced1.base_vertex)


def effective_divisors(G: Graph, degree: int) -> typing.Iterator[Divisor]:
    """All effective divisors of the given degree, in lexicographic order of their coefficient vectors."""
    for coefficients in utils.compositions(degree, len(G.vertices)):
        yield Divisor(G, dict(zip(G.vertices, coefficients)))


def complete_linear_system(D: Divisor, budget: config.Budget | None = None) -> list[Divisor]:
    """All effective divisors linearly equivalent to D."""
    if D.degree < 0:
        return []
    budget = config.resolve(budget)
    G = D.graph
    target, _ = q_reduce(D)
    members = []
    with EnumerationBudget(budget.enumeration_cap, label="complete linear system") as tracker:
        tracker.precheck(utils.count_compositions(D.degree, len(G.vertices)))
        for E in tracker.track(effective_divisors(G, D.degree)):
            if q_reduce(E)[0] == target:
                members.append(E)
    return members


@dataclass(frozen=True)
class RankCertificate:
    """A rank together with an effective divisor E of degree rank + 1 such that |D - E| is empty."""

    rank: int
    obstruction: Divisor | None

    def as_dict(self) -> dict:
        return {
            "rank": self.rank,
            "obstruction": None if self.obstruction is None else self.obstruction.to_json(),
        }


def rank_certificate(D: Divisor, budget: config.Budget | None = None) -> RankCertificate:
    """Baker-Norine rank of D with an obstruction; the obstruction is absent when the rank equals the degree."""
    G = D.graph
    if D.degree < 0:
        return RankCertificate(-1, Divisor.zero(G))
    budget = config.resolve(budget)
    with EnumerationBudget(budget.enumeration_cap, label="rank") as tracker:
        for r in range(D.degree + 1):
            tracker.precheck(utils.count_compositions(r, len(G.vertices)))
            for E in tracker.track(effective_divisors(G, r)):
                if not has_effective_class(D - E):
                    return RankCertificate(r - 1, E)
    return RankCertificate(D.degree, None)


def rank(D: Divisor, budget: config.Budget | None = None) -> int:
    return rank_certificate(D, budget).rank


def canonical_divisor(G: Graph) -> Divisor:
    return Divisor(G, {v: G.valence(v) - 2 for v in G.vertices})
