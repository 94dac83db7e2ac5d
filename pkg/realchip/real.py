"""
Real divisor theory: conjugation, real rank, symmetrization of potentials and the reductions available on M-graphs.
"""

from __future__ import annotations

import logging
import typing
from dataclasses import dataclass

from realchip import config, errors, utils
from realchip.budget import EnumerationBudget
from realchip.divisor import (
    Divisor,
    PotentialFunction,
    RankCertificate,
    VertexFunction,
    complete_linear_system,
    laplacian,
    linearly_equivalent,
    q_reduce,
    rank,
)
from realchip.graph import RealGraph, invariants, real_locus_components

log = logging.getLogger(__name__)

VF = typing.TypeVar("VF", bound=VertexFunction)


def _real_graph(x: VertexFunction) -> RealGraph:
    if not isinstance(x.graph, RealGraph):
        raise errors.GraphMismatchError(f"{x!r} lives on a graph without real structure")
    return x.graph


def conjugate(x: VF) -> VF:
    """Pull back along the vertex involution."""
    G = _real_graph(x)
    return x.__class__(G, {v: x.values[G.conj_vertex(v)] for v in G.vertices})


def is_real(x: VertexFunction) -> bool:
    return conjugate(x) == x


def is_totally_real(D: Divisor) -> bool:
    G = _real_graph(D)
    return all(G.is_real_vertex(v) for v in D.support())


def _require_real(D: Divisor):
    if not is_real(D):
        raise errors.NotRealError(f"{D!r} is not invariant under conjugation")


def count_real_effective(G: RealGraph, degree: int) -> int:
    """Number of real effective divisors of the given degree."""
    pairs = len(G.vertex_pairs())
    real = len(G.real_vertices)
    return sum(
        utils.count_compositions(p, pairs) * utils.count_compositions(degree - 2 * p, real)
        for p in range(degree // 2 + 1)
    )


def real_effective_divisors(G: RealGraph, degree: int) -> typing.Iterator[Divisor]:
    """
    All real effective divisors of the given degree. These are sums of real vertices and conjugate pairs v + v';
    divisors with more pair atoms come later.
    """
    pairs = G.vertex_pairs()
    real = G.real_vertices
    for p in range(degree // 2 + 1):
        for pair_coefficients in utils.compositions(p, len(pairs)):
            for real_coefficients in utils.compositions(degree - 2 * p, len(real)):
                values = dict(zip(real, real_coefficients))
                for (v, w), k in zip(pairs, pair_coefficients):
                    values[v] = k
                    values[w] = k
                yield Divisor(G, values)


def real_rank_certificate(D: Divisor, budget: config.Budget | None = None) -> RankCertificate:
    """
    Real rank of a real divisor: the largest r such that every real effective E of degree r is dominated by some
    real member of |D|. Degrees without any real effective divisor are passed, and the result never exceeds deg(D).
    """
    G = _real_graph(D)
    _require_real(D)
    if D.degree < 0:
        return RankCertificate(-1, Divisor.zero(G))
    budget = config.resolve(budget)
    members = [M for M in complete_linear_system(D, budget) if is_real(M)]
    if not members:
        return RankCertificate(-1, Divisor.zero(G))
    with EnumerationBudget(budget.enumeration_cap, label="real rank") as tracker:
        for r in range(1, D.degree + 1):
            tracker.precheck(count_real_effective(G, r))
            for E in tracker.track(real_effective_divisors(G, r)):
                if not any(M >= E for M in members):
                    return RankCertificate(r - 1, E)
    return RankCertificate(D.degree, None)


def real_rank(D: Divisor, budget: config.Budget | None = None) -> int:
    return real_rank_certificate(D, budget).rank


def symmetrize(D: Divisor, f: PotentialFunction, E: Divisor) -> tuple[PotentialFunction, Divisor]:
    """
    Turn a potential f with D + Laplacian(f) effective and at least E into a real one: g = max(f, conj f) gives a
    real effective D' = D + Laplacian(g) with D' at least E.
    """
    G = _real_graph(D)
    if not is_real(D):
        raise errors.PreconditionViolatedError(f"{D!r} is not real")
    if not (is_real(E) and E.is_effective()):
        raise errors.PreconditionViolatedError(f"{E!r} is not real effective")
    moved = D + laplacian(G, f)
    if not (moved.is_effective() and moved >= E):
        raise errors.PreconditionViolatedError(f"D + Laplacian(f) = {moved!r} does not dominate {E!r}")
    g = f.maximum(conjugate(f))
    result = D + laplacian(G, g)
    if not (is_real(result) and result.is_effective() and result >= E):
        raise errors.TheoremViolationError(f"Symmetrized divisor {result!r} is not a real effective bound of {E!r}")
    return g, result


def real_witness(D1: Divisor, D2: Divisor) -> PotentialFunction:
    """Potential f, zero at the base vertex, with D1 + Laplacian(f) = D2; it is real for real D1 and D2."""
    for D in (D1, D2):
        _require_real(D)
    f = linearly_equivalent(D1, D2)
    if f is None:
        raise errors.NotEquivalentError(f"{D1!r} and {D2!r} are not linearly equivalent")
    if not is_real(f):
        raise errors.TheoremViolationError(f"Witness {f!r} between real divisors is not real")
    return f


@dataclass(frozen=True)
class ParitySignature:
    """Degree of a divisor on each real-locus component mod 2, components ordered by least vertex id."""

    parities: tuple[int, ...]

    def is_even(self) -> bool:
        return not any(self.parities)

    def as_list(self) -> list[int]:
        return list(self.parities)


def parity_signature(D: Divisor) -> ParitySignature:
    """Parity signature of a real divisor; invariant under real linear equivalence."""
    G = _real_graph(D)
    _require_real(D)
    return ParitySignature(tuple(D.degree_on(c.vertices) % 2 for c in real_locus_components(G)))


def is_m_graph(G: RealGraph) -> bool:
    report = invariants(G)
    return report.isolated_real_edge_count == 0 and report.s == report.genus + 1


def is_strong_m_graph(G: RealGraph) -> bool:
    report = invariants(G)
    return is_m_graph(G) and report.s_prime == report.genus + 1


def vertex_pair_reduce(G: RealGraph, v: str) -> tuple[str, PotentialFunction]:
    """On an M-graph, a real vertex w and a real potential f with v + conj(v) + Laplacian(f) = 2w."""
    if not is_m_graph(G):
        raise errors.NotMGraphError(f"{G!r} is not an M-graph")
    if G.is_real_vertex(v):
        raise errors.PreconditionViolatedError(f"Vertex {v!r} is real")
    pair = Divisor.from_vertices(G, v, G.conj_vertex(v))
    pair_reduced, pair_potential = q_reduce(pair)
    for w in G.real_vertices:
        reduced, potential = q_reduce(Divisor.from_vertices(G, w, w))
        if reduced == pair_reduced:
            f = (pair_potential - potential).normalized(reduced.base_vertex)
            if not is_real(f):
                raise errors.TheoremViolationError(f"Witness for {v!r} ~ 2 {w!r} is not real")
            log.debug("%s + conjugate ~ 2 %s", v, w)
            return w, f
    raise errors.SearchExhaustedError(f"No real vertex w with {v!r} + {G.conj_vertex(v)!r} ~ 2w on an M-graph")


def totally_real_reduction(D: Divisor) -> tuple[Divisor, PotentialFunction]:
    """
    On an M-graph, a totally real effective D' and a real potential f with D + Laplacian(f) = D'. Each pair v + conj
    v in the support is traded for 2w, smallest support vertex first.
    """
    G = _real_graph(D)
    if not is_m_graph(G):
        raise errors.NotMGraphError(f"{G!r} is not an M-graph")
    if not (is_real(D) and D.is_effective()):
        raise errors.NotRealEffectiveError(f"{D!r} is not real effective")
    current = dict(D.values)
    total = PotentialFunction(G)
    cache: dict[str, tuple[str, PotentialFunction]] = {}
    while True:
        pending = [v for v in G.non_real_vertices if current[v] > 0]
        if not pending:
            break
        v = min(pending)
        pair_key = min(v, G.conj_vertex(v))
        if pair_key not in cache:
            cache[pair_key] = vertex_pair_reduce(G, pair_key)
        w, f = cache[pair_key]
        current[v] -= 1
        current[G.conj_vertex(v)] -= 1
        current[w] += 2
        total = total + f
    result = Divisor(G, current)
    if D + laplacian(G, total) != result:
        raise errors.TheoremViolationError(f"Accumulated potential does not move {D!r} to {result!r}")
    return result, total


@dataclass(frozen=True)
class RealG12:
    """A real effective divisor of degree 2 together with its exact rank."""

    divisor: Divisor
    rank: int

    def as_dict(self) -> dict:
        return {"g12": self.divisor.to_json(), "rank": self.rank}


def real_g12(G: RealGraph, budget: config.Budget | None = None) -> RealG12:
    """
    On a strong M-graph, a real effective divisor of degree 2 and rank at least 1. Candidates 2w, then w1 + w2 for
    real vertices, then v + conj v, in sorted order.
    """
    if not is_strong_m_graph(G):
        raise errors.NotStrongMGraphError(f"{G!r} is not a strong M-graph")
    for D in _g12_candidates(G):
        r = rank(D, budget)
        if r >= 1:
            if G.genus() >= 1 and r != 1:
                raise errors.TheoremViolationError(f"Degree two divisor {D!r} has rank {r} on a curve of genus >= 1")
            return RealG12(D, r)
    raise errors.SearchExhaustedError(f"No real degree two divisor of rank one on strong M-graph {G!r}")


def find_real_g12(G: RealGraph, budget: config.Budget | None = None) -> Divisor:
    return real_g12(G, budget).divisor


def _g12_candidates(G: RealGraph) -> typing.Iterator[Divisor]:
    real = G.real_vertices
    for w in real:
        yield Divisor.from_vertices(G, w, w)
    for i, w1 in enumerate(real):
        for w2 in real[i + 1 :]:
            yield Divisor.from_vertices(G, w1, w2)
    for v, w in G.vertex_pairs():
        yield Divisor.from_vertices(G, v, w)
