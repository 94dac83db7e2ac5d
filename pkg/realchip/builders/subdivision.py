"""Subdivision of edges into chains, carrying the real structure along."""

import logging
import typing

from realchip import errors
from realchip.graph import RealGraph

log = logging.getLogger(__name__)


def chain_vertex(e: str, i: int) -> str:
    """Id of the i-th interior vertex on the chain replacing edge e."""
    return f"{e}.v{i}"


def chain_edge(e: str, i: int) -> str:
    """Id of the i-th edge (1-based) on the chain replacing edge e."""
    return f"{e}.{i}"


def subdivide_edges(
    G: RealGraph,
    parts: typing.Mapping[str, int],
    starts: typing.Mapping[str, str] | None = None,
) -> RealGraph:
    """
    Replace each edge e by a chain of parts[e] edges (edges not listed stay as they are).

    The chain of e runs from starts[e] (default: the first stored end, or the smaller end id for isolated real
    edges) to the other end. Conjugate edges get conjugate chains and must be split into the same number of parts;
    non-isolated real edges become all-real chains; isolated real edges become chains reversed by the conjugation.
    """
    starts = starts or {}
    vertices = list(G.vertices)
    ends: dict[str, tuple[str, str]] = {}
    sigma_v = {v: G.conj_vertex(v) for v in G.vertices}
    sigma_e: dict[str, str] = {}
    existing = set(G.vertices) | set(G.edges)

    def chain(e: str, a: str, b: str, n: int):
        ids = [a, *(chain_vertex(e, i) for i in range(1, n)), b]
        for i in range(1, n):
            if ids[i] in existing:
                raise errors.MalformedGraphError(f"Subdivision vertex id {ids[i]!r} already exists", witness=ids[i])
            existing.add(ids[i])
            vertices.append(ids[i])
        for i in range(1, n + 1):
            if chain_edge(e, i) in existing:
                raise errors.MalformedGraphError(f"Subdivision edge id {chain_edge(e, i)!r} already exists")
            existing.add(chain_edge(e, i))
            ends[chain_edge(e, i)] = (ids[i - 1], ids[i])
        return ids

    done: set[str] = set()
    for e in G.edges:
        if e in done:
            continue
        conj = G.conj_edge(e)
        done |= {e, conj}
        n = parts.get(e, 1)
        if parts.get(conj, 1) != n:
            raise errors.InvalidParameterError(f"Conjugate edges {e!r} and {conj!r} must be split equally")
        if n < 1:
            raise errors.InvalidParameterError(f"Edge {e!r} must be split into at least one part, got {n}")
        if n == 1:
            for x in {e, conj}:
                ends[x] = G.ends(x)
                sigma_e[x] = G.conj_edge(x)
            continue
        x, y = G.ends(e)
        default = min(x, y) if G.is_isolated_real_edge(e) else x
        a = starts.get(e, default)
        if a not in (x, y):
            raise errors.InvalidParameterError(f"Chain start {a!r} is not an end of edge {e!r}")
        b = y if a == x else x
        ids = chain(e, a, b, n)
        if conj != e:
            conj_ids = chain(conj, G.conj_vertex(a), G.conj_vertex(b), n)
            for i in range(1, n):
                sigma_v[ids[i]] = conj_ids[i]
                sigma_v[conj_ids[i]] = ids[i]
            for i in range(1, n + 1):
                sigma_e[chain_edge(e, i)] = chain_edge(conj, i)
                sigma_e[chain_edge(conj, i)] = chain_edge(e, i)
        elif G.is_isolated_real_edge(e):
            # reflected chain: the i-th vertex is conjugate to the (n-i)-th
            for i in range(1, n):
                sigma_v[ids[i]] = ids[n - i]
            for i in range(1, n + 1):
                sigma_e[chain_edge(e, i)] = chain_edge(e, n + 1 - i)
        else:
            for i in range(1, n):
                sigma_v[ids[i]] = ids[i]
            for i in range(1, n + 1):
                sigma_e[chain_edge(e, i)] = chain_edge(e, i)
    return RealGraph(vertices, ends, sigma_v, sigma_e)


def subdivide(G: RealGraph, d: int) -> RealGraph:
    """G_d: every edge split into d parts."""
    if d < 1:
        raise errors.InvalidParameterError(f"Subdivision degree must be positive, got {d}")
    if d == 1:
        return G
    result = subdivide_edges(G, dict.fromkeys(G.edges, d))
    log.debug("subdivided %r into %r", G, result)
    return result


def edge_split(G: RealGraph) -> RealGraph:
    """Split every isolated real edge at a new real midpoint; the result has no isolated real edges."""
    return subdivide_edges(G, dict.fromkeys(G.isolated_real_edges, 2))
