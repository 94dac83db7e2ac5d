"""
Seeded property fuzzing over random graphs with real structure.

Each property takes a generated graph and a seeded random source and returns None when the property holds or a
message describing the violation. Failing graphs are shrunk greedily by deleting edge and vertex orbits while the
graph stays valid and the property keeps failing.
"""

from __future__ import annotations

import logging
import random
import typing
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

from realchip import config, errors
from realchip.builders import edge_split, random_real_graph, subdivide
from realchip.divisor import (
    Divisor,
    PotentialFunction,
    canonical_divisor,
    laplacian,
    linearly_equivalent,
    q_reduce,
    rank,
)
from realchip.graph import (
    RealGraph,
    genus_decomposition_check,
    invariants,
    real_locus,
    serialize,
)
from realchip.metric import QDivisor, QMetricGraph, QPoint, metric_invariants, metric_rank, metric_real_rank
from realchip.real import (
    conjugate,
    find_real_g12,
    is_real,
    is_totally_real,
    parity_signature,
    real_rank,
    real_witness,
    symmetrize,
    totally_real_reduction,
    vertex_pair_reduce,
)

log = logging.getLogger(__name__)

Check = typing.Callable[[RealGraph, random.Random, config.Budget], "str | None"]


@dataclass(frozen=True)
class Property:
    name: str
    profile: str
    check: Check
    # graph size used by the property regardless of the requested bounds (expensive properties)
    size_limit: tuple[int, int] | None = None


def _random_potential(G: RealGraph, rng: random.Random, bound: int = 2) -> PotentialFunction:
    return PotentialFunction(G, {v: rng.randint(-bound, bound) for v in G.vertices})


def _random_divisor(G: RealGraph, rng: random.Random, bound: int = 2) -> Divisor:
    return Divisor(G, {v: rng.randint(-bound, bound) for v in G.vertices})


def _real_potential(G: RealGraph, rng: random.Random, bound: int = 2) -> PotentialFunction:
    f = _random_potential(G, rng, bound)
    return f.maximum(conjugate(f))


def _real_divisor(G: RealGraph, rng: random.Random, bound: int = 2) -> Divisor:
    D = _random_divisor(G, rng, bound)
    return D + conjugate(D)


def _real_effective(G: RealGraph, rng: random.Random, degree: int) -> Divisor:
    """Random real effective divisor of at most the given degree, built from real vertices and pairs."""
    atoms = [(v,) for v in G.real_vertices] + list(G.vertex_pairs())
    values: dict[str, int] = {}
    remaining = degree
    while remaining > 0 and atoms:
        atom = rng.choice(atoms)
        if len(atom) > remaining:
            break
        for v in atom:
            values[v] = values.get(v, 0) + 1
        remaining -= len(atom)
    return Divisor(G, values)


def check_gsa_constraints(G, rng, budget):
    violations = invariants(G).violations()
    return "; ".join(violations) or None


def check_genus_decomposition(G, rng, budget):
    S = [e for e in G.edges if rng.random() < 0.5]
    if not genus_decomposition_check(G, S):
        return f"genus decomposition fails for S={S}"
    return None


def check_real_locus_fixed(G, rng, budget):
    locus = real_locus(G)
    moved = [v for v in locus.vertices if G.conj_vertex(v) != v] + [e for e in locus.edges if G.conj_edge(e) != e]
    return f"real locus not fixed at {sorted(moved)}" if moved else None


def check_reduce_class_invariant(G, rng, budget):
    D = _random_divisor(G, rng)
    moved = D + laplacian(G, _random_potential(G, rng))
    reduced, f = q_reduce(D)
    if D + laplacian(G, f) != reduced.divisor:
        return f"q_reduce witness does not move {D!r} to its reduced form"
    if any(reduced.divisor[v] < 0 for v in G.vertices if v != reduced.base_vertex):
        return f"reduced form {reduced.divisor!r} is negative away from the base vertex"
    if q_reduce(moved)[0] != reduced:
        return f"{D!r} and {moved!r} have different reduced forms"
    return None


def check_parity(G, rng, budget):
    D = _real_divisor(G, rng)
    moved = D + laplacian(G, _real_potential(G, rng))
    if parity_signature(D) != parity_signature(moved):
        return f"parity signature changes between {D!r} and {moved!r}"
    if not parity_signature(canonical_divisor(G)).is_even():
        return "canonical divisor has an odd component"
    return None


def check_real_witness(G, rng, budget):
    D1 = _real_divisor(G, rng)
    f0 = _random_potential(G, rng)
    if not is_real(D1 + laplacian(G, f0)):
        f0 = f0 + conjugate(f0)
    D2 = D1 + laplacian(G, f0 + PotentialFunction(G, dict.fromkeys(G.vertices, rng.randint(-3, 3))))
    f = real_witness(D1, D2)
    if D1 + laplacian(G, f) != D2:
        return f"witness does not move {D1!r} to {D2!r}"
    return None


def check_real_rank(G, rng, budget):
    D = _real_effective(G, rng, rng.randint(0, 3))
    if real_rank(D, budget) < rank(D, budget):
        return f"real rank of {D!r} is below its rank"
    return None


def check_symmetrize(G, rng, budget):
    D = _real_effective(G, rng, rng.randint(0, 3))
    f = _random_potential(G, rng, 1)
    moved = D + laplacian(G, f)
    if moved.is_effective():
        E = Divisor(G, {v: max(0, min(moved[v], moved[G.conj_vertex(v)])) for v in G.vertices})
        g, result = symmetrize(D, f, E)
        if not (is_real(g) and is_real(result) and result.is_effective() and result >= E):
            return f"symmetrization of {f!r} fails for {D!r}"
    return None


def check_totally_real(G, rng, budget):
    for v, _ in G.vertex_pairs():
        w, f = vertex_pair_reduce(G, v)
        if Divisor.from_vertices(G, v, G.conj_vertex(v)) + laplacian(G, f) != Divisor.from_vertices(G, w, w):
            return f"pair reduction witness for {v!r} is wrong"
    D = _real_effective(G, rng, rng.randint(0, 4))
    reduced, f = totally_real_reduction(D)
    if not (is_totally_real(reduced) and reduced.is_effective() and is_real(f)):
        return f"reduction of {D!r} is not totally real effective"
    if linearly_equivalent(D, reduced) is None:
        return f"reduction of {D!r} is not equivalent to it"
    return None


def check_g12(G, rng, budget):
    D = find_real_g12(G, budget)
    if not (D.degree == 2 and D.is_effective() and is_real(D) and rank(D, budget) >= 1):
        return f"{D!r} is not a real g12"
    return None


def _subdivision_signature(G: RealGraph) -> tuple:
    valences = sorted((G.valence(v), G.is_real_vertex(v)) for v in G.vertices)
    return len(G.edges), invariants(G).gsa, tuple(valences)


def check_subdivision(G, rng, budget):
    expected = invariants(G).gsa
    for d in (2, 3, 4):
        if invariants(subdivide(G, d)).gsa != expected:
            return f"subdivision by {d} changes (g, s, a)"
    if _subdivision_signature(subdivide(subdivide(G, 2), 3)) != _subdivision_signature(subdivide(G, 6)):
        return "subdividing by 2 then 3 differs from subdividing by 6"
    return None


def check_edge_split(G, rng, budget):
    split = edge_split(G)
    report = invariants(split)
    if report.isolated_real_edge_count or report.gsa != invariants(G).gsa:
        return "edge split changes (g, s, a) or leaves isolated real edges"
    return None


def random_metric(G: RealGraph, rng: random.Random, max_denominator: int = 4) -> QMetricGraph:
    """Random rational lengths in (0, 1], equal on conjugate edges."""
    lengths: dict[str, Fraction] = {}
    for e in G.edges:
        if G.conj_edge(e) in lengths:
            lengths[e] = lengths[G.conj_edge(e)]
        else:
            q = rng.randint(1, max_denominator)
            lengths[e] = Fraction(rng.randint(1, q), q)
    return QMetricGraph(G, lengths)


def check_metric_refinement(G, rng, budget):
    metric = random_metric(G, rng)
    violations = metric_invariants(metric).violations()
    if violations:
        return "; ".join(violations)
    D = QDivisor(metric, [(QPoint(rng.choice(G.vertices)), 1)] if rng.random() < 0.8 else [])
    ranks = {metric_rank(D, refine, budget) for refine in (1, 2, 3)}
    if len(ranks) > 1:
        return f"metric rank of {D!r} changes under refinement: {sorted(ranks)}"
    real = QDivisor(metric, [(QPoint(v), 1) for v in G.real_vertices[:1]])
    real_ranks = {metric_real_rank(real, refine, budget) for refine in (1, 2, 3)}
    if len(real_ranks) > 1:
        return f"metric real rank of {real!r} changes under refinement: {sorted(real_ranks)}"
    return None


PROPERTIES: dict[str, Property] = {
    p.name: p
    for p in [
        Property("gsa_constraints", "general", check_gsa_constraints),
        Property("genus_decomposition", "general", check_genus_decomposition),
        Property("real_locus_fixed", "general", check_real_locus_fixed),
        Property("reduce_class_invariant", "general", check_reduce_class_invariant),
        Property("parity", "general", check_parity),
        Property("real_witness", "general", check_real_witness),
        Property("real_rank", "general", check_real_rank, size_limit=(5, 7)),
        Property("symmetrize", "general", check_symmetrize),
        Property("totally_real", "m_graph", check_totally_real),
        Property("g12", "strong_m_graph", check_g12),
        Property("subdivision", "general", check_subdivision),
        Property("edge_split", "general", check_edge_split),
        Property("metric_refinement", "general", check_metric_refinement, size_limit=(4, 5)),
    ]
}


@dataclass(frozen=True)
class Counterexample:
    property: str
    seed: int
    message: str
    graph: dict

    def as_dict(self) -> dict:
        return {"property": self.property, "seed": self.seed, "message": self.message, "graph": self.graph}


@dataclass
class FuzzReport:
    trials: int
    passed: dict[str, int] = field(default_factory=dict)
    skipped: dict[str, int] = field(default_factory=dict)
    failures: list[Counterexample] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def as_dict(self) -> dict:
        return {
            "trials": self.trials,
            "passed": dict(sorted(self.passed.items())),
            "skipped": dict(sorted(self.skipped.items())),
            "failures": [c.as_dict() for c in self.failures],
            "ok": self.ok,
        }


def trial_seed(seed: int, trial: int) -> int:
    return seed * 1_000_000 + trial


def _evaluate(prop: Property, G: RealGraph, seed: int, budget: config.Budget) -> str | None:
    """Run a property; domain errors other than budget exhaustion count as violations."""
    try:
        return prop.check(G, random.Random(seed), budget)
    except errors.BudgetError:
        raise
    except errors.RealChipError as exc:
        return f"{exc.__class__.__name__}: {exc}"


def _orbit_deletions(G: RealGraph) -> typing.Iterator[RealGraph]:
    """Valid graphs obtained by deleting one edge orbit or one vertex orbit with its edges."""
    for e in G.edges:
        if e > G.conj_edge(e):
            continue
        orbit = {e, G.conj_edge(e)}
        try:
            yield _without(G, set(), orbit)
        except errors.GraphError:
            continue
    for v in G.vertices:
        if v > G.conj_vertex(v) or len(G.vertices) <= 1:
            continue
        orbit = {v, G.conj_vertex(v)}
        try:
            yield _without(G, orbit, {e for e in G.edges if set(G.ends(e)) & orbit})
        except errors.GraphError:
            continue


def _without(G: RealGraph, vertices: set[str], edges: set[str]) -> RealGraph:
    return RealGraph(
        [v for v in G.vertices if v not in vertices],
        {e: G.ends(e) for e in G.edges if e not in edges},
        {v: G.conj_vertex(v) for v in G.vertices if v not in vertices},
        {e: G.conj_edge(e) for e in G.edges if e not in edges},
    )


def shrink(prop: Property, G: RealGraph, seed: int, budget: config.Budget) -> tuple[RealGraph, str]:
    """Greedily delete orbits while the property keeps failing."""
    message = _evaluate(prop, G, seed, budget)
    if message is None:
        raise ValueError(f"Property {prop.name} holds for seed {seed}, nothing to shrink")
    improved = True
    while improved:
        improved = False
        for candidate in _orbit_deletions(G):
            try:
                candidate_message = prop.check(candidate, random.Random(seed), budget)
            except (errors.BudgetError, errors.StructureError):
                # too expensive, or no longer in the graph class the property is about
                continue
            except errors.RealChipError as exc:
                candidate_message = f"{exc.__class__.__name__}: {exc}"
            if candidate_message is not None:
                G, message, improved = candidate, candidate_message, True
                break
    return G, message


def _run_trial(
    args: tuple[int, int, int, tuple[str, ...], config.Budget]
) -> tuple[list[str], list[str], list[Counterexample]]:
    seed, max_vertices, max_edges, names, budget = args
    passed, skipped, failures = [], [], []
    graphs: dict[tuple[str, int, int], RealGraph] = {}
    for name in names:
        prop = PROPERTIES[name]
        bounds = (max_vertices, max_edges)
        if prop.size_limit is not None:
            bounds = (min(max_vertices, prop.size_limit[0]), min(max_edges, prop.size_limit[1]))
        key = (prop.profile, *bounds)
        if key not in graphs:
            graphs[key] = random_real_graph(seed, *bounds, profile=prop.profile)
        try:
            message = _evaluate(prop, graphs[key], seed, budget)
        except errors.BudgetError:
            skipped.append(name)
            continue
        if message is None:
            passed.append(name)
        else:
            G, message = shrink(prop, graphs[key], seed, budget)
            log.debug("property %s fails for seed %d: %s", name, seed, message)
            failures.append(Counterexample(name, seed, message, serialize(G)))
    return passed, skipped, failures


def run_fuzz(
    seed: int = 0,
    trials: int = 100,
    max_vertices: int = 10,
    max_edges: int = 16,
    properties: typing.Sequence[str] | None = None,
    jobs: int = 1,
    budget: config.Budget | None = None,
) -> FuzzReport:
    """Run the selected properties (all by default) on `trials` seeded graphs."""
    names = tuple(PROPERTIES) if not properties or "all" in properties else tuple(properties)
    unknown = [name for name in names if name not in PROPERTIES]
    if unknown:
        raise errors.InvalidParameterError(f"Unknown properties {unknown}, expected some of {sorted(PROPERTIES)}")
    budget = config.resolve(budget)
    tasks = [(trial_seed(seed, trial), max_vertices, max_edges, names, budget) for trial in range(trials)]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as executor:
            results = list(executor.map(_run_trial, tasks))
    else:
        results = [_run_trial(task) for task in tasks]
    report = FuzzReport(trials)
    for passed, skipped, failures in results:
        for name in passed:
            report.passed[name] = report.passed.get(name, 0) + 1
        for name in skipped:
            report.skipped[name] = report.skipped.get(name, 0) + 1
        report.failures += failures
    log.debug("fuzzed %d trials: %d failures", trials, len(report.failures))
    return report
