"""
Divisor theory on rational metric graphs, computed on unit models.

Models always contain the midpoints of reflected edges, so the real locus of the metric graph (where reflected
edges contribute isolated real points) is the real locus of the model and the model has no isolated real edges.
"""

import logging
import typing

from realchip import config, errors
from realchip.divisor import has_effective_class, linearly_equivalent, rank
from realchip.graph import InvariantReport, invariants, real_locus_components
from realchip.metric.graph import QDivisor, QMetricGraph, QPoint
from realchip.metric.model import ModelReduction, PiecewiseLinearFunction, reduce_to_model
from realchip.real import (
    ParitySignature,
    real_g12,
    is_real,
    is_totally_real,
    real_rank,
    totally_real_reduction,
)

log = logging.getLogger(__name__)


def real_model(
    metric: QMetricGraph,
    divisors: typing.Iterable[QDivisor] = (),
    refine: int = 1,
    budget: config.Budget | None = None,
) -> ModelReduction:
    """Model containing the supports of the given divisors and the midpoints of reflected edges."""
    points: list[QPoint] = list(metric.midpoints())
    for D in divisors:
        if D.metric is not metric and D.metric != metric:
            raise errors.GraphMismatchError(f"{D!r} lives on a different metric graph")
        points += D.support()
    return reduce_to_model(metric, points, refine, budget)


def metric_invariants(metric: QMetricGraph) -> InvariantReport:
    """Genus and real-locus invariants; each reflected edge contributes its midpoint as a component of genus 0."""
    return invariants(real_model(metric).subdivided)


def is_m_metric_graph(metric: QMetricGraph) -> bool:
    report = metric_invariants(metric)
    return report.s == report.genus + 1


def is_strong_m_metric_graph(metric: QMetricGraph) -> bool:
    report = metric_invariants(metric)
    return report.s_prime == report.genus + 1


def metric_equivalent(
    D1: QDivisor, D2: QDivisor, refine: int = 1, budget: config.Budget | None = None
) -> PiecewiseLinearFunction | None:
    """A piecewise linear F with D1 + Laplacian(F) = D2, or None."""
    reduction = real_model(D1.metric, [D1, D2], refine, budget)
    f = linearly_equivalent(reduction.to_divisor(D1), reduction.to_divisor(D2))
    return None if f is None else reduction.function(f)


def metric_has_effective_class(D: QDivisor, refine: int = 1, budget: config.Budget | None = None) -> bool:
    reduction = real_model(D.metric, [D], refine, budget)
    return has_effective_class(reduction.to_divisor(D))


def metric_rank(D: QDivisor, refine: int = 1, budget: config.Budget | None = None) -> int:
    reduction = real_model(D.metric, [D], refine, budget)
    return rank(reduction.to_divisor(D), budget)


def metric_real_rank(D: QDivisor, refine: int = 1, budget: config.Budget | None = None) -> int:
    if not D.is_real():
        raise errors.NotRealError(f"{D!r} is not invariant under conjugation")
    reduction = real_model(D.metric, [D], refine, budget)
    return real_rank(reduction.to_divisor(D), budget)


def metric_parity_signature(D: QDivisor, refine: int = 1, budget: config.Budget | None = None) -> ParitySignature:
    """
    Degree mod 2 on each component of the real locus. Components are ordered by their least point (vertices
    first, then edge points by edge id and offset), which does not depend on the model.
    """
    if not D.is_real():
        raise errors.NotRealError(f"{D!r} is not invariant under conjugation")
    reduction = real_model(D.metric, [D], refine, budget)
    model_divisor = reduction.to_divisor(D)
    entries = []
    for component in real_locus_components(reduction.subdivided):
        key = min(reduction.point_of(v).sort_key() for v in component.vertices)
        entries.append((key, model_divisor.degree_on(component.vertices) % 2))
    return ParitySignature(tuple(parity for _, parity in sorted(entries)))


def metric_totally_real_reduction(
    D: QDivisor, refine: int = 1, budget: config.Budget | None = None
) -> tuple[QDivisor, PiecewiseLinearFunction]:
    """On an M-metric graph, a totally real effective divisor equivalent to D with a real witness."""
    if not is_m_metric_graph(D.metric):
        raise errors.NotMMetricGraphError(f"{D.metric!r} is not an M-metric graph")
    if not (D.is_real() and D.is_effective()):
        raise errors.NotRealEffectiveError(f"{D!r} is not real effective")
    reduction = real_model(D.metric, [D], refine, budget)
    model_divisor = reduction.to_divisor(D)
    reduced, f = totally_real_reduction(model_divisor)
    if not (is_totally_real(reduced) and is_real(f)):
        raise errors.TheoremViolationError(f"Reduction of {D!r} on the model is not totally real")
    return reduction.from_divisor(reduced), reduction.function(f)


def metric_real_g12(metric: QMetricGraph, budget: config.Budget | None = None) -> tuple[QDivisor, int]:
    """On a strong M-metric graph, a real effective divisor of degree 2 and rank at least 1, with its rank."""
    if not is_strong_m_metric_graph(metric):
        raise errors.NotStrongMMetricGraphError(f"{metric!r} is not a strong M-metric graph")
    reduction = real_model(metric, budget=budget)
    found = real_g12(reduction.subdivided, budget)
    return reduction.from_divisor(found.divisor), found.rank


def metric_find_real_g12(metric: QMetricGraph, budget: config.Budget | None = None) -> QDivisor:
    return metric_real_g12(metric, budget)[0]
