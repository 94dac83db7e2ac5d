"""Finite unit-length models of rational metric graphs."""

from __future__ import annotations

import dataclasses
import logging
import math
import typing
from dataclasses import dataclass, field
from fractions import Fraction

from realchip import config, errors, utils
from realchip.builders.subdivision import chain_vertex, subdivide_edges
from realchip.divisor import Divisor, PotentialFunction
from realchip.graph import RealGraph
from realchip.metric.graph import QDivisor, QMetricGraph, QPoint
from realchip.real import conjugate

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class ModelReduction:
    """
    A metric graph scaled by `scale` and cut into unit edges. Every point whose offset is a multiple of 1 / scale is
    a vertex of `subdivided`; `point_map` lists the vertices of the points the model was requested for.
    """

    metric: QMetricGraph
    scale: int
    subdivided: RealGraph
    point_map: dict[QPoint, str]
    _points: dict[str, QPoint] = field(repr=False, compare=False)

    def parts(self, e: str) -> int:
        """Number of unit edges replacing edge e."""
        return int(self.metric.length(e) * self.scale)

    def chain(self, e: str) -> list[str]:
        """Model vertices along edge e from the start to the end of its orientation."""
        a, b = self.metric.orientation(e)
        n = self.parts(e)
        return [a, *(chain_vertex(e, i) for i in range(1, n)), b]

    def vertex_of(self, p: QPoint) -> str:
        p = self.metric.normalize(p)
        if p.offset is None:
            return p.ident
        position = p.offset * self.scale
        if position.denominator != 1:
            raise errors.InvalidPointError(f"{p!r} is not a vertex of the model at scale {self.scale}")
        return chain_vertex(p.ident, int(position))

    def point_of(self, v: str) -> QPoint:
        try:
            return self._points[v]
        except KeyError:
            raise errors.UnknownVertexError(f"Unknown model vertex {v!r}", witness=v) from None

    def to_divisor(self, D: QDivisor) -> Divisor:
        values: dict[str, int] = {}
        for p, x in D.values.items():
            v = self.vertex_of(p)
            values[v] = values.get(v, 0) + x
        return Divisor(self.subdivided, values)

    def from_divisor(self, D: Divisor) -> QDivisor:
        return QDivisor(self.metric, [(self.point_of(v), x) for v, x in D.items() if x])

    def function(self, f: PotentialFunction) -> PiecewiseLinearFunction:
        return PiecewiseLinearFunction(self, f)


def reduce_to_model(
    metric: QMetricGraph,
    supports: typing.Iterable[QPoint] = (),
    refine: int = 1,
    budget: config.Budget | None = None,
) -> ModelReduction:
    """
    Scale by the least common multiple of all length and offset denominators (times refine) and subdivide every
    edge into unit edges. Loops are always cut into at least two edges, since a loop moves no chips while the
    points on it are still points of the metric graph.
    """
    if refine < 1:
        raise errors.InvalidParameterError(f"Refinement factor must be positive, got {refine}")
    budget = config.resolve(budget)
    points = [metric.normalize(p) for p in supports]
    scale = utils.lcm_of_denominators(
        [*metric.lengths.values(), *(p.offset for p in points if p.offset is not None)]
    ) * refine
    if any(metric.model.is_loop(e) and metric.length(e) * scale == 1 for e in metric.model.edges):
        scale *= 2
    parts = {e: int(length * scale) for e, length in metric.lengths.items()}
    if sum(parts.values()) > budget.model_cap:
        raise errors.ModelBudgetExceededError(
            f"Model at scale {scale} has {sum(parts.values())} unit edges, cap is {budget.model_cap}"
        )
    starts = {e: metric.orientation(e)[0] for e in metric.model.edges}
    subdivided = subdivide_edges(metric.model, parts, starts)
    vertex_points = {v: QPoint(v) for v in metric.model.vertices}
    for e, n in parts.items():
        for i in range(1, n):
            vertex_points[chain_vertex(e, i)] = QPoint(e, Fraction(i, scale))
    reduction = ModelReduction(metric, scale, subdivided, {}, vertex_points)
    reduction = dataclasses.replace(reduction, point_map={p: reduction.vertex_of(p) for p in points})
    log.debug("model of %r at scale %d has %d vertices", metric, scale, len(subdivided.vertices))
    return reduction


class PiecewiseLinearFunction:
    """Rational function on a metric graph, linear with integer slope on each unit edge of a model."""

    __slots__ = ("reduction", "potential")

    def __init__(self, reduction: ModelReduction, potential: PotentialFunction):
        if potential.graph is not reduction.subdivided and potential.graph != reduction.subdivided:
            raise errors.GraphMismatchError(f"{potential!r} does not live on the model")
        self.reduction = reduction
        self.potential = potential

    def __repr__(self) -> str:
        return f"PiecewiseLinearFunction(scale={self.reduction.scale})"

    def __call__(self, p: QPoint) -> Fraction:
        reduction = self.reduction
        p = reduction.metric.normalize(p)
        if p.offset is None:
            return Fraction(self.potential[p.ident], reduction.scale)
        position = p.offset * reduction.scale
        i = math.floor(position)
        chain = reduction.chain(p.ident)
        left = self.potential[chain[i]]
        right = self.potential[chain[i + 1]]
        return (left + (position - i) * (right - left)) / reduction.scale

    def slopes(self, e: str) -> list[int]:
        """Slopes on the unit pieces of edge e, along its orientation."""
        values = [self.potential[v] for v in self.reduction.chain(e)]
        return [b - a for a, b in zip(values, values[1:])]

    def conjugate(self) -> PiecewiseLinearFunction:
        return PiecewiseLinearFunction(self.reduction, conjugate(self.potential))

    def is_real(self) -> bool:
        return self.conjugate().potential == self.potential

    def is_constant(self) -> bool:
        return self.potential.is_constant()
