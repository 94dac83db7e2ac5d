"""
Metric graphs with rational edge lengths and a real structure.

Every edge carries an orientation: points on an edge are addressed by their rational distance from the start of
the oriented edge. Conjugate edges are oriented compatibly, so conjugation maps (e, t) to (conjugate edge, t); a
reflected edge is mapped onto itself by t -> length - t.
"""

from __future__ import annotations

import typing
from dataclasses import dataclass
from fractions import Fraction

from realchip import errors, utils
from realchip.graph import RealGraph, serialize, validate

EDGE_KINDS = ("conjugate", "pointwise_real", "reflected")


@dataclass(frozen=True)
class QPoint:
    """A vertex, or an interior point of an edge at a rational offset along its orientation."""

    ident: str
    offset: Fraction | None = None

    @classmethod
    def vertex(cls, v: str) -> QPoint:
        return cls(v)

    @classmethod
    def on_edge(cls, e: str, offset: Fraction | int | str) -> QPoint:
        return cls(e, utils.parse_rational(offset))

    @property
    def is_vertex(self) -> bool:
        return self.offset is None

    def sort_key(self) -> tuple:
        return (0, self.ident, Fraction(0)) if self.offset is None else (1, self.ident, self.offset)

    def __repr__(self) -> str:
        if self.offset is None:
            return f"QPoint({self.ident!r})"
        return f"QPoint({self.ident!r}, {utils.format_rational(self.offset)})"

    def to_json(self) -> list:
        if self.offset is None:
            return ["vertex", self.ident]
        return ["edge", self.ident, utils.format_rational(self.offset)]

    @classmethod
    def from_json(cls, raw: object) -> QPoint:
        if isinstance(raw, list) and len(raw) == 2 and raw[0] == "vertex" and isinstance(raw[1], str):
            return cls.vertex(raw[1])
        if isinstance(raw, list) and len(raw) == 3 and raw[0] == "edge" and isinstance(raw[1], str):
            return cls.on_edge(raw[1], raw[2])
        raise errors.InvalidPointError(f"Point must be ['vertex', id] or ['edge', id, 'p/q'], got {raw!r}")


class QMetricGraph:
    """A graph with a real structure and positive rational edge lengths, compatible with conjugation."""

    __slots__ = ("model", "_lengths", "_orientation")

    def __init__(
        self,
        model: RealGraph,
        lengths: typing.Mapping[str, Fraction | int | str] | None = None,
        kinds: typing.Mapping[str, str] | None = None,
    ):
        lengths = lengths or {}
        self.model = model
        self._lengths: dict[str, Fraction] = {}
        for e in model.edges:
            length = utils.parse_rational(lengths.get(e, 1))
            if length <= 0:
                raise errors.IncompatibleLengthError(f"Edge {e!r} must have positive length, got {length}")
            self._lengths[e] = length
        for e in lengths:
            model.ends(e)
        for e in model.edges:
            if self._lengths[model.conj_edge(e)] != self._lengths[e]:
                raise errors.IncompatibleLengthError(
                    f"Conjugate edges {e!r} and {model.conj_edge(e)!r} have different lengths"
                )
        for e, kind in (kinds or {}).items():
            if kind not in EDGE_KINDS:
                raise errors.InvalidEdgeKindError(f"Unknown edge kind {kind!r} for edge {e!r}")
            if kind != self.kind(e):
                raise errors.InvalidEdgeKindError(f"Edge {e!r} is {self.kind(e)}, tagged {kind}")
        # the smaller edge of a conjugate pair keeps its stored order, its conjugate follows
        self._orientation: dict[str, tuple[str, str]] = {}
        for e in model.edges:
            conj = model.conj_edge(e)
            if e <= conj:
                a, b = model.ends(e)
                if model.is_isolated_real_edge(e):
                    a, b = sorted((a, b))
                self._orientation[e] = (a, b)
                if conj != e:
                    self._orientation[conj] = (model.conj_vertex(a), model.conj_vertex(b))

    def __repr__(self) -> str:
        return f"QMetricGraph(vertices={len(self.model.vertices)}, edges={len(self.model.edges)})"

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, QMetricGraph):
            return NotImplemented
        return self.model == other.model and self._lengths == other._lengths

    def __hash__(self) -> int:
        return hash((self.model, tuple(self._lengths.items())))

    @classmethod
    def unit(cls, model: RealGraph) -> QMetricGraph:
        """The metric graph giving every edge length one."""
        return cls(model)

    def length(self, e: str) -> Fraction:
        try:
            return self._lengths[e]
        except KeyError:
            raise errors.UnknownEdgeError(f"Unknown edge {e!r}", witness=e) from None

    @property
    def lengths(self) -> dict[str, Fraction]:
        return dict(self._lengths)

    def orientation(self, e: str) -> tuple[str, str]:
        self.length(e)
        return self._orientation[e]

    def kind(self, e: str) -> str:
        if not self.model.is_real_edge(e):
            return "conjugate"
        return "reflected" if self.model.is_isolated_real_edge(e) else "pointwise_real"

    @property
    def reflected_edges(self) -> tuple[str, ...]:
        return self.model.isolated_real_edges

    def midpoints(self) -> list[QPoint]:
        """Real midpoints of the reflected edges; each is an isolated point of the real locus."""
        return [QPoint(e, self.length(e) / 2) for e in self.reflected_edges]

    def scaled(self, factor: Fraction | int) -> QMetricGraph:
        factor = Fraction(factor)
        return QMetricGraph(self.model, {e: length * factor for e, length in self._lengths.items()})

    def genus(self) -> int:
        return self.model.genus()

    def normalize(self, p: QPoint) -> QPoint:
        """Validate a point, replacing an edge end offset (0 or the length) by the vertex itself."""
        if p.offset is None:
            if p.ident not in self.model:
                raise errors.UnknownVertexError(f"Unknown vertex {p.ident!r}", witness=p.ident)
            return p
        length = self.length(p.ident)
        a, b = self._orientation[p.ident]
        if p.offset == 0:
            return QPoint(a)
        if p.offset == length:
            return QPoint(b)
        if not 0 < p.offset < length:
            raise errors.InvalidPointError(f"Offset {p.offset} is outside edge {p.ident!r} of length {length}")
        return p

    def conjugate_point(self, p: QPoint) -> QPoint:
        p = self.normalize(p)
        if p.offset is None:
            return QPoint(self.model.conj_vertex(p.ident))
        if self.kind(p.ident) == "reflected":
            return QPoint(p.ident, self.length(p.ident) - p.offset)
        return QPoint(self.model.conj_edge(p.ident), p.offset)

    def is_real_point(self, p: QPoint) -> bool:
        p = self.normalize(p)
        return self.conjugate_point(p) == p

    def to_json(self) -> dict:
        data = serialize(self.model)
        for entry in data["edges"]:
            entry["length"] = utils.format_rational(self._lengths[entry["id"]])
            if self.kind(entry["id"]) == "reflected":
                entry["kind"] = "reflected"
        return data

    @classmethod
    def from_json(cls, raw: typing.Mapping[str, typing.Any]) -> QMetricGraph:
        model = validate(raw)
        lengths = {}
        kinds = {}
        for entry in raw.get("edges", []):
            if "length" in entry:
                lengths[entry["id"]] = entry["length"]
            if "kind" in entry:
                kinds[entry["id"]] = entry["kind"]
        return cls(model, lengths, kinds)


class QDivisor:
    """Finitely supported integer combination of rational points of a metric graph."""

    __slots__ = ("metric", "values")

    def __init__(
        self,
        metric: QMetricGraph,
        values: typing.Mapping[QPoint, int] | typing.Iterable[tuple[QPoint, int]] | None = None,
    ):
        items = values.items() if isinstance(values, typing.Mapping) else (values or [])
        merged: dict[QPoint, int] = {}
        for p, x in items:
            if isinstance(x, bool) or not isinstance(x, int):
                raise errors.MalformedDivisorError(f"Coefficient at {p!r} must be an integer, got {x!r}")
            p = metric.normalize(p)
            merged[p] = merged.get(p, 0) + x
        self.metric = metric
        self.values = {p: merged[p] for p in sorted(merged, key=QPoint.sort_key) if merged[p]}

    @classmethod
    def from_points(cls, metric: QMetricGraph, *points: QPoint) -> QDivisor:
        return cls(metric, [(p, 1) for p in points])

    def __repr__(self) -> str:
        return f"QDivisor({', '.join(f'{p!r}: {x}' for p, x in self.values.items())})"

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, QDivisor):
            return NotImplemented
        return self.values == other.values and self.metric == other.metric

    def __hash__(self) -> int:
        return hash(tuple(self.values.items()))

    def __getitem__(self, p: QPoint) -> int:
        return self.values.get(self.metric.normalize(p), 0)

    def _check(self, other: QDivisor):
        if self.metric is not other.metric and self.metric != other.metric:
            raise errors.GraphMismatchError(f"{self!r} and {other!r} live on different metric graphs")

    def __add__(self, other: QDivisor) -> QDivisor:
        self._check(other)
        return QDivisor(self.metric, [*self.values.items(), *other.values.items()])

    def __sub__(self, other: QDivisor) -> QDivisor:
        self._check(other)
        return QDivisor(self.metric, [*self.values.items(), *((p, -x) for p, x in other.values.items())])

    @property
    def degree(self) -> int:
        return sum(self.values.values())

    def support(self) -> list[QPoint]:
        return list(self.values)

    def is_effective(self) -> bool:
        return all(x >= 0 for x in self.values.values())

    def conjugate(self) -> QDivisor:
        return QDivisor(self.metric, [(self.metric.conjugate_point(p), x) for p, x in self.values.items()])

    def is_real(self) -> bool:
        return self.conjugate() == self

    def is_totally_real(self) -> bool:
        return all(self.metric.is_real_point(p) for p in self.values)

    def to_json(self) -> list:
        return [[p.to_json(), x] for p, x in self.values.items()]

    @classmethod
    def from_json(cls, metric: QMetricGraph, raw: object) -> QDivisor:
        if not isinstance(raw, list) or not all(isinstance(item, list) and len(item) == 2 for item in raw):
            raise errors.MalformedDivisorError(f"Metric divisor must be a list of [point, coefficient], got {raw!r}")
        return cls(metric, [(QPoint.from_json(p), x) for p, x in raw])

