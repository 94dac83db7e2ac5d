from realchip.metric.divisors import (
    is_m_metric_graph,
    is_strong_m_metric_graph,
    metric_equivalent,
    metric_find_real_g12,
    metric_real_g12,
    metric_has_effective_class,
    metric_invariants,
    metric_parity_signature,
    metric_rank,
    metric_real_rank,
    metric_totally_real_reduction,
    real_model,
)
from realchip.metric.graph import QDivisor, QMetricGraph, QPoint
from realchip.metric.model import ModelReduction, PiecewiseLinearFunction, reduce_to_model
