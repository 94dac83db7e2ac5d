from abc import ABC


class RealChipError(Exception, ABC):
    ...


# errors related to graphs and their real structures
class GraphError(RealChipError):
    def __init__(self, message: str, witness: object = None):
        super().__init__(message)
        # offending vertex / edge id (or pair of ids)
        self.witness = witness


class MalformedGraphError(GraphError):
    ...


class DanglingIncidenceError(GraphError):
    ...


class NotInvolutiveError(GraphError):
    ...


class IncompatibleInvolutionError(GraphError):
    ...


class DisconnectedError(GraphError):
    ...


class UnknownVertexError(GraphError):
    ...


class UnknownEdgeError(GraphError):
    ...


# errors related to divisors and potentials
class DivisorError(RealChipError):
    ...


class MalformedDivisorError(DivisorError):
    ...


class GraphMismatchError(DivisorError):
    ...


class NotRealError(DivisorError):
    ...


class NotRealEffectiveError(DivisorError):
    ...


class NotEquivalentError(DivisorError):
    ...


class PreconditionViolatedError(DivisorError):
    ...


# errors related to required graph structure
class StructureError(RealChipError):
    ...


class NotMGraphError(StructureError):
    ...


class NotStrongMGraphError(NotMGraphError):
    ...


class NotMMetricGraphError(StructureError):
    ...


class NotStrongMMetricGraphError(NotMMetricGraphError):
    ...


class InadmissibleTripleError(StructureError):
    ...


class GenusTooSmallError(StructureError):
    ...


# errors related to metric graphs
class MetricError(RealChipError):
    ...


class IrrationalPointError(MetricError):
    ...


class InvalidPointError(MetricError):
    ...


class IncompatibleLengthError(MetricError):
    ...


class InvalidEdgeKindError(MetricError):
    ...


# errors related to builder parameters
class InvalidParameterError(RealChipError):
    ...


# errors related to enumeration budgets
class BudgetError(RealChipError):
    ...


class EnumerationBudgetExceededError(BudgetError):
    ...


class ModelBudgetExceededError(BudgetError):
    ...


class InvalidBudgetError(BudgetError):
    ...


# a failed runtime theorem check is a defect certificate, never an expected outcome
class TheoremViolationError(RealChipError):
    ...


class SearchExhaustedError(TheoremViolationError):
    ...
