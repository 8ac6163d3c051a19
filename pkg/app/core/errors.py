from typing import Any, Dict, Optional


class BarnetteError(ValueError):
    """Base error for every failure raised by the pipeline."""

    code = "error"
    exit_code = 1

    def __init__(self, message: str, details: Optional[Dict[str, Any]] = None):
        super().__init__(message)
        self.message = message
        self.details = details or {}

    def to_dict(self) -> Dict[str, Any]:
        return {
            "code": self.code,
            "category": self.category,
            "message": self.message,
            "details": self.details,
        }

    @property
    def category(self) -> str:
        return {1: "invalid_input", 2: "hypothesis", 3: "internal"}.get(self.exit_code, "error")


# Invalid input (exit 1)

class InvalidInputError(BarnetteError):
    code = "invalid_input"
    exit_code = 1


class FormatError(InvalidInputError):
    code = "format_error"


class NonSimple(InvalidInputError):
    code = "non_simple"


class AsymmetricAdjacency(InvalidInputError):
    code = "asymmetric_adjacency"


class NonPlanarEmbedding(InvalidInputError):
    code = "non_planar_embedding"


class DualNotSimple(InvalidInputError):
    code = "dual_not_simple"


class EmptyInduced(InvalidInputError):
    code = "empty_induced"


class NotTriangulation(InvalidInputError):
    code = "not_triangulation"


class OddDegree(InvalidInputError):
    code = "odd_degree"


class IsThreeCycle(InvalidInputError):
    code = "is_three_cycle"


class NotIndependent(InvalidInputError):
    code = "not_independent"


class NotSubset(InvalidInputError):
    code = "not_subset"


class MinDegreeViolation(InvalidInputError):
    code = "min_degree_violation"


class NotTheta(InvalidInputError):
    code = "not_theta"


class PreconditionA1(InvalidInputError):
    code = "precondition_a1"


class PreconditionA2(InvalidInputError):
    code = "precondition_a2"


class PreconditionFailed(InvalidInputError):
    code = "precondition_failed"


class InvalidPartition(InvalidInputError):
    code = "invalid_partition"


class NotTwoTrees(InvalidInputError):
    code = "not_two_trees"


class DisconnectedCycle(InvalidInputError):
    code = "disconnected_cycle"


class InvalidHamiltonCycle(InvalidInputError):
    code = "invalid_hamilton_cycle"


class CapExceeded(InvalidInputError):
    code = "cap_exceeded"


class AmbiguousInput(InvalidInputError):
    code = "ambiguous_input"


# Outside the construction's hypothesis (exit 2)

class HypothesisError(BarnetteError):
    code = "hypothesis"
    exit_code = 2


class HypothesisNotMet(HypothesisError):
    code = "hypothesis_not_met"


class HypothesisFailed(HypothesisError):
    code = "hypothesis_failed"


class AllSmallTriangle(HypothesisError):
    code = "all_small_triangle"


# Internal invariant breaches (exit 3)

class InternalError(BarnetteError):
    code = "internal"
    exit_code = 3


class ColoringConflict(InternalError):
    code = "coloring_conflict"


class UnclassifiedFamily(InternalError):
    code = "unclassified_family"


class ThetaViolation(InternalError):
    code = "theta_violation"


class ConfigurationNotFound(InternalError):
    code = "configuration_not_found"


class IterationCapExceeded(InternalError):
    code = "iteration_cap_exceeded"


class CaseAnalysisUnreachable(InternalError):
    code = "case_analysis_unreachable"


class RecursionInvariantBroken(InternalError):
    code = "recursion_invariant_broken"


class ContractBreach(InternalError):
    code = "contract_breach"


class LowerBoundBreach(InternalError):
    code = "lower_bound_breach"
