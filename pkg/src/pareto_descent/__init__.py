"""Multicriteria steepest descent with Armijo steps on Riemannian manifolds."""

from .direction import DirectionResult, is_pareto_critical, oracle_direction, solve_direction
from .errors import DomainError, LineSearchFailure, NumericError, ParetoDescentError, UsageError
from .geometry import (
    Kind,
    ManifoldDescriptor,
    distance,
    egrad_to_rgrad,
    exp_map,
    inner,
    norm,
    sym_matrix_function,
    validate_point,
)
from .linesearch import ArmijoConfig, StepResult, armijo_step
from .problem import (
    MulticriteriaProblem,
    dominates_leq,
    dominates_lt,
    evaluate,
    fd_gradient_check,
    jacobian_apply,
    riemannian_jacobian,
)
from .solver import CriticalSignal, IterationRecord, SolveReport, SolverConfig, Status, iterate_once, solve

__version__ = "0.1.0"
