"""Multicriteria steepest descent on a Riemannian manifold.

Each iteration computes the common steepest-descent direction of all
objectives, stops if its norm is below ``eps_crit``, otherwise takes the
largest dyadic Armijo step along the geodesic and moves with the
exponential map.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np

from . import geometry as geo
from .direction import DirectionResult, solve_direction
from .errors import DomainError, LineSearchFailure, NumericError, UsageError
from .linesearch import ArmijoConfig, armijo_step
from .problem import MulticriteriaProblem, evaluate, jacobian_apply, riemannian_jacobian

__all__ = [
    "Status",
    "SolverConfig",
    "IterationRecord",
    "CriticalSignal",
    "SolveReport",
    "iterate_once",
    "solve",
]


class Status(str, enum.Enum):
    CRITICAL = "Critical"
    MAX_ITERS = "MaxIters"
    LINE_SEARCH_FAILURE = "LineSearchFailure"


@dataclass(frozen=True)
class SolverConfig:
    beta: float = 0.5
    eps_crit: float = 1e-6
    max_iters: int = 1000
    max_halvings: int = 64

    def __post_init__(self):
        if not 0.0 < self.beta < 1.0:
            raise UsageError(f"beta must lie in (0, 1), got {self.beta}")
        if not self.eps_crit >= 0.0:
            raise UsageError(f"eps_crit must be nonnegative, got {self.eps_crit}")
        for name in ("max_iters", "max_halvings"):
            val = getattr(self, name)
            if int(val) != val or val < 1:
                raise UsageError(f"{name} must be a positive integer, got {val}")

    @property
    def armijo(self) -> ArmijoConfig:
        return ArmijoConfig(self.beta, self.max_halvings)


@dataclass
class IterationRecord:
    """One accepted step, from ``p`` (iterate k) to ``p_new`` (iterate k+1)."""

    k: int
    p: np.ndarray
    f: np.ndarray
    norm_v: float
    theta: float
    alpha: np.ndarray
    t: float
    j: int
    jac_v: np.ndarray
    f_new: np.ndarray
    p_new: np.ndarray


@dataclass
class CriticalSignal:
    """Returned by :func:`iterate_once` when ``||v(p)|| <= eps_crit``."""

    p: np.ndarray
    f: np.ndarray
    direction: DirectionResult


@dataclass
class SolveReport:
    status: Status
    records: list
    final_point: np.ndarray
    final_f: np.ndarray
    final_criticality: float
    config: SolverConfig = field(default_factory=SolverConfig)
    message: str = ""

    @property
    def iterations(self) -> int:
        return len(self.records)

    @property
    def f_history(self) -> list:
        """F(p^0), ..., F(p^K), including the final point."""
        return [r.f for r in self.records] + [self.final_f]

    @property
    def point_history(self) -> list:
        return [r.p for r in self.records] + [self.final_point]


def _guarded(k, fn, *args):
    try:
        return fn(*args)
    except NumericError as exc:
        if exc.iteration is None and not isinstance(exc, LineSearchFailure):
            raise NumericError(str(exc), iteration=k) from exc
        raise


def iterate_once(prob: MulticriteriaProblem, p, cfg: SolverConfig, k: int = 0, f_p=None):
    """One step of the method from ``p``.

    Returns ``(record, p_new)`` or a :class:`CriticalSignal`. ``f_p`` may be
    passed to skip re-evaluating ``F(p)``.
    """
    m = prob.manifold
    f_p = _guarded(k, evaluate, prob, p) if f_p is None else np.asarray(f_p, dtype=float)
    grads = _guarded(k, riemannian_jacobian, prob, p)
    d = _guarded(k, solve_direction, grads, p, m)
    if d.criticality <= cfg.eps_crit:
        return CriticalSignal(p=np.asarray(p, dtype=float), f=f_p, direction=d)
    jac_v = jacobian_apply(grads, p, d.v, m)
    step = armijo_step(prob, p, d.v, jac_v, f_p, cfg.armijo)
    rec = IterationRecord(
        k=k, p=np.asarray(p, dtype=float), f=f_p, norm_v=d.criticality, theta=d.theta,
        alpha=d.alpha, t=step.t, j=step.j, jac_v=jac_v, f_new=step.f_new, p_new=step.p_new,
    )
    return rec, step.p_new


def solve(prob: MulticriteriaProblem, p0, cfg: SolverConfig = SolverConfig()) -> SolveReport:
    """Run the method from ``p0`` until criticality, the iteration cap, or
    a line-search breakdown.

    Raises
    ------
    DomainError
        If ``p0`` is not a point of ``prob.manifold``.
    NumericError
        On non-finite objectives or gradients; carries the iteration index.
    """
    bad = geo.validate_point(prob.manifold, p0)
    if bad is not None:
        raise DomainError(f"invalid starting point on {prob.manifold}: {bad}")
    p = np.asarray(p0, dtype=float)
    f = None
    records = []
    for k in range(cfg.max_iters + 1):
        if k == cfg.max_iters:
            f = _guarded(k, evaluate, prob, p) if f is None else f
            grads = _guarded(k, riemannian_jacobian, prob, p)
            d = _guarded(k, solve_direction, grads, p, prob.manifold)
            status = Status.CRITICAL if d.criticality <= cfg.eps_crit else Status.MAX_ITERS
            return SolveReport(status, records, p, f, d.criticality, cfg)
        try:
            out = iterate_once(prob, p, cfg, k=k, f_p=f)
        except LineSearchFailure as exc:
            f = evaluate(prob, p) if f is None else f
            grads = riemannian_jacobian(prob, p)
            crit = solve_direction(grads, p, prob.manifold).criticality
            return SolveReport(Status.LINE_SEARCH_FAILURE, records, p, f, crit, cfg, message=str(exc))
        if isinstance(out, CriticalSignal):
            return SolveReport(Status.CRITICAL, records, out.p, out.f, out.direction.criticality, cfg)
        rec, p = out
        f = rec.f_new
        records.append(rec)
    raise AssertionError("unreachable")
