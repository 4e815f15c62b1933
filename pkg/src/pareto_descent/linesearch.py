"""Dyadic Armijo backtracking along geodesics with a component-wise test."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import geometry as geo
from .errors import LineSearchFailure, NumericError, UsageError
from .problem import MulticriteriaProblem, evaluate

__all__ = ["ArmijoConfig", "StepResult", "armijo_step", "armijo_holds"]


@dataclass(frozen=True)
class ArmijoConfig:
    beta: float = 0.5
    max_halvings: int = 64

    def __post_init__(self):
        if not 0.0 < self.beta < 1.0:
            raise UsageError(f"beta must lie in (0, 1), got {self.beta}")
        if int(self.max_halvings) != self.max_halvings or self.max_halvings < 1:
            raise UsageError(f"max_halvings must be a positive integer, got {self.max_halvings}")


@dataclass
class StepResult:
    t: float
    j: int
    trial_count: int
    f_new: np.ndarray
    p_new: np.ndarray


def armijo_holds(f_trial, f_p, jac_v, beta: float, t: float) -> bool:
    """``F(trial) ⪯ F(p) + beta t grad F(p) v``, with no slack."""
    return bool(np.all(np.asarray(f_trial) <= np.asarray(f_p) + beta * t * np.asarray(jac_v)))


def armijo_step(prob: MulticriteriaProblem, p, v, jac_v, f_p, cfg: ArmijoConfig = ArmijoConfig()) -> StepResult:
    """Largest ``t = 2^-j`` (``j = 0, 1, ...``) passing the vector Armijo test.

    A trial geodesic point that rounds onto the boundary of the domain (only
    possible for huge steps on the hypercube) counts as a failed trial.

    Raises
    ------
    LineSearchFailure
        If no ``j <= cfg.max_halvings`` is accepted.
    NumericError
        If an objective is non-finite at a trial point.
    """
    jac_v = np.asarray(jac_v, dtype=float)
    f_p = np.asarray(f_p, dtype=float)
    m = prob.manifold
    for j in range(cfg.max_halvings + 1):
        t = 2.0**-j
        try:
            p_new = geo.exp_map(m, p, v, t)
        except NumericError:
            continue
        f_new = evaluate(prob, p_new)
        if armijo_holds(f_new, f_p, jac_v, cfg.beta, t):
            return StepResult(t=t, j=j, trial_count=j + 1, f_new=f_new, p_new=p_new)
    raise LineSearchFailure(
        f"no step 2^-j with j <= {cfg.max_halvings} satisfied the Armijo test "
        f"(grad F(p) v = {jac_v})"
    )
