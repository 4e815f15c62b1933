"""Multicriteria objectives, Riemannian jacobians and the partial orders."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from . import geometry as geo
from .errors import DomainError, NumericError, UsageError
from .geometry import ManifoldDescriptor

__all__ = [
    "MulticriteriaProblem",
    "evaluate",
    "riemannian_jacobian",
    "jacobian_apply",
    "dominates_leq",
    "dominates_lt",
    "GradientCheck",
    "fd_gradient_check",
]


@dataclass(frozen=True)
class MulticriteriaProblem:
    """F = (f_1, ..., f_m) on a manifold, with analytic ambient gradients.

    ``euclidean_gradients[i](p)`` returns the array of partial derivatives of
    ``f_i`` in the ambient coordinates (same shape as ``p``). The conversion
    to Riemannian gradients happens in :func:`riemannian_jacobian`.
    """

    manifold: ManifoldDescriptor
    evaluators: tuple
    euclidean_gradients: tuple
    name: str = "problem"
    parameters: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "evaluators", tuple(self.evaluators))
        object.__setattr__(self, "euclidean_gradients", tuple(self.euclidean_gradients))
        if len(self.evaluators) < 1:
            raise UsageError("a problem needs at least one objective")
        if len(self.evaluators) != len(self.euclidean_gradients):
            raise UsageError(
                f"{len(self.evaluators)} objectives but {len(self.euclidean_gradients)} gradients"
            )

    @property
    def m(self) -> int:
        return len(self.evaluators)


def _check_point(prob, p):
    bad = geo.validate_point(prob.manifold, p)
    if bad is not None:
        raise DomainError(f"invalid point on {prob.manifold}: {bad}")
    return np.asarray(p, dtype=float)


def evaluate(prob: MulticriteriaProblem, p) -> np.ndarray:
    """Objective vector F(p) as a float array of length m."""
    p = _check_point(prob, p)
    f = np.array([float(fi(p)) for fi in prob.evaluators])
    if not np.all(np.isfinite(f)):
        raise NumericError(f"non-finite objective value in {prob.name}: {f}")
    return f


def riemannian_jacobian(prob: MulticriteriaProblem, p) -> list:
    """Riemannian gradients ``[grad f_1(p), ..., grad f_m(p)]``."""
    p = _check_point(prob, p)
    grads = []
    for i, gi in enumerate(prob.euclidean_gradients):
        g = np.asarray(gi(p), dtype=float)
        if not np.all(np.isfinite(g)):
            raise NumericError(f"non-finite gradient of objective {i} in {prob.name}")
        grads.append(geo.egrad_to_rgrad(prob.manifold, p, g))
    return grads


def jacobian_apply(grads: Sequence, p, v, m: ManifoldDescriptor) -> np.ndarray:
    """``grad F(p) v``: the vector of inner products ``<grad f_i(p), v>_p``."""
    return np.array([geo.inner(m, p, g, v) for g in grads])


def _pair(a, b):
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if a.shape != b.shape or a.ndim != 1:
        raise UsageError(f"objective vectors must have equal length, got {a.shape} and {b.shape}")
    return a, b


def dominates_leq(a, b) -> bool:
    """``a ⪯ b``: every component of ``a`` is <= the matching one of ``b``."""
    a, b = _pair(a, b)
    return bool(np.all(a <= b))


def dominates_lt(a, b) -> bool:
    """``a ≺ b``: strict inequality in every component."""
    a, b = _pair(a, b)
    return bool(np.all(a < b))


@dataclass
class GradientCheck:
    objective: int
    max_rel_error: float
    passed: bool


def fd_gradient_check(
    prob: MulticriteriaProblem,
    p,
    step: float = 1e-6,
    tol: float = 1e-5,
    n_directions: int = 5,
    rng: np.random.Generator | None = None,
) -> list[GradientCheck]:
    """Compare Riemannian gradients with central differences along geodesics.

    For random unit tangents ``v`` the analytic ``<grad f_i(p), v>`` is
    compared with ``(f_i(exp_p(h v)) - f_i(exp_p(-h v))) / (2 h)``. The error
    is relative to ``||grad f_i(p)||_p``, which bounds the directional
    derivative over unit directions.
    """
    if not step > 0:
        raise UsageError("finite-difference step must be positive")
    rng = np.random.default_rng(0) if rng is None else rng
    m = prob.manifold
    p = _check_point(prob, p)
    grads = riemannian_jacobian(prob, p)
    scales = [geo.norm(m, p, g) for g in grads]
    errors = np.zeros(prob.m)
    for _ in range(n_directions):
        v = geo.random_tangent(m, p, rng, unit=True)
        fp = evaluate(prob, geo.exp_map(m, p, v, step))
        fm = evaluate(prob, geo.exp_map(m, p, -v, step))
        fd = (fp - fm) / (2.0 * step)
        an = jacobian_apply(grads, p, v, m)
        for i in range(prob.m):
            err = abs(an[i] - fd[i])
            # zero gradient: fall back to absolute error
            errors[i] = max(errors[i], err / scales[i] if scales[i] > 0 else err)
    return [GradientCheck(i, float(e), bool(e <= tol)) for i, e in enumerate(errors)]
