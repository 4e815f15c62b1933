"""Steepest-descent direction for several objectives at once.

The direction ``v`` minimizes ``max_i <g_i, v> + ||v||^2 / 2`` over the
tangent space. Its dual is the minimum-norm point of the convex hull of the
gradients ``g_i`` (norm taken in the metric at ``p``)::

    min_{lam in simplex} lam^T Q lam / 2,    Q_ij = <g_i, g_j>_p
    v = -sum_i lam_i g_i,                     theta = -lam^T Q lam / 2

:func:`solve_direction` runs Wolfe's minimum-norm-point algorithm on ``Q``;
:func:`oracle_direction` enumerates every support set and is meant only as
an independent check for small ``m``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from . import geometry as geo
from .errors import NumericError, UsageError
from .geometry import ManifoldDescriptor

__all__ = [
    "DirectionResult",
    "gram_matrix",
    "solve_direction",
    "oracle_direction",
    "is_pareto_critical",
    "ORACLE_MAX_M",
]

ORACLE_MAX_M = 12
ACTIVE_RTOL = 1e-9
GAP_RTOL = 1e-12


@dataclass
class DirectionResult:
    """Solution of the direction subproblem at one point.

    Attributes
    ----------
    v : ndarray
        Steepest-descent direction (a tangent at ``p``).
    alpha : ndarray, shape (m,)
        Simplex weights with ``v = -sum alpha_i g_i``. Not unique when the
        gradients are affinely dependent; ``v`` and ``theta`` always are.
    theta : float
        Optimal value, equal to ``-||v||^2 / 2``.
    active_set : tuple of int
        Indices whose ``<g_i, v>`` ties the maximum.
    criticality : float
        ``||v||_p``; zero exactly at Pareto critical points.
    iterations : int
        Major iterations used by the solver (0 for the oracle).
    """

    v: np.ndarray
    alpha: np.ndarray
    theta: float
    active_set: tuple
    criticality: float
    iterations: int = 0


def gram_matrix(grads, p, m_desc: ManifoldDescriptor) -> np.ndarray:
    k = len(grads)
    q = np.empty((k, k))
    for i in range(k):
        for j in range(i, k):
            q[i, j] = q[j, i] = geo.inner(m_desc, p, grads[i], grads[j])
    return q


def _check_grads(grads):
    if len(grads) < 1:
        raise UsageError("need at least one gradient")
    for i, g in enumerate(grads):
        if not np.all(np.isfinite(np.asarray(g, dtype=float))):
            raise NumericError(f"non-finite gradient {i}")


def _affine_minimizer(q_ss):
    """Weights mu (sum 1) of the min-norm point on the affine hull of a face."""
    k = q_ss.shape[0]
    kkt = np.zeros((k + 1, k + 1))
    kkt[:k, :k] = q_ss
    kkt[:k, k] = 1.0
    kkt[k, :k] = 1.0
    rhs = np.zeros(k + 1)
    rhs[k] = 1.0
    try:
        sol = np.linalg.solve(kkt, rhs)
    except np.linalg.LinAlgError:
        sol = np.linalg.lstsq(kkt, rhs, rcond=None)[0]
    return sol[:k]


def _finish(grads, p, m_desc, lam, q, iterations):
    lam = np.clip(lam, 0.0, None)
    lam = lam / lam.sum()
    v = -sum(l * np.asarray(g, dtype=float) for l, g in zip(lam, grads))
    if m_desc.kind is geo.Kind.SPD:
        v = 0.5 * (v + v.T)
    sq = float(lam @ q @ lam)
    theta = -0.5 * max(sq, 0.0)
    crit = geo.norm(m_desc, p, v)
    # <g_i, v> = -(Q lam)_i
    gv = -(q @ lam)
    top = gv.max()
    active = tuple(int(i) for i in np.flatnonzero(gv >= top - ACTIVE_RTOL * (1.0 + abs(top))))
    return DirectionResult(v=v, alpha=lam, theta=theta, active_set=active,
                           criticality=crit, iterations=iterations)


def solve_direction(grads, p, m_desc: ManifoldDescriptor, start: int | None = None) -> DirectionResult:
    """Steepest-descent direction via Wolfe's minimum-norm-point algorithm.

    Parameters
    ----------
    grads : sequence of ndarray
        Riemannian gradients ``grad f_i(p)``.
    p : ndarray
        Base point (only the metric at ``p`` is used).
    m_desc : ManifoldDescriptor
    start : int, optional
        Index of the starting vertex. Defaults to the gradient of smallest
        norm. Different starts may give different ``alpha`` but the same ``v``.
    """
    _check_grads(grads)
    q = gram_matrix(grads, p, m_desc)
    k = q.shape[0]
    diag = np.diag(q)
    if np.all(diag == 0.0):
        return _finish(grads, p, m_desc, np.full(k, 1.0 / k), q, 0)

    first = int(np.argmin(diag)) if start is None else int(start)
    if not 0 <= first < k:
        raise UsageError(f"start index {first} out of range")
    lam = np.zeros(k)
    lam[first] = 1.0
    support = [first]
    cap = 50 * k * k
    it = 0
    while True:
        it += 1
        if it > cap:
            qlam = q @ lam
            gap = float(lam @ qlam - qlam.min())
            raise NumericError(f"minimum-norm-point iteration cap {cap} reached, duality gap {gap:.3e}")
        qlam = q @ lam
        sq = float(lam @ qlam)
        j = int(np.argmin(qlam))
        # max_i <g_i, v> + ||v||^2 with v = -x
        gap = sq - float(qlam[j])
        if gap <= GAP_RTOL * (1.0 + sq) or j in support:
            break
        support.append(j)
        while True:
            mu_s = _affine_minimizer(q[np.ix_(support, support)])
            if np.all(mu_s > 0):
                lam = np.zeros(k)
                lam[support] = mu_s
                break
            lam_s = lam[support]
            neg = mu_s <= 0
            ratio = np.full(len(support), np.inf)
            ratio[neg] = lam_s[neg] / (lam_s[neg] - mu_s[neg])
            step = float(np.min(ratio))
            lam_s = lam_s + step * (mu_s - lam_s)
            lam_s[ratio <= step] = 0.0
            lam = np.zeros(k)
            lam[support] = np.clip(lam_s, 0.0, None)
            support = [i for i in support if lam[i] > 0]
            if not support:
                raise NumericError("minimum-norm-point corral became empty")
    return _finish(grads, p, m_desc, lam, q, it)


def oracle_direction(grads, p, m_desc: ManifoldDescriptor) -> DirectionResult:
    """Brute-force direction: try every support set, keep the KKT point.

    For each nonempty ``S`` the min-norm point of the affine hull of
    ``{g_i : i in S}`` is computed by a linear solve. A candidate is kept when
    its weights are nonnegative and ``(Q lam)_i >= lam^T Q lam`` for every
    ``i`` (first-order optimality over the whole simplex). Cost is
    ``2^m - 1`` small solves.
    """
    _check_grads(grads)
    k = len(grads)
    if k > ORACLE_MAX_M:
        raise UsageError(f"oracle enumeration limited to m <= {ORACLE_MAX_M}, got {k}")
    q = gram_matrix(grads, p, m_desc)
    scale = max(1.0, float(np.max(np.abs(q))))
    best, best_val = None, np.inf
    for size in range(1, k + 1):
        for s in itertools.combinations(range(k), size):
            s = list(s)
            mu = _affine_minimizer(q[np.ix_(s, s)])
            if not np.all(np.isfinite(mu)) or abs(mu.sum() - 1.0) > 1e-9:
                continue
            if np.any(mu < -1e-12):
                continue
            lam = np.zeros(k)
            lam[s] = np.clip(mu, 0.0, None)
            lam /= lam.sum()
            qlam = q @ lam
            val = float(lam @ qlam)
            if qlam.min() < val - 1e-10 * scale:
                continue
            if val < best_val:
                best, best_val = lam, val
    if best is None:
        raise NumericError("oracle found no optimal support set")
    return _finish(grads, p, m_desc, best, q, 0)


def is_pareto_critical(result: DirectionResult, eps: float) -> bool:
    return result.criticality <= eps
