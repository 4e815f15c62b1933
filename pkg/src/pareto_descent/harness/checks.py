"""Randomized property checks behind the ``check`` and ``oracle`` commands."""

from __future__ import annotations

import time
from dataclasses import dataclass

import numpy as np

from .. import geometry as geo
from ..direction import oracle_direction, solve_direction
from ..geometry import Kind, ManifoldDescriptor
from ..problem import fd_gradient_check
from .benchmarks import BenchmarkSpec

__all__ = [
    "CheckResult",
    "sample_benchmark_point",
    "check_gradients",
    "check_exp_identity",
    "check_geodesic_distance",
    "check_isometry",
    "check_law_of_cosines",
    "check_spd_roundtrip",
    "OracleStats",
    "random_gradients",
    "oracle_trials",
    "run_checks",
]


@dataclass
class CheckResult:
    name: str
    passed: bool
    value: float
    tol: float
    detail: str = ""

    def line(self) -> str:
        mark = "PASS" if self.passed else "FAIL"
        extra = f"  {self.detail}" if self.detail else ""
        return f"{mark}  {self.name:<34} {self.value:10.3e} <= {self.tol:.1e}{extra}"


def sample_benchmark_point(spec: BenchmarkSpec, rng, manifold=None) -> np.ndarray:
    m = manifold or spec.manifold
    return geo.random_point(m, rng, scale=1.0)


def check_gradients(spec: BenchmarkSpec, n_points=50, step=1e-6, tol=1e-5, rng=None) -> CheckResult:
    rng = np.random.default_rng(0) if rng is None else rng
    prob = spec.problem()
    worst = 0.0
    for _ in range(n_points):
        p = sample_benchmark_point(spec, rng, prob.manifold)
        for r in fd_gradient_check(prob, p, step=step, tol=tol, rng=rng):
            worst = max(worst, r.max_rel_error)
    return CheckResult(f"fd-gradient[{spec.key}]", worst <= tol, worst, tol, f"{n_points} points")


def _rel(a, b):
    return abs(a - b) / max(abs(a), abs(b), 1e-300)


def check_exp_identity(m: ManifoldDescriptor, trials=100, rng=None) -> CheckResult:
    rng = np.random.default_rng(0) if rng is None else rng
    worst = 0.0
    for _ in range(trials):
        p = geo.random_point(m, rng)
        v = geo.random_tangent(m, p, rng)
        worst = max(worst, float(np.max(np.abs(geo.exp_map(m, p, v, 0.0) - p))))
    return CheckResult(f"exp(p,v,0)=p [{m.kind.value}]", worst == 0.0, worst, 0.0)


def check_geodesic_distance(m: ManifoldDescriptor, trials=100, tol=1e-8, rng=None) -> CheckResult:
    rng = np.random.default_rng(0) if rng is None else rng
    worst = 0.0
    for _ in range(trials):
        p = geo.random_point(m, rng)
        v = geo.random_tangent(m, p, rng)
        t = rng.uniform(0.05, 2.0)
        q = geo.exp_map(m, p, v, t)
        worst = max(worst, _rel(geo.distance(m, p, q), t * geo.norm(m, p, v)))
    return CheckResult(f"d(p,exp tv)=t|v| [{m.kind.value}]", worst <= tol, worst, tol)


def _explicit_chart(kind, p):
    if kind is Kind.OCTANT:
        return np.log(p)
    return np.log(p / (1.0 - p))


def check_isometry(m: ManifoldDescriptor, trials=100, tol=1e-12, rng=None) -> CheckResult:
    """Distance equals the Euclidean distance of log / logit coordinates."""
    rng = np.random.default_rng(0) if rng is None else rng
    worst = 0.0
    for _ in range(trials):
        p, q = geo.random_point(m, rng), geo.random_point(m, rng)
        ref = float(np.sqrt(np.sum((_explicit_chart(m.kind, p) - _explicit_chart(m.kind, q)) ** 2)))
        worst = max(worst, _rel(geo.distance(m, p, q), ref))
    return CheckResult(f"chart isometry [{m.kind.value}]", worst <= tol, worst, tol)


def hinge_residual(m: ManifoldDescriptor, p, u, w) -> tuple:
    """Law-of-cosines defect ``l3^2 - (l1^2 + l2^2 - 2 l1 l2 cos a)`` and scale."""
    l1, l2 = geo.norm(m, p, u), geo.norm(m, p, w)
    cos_a = geo.inner(m, p, u, w) / (l1 * l2)
    l3 = geo.distance(m, geo.exp_map(m, p, u), geo.exp_map(m, p, w))
    rhs = l1**2 + l2**2 - 2.0 * l1 * l2 * cos_a
    return l3**2 - rhs, max(l1**2 + l2**2, 1e-300)


def check_law_of_cosines(m: ManifoldDescriptor, trials=100, tol=1e-8, rng=None) -> CheckResult:
    """Equality on flat manifolds; on the SPD cone the defect is only reported."""
    rng = np.random.default_rng(0) if rng is None else rng
    worst = 0.0
    for _ in range(trials):
        p = geo.random_point(m, rng)
        u, w = geo.random_tangent(m, p, rng), geo.random_tangent(m, p, rng)
        res, scale = hinge_residual(m, p, u, w)
        worst = max(worst, abs(res) / scale)
    if not m.is_flat:
        return CheckResult(f"law of cosines [{m.kind.value}]", True, worst, np.inf,
                           "reported only (curved)")
    return CheckResult(f"law of cosines [{m.kind.value}]", worst <= tol, worst, tol)


def check_spd_roundtrip(n=3, trials=100, tol=1e-10, rng=None) -> CheckResult:
    rng = np.random.default_rng(0) if rng is None else rng
    m = ManifoldDescriptor(Kind.SPD, n)
    worst = 0.0
    for _ in range(trials):
        a = geo.random_point(m, rng)
        back = geo.sym_matrix_function(geo.sym_matrix_function(a, "log"), "exp")
        worst = max(worst, float(np.linalg.norm(back - a) / np.linalg.norm(a)))
    return CheckResult(f"SPD exp(log A)=A [n={n}]", worst <= tol, worst, tol)


@dataclass
class OracleStats:
    trials: int
    max_v_dev: float
    max_theta_dev: float
    max_stationarity: float
    seconds: float

    @property
    def passed(self) -> bool:
        return self.max_v_dev <= 1e-7 and self.max_theta_dev <= 1e-9 and self.max_stationarity <= 1e-9


def random_gradients(m_desc: ManifoldDescriptor, p, k: int, rng) -> list:
    grads = []
    for _ in range(k):
        g = rng.uniform(-1.0, 1.0, size=m_desc.shape)
        if m_desc.kind is Kind.SPD:
            g = 0.5 * (g + g.T)
        grads.append(geo.egrad_to_rgrad(m_desc, p, g))
    return grads


def stationarity_defect(res, m_desc, p) -> float:
    sq = geo.inner(m_desc, p, res.v, res.v)
    return abs(res.theta + 0.5 * sq) / max(1.0, sq)


def oracle_trials(trials=200, m=None, n=None, manifold=None, seed=0) -> OracleStats:
    """Compare the solver against brute-force enumeration on random instances.

    ``m``, ``n`` and ``manifold`` are drawn per trial (m in 1..5, n in 2..8,
    all four manifolds) unless fixed by the caller.
    """
    rng = np.random.default_rng(seed)
    kinds = list(Kind)
    dv = dth = st = 0.0
    t0 = time.perf_counter()
    for _ in range(trials):
        kind = Kind(manifold) if manifold is not None else kinds[rng.integers(len(kinds))]
        nn = n if n is not None else int(rng.integers(2, 9))
        mm = m if m is not None else int(rng.integers(1, 6))
        md = ManifoldDescriptor(kind, nn)
        p = geo.random_point(md, rng)
        grads = random_gradients(md, p, mm, rng)
        a = solve_direction(grads, p, md)
        b = oracle_direction(grads, p, md)
        dv = max(dv, geo.norm(md, p, a.v - b.v))
        dth = max(dth, abs(a.theta - b.theta))
        st = max(st, stationarity_defect(a, md, p))
    return OracleStats(trials, dv, dth, st, time.perf_counter() - t0)


def run_checks(spec: BenchmarkSpec, seed=0) -> list:
    """Gradient, geodesic and law-of-cosines checks for one benchmark."""
    rng = np.random.default_rng(seed)
    m = spec.manifold
    out = [
        check_gradients(spec, rng=rng),
        check_exp_identity(m, rng=rng),
        check_geodesic_distance(m, rng=rng),
        check_law_of_cosines(m, rng=rng),
    ]
    if m.kind in (Kind.OCTANT, Kind.HYPERCUBE):
        out.append(check_isometry(m, rng=rng))
    if m.kind is Kind.SPD:
        out.append(check_spd_roundtrip(m.n, rng=rng))
    return out
