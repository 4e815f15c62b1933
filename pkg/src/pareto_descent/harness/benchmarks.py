"""Built-in benchmark problems.

All four problems are convex along geodesics, so the convergence diagnostics
have their hypotheses satisfied on the flat manifolds. On the SPD cone the
curvature is nonpositive and only criticality of the limit is expected.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from ..errors import UsageError
from ..geometry import Kind, ManifoldDescriptor
from ..problem import MulticriteriaProblem

__all__ = ["BenchmarkSpec", "REGISTRY", "get_benchmark", "build_problem",
           "scalar_quad", "oct_quad", "cube_bi", "spd_trace"]


@dataclass(frozen=True)
class BenchmarkSpec:
    key: str
    manifold: ManifoldDescriptor
    m: int
    parameters: dict
    default_p0: np.ndarray
    builder: Callable = field(repr=False)
    description: str = ""
    convex: bool = True
    # a known member of U when one exists independently of the run
    known_reference: np.ndarray | None = None

    def problem(self, **overrides) -> MulticriteriaProblem:
        params = {**self.parameters, **overrides}
        unknown = set(overrides) - set(self.parameters)
        if unknown:
            raise UsageError(f"{self.key} has no parameter(s) {sorted(unknown)}")
        return self.builder(**params)


def scalar_quad(center=(0.0, 0.0)) -> MulticriteriaProblem:
    """f(x) = ||x - c||^2 / 2 on Euclidean space."""
    c = np.asarray(center, dtype=float)
    man = ManifoldDescriptor(Kind.EUCLIDEAN, c.size)
    return MulticriteriaProblem(
        man,
        [lambda x: 0.5 * float(np.sum((x - c) ** 2))],
        [lambda x: x - c],
        name="SCALAR-QUAD",
        parameters={"center": c},
    )


def _chart_quadratics(kind, anchors, name, chart, dchart):
    a = np.atleast_2d(np.asarray(anchors, dtype=float))
    man = ManifoldDescriptor(kind, a.shape[1])
    centers = [chart(ai) for ai in a]

    def f(c):
        return lambda p: 0.5 * float(np.sum((chart(p) - c) ** 2))

    def g(c):
        return lambda p: (chart(p) - c) * dchart(p)

    return MulticriteriaProblem(
        man, [f(c) for c in centers], [g(c) for c in centers],
        name=name, parameters={"anchors": a},
    )


def oct_quad(anchors=((1.0, 1.0), (np.e, np.e**2))) -> MulticriteriaProblem:
    """f_i(p) = ||ln p - ln a_i||^2 / 2 on the positive octant."""
    if np.any(np.asarray(anchors, dtype=float) <= 0):
        raise UsageError("OCT-QUAD anchors must be positive")
    return _chart_quadratics(Kind.OCTANT, anchors, "OCT-QUAD", np.log, lambda p: 1.0 / p)


def cube_bi(anchors=((0.3, 0.3), (0.7, 0.5))) -> MulticriteriaProblem:
    """f_i(p) = ||logit p - logit a_i||^2 / 2 on the open unit hypercube."""
    a = np.asarray(anchors, dtype=float)
    if np.any((a <= 0) | (a >= 1)):
        raise UsageError("CUBE-BI anchors must lie in (0, 1)")
    return _chart_quadratics(
        Kind.HYPERCUBE, anchors, "CUBE-BI",
        lambda p: np.log(p) - np.log1p(-p), lambda p: 1.0 / (p * (1.0 - p)),
    )


def _logdet(x):
    sign, val = np.linalg.slogdet(x)
    return val if sign > 0 else np.nan


def spd_trace(C=((2.0, 0.0), (0.0, 0.5))) -> MulticriteriaProblem:
    """f_1(X) = tr X - ln det X and f_2(X) = tr(C X) - ln det X.

    Minimizers are ``I`` and ``C^-1``.
    """
    c = np.asarray(C, dtype=float)
    if c.ndim != 2 or c.shape[0] != c.shape[1] or not np.allclose(c, c.T):
        raise UsageError("SPD-TRACE parameter C must be a symmetric square matrix")
    n = c.shape[0]
    eye = np.eye(n)
    man = ManifoldDescriptor(Kind.SPD, n)
    return MulticriteriaProblem(
        man,
        [lambda x: float(np.trace(x)) - _logdet(x),
         lambda x: float(np.sum(c * x)) - _logdet(x)],
        [lambda x: eye - np.linalg.inv(x),
         lambda x: c - np.linalg.inv(x)],
        name="SPD-TRACE",
        parameters={"C": c},
    )


def _spec(key, manifold, m, parameters, p0, builder, description, **kw):
    return BenchmarkSpec(key, manifold, m, parameters, np.asarray(p0, dtype=float),
                         builder, description, **kw)


REGISTRY = {
    "SCALAR-QUAD": _spec(
        "SCALAR-QUAD", ManifoldDescriptor(Kind.EUCLIDEAN, 2), 1,
        {"center": np.zeros(2)}, [1.0, 0.0], scalar_quad,
        "single quadratic in the plane", known_reference=np.zeros(2),
    ),
    "OCT-QUAD": _spec(
        "OCT-QUAD", ManifoldDescriptor(Kind.OCTANT, 2), 2,
        {"anchors": np.array([[1.0, 1.0], [np.e, np.e**2]])}, [5.0, 0.2], oct_quad,
        "two log-quadratics on the positive octant",
    ),
    "CUBE-BI": _spec(
        "CUBE-BI", ManifoldDescriptor(Kind.HYPERCUBE, 2), 2,
        {"anchors": np.array([[0.3, 0.3], [0.7, 0.5]])}, [0.9, 0.1], cube_bi,
        "two logit-quadratics on the unit square",
    ),
    "SPD-TRACE": _spec(
        "SPD-TRACE", ManifoldDescriptor(Kind.SPD, 2), 2,
        {"C": np.diag([2.0, 0.5])}, np.diag([4.0, 0.25]), spd_trace,
        "trace/log-det pair on 2x2 SPD matrices",
    ),
}


def get_benchmark(key: str) -> BenchmarkSpec:
    try:
        return REGISTRY[key.upper()]
    except KeyError:
        raise UsageError(f"unknown problem {key!r}; known: {', '.join(REGISTRY)}") from None


def build_problem(key: str, **overrides) -> MulticriteriaProblem:
    return get_benchmark(key).problem(**overrides)
