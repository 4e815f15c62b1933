"""Numerical checks of the convergence theory on recorded trajectories."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .. import geometry as geo
from ..errors import DomainError
from ..geometry import ManifoldDescriptor
from ..problem import MulticriteriaProblem, dominates_leq, dominates_lt, evaluate
from ..solver import SolveReport

__all__ = [
    "scalarize_max",
    "check_monotone",
    "FejerResult",
    "check_fejer",
    "fejer_tolerance",
    "SummabilityResult",
    "check_summability",
    "check_armijo_certificates",
    "weak_pareto_probe",
    "DiagnosticsReport",
    "diagnose",
]


def scalarize_max(f) -> float:
    """phi(y) = max_i y_i; sublinear and monotone for the partial order."""
    return float(np.max(np.asarray(f, dtype=float)))


def check_monotone(report_or_fs) -> bool:
    """True iff F strictly decreases in every component between iterates.

    Accepts a :class:`SolveReport` (whose history includes the final point)
    or a plain sequence of objective vectors.
    """
    fs = report_or_fs.f_history if isinstance(report_or_fs, SolveReport) else list(report_or_fs)
    return all(dominates_lt(b, a) for a, b in zip(fs, fs[1:]))


@dataclass
class FejerResult:
    slacks: list
    # records where F(ref) ⪯ F(p^k) fails; slacks there carry no guarantee
    not_in_u: list

    @property
    def max_slack(self) -> float:
        return max(self.slacks) if self.slacks else -np.inf

    @property
    def ref_in_u(self) -> bool:
        return not self.not_in_u


def check_fejer(report: SolveReport, ref_point, m_desc: ManifoldDescriptor, ref_f=None) -> FejerResult:
    """Per-step slack ``d^2(p^{k+1}, ref) - d^2(p^k, ref) - t_k^2 ||v^k||^2``.

    Nonpositive slacks are guaranteed for quasi-convex objectives on flat
    manifolds when ``ref`` is in U. When ``ref_f`` (= F(ref)) is given,
    membership ``F(ref) ⪯ F(p^k)`` is verified per record.
    """
    bad = geo.validate_point(m_desc, ref_point)
    if bad is not None:
        raise DomainError(f"invalid reference point: {bad}")
    pts = report.point_history
    d2 = [geo.distance(m_desc, q, ref_point) ** 2 for q in pts]
    slacks, not_in_u = [], []
    for k, rec in enumerate(report.records):
        slacks.append(d2[k + 1] - d2[k] - rec.t**2 * rec.norm_v**2)
        if ref_f is not None and not dominates_leq(ref_f, rec.f):
            not_in_u.append(k)
    return FejerResult(slacks, not_in_u)


def fejer_tolerance(report: SolveReport, ref_point, m_desc) -> float:
    return 1e-8 * (1.0 + geo.distance(m_desc, report.point_history[0], ref_point) ** 2)


@dataclass
class SummabilityResult:
    lhs: float
    rhs: float
    ok: bool
    precondition_ok: bool = True


def check_summability(report: SolveReport, beta: float, ref_f) -> SummabilityResult:
    """``sum t_k^2 ||v^k||^2 <= 2 (phi(F(p^0)) - phi(ref_f)) / beta``.

    ``ref_f`` must be dominated by every recorded objective vector; a
    violation is reported through ``precondition_ok`` rather than raised.
    """
    ref_f = np.asarray(ref_f, dtype=float)
    fs = report.f_history
    lhs = float(sum(r.t**2 * r.norm_v**2 for r in report.records))
    rhs = 2.0 * (scalarize_max(fs[0]) - scalarize_max(ref_f)) / beta
    pre = all(dominates_leq(ref_f, f) for f in fs)
    return SummabilityResult(lhs, rhs, bool(lhs <= rhs + 1e-10), pre)


def check_armijo_certificates(report: SolveReport) -> bool:
    """Re-check ``F(p^{k+1}) ⪯ F(p^k) + beta t_k grad F(p^k) v^k`` per record."""
    beta = report.config.beta
    return all(dominates_leq(r.f_new, r.f + beta * r.t * r.jac_v) for r in report.records)


def weak_pareto_probe(
    prob: MulticriteriaProblem,
    point,
    n_probes: int = 1000,
    radius: float = 0.1,
    rng: np.random.Generator | None = None,
) -> list:
    """Sample points around ``point`` and return those strictly dominating it.

    Probes are ``exp_point(r u)`` with ``u`` a random unit tangent and ``r``
    log-uniform in ``[radius * 1e-4, radius]``. An empty result is
    consistent with weak Pareto optimality; it is not a proof of it.
    """
    rng = np.random.default_rng(0) if rng is None else rng
    m = prob.manifold
    f0 = evaluate(prob, point)
    hits = []
    for _ in range(n_probes):
        u = geo.random_tangent(m, point, rng, unit=True)
        r = radius * 10.0 ** rng.uniform(-4.0, 0.0)
        q = geo.exp_map(m, point, u, r)
        if dominates_lt(evaluate(prob, q), f0):
            hits.append(q)
    return hits


@dataclass
class DiagnosticsReport:
    monotone_ok: bool
    armijo_ok: bool
    summability_lhs: float
    summability_rhs: float
    summability_ok: bool
    scalarization_trace: list
    fejer_slacks: list = field(default_factory=list)
    fejer_max_slack: float | None = None
    fejer_tolerance: float | None = None
    ref_in_u: bool | None = None

    @property
    def fejer_ok(self) -> bool | None:
        if self.fejer_max_slack is None:
            return None
        return self.fejer_max_slack <= self.fejer_tolerance


def diagnose(report: SolveReport, prob: MulticriteriaProblem, ref_point=None) -> DiagnosticsReport:
    """Run all trajectory checks; Fejér slacks only when a reference is given."""
    summ = check_summability(report, report.config.beta, report.final_f)
    out = DiagnosticsReport(
        monotone_ok=check_monotone(report),
        armijo_ok=check_armijo_certificates(report),
        summability_lhs=summ.lhs,
        summability_rhs=summ.rhs,
        summability_ok=summ.ok,
        scalarization_trace=[scalarize_max(f) for f in report.f_history],
    )
    if ref_point is not None:
        ref_f = evaluate(prob, ref_point)
        fej = check_fejer(report, ref_point, prob.manifold, ref_f=ref_f)
        out.fejer_slacks = fej.slacks
        out.fejer_max_slack = float(fej.max_slack) if fej.slacks else 0.0
        out.fejer_tolerance = fejer_tolerance(report, ref_point, prob.manifold)
        out.ref_in_u = fej.ref_in_u
    return out
