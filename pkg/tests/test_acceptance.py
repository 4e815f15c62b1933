"""Acceptance gate: one test per criterion, each reporting a PASS/FAIL line.

Run alone with ``pytest tests/test_acceptance.py``; the summary lines are
printed at the end of the session. ``python tests/test_acceptance.py`` runs
the same checks without pytest.
"""

import time

import numpy as np

from pareto_descent import geometry as geo
from pareto_descent.direction import oracle_direction, solve_direction
from pareto_descent.geometry import Kind, ManifoldDescriptor
from pareto_descent.harness import checks
from pareto_descent.harness.benchmarks import REGISTRY
from pareto_descent.harness.diagnostics import (
    check_fejer,
    check_monotone,
    check_summability,
    fejer_tolerance,
    weak_pareto_probe,
)
from pareto_descent.linesearch import ArmijoConfig, armijo_holds, armijo_step
from pareto_descent.problem import evaluate, fd_gradient_check, jacobian_apply, riemannian_jacobian
from pareto_descent.solver import SolverConfig, Status, solve

RESULTS = {}
CFG = SolverConfig(beta=0.5, eps_crit=1e-6, max_iters=2000)
SEED = 20240601


def record(num, name, ok, detail):
    RESULTS[num] = f"[{'PASS' if ok else 'FAIL'}] {num:>2}. {name}: {detail}"
    assert ok, RESULTS[num]


_runs = {}


def default_run(key):
    if key not in _runs:
        spec = REGISTRY[key]
        t0 = time.perf_counter()
        rep = solve(spec.problem(), spec.default_p0, CFG)
        _runs[key] = (rep, time.perf_counter() - t0)
    return _runs[key]


def stationarity(theta, sq):
    return abs(theta + 0.5 * sq) / max(1.0, sq)


def test_01_direction_oracle_equivalence():
    rng = np.random.default_rng(SEED)
    kinds = list(Kind)
    dv = dth = 0.0
    t0 = time.perf_counter()
    for i in range(200):
        m = ManifoldDescriptor(kinds[i % 4], int(rng.integers(2, 9)))
        p = geo.random_point(m, rng)
        grads = checks.random_gradients(m, p, int(rng.integers(1, 6)), rng)
        a, b = solve_direction(grads, p, m), oracle_direction(grads, p, m)
        dv = max(dv, geo.norm(m, p, a.v - b.v))
        dth = max(dth, abs(a.theta - b.theta))
    secs = time.perf_counter() - t0
    record(1, "direction oracle equivalence", dv <= 1e-7 and dth <= 1e-9 and secs <= 10.0,
           f"max |dv|_p={dv:.2e} (<=1e-7), max |dtheta|={dth:.2e} (<=1e-9), {secs:.2f}s (<=10s)")


def test_02_stationarity_identity():
    rng = np.random.default_rng(SEED)
    kinds = list(Kind)
    worst = 0.0
    count = 0
    for i in range(200):
        m = ManifoldDescriptor(kinds[i % 4], int(rng.integers(2, 9)))
        p = geo.random_point(m, rng)
        grads = checks.random_gradients(m, p, int(rng.integers(1, 6)), rng)
        for res in (solve_direction(grads, p, m), oracle_direction(grads, p, m)):
            worst = max(worst, stationarity(res.theta, geo.inner(m, p, res.v, res.v)))
            count += 1
    for key in REGISTRY:
        rep, _ = default_run(key)
        prob = REGISTRY[key].problem()
        for r in rep.records:
            worst = max(worst, stationarity(r.theta, r.norm_v**2))
            count += 1
        last = solve_direction(riemannian_jacobian(prob, rep.final_point), rep.final_point, prob.manifold)
        worst = max(worst, stationarity(last.theta, last.criticality**2))
        count += 1
    record(2, "stationarity identity", worst <= 1e-9, f"{count} solves, max defect {worst:.2e} (<=1e-9)")


def test_03_gradient_consistency():
    rng = np.random.default_rng(SEED)
    worst = {}
    for key, spec in REGISTRY.items():
        prob = spec.problem()
        w = 0.0
        for _ in range(50):
            p = checks.sample_benchmark_point(spec, rng)
            w = max(w, max(r.max_rel_error for r in fd_gradient_check(prob, p, step=1e-6, tol=1e-5, rng=rng)))
        worst[key] = w
    ok = all(w <= 1e-5 for w in worst.values())
    record(3, "gradient consistency", ok,
           ", ".join(f"{k} {w:.1e}" for k, w in worst.items()) + " (<=1e-5, 50 pts each)")


def test_04_geometry_suite():
    rng = np.random.default_rng(SEED)
    results = []
    for kind in Kind:
        m = ManifoldDescriptor(kind, 3)
        results.append(checks.check_exp_identity(m, rng=rng))
        results.append(checks.check_geodesic_distance(m, tol=1e-8, rng=rng))
    for kind in (Kind.OCTANT, Kind.HYPERCUBE):
        m = ManifoldDescriptor(kind, 3)
        results.append(checks.check_isometry(m, tol=1e-12, rng=rng))
        results.append(checks.check_law_of_cosines(m, trials=100, tol=1e-8, rng=rng))
    for n in (2, 3, 5):
        results.append(checks.check_spd_roundtrip(n, tol=1e-10, rng=rng))
    failed = [r.name for r in results if not r.passed]
    worst = {r.name.split(" [")[0]: 0.0 for r in results}
    for r in results:
        key = r.name.split(" [")[0]
        worst[key] = max(worst[key], r.value)
    record(4, "geometry suite", not failed,
           "; ".join(f"{k} {v:.1e}" for k, v in worst.items()) + (f"; failed: {failed}" if failed else ""))


def test_05_monotone_decrease():
    bad = [k for k in REGISTRY if not check_monotone(default_run(k)[0])]
    its = {k: default_run(k)[0].iterations for k in REGISTRY}
    record(5, "strict monotone decrease", not bad, f"iterations {its}" + (f"; failed {bad}" if bad else ""))


def test_06_fejer_inequality():
    rng = np.random.default_rng(SEED)
    worst_ratio = -np.inf
    runs = 0
    ok = True
    for key in ("OCT-QUAD", "CUBE-BI"):
        spec = REGISTRY[key]
        prob = spec.problem()
        starts = [spec.default_p0] + [geo.random_point(prob.manifold, rng, scale=2.5) for _ in range(20)]
        for p0 in starts:
            rep = solve(prob, p0, CFG)
            ref = rep.final_point
            res = check_fejer(rep, ref, prob.manifold, ref_f=evaluate(prob, ref))
            tol = fejer_tolerance(rep, ref, prob.manifold)
            ok &= res.ref_in_u and rep.status is Status.CRITICAL and res.max_slack <= tol
            if res.slacks:
                worst_ratio = max(worst_ratio, res.max_slack / tol)
            runs += 1
    record(6, "Fejer inequality", ok, f"{runs} runs, max slack/tol {worst_ratio:.2e} (<=1)")


def test_07_summability_bound():
    rng = np.random.default_rng(SEED)
    reports = [default_run(k)[0] for k in REGISTRY]
    for key in ("OCT-QUAD", "CUBE-BI", "SPD-TRACE"):
        spec = REGISTRY[key]
        reports += [solve(spec.problem(), geo.random_point(spec.manifold, rng), CFG) for _ in range(5)]
    critical = [r for r in reports if r.status is Status.CRITICAL]
    res = [check_summability(r, CFG.beta, r.final_f) for r in critical]
    ok = all(x.ok and x.precondition_ok for x in res) and len(critical) == len(reports)
    margin = min(x.rhs - x.lhs for x in res)
    record(7, "summability bound", ok, f"{len(critical)} critical runs, min rhs-lhs {margin:.3e} (>=-1e-10)")


def test_08_convergence():
    out = []
    ok = True
    rep, secs = default_run("OCT-QUAD")
    prob = REGISTRY["OCT-QUAD"].problem()
    a = np.log(prob.parameters["anchors"])
    y = np.log(rep.final_point)
    d = a[1] - a[0]
    s = np.clip((y - a[0]) @ d / (d @ d), 0.0, 1.0)
    seg = float(np.linalg.norm(y - (a[0] + s * d)))
    ok &= rep.status is Status.CRITICAL and rep.iterations <= 500 and rep.final_criticality <= 1e-6
    ok &= seg <= 1e-4 and secs <= 5.0
    out.append(f"OCT-QUAD {rep.iterations} it, crit {rep.final_criticality:.1e}, seg {seg:.1e}, {secs:.3f}s")
    for key in ("CUBE-BI", "SPD-TRACE"):
        rep, secs = default_run(key)
        ok &= rep.status is Status.CRITICAL and rep.iterations <= 2000 and secs <= 5.0
        out.append(f"{key} {rep.iterations} it, crit {rep.final_criticality:.1e}, {secs:.3f}s")
    record(8, "convergence", ok, "; ".join(out))


def test_09_scalar_reduction():
    spec = REGISTRY["SCALAR-QUAD"]
    prob = spec.problem()
    rep = solve(prob, spec.default_p0, CFG)
    # independent scalar steepest descent with the same dyadic Armijo rule
    f, grad = prob.evaluators[0], prob.euclidean_gradients[0]
    x = np.array(spec.default_p0, dtype=float)
    ref = [x]
    for _ in range(CFG.max_iters):
        g = grad(x)
        if np.linalg.norm(g) <= CFG.eps_crit:
            break
        t = 1.0
        while f(x - t * g) > f(x) - CFG.beta * t * (g @ g):
            t /= 2
        x = x - t * g
        ref.append(x)
    ours = rep.point_history
    dev = max(float(np.max(np.abs(a - b))) for a, b in zip(ours, ref))
    ok = len(ours) == len(ref) and dev <= 1e-12
    record(9, "scalar reduction", ok, f"{len(ours)} iterates, max deviation {dev:.1e} (<=1e-12)")


def test_10_linesearch_maximality():
    rng = np.random.default_rng(SEED)
    keys = list(REGISTRY)
    cfg = ArmijoConfig(beta=0.5)
    states = 0
    bad = 0
    halved = 0
    while states < 100:
        spec = REGISTRY[keys[states % len(keys)]]
        prob = spec.problem()
        m = prob.manifold
        p = geo.random_point(m, rng, scale=1.5)
        grads = riemannian_jacobian(prob, p)
        d = solve_direction(grads, p, m)
        if d.criticality <= CFG.eps_crit:
            continue
        jac_v = jacobian_apply(grads, p, d.v, m)
        f_p = evaluate(prob, p)
        res = armijo_step(prob, p, d.v, jac_v, f_p, cfg)
        good = armijo_holds(evaluate(prob, geo.exp_map(m, p, d.v, res.t)), f_p, jac_v, cfg.beta, res.t)
        if 2 * res.t <= 1:
            halved += 1
            f2 = evaluate(prob, geo.exp_map(m, p, d.v, 2 * res.t))
            good &= not armijo_holds(f2, f_p, jac_v, cfg.beta, 2 * res.t)
        bad += not good
        states += 1
    record(10, "line-search maximality", bad == 0, f"{states} states ({halved} with t<1), {bad} violations")


def test_11_weak_pareto_sampling():
    rng = np.random.default_rng(SEED)
    hits = {}
    for key, spec in REGISTRY.items():
        if not spec.convex:
            continue
        rep, _ = default_run(key)
        hits[key] = len(weak_pareto_probe(spec.problem(), rep.final_point, n_probes=1000, rng=rng))
    record(11, "weak-Pareto sampling", all(h == 0 for h in hits.values()),
           ", ".join(f"{k} {h}/1000 dominating" for k, h in hits.items()))


if __name__ == "__main__":
    import sys

    failed = 0
    for name, fn in sorted((n, f) for n, f in globals().items() if n.startswith("test_")):
        try:
            fn()
        except AssertionError:
            failed += 1
    for num in sorted(RESULTS):
        print(RESULTS[num])
    sys.exit(1 if failed else 0)
