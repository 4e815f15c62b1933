import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from pareto_descent import geometry as geo
from pareto_descent.errors import DomainError, NumericError, UsageError
from pareto_descent.geometry import Kind, ManifoldDescriptor
from pareto_descent.harness.benchmarks import REGISTRY, build_problem
from pareto_descent.problem import (
    MulticriteriaProblem,
    dominates_leq,
    dominates_lt,
    evaluate,
    fd_gradient_check,
    jacobian_apply,
    riemannian_jacobian,
)

OCT = ManifoldDescriptor(Kind.OCTANT, 2)


def linear_problem(c):
    m = ManifoldDescriptor(Kind.EUCLIDEAN, len(c))
    c = np.asarray(c, dtype=float)
    return MulticriteriaProblem(m, [lambda x: float(c @ x)], [lambda x: c], name="linear")


class TestEvaluate:
    def test_oct_quad_hand_values(self):
        prob = build_problem("OCT-QUAD")
        # f1 = 0.5 |ln p - (0, 0)|^2 = 0, f2 = 0.5 |(0, 0) - (1, 2)|^2 = 2.5
        np.testing.assert_allclose(evaluate(prob, [1.0, 1.0]), [0.0, 2.5], atol=1e-15)

    def test_pure(self, rng):
        prob = build_problem("SPD-TRACE")
        x = geo.random_point(prob.manifold, rng)
        assert np.array_equal(evaluate(prob, x), evaluate(prob, x))
        g1, g2 = riemannian_jacobian(prob, x), riemannian_jacobian(prob, x)
        assert all(np.array_equal(a, b) for a, b in zip(g1, g2))

    def test_scalar_length_one(self):
        assert evaluate(build_problem("SCALAR-QUAD"), [1.0, 2.0]).shape == (1,)

    def test_domain_error(self):
        with pytest.raises(DomainError):
            evaluate(build_problem("OCT-QUAD"), [1.0, 0.0])

    def test_non_finite(self):
        prob = MulticriteriaProblem(OCT, [lambda p: np.inf], [lambda p: p])
        with pytest.raises(NumericError):
            evaluate(prob, [1.0, 1.0])

    def test_mismatched_lengths(self):
        with pytest.raises(UsageError):
            MulticriteriaProblem(OCT, [lambda p: 0.0], [])


class TestJacobian:
    def test_euclidean_is_raw(self):
        prob = build_problem("SCALAR-QUAD")
        np.testing.assert_array_equal(riemannian_jacobian(prob, [1.0, -2.0])[0], [1.0, -2.0])

    def test_octant_scaling(self):
        prob = MulticriteriaProblem(OCT, [lambda p: p[0]], [lambda p: np.array([1.0, 0.0])])
        np.testing.assert_array_equal(riemannian_jacobian(prob, [2.0, 3.0])[0], [4.0, 0.0])

    def test_apply_zero(self, rng):
        prob = build_problem("CUBE-BI")
        p = geo.random_point(prob.manifold, rng)
        grads = riemannian_jacobian(prob, p)
        np.testing.assert_array_equal(jacobian_apply(grads, p, np.zeros(2), prob.manifold), [0.0, 0.0])

    def test_apply_negative_gradient(self):
        g = np.array([3.0, 4.0])
        out = jacobian_apply([g], [0.0, 0.0], -g, ManifoldDescriptor(Kind.EUCLIDEAN, 2))
        np.testing.assert_array_equal(out, [-25.0])

    @pytest.mark.parametrize("key", list(REGISTRY))
    def test_apply_matches_directional_fd(self, key, rng):
        prob = build_problem(key)
        m = prob.manifold
        h = 1e-6
        for _ in range(5):
            p = geo.random_point(m, rng)
            v = geo.random_tangent(m, p, rng)
            fd = (evaluate(prob, geo.exp_map(m, p, v, h)) - evaluate(prob, geo.exp_map(m, p, v, -h))) / (2 * h)
            an = jacobian_apply(riemannian_jacobian(prob, p), p, v, m)
            np.testing.assert_allclose(an, fd, rtol=1e-5, atol=1e-7)


vec = arrays(np.float64, 3, elements=st.integers(-3, 3).map(float))


class TestOrders:
    def test_examples(self):
        assert dominates_leq([1, 2], [1, 3])
        assert not dominates_lt([1, 2], [1, 3])
        assert dominates_leq([1, 2], [1, 2]) and not dominates_lt([1, 2], [1, 2])
        assert not dominates_leq([1, 4], [2, 3]) and not dominates_leq([2, 3], [1, 4])

    def test_length_mismatch(self):
        with pytest.raises(UsageError):
            dominates_leq([1, 2], [1, 2, 3])

    @given(vec)
    def test_reflexive(self, a):
        assert dominates_leq(a, a)

    @given(vec, vec)
    def test_antisymmetric(self, a, b):
        if dominates_leq(a, b) and dominates_leq(b, a):
            assert np.array_equal(a, b)

    @given(vec, vec, vec)
    def test_transitive(self, a, b, c):
        if dominates_leq(a, b) and dominates_leq(b, c):
            assert dominates_leq(a, c)

    @given(vec, vec)
    def test_strict_implies_weak(self, a, b):
        if dominates_lt(a, b):
            assert dominates_leq(a, b) and not np.array_equal(a, b)


class TestFdCheck:
    def test_linear_exact(self):
        prob = linear_problem([1.0, -2.0, 0.5])
        # central differences are exact for linear f; a unit step keeps rounding below 1e-12
        (res,) = fd_gradient_check(prob, np.array([0.25, 0.5, -4.0]), step=1.0)
        assert res.max_rel_error <= 1e-12 and res.passed

    def test_oct_quad(self, rng):
        prob = build_problem("OCT-QUAD")
        for _ in range(10):
            out = fd_gradient_check(prob, geo.random_point(prob.manifold, rng), rng=rng)
            assert all(r.passed and r.max_rel_error <= 1e-5 for r in out)

    def test_corrupted_gradient_detected(self):
        good = build_problem("OCT-QUAD")
        bad = MulticriteriaProblem(good.manifold, good.evaluators,
                                   [lambda p, g=g: 2.0 * g(p) for g in good.euclidean_gradients])
        out = fd_gradient_check(bad, np.array([2.0, 0.5]))
        assert not any(r.passed for r in out)

    def test_bad_step(self):
        with pytest.raises(UsageError):
            fd_gradient_check(build_problem("OCT-QUAD"), [1.0, 1.0], step=0.0)
