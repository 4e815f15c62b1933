"""Manifolds with closed-form geodesics.

Four manifolds are supported, all identified by a :class:`ManifoldDescriptor`:

* ``Euclidean``: R^n with the identity metric.
* ``PositiveOctant``: R^n_{++} with the log-barrier Hessian metric
  ``diag(p_j^-2)``. ``ln`` is an isometry onto Euclidean space.
* ``Hypercube``: (0, 1)^n with metric ``diag(p_j^-2 (1 - p_j)^-2)``.
  ``logit`` is an isometry onto Euclidean space.
* ``SPDCone``: symmetric positive definite n x n matrices with the Hessian
  metric of ``-ln det``, i.e. ``<U, V>_X = tr(X^-1 U X^-1 V)``.

Points and tangents are numpy arrays of shape ``(n,)`` for the vector
manifolds and ``(n, n)`` for the SPD cone.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, NumericError, UsageError

__all__ = [
    "Kind",
    "ManifoldDescriptor",
    "Violation",
    "exp_map",
    "inner",
    "norm",
    "egrad_to_rgrad",
    "distance",
    "sym_matrix_function",
    "validate_point",
    "validate_tangent",
    "to_chart",
    "random_point",
    "random_tangent",
]

# |A - A^T|_max <= SYM_RTOL * |A|_max
SYM_RTOL = 1e-12


class Kind(str, enum.Enum):
    EUCLIDEAN = "Euclidean"
    OCTANT = "PositiveOctant"
    HYPERCUBE = "Hypercube"
    SPD = "SPDCone"


_KIND_ALIASES = {
    "euclidean": Kind.EUCLIDEAN,
    "positiveoctant": Kind.OCTANT,
    "octant": Kind.OCTANT,
    "hypercube": Kind.HYPERCUBE,
    "cube": Kind.HYPERCUBE,
    "spdcone": Kind.SPD,
    "spd": Kind.SPD,
}


@dataclass(frozen=True)
class ManifoldDescriptor:
    """Which manifold, and its size parameter ``n``.

    ``n`` is the vector length for the vector manifolds and the matrix side
    for ``SPDCone``.
    """

    kind: Kind
    n: int

    def __post_init__(self):
        object.__setattr__(self, "kind", Kind(self.kind))
        if int(self.n) != self.n or self.n < 1:
            raise UsageError(f"dimension parameter must be a positive integer, got {self.n!r}")
        object.__setattr__(self, "n", int(self.n))

    @classmethod
    def parse(cls, kind: str, n: int) -> "ManifoldDescriptor":
        key = str(kind).replace("-", "").replace("_", "").lower()
        try:
            return cls(_KIND_ALIASES[key], n)
        except KeyError:
            raise UsageError(f"unknown manifold kind {kind!r}") from None

    @property
    def shape(self) -> tuple:
        return (self.n, self.n) if self.kind is Kind.SPD else (self.n,)

    @property
    def is_flat(self) -> bool:
        return self.kind is not Kind.SPD

    def __str__(self):
        return f"{self.kind.value}(n={self.n})"


@dataclass(frozen=True)
class Violation:
    """First broken domain constraint found by :func:`validate_point`."""

    message: str
    index: object = None

    def __str__(self):
        if self.index is None:
            return self.message
        return f"{self.message} at index {self.index}"


def _sym(a):
    return 0.5 * (a + a.T)


def _asym_violation(a):
    scale = np.max(np.abs(a)) if a.size else 0.0
    err = np.max(np.abs(a - a.T)) if a.size else 0.0
    if err > SYM_RTOL * scale:
        i, j = np.unravel_index(np.argmax(np.abs(a - a.T)), a.shape)
        return Violation("not symmetric", (int(i), int(j)))
    return None


def validate_point(m: ManifoldDescriptor, p) -> Violation | None:
    """Check the domain constraints of ``m`` for ``p``.

    Returns ``None`` when ``p`` is a valid point, otherwise a
    :class:`Violation` describing the first failed constraint. Never raises.
    """
    try:
        a = np.asarray(p, dtype=float)
    except (TypeError, ValueError):
        return Violation("not a real array")
    if a.shape != m.shape:
        return Violation(f"shape {a.shape} does not match {m.shape}")
    bad = np.flatnonzero(~np.isfinite(a.ravel()))
    if bad.size:
        idx = np.unravel_index(bad[0], a.shape)
        return Violation("non-finite coordinate", idx[0] if a.ndim == 1 else tuple(int(i) for i in idx))
    if m.kind is Kind.OCTANT:
        bad = np.flatnonzero(a <= 0)
        if bad.size:
            return Violation("coordinate not > 0", int(bad[0]))
    elif m.kind is Kind.HYPERCUBE:
        bad = np.flatnonzero((a <= 0) | (a >= 1))
        if bad.size:
            return Violation("coordinate not in (0, 1)", int(bad[0]))
    elif m.kind is Kind.SPD:
        v = _asym_violation(a)
        if v is not None:
            return v
        try:
            w = np.linalg.eigvalsh(_sym(a))
        except np.linalg.LinAlgError:
            return Violation("eigendecomposition failed")
        if not w[0] > 0:
            return Violation(f"not positive definite (min eigenvalue {w[0]:.3g})")
    return None


def _point(m, p):
    v = validate_point(m, p)
    if v is not None:
        raise DomainError(f"invalid point on {m}: {v}")
    a = np.asarray(p, dtype=float)
    return _sym(a) if m.kind is Kind.SPD else a


def validate_tangent(m: ManifoldDescriptor, v) -> Violation | None:
    """Shape/finiteness check for a tangent (symmetry too, on the SPD cone)."""
    a = np.asarray(v, dtype=float)
    if a.shape != m.shape:
        return Violation(f"tangent shape {a.shape} does not match {m.shape}")
    if not np.all(np.isfinite(a)):
        return Violation("non-finite tangent coordinate")
    if m.kind is Kind.SPD:
        return _asym_violation(a)
    return None


def _tangent(m, v):
    bad = validate_tangent(m, v)
    if bad is not None:
        raise DomainError(f"invalid tangent on {m}: {bad}")
    a = np.asarray(v, dtype=float)
    return _sym(a) if m.kind is Kind.SPD else a


def sym_matrix_function(a, f: str):
    """Apply a scalar function to a symmetric matrix through its eigenvalues.

    Parameters
    ----------
    a : ndarray, shape (n, n)
        Symmetric matrix; symmetrized as ``(a + a.T) / 2`` before use.
    f : {"sqrt", "inv_sqrt", "exp", "log"}
        Function tag. All but ``exp`` require ``a`` positive definite.

    Returns
    -------
    ndarray, shape (n, n)
        ``U diag(f(w)) U^T`` where ``a = U diag(w) U^T``.
    """
    funcs = {"sqrt": np.sqrt, "inv_sqrt": lambda w: 1.0 / np.sqrt(w), "exp": np.exp, "log": np.log}
    if f not in funcs:
        raise UsageError(f"unknown matrix function {f!r}")
    a = np.asarray(a, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise UsageError(f"expected a square matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise NumericError("non-finite matrix entry")
    try:
        w, u = np.linalg.eigh(_sym(a))
    except np.linalg.LinAlgError as exc:
        raise NumericError(f"eigendecomposition failed: {exc}") from exc
    if f != "exp" and not w[0] > 0:
        raise DomainError(f"{f} needs a positive definite matrix (min eigenvalue {w[0]:.3g})")
    return _sym((u * funcs[f](w)) @ u.T)


def _sqrt_pair(x):
    """Return (x^{1/2}, x^{-1/2}) from one eigendecomposition."""
    try:
        w, u = np.linalg.eigh(x)
    except np.linalg.LinAlgError as exc:
        raise NumericError(f"eigendecomposition failed: {exc}") from exc
    if not w[0] > 0:
        raise DomainError("matrix is not positive definite")
    s = np.sqrt(w)
    return _sym((u * s) @ u.T), _sym((u / s) @ u.T)


def _logit(p):
    return np.log(p) - np.log1p(-p)


def _sigmoid(u):
    out = np.empty_like(u)
    pos = u >= 0
    out[pos] = 1.0 / (1.0 + np.exp(-u[pos]))
    e = np.exp(u[~pos])
    out[~pos] = e / (1.0 + e)
    return out


def to_chart(m: ManifoldDescriptor, p) -> np.ndarray:
    """Isometric Euclidean coordinates of a point on a flat manifold.

    Identity for Euclidean space, ``ln`` for the octant, ``logit`` for the
    hypercube. Not defined for the SPD cone.
    """
    p = _point(m, p)
    if m.kind is Kind.EUCLIDEAN:
        return p.copy()
    if m.kind is Kind.OCTANT:
        return np.log(p)
    if m.kind is Kind.HYPERCUBE:
        return _logit(p)
    raise UsageError("the SPD cone has no global flat chart")


def exp_map(m: ManifoldDescriptor, p, v, t: float = 1.0) -> np.ndarray:
    """Point at time ``t`` on the geodesic through ``p`` with velocity ``v``."""
    p = _point(m, p)
    v = _tangent(m, v)
    t = float(t)
    if not np.isfinite(t):
        raise DomainError("step t must be finite")
    if t == 0.0:
        return p.copy()
    if m.kind is Kind.EUCLIDEAN:
        out = p + t * v
    elif m.kind is Kind.OCTANT:
        out = p * np.exp(t * v / p)
    elif m.kind is Kind.HYPERCUBE:
        # sigma(logit p + t v / (p (1 - p))), same curve as the tanh form
        out = _sigmoid(_logit(p) + t * v / (p * (1.0 - p)))
    else:
        s, si = _sqrt_pair(p)
        out = _sym(s @ sym_matrix_function(t * (si @ v @ si), "exp") @ s)
    bad = validate_point(m, out)
    if bad is not None:
        raise NumericError(f"geodesic left the representable domain of {m}: {bad}")
    return out


def inner(m: ManifoldDescriptor, p, u, v) -> float:
    """Riemannian inner product ``<u, v>_p``."""
    p = _point(m, p)
    u = _tangent(m, u)
    v = _tangent(m, v)
    if m.kind is Kind.EUCLIDEAN:
        return float(u @ v)
    if m.kind is Kind.OCTANT:
        return float(np.sum(u * v / p**2))
    if m.kind is Kind.HYPERCUBE:
        return float(np.sum(u * v / (p * (1.0 - p)) ** 2))
    a = np.linalg.solve(p, u)
    b = np.linalg.solve(p, v)
    return float(np.sum(a * b.T))


def norm(m: ManifoldDescriptor, p, v) -> float:
    return float(np.sqrt(max(inner(m, p, v, v), 0.0)))


def egrad_to_rgrad(m: ManifoldDescriptor, p, g) -> np.ndarray:
    """Convert ambient partial derivatives into the Riemannian gradient.

    Applies ``G(p)^-1``: identity, ``p_j^2 g_j``, ``p_j^2 (1 - p_j)^2 g_j``
    or ``X g X`` depending on the manifold.
    """
    p = _point(m, p)
    g = _tangent(m, g)
    if m.kind is Kind.EUCLIDEAN:
        return g.copy()
    if m.kind is Kind.OCTANT:
        return p**2 * g
    if m.kind is Kind.HYPERCUBE:
        return (p * (1.0 - p)) ** 2 * g
    return _sym(p @ g @ p)


def distance(m: ManifoldDescriptor, p, q) -> float:
    """Riemannian distance; geodesics on all four manifolds are minimizing."""
    p = _point(m, p)
    q = _point(m, q)
    if m.kind is Kind.EUCLIDEAN:
        return float(np.linalg.norm(p - q))
    if m.kind is Kind.OCTANT:
        return float(np.linalg.norm(np.log(p) - np.log(q)))
    if m.kind is Kind.HYPERCUBE:
        return float(np.linalg.norm(_logit(p) - _logit(q)))
    _, si = _sqrt_pair(p)
    w = np.linalg.eigvalsh(_sym(si @ q @ si))
    if not w[0] > 0:
        raise NumericError("relative matrix lost positive definiteness")
    return float(np.sqrt(np.sum(np.log(w) ** 2)))


def random_point(m: ManifoldDescriptor, rng: np.random.Generator, scale: float = 1.0) -> np.ndarray:
    """Draw a point whose chart coordinates are roughly N(0, scale^2)."""
    z = rng.normal(scale=scale, size=m.shape)
    if m.kind is Kind.EUCLIDEAN:
        return z
    if m.kind is Kind.OCTANT:
        return np.exp(z)
    if m.kind is Kind.HYPERCUBE:
        return _sigmoid(z)
    return sym_matrix_function(_sym(z) * scale / max(np.sqrt(m.n), 1.0), "exp")


def random_tangent(m: ManifoldDescriptor, p, rng: np.random.Generator, unit: bool = False) -> np.ndarray:
    """Gaussian tangent at ``p``; normalized to unit metric length if asked."""
    z = rng.normal(size=m.shape)
    if m.kind is Kind.SPD:
        z = _sym(z)
    # push forward a chart-space vector so its metric size does not depend on p
    p = _point(m, p)
    if m.kind is Kind.EUCLIDEAN:
        v = z
    elif m.kind is Kind.OCTANT:
        v = p * z
    elif m.kind is Kind.HYPERCUBE:
        v = p * (1.0 - p) * z
    else:
        s, _ = _sqrt_pair(p)
        v = _sym(s @ z @ s)
    if unit:
        nv = norm(m, p, v)
        if nv == 0.0:
            return random_tangent(m, p, rng, unit=True)
        v = v / nv
    return v
