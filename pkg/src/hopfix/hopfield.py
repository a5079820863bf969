"""The continuous Hopfield map f(x) = W softmax(beta * W^T x) and its spectrum.

Patterns are stored as unit-norm columns of W. Everything here is a pure
function of its inputs; nothing holds state.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .config import TOL
from .errors import NumericalError

__all__ = [
    "PatternSet",
    "softmax",
    "hopfield_map",
    "hopfield_map_batch",
    "jacobian",
    "jacobian_quadratic_form",
    "spectral_radius",
    "check_beta",
    "check_simplex",
]

# eigvalsh is exact and cheap at these sizes; above this we switch to
# shifted power iteration
_DENSE_EIG_MAX_DIM = 64


def check_beta(beta: float) -> float:
    beta = float(beta)
    if not np.isfinite(beta) or beta <= 0.0:
        raise ValueError(f"beta must be a finite positive real, got {beta}")
    return beta


def check_simplex(p: np.ndarray, atol: float = TOL.simplex_sum) -> np.ndarray:
    p = np.asarray(p, dtype=float)
    if p.ndim != 1 or p.size < 1:
        raise ValueError("probability vector must be 1-D and nonempty")
    if np.any(p < -atol):
        raise ValueError("probability vector has a negative entry")
    if abs(p.sum() - 1.0) > max(atol, atol * p.size):
        raise ValueError(f"probability vector sums to {p.sum()!r}, not 1")
    return p


@dataclass(frozen=True)
class PatternSet:
    """Unit-norm, pairwise-distinct pattern columns w_1..w_n in R^d."""

    matrix: np.ndarray  # shape (d, n), one pattern per column

    def __post_init__(self):
        w = np.ascontiguousarray(np.asarray(self.matrix, dtype=float))
        object.__setattr__(self, "matrix", w)
        if w.ndim != 2:
            raise ValueError("pattern matrix must be 2-D (d, n)")
        d, n = w.shape
        if d < 1 or n < 2:
            raise ValueError(f"need d >= 1 and n >= 2 patterns, got d={d}, n={n}")
        if not np.all(np.isfinite(w)):
            raise ValueError("pattern matrix contains non-finite entries")
        norms = np.linalg.norm(w, axis=0)
        if np.max(np.abs(norms - 1.0)) > TOL.unit_norm:
            raise ValueError(
                "pattern columns must be unit norm "
                f"(worst |norm-1| = {np.max(np.abs(norms - 1.0)):.3e})"
            )
        # pairwise distinctness
        gram = w.T @ w
        sq = np.maximum(2.0 - 2.0 * gram, 0.0)
        np.fill_diagonal(sq, np.inf)
        if np.sqrt(sq.min()) <= TOL.distinct_patterns:
            raise ValueError("pattern columns must be pairwise distinct")

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    @property
    def count(self) -> int:
        return self.matrix.shape[1]

    def column(self, j: int) -> np.ndarray:
        return self.matrix[:, j].copy()

    def restrict(self, indices) -> "PatternSet":
        """Pattern set consisting of the selected columns only."""
        idx = np.asarray(sorted(indices), dtype=int)
        return PatternSet(self.matrix[:, idx])

    @staticmethod
    def from_columns(columns) -> "PatternSet":
        return PatternSet(np.column_stack([np.asarray(c, float) for c in columns]))

    @staticmethod
    def identity(n: int) -> "PatternSet":
        """w_j = e_j, for which the map reduces to the scaled softmax."""
        return PatternSet(np.eye(n))

    @staticmethod
    def demo_square() -> "PatternSet":
        """The 2-D four-pattern set (e1, -e1, e2, -e2)."""
        return PatternSet(np.array([[1.0, -1.0, 0.0, 0.0], [0.0, 0.0, 1.0, -1.0]]))


def _check_finite_vector(x, d: int | None = None) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    if x.ndim != 1:
        raise ValueError("expected a 1-D vector")
    if d is not None and x.size != d:
        raise ValueError(f"dimension mismatch: expected length {d}, got {x.size}")
    if not np.all(np.isfinite(x)):
        raise ValueError("vector contains non-finite entries")
    return x


def softmax(z: np.ndarray, beta: float) -> np.ndarray:
    """exp(beta*z_j) / sum_k exp(beta*z_k), computed max-shifted.

    The shift makes the evaluation safe for beta*max|z| up to the
    overflow edge (~700) and leaves the value unchanged.
    """
    beta = check_beta(beta)
    z = _check_finite_vector(z)
    a = beta * z
    a -= a.max()
    e = np.exp(a)
    p = e / e.sum()
    return p / p.sum()  # renormalize: keeps the sum within 1e-16 of 1


def _softmax_batch(Z: np.ndarray, beta: float) -> np.ndarray:
    # rows of Z are independent score vectors
    A = beta * Z
    A -= A.max(axis=1, keepdims=True)
    E = np.exp(A)
    return E / E.sum(axis=1, keepdims=True)


def hopfield_map(patterns: PatternSet, beta: float, x: np.ndarray) -> np.ndarray:
    """One update step W softmax(beta * W^T x); lands in cv{w_1..w_n}."""
    x = _check_finite_vector(x, patterns.dim)
    p = softmax(patterns.matrix.T @ x, beta)
    return patterns.matrix @ p


def hopfield_map_batch(patterns: PatternSet, beta: float, X: np.ndarray) -> np.ndarray:
    """Apply the map to every row of X, shape (S, d)."""
    X = np.asarray(X, dtype=float)
    if X.ndim != 2 or X.shape[1] != patterns.dim:
        raise ValueError("batch must have shape (S, d)")
    P = _softmax_batch(X @ patterns.matrix, beta)
    return P @ patterns.matrix.T


def jacobian(patterns: PatternSet, beta: float, x: np.ndarray) -> np.ndarray:
    """beta * W (diag(p) - p p^T) W^T at p = softmax(beta W^T x); symmetric PSD."""
    x = _check_finite_vector(x, patterns.dim)
    beta = check_beta(beta)
    W = patterns.matrix
    p = softmax(W.T @ x, beta)
    mu = W @ p
    M = beta * ((W * p) @ W.T - np.outer(mu, mu))
    return 0.5 * (M + M.T)


def jacobian_quadratic_form(
    patterns: PatternSet, p: np.ndarray, beta: float, u: np.ndarray
) -> float:
    """beta * sum_i p_i ((w_i - mu)^T u)^2 with mu = W p.

    This is u^T J u written as the weighted second moment of the patterns
    about their p-mean; u must be unit length.
    """
    beta = check_beta(beta)
    p = check_simplex(p)
    u = _check_finite_vector(u, patterns.dim)
    if abs(np.linalg.norm(u) - 1.0) > 1e-10:
        raise ValueError("direction u must be unit length within 1e-10")
    W = patterns.matrix
    mu = W @ p
    proj = (W - mu[:, None]).T @ u
    return float(beta * np.dot(p, proj**2))


def _check_symmetric(M: np.ndarray) -> np.ndarray:
    M = np.asarray(M, dtype=float)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise ValueError("expected a square matrix")
    if not np.all(np.isfinite(M)):
        raise ValueError("matrix contains non-finite entries")
    if np.max(np.abs(M - M.T)) > TOL.symmetry:
        raise ValueError("matrix is not symmetric within tolerance")
    return M


def _power_extreme(M: np.ndarray, shift: float, rng: np.random.Generator,
                   max_iter: int = 20000) -> tuple[float, float]:
    """Largest eigenvalue of (shift*I + M) minus shift, with residual."""
    d = M.shape[0]
    v = rng.standard_normal(d)
    v /= np.linalg.norm(v)
    lam = 0.0
    for _ in range(max_iter):
        y = M @ v + shift * v
        ny = np.linalg.norm(y)
        if ny == 0.0:
            return -shift, 0.0
        v = y / ny
        lam = float(v @ (M @ v)) + shift
        res = np.linalg.norm(M @ v + shift * v - lam * v)
        if res <= TOL.eig_residual * max(1.0, abs(lam)):
            return lam - shift, res
    return lam - shift, res


def spectral_radius(M: np.ndarray) -> float:
    """Largest |eigenvalue| of a symmetric matrix.

    Dense eigensolve up to 64x64; shifted power iteration with a certified
    residual above that, falling back to the dense path if certification
    fails.
    """
    M = _check_symmetric(M)
    d = M.shape[0]
    if d <= _DENSE_EIG_MAX_DIM:
        return float(np.max(np.abs(np.linalg.eigvalsh(M))))
    shift = float(np.max(np.sum(np.abs(M), axis=1)))  # Gershgorin bound
    rng = np.random.default_rng(0x5EED)
    hi, res_hi = _power_extreme(M, shift, rng)
    lo, res_lo = _power_extreme(-M, shift, rng)
    scale = max(1.0, np.linalg.norm(M, "fro"))
    if max(res_hi, res_lo) > TOL.eig_residual * scale:
        # tiny spectral gap; certify via the dense solver instead
        try:
            return float(np.max(np.abs(np.linalg.eigvalsh(M))))
        except np.linalg.LinAlgError as exc:  # pragma: no cover
            raise NumericalError("eigensolver failed to certify") from exc
    return float(max(hi, lo, 0.0))
