"""Euclidean projection onto the convex hull of a small vertex set.

Wolfe's min-norm-point algorithm on the shifted vertices: the projection
of x onto cv{v_1..v_k} is x + y*, where y* is the norm-minimal point of
cv{v_j - x}. Major cycles add the vertex most aligned against the current
point; minor cycles solve the affine-hull least-norm subproblem on the
active support and walk back until all hull coefficients are nonnegative.

The batch form is the primary implementation (one Wolfe run per row); it
is compiled with numba unless the numpy backend is selected.
"""

from __future__ import annotations

import numpy as np

from . import get_backend, numba_available

# KKT gap below which the current point is accepted, relative to the
# squared data scale; comfortably inside the 1e-10 contract
_KKT_REL = 1e-12
_DROP_EPS = 1e-14


def _project_batch_impl(V, X):  # pragma: no cover - exercised via wrappers
    # V: (k, d) vertices, X: (S, d) query points
    k, d = V.shape
    S = X.shape[0]
    projs = np.empty((S, d))
    dists = np.empty(S)
    weights = np.zeros((S, k))
    kkts = np.empty(S)

    for s in range(S):
        x = X[s]
        if k == 1:
            delta = V[0] - x
            dist = np.sqrt(np.dot(delta, delta))
            projs[s] = V[0]
            dists[s] = dist
            weights[s, 0] = 1.0
            kkts[s] = 0.0
            continue

        P = V - x  # rows p_j
        sq = np.empty(k)
        for j in range(k):
            sq[j] = np.dot(P[j], P[j])
        scale = 1.0 + sq.max()
        tol = _KKT_REL * scale

        support = np.empty(k, np.int64)
        lam = np.zeros(k)
        nsup = 1
        support[0] = np.argmin(sq)
        lam[0] = 1.0

        y = P[support[0]].copy()
        kkt = 0.0
        max_major = 10 * k * k + 20

        for _ in range(max_major):
            yy = np.dot(y, y)
            dots = P @ y
            jstar = np.argmin(dots)
            kkt = yy - dots[jstar]
            if kkt <= tol:
                break
            already = False
            for i in range(nsup):
                if support[i] == jstar:
                    already = True
                    break
            if already:  # numerically stalled; accept current point
                break
            support[nsup] = jstar
            lam[nsup] = 0.0
            nsup += 1

            # minor cycles
            for _minor in range(2 * k + 4):
                m = nsup
                K = np.zeros((m + 1, m + 1))
                for a in range(m):
                    for b in range(m):
                        K[a, b] = np.dot(P[support[a]], P[support[b]])
                    K[a, m] = 1.0
                    K[m, a] = 1.0
                rhs = np.zeros((m + 1, 1))
                rhs[m, 0] = 1.0
                sol = np.linalg.lstsq(K, rhs)[0][:, 0]
                alpha = sol[:m]
                if alpha.min() > _DROP_EPS:
                    lam[:m] = alpha
                    break
                # walk from lam toward alpha until a coefficient vanishes
                theta = 1.0
                for i in range(m):
                    if alpha[i] <= _DROP_EPS:
                        denom = lam[i] - alpha[i]
                        if denom > 0.0:
                            t = lam[i] / denom
                            if t < theta:
                                theta = t
                for i in range(m):
                    lam[i] = (1.0 - theta) * lam[i] + theta * alpha[i]
                # drop vanished support points
                keep = 0
                for i in range(m):
                    if lam[i] > _DROP_EPS:
                        support[keep] = support[i]
                        lam[keep] = lam[i]
                        keep += 1
                if keep == 0:  # degenerate; restart from best vertex
                    support[0] = np.argmin(sq)
                    lam[0] = 1.0
                    keep = 1
                nsup = keep
            # recombine y from the support
            y[:] = 0.0
            tot = 0.0
            for i in range(nsup):
                tot += lam[i]
            for i in range(nsup):
                y += (lam[i] / tot) * P[support[i]]

        dists[s] = np.sqrt(np.dot(y, y))
        projs[s] = x + y
        for i in range(nsup):
            weights[s, support[i]] = lam[i]
        wsum = weights[s].sum()
        if wsum > 0.0:
            weights[s] /= wsum
        kkts[s] = max(kkt, 0.0)

    return projs, dists, weights, kkts


_project_batch_py = _project_batch_impl
if numba_available():
    from numba import njit

    _project_batch_nb = njit(cache=True)(_project_batch_impl)
else:  # pragma: no cover
    _project_batch_nb = None


def project_points(vertices: np.ndarray, X: np.ndarray):
    """Project each row of X onto cv{rows of vertices}.

    Returns (projections (S,d), distances (S,), hull weights (S,k),
    KKT gaps (S,)).
    """
    V = np.ascontiguousarray(vertices, dtype=float)
    X = np.ascontiguousarray(X, dtype=float)
    if V.ndim != 2 or X.ndim != 2 or V.shape[1] != X.shape[1]:
        raise ValueError("vertices (k,d) and points (S,d) must share d")
    if get_backend() == "numba" and _project_batch_nb is not None:
        return _project_batch_nb(V, X)
    return _project_batch_py(V, X)


def project_point(vertices: np.ndarray, x: np.ndarray):
    """Single-point convenience wrapper around :func:`project_points`."""
    x = np.asarray(x, dtype=float)
    projs, dists, weights, kkts = project_points(vertices, x[None, :])
    return projs[0], float(dists[0]), weights[0], float(kkts[0])
