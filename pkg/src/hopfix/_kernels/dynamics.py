"""Per-seed Hopfield-map iteration and damped-Newton refinement.

Both kernels run one independent loop per seed row, so the batch form is
the primary implementation. The Newton step solves (J - I) dx = -(f(x)-x)
by least squares (robust to the near-singular case) with step halving,
and falls back to plain map iteration when no damped step makes progress.
"""

from __future__ import annotations

import numpy as np

from . import get_backend, numba_available


def _map_once(W, beta, x):  # pragma: no cover - inlined into kernels
    z = beta * (x @ W)
    z -= z.max()
    p = np.exp(z)
    p /= p.sum()
    return W @ p, p


def _iterate_batch_impl(W, beta, X0, max_iter, tol):  # pragma: no cover
    S, d = X0.shape
    X = X0.copy()
    iters = np.zeros(S, np.int64)
    conv = np.zeros(S, np.bool_)
    for s in range(S):
        x = X[s].copy()
        for t in range(max_iter):
            z = beta * (x @ W)
            z -= z.max()
            p = np.exp(z)
            p /= p.sum()
            xn = W @ p
            step = np.sqrt(np.dot(xn - x, xn - x))
            x = xn
            iters[s] = t + 1
            if step < tol:
                conv[s] = True
                break
        X[s] = x
    return X, iters, conv


def _newton_batch_impl(W, beta, X0, max_iter, tol, fallback_iters):  # pragma: no cover
    S, d = X0.shape
    eye = np.eye(d)
    X = X0.copy()
    residuals = np.empty(S)
    ok = np.zeros(S, np.bool_)
    for s in range(S):
        x = X[s].copy()
        z = beta * (x @ W)
        z -= z.max()
        p = np.exp(z)
        p /= p.sum()
        fx = W @ p
        g = fx - x
        res = np.sqrt(np.dot(g, g))
        for _ in range(max_iter):
            if res < tol:
                ok[s] = True
                break
            mu = fx
            J = beta * ((W * p) @ W.T - np.outer(mu, mu))
            A = J - eye
            dx = np.linalg.lstsq(A, -g.reshape(d, 1))[0][:, 0]
            t = 1.0
            improved = False
            while t > 9.5e-7:
                xn = x + t * dx
                zn = beta * (xn @ W)
                zn -= zn.max()
                pn = np.exp(zn)
                pn /= pn.sum()
                fn = W @ pn
                gn = fn - xn
                rn = np.sqrt(np.dot(gn, gn))
                if rn < res:
                    x, p, fx, g, res = xn, pn, fn, gn, rn
                    improved = True
                    break
                t *= 0.5
            if not improved:
                # Newton direction useless (singular or non-descent):
                # plain map iterations
                for _ in range(fallback_iters):
                    z = beta * (x @ W)
                    z -= z.max()
                    p = np.exp(z)
                    p /= p.sum()
                    x = W @ p
                z = beta * (x @ W)
                z -= z.max()
                p = np.exp(z)
                p /= p.sum()
                fx = W @ p
                g = fx - x
                res = np.sqrt(np.dot(g, g))
                if res < tol:
                    ok[s] = True
                break
        else:
            if res < tol:
                ok[s] = True
        X[s] = x
        residuals[s] = res
    return X, residuals, ok


_iterate_batch_py = _iterate_batch_impl
_newton_batch_py = _newton_batch_impl
if numba_available():
    from numba import njit

    _iterate_batch_nb = njit(cache=True)(_iterate_batch_impl)
    _newton_batch_nb = njit(cache=True)(_newton_batch_impl)
else:  # pragma: no cover
    _iterate_batch_nb = None
    _newton_batch_nb = None


def _prep(W, X0):
    W = np.ascontiguousarray(W, dtype=float)
    X0 = np.ascontiguousarray(X0, dtype=float)
    if W.ndim != 2 or X0.ndim != 2 or X0.shape[1] != W.shape[0]:
        raise ValueError("W must be (d,n) and X0 (S,d)")
    return W, X0


def iterate_batch(W, beta, X0, max_iter=1000, tol=1e-12):
    """Iterate the map on every row of X0 until the step is below tol.

    Returns (final points (S,d), iteration counts (S,), converged (S,)).
    """
    W, X0 = _prep(W, X0)
    args = (W, float(beta), X0, int(max_iter), float(tol))
    if get_backend() == "numba" and _iterate_batch_nb is not None:
        return _iterate_batch_nb(*args)
    return _iterate_batch_py(*args)


def newton_batch(W, beta, X0, max_iter=50, tol=1e-12, fallback_iters=200):
    """Damped Newton on f(x) - x from every row of X0.

    Returns (refined points (S,d), residuals (S,), success flags (S,)).
    """
    W, X0 = _prep(W, X0)
    args = (W, float(beta), X0, int(max_iter), float(tol), int(fallback_iters))
    if get_backend() == "numba" and _newton_batch_nb is not None:
        return _newton_batch_nb(*args)
    return _newton_batch_py(*args)
