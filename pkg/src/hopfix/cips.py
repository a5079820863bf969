"""Separation margins for pattern subsets and the CIPS verdict.

A subset J is Convexly Inner Product Separated from competitors J0 when
every point v of its hull scores strictly higher against J than against
J0, i.e. max_{j in J} w_j^T v - max_{j in J0} w_j^T v > 0. The margin is
estimated by Monte Carlo over uniform hull points; the verdict for a face
additionally requires the margin of each of its facets (against the full
complement) to clear the threshold.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .config import TOL
from .errors import UnsupportedFaceError
from .hopfield import PatternSet
from .polytope import FaceSpec

__all__ = [
    "MarginEstimate",
    "CipsVerdict",
    "margin",
    "margin_batch",
    "estimate_min_margin",
    "cips_check",
    "grid_min_margin",
    "derived_seed",
]


def derived_seed(base: int, index: int) -> int:
    """Per-task stream seed: base XOR task index, folded to 64 bits."""
    return (int(base) ^ int(index)) & 0xFFFFFFFFFFFFFFFF


def _index_sets(patterns: PatternSet, J, J0):
    n = patterns.count
    J = tuple(sorted(int(j) for j in J))
    if not J or len(set(J)) != len(J) or J[0] < 0 or J[-1] >= n:
        raise ValueError("J must be a nonempty subset of range(n)")
    if J0 is None:
        J0 = tuple(j for j in range(n) if j not in J)
    else:
        J0 = tuple(sorted(int(j) for j in J0))
        if any(j < 0 or j >= n for j in J0) or len(set(J0)) != len(J0):
            raise ValueError("J0 must be a subset of range(n)")
        if set(J) & set(J0):
            raise ValueError("J and J0 must be disjoint")
    return J, J0


def margin(patterns: PatternSet, J, J0, v: np.ndarray) -> float:
    """max_{j in J} w_j^T v - max_{j in J0} w_j^T v, with max over an
    empty competitor set taken as -inf (so the margin is +inf)."""
    J, J0 = _index_sets(patterns, J, J0)
    v = np.asarray(v, dtype=float)
    if v.shape != (patterns.dim,) or not np.all(np.isfinite(v)):
        raise ValueError("v must be a finite vector of length d")
    scores = patterns.matrix.T @ v
    tau1 = scores[list(J)].max()
    if not J0:
        return float("inf")
    tau2 = scores[list(J0)].max()
    return float(tau1 - tau2)


def margin_batch(patterns: PatternSet, J, J0, V: np.ndarray) -> np.ndarray:
    """Margins for each row of V, shape (S, d)."""
    J, J0 = _index_sets(patterns, J, J0)
    scores = np.asarray(V, dtype=float) @ patterns.matrix
    tau1 = scores[:, list(J)].max(axis=1)
    if not J0:
        return np.full(scores.shape[0], np.inf)
    tau2 = scores[:, list(J0)].max(axis=1)
    return tau1 - tau2


@dataclass(frozen=True)
class MarginEstimate:
    """Monte-Carlo minimum margin of a face against a competitor set."""

    face: FaceSpec
    competitor_set: tuple[int, ...]
    delta_min: float
    delta_median: float
    samples: int
    seed: int


@dataclass(frozen=True)
class CipsVerdict:
    face: FaceSpec
    passed: bool
    threshold: float
    estimates: tuple[MarginEstimate, ...]  # face first, then its facets

    @property
    def worst(self) -> float:
        return min(e.delta_min for e in self.estimates)


def estimate_min_margin(
    patterns: PatternSet, J, samples: int, seed: int, J0=None
) -> MarginEstimate:
    """Minimum and median margin over uniform hull samples of the face.

    One generator stream in row order: the first m rows of a longer run
    coincide with an m-sample run, so the minimum is nonincreasing in the
    sample count for a fixed seed.
    """
    if samples < 1:
        raise ValueError("need at least one sample")
    J, J0 = _index_sets(patterns, J, J0)
    face = FaceSpec(patterns, J)
    rng = np.random.default_rng(seed)
    A = rng.standard_exponential((samples, len(J)))
    A /= A.sum(axis=1, keepdims=True)
    V = A @ face.vertices
    margins = margin_batch(patterns, J, J0, V)
    return MarginEstimate(
        face=face,
        competitor_set=J0,
        delta_min=float(margins.min()),
        delta_median=float(np.median(margins)),
        samples=int(samples),
        seed=int(seed),
    )


def cips_check(
    patterns: PatternSet,
    J,
    threshold: float = TOL.cips_threshold,
    samples: int = 10_000,
    seed: int = 0,
) -> CipsVerdict:
    """Margin estimates for the face and every facet, each against the
    complement of its own index set; passes when all minima clear the
    threshold. Facet tasks draw from seeds derived off the base seed."""
    J, _ = _index_sets(patterns, J, None)
    face = FaceSpec(patterns, J)  # raises UnsupportedFaceError if degenerate
    estimates = [estimate_min_margin(patterns, J, samples, seed)]
    if len(J) >= 2:
        for task, sub in enumerate(itertools.combinations(J, len(J) - 1), start=1):
            estimates.append(
                estimate_min_margin(patterns, sub, samples, derived_seed(seed, task))
            )
    passed = all(e.delta_min > threshold for e in estimates)
    return CipsVerdict(
        face=face, passed=passed, threshold=float(threshold), estimates=tuple(estimates)
    )


def _simplex_grid(k: int, steps: int, chunk: int = 200_000):
    """Yield chunks of barycentric grid weights with the given resolution."""
    if k == 1:
        yield np.ones((1, 1))
        return
    buf = []
    if k == 2:
        a = np.linspace(0.0, 1.0, steps + 1)
        yield np.column_stack([a, 1.0 - a])
        return
    # k in {3, 4}: vectorize the last two coordinates per leading index
    for lead in itertools.product(range(steps + 1), repeat=k - 2):
        used = sum(lead)
        if used > steps:
            continue
        rest = steps - used
        a = np.arange(rest + 1)
        rows = np.empty((rest + 1, k))
        rows[:, : k - 2] = np.asarray(lead) / steps
        rows[:, k - 2] = a / steps
        rows[:, k - 1] = (rest - a) / steps
        buf.append(rows)
        total = sum(r.shape[0] for r in buf)
        if total >= chunk:
            yield np.concatenate(buf)
            buf = []
    if buf:
        yield np.concatenate(buf)


def grid_min_margin(patterns: PatternSet, J, grid_per_dim: int) -> float:
    """Brute-force minimum margin over a barycentric grid on the face.

    The oracle counterpart of :func:`estimate_min_margin` for |J| <= 4;
    the grid step is 1/(grid_per_dim - 1).
    """
    J, J0 = _index_sets(patterns, J, None)
    if len(J) > 4:
        raise UnsupportedFaceError("grid oracle supports faces of at most 4 vertices")
    if grid_per_dim < 2:
        raise ValueError("need at least two grid points per dimension")
    face = FaceSpec(patterns, J)
    steps = grid_per_dim - 1
    best = np.inf
    for A in _simplex_grid(len(J), steps):
        V = A @ face.vertices
        m = margin_batch(patterns, J, J0, V)
        best = min(best, float(m.min()))
    return best
