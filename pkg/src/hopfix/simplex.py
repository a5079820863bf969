"""Exact fixed-point structure of the scaled softmax on the standard simplex.

Every fixed point of S_beta lies on a line segment through the simplex
center with entries taking one value on an index set J and another on its
complement. Parametrizing such a line by the shared entry x on J, a point
other than the center is fixed exactly when

    beta = log((1/x - k) / (n - k)) * (n - k) / (1 - n x)

with k = |J|. That scalar profile diverges at both ends of (0, 1/k), has a
removable singularity of value n at x = 1/n, and is unimodal, so each line
carries zero or two nontrivial fixed points depending on whether beta
clears the profile's minimum. The minima are the bifurcation thresholds.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np
from scipy.optimize import bisect, minimize_scalar

from .config import TOL
from .errors import DegenerateBifurcationError, InconsistencyError
from .hopfield import check_beta, softmax, spectral_radius

__all__ = [
    "SimplexLine",
    "ThresholdTable",
    "CatalogPoint",
    "SoftmaxCatalog",
    "beta_for_line_point",
    "bifurcation_threshold",
    "line_fixed_point_coords",
    "enumerate_softmax_fixed_points",
    "classify_softmax_catalog",
    "softmax_tangent_spectral_radius",
]

# explicit points are materialized only up to this n (count grows as 2^n)
MATERIALIZE_MAX_N = 20

_SCAN_POINTS = 64


def _check_nk(n: int, k: int) -> tuple[int, int]:
    n, k = int(n), int(k)
    if n < 2:
        raise ValueError("need n >= 2")
    if not 1 <= k <= n // 2:
        raise ValueError(f"need 1 <= k <= n//2, got k={k}, n={n}")
    return n, k


@dataclass(frozen=True)
class SimplexLine:
    """Line segment in the simplex with entries x on J, (1-kx)/(n-k) off J."""

    n: int
    J: tuple[int, ...]

    def __post_init__(self):
        J = tuple(sorted(int(j) for j in self.J))
        object.__setattr__(self, "J", J)
        if not J or len(J) >= self.n or len(set(J)) != len(J):
            raise ValueError("J must be a nonempty proper subset of range(n)")
        if J[0] < 0 or J[-1] >= self.n:
            raise ValueError("J indices out of range")

    @property
    def k(self) -> int:
        return len(self.J)

    def point(self, x: float) -> np.ndarray:
        """Embed the line coordinate x in [0, 1/k] as a simplex vector."""
        n, k = self.n, self.k
        if not -1e-15 <= x <= 1.0 / k + 1e-15:
            raise ValueError(f"line coordinate {x} outside [0, 1/{k}]")
        p = np.full(n, (1.0 - k * x) / (n - k))
        p[list(self.J)] = x
        return p


def beta_for_line_point(n: int, k: int, x: float) -> float:
    """Scaling at which the line point with coordinate x is fixed.

    Closed form log((1/x-k)/(n-k)) * (n-k)/(1-nx); near the removable
    singularity x = 1/n the series

        (1/x) * (1 + sum_{j>=1} (-1)^j/(j+1) * u^j),   u = (1/x-n)/(n-k)

    is used instead, truncated once the alternating tail drops below 1e-12.
    """
    n, k = _check_nk(n, k)
    x = float(x)
    if not 0.0 < x < 1.0 / k:
        raise ValueError(f"x must lie in (0, 1/{k}), got {x}")
    # u = (1/x - n)/(n - k), formed from (x - 1/n) to avoid the
    # cancellation in 1 - n*x
    c = 1.0 / n
    dx = x - c
    one_minus_nc = 1.0 - n * c  # rounding of the constant 1/n
    u = (one_minus_nc - n * dx) / (x * (n - k))
    if abs(x - c) < TOL.series_radius and abs(u) < 0.9:
        term = 1.0
        acc = 1.0
        for j in range(1, 60):
            term *= -u
            contrib = term / (j + 1)
            acc += contrib
            if abs(term) / (j + 2) < TOL.series_tail:
                break
        return acc / x
    return math.log1p(u) / (x * u)


@lru_cache(maxsize=4096)
def _profile_min(n: int, k: int) -> tuple[float, float]:
    """(argmin, min) of the line profile over (0, 1/k)."""
    hi = 1.0 / k
    xs = np.unique(
        np.concatenate(
            [
                np.geomspace(hi * 1e-9, hi * 0.5, _SCAN_POINTS // 2),
                hi - np.geomspace(hi * 1e-9, hi * 0.5, _SCAN_POINTS // 2),
            ]
        )
    )
    vals = np.array([beta_for_line_point(n, k, x) for x in xs])
    i = int(np.argmin(vals))
    lo_b = xs[max(i - 1, 0)]
    hi_b = xs[min(i + 1, len(xs) - 1)]
    try:
        res = minimize_scalar(
            lambda x: beta_for_line_point(n, k, x),
            bracket=(lo_b, xs[i], hi_b),
            method="golden",
            options={"xtol": 1e-12},
        )
    except ValueError:
        # flat scan neighborhood; fall back to a bounded search
        res = minimize_scalar(
            lambda x: beta_for_line_point(n, k, x),
            bounds=(lo_b, hi_b),
            method="bounded",
            options={"xatol": 1e-12},
        )
    xmin = float(res.x)
    return xmin, float(beta_for_line_point(n, k, xmin))


def bifurcation_threshold(n: int, k: int) -> float:
    """Minimum of the line profile: the beta at which line-J fixed points emerge."""
    n, k = _check_nk(n, k)
    return _profile_min(n, k)[1]


@dataclass(frozen=True)
class ThresholdTable:
    """Bifurcation thresholds for all k = 1..n//2, with edge conventions."""

    n: int
    values: tuple[float, ...]  # index k-1 holds the threshold for k

    @staticmethod
    def build(n: int) -> "ThresholdTable":
        n = int(n)
        vals = tuple(bifurcation_threshold(n, k) for k in range(1, n // 2 + 1))
        return ThresholdTable(n=n, values=vals)

    def threshold(self, k: int) -> float:
        # conventions: 0 below the first, +inf above the last
        if k == 0:
            return 0.0
        if k == self.n // 2 + 1:
            return math.inf
        return self.values[k - 1]

    def check(self) -> list[str]:
        """Report violations of the expected shape (increasing, bounded by n).

        For even n the last threshold equals n exactly (the profile is
        symmetric about the center there), so the bound is checked as <= n.
        """
        issues = []
        for a, b in itertools.pairwise(self.values):
            if not a < b:
                issues.append(f"thresholds not strictly increasing: {a} !< {b}")
        for k, v in enumerate(self.values, start=1):
            if v > self.n + 1e-9:
                issues.append(f"threshold for k={k} exceeds n: {v}")
        return issues


def _bracket_on_flank(n, k, beta, x_from, x_to) -> tuple[float, float] | None:
    """Log-spaced scan from x_from toward x_to for a sign change of profile-beta."""
    f_from = beta_for_line_point(n, k, x_from) - beta
    span = abs(x_to - x_from)
    direction = 1.0 if x_to > x_from else -1.0
    steps = np.geomspace(span * 1e-12, span, _SCAN_POINTS)
    prev_x, prev_f = x_from, f_from
    for s in steps:
        x = x_from + direction * s
        f = beta_for_line_point(n, k, x) - beta
        if prev_f == 0.0:
            return prev_x, prev_x
        if f == 0.0:
            return x, x
        if np.sign(f) != np.sign(prev_f):
            return (prev_x, x) if prev_x < x else (x, prev_x)
        prev_x, prev_f = x, f
    return None


def line_fixed_point_coords(n: int, k: int, beta: float) -> list[float]:
    """Coordinates of the nontrivial fixed points on a size-k line.

    Empty when beta is below the bifurcation threshold; otherwise the two
    roots of profile(x) = beta, one per monotone flank of the argmin,
    returned largest first. beta = n is rejected: there the root collides
    with the center.
    """
    n, k = _check_nk(n, k)
    beta = check_beta(beta)
    if abs(beta - n) < TOL.bifurcation_window:
        raise DegenerateBifurcationError(
            f"beta = {beta} collides with the center crossing at beta = n = {n}"
        )
    xmin, bmin = _profile_min(n, k)
    if beta <= bmin:
        return []

    roots: list[float] = []
    hi = 1.0 / k
    # left flank: profile decreasing from +inf at 0+ down to the minimum
    lo_end = xmin * 1e-14
    while beta_for_line_point(n, k, lo_end) < beta:  # pragma: no cover
        lo_end *= 0.01
    bracket = _bracket_on_flank(n, k, beta, xmin, lo_end)
    if bracket is not None:
        a, b = bracket
        r = a if a == b else bisect(
            lambda x: beta_for_line_point(n, k, x) - beta, a, b, xtol=TOL.root_xtol
        )
        roots.append(float(r))
    # right flank: increasing from the minimum to +inf at 1/k
    hi_end = hi - (hi - xmin) * 1e-14
    while beta_for_line_point(n, k, hi_end) < beta:  # pragma: no cover
        hi_end = hi - (hi - hi_end) * 0.01
    bracket = _bracket_on_flank(n, k, beta, xmin, hi_end)
    if bracket is not None:
        a, b = bracket
        r = a if a == b else bisect(
            lambda x: beta_for_line_point(n, k, x) - beta, a, b, xtol=TOL.root_xtol
        )
        roots.append(float(r))
    if len(roots) != 2:
        raise DegenerateBifurcationError(
            f"expected two roots for beta={beta} > threshold {bmin}, found {roots}"
        )
    roots.sort(reverse=True)
    return roots


@dataclass
class CatalogPoint:
    """One softmax fixed point, with its line-and-root provenance."""

    vector: np.ndarray
    k: int  # 0 for the center
    J: tuple[int, ...]  # empty for the center
    coord: float  # line coordinate (1/n at the center)
    root: str  # "center", "outer" (larger coordinate) or "inner"
    stable: bool | None = None
    marginal: bool = False
    spectral_radius: float | None = None


@dataclass
class SoftmaxCatalog:
    """All fixed points of the scaled softmax at a given (n, beta)."""

    n: int
    beta: float
    nu: int  # largest line size carrying fixed points
    root_pairs: dict[int, tuple[float, float]]  # k -> (outer, inner)
    points: list[CatalogPoint] | None  # None when not materialized
    thresholds: ThresholdTable

    @property
    def total(self) -> int:
        if self.points is None:
            raise ValueError("catalog was not materialized")
        return len(self.points)

    @property
    def stable_count(self) -> int:
        if self.points is None:
            raise ValueError("catalog was not materialized")
        if any(pt.stable is None for pt in self.points):
            raise ValueError("catalog has not been classified")
        return sum(bool(pt.stable) for pt in self.points)


def enumerate_softmax_fixed_points(
    n: int, beta: float, materialize: bool | None = None
) -> SoftmaxCatalog:
    """Full fixed-point catalog of the scaled softmax on the (n-1)-simplex.

    beta must stay clear (1e-9) of every bifurcation threshold and of n.
    For size n//2 lines with even n, a subset and its complement carve the
    same segment, so only the subset containing index 0 is kept; each fixed
    point then appears exactly once.
    """
    n = int(n)
    beta = check_beta(beta)
    if n < 2:
        raise ValueError("need n >= 2")
    table = ThresholdTable.build(n)
    if abs(beta - n) < TOL.bifurcation_window:
        raise DegenerateBifurcationError(f"beta = {beta} is the center crossing value n")
    for k in range(1, n // 2 + 1):
        if abs(beta - table.threshold(k)) < TOL.bifurcation_window:
            raise DegenerateBifurcationError(
                f"beta = {beta} sits on the k={k} bifurcation threshold"
            )

    nu = 0
    for k in range(1, n // 2 + 1):
        if table.threshold(k) < beta:
            nu = k
    root_pairs = {k: tuple(line_fixed_point_coords(n, k, beta)) for k in range(1, nu + 1)}

    if materialize is None:
        materialize = n <= MATERIALIZE_MAX_N
    points: list[CatalogPoint] | None = None
    if materialize:
        center = CatalogPoint(
            vector=np.full(n, 1.0 / n), k=0, J=(), coord=1.0 / n, root="center"
        )
        points = [center]
        for k in range(1, nu + 1):
            outer, inner = root_pairs[k]
            for J in itertools.combinations(range(n), k):
                if 2 * k == n and 0 not in J:
                    continue  # complement pairs parametrize the same line
                line = SimplexLine(n=n, J=J)
                points.append(
                    CatalogPoint(vector=line.point(outer), k=k, J=J, coord=outer, root="outer")
                )
                points.append(
                    CatalogPoint(vector=line.point(inner), k=k, J=J, coord=inner, root="inner")
                )
    return SoftmaxCatalog(
        n=n, beta=beta, nu=nu, root_pairs=root_pairs, points=points, thresholds=table
    )


def softmax_tangent_spectral_radius(p: np.ndarray, beta: float) -> float:
    """Spectral radius of the softmax Jacobian on the simplex tangent space.

    The Jacobian at a fixed point p is beta*(diag(p) - p p^T); it kills the
    all-ones direction, so the full-space radius equals the tangent one.
    """
    p = np.asarray(p, dtype=float)
    M = beta * (np.diag(p) - np.outer(p, p))
    return spectral_radius(M)


def classify_softmax_catalog(catalog: SoftmaxCatalog) -> SoftmaxCatalog:
    """Attach stability labels: center stable iff beta < n; line points are
    stable exactly for the n vertex-side outer roots on singleton lines.

    Each label is cross-checked against the numeric tangent spectral
    radius; a contradiction raises, and a radius within 1e-6 of 1 is
    flagged marginal instead of trusted.
    """
    if catalog.points is None:
        raise ValueError("catalog must be materialized to classify")
    n, beta = catalog.n, catalog.beta
    for pt in catalog.points:
        if pt.root == "center":
            theory_stable = beta < n
        else:
            theory_stable = pt.k == 1 and pt.root == "outer"
        rho = softmax_tangent_spectral_radius(pt.vector, beta)
        pt.spectral_radius = rho
        if abs(rho - 1.0) < 1e-6:
            pt.stable = theory_stable
            pt.marginal = True
            continue
        numeric_stable = rho < 1.0
        if numeric_stable != theory_stable:
            raise InconsistencyError(
                f"stability mismatch at point {pt.J}/{pt.root}: "
                f"theory says {'stable' if theory_stable else 'unstable'}, "
                f"spectral radius is {rho:.12g} (n={n}, beta={beta})"
            )
        pt.stable = theory_stable
    return catalog
