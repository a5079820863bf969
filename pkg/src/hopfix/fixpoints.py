"""Finding, refining, classifying, and certifying Hopfield-map fixed points.

The exponential-tail contraction bound toward a separated face drives
everything here: it yields facet-mapping checks (whose joint success
implies a fixed point in the thickened region), a grid search for the
smallest scaling that exhibits the facet-mapping behavior, and the
worst-case scaling sufficient for it. Instability certificates come from
the Rayleigh quotient of the Jacobian along the difference of the two
dominant patterns.
"""

from __future__ import annotations

import itertools
import math
import warnings
from dataclasses import dataclass

import numpy as np
from scipy.linalg import lu_factor, lu_solve

from ._kernels import iterate_batch, newton_batch, project_points
from .cips import CipsVerdict, derived_seed, estimate_min_margin, margin
from .config import TOL
from .errors import (
    CipsViolationError,
    EpsilonTooLargeError,
    RefinementFailure,
)
from .hopfield import (
    PatternSet,
    check_beta,
    hopfield_map,
    hopfield_map_batch,
    jacobian,
    jacobian_quadratic_form,
    softmax,
    spectral_radius,
)
from .polytope import (
    FaceSpec,
    ThickenedRegion,
    barycenter,
    hull_distances,
    project_to_hull,
)

__all__ = [
    "FixedPointRecord",
    "SeedStrategy",
    "InstabilityCertificate",
    "MirandaReport",
    "iterate_map",
    "refine_newton",
    "find_fixed_points",
    "classify",
    "contraction_bound",
    "instability_certificate",
    "miranda_verify_isolated",
    "miranda_verify_thickened",
    "beta_threshold_search",
    "sufficient_beta_lemma3",
    "face_region_seeds",
]


@dataclass
class FixedPointRecord:
    location: np.ndarray
    residual: float
    spectral_radius: float
    classification: str  # "stable" | "unstable" | "marginal"
    nearest_pattern: tuple[int, float]
    beta: float
    face_hint: FaceSpec | None = None

    def as_dict(self) -> dict:
        return {
            "location": [float(v) for v in self.location],
            "residual": self.residual,
            "spectral_radius": self.spectral_radius,
            "classification": self.classification,
            "nearest_pattern_index": self.nearest_pattern[0],
            "nearest_pattern_distance": self.nearest_pattern[1],
            "beta": self.beta,
            "face_hint": list(self.face_hint.indices) if self.face_hint else None,
        }


def classify(rho: float) -> str:
    """Stable below 1, unstable above, marginal within the 1e-8 band."""
    if rho < 1.0 - TOL.marginal_band:
        return "stable"
    if rho > 1.0 + TOL.marginal_band:
        return "unstable"
    return "marginal"


def _nearest_pattern(patterns: PatternSet, x: np.ndarray) -> tuple[int, float]:
    diffs = patterns.matrix - x[:, None]
    dists = np.linalg.norm(diffs, axis=0)
    j = int(np.argmin(dists))
    return j, float(dists[j])


def iterate_map(
    patterns: PatternSet,
    beta: float,
    x0: np.ndarray,
    max_iter: int = 1000,
    tol: float = 1e-12,
    record_trajectory: bool = True,
):
    """Repeated application of the map until the step drops below tol.

    Returns (trajectory, converged); the trajectory always contains the
    start and the final point, and every intermediate point when
    record_trajectory is set. Non-convergence is reported via the flag.
    """
    if tol <= 0 or max_iter < 1:
        raise ValueError("need tol > 0 and max_iter >= 1")
    x = np.asarray(x0, dtype=float).copy()
    trajectory = [x.copy()]
    converged = False
    for _ in range(max_iter):
        xn = hopfield_map(patterns, beta, x)
        if record_trajectory:
            trajectory.append(xn.copy())
        step = float(np.linalg.norm(xn - x))
        x = xn
        if step < tol:
            converged = True
            break
    if not record_trajectory:
        trajectory.append(x.copy())
    return trajectory, converged


def _residual(patterns: PatternSet, beta: float, x: np.ndarray) -> float:
    return float(np.linalg.norm(hopfield_map(patterns, beta, x) - x))


def _build_record(
    patterns: PatternSet, beta: float, x: np.ndarray, residual: float
) -> FixedPointRecord:
    rho = spectral_radius(jacobian(patterns, beta, x))
    return FixedPointRecord(
        location=x.copy(),
        residual=residual,
        spectral_radius=rho,
        classification=classify(rho),
        nearest_pattern=_nearest_pattern(patterns, x),
        beta=float(beta),
    )


def refine_newton(
    patterns: PatternSet, beta: float, x0: np.ndarray, max_steps: int = 50
) -> FixedPointRecord:
    """Damped Newton on f(x) - x with step halving.

    The linear solve uses LU with pivoting; a pivot below 1e-12 (relative)
    switches to 200 plain map iterations. Raises RefinementFailure when
    neither path reaches the acceptance residual.
    """
    beta = check_beta(beta)
    x = np.asarray(x0, dtype=float).copy()
    if x.shape != (patterns.dim,) or not np.all(np.isfinite(x)):
        raise ValueError("x0 must be a finite vector of length d")
    res = _residual(patterns, beta, x)
    best = res
    eye = np.eye(patterns.dim)

    def fallback(xc):
        for _ in range(200):
            xc = hopfield_map(patterns, beta, xc)
        return xc, _residual(patterns, beta, xc)

    for _ in range(max_steps):
        if res < TOL.refine_target:
            break
        A = jacobian(patterns, beta, x) - eye
        lu, piv = lu_factor(A, check_finite=False)
        diag = np.abs(np.diag(lu))
        if diag.min() <= TOL.singular_pivot * max(1.0, diag.max()):
            x, res = fallback(x)
            best = min(best, res)
            break
        g = hopfield_map(patterns, beta, x) - x
        dx = lu_solve((lu, piv), -g, check_finite=False)
        t, improved = 1.0, False
        while t >= 2.0**-20:
            xn = x + t * dx
            rn = _residual(patterns, beta, xn)
            if rn < res:
                x, res = xn, rn
                improved = True
                break
            t *= 0.5
        best = min(best, res)
        if not improved:
            x, res = fallback(x)
            best = min(best, res)
            break
    if res >= TOL.accept_residual:
        raise RefinementFailure(
            f"refinement stalled at residual {best:.3e}", best_residual=best
        )
    return _build_record(patterns, beta, x, res)


@dataclass
class SeedStrategy:
    """Seed recipe for the global fixed-point search.

    Vertices, per-face barycenters (and copies pulled toward them from
    the global barycenter), uniform hull samples, and caller-provided
    extras. face_size_cap None enumerates all proper subsets for small n
    and falls back to pairs above the enumeration limit.
    """

    include_vertices: bool = True
    face_size_cap: int | None = None
    barycenter_pull: float = 0.9
    random_hull_points: int = 1000
    extra_seeds: np.ndarray | None = None
    seed: int = 0

    _ENUM_LIMIT = 12

    def faces(self, patterns: PatternSet) -> list[tuple[int, ...]]:
        n = patterns.count
        cap = self.face_size_cap
        if cap is None:
            cap = n if n <= self._ENUM_LIMIT else 2
        cap = min(cap, n)
        out = []
        for k in range(2, cap + 1):
            out.extend(itertools.combinations(range(n), k))
        return out

    def build(self, patterns: PatternSet) -> np.ndarray:
        W = patterns.matrix
        b = W.mean(axis=1)
        seeds = []
        if self.include_vertices:
            seeds.extend(W.T)
        for J in self.faces(patterns):
            bj = W[:, list(J)].mean(axis=1)
            seeds.append(bj)
            seeds.append(b + self.barycenter_pull * (bj - b))
        seeds.append(b)
        if self.random_hull_points:
            rng = np.random.default_rng(self.seed)
            A = rng.standard_exponential((self.random_hull_points, patterns.count))
            A /= A.sum(axis=1, keepdims=True)
            seeds.extend(A @ W.T)
        if self.extra_seeds is not None:
            extra = np.asarray(self.extra_seeds, dtype=float)
            seeds.extend(np.atleast_2d(extra))
        return np.asarray(seeds)


def _dedup_points(points: np.ndarray, residuals: np.ndarray, radius: float):
    """Deterministic clustering: lexicographic sweep, best residual wins."""
    order = np.lexsort(points.T[::-1])
    reps: list[int] = []
    for i in order:
        placed = False
        for r, rep in enumerate(reps):
            if np.linalg.norm(points[i] - points[rep]) < radius:
                if residuals[i] < residuals[rep]:
                    reps[r] = i
                placed = True
                break
        if not placed:
            reps.append(int(i))
    return sorted(reps, key=lambda i: tuple(points[i]))


def find_fixed_points(
    patterns: PatternSet,
    beta: float,
    strategy: SeedStrategy | None = None,
    attach_face_hints: bool = True,
) -> list[FixedPointRecord]:
    """Multi-start Newton search, deduplicated and classified.

    Seeds come from the strategy; batch refinement keeps points whose
    residual clears the acceptance gate, clusters them within 1e-6, and
    re-polishes one representative per cluster.
    """
    beta = check_beta(beta)
    strategy = strategy or SeedStrategy()
    seeds = strategy.build(patterns)
    X, res, ok = newton_batch(
        patterns.matrix, beta, seeds, max_iter=50, tol=TOL.refine_target
    )
    keep = res < TOL.accept_residual
    if not np.any(keep):
        return []
    pts, rs = X[keep], res[keep]
    reps = _dedup_points(pts, rs, TOL.dedup_radius)

    records = []
    for i in reps:
        try:
            rec = refine_newton(patterns, beta, pts[i])
        except RefinementFailure:
            continue
        records.append(rec)
    # batch refinement of nearby seeds can land in the same basin; dedup again
    final: list[FixedPointRecord] = []
    for rec in sorted(records, key=lambda r: tuple(r.location)):
        if all(
            np.linalg.norm(rec.location - f.location) >= TOL.dedup_radius
            for f in final
        ):
            final.append(rec)
    if attach_face_hints:
        _attach_face_hints(patterns, final, strategy)
    return final


def _attach_face_hints(patterns, records, strategy, band: float = 1e-5):
    """Heuristic association: nearest face hull, smaller faces winning ties
    within a small distance band (points sit slightly inside the hull)."""
    faces = [(j,) for j in range(patterns.count)]
    faces += strategy.faces(patterns)
    faces.append(tuple(range(patterns.count)))
    for rec in records:
        dists = []
        for J in faces:
            _, d, _, _ = project_points(
                patterns.matrix[:, list(J)].T, rec.location[None, :]
            )
            dists.append(float(d[0]))
        cutoff = min(dists) + band
        best = min(
            (J for J, d in zip(faces, dists) if d <= cutoff),
            key=lambda J: (len(J), J),
        )
        rec.face_hint = FaceSpec(patterns, best)


def contraction_bound(
    patterns: PatternSet, J, v: np.ndarray, eps: float, beta: float
) -> float:
    """2 (n-|J|) exp(beta(-delta(v) + 2 eps)) for a face point v.

    delta(v) is the margin of the face's scores over the complement's at
    v. The measured distance of f(v + eps r) to the face stays strictly
    below this for any unit r.
    """
    beta = check_beta(beta)
    if eps <= 0:
        raise ValueError("eps must be positive")
    J = tuple(sorted(int(j) for j in J))
    face = FaceSpec(patterns, J)
    _, dist, _ = project_to_hull(np.asarray(v, dtype=float), face)
    if dist > TOL.hull_membership:
        raise ValueError(f"v is not on the face (distance {dist:.3e})")
    delta = margin(patterns, J, None, v)
    if not np.isfinite(delta):
        return 0.0
    return float(2.0 * (patterns.count - len(J)) * math.exp(beta * (-delta + 2.0 * eps)))


@dataclass(frozen=True)
class InstabilityCertificate:
    """Rayleigh-quotient witness along the two dominant patterns."""

    direction: np.ndarray
    rayleigh: float
    pair: tuple[int, int]
    p_weights: tuple[float, float]
    beta0: float
    floor: float  # (beta/4) * a * (1 - omega)^2

    @property
    def valid(self) -> bool:
        return self.rayleigh > 1.0


def instability_certificate(
    patterns: PatternSet,
    beta: float,
    record: FixedPointRecord,
    a_threshold: float = 0.05,
) -> InstabilityCertificate | None:
    """Certificate that the fixed point is unstable, when applicable.

    Requires at least two softmax weights >= a_threshold (vertex-like
    points return None). With u the normalized difference of the two
    heaviest patterns, u^T J u > 1 proves rho(J) > 1 since J is symmetric.
    beta0 is reported with the observed second weight standing in for the
    existential constant.
    """
    beta = check_beta(beta)
    if record.residual >= TOL.accept_residual:
        raise ValueError("record must be an accepted fixed point")
    p = softmax(patterns.matrix.T @ record.location, beta)
    order = np.argsort(-p, kind="stable")
    j, k = int(order[0]), int(order[1])
    if p[k] < a_threshold:
        return None
    wj, wk = patterns.matrix[:, j], patterns.matrix[:, k]
    u = (wj - wk) / np.linalg.norm(wj - wk)
    rayleigh = jacobian_quadratic_form(patterns, p, beta, u)
    gram = patterns.matrix.T @ patterns.matrix
    off = np.abs(gram - np.diag(np.diag(gram)))
    omega = float(off.max())
    a = float(p[k])
    floor = 0.25 * beta * a * (1.0 - omega) ** 2
    beta0 = math.inf if omega >= 1.0 else 4.0 / (a * (1.0 - omega) ** 2)
    return InstabilityCertificate(
        direction=u,
        rayleigh=float(rayleigh),
        pair=(j, k),
        p_weights=(float(p[j]), float(p[k])),
        beta0=beta0,
        floor=floor,
    )


@dataclass
class MirandaReport:
    """Sampled facet-mapping evidence; never a proof over the full facets."""

    face_indices: tuple[int, ...]
    kind: str  # "isolated" | "thickened"
    beta: float
    lam: float
    epsilon: float
    samples_per_facet: int
    f0_pass: bool
    f0_worst_slack: float
    f1_pass: bool
    f1_worst_slack: float | None  # None when the side class is vacuous
    f1_vacuous: bool

    @property
    def overall(self) -> bool:
        return self.f0_pass and self.f1_pass


def _facet_hyperplanes(Z: np.ndarray):
    """Outward normals and offsets for every facet of a full-dim simplex.

    Z holds the simplex vertices as rows in R^l with l = len(Z) - 1;
    facet i omits vertex i.
    """
    k, ell = Z.shape[0], Z.shape[1]
    out = []
    for omit in range(k):
        idx = [i for i in range(k) if i != omit]
        base = Z[idx[0]]
        if ell == 1:
            eta = np.array([1.0])
        else:
            M = Z[idx[1:]] - base
            _, _, vt = np.linalg.svd(M)
            eta = vt[-1]
        c = float(eta @ base)
        if float(eta @ Z[omit]) > c:
            eta, c = -eta, -c
        out.append((idx, eta / np.linalg.norm(eta), c / np.linalg.norm(eta)))
    return out


def miranda_verify_isolated(
    face_patterns: PatternSet,
    beta: float,
    lam: float,
    samples: int = 10_000,
    seed: int = 0,
) -> MirandaReport:
    """Facet-mapping check for the isolated polytope of the given patterns.

    The dynamics uses only these columns, so orbits stay in the affine
    hull. For each facet of the shrunk polytope the sampled points must
    not move away from the supporting hyperplane of the matching facet of
    the original polytope (non-negative slack along the outward normal).
    """
    beta = check_beta(beta)
    if not 0.0 < lam < 1.0:
        raise ValueError("shrink factor must lie in (0, 1)")
    k = face_patterns.count
    face = FaceSpec(face_patterns, tuple(range(k)))  # validates simpliciality
    V = face.vertices
    b = V.mean(axis=0)
    q, r = np.linalg.qr((V - b).T)
    span = q[:, np.abs(np.diag(r)) > TOL.face_rank]
    Z = (V - b) @ span

    worst = np.inf
    for task, (idx, eta, _) in enumerate(_facet_hyperplanes(Z)):
        n_F = span @ eta
        rng = np.random.default_rng(derived_seed(seed, task))
        A = rng.standard_exponential((samples, len(idx)))
        A /= A.sum(axis=1, keepdims=True)
        Vp = A @ V[idx]
        X = lam * (Vp - b) + b
        FX = hopfield_map_batch(face_patterns, beta, X)
        slack = (FX - X) @ n_F
        worst = min(worst, float(slack.min()))
    return MirandaReport(
        face_indices=tuple(range(k)),
        kind="isolated",
        beta=beta,
        lam=float(lam),
        epsilon=0.0,
        samples_per_facet=int(samples),
        f0_pass=worst >= 0.0,
        f0_worst_slack=worst,
        f1_pass=True,
        f1_worst_slack=None,
        f1_vacuous=True,
    )


def miranda_verify_thickened(
    patterns: PatternSet,
    beta: float,
    face: FaceSpec,
    lam: float,
    epsilon: float,
    samples: int = 10_000,
    seed: int = 0,
    cips_verdict: CipsVerdict | None = None,
) -> MirandaReport:
    """Distance-contraction checks on the thickened region's two facet classes.

    Extruded facets: the distance to the underlying original facet must not
    grow under the map. Side facets: the distance to the face polytope must
    not grow. Side facets are sampled with one random sign pattern per
    draw (enumerating all 2^m is intractable); when the face is
    full-dimensional the side class is vacuous.
    """
    beta = check_beta(beta)
    region = ThickenedRegion(face, lam, epsilon)
    if cips_verdict is None or not cips_verdict.passed:
        warnings.warn(
            "thickened verification without a passing CIPS verdict; "
            "the contraction hypothesis may not hold",
            stacklevel=2,
        )
    b = region.center
    B = region.complement.basis
    m = region.m

    f0_worst = np.inf
    f0_ids = region.f0_facet_ids()
    for task, fid in enumerate(f0_ids):
        support = FaceSpec(patterns, fid)
        rng = np.random.default_rng(derived_seed(seed, task + 1))
        A = rng.standard_exponential((samples, len(fid)))
        A /= A.sum(axis=1, keepdims=True)
        Vp = A @ support.vertices
        if m:
            Uc = np.empty((samples, m))
            for i in range(samples):
                a = rng.standard_exponential(m)
                a /= a.sum()
                radius = rng.random() ** (1.0 / m)
                signs = rng.integers(0, 2, m) * 2.0 - 1.0
                Uc[i] = a * radius * signs
            X = lam * (Vp - b) + b + epsilon * (Uc @ B.T)
        else:
            X = lam * (Vp - b) + b
        FX = hopfield_map_batch(patterns, beta, X)
        before = hull_distances(X, support)
        after = hull_distances(FX, support)
        f0_worst = min(f0_worst, float((before - after).min()))
    if not f0_ids:
        f0_worst = np.inf  # vertex face: no extruded facets to test

    f1_worst: float | None = None
    f1_vacuous = m == 0
    if not f1_vacuous:
        rng = np.random.default_rng(derived_seed(seed, len(f0_ids) + 1))
        A = rng.standard_exponential((samples, face.size))
        A /= A.sum(axis=1, keepdims=True)
        Vp = A @ face.vertices
        Uc = np.empty((samples, m))
        for i in range(samples):
            a = rng.standard_exponential(m)
            a /= a.sum()
            signs = rng.integers(0, 2, m) * 2.0 - 1.0
            Uc[i] = a * signs
        X = lam * (Vp - b) + b + epsilon * (Uc @ B.T)
        FX = hopfield_map_batch(patterns, beta, X)
        before = hull_distances(X, face)
        after = hull_distances(FX, face)
        f1_worst = float((before - after).min())

    f0_pass = bool(f0_worst >= 0.0) if f0_ids else True
    return MirandaReport(
        face_indices=face.indices,
        kind="thickened",
        beta=beta,
        lam=float(lam),
        epsilon=float(epsilon),
        samples_per_facet=int(samples),
        f0_pass=f0_pass,
        f0_worst_slack=float(f0_worst) if f0_ids else math.inf,
        f1_pass=True if f1_vacuous else bool(f1_worst >= 0.0),
        f1_worst_slack=f1_worst,
        f1_vacuous=f1_vacuous,
    )


def beta_threshold_search(
    face_patterns: PatternSet,
    beta_grid,
    lambda_grid,
    samples: int = 10_000,
    seed: int = 0,
):
    """Smallest grid beta for which some shrink factor passes the isolated
    facet-mapping check; None when the grid is exhausted."""
    beta_grid = [float(b) for b in beta_grid]
    lambda_grid = [float(g) for g in lambda_grid]
    if not beta_grid or not lambda_grid:
        raise ValueError("grids must be nonempty")
    if any(b2 <= b1 for b1, b2 in zip(beta_grid, beta_grid[1:])):
        raise ValueError("beta grid must be ascending")
    for i, beta in enumerate(beta_grid):
        for j, lam in enumerate(lambda_grid):
            rep = miranda_verify_isolated(
                face_patterns,
                beta,
                lam,
                samples=samples,
                seed=derived_seed(seed, i * len(lambda_grid) + j + 1),
            )
            if rep.overall:
                return beta, lam
    return None


def _band_max(count: int, delta: float, beta: float, lo: float, hi: float) -> float:
    """max over [lo, hi] of 2*count*exp(beta(-delta+2mu))/mu.

    The log of the ratio is convex in mu, so the maximum sits at an
    endpoint.
    """
    vals = []
    for mu in (lo, hi):
        vals.append(2.0 * count * math.exp(beta * (-delta + 2.0 * mu)) / mu)
    return max(vals)


def sufficient_beta_lemma3(
    patterns: PatternSet,
    face: FaceSpec,
    lam: float,
    epsilon: float,
    margin_samples: int = 2000,
    seed: int = 0,
) -> float:
    """Smallest scaling for which the worst-case contraction bound forces
    both facet-mapping inequalities over their distance bands.

    Extruded class: 2(n-|I|) exp(beta(-delta+2mu)) < mu over
    [q(1-lam), delta/3]. Side class: 2(n-|J|) exp(beta(-delta_J+2e)) < e
    over [epsilon/sqrt(d), epsilon]. Margins are Monte-Carlo minima with
    a deterministic default stream; bisection to 1e-6.
    """
    if not 0.0 < lam < 1.0:
        raise ValueError("shrink factor must lie in (0, 1)")
    if epsilon <= 0.0:
        raise ValueError("epsilon must be positive")
    n = patterns.count
    J = face.indices
    ests = [estimate_min_margin(patterns, J, margin_samples, derived_seed(seed, 0))]
    for task, sub in enumerate(
        itertools.combinations(J, len(J) - 1) if len(J) >= 2 else (), start=1
    ):
        ests.append(
            estimate_min_margin(patterns, sub, margin_samples, derived_seed(seed, task))
        )
    margins = [e.delta_min for e in ests]
    if min(margins) <= 0.0:
        raise CipsViolationError(
            f"face or facet margin is nonpositive (worst {min(margins):.3e})"
        )
    delta = min(margins)
    delta_face = margins[0]
    if np.isfinite(delta_face) and delta_face <= 2.0 * epsilon:
        raise EpsilonTooLargeError(
            f"need face margin > 2*epsilon, got {delta_face:.3e} <= {2 * epsilon:.3e}"
        )

    checks = []
    if len(J) >= 2:
        region = ThickenedRegion(face, lam, epsilon)
        q = region.boundary_vertex_distance()
        lo, hi = q * (1.0 - lam), delta / 3.0
        if lo > hi:
            raise ValueError(
                "shrink factor too far from 1 for this margin: the facet "
                f"distance band [{lo:.3e}, {hi:.3e}] is empty"
            )
        checks.append((n - (len(J) - 1), delta, lo, hi))
    if len(J) < n:
        d = patterns.dim
        checks.append((n - len(J), delta_face, epsilon / math.sqrt(d), epsilon))
    if not checks:
        return 0.0

    def worst(beta):
        return max(_band_max(c, dl, beta, lo, hi) for c, dl, lo, hi in checks)

    hi_beta = 1.0
    while worst(hi_beta) >= 1.0:
        hi_beta *= 2.0
        if hi_beta > 1e9:
            raise CipsViolationError("no finite scaling satisfies the bands")
    lo_beta = 0.0
    while hi_beta - lo_beta > 1e-6:
        mid = 0.5 * (lo_beta + hi_beta)
        if worst(mid) < 1.0:
            hi_beta = mid
        else:
            lo_beta = mid
    return hi_beta


def face_region_seeds(
    patterns: PatternSet,
    face: FaceSpec,
    lam: float = 0.9,
    copies: int = 10,
    jitter: float = 1e-3,
    seed: int = 0,
) -> np.ndarray:
    """Seeds for locating the face-associated fixed point: the face
    barycenter, the shrunk vertices, and jittered barycenter copies."""
    b = barycenter(face)
    V = face.vertices
    seeds = [b] + [b + lam * (v - b) for v in V]
    rng = np.random.default_rng(seed)
    for _ in range(copies):
        seeds.append(b + jitter * rng.standard_normal(b.size))
    return np.asarray(seeds)
