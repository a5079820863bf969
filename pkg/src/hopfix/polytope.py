"""Geometry of the pattern polytope and its faces.

A face is the convex hull of a subset of pattern columns; all faces
handled here are simplicial (affinely independent vertex sets), which is
what the random models produce. The thickened region around a shrunk face
is the Minkowski sum of the shrunk face with a scaled cross-polytope in
the orthogonal complement of the face's affine hull; its boundary splits
into extrusions of the face's facets and the remaining side facets.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from ._kernels import project_point, project_points
from .config import TOL
from .errors import NoSideFacetsError, NumericalError, UnsupportedFaceError
from .hopfield import PatternSet

__all__ = [
    "FaceSpec",
    "ComplementBasis",
    "ThickenedRegion",
    "barycenter",
    "project_to_hull",
    "hull_distances",
    "complement_basis",
    "sample_face_point",
    "sample_face_points",
    "sample_thickened_facet",
]


@dataclass(frozen=True)
class FaceSpec:
    """A simplicial face cv{w_j : j in indices} of a pattern set."""

    patterns: PatternSet
    indices: tuple[int, ...]

    def __post_init__(self):
        idx = tuple(sorted(int(j) for j in self.indices))
        object.__setattr__(self, "indices", idx)
        n = self.patterns.count
        if not idx:
            raise ValueError("face needs at least one vertex")
        if len(set(idx)) != len(idx) or idx[0] < 0 or idx[-1] >= n:
            raise ValueError("face indices must be distinct and within range")
        V = self.vertices
        if len(idx) >= 2:
            centered = V - V.mean(axis=0)
            rank = np.linalg.matrix_rank(centered, tol=TOL.face_rank)
            if rank != len(idx) - 1:
                raise UnsupportedFaceError(
                    f"face vertices are not affinely independent (rank {rank}, "
                    f"need {len(idx) - 1})"
                )

    @property
    def size(self) -> int:
        return len(self.indices)

    @property
    def dim(self) -> int:
        return len(self.indices) - 1

    @property
    def vertices(self) -> np.ndarray:
        """Vertex rows, shape (|I|, d)."""
        return self.patterns.matrix[:, list(self.indices)].T

    def facets(self) -> list["FaceSpec"]:
        """The (|I|-1)-subsets; empty for a single vertex."""
        if self.size == 1:
            return []
        return [
            FaceSpec(self.patterns, tuple(c))
            for c in itertools.combinations(self.indices, self.size - 1)
        ]


def barycenter(face: FaceSpec) -> np.ndarray:
    """Arithmetic mean of the face's vertices."""
    return face.vertices.mean(axis=0)


def project_to_hull(x: np.ndarray, face: FaceSpec):
    """Euclidean projection of x onto the face's convex hull.

    Returns (point, distance, weights over the face's vertices); raises if
    the optimality gap of the active-set solve exceeds the KKT tolerance.
    """
    x = np.asarray(x, dtype=float)
    if not np.all(np.isfinite(x)) or x.shape != (face.patterns.dim,):
        raise ValueError("query point must be a finite vector of length d")
    point, dist, weights, kkt = project_point(face.vertices, x)
    if kkt > TOL.kkt_residual:
        raise NumericalError(
            f"hull projection did not certify optimality (KKT gap {kkt:.3e})"
        )
    return point, dist, weights


def hull_distances(X: np.ndarray, face: FaceSpec) -> np.ndarray:
    """Distances of each row of X to the face hull (batch projection)."""
    _, dists, _, kkts = project_points(face.vertices, np.asarray(X, dtype=float))
    if kkts.size and float(kkts.max()) > TOL.kkt_residual:
        raise NumericalError(
            f"hull projection did not certify optimality (worst KKT gap {kkts.max():.3e})"
        )
    return dists


@dataclass(frozen=True)
class ComplementBasis:
    """Orthonormal basis of the complement of the face's affine hull."""

    face: FaceSpec
    basis: np.ndarray  # shape (d, m); empty second axis when m = 0

    @property
    def m(self) -> int:
        return self.basis.shape[1]


def complement_basis(face: FaceSpec) -> ComplementBasis:
    """Orthonormalize the standard basis against the face span, in index order.

    The span of {w_j - b} has dimension |I| - 1 for a simplicial face, so
    m = d - |I| + 1 vectors are returned. Deterministic by construction.
    """
    d = face.patterns.dim
    V = face.vertices
    b = V.mean(axis=0)
    centered = (V - b).T  # (d, |I|)
    if face.size >= 2:
        q, r = np.linalg.qr(centered)
        keep = np.abs(np.diag(r)) > TOL.face_rank
        span = q[:, keep]
        if span.shape[1] != face.size - 1:
            raise UnsupportedFaceError("face span rank inconsistent with simpliciality")
    else:
        span = np.zeros((d, 0))
    m = d - span.shape[1]
    out = []
    for i in range(d):
        if len(out) == m:
            break
        v = np.zeros(d)
        v[i] = 1.0
        for _ in range(2):  # re-orthogonalize once for clean inner products
            v -= span @ (span.T @ v)
            for u in out:
                v -= u * (u @ v)
        norm = np.linalg.norm(v)
        if norm > 1e-8:
            out.append(v / norm)
    if len(out) != m:
        raise NumericalError("complement basis construction lost rank")
    basis = np.column_stack(out) if out else np.zeros((d, 0))
    return ComplementBasis(face=face, basis=basis)


def sample_face_point(face: FaceSpec, rng: np.random.Generator) -> np.ndarray:
    """One point uniform on the face (normalized exponential weights)."""
    return sample_face_points(face, 1, rng)[0]


def sample_face_points(face: FaceSpec, count: int, rng: np.random.Generator) -> np.ndarray:
    """Uniform face samples, shape (count, d); rows use a common stream,
    so a prefix of a longer draw equals a shorter draw."""
    A = rng.standard_exponential((count, face.size))
    A /= A.sum(axis=1, keepdims=True)
    return A @ face.vertices


@dataclass(frozen=True)
class ThickenedRegion:
    """The shrunk face plus an epsilon cross-polytope in its complement."""

    face: FaceSpec
    lam: float
    epsilon: float
    center: np.ndarray = field(init=False)
    complement: ComplementBasis = field(init=False)

    def __post_init__(self):
        if not 0.0 < self.lam < 1.0:
            raise ValueError("shrink factor must lie in (0, 1)")
        if self.epsilon <= 0.0:
            raise ValueError("thickening epsilon must be positive")
        object.__setattr__(self, "center", barycenter(self.face))
        object.__setattr__(self, "complement", complement_basis(self.face))

    @property
    def m(self) -> int:
        return self.complement.m

    def f0_facet_ids(self) -> list[tuple[int, ...]]:
        """Extruded facets, one per facet of the face; empty for a vertex."""
        return [f.indices for f in self.face.facets()]

    def boundary_vertex_distance(self) -> float:
        """min over the face's boundary of the distance to the region center.

        For a simplicial face the boundary is the union of its facets, so
        the minimum is over projections of the barycenter onto each facet.
        """
        if self.face.size == 1:
            return 0.0
        dists = [
            project_to_hull(self.center, f)[1] for f in self.face.facets()
        ]
        return float(min(dists))

    def contains(self, x: np.ndarray, tol: float = 1e-9) -> bool:
        """Membership test via the orthogonal split x = (in-span part) + V c."""
        x = np.asarray(x, dtype=float)
        V = self.complement.basis
        c = V.T @ (x - self.center) if self.m else np.zeros(0)
        y = x - (V @ c if self.m else 0.0)
        if self.m and np.sum(np.abs(c)) > self.epsilon * (1.0 + tol) + tol:
            return False
        unshrunk = (y - self.center) / self.lam + self.center
        _, dist, _ = project_to_hull(unshrunk, self.face)
        return dist <= tol


def _uniform_in_cross_polytope(m: int, rng: np.random.Generator) -> np.ndarray:
    """Uniform draw from the unit L1 ball in R^m (signed coords, sum|.| <= 1)."""
    a = rng.standard_exponential(m)
    a /= a.sum()
    radius = rng.random() ** (1.0 / m)
    signs = rng.integers(0, 2, m) * 2.0 - 1.0
    return a * radius * signs


def _uniform_on_cross_facet(signs: np.ndarray, rng: np.random.Generator) -> np.ndarray:
    """Uniform draw from one facet of the unit L1 ball (sum|.| = 1)."""
    m = signs.size
    a = rng.standard_exponential(m)
    a /= a.sum()
    return a * signs


def sample_thickened_facet(
    region: ThickenedRegion,
    facet_class: str,
    facet_id,
    rng: np.random.Generator,
):
    """One point on a boundary facet of the thickened region.

    facet_class "F0": facet_id is the index tuple of a facet F of the
    face; the point is lam*(v' - b) + b + eps*u with v' uniform on F and
    u uniform inside the complement cross-polytope. facet_class "F1":
    facet_id is a sign tuple picking a facet of the cross-polytope; v' is
    uniform in the whole face and u uniform on that facet (L1 norm 1).

    Returns (x, decomposition) where the decomposition holds v = nearest
    point of the supporting original face (the facet F for F0, the whole
    face for F1), the unit offset direction r, and mu = Dist(x, support).
    """
    b = region.center
    lam, eps = region.lam, region.epsilon
    if facet_class == "F0":
        if region.face.size == 1:
            raise UnsupportedFaceError("a vertex face has no extruded facets")
        support = FaceSpec(region.face.patterns, tuple(facet_id))
        if not set(support.indices) < set(region.face.indices):
            raise ValueError("F0 facet_id must be a proper subset of the face")
        vprime = sample_face_point(support, rng)
        if region.m:
            u = region.complement.basis @ _uniform_in_cross_polytope(region.m, rng)
        else:
            u = np.zeros(region.face.patterns.dim)
        x = lam * (vprime - b) + b + eps * u
    elif facet_class == "F1":
        if region.m == 0:
            raise NoSideFacetsError(
                "face is full-dimensional; the region has no side facets"
            )
        signs = np.asarray(facet_id, dtype=float)
        if signs.shape != (region.m,) or not np.all(np.abs(signs) == 1.0):
            raise ValueError("F1 facet_id must be a +-1 sign vector of length m")
        support = region.face
        vprime = sample_face_point(region.face, rng)
        u = region.complement.basis @ _uniform_on_cross_facet(signs, rng)
        x = lam * (vprime - b) + b + eps * u
    else:
        raise ValueError("facet_class must be 'F0' or 'F1'")

    v, mu, _ = project_to_hull(x, support)
    r = (x - v) / mu if mu > 0 else np.zeros_like(x)
    return x, {"v": v, "r": r, "mu": mu}
