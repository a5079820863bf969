"""Random pattern models and pattern-file input."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .hopfield import PatternSet

__all__ = ["DistortedBasisModel", "haar_orthogonal", "read_pattern_file", "write_pattern_file"]


def haar_orthogonal(n: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-distributed orthogonal matrix via sign-fixed QR of a Gaussian."""
    g = rng.standard_normal((n, n))
    q, r = np.linalg.qr(g)
    return q * np.sign(np.diag(r))


@dataclass(frozen=True)
class DistortedBasisModel:
    """Standard basis pushed through a random map of fixed condition number.

    The map is U diag(sigma) V^T with Haar U, V and singular values spread
    over [1, kappa] by the chosen law; columns are then normalized to unit
    length (the separation analysis assumes unit patterns). d = n.
    """

    n: int
    kappa: float
    sigma_law: str = "linear"  # "linear" | "geometric"

    def __post_init__(self):
        if self.n < 2:
            raise ValueError("need n >= 2")
        if self.kappa < 1.0:
            raise ValueError("condition number must be >= 1")
        if self.sigma_law not in ("linear", "geometric"):
            raise ValueError("sigma_law must be 'linear' or 'geometric'")

    def singular_values(self) -> np.ndarray:
        if self.sigma_law == "geometric":
            return np.geomspace(1.0, self.kappa, self.n)
        return np.linspace(1.0, self.kappa, self.n)

    def sample(self, rng: np.random.Generator) -> PatternSet:
        sig = self.singular_values()
        m = haar_orthogonal(self.n, rng) @ np.diag(sig) @ haar_orthogonal(self.n, rng).T
        realized = np.linalg.cond(m)
        if self.kappa > 1.0 and abs(realized - self.kappa) > 1e-9 * self.kappa:
            raise AssertionError(
                f"realized condition number {realized} drifted from {self.kappa}"
            )
        m = m / np.linalg.norm(m, axis=0, keepdims=True)
        return PatternSet(m)


def read_pattern_file(path, normalize: bool = True) -> PatternSet:
    """Plain-text patterns: header line "d n", then one pattern per line
    (d whitespace-separated reals, n lines). Columns are normalized to
    unit length unless normalize is False."""
    with open(path, "r", encoding="utf-8") as fh:
        header = fh.readline().split()
        if len(header) != 2:
            raise ValueError("pattern file must start with a 'd n' header line")
        d, n = int(header[0]), int(header[1])
        rows = []
        for line in fh:
            line = line.strip()
            if not line:
                continue
            vals = [float(v) for v in line.split()]
            if len(vals) != d:
                raise ValueError(f"pattern line has {len(vals)} values, expected {d}")
            rows.append(vals)
    if len(rows) != n:
        raise ValueError(f"pattern file has {len(rows)} patterns, header says {n}")
    W = np.asarray(rows, dtype=float).T
    if normalize:
        norms = np.linalg.norm(W, axis=0)
        if np.any(norms == 0):
            raise ValueError("cannot normalize a zero pattern")
        W = W / norms
    return PatternSet(W)


def write_pattern_file(path, patterns: PatternSet) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(f"{patterns.dim} {patterns.count}\n")
        for j in range(patterns.count):
            fh.write(" ".join(f"{v:.17g}" for v in patterns.matrix[:, j]) + "\n")
