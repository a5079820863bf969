"""Numerical tolerances used across the package.

Single source of truth: tests import these rather than re-declaring
magic numbers.
"""

from dataclasses import dataclass


@dataclass(frozen=True)
class Tolerances:
    # basic object validity
    simplex_sum: float = 1e-12        # |sum(p) - 1| for probability vectors
    unit_norm: float = 1e-12          # pattern columns, |norm - 1|
    distinct_patterns: float = 1e-9   # min pairwise distance between patterns
    symmetry: float = 1e-10           # entrywise |M - M^T|
    face_rank: float = 1e-10          # affine-independence rank cutoff

    # geometry
    kkt_residual: float = 1e-10       # hull-projection optimality
    hull_membership: float = 1e-9     # "x lies on the face" checks
    orthogonality: float = 1e-10      # complement-basis inner products

    # fixed points
    refine_target: float = 1e-12      # Newton stopping residual
    accept_residual: float = 1e-10    # gate for accepted records
    dedup_radius: float = 1e-6        # clustering radius for found points
    marginal_band: float = 1e-8       # |rho - 1| band classified as marginal
    singular_pivot: float = 1e-12     # LU pivot cutoff -> plain-iteration fallback

    # scaled-softmax line analysis
    series_radius: float = 1e-5       # switch to series evaluation near x = 1/n
    series_tail: float = 1e-12        # truncation bound for the series
    bifurcation_window: float = 1e-9  # excluded neighborhood of threshold betas
    root_xtol: float = 1e-13          # bisection tolerance for line roots
    threshold_abs: float = 1e-6       # accuracy of minimized thresholds

    # spectra
    eig_residual: float = 1e-9        # certified power-iteration residual
    psd_floor: float = -1e-10         # smallest admissible Jacobian eigenvalue

    # margins
    cips_threshold: float = 1e-10     # default pass threshold for margins


TOL = Tolerances()
