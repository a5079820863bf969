"""Fixed points of modern continuous Hopfield networks.

Library and CLI for enumerating and classifying the fixed points of
x -> W softmax(beta W^T x): the exact softmax catalog on the simplex,
convex-separation (CIPS) margins of pattern faces, facet-mapping
verification around shrunk-and-thickened faces, and spectral stability.
"""

__version__ = "0.1.0"

from .config import TOL
from .hopfield import (
    PatternSet,
    hopfield_map,
    hopfield_map_batch,
    jacobian,
    jacobian_quadratic_form,
    softmax,
    spectral_radius,
)
from .simplex import (
    SoftmaxCatalog,
    ThresholdTable,
    beta_for_line_point,
    bifurcation_threshold,
    classify_softmax_catalog,
    enumerate_softmax_fixed_points,
    line_fixed_point_coords,
)
from .polytope import (
    FaceSpec,
    ThickenedRegion,
    barycenter,
    complement_basis,
    project_to_hull,
    sample_face_point,
    sample_thickened_facet,
)
from .cips import (
    CipsVerdict,
    MarginEstimate,
    cips_check,
    estimate_min_margin,
    grid_min_margin,
    margin,
)
from .fixpoints import (
    FixedPointRecord,
    InstabilityCertificate,
    MirandaReport,
    SeedStrategy,
    beta_threshold_search,
    classify,
    contraction_bound,
    find_fixed_points,
    instability_certificate,
    iterate_map,
    miranda_verify_isolated,
    miranda_verify_thickened,
    refine_newton,
    sufficient_beta_lemma3,
)
from .models import DistortedBasisModel, read_pattern_file, write_pattern_file
