"""Exact beta invariants and K-semistable domains of log Fano hypersurface pairs."""

from .certify import (
    Anchor,
    Certificate,
    CertificateKind,
    CertificationError,
    Verdict,
    VerdictStatus,
    certify_domain,
    check_certificate,
    cone_reduction,
    lc_calabi_yau_anchor,
    quadric_fact_interval,
    verify_cone_theorems,
    zz_upper_bound,
)
from .invariants import (
    Boundary,
    External,
    beta_form,
    log_discrepancy_form,
    maeda_gap_constants,
    mu_value,
    pseudo_effective_threshold,
    s_invariant_form,
    s_invariant_numeric,
)
from .model import (
    AffineForm,
    AmbientKind,
    AmbientModel,
    BoundaryEntry,
    NonPseudoEffectiveError,
    PairFamily,
    level,
    level_form,
    make_projective_space,
    make_quadric,
    volume,
)
from .polytope import (
    HalfSpace,
    Polytope,
    UnboundedRegionError,
    contains,
    convex_hull,
    enumerate_vertices,
    equal,
    linear_min,
    necessary_region,
)

__version__ = "0.1.0"
