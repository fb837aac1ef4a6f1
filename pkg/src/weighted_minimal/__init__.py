"""Weighted mean curvature and minimal surfaces in R^3 with density ``e^phi``."""

__version__ = "0.1.0"

from .errors import (
    DegenerateSurface,
    DerivativeMismatch,
    InvalidInit,
    InvalidParams,
    NoSignChange,
    NonConstantCurvature,
    NonConstantGradient,
    NormalizationViolation,
    NotRuledForm,
    PoleAt,
    UseVerticalPlane,
)
from .geometry import (
    DensityField,
    FundamentalForms,
    MinimalityReport,
    ParametricSurface,
    ez_density,
    fd_derivatives,
    first_variation_check,
    fundamental_forms,
    gaussian_density,
    linear_density,
    minimality_report,
    weighted_area,
    weighted_mean_curvature,
)
from .gallery import GallerySpec, find_minimal_radius, make_density, make_gallery_surface
from .mesh_io import Mesh, export_obj, export_report_csv, tessellate
from .ruled import (
    CylindricalFamilyParams,
    RuledSurface,
    build_ruled,
    closed_form_directrix,
    coefficient_residuals,
    integrate_directrix,
    make_cylindrical_minimal,
    make_vertical_plane,
    noncylindrical_counterexample_suite,
)
from .translation import (
    TranslationSurface,
    build_translation,
    make_translation_minimal,
    pde_residual,
    scherk_density_profile,
    theorem2_check,
    to_ruled,
)
