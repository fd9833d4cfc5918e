"""Exact modular representation theory for loop-space homology of finite
groups: finite-field linear algebra, meataxe chopping, projective covers,
squeezed and minimal resolutions, and a rational-series cross-check."""

__version__ = "0.1.0"

from .field import GF, Field
from .matrix import Matrix
from .groups import GroupPresentation, GroupTable, catalog_group, enumerate_group
from .modules import (
    GModule,
    Iso,
    ModuleMap,
    SimpleRegistry,
    chop,
    decompose_projectives,
    dual,
    hom_space,
    head_multiplicities,
    is_isomorphic,
    permutation_module,
    projective_cover,
    quotient,
    radical,
    regular_module,
    simples,
    socle,
    spin,
    tensor,
    trivial_module,
)
from .resolution import (
    DimSequence,
    Resolution,
    cohomology_dims,
    detect_periodicity,
    minimal_resolution,
    squeezed_homology,
    squeezed_resolution,
    trivial_core,
)
from .series import (
    CIPresentation,
    RationalSeries,
    ci_cohomology_series,
    ci_loop_series,
    compare_prefix,
    expand,
    fit_growth,
    growth_bound_check,
    growth_degree,
)

__all__ = [name for name in dir() if not name.startswith("_")]
