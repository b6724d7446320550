"""Finite models of execution-path spaces of precubical sets."""

from .chains import (
    ChainCategory,
    CubeChain,
    Morphism,
    ResourceCapError,
    build_category,
    compose,
    concat,
    enumerate_chains,
    has_terminal,
    hom,
    iterated_face,
    make_chain,
)
from .dpath import (
    PLDPath,
    Point,
    Segment,
    canonicalize,
    carrier_of,
    hits_intermediate_vertex,
    is_natural,
    is_tame_dpath,
    moore_compose,
    naturalize,
)
from .flow import FlowModel, compose_classes, flow_model, natural_cube_flow, path_space_model
from .nerve import HomologySummary, homology, nerve, pi0
from .pcs import (
    PcsMap,
    PrecubicalSet,
    amalgam,
    boundary_cube,
    chain_cube,
    cube_maps_into,
    loop,
    restrict,
    skeleton,
    standard_cube,
    tensor,
    validate,
)
from .pv import compile_pv, deadlocks, parse_pv
from .snf import invariant_factors, smith_normal_form
from .spatial import agreement, in_Bn, is_proper, is_spatial, spatial_defects, vertex_avoiding_reach

__version__ = "0.1.0"
