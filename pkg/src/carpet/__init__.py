"""Exact wall-and-chamber geometry for signature (1,3) integer lattices.

Negative-norm lattice vectors cut hyperbolic 3-space into chambers; on
the boundary sphere each wall traces a circle.  This package enumerates
the walls exactly, projects them to the unit disc, classifies how their
circles meet, and renders the resulting tangent-circle packings as SVG.
"""

from .chambers import (ChamberBoundary, ComponentClass, ComponentVerdict,
                       PairClass, adjacent_chamber, classify_component,
                       classify_pair, density_probe, maximal_discs,
                       maximal_regions, pair_counts, rk2_hypothesis)
from .enumeration import (EnumRequest, WallSet, completeness_bound,
                          enumerate_norm, enumerate_walls, isotropic_search,
                          kernel_name)
from .lattice import (DiscriminantData, GramLattice, IsotropyCertificate,
                      LatticeVector, Signature, isotropic_mod_p_certificate)
from .projection import (DiscRegion, MinkowskiFrame, MinkowskiVector,
                         SphereCap, WrongSignatureError, boundary_circle,
                         build_frame, disc_region, region_from_minkowski)
from .render import RenderSpec, render_overlay, render_svg

__version__ = "0.1.0"

__all__ = [
    "ChamberBoundary", "ComponentClass", "ComponentVerdict", "PairClass",
    "adjacent_chamber", "classify_component", "classify_pair",
    "density_probe", "maximal_discs", "maximal_regions", "pair_counts",
    "rk2_hypothesis",
    "EnumRequest", "WallSet", "completeness_bound", "enumerate_norm",
    "enumerate_walls", "isotropic_search", "kernel_name",
    "DiscriminantData", "GramLattice", "IsotropyCertificate",
    "LatticeVector", "Signature", "isotropic_mod_p_certificate",
    "DiscRegion", "MinkowskiFrame", "MinkowskiVector", "SphereCap",
    "WrongSignatureError", "boundary_circle", "build_frame", "disc_region",
    "region_from_minkowski",
    "RenderSpec", "render_overlay", "render_svg",
    "__version__",
]
