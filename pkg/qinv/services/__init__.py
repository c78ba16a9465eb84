"""
Invariants and checks, the layer called by the command line.

This package contains the engine that builds the center on demand, the
state sum and surgery invariant, the identities relating them, the
state-space dimensions and the moves on colored graphs.
"""

from .engine import Engine, load_engine, resolve_category

from .state_sum import (
    ColoringTerm,
    StateSumResult,
    coloring_value,
    state_sum,
)

from .surgery import (
    LambdaTerm,
    SurgeryResult,
    colored_link_value,
    surgery_invariant,
)

from .identities import (
    Comparison,
    IdentityReport,
    check_colored_circle,
    check_colored_presentations,
    check_matched_scenes,
    check_torus_expansion,
    lens_cocycle_phase,
    run_identities,
)

from .dims import (
    DimsResult,
    SurfaceSpec,
    commutator_object,
    load_surface,
    state_space_dims,
    verlinde_count,
)

from .transforms import (
    conjugate,
    connected_sum,
    disjoint_union,
    stabilize,
)

from .compare import compare_manifest, save_ledger

__all__ = [
    # Engine
    "Engine",
    "load_engine",
    "resolve_category",
    # State sum
    "ColoringTerm",
    "StateSumResult",
    "coloring_value",
    "state_sum",
    # Surgery
    "LambdaTerm",
    "SurgeryResult",
    "colored_link_value",
    "surgery_invariant",
    # Identities
    "Comparison",
    "IdentityReport",
    "check_colored_circle",
    "check_colored_presentations",
    "check_matched_scenes",
    "check_torus_expansion",
    "lens_cocycle_phase",
    "run_identities",
    # Dimensions
    "DimsResult",
    "SurfaceSpec",
    "commutator_object",
    "load_surface",
    "state_space_dims",
    "verlinde_count",
    # Transforms
    "conjugate",
    "connected_sum",
    "disjoint_union",
    "stabilize",
    # Manifests and ledgers
    "compare_manifest",
    "save_ledger",
]
