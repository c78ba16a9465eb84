"""Skeletons with knotted plexuses, surgery diagrams and the bundled manifolds."""

from qinv.manifolds.coloring import coloring_count, coloring_dim, enumerate_gcolorings
from qinv.manifolds.library import (
    MANIFOLDS,
    Manifest,
    add_circle_plexus,
    add_circle_surgery,
    bundled_colors,
    colored_matched_scenes,
    flat_structures,
    load_manifest,
    matched_scenes,
    remove_circle_plexus,
    s1s2_switch_circle,
    s3_kink,
    s3_switch_circle,
    skeletons,
    surgeries,
    write_bundled_scenes,
)
from qinv.manifolds.nodes import StrandColors, circle_trace, contraction_vector, node_net
from qinv.manifolds.scene import (
    PlexusScene,
    Scene,
    SurgeryScene,
    load_scene,
    parse_scene,
    save_scene,
    validate_plexus,
    validate_surgery,
)
from qinv.manifolds.triangulation import (
    Gluing,
    Triangulation,
    dual_skeleton,
    holonomy_coloring,
    lens_dual,
    lens_triangulation,
)

__all__ = [
    # Scenes
    "PlexusScene",
    "Scene",
    "SurgeryScene",
    "load_scene",
    "parse_scene",
    "save_scene",
    "validate_plexus",
    "validate_surgery",
    # Colorings
    "coloring_count",
    "coloring_dim",
    "enumerate_gcolorings",
    # Nodes
    "StrandColors",
    "circle_trace",
    "contraction_vector",
    "node_net",
    # Triangulations
    "Gluing",
    "Triangulation",
    "dual_skeleton",
    "holonomy_coloring",
    "lens_dual",
    "lens_triangulation",
    # Bundled manifolds
    "MANIFOLDS",
    "Manifest",
    "add_circle_plexus",
    "add_circle_surgery",
    "bundled_colors",
    "colored_matched_scenes",
    "flat_structures",
    "load_manifest",
    "matched_scenes",
    "remove_circle_plexus",
    "s1s2_switch_circle",
    "s3_kink",
    "s3_switch_circle",
    "skeletons",
    "surgeries",
    "write_bundled_scenes",
]
