"""Knotted nets on the sphere and colored G-graphs in the strip."""

from qinv.graphs.links import BraidClosure, split_union
from qinv.graphs.net import (
    Leg,
    MultiplicityModule,
    Net,
    NetVertex,
    crossing_vertex,
    evaluate_net,
    evaluate_on_sphere,
    hopf_net,
    morphism_vertex,
    pairing_matrix,
    rotate,
    tetrahedron_net,
    theta_net,
    validate_net,
)
from qinv.graphs.strip import Braid, Coupon, StripDiagram, StripEvaluator, Twist, Unbraid, Untwist
from qinv.graphs.files import (
    NetFile,
    NetValue,
    StripFile,
    evaluate_net_file,
    evaluate_strip_file,
    load_net_file,
    parse_net_file,
    save_net_file,
)

__all__ = [
    # Nets
    "Leg",
    "MultiplicityModule",
    "Net",
    "NetVertex",
    "crossing_vertex",
    "evaluate_net",
    "evaluate_on_sphere",
    "hopf_net",
    "morphism_vertex",
    "pairing_matrix",
    "rotate",
    "tetrahedron_net",
    "theta_net",
    "validate_net",
    # Strip diagrams
    "Braid",
    "Coupon",
    "StripDiagram",
    "StripEvaluator",
    "Twist",
    "Unbraid",
    "Untwist",
    # Links
    "BraidClosure",
    "split_union",
    # Files
    "NetFile",
    "NetValue",
    "StripFile",
    "evaluate_net_file",
    "evaluate_strip_file",
    "load_net_file",
    "parse_net_file",
    "save_net_file",
]
