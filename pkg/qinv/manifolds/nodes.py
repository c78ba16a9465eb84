"""
Node nets and contraction data of a colored plexus scene.

Business rules:
- A germ colored by c gives a leg: a region germ carries the simple c(r),
  a strand germ the underlying object of phi_{alpha^-1}(J), J its center
  color and alpha its detour; the sign is the germ sign.
- The net of a node has one free vertex per arc-rim end, with the legs of
  the germs read from that end, and one fixed vertex per coupon, carrying
  the strand endomorphism (the identity by default) with its input bent up.
- A strand crossing a region r at a switch, or a strand passing over
  another one, gives a crossing vertex: tau of the strand color by the
  crossed object, composed with the comparison map phi_2 that brings the
  color back to the form phi_beta(J) expected on the far side.
- The contraction vector of an arc rim is the inverse transpose of the
  pairing between the modules of its two ends, the pairing being the
  theta net of the two ends.
- A circle rim contributes the trace of its monodromy rotation on the
  module of its word.

Legs of a crossing vertex, in order: (plain out, strand toward the
entering rim, plain in, strand from the leaving rim) when it is positive
(a switch crossing of sign -1), (strand toward the entering rim, plain out,
strand from the leaving rim, plain in) otherwise.
"""

from __future__ import annotations

import logging
from collections.abc import Iterator, Mapping
from typing import Optional

from qinv.algebra.matrix import Mat
from qinv.algebra.scalar import Scalar, parse_scalar
from qinv.center.braiding import Braiding
from qinv.center.objects import CenterObject
from qinv.exceptions import QinvException, SceneValidationError
from qinv.fusion.category import FusionCategory
from qinv.fusion.morphism import Morphism, Obj
from qinv.graphs.net import (
    Leg,
    MultiplicityModule,
    Net,
    NetVertex,
    crossing_vertex,
    morphism_vertex,
    pairing_matrix,
    validate_net,
)
from qinv.manifolds.coloring import Coloring
from qinv.manifolds.scene import GermSpec, NodeSpec, PlexusScene, RimSpec, VertexSpec, strand_end_detour

logger = logging.getLogger(__name__)


class StrandColors(Mapping[str, CenterObject]):
    """Center simple of every strand, and its images along detours."""

    def __init__(self, braiding: Braiding, simples: Mapping[str, CenterObject]):
        self.braiding = braiding
        self.simples = dict(simples)

    def __getitem__(self, name: str) -> CenterObject:
        return self.simples[name]

    def __iter__(self) -> Iterator[str]:
        return iter(self.simples)

    def __len__(self) -> int:
        return len(self.simples)

    def along(self, name: str, beta: Optional[str] = None) -> CenterObject:
        """phi_beta(J) for the strand `name`; J itself when beta is None."""
        if beta is None:
            return self.simples[name]
        return self.braiding.crossing.phi(beta, self.simples[name])

    def on_rim(self, name: str, detour: Optional[str]) -> CenterObject:
        """The color phi_{alpha^-1}(J) of a rim of detour alpha."""
        if detour is None:
            return self.simples[name]
        return self.along(name, self.braiding.cat.group.inv(detour))


def germ_leg(cat: FusionCategory, colors: StrandColors, c: Coloring, germ: GermSpec, edge: str) -> Leg:
    if germ.region is not None:
        return Leg(edge, ((c[germ.region],),), germ.sign)
    return Leg(edge, colors.on_rim(germ.strand, germ.detour).obj, germ.sign)  # type: ignore[arg-type]


def end_legs(
    scene: PlexusScene,
    cat: FusionCategory,
    colors: StrandColors,
    c: Coloring,
    rim: RimSpec,
    end: int,
    edges: list[str] | None = None,
) -> list[Leg]:
    germs = scene.end_germs(rim, end)
    edges = edges or [f"{rim.id}:{end}:{k}" for k in range(len(germs))]
    return [germ_leg(cat, colors, c, g, e) for g, e in zip(germs, edges)]


def end_module(scene: PlexusScene, cat: FusionCategory, colors, c: Coloring, rim: RimSpec, end: int) -> MultiplicityModule:
    return MultiplicityModule(cat, end_legs(scene, cat, colors, c, rim, end))


# =============================================================================
# NODE NETS
# =============================================================================


def coupon_vertex(braiding: Braiding, colors: StrandColors, v: VertexSpec, edge_at: dict[tuple[str, int], str]) -> NetVertex:
    cat = braiding.cat
    j = colors[v.coupon]  # type: ignore[index]
    u = colors.on_rim(v.coupon, v.detour)  # type: ignore[arg-type]
    if v.coordinates is None:
        f = cat.identity(u.obj)
    else:
        center = braiding.center
        basis = center.hom(j, j)
        if len(v.coordinates) != len(basis):
            raise SceneValidationError(f"{len(v.coordinates)} coordonnées pour un espace de dimension {len(basis)}.", v.id)
        try:
            values = [parse_scalar(x, cat.conductor) for x in v.coordinates]
        except QinvException as exc:
            raise SceneValidationError(str(exc), v.id)
        f = cat.zero(j.obj, j.obj)
        for b, k in zip(basis, values):
            f = f + b.scale(k)
        if v.detour is not None:
            f = braiding.crossing.phi_morphism(cat.group.inv(v.detour), f, j, j)
    return morphism_vertex(cat, v.id, f, [(edge_at[(v.id, 0)], u.obj)], [(edge_at[(v.id, 1)], u.obj)])


def strand_crossing(
    braiding: Braiding,
    name: str,
    colors: StrandColors,
    strand: str,
    beta: str,
    x: Obj,
    positive: bool,
    edge_at: dict[tuple[str, int], str],
) -> tuple[NetVertex, str]:
    """Crossing of the strand, read from the leaving side where it is
    colored phi_beta(J), with an object x of degree l.

    Returns:
        the vertex and the beta of the entering side: beta l if positive,
        beta l^-1 otherwise.
    """
    crossing = braiding.crossing
    group = braiding.cat.group
    ell = braiding.cat.obj_degree(x)
    if ell is None:
        raise SceneValidationError("Croisement avec un objet non homogène.", name)
    j = colors[strand]
    if positive:
        edges = (edge_at[(name, 3)], edge_at[(name, 2)], edge_at[(name, 0)], edge_at[(name, 1)])
        psi: Morphism = crossing.phi_2(ell, beta, j)
        vertex = crossing_vertex(braiding, name, colors.along(strand, beta), x, edges, True, psi)
        return vertex, group.mul(beta, ell)
    out = group.mul(beta, group.inv(ell))
    edges = (edge_at[(name, 2)], edge_at[(name, 3)], edge_at[(name, 1)], edge_at[(name, 0)])
    psi = crossing.phi_2(ell, out, j).inverse()
    return crossing_vertex(braiding, name, colors.along(strand, out), x, edges, False, psi), out


def _inverse_detour(scene: PlexusScene, braiding: Braiding, node: NodeSpec, vertex: str, strand: str) -> str:
    group = braiding.cat.group
    detour = strand_end_detour(scene, node, vertex, strand)
    return group.unit if detour is None else group.inv(detour)


def node_net(
    scene: PlexusScene,
    braiding: Braiding,
    colors: StrandColors,
    c: Coloring,
    node: NodeSpec,
) -> Net:
    """The colored net of a node; free vertices are named by their vertex id.

    Raises:
        SceneValidationError: a switch or crossing whose detours do not
            match, or a net that does not close up.
    """
    cat = braiding.cat
    edge_at: dict[tuple[str, int], str] = {}
    for t, (a, i, b, j) in enumerate(node.arcs):
        edge_at[(a, i)] = edge_at[(b, j)] = f"{node.id}#{t}"
    vertices = []
    for v in node.vertices:
        if v.rim is not None:
            rim = scene.rim(v.rim)
            edges = [edge_at[(v.id, k)] for k in range(len(rim.germs))]
            vertices.append(NetVertex(v.id, end_legs(scene, cat, colors, c, rim, v.end, edges)))
        else:
            vertices.append(coupon_vertex(braiding, colors, v, edge_at))

    for s in node.switches:
        beta = _inverse_detour(scene, braiding, node, s.leave, s.strand)
        for q in reversed(s.crossings):
            x = ((c[q.region],),)
            vertex, beta = strand_crossing(braiding, q.id, colors, s.strand, beta, x, q.sign < 0, edge_at)
            vertices.append(vertex)
        if beta != _inverse_detour(scene, braiding, node, s.enter, s.strand):
            raise SceneValidationError(f"Les détours du brin {s.strand} ne se raccordent pas.", f"switch in node {node.id}")

    for x_spec in node.crossings:
        beta = _inverse_detour(scene, braiding, node, x_spec.leave, x_spec.over)
        under = colors.on_rim(x_spec.under, x_spec.under_detour).obj
        vertex, beta = strand_crossing(braiding, x_spec.id, colors, x_spec.over, beta, under, x_spec.positive, edge_at)
        vertices.append(vertex)
        if beta != _inverse_detour(scene, braiding, node, x_spec.enter, x_spec.over):
            raise SceneValidationError(f"Les détours du brin {x_spec.over} ne se raccordent pas.", f"crossing {x_spec.id}")

    net = Net(vertices)
    validate_net(cat, net)
    return net


# =============================================================================
# CONTRACTION
# =============================================================================


def contraction_vector(cat: FusionCategory, legs: list[Leg]) -> Mat:
    """K with K[i][j] the coefficient of a_i (x) b_j in the copairing of the rim.

    Raises:
        SceneValidationError: the pairing of the two ends is degenerate.
    """
    pairing = pairing_matrix(cat, legs)
    n = len(pairing)
    if n == 0:
        return Mat.zeros(0, 0, cat.conductor)
    g = Mat(pairing, n, cat.conductor)
    if not g.is_invertible():
        raise SceneValidationError("Appariement dégénéré entre les deux bouts.", "contraction")
    return g.inverse().transpose()


def circle_trace(
    scene: PlexusScene,
    cat: FusionCategory,
    colors: StrandColors,
    c: Coloring,
    rim: RimSpec,
) -> Scalar:
    module = end_module(scene, cat, colors, c, rim, 0)
    if module.dim == 0:
        return Scalar.zero(cat.conductor)
    rot = module.rotation_matrix(rim.monodromy % len(rim.germs))
    total = Scalar.zero(cat.conductor)
    for i in range(len(rot)):
        total = total + rot[i][i]
    return total
