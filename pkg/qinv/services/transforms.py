"""
Moves on colored graphs and unions of scenes.

Business rules:
- Stabilization adds one identity coupon to a closed component of the
  colored graph: on a skeleton the circle is redrawn with one more node,
  in a surgery diagram the component gets one more coupon.
- Conjugation by kappa replaces the color J of a closed component by the
  simple isomorphic to phi_kappa(J); its degree alpha becomes
  kappa^-1 alpha kappa. On a skeleton every detour of the strand is
  multiplied by kappa on the right, so the rim colors and the region
  labels are unchanged.
- Skeletons of M1 and M2 side by side form a skeleton of their disjoint
  union. Surgery diagrams side by side present the connected sum.
"""

from __future__ import annotations

from typing import Optional, Union

from qinv.exceptions import SceneValidationError
from qinv.graphs.links import split_union
from qinv.manifolds.library import add_circle_plexus, remove_circle_plexus
from qinv.manifolds.scene import OmegaSpec, PlexusScene, SurgeryScene
from qinv.services.engine import Engine


# =============================================================================
# STABILIZATION
# =============================================================================


def stabilize(scene: Union[PlexusScene, SurgeryScene], component: Union[str, int], engine: Engine) -> Union[PlexusScene, SurgeryScene]:
    """One more identity coupon on a closed component (strand name or position)."""
    if isinstance(scene, SurgeryScene):
        out = scene.model_copy(deep=True)
        for o in out.omega:
            if o.position == component:
                o.coupons += 1
                return out
        raise SceneValidationError(f"Aucune composante colorée en {component}.", "omega")
    spec = scene.strands.get(str(component))
    if spec is None or spec.outer is None:
        raise SceneValidationError(f"Le brin {component} ne borde pas de disque connu.", "strand")
    base, coupons = remove_circle_plexus(scene, str(component))
    out = add_circle_plexus(base, engine.group, spec.outer, spec.color, spec.degree, coupons + 1, str(component))
    out.name = scene.name
    return out


# =============================================================================
# CONJUGATION
# =============================================================================


def conjugate(
    scene: Union[PlexusScene, SurgeryScene],
    component: Union[str, int],
    kappa: str,
    engine: Engine,
) -> Union[PlexusScene, SurgeryScene]:
    """Recolor a closed component by phi_kappa of its color."""
    group = engine.group
    if kappa not in group.elements:
        raise SceneValidationError(f"{kappa} n'est pas un élément du groupe.", "conjugation")
    if isinstance(scene, SurgeryScene):
        out = scene.model_copy(deep=True)
        for o in out.omega:
            if o.position == component:
                image = engine.crossing.image_simple(kappa, engine.simple(o.color))
                o.color = image.name
                out.degrees[o.position] = image.degree
                return out
        raise SceneValidationError(f"Aucune composante colorée en {component}.", "omega")
    out = scene.model_copy(deep=True)
    name = str(component)
    spec = out.strands.get(name)
    if spec is None:
        raise SceneValidationError(f"Brin inconnu {name}.", "strand")
    image = engine.crossing.image_simple(kappa, engine.simple(spec.color))
    spec.color = image.name
    spec.degree = image.degree

    def moved(detour: Optional[str]) -> str:
        return group.mul(detour or group.unit, kappa)

    for rim in out.rims:
        for g in rim.germs:
            if g.strand == name:
                g.detour = moved(g.detour)
    for node in out.nodes:
        for v in node.vertices:
            if v.coupon == name:
                v.detour = moved(v.detour)
        for x in node.crossings:
            if x.under == name:
                x.under_detour = moved(x.under_detour)
    return out


# =============================================================================
# UNIONS
# =============================================================================


def _prefixed(scene: PlexusScene, tag: str) -> PlexusScene:
    out = scene.model_copy(deep=True)
    for r in out.regions:
        r.id = f"{tag}{r.id}"
    out.strands = {f"{tag}{k}": v for k, v in out.strands.items()}
    for s in out.strands.values():
        s.outer = f"{tag}{s.outer}" if s.outer else None
        s.inner = f"{tag}{s.inner}" if s.inner else None
    for rim in out.rims:
        rim.id = f"{tag}{rim.id}"
        for g in rim.germs:
            g.region = f"{tag}{g.region}" if g.region else None
            g.strand = f"{tag}{g.strand}" if g.strand else None
    for node in out.nodes:
        node.id = f"{tag}{node.id}"
        for v in node.vertices:
            v.rim = f"{tag}{v.rim}" if v.rim else None
            v.coupon = f"{tag}{v.coupon}" if v.coupon else None
        for s in node.switches:
            s.strand = f"{tag}{s.strand}"
            for q in s.crossings:
                q.region = f"{tag}{q.region}"
        for x in node.crossings:
            x.over, x.under = f"{tag}{x.over}", f"{tag}{x.under}"
    return out


def disjoint_union(first: PlexusScene, second: PlexusScene) -> PlexusScene:
    """Skeleton of M1 disjoint union M2; ids are prefixed by "1." and "2."."""
    a, b = _prefixed(first, "1."), _prefixed(second, "2.")
    return PlexusScene(
        name=f"{first.name}|{second.name}",
        description=f"{first.name} et {second.name} disjoints",
        balls=a.balls + b.balls,
        regions=a.regions + b.regions,
        strands={**a.strands, **b.strands},
        rims=a.rims + b.rims,
        nodes=a.nodes + b.nodes,
    )


def connected_sum(first: SurgeryScene, second: SurgeryScene) -> SurgeryScene:
    """Split union of the two diagrams: a presentation of M1 # M2."""
    closure = split_union(first.closure(), second.closure())
    shift = first.strands
    omega = [o.model_copy() for o in first.omega]
    omega.extend(OmegaSpec(position=o.position + shift, color=o.color, coupons=o.coupons) for o in second.omega)
    return SurgeryScene(
        name=f"{first.name}#{second.name}",
        description=f"somme connexe de {first.name} et {second.name}",
        strands=closure.strands,
        word=closure.word,
        degrees=closure.degrees,
        framings=closure.framings,
        omega=omega,
    )
