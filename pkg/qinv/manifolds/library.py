"""
The bundled manifolds, in both presentations.

Business rules:
- Manifolds: S3, S1xS2, L(2,1), L(3,1). A flat G-structure on them is a
  homomorphism from the fundamental group to G, taken up to conjugation:
  the unit for S3, one element per conjugacy class for S1xS2, one element
  g with g^p = 1 per class for L(p,1).
- Each (manifold, structure) has two skeletons and two surgery diagrams.
  The skeletons carry the structure as region labels, the diagrams as
  meridian degrees; a label g matches a meridian degree g.
- A colored circle colored by a center simple J of degree alpha sits in a
  disk region: the skeleton side splits the region, the surgery side adds
  a split unknot with framing 0. On S3 and S1xS2 the same circle is
  also drawn across a circle rim of the skeleton, through two switches.
"""

from __future__ import annotations

import json
import logging
from pathlib import Path
from typing import Optional, Union

from pydantic import BaseModel, ConfigDict, Field

from qinv.exceptions import SceneValidationError, SpecFormatError
from qinv.fusion.group import FiniteGroup
from qinv.manifolds.scene import (
    GermSpec,
    NodeSpec,
    OmegaSpec,
    PlexusScene,
    RegionSpec,
    RimSpec,
    StrandCrossingSpec,
    StrandSpec,
    SurgeryScene,
    SwitchCrossingSpec,
    SwitchSpec,
    VertexSpec,
    save_scene,
)

logger = logging.getLogger(__name__)

MANIFOLDS = ["s3", "s1s2", "l2", "l3"]

TITLES = {"s3": "S3", "s1s2": "S1xS2", "l2": "L(2,1)", "l3": "L(3,1)"}

# region of each skeleton where a colored circle is drawn
CIRCLE_REGION = {"s3_sphere": "S", "s3_equator": "N", "s1s2_circle": "N", "s1s2_node": "N", "lens_circle": "R", "lens_node": "R"}


def _germ(region: str, sign: int = 1) -> GermSpec:
    return GermSpec(region=region, sign=sign)


def _theta_arcs(p: int, shift: int) -> list[tuple[str, int, str, int]]:
    return [("v0", j, "v1", (p - 1 - j + shift) % p) for j in range(p)]


# =============================================================================
# FLAT STRUCTURES
# =============================================================================


def lens_order(manifold: str) -> int:
    return {"l2": 2, "l3": 3}[manifold]


def flat_structures(manifold: str, group: FiniteGroup) -> list[str]:
    """One representative per conjugacy class of flat G-structures."""
    if manifold == "s3":
        return [group.unit]
    classes = group.conjugacy_classes()
    if manifold == "s1s2":
        return [cls[0] for cls in classes]
    p = lens_order(manifold)
    return [cls[0] for cls in classes if group.power(cls[0], p) == group.unit]


# =============================================================================
# SKELETONS
# =============================================================================


def s3_sphere(group: FiniteGroup, label: Optional[str] = None) -> PlexusScene:
    return PlexusScene(
        name="s3_sphere",
        description="S3 : sphère S2, deux boules",
        balls=2,
        regions=[RegionSpec(id="S", chi=2, label=label or group.unit)],
    )


def s3_equator(group: FiniteGroup) -> PlexusScene:
    u = group.unit
    return PlexusScene(
        name="s3_equator",
        description="S3 : sphère S2 avec un équateur",
        balls=2,
        regions=[RegionSpec(id="N", chi=1, label=u), RegionSpec(id="S", chi=1, label=u)],
        rims=[RimSpec(id="E", germs=[_germ("N"), _germ("S", -1)], circle=True)],
    )


def _s1s2_regions(group: FiniteGroup, g: str) -> list[RegionSpec]:
    return [
        RegionSpec(id="A", chi=0, label=group.unit),
        RegionSpec(id="N", chi=1, label=g),
        RegionSpec(id="S", chi=1, label=g),
    ]


S1S2_GERMS = [("A", 1), ("N", 1), ("A", -1), ("S", -1)]


def s1s2_circle(group: FiniteGroup, g: str) -> PlexusScene:
    return PlexusScene(
        name="s1s2_circle",
        description=f"S1xS2 : anneau et deux disques sur un cercle, holonomie {g}",
        balls=2,
        regions=_s1s2_regions(group, g),
        rims=[RimSpec(id="C", germs=[_germ(r, s) for r, s in S1S2_GERMS], circle=True)],
    )


def s1s2_node(group: FiniteGroup, g: str) -> PlexusScene:
    return PlexusScene(
        name="s1s2_node",
        description=f"S1xS2 : le cercle subdivisé par un sommet, holonomie {g}",
        balls=2,
        regions=_s1s2_regions(group, g),
        rims=[RimSpec(id="C", germs=[_germ(r, s) for r, s in S1S2_GERMS])],
        nodes=[
            NodeSpec(
                id="X",
                vertices=[VertexSpec(id="v0", rim="C", end=0), VertexSpec(id="v1", rim="C", end=1)],
                arcs=_theta_arcs(4, 0),
            )
        ],
    )


def lens_circle(group: FiniteGroup, p: int, g: str) -> PlexusScene:
    return PlexusScene(
        name="lens_circle",
        description=f"L({p},1) : un disque enroulé {p} fois sur un cercle, holonomie {g}",
        balls=1,
        regions=[RegionSpec(id="R", chi=1, label=g)],
        rims=[RimSpec(id="C", germs=[_germ("R")] * p, circle=True, monodromy=1)],
    )


def lens_node(group: FiniteGroup, p: int, g: str) -> PlexusScene:
    return PlexusScene(
        name="lens_node",
        description=f"L({p},1) : le cercle subdivisé par un sommet, holonomie {g}",
        balls=1,
        regions=[RegionSpec(id="R", chi=1, label=g)],
        rims=[RimSpec(id="C", germs=[_germ("R")] * p)],
        nodes=[
            NodeSpec(
                id="X",
                vertices=[VertexSpec(id="v0", rim="C", end=0), VertexSpec(id="v1", rim="C", end=1)],
                arcs=_theta_arcs(p, 1),
            )
        ],
    )


def skeletons(manifold: str, group: FiniteGroup, g: str) -> list[PlexusScene]:
    if manifold == "s3":
        return [s3_sphere(group), s3_equator(group)]
    if manifold == "s1s2":
        return [s1s2_circle(group, g), s1s2_node(group, g)]
    p = lens_order(manifold)
    return [lens_circle(group, p, g), lens_node(group, p, g)]


# =============================================================================
# SURGERY DIAGRAMS
# =============================================================================


def unknot(name: str, degree: str, framing: int, description: str = "") -> SurgeryScene:
    return SurgeryScene(name=name, description=description, strands=1, degrees=[degree], framings={0: framing})


def surgeries(manifold: str, group: FiniteGroup, g: str) -> list[SurgeryScene]:
    u = group.unit
    if manifold == "s3":
        return [
            SurgeryScene(name="s3_empty", description="S3 : entrelacs vide", strands=0, degrees=[]),
            unknot("s3_unknot_plus", u, 1, "S3 : noeud trivial de cadrage +1"),
            unknot("s3_unknot_minus", u, -1, "S3 : noeud trivial de cadrage -1"),
        ]
    if manifold == "s1s2":
        return [
            unknot("s1s2_unknot", g, 0, f"S1xS2 : noeud trivial de cadrage 0, méridien {g}"),
            SurgeryScene(
                name="s1s2_blowup",
                description=f"S1xS2 : cadrage 0 et un noeud +1 séparé, méridien {g}",
                strands=2,
                degrees=[g, u],
                framings={0: 0, 1: 1},
            ),
        ]
    p = lens_order(manifold)
    return [
        unknot("lens_unknot", g, p, f"L({p},1) : noeud trivial de cadrage {p}, méridien {g}"),
        SurgeryScene(
            name="lens_hopf",
            description=f"L({p},1) : entrelacs de Hopf de cadrages ({p + 1}, 1), méridiens ({g}, {g}^-1)",
            strands=2,
            word=[1, 1],
            degrees=[g, group.inv(g)],
            framings={0: p + 1, 1: 1},
        ),
    ]


# =============================================================================
# COLORED CIRCLES
# =============================================================================


def add_circle_plexus(
    scene: PlexusScene,
    group: FiniteGroup,
    region: str,
    color: str,
    degree: str,
    coupons: int = 1,
    strand: str = "w",
) -> PlexusScene:
    """Draw a circle colored `color` in `region`, cut by `coupons` identity coupons.

    The region keeps its id outside the circle (chi drops by one); the disk
    inside is a new region labeled label(region) * degree. With no coupon
    the circle is a circle rim.
    """
    out = scene.model_copy(deep=True)
    outer = out.region(region)
    inner = f"{region}_{strand}"
    outer.chi -= 1
    out.regions.append(RegionSpec(id=inner, chi=1, label=group.mul(outer.label, degree)))
    out.strands[strand] = StrandSpec(color=color, degree=degree, outer=region, inner=inner)
    germs = [_germ(region), GermSpec(strand=strand), _germ(inner, -1)]
    if coupons == 0:
        out.rims.append(RimSpec(id=f"O_{strand}", germs=germs, circle=True))
    for i in range(coupons):
        out.rims.append(RimSpec(id=f"O_{strand}{i}", germs=germs))
    for i in range(coupons):
        before = (i - 1) % coupons
        out.nodes.append(
            NodeSpec(
                id=f"X_{strand}{i}",
                vertices=[
                    VertexSpec(id="a", rim=f"O_{strand}{i}", end=0),
                    VertexSpec(id="b", rim=f"O_{strand}{before}", end=1),
                    VertexSpec(id="box", coupon=strand),
                ],
                arcs=[("a", 0, "b", 2), ("a", 2, "b", 0), ("a", 1, "box", 1), ("box", 0, "b", 1)],
            )
        )
    out.name = f"{scene.name}+{strand}"
    return out


def remove_circle_plexus(scene: PlexusScene, strand: str) -> tuple[PlexusScene, int]:
    """Inverse of add_circle_plexus; also returns the number of coupons removed."""
    spec = scene.strands.get(strand)
    if spec is None or spec.outer is None or spec.inner is None:
        raise SceneValidationError(f"Le brin {strand} ne borde pas de disque connu.", "strand")
    out = scene.model_copy(deep=True)
    coupons = sum(1 for n in out.nodes for v in n.vertices if v.coupon == strand)
    out.nodes = [n for n in out.nodes if not any(v.coupon == strand for v in n.vertices)]
    out.rims = [r for r in out.rims if not any(g.strand == strand for g in r.germs)]
    out.regions = [r for r in out.regions if r.id != spec.inner]
    out.region(spec.outer).chi += 1
    del out.strands[strand]
    return out, coupons


def add_circle_surgery(scene: SurgeryScene, color: str, degree: str, coupons: int = 1) -> SurgeryScene:
    """A split unknot with framing 0, colored `color`, placed to the right of the braid."""
    out = scene.model_copy(deep=True)
    position = out.strands
    out.strands += 1
    out.degrees.append(degree)
    out.framings[position] = 0
    out.omega.append(OmegaSpec(position=position, color=color, coupons=coupons))
    out.name = f"{scene.name}+{color}"
    return out


# =============================================================================
# KNOTTED CIRCLES
# =============================================================================


def _switch(strand: str, enter: str, leave: str, crossings: list[tuple[str, str, int]]) -> SwitchSpec:
    return SwitchSpec(
        strand=strand,
        enter=enter,
        leave=leave,
        crossings=[SwitchCrossingSpec(id=i, region=r, sign=s) for i, r, s in crossings],  # type: ignore[arg-type]
    )


def s1s2_switch_circle(
    group: FiniteGroup,
    g: str,
    color: str,
    degree: str,
    detour: Optional[str] = None,
    strand: str = "w",
) -> PlexusScene:
    """S1xS2 with a circle drawn on S and on the annulus, across the circle C.

    The circle meets C at two switches, cutting C into C1 (on the side of
    the disks S_w and A_w it bounds) and C2. Near each switch the strand is
    pushed over the two other sheets at C, N and the far side of A, so
    every switch crosses two regions. The strand rims carry the detours h
    (on S) and g h (on the annulus), h = `detour`.
    """
    u = group.unit
    h = detour or u
    gh = group.mul(g, h)
    moved = group.conj(degree, group.inv(h))
    regions = [
        RegionSpec(id="A", chi=0, label=u),
        RegionSpec(id="A_w", chi=1, label=group.conj(moved, group.inv(g))),
        RegionSpec(id="N", chi=1, label=g),
        RegionSpec(id="S", chi=1, label=g),
        RegionSpec(id="S_w", chi=1, label=group.mul(g, moved)),
    ]
    rims = [
        RimSpec(id="C1", germs=[_germ("A_w"), _germ("N"), _germ("A", -1), _germ("S_w", -1)]),
        RimSpec(id="C2", germs=[_germ("A"), _germ("N"), _germ("A", -1), _germ("S", -1)]),
        RimSpec(id="W_S", germs=[_germ("S"), GermSpec(strand=strand, detour=h), _germ("S_w", -1)]),
        RimSpec(id="W_A", germs=[_germ("A"), GermSpec(strand=strand, detour=gh), _germ("A_w", -1)]),
    ]
    first = NodeSpec(
        id="X1",
        vertices=[
            VertexSpec(id="c1", rim="C1", end=0),
            VertexSpec(id="c2", rim="C2", end=1),
            VertexSpec(id="s", rim="W_S", end=1),
            VertexSpec(id="a", rim="W_A", end=0),
        ],
        arcs=[
            ("c1", 3, "s", 0),
            ("c2", 0, "s", 2),
            ("c1", 0, "a", 2),
            ("c2", 3, "a", 0),
            ("c2", 1, "xA", 3),
            ("xA", 1, "c1", 2),
            ("c1", 1, "xN", 2),
            ("xN", 0, "c2", 2),
            ("a", 1, "xN", 3),
            ("xN", 1, "xA", 2),
            ("xA", 0, "s", 1),
        ],
        switches=[_switch(strand, "s", "a", [("xA", "A", 1), ("xN", "N", -1)])],
    )
    second = NodeSpec(
        id="X2",
        vertices=[
            VertexSpec(id="c1", rim="C1", end=1),
            VertexSpec(id="c2", rim="C2", end=0),
            VertexSpec(id="a", rim="W_A", end=1),
            VertexSpec(id="s", rim="W_S", end=0),
        ],
        arcs=[
            ("c1", 0, "s", 2),
            ("c2", 3, "s", 0),
            ("c1", 3, "a", 0),
            ("c2", 0, "a", 2),
            ("c2", 1, "yN", 3),
            ("yN", 1, "c1", 2),
            ("c1", 1, "yA", 2),
            ("yA", 0, "c2", 2),
            ("s", 1, "yA", 3),
            ("yA", 1, "yN", 2),
            ("yN", 0, "a", 1),
        ],
        switches=[_switch(strand, "a", "s", [("yN", "N", 1), ("yA", "A", -1)])],
    )
    return PlexusScene(
        name="s1s2_switch",
        description=f"S1xS2 : cercle {color} sur S et l'anneau, deux aiguillages, holonomie {g}",
        balls=2,
        regions=regions,
        strands={strand: StrandSpec(color=color, degree=degree)},
        rims=rims,
        nodes=[first, second],
    )


def s3_switch_circle(group: FiniteGroup, color: str, degree: str, detour: Optional[str] = None, strand: str = "w") -> PlexusScene:
    """S3 with a circle drawn across the equator, meeting it at two switches.

    Only the two hemispheres meet at the equator, so no switch crosses a
    region and the strand keeps the detour `detour` all the way round.
    """
    u = group.unit
    h = detour or u
    moved = group.conj(degree, group.inv(h))

    def node(name: str, first: int, enter: str, leave: str, arcs: list[tuple[str, int, str, int]]) -> NodeSpec:
        return NodeSpec(
            id=name,
            vertices=[
                VertexSpec(id="e1", rim="E1", end=first),
                VertexSpec(id="e2", rim="E2", end=1 - first),
                VertexSpec(id="n", rim="W_N", end=first),
                VertexSpec(id="s", rim="W_S", end=1 - first),
            ],
            arcs=arcs,
            switches=[_switch(strand, enter, leave, [])],
        )

    return PlexusScene(
        name="s3_switch",
        description=f"S3 : cercle {color} à cheval sur l'équateur, deux aiguillages",
        balls=2,
        regions=[
            RegionSpec(id="N", chi=1, label=u),
            RegionSpec(id="N_w", chi=1, label=moved),
            RegionSpec(id="S", chi=1, label=u),
            RegionSpec(id="S_w", chi=1, label=moved),
        ],
        strands={strand: StrandSpec(color=color, degree=degree)},
        rims=[
            RimSpec(id="E1", germs=[_germ("N_w"), _germ("S_w", -1)]),
            RimSpec(id="E2", germs=[_germ("N"), _germ("S", -1)]),
            RimSpec(id="W_N", germs=[_germ("N"), GermSpec(strand=strand, detour=h), _germ("N_w", -1)]),
            RimSpec(id="W_S", germs=[_germ("S"), GermSpec(strand=strand, detour=h), _germ("S_w", -1)]),
        ],
        nodes=[
            node("Y1", 0, "s", "n", [("e1", 0, "n", 2), ("e2", 1, "n", 0), ("e1", 1, "s", 0), ("e2", 0, "s", 2), ("n", 1, "s", 1)]),
            node("Y2", 1, "n", "s", [("e1", 1, "n", 0), ("e2", 0, "n", 2), ("e1", 0, "s", 2), ("e2", 1, "s", 0), ("s", 1, "n", 1)]),
        ],
    )


def s3_kink(group: FiniteGroup, color: str, degree: str, positive: bool = True, strand: str = "w") -> PlexusScene:
    """S3 with a figure-eight drawn on the sphere: an unknot with one curl.

    The lobes L1 and L2 lie on either side of the double point; `positive`
    chooses which of the two passes goes over. A self-crossing strand keeps
    its detour on both sides, so its degree must be the unit.
    """
    u = group.unit
    if degree != u:
        raise SceneValidationError("Une boucle qui se croise sur une sphère est de degré neutre.", "s3_kink")
    over = ("s1", "n2") if positive else ("s2", "n1")
    return PlexusScene(
        name="s3_kink",
        description=f"S3 : un huit colorié {color} sur la sphère",
        balls=2,
        regions=[RegionSpec(id=r, chi=1, label=u) for r in ("O", "L1", "L2")],
        strands={strand: StrandSpec(color=color, degree=degree)},
        rims=[
            RimSpec(id="R1", germs=[_germ("O"), GermSpec(strand=strand), _germ("L1", -1)]),
            RimSpec(id="R2", germs=[_germ("L2"), GermSpec(strand=strand), _germ("O", -1)]),
        ],
        nodes=[
            NodeSpec(
                id="X",
                vertices=[
                    VertexSpec(id="n1", rim="R1", end=0),
                    VertexSpec(id="s1", rim="R1", end=1),
                    VertexSpec(id="n2", rim="R2", end=0),
                    VertexSpec(id="s2", rim="R2", end=1),
                ],
                arcs=[
                    ("n1", 2, "s1", 0),
                    ("n2", 0, "s2", 2),
                    ("n1", 0, "n2", 2),
                    ("s2", 0, "s1", 2),
                    ("n2", 1, "k", 3),
                    ("k", 1, "s1", 1),
                    ("n1", 1, "k", 2),
                    ("k", 0, "s2", 1),
                ],
                crossings=[
                    StrandCrossingSpec(id="k", over=strand, under=strand, enter=over[0], leave=over[1], positive=positive)
                ],
            )
        ],
    )


def circle_region(scene: PlexusScene) -> str:
    return CIRCLE_REGION[scene.name]


# =============================================================================
# MANIFESTS
# =============================================================================


class Manifest(BaseModel):
    """Scenes declared to present the same manifold with the same structure."""

    model_config = ConfigDict(extra="forbid")

    name: str
    manifold: str
    structure: str
    color: Optional[str] = None
    plexus: list[str] = Field(default_factory=list)
    surgery: list[str] = Field(default_factory=list)


def load_manifest(path: Union[str, Path]) -> Manifest:
    path = Path(path)
    try:
        return Manifest.model_validate_json(path.read_text(encoding="utf-8"))
    except (OSError, ValueError) as exc:
        raise SpecFormatError(f"Manifeste illisible {path} : {exc}")


def matched_scenes(group: FiniteGroup) -> list[tuple[str, str, list[PlexusScene], list[SurgeryScene]]]:
    """(manifold, structure, skeletons, surgery diagrams) for every bundled pair."""
    out = []
    for manifold in MANIFOLDS:
        for g in flat_structures(manifold, group):
            out.append((manifold, g, skeletons(manifold, group, g), surgeries(manifold, group, g)))
    return out


def bundled_colors(group: FiniteGroup) -> dict[str, str]:
    """The first center simple of every degree; J{alpha}_0 exists whatever the category."""
    return {f"J{alpha}_0": alpha for alpha in group.elements}


def colored_matched_scenes(
    group: FiniteGroup, colors: dict[str, str]
) -> list[tuple[str, str, str, list[PlexusScene], list[SurgeryScene]]]:
    """(manifold, structure, color, skeletons, surgery diagrams) with one colored circle added."""
    out = []
    for manifold, g, plexus, surgery in matched_scenes(group):
        for color, degree in colors.items():
            drawn = [add_circle_plexus(s, group, circle_region(s), color, degree) for s in plexus]
            if manifold == "s3":
                drawn.append(s3_switch_circle(group, color, degree))
            if manifold == "s1s2":
                drawn.append(s1s2_switch_circle(group, g, color, degree))
            diagrams = [add_circle_surgery(s, color, degree) for s in surgery]
            out.append((manifold, g, color, drawn, diagrams))
    return out


def group_key(group: FiniteGroup) -> str:
    return "g" + "_".join(group.elements)


def _write_manifest(
    base: Path,
    tag: str,
    manifold: str,
    g: str,
    plexus: list[PlexusScene],
    surgery: list[SurgeryScene],
    color: Optional[str] = None,
) -> list[Path]:
    written = []
    names = {"plexus": [], "surgery": []}
    for kind, scenes in (("plexus", plexus), ("surgery", surgery)):
        for scene in scenes:
            path = save_scene(scene, base / f"{tag}_{scene.name.replace('+', '_')}.scene")
            names[kind].append(path.name)
            written.append(path)
    manifest = Manifest(name=tag, manifold=manifold, structure=g, color=color, **names)
    path = base / f"{tag}.cmp"
    path.write_text(json.dumps(manifest.model_dump(), indent=2, ensure_ascii=False) + "\n", encoding="utf-8")
    written.append(path)
    return written


def write_bundled_scenes(data_dir: Path, groups: Optional[dict[str, FiniteGroup]] = None) -> list[Path]:
    """Write scenes and manifests for the groups of the bundled categories.

    Each (manifold, structure) gets a plain manifest and one manifest per
    degree alpha with a circle colored J{alpha}_0 added to every scene.
    """
    from qinv import seeds

    if groups is None:
        groups = {}
        for name, build in seeds.BUNDLED_CATEGORIES.items():
            group = build().group
            groups.setdefault(group_key(group), group)
    written = []
    for key, group in groups.items():
        base = data_dir / "scenes" / key
        for manifold, g, plexus, surgery in matched_scenes(group):
            tag = f"{manifold}_{group.index(g)}"
            written.extend(_write_manifest(base, tag, manifold, g, plexus, surgery))
        colors = bundled_colors(group)
        for manifold, g, color, plexus, surgery in colored_matched_scenes(group, colors):
            tag = f"{manifold}_{group.index(g)}_c{group.index(colors[color])}"
            written.extend(_write_manifest(base, tag, manifold, g, plexus, surgery, color))
    logger.debug("wrote %d scene files under %s", len(written), data_dir)
    return written
