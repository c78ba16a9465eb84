"""
Scene files: skeletons with knotted plexuses, and surgery diagrams.

Business rules:
- A plexus scene lists the regions of the skeleton (open 2-cells cut along
  the plexus) with their Euler characteristic and G-label, the rims (arcs
  and circles of the 1-stratum) with their cyclic list of germs, and the
  nodes with the net drawn on a small sphere around each.
- A germ is a region or a strand of the colored graph, with a sign saying
  whether its orientation agrees with the rim. Read along a rim, the labels
  (strand degrees for strands) raised to the signs multiply to 1.
- A strand germ may carry a detour alpha: its rim is colored by
  phi_{alpha^-1}(J), of degree alpha |J| alpha^-1, and flatness reads that
  degree.
- At a switch the strand leaves the regions of one side of an edge for
  the other; the regions it passes over are listed with a sign in order.
  Going from the entering rim to the leaving one, the inverse detour is
  multiplied on the right by label(r)^sign at every crossed region r.
- At a crossing of two strands, going from the leaving rim of the over
  strand back to its entering rim, its inverse detour is multiplied on the
  right by the degree of the under strand (positive crossing) or by its
  inverse (negative crossing).
- A circle rim is closed up with a rotation of its germs by `monodromy`
  places; the rotated list must be the list itself.
- The Euler characteristics satisfy sum chi(r) + #nodes - #arc rims = B,
  the number of balls in the complement of the skeleton.
- A surgery scene is a braid closure; every link component must have a
  framed longitude of degree 1. Components listed in `omega` are colored
  graph components with a fixed color instead of summed link components.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any, Literal, Optional, Union

from pydantic import BaseModel, ConfigDict, Field, ValidationError, model_validator

from qinv.exceptions import SceneValidationError, SpecFormatError
from qinv.fusion.group import FiniteGroup
from qinv.graphs.links import BraidClosure


# =============================================================================
# PLEXUS SCENES
# =============================================================================


class RegionSpec(BaseModel):
    model_config = ConfigDict(extra="forbid")

    id: str
    chi: int
    label: str


class StrandSpec(BaseModel):
    """A strand of the colored graph: a center simple and its degree.

    A closed strand bounding a disk records the region outside it and the
    disk region, so that recoloring it can relabel the disk.
    """

    model_config = ConfigDict(extra="forbid")

    color: str
    degree: str
    outer: Optional[str] = None
    inner: Optional[str] = None


class GermSpec(BaseModel):
    """A germ of a rim. A strand germ may carry the detour alpha of its rim:
    the rim is then colored by phi_{alpha^-1} of the strand color."""

    model_config = ConfigDict(extra="forbid")

    region: Optional[str] = None
    strand: Optional[str] = None
    sign: Literal[1, -1] = 1
    detour: Optional[str] = None

    @model_validator(mode="after")
    def _one_target(self) -> "GermSpec":
        if (self.region is None) == (self.strand is None):
            raise ValueError("un germe désigne soit une région, soit un brin")
        if self.region is not None and self.detour is not None:
            raise ValueError("seul un germe de brin porte un détour")
        return self

    @property
    def key(self) -> tuple[str, Optional[str], int, Optional[str]]:
        if self.region:
            return ("region", self.region, self.sign, None)
        return ("strand", self.strand, self.sign, self.detour)


class RimSpec(BaseModel):
    model_config = ConfigDict(extra="forbid")

    id: str
    germs: list[GermSpec]
    circle: bool = False
    monodromy: int = 0


class VertexSpec(BaseModel):
    """A vertex of a node net: one end of an arc rim, or a coupon on a strand.

    A coupon is the identity of the strand color unless `coordinates` give
    its endomorphism in the basis of Hom_Z(J, J); `detour` is the detour of
    the two rims it joins.
    """

    model_config = ConfigDict(extra="forbid")

    id: str
    rim: Optional[str] = None
    end: Literal[0, 1] = 0
    coupon: Optional[str] = None
    detour: Optional[str] = None
    coordinates: Optional[list[str]] = None

    @model_validator(mode="after")
    def _one_kind(self) -> "VertexSpec":
        if (self.rim is None) == (self.coupon is None):
            raise ValueError("un sommet est soit un bout d'arête, soit une boîte")
        return self


class SwitchCrossingSpec(BaseModel):
    """A region crossed by the strand at a switch, with its sign."""

    model_config = ConfigDict(extra="forbid")

    id: str
    region: str
    sign: Literal[1, -1] = 1


class SwitchSpec(BaseModel):
    """A strand passing from the rim ending at vertex `enter` to the rim
    starting at vertex `leave`, over the regions of `crossings` in order."""

    model_config = ConfigDict(extra="forbid")

    strand: str
    enter: str
    leave: str
    crossings: list[SwitchCrossingSpec] = Field(default_factory=list)


class StrandCrossingSpec(BaseModel):
    """Two strands crossing inside a region; `over` runs from vertex `enter`
    to vertex `leave`, `under` is read through its detour `under_detour`."""

    model_config = ConfigDict(extra="forbid")

    id: str
    over: str
    under: str
    enter: str
    leave: str
    under_detour: Optional[str] = None
    positive: bool = True


class NodeSpec(BaseModel):
    model_config = ConfigDict(extra="forbid")

    id: str
    vertices: list[VertexSpec]
    arcs: list[tuple[str, int, str, int]] = Field(default_factory=list)
    switches: list[SwitchSpec] = Field(default_factory=list)
    crossings: list[StrandCrossingSpec] = Field(default_factory=list)

    def crossing_ids(self) -> list[str]:
        return [q.id for s in self.switches for q in s.crossings] + [x.id for x in self.crossings]


class PlexusScene(BaseModel):
    model_config = ConfigDict(extra="forbid")

    kind: Literal["plexus"] = "plexus"
    name: str
    description: str = ""
    balls: int
    regions: list[RegionSpec]
    strands: dict[str, StrandSpec] = Field(default_factory=dict)
    rims: list[RimSpec] = Field(default_factory=list)
    nodes: list[NodeSpec] = Field(default_factory=list)

    def region(self, rid: str) -> RegionSpec:
        for r in self.regions:
            if r.id == rid:
                return r
        raise SceneValidationError(f"Région inconnue {rid}.", self.name)

    def rim(self, rid: str) -> RimSpec:
        for r in self.rims:
            if r.id == rid:
                return r
        raise SceneValidationError(f"Arête inconnue {rid}.", self.name)

    def arc_rims(self) -> list[RimSpec]:
        return [r for r in self.rims if not r.circle]

    def circle_rims(self) -> list[RimSpec]:
        return [r for r in self.rims if r.circle]

    def end_germs(self, rim: RimSpec, end: int) -> list[GermSpec]:
        """Germs read from one end: end 1 reads the reversed list with flipped signs."""
        if end == 0:
            return list(rim.germs)
        return [GermSpec(region=g.region, strand=g.strand, sign=-g.sign, detour=g.detour) for g in reversed(rim.germs)]


def germ_degree(scene: PlexusScene, group: FiniteGroup, germ: GermSpec) -> str:
    """Label of a region germ; for a strand germ the degree of its rim color, alpha |J| alpha^-1."""
    if germ.region:
        g = scene.region(germ.region).label
    else:
        g = scene.strands[germ.strand].degree  # type: ignore[index]
        if germ.detour is not None:
            g = group.conj(g, group.inv(germ.detour))
    return g if germ.sign > 0 else group.inv(g)


def validate_plexus(scene: PlexusScene, group: FiniteGroup) -> list[str]:
    """Flatness, Euler characteristic, circle symmetry and node wiring.

    Returns:
        the names of the checks passed.

    Raises:
        SceneValidationError: with the location of the first violation.
    """
    ids = [r.id for r in scene.regions]
    if len(set(ids)) != len(ids):
        raise SceneValidationError("Régions en double.", scene.name)
    for r in scene.regions:
        if r.label not in group.elements:
            raise SceneValidationError(f"Étiquette {r.label} hors du groupe.", f"region {r.id}")
    for name, strand in scene.strands.items():
        if strand.degree not in group.elements:
            raise SceneValidationError(f"Degré {strand.degree} hors du groupe.", f"strand {name}")

    for rim in scene.rims:
        if not rim.germs:
            raise SceneValidationError("Arête sans germe.", f"rim {rim.id}")
        for germ in rim.germs:
            if germ.region and germ.region not in ids:
                raise SceneValidationError(f"Région inconnue {germ.region}.", f"rim {rim.id}")
            if germ.strand and germ.strand not in scene.strands:
                raise SceneValidationError(f"Brin inconnu {germ.strand}.", f"rim {rim.id}")
            if germ.detour is not None and germ.detour not in group.elements:
                raise SceneValidationError(f"Détour {germ.detour} hors du groupe.", f"rim {rim.id}")
        total = group.product(germ_degree(scene, group, g) for g in rim.germs)
        if total != group.unit:
            raise SceneValidationError(f"Le produit des étiquettes vaut {total}, pas 1.", f"flatness at rim {rim.id}")
        if rim.circle:
            m = rim.monodromy % len(rim.germs)
            keys = [g.key for g in rim.germs]
            if keys[m:] + keys[:m] != keys:
                raise SceneValidationError("La monodromie ne préserve pas les germes.", f"rim {rim.id}")
    passed = ["flatness", "rim degree"]

    chi = sum(r.chi for r in scene.regions) + len(scene.nodes) - len(scene.arc_rims())
    if chi != scene.balls:
        raise SceneValidationError(f"Caractéristique d'Euler {chi} au lieu de {scene.balls} boules.", "euler characteristic")
    passed.append("euler characteristic")

    used: dict[tuple[str, int], str] = {}
    for node in scene.nodes:
        where = f"node {node.id}"
        names = [v.id for v in node.vertices] + node.crossing_ids()
        if len(set(names)) != len(names):
            raise SceneValidationError("Sommets en double.", where)
        sizes = {}
        for v in node.vertices:
            if v.rim is not None:
                rim = scene.rim(v.rim)
                if rim.circle:
                    raise SceneValidationError("Un cercle n'a pas de bout.", where)
                if (v.rim, v.end) in used:
                    raise SceneValidationError(f"Bout {v.rim}:{v.end} utilisé deux fois.", where)
                used[(v.rim, v.end)] = node.id
                sizes[v.id] = len(rim.germs)
            else:
                if v.coupon not in scene.strands:
                    raise SceneValidationError(f"Boîte sur un brin inconnu {v.coupon}.", where)
                if v.detour is not None and v.detour not in group.elements:
                    raise SceneValidationError(f"Détour {v.detour} hors du groupe.", where)
                sizes[v.id] = 2
        _check_node_strands(scene, group, node)
        sizes.update({x: 4 for x in node.crossing_ids()})
        seen_legs: set[tuple[str, int]] = set()
        for a, i, b, j in node.arcs:
            for v, k in ((a, i), (b, j)):
                if v not in sizes or not 0 <= k < sizes[v]:
                    raise SceneValidationError(f"Patte {v}.{k} inexistante.", where)
                if (v, k) in seen_legs:
                    raise SceneValidationError(f"Patte {v}.{k} reliée deux fois.", where)
                seen_legs.add((v, k))
        if len(seen_legs) != sum(sizes.values()):
            raise SceneValidationError("Pattes libres dans le réseau du nœud.", where)
    for rim in scene.arc_rims():
        for end in (0, 1):
            if (rim.id, end) not in used:
                raise SceneValidationError(f"Le bout {end} de {rim.id} n'atteint aucun nœud.", f"rim {rim.id}")
    passed.append("node wiring")
    return passed


def strand_end_detour(scene: PlexusScene, node: NodeSpec, vertex: str, strand: str) -> Optional[str]:
    """Detour of `strand` on the rim ending at `vertex`, None if none is given.

    Raises:
        SceneValidationError: the vertex is not the end of a rim carrying the strand.
    """
    for v in node.vertices:
        if v.id == vertex and v.rim is not None:
            for g in scene.rim(v.rim).germs:
                if g.strand == strand:
                    return g.detour
            raise SceneValidationError(f"Le brin {strand} ne passe pas par {v.rim}.", f"node {node.id}")
    raise SceneValidationError(f"{vertex} n'est pas un bout d'arête.", f"node {node.id}")


def _check_node_strands(scene: PlexusScene, group: FiniteGroup, node: NodeSpec) -> None:
    where = f"node {node.id}"
    for s in node.switches:
        if s.strand not in scene.strands:
            raise SceneValidationError(f"Brin inconnu {s.strand}.", where)
        for vertex in (s.enter, s.leave):
            strand_end_detour(scene, node, vertex, s.strand)
        for q in s.crossings:
            scene.region(q.region)
    for x in node.crossings:
        for name in (x.over, x.under):
            if name not in scene.strands:
                raise SceneValidationError(f"Brin inconnu {name}.", where)
        for vertex in (x.enter, x.leave):
            strand_end_detour(scene, node, vertex, x.over)
        if x.under_detour is not None and x.under_detour not in group.elements:
            raise SceneValidationError(f"Détour {x.under_detour} hors du groupe.", where)


# =============================================================================
# SURGERY SCENES
# =============================================================================


class OmegaSpec(BaseModel):
    """A component of the colored graph: its bottom position, color and identity coupons."""

    model_config = ConfigDict(extra="forbid")

    position: int
    color: str
    coupons: int = 1


class SurgeryScene(BaseModel):
    model_config = ConfigDict(extra="forbid")

    kind: Literal["surgery"] = "surgery"
    name: str
    description: str = ""
    strands: int
    word: list[int] = Field(default_factory=list)
    degrees: list[str]
    framings: dict[int, int] = Field(default_factory=dict)
    omega: list[OmegaSpec] = Field(default_factory=list)

    def closure(self) -> BraidClosure:
        return BraidClosure(self.strands, list(self.word), list(self.degrees), dict(self.framings))

    def link_components(self) -> list[int]:
        marked = {o.position for o in self.omega}
        return [c[0] for c in self.closure().components() if c[0] not in marked]


def validate_surgery(scene: SurgeryScene, group: FiniteGroup) -> list[str]:
    """Degrees, longitudes and colored components of a surgery scene."""
    for d in scene.degrees:
        if d not in group.elements:
            raise SceneValidationError(f"Degré {d} hors du groupe.", scene.name)
    closure = scene.closure()
    starts = {c[0] for c in closure.components()}
    for p in scene.framings:
        if p not in starts:
            raise SceneValidationError(f"Cadrage sur {p}, qui ne commence aucune composante.", "framings")
    for o in scene.omega:
        if o.position not in starts:
            raise SceneValidationError(f"Composante colorée en {o.position} mal placée.", "omega")
        if o.coupons < 0:
            raise SceneValidationError("Nombre de boîtes négatif.", "omega")
    closure.histories(group)
    closure.check_longitudes(group)
    return ["degrees", "longitude"]


# =============================================================================
# FILES
# =============================================================================

Scene = Union[PlexusScene, SurgeryScene]


def parse_scene(data: Union[str, bytes, dict[str, Any]]) -> Scene:
    """Read a scene from JSON text or a decoded dict, dispatching on `kind`.

    Raises:
        SpecFormatError: malformed scene.
    """
    try:
        raw = json.loads(data) if isinstance(data, (str, bytes)) else data
        model = SurgeryScene if raw.get("kind") == "surgery" else PlexusScene
        return model.model_validate(raw)
    except (ValidationError, json.JSONDecodeError, AttributeError) as exc:
        raise SpecFormatError(f"Scène mal formée : {exc}")


def load_scene(path: Union[str, Path]) -> Scene:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise SpecFormatError(f"Lecture impossible de {path} : {exc}")
    return parse_scene(text)


def save_scene(scene: Scene, path: Union[str, Path]) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(scene.model_dump_json(indent=2) + "\n", encoding="utf-8")
    return path
