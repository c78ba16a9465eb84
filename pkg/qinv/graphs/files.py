"""
Net and strip files.

Business rules:
- A `.net` file is JSON with `kind` "net" or "strip".
- A color is the name of a simple of C or of a simple of the center; a
  center color stands for its underlying object.
- Net files list vertices (cyclic legs, an optional vector given by its
  coordinates in the basis of Hom(1, word)) and crossings (a center
  simple over a plain strand, four edges). Vertices without a vector are
  free: the net is evaluated on every choice of basis vectors.
- Strip files give the bottom row (center simples) and the tiles from
  bottom to top; the diagram is closed by a trace. A coupon without
  coordinates is the identity; otherwise its coordinates are taken in the
  basis of Hom_Z(window, outputs).
"""

from __future__ import annotations

import json
import logging
from itertools import product
from pathlib import Path
from typing import Any, Literal, Optional, Union

from pydantic import BaseModel, ConfigDict, Field, ValidationError

from qinv.algebra.scalar import Scalar, parse_scalar
from qinv.center.braiding import Braiding
from qinv.center.objects import CenterObject
from qinv.exceptions import QinvException, SceneValidationError, SpecFormatError
from qinv.fusion.morphism import UNIT_OBJ, Morphism, Obj
from qinv.graphs.net import Leg, Net, NetVertex, crossing_vertex, evaluate_net, validate_net, word_of
from qinv.graphs.strip import Braid, Coupon, StripEvaluator, Tile, Twist, Unbraid, Untwist, row_obj

logger = logging.getLogger(__name__)


class LegSpec(BaseModel):
    model_config = ConfigDict(extra="forbid")

    edge: str
    color: str
    sign: Literal[1, -1] = 1


class VertexSpec(BaseModel):
    model_config = ConfigDict(extra="forbid")

    name: str
    legs: list[LegSpec] = Field(min_length=1)
    vector: Optional[list[str]] = None


class CrossingSpec(BaseModel):
    """edges = (over in, under in, under out, over out)."""

    model_config = ConfigDict(extra="forbid")

    name: str
    over: str
    under: str
    edges: tuple[str, str, str, str]
    positive: bool = True


class NetFile(BaseModel):
    model_config = ConfigDict(extra="forbid")

    kind: Literal["net"] = "net"
    name: str = "net"
    vertices: list[VertexSpec] = Field(default_factory=list)
    crossings: list[CrossingSpec] = Field(default_factory=list)


class TileSpec(BaseModel):
    model_config = ConfigDict(extra="forbid")

    tile: Literal["braid", "unbraid", "twist", "untwist", "coupon"]
    at: int = Field(ge=0)
    width: int = Field(default=1, ge=1)
    outputs: list[str] = Field(default_factory=list)
    coordinates: list[str] = Field(default_factory=list)


class StripFile(BaseModel):
    model_config = ConfigDict(extra="forbid")

    kind: Literal["strip"] = "strip"
    name: str = "strip"
    bottom: list[str] = Field(min_length=1)
    tiles: list[TileSpec] = Field(default_factory=list)


NetSource = Union[NetFile, StripFile]


class NetValue(BaseModel):
    """Value of a net on one choice of basis vectors for its free vertices."""

    choice: dict[str, int] = Field(default_factory=dict)
    value: str


# =============================================================================
# FILES
# =============================================================================


def parse_net_file(data: Union[str, bytes, dict[str, Any]]) -> NetSource:
    """
    Raises:
        SpecFormatError: malformed file.
    """
    try:
        raw = json.loads(data) if isinstance(data, (str, bytes)) else data
        model = StripFile if raw.get("kind") == "strip" else NetFile
        return model.model_validate(raw)
    except (ValidationError, json.JSONDecodeError, AttributeError) as exc:
        raise SpecFormatError(f"Réseau mal formé : {exc}")


def load_net_file(path: Union[str, Path]) -> NetSource:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise SpecFormatError(f"Lecture impossible de {path} : {exc}")
    return parse_net_file(text)


def save_net_file(source: NetSource, path: Union[str, Path]) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(source.model_dump_json(indent=2) + "\n", encoding="utf-8")
    return path


# =============================================================================
# EVALUATION
# =============================================================================


def _center_simple(braiding: Braiding, name: str, where: str) -> CenterObject:
    try:
        return braiding.crossing.simples.by_name(name)
    except KeyError:
        raise SceneValidationError(f"Simple du centre inconnu : {name}", where)


def _color(braiding: Braiding, name: str, where: str) -> Obj:
    if name in braiding.cat.simples:
        return ((name,),)
    return _center_simple(braiding, name, where).obj


def _coordinates(values: list[str], basis: list[Morphism], conductor: int, where: str) -> list[Scalar]:
    if len(values) != len(basis):
        raise SceneValidationError(f"{len(values)} coordonnées pour un espace de dimension {len(basis)}.", where)
    try:
        return [parse_scalar(v, conductor) for v in values]
    except QinvException as exc:
        raise SceneValidationError(str(exc), where)


def build_net(braiding: Braiding, spec: NetFile) -> Net:
    cat = braiding.cat
    vertices = []
    for v in spec.vertices:
        legs = [Leg(leg.edge, _color(braiding, leg.color, v.name), leg.sign) for leg in v.legs]
        vector = None
        if v.vector is not None:
            word = word_of(cat, legs)
            basis = cat.hom_basis(UNIT_OBJ, word)
            vector = cat.from_flat(UNIT_OBJ, word, _coordinates(v.vector, basis, cat.conductor, v.name))
        vertices.append(NetVertex(v.name, legs, vector))
    for c in spec.crossings:
        over = _center_simple(braiding, c.over, c.name)
        under = _color(braiding, c.under, c.name)
        vertices.append(crossing_vertex(braiding, c.name, over, under, c.edges, c.positive))
    net = Net(vertices)
    validate_net(cat, net)
    return net


def evaluate_net_file(braiding: Braiding, spec: NetFile) -> list[NetValue]:
    """One value per choice of basis vectors of the free vertices."""
    cat = braiding.cat
    net = build_net(braiding, spec)
    free = net.free_vertices()
    bases = [cat.hom_basis(UNIT_OBJ, word_of(cat, v.legs)) for v in free]
    out = []
    for picked in product(*(range(len(b)) for b in bases)):
        vectors = {v.name: bases[k][i] for k, (v, i) in enumerate(zip(free, picked))}
        value = evaluate_net(cat, net, vectors)
        out.append(NetValue(choice={v.name: i for v, i in zip(free, picked)}, value=str(value)))
    logger.debug("%s: %d values", spec.name, len(out))
    return out


def _tile(evaluator: StripEvaluator, row: list[CenterObject], spec: TileSpec) -> Tile:
    if spec.tile == "braid":
        return Braid(spec.at)
    if spec.tile == "unbraid":
        return Unbraid(spec.at)
    if spec.tile == "twist":
        return Twist(spec.at)
    if spec.tile == "untwist":
        return Untwist(spec.at)
    center = evaluator.braiding.center
    where = f"coupon at {spec.at}"
    window = row[spec.at:spec.at + spec.width]
    if len(window) != spec.width:
        raise SceneValidationError(f"Boîte hors de la tranche ({spec.at}, largeur {spec.width}).", where)
    outputs = [_center_simple(evaluator.braiding, name, where) for name in spec.outputs] if spec.outputs else window
    src, tgt = row_obj(window), row_obj(outputs)
    if not spec.coordinates:
        if src != tgt:
            raise SceneValidationError("Une boîte sans coordonnées doit garder ses brins.", where)
        return Coupon(spec.at, spec.width, evaluator.cat.identity(src), tuple(outputs))
    basis = center.hom(center.tensor_all(list(window)), center.tensor_all(list(outputs)))
    values = _coordinates(spec.coordinates, basis, evaluator.cat.conductor, where)
    f = evaluator.cat.zero(src, tgt)
    for b, k in zip(basis, values):
        f = f + b.scale(k)
    return Coupon(spec.at, spec.width, f, tuple(outputs))


def evaluate_strip_file(evaluator: StripEvaluator, spec: StripFile) -> Scalar:
    """Trace closure of the stacked tiles."""
    bottom = [_center_simple(evaluator.braiding, name, "bottom") for name in spec.bottom]
    row = list(bottom)
    total = evaluator.cat.identity(row_obj(row))
    for t in spec.tiles:
        row, f = evaluator.apply(row, _tile(evaluator, row, t))
        total = f @ total
    return evaluator.close_morphism(bottom, row, total)
