"""
State sum of a skeleton with a knotted plexus.

Business rules:
- Sum over the G-colorings c (a simple of degree label(r) on every
  region r) of dim(c) |c|, times dim(C_1)^-B with B the number of balls.
- |c| contracts the node nets: every arc rim contributes its contraction
  vector, a matrix K indexed by the bases of its two end modules, every
  node the table of its net over the bases of its free vertices, every
  circle rim the trace of its monodromy rotation.
- Colorings are visited in enumeration order and summed in that order,
  whatever the number of workers.
"""

from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from itertools import product
from typing import Any, Optional

import sentry_sdk

from qinv.algebra.matrix import Mat
from qinv.algebra.scalar import Scalar
from qinv.center.objects import CenterObject
from qinv.exceptions import SceneValidationError
from qinv.graphs.net import MultiplicityModule, Net, evaluate_net
from qinv.manifolds.coloring import Coloring, coloring_dim, enumerate_gcolorings
from qinv.manifolds.nodes import StrandColors, circle_trace, contraction_vector, end_legs, node_net
from qinv.manifolds.scene import PlexusScene, validate_plexus
from qinv.services.engine import Engine

logger = logging.getLogger(__name__)


# =============================================================================
# RESULTS
# =============================================================================


@dataclass
class ColoringTerm:
    """One coloring of the sum.

    Attributes:
        coloring: simple of every region.
        dim: dim(c).
        value: |c|.
    """

    coloring: Coloring
    dim: Scalar
    value: Scalar

    def to_dict(self) -> dict[str, Any]:
        return {"coloring": dict(self.coloring), "dim": str(self.dim), "value": str(self.value)}


@dataclass
class StateSumResult:
    scene: str
    category: str
    value: Scalar
    balls: int
    neutral_dim: Scalar
    terms: list[ColoringTerm] = field(default_factory=list)

    def recompute(self) -> Scalar:
        """The value rebuilt from the ledger (needs the ledger)."""
        total = sum((t.dim * t.value for t in self.terms), Scalar.zero(self.value.conductor))
        return total * self.neutral_dim ** (-self.balls)

    def to_dict(self) -> dict[str, Any]:
        return {
            "kind": "state-sum",
            "scene": self.scene,
            "category": self.category,
            "value": str(self.value),
            "balls": self.balls,
            "terms": [t.to_dict() for t in self.terms],
        }


# =============================================================================
# ONE COLORING
# =============================================================================


def strand_colors(engine: Engine, scene: PlexusScene) -> StrandColors:
    """Center simple of every strand, checked against the strand degree."""
    colors: dict[str, CenterObject] = {}
    for name, strand in scene.strands.items():
        try:
            j = engine.simple(strand.color)
        except KeyError as exc:
            raise SceneValidationError(str(exc), f"strand {name}")
        if j.degree != strand.degree:
            raise SceneValidationError(
                f"{j.name} est de degré {j.degree}, le brin de degré {strand.degree}.", f"strand {name}"
            )
        colors[name] = j
    return StrandColors(engine.braiding, colors)


def _node_table(engine: Engine, net: Net) -> tuple[list[str], dict[tuple[int, ...], Scalar]]:
    """Nonzero values of a node net over the bases of its free vertices."""
    cat = engine.cat
    free = net.free_vertices()
    bases = [MultiplicityModule(cat, v.legs).basis() for v in free]
    table: dict[tuple[int, ...], Scalar] = {}
    for idx in product(*(range(len(b)) for b in bases)):
        vectors = {v.name: bases[k][i] for k, (v, i) in enumerate(zip(free, idx))}
        value = evaluate_net(cat, net, vectors)
        if not value.is_zero():
            table[idx] = value
    return [v.name for v in free], table


def coloring_value(engine: Engine, scene: PlexusScene, colors: StrandColors, c: Coloring) -> Scalar:
    """|c|: node tables contracted along the arc rims, times the circle traces."""
    cat = engine.cat
    zero = Scalar.zero(cat.conductor)

    circles = cat.one
    for rim in scene.circle_rims():
        circles = circles * circle_trace(scene, cat, colors, c, rim)
        if circles.is_zero():
            return zero

    arcs = scene.arc_rims()
    contractions: list[list[tuple[int, int, Scalar]]] = []
    for rim in arcs:
        k: Mat = contraction_vector(cat, end_legs(scene, cat, colors, c, rim, 0))
        rows, cols = k.shape
        pairs = [(i, j, k[i, j]) for i in range(rows) for j in range(cols) if not k[i, j].is_zero()]
        if not pairs:
            return zero
        contractions.append(pairs)

    slot = {rim.id: n for n, rim in enumerate(arcs)}
    tables = []
    for node in scene.nodes:
        net = node_net(scene, engine.braiding, colors, c, node)
        names, table = _node_table(engine, net)
        if not table:
            return zero
        ends = {v.id: (slot[v.rim], v.end) for v in node.vertices if v.rim is not None}
        tables.append(([ends[name] for name in names], table))

    total = zero
    for choice in product(*contractions):
        term = cat.one
        for _, _, kv in choice:
            term = term * kv
        for ends, table in tables:
            key = tuple(choice[s][end] for s, end in ends)
            value = table.get(key)
            if value is None:
                term = zero
                break
            term = term * value
        total = total + term
    return total * circles


# =============================================================================
# STATE SUM
# =============================================================================


def state_sum(
    engine: Engine,
    scene: PlexusScene,
    ledger: Optional[bool] = None,
    workers: Optional[int] = None,
) -> StateSumResult:
    """dim(C_1)^-B sum over G-colorings c of dim(c) |c|.

    Args:
        ledger: keep every coloring term (default from the run config).
        workers: threads evaluating colorings (default from the run config).

    Raises:
        SceneValidationError: invalid scene or strand colors.
    """
    cat = engine.cat
    validate_plexus(scene, engine.group)
    colors = strand_colors(engine, scene)
    ledger = engine.config.ledger if ledger is None else ledger
    workers = workers or engine.config.workers
    colorings = list(enumerate_gcolorings(scene, cat))

    def term(c: Coloring) -> ColoringTerm:
        return ColoringTerm(c, coloring_dim(scene, cat, c), coloring_value(engine, scene, colors, c))

    if workers > 1 and len(colorings) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            terms = list(pool.map(term, colorings))
    else:
        terms = [term(c) for c in colorings]

    total = Scalar.zero(cat.conductor)
    for t in terms:
        total = total + t.dim * t.value
    neutral = engine.neutral_dim
    value = total * neutral ** (-scene.balls)
    logger.debug("%s: %d colorings on %s", scene.name, len(colorings), cat.name)
    sentry_sdk.capture_message(f"State sum of {scene.name} over {cat.name}: {value}", level="info")
    return StateSumResult(scene.name, cat.name, value, scene.balls, neutral, terms if ledger else [])
