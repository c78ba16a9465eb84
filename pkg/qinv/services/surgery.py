"""
Surgery invariant of a framed link with a colored graph.

Business rules:
- col(L) is the set of maps lambda sending each link component i to a
  simple of J_{mu_i}, mu_i its meridian degree; it is enumerated component
  by component, simples in center order, the last component fastest.
- Each link component gets one identity coupon; components of the graph
  keep their own color and coupon count.
- tau = Delta^(-n-1) sum over lambda of (prod dim lambda(i)) F(L colored
  by lambda), with n the number of link components and Delta = dim(C_1).
- A category whose neutral center is anomalous is refused.
"""

from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from itertools import product
from typing import Any, Mapping, Optional

import sentry_sdk

from qinv.algebra.scalar import Scalar
from qinv.center.objects import CenterObject
from qinv.exceptions import SceneValidationError
from qinv.manifolds.scene import SurgeryScene, validate_surgery
from qinv.services.engine import Engine

logger = logging.getLogger(__name__)


@dataclass
class LambdaTerm:
    """One coloring of the link.

    Attributes:
        colors: simple of every link component, keyed by its first position.
        weight: product of their dimensions.
        value: F of the colored diagram.
    """

    colors: dict[int, str]
    weight: Scalar
    value: Scalar

    def to_dict(self) -> dict[str, Any]:
        return {
            "colors": {str(p): name for p, name in self.colors.items()},
            "weight": str(self.weight),
            "value": str(self.value),
        }


@dataclass
class SurgeryResult:
    scene: str
    category: str
    value: Scalar
    components: int
    delta: Scalar
    terms: list[LambdaTerm] = field(default_factory=list)

    def recompute(self) -> Scalar:
        total = sum((t.weight * t.value for t in self.terms), Scalar.zero(self.value.conductor))
        return total * self.delta ** (-self.components - 1)

    def to_dict(self) -> dict[str, Any]:
        return {
            "kind": "surgery",
            "scene": self.scene,
            "category": self.category,
            "value": str(self.value),
            "components": self.components,
            "delta": str(self.delta),
            "terms": [t.to_dict() for t in self.terms],
        }


def omega_colors(engine: Engine, scene: SurgeryScene) -> dict[int, CenterObject]:
    colors = {}
    for o in scene.omega:
        try:
            colors[o.position] = engine.simple(o.color)
        except KeyError as exc:
            raise SceneValidationError(str(exc), f"omega {o.position}")
    return colors


def colored_link_value(
    engine: Engine,
    scene: SurgeryScene,
    colors: Mapping[int, CenterObject],
) -> Scalar:
    """F of the diagram with component p0 colored colors[p0] (graph components included)."""
    coupons = {p0: 1 for p0 in scene.link_components()}
    coupons.update({o.position: o.coupons for o in scene.omega})
    return scene.closure().evaluate(engine.evaluator, colors, coupons)


def link_colorings(engine: Engine, scene: SurgeryScene) -> list[dict[int, CenterObject]]:
    """col(L), graph colors merged in."""
    fixed = omega_colors(engine, scene)
    starts = scene.link_components()
    choices = [engine.simples.of_degree(scene.degrees[p0]) for p0 in starts]
    out = []
    for picked in product(*choices):
        colors = dict(fixed)
        colors.update(zip(starts, picked))
        out.append(colors)
    return out


def surgery_invariant(
    engine: Engine,
    scene: SurgeryScene,
    ledger: Optional[bool] = None,
    workers: Optional[int] = None,
) -> SurgeryResult:
    """Delta^(-n-1) sum over col(L) of (prod dim lambda(i)) F(L, lambda).

    Raises:
        AnomalyError: Delta_+ != Delta_- on the neutral center.
        SceneValidationError: invalid diagram or graph colors.
    """
    cat, center = engine.cat, engine.simples.center
    validate_surgery(scene, engine.group)
    delta = engine.modular.delta
    ledger = engine.config.ledger if ledger is None else ledger
    workers = workers or engine.config.workers
    starts = scene.link_components()
    colorings = link_colorings(engine, scene)

    def term(colors: dict[int, CenterObject]) -> LambdaTerm:
        weight = cat.one
        for p0 in starts:
            weight = weight * center.dim(colors[p0])
        return LambdaTerm({p0: colors[p0].name for p0 in starts}, weight, colored_link_value(engine, scene, colors))

    if workers > 1 and len(colorings) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            terms = list(pool.map(term, colorings))
    else:
        terms = [term(colors) for colors in colorings]

    total = Scalar.zero(cat.conductor)
    for t in terms:
        total = total + t.weight * t.value
    value = total * delta ** (-len(starts) - 1)
    logger.debug("%s: %d colorings of %d components", scene.name, len(colorings), len(starts))
    sentry_sdk.capture_message(f"Surgery invariant of {scene.name} over {cat.name}: {value}", level="info")
    return SurgeryResult(scene.name, cat.name, value, len(starts), delta, terms if ledger else [])
