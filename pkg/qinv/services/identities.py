"""
Runtime identities between the two invariants.

Business rules:
- Torus expansion: the surgery sum of a diagram equals the sum over the
  same colorings lambda of prod(Delta^-1 dim lambda(i)) times the invariant
  of S3 with the whole diagram as a colored graph, term by term.
- Colored circle: the state sum of S3 with a circle colored J equals
  dim(C_1)^-1 F(circle colored J) = dim(C_1)^-1 dim(J).
- Matched presentations of one manifold give one value on both sides, with
  or without a colored circle drawn in a ball.
- A lens space with a pointed category has as state sum the cocycle sum
  of its holonomy over a one-vertex triangulation.
Any mismatch raises IdentityFailure with the differing terms.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Callable, Optional

import sentry_sdk

from qinv.algebra.scalar import Scalar
from qinv.exceptions import IdentityFailure
from qinv.fusion.group import FiniteGroup
from qinv.manifolds.library import (
    add_circle_plexus,
    add_circle_surgery,
    colored_matched_scenes,
    matched_scenes,
    s3_sphere,
)
from qinv.manifolds.scene import OmegaSpec, PlexusScene, SurgeryScene
from qinv.manifolds.triangulation import holonomy_coloring, lens_triangulation
from qinv.services.engine import Engine
from qinv.services.state_sum import state_sum
from qinv.services.surgery import colored_link_value, surgery_invariant

logger = logging.getLogger(__name__)

Cocycle = Callable[[str, str, str], Scalar]


@dataclass
class IdentityReport:
    """Names of the identities checked, with one line per instance."""

    category: str
    checked: list[str] = field(default_factory=list)

    def add(self, line: str) -> None:
        self.checked.append(line)


def _fail(name: str, lhs: Scalar, rhs: Scalar, terms: Optional[list[str]] = None) -> None:
    sentry_sdk.capture_message(f"Identity failed: {name}", level="warning")
    raise IdentityFailure(name, str(lhs), str(rhs), terms or [])


# =============================================================================
# TORUS EXPANSION
# =============================================================================


def as_graph(scene: SurgeryScene, colors: dict[int, str]) -> SurgeryScene:
    """The diagram in S3, every link component turned into a graph component."""
    out = scene.model_copy(deep=True)
    out.omega.extend(OmegaSpec(position=p0, color=name) for p0, name in colors.items())
    out.name = f"{scene.name}@S3"
    return out


def check_torus_expansion(engine: Engine, scene: SurgeryScene) -> Scalar:
    """Rebuild the surgery invariant from the invariants of S3 with colored graphs."""
    result = surgery_invariant(engine, scene, ledger=True, workers=1)
    delta = result.delta
    total = Scalar.zero(engine.cat.conductor)
    bad = []
    for t in result.terms:
        graph = surgery_invariant(engine, as_graph(scene, t.colors), ledger=False, workers=1)
        weight = engine.cat.one
        for name in t.colors.values():
            weight = weight * engine.simples.center.dim(engine.simple(name)) / delta
        term = weight * graph.value
        expected = t.weight * t.value * delta ** (-result.components - 1)
        if term != expected:
            bad.append(f"{t.colors}: {term} != {expected}")
        total = total + term
    if bad or total != result.value:
        _fail(f"torus expansion of {scene.name}", total, result.value, bad)
    return total


# =============================================================================
# COLORED CIRCLE IN S3
# =============================================================================


def check_colored_circle(engine: Engine, color: str) -> Scalar:
    """state_sum(S3 with a circle colored J) = dim(C_1)^-1 F(circle) = dim(C_1)^-1 dim(J)."""
    j = engine.simple(color)
    group = engine.group
    plexus = add_circle_plexus(s3_sphere(group), group, "S", j.name, j.degree)
    lhs = state_sum(engine, plexus, ledger=False, workers=1).value
    empty = SurgeryScene(name="s3_empty", strands=0, degrees=[])
    graph = add_circle_surgery(empty, j.name, j.degree)
    f = colored_link_value(engine, graph, {graph.omega[0].position: j})
    rhs = f / engine.neutral_dim
    if lhs != rhs:
        _fail(f"colored circle {color}", lhs, rhs)
    dim = engine.simples.center.dim(j)
    if f != dim:
        _fail(f"F(circle {color}) = dim", f, dim)
    return lhs


# =============================================================================
# MATCHED PRESENTATIONS
# =============================================================================


@dataclass
class Comparison:
    """Values of every presentation of one (manifold, structure)."""

    name: str
    values: list[tuple[str, str, Scalar]] = field(default_factory=list)

    @property
    def equal(self) -> bool:
        return len({v for _, _, v in self.values}) <= 1

    def add(self, kind: str, scene: str, value: Scalar) -> None:
        self.values.append((kind, scene, value))


def compare_presentations(
    engine: Engine,
    name: str,
    plexus: list[PlexusScene],
    surgery: list[SurgeryScene],
    workers: Optional[int] = None,
) -> Comparison:
    comparison = Comparison(name)
    for scene in plexus:
        comparison.add("state-sum", scene.name, state_sum(engine, scene, ledger=False, workers=workers).value)
    for scene in surgery:
        comparison.add("surgery", scene.name, surgery_invariant(engine, scene, ledger=False, workers=workers).value)
    return comparison


def check_matched_scenes(engine: Engine, manifolds: Optional[list[str]] = None) -> list[Comparison]:
    """Both presentations of every bundled (manifold, structure) agree."""
    out = []
    for manifold, g, plexus, surgery in matched_scenes(engine.group):
        if manifolds and manifold not in manifolds:
            continue
        comparison = compare_presentations(engine, f"{manifold}:{g}", plexus, surgery)
        if not comparison.equal:
            first = comparison.values[0][2]
            lines = [f"{kind} {scene}: {value}" for kind, scene, value in comparison.values]
            _fail(f"presentations of {manifold} with {g}", first, comparison.values[-1][2], lines)
        out.append(comparison)
    return out


def check_colored_presentations(
    engine: Engine, manifolds: Optional[list[str]] = None, colors: Optional[list[str]] = None
) -> list[Comparison]:
    """Both presentations still agree once a colored circle is drawn in a ball of each manifold."""
    chosen = {j.name: j.degree for j in engine.simples.all() if colors is None or j.name in colors}
    out = []
    for manifold, g, color, plexus, surgery in colored_matched_scenes(engine.group, chosen):
        if manifolds and manifold not in manifolds:
            continue
        comparison = compare_presentations(engine, f"{manifold}:{g}+{color}", plexus, surgery)
        if not comparison.equal:
            lines = [f"{kind} {scene}: {value}" for kind, scene, value in comparison.values]
            _fail(
                f"presentations of {manifold} with {g} and a circle {color}",
                comparison.values[0][2],
                comparison.values[-1][2],
                lines,
            )
        out.append(comparison)
    return out


# =============================================================================
# COCYCLE ORACLE
# =============================================================================


def lens_cocycle_phase(group: FiniteGroup, omega: Cocycle, a: str, p: int) -> Scalar:
    """Phase of L(p,1) with holonomy a in the twisted theory of omega.

    The cocycle sum of the flat coloring of holonomy a over the bundled
    triangulation, oriented as the bundled skeletons (its tetrahedra
    counted with sign -1); a^p must be 1.
    """
    if group.power(a, p) != group.unit:
        raise ValueError(f"{a} n'est pas d'ordre divisant {p}.")
    tri = lens_triangulation(p).mirrored()
    return tri.cocycle_sum(omega, holonomy_coloring(tri, group, a))


# =============================================================================
# ALL CHECKS
# =============================================================================


def run_identities(engine: Engine, manifolds: Optional[list[str]] = None) -> IdentityReport:
    """Every identity above on the bundled scenes of the engine's group."""
    report = IdentityReport(engine.cat.name)
    for j in engine.simples.all():
        check_colored_circle(engine, j.name)
    report.add(f"colored circle: {len(engine.simples.all())} colors")
    for manifold, g, _, surgery in matched_scenes(engine.group):
        if manifolds and manifold not in manifolds:
            continue
        for scene in surgery:
            check_torus_expansion(engine, scene)
    report.add("torus expansion: ok")
    colored = check_colored_presentations(engine, manifolds)
    report.add(f"colored presentations: {len(colored)} cases")
    comparisons = check_matched_scenes(engine, manifolds)
    report.add(f"presentations: {len(comparisons)} structures")
    sentry_sdk.capture_message(f"Identities passed on {engine.cat.name}", level="info")
    return report
