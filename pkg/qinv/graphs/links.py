"""
Framed links as braid closures, colored through the strip evaluator.

Business rules:
- A closure has `strands` positions; the word lists generators +k / -k
  (1-based) acting on positions k-1, k. +k is a braid tile, -k an unbraid.
- Components are the cycles of the braid permutation, each named by its
  smallest bottom position. Framing corrections (framing minus self-writhe)
  are twist or untwist tiles placed at the top of that position.
- Degrees flow with the strands: the strand moving right under a braid
  is conjugated by the degree it passes, the strand moving left under an
  unbraid by its inverse. The top degree of every position must equal its
  bottom degree.
- The conjugations met along a component, twists included, multiply to the
  image of its framed longitude, which must be 1. The collapse map
  phi_{g_m} ... phi_{g_1}(lambda) -> lambda then closes the component.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Mapping, Optional

from qinv.algebra.scalar import Scalar
from qinv.center.objects import CenterObject
from qinv.exceptions import SceneValidationError
from qinv.fusion.morphism import Morphism
from qinv.graphs.strip import Braid, Coupon, StripDiagram, StripEvaluator, Tile, Twist, Unbraid, Untwist

logger = logging.getLogger(__name__)


@dataclass
class BraidClosure:
    """Framed oriented link presented as the closure of a braid.

    Attributes:
        strands: number of positions.
        word: generators, +k for a positive crossing of positions k-1 and k.
        degrees: bottom degree of each position (meridian degrees).
        framings: framing of each component, keyed by its smallest position.
    """

    strands: int
    word: list[int]
    degrees: list[str]
    framings: dict[int, int] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if len(self.degrees) != self.strands:
            raise SceneValidationError("Un degré par brin est attendu.", "degrees")
        for g in self.word:
            if g == 0 or abs(g) >= self.strands:
                raise SceneValidationError(f"Générateur {g} hors de la tresse à {self.strands} brins.", "word")

    # =====================================================================
    # COMBINATORICS
    # =====================================================================

    def permutation(self) -> list[int]:
        """perm[p] = top position reached by the strand starting at bottom p."""
        at = list(range(self.strands))
        for g in self.word:
            k = abs(g)
            at[k - 1], at[k] = at[k], at[k - 1]
        perm = [0] * self.strands
        for position, strand in enumerate(at):
            perm[strand] = position
        return perm

    def components(self) -> list[list[int]]:
        perm = self.permutation()
        seen: set[int] = set()
        cycles = []
        for p in range(self.strands):
            if p in seen:
                continue
            cycle = []
            q = p
            while q not in seen:
                seen.add(q)
                cycle.append(q)
                q = perm[q]
            cycles.append(cycle)
        return cycles

    def component_of(self) -> list[int]:
        owner = [0] * self.strands
        for cycle in self.components():
            for p in cycle:
                owner[p] = cycle[0]
        return owner

    def self_writhe(self) -> dict[int, int]:
        owner = self.component_of()
        at = list(range(self.strands))
        writhe = {cycle[0]: 0 for cycle in self.components()}
        for g in self.word:
            k = abs(g)
            left, right = at[k - 1], at[k]
            if owner[left] == owner[right]:
                writhe[owner[left]] += 1 if g > 0 else -1
            at[k - 1], at[k] = right, left
        return writhe

    def corrections(self) -> dict[int, int]:
        writhe = self.self_writhe()
        return {p0: self.framings.get(p0, 0) - w for p0, w in writhe.items()}

    # =====================================================================
    # DEGREES
    # =====================================================================

    def histories(self, group) -> dict[int, list[str]]:
        """Conjugating elements met by the strand starting at each bottom position."""
        at = list(range(self.strands))
        deg = list(self.degrees)
        history: dict[int, list[str]] = {p: [] for p in range(self.strands)}
        for g in self.word:
            k = abs(g)
            left, right = at[k - 1], at[k]
            dl, dr = deg[k - 1], deg[k]
            if g > 0:
                history[left].append(dr)
                deg[k - 1], deg[k] = dr, group.conj(dl, dr)
            else:
                inv = group.inv(dl)
                history[right].append(inv)
                deg[k - 1], deg[k] = group.conj(dr, inv), dl
            at[k - 1], at[k] = right, left
        for position, d in enumerate(deg):
            if d != self.degrees[position]:
                raise SceneValidationError(
                    f"Le degré en haut de la position {position} ({d}) diffère du degré en bas.", "degrees"
                )
        return history

    def component_histories(self, group) -> dict[int, list[str]]:
        """Full chain of conjugations along each component, framing twists last."""
        strand_history = self.histories(group)
        corrections = self.corrections()
        chains = {}
        for cycle in self.components():
            p0 = cycle[0]
            chain: list[str] = []
            for p in cycle:
                chain.extend(strand_history[p])
            a = self.degrees[p0]
            step = a if corrections[p0] > 0 else group.inv(a)
            chain.extend([step] * abs(corrections[p0]))
            chains[p0] = chain
        return chains

    def check_longitudes(self, group) -> None:
        """Raises SceneValidationError when a framed longitude has nontrivial degree."""
        for p0, chain in self.component_histories(group).items():
            total = group.product(chain)
            if total != group.unit:
                raise SceneValidationError(
                    f"La longitude de la composante {p0} est de degré {total}, pas 1.", "longitude"
                )

    # =====================================================================
    # COLORED EVALUATION
    # =====================================================================

    def tiles(self) -> list[Tile]:
        out: list[Tile] = [Braid(g - 1) if g > 0 else Unbraid(-g - 1) for g in self.word]
        for p0, n in sorted(self.corrections().items()):
            out.extend([Twist(p0) if n > 0 else Untwist(p0)] * abs(n))
        return out

    def bottom_colors(self, evaluator: StripEvaluator, colors: Mapping[int, CenterObject]) -> list[CenterObject]:
        """Bottom color of every position, flowing each component color along its cycle."""
        group = evaluator.group
        strand_history = self.histories(group)
        row: list[Optional[CenterObject]] = [None] * self.strands
        for cycle in self.components():
            p0 = cycle[0]
            if p0 not in colors:
                raise SceneValidationError(f"Couleur manquante pour la composante {p0}.", "colors")
            current = colors[p0]
            if current.degree != self.degrees[p0]:
                raise SceneValidationError(
                    f"{current.name} est de degré {current.degree}, la composante {p0} de degré {self.degrees[p0]}.",
                    "colors",
                )
            for p in cycle:
                row[p] = current
                for g in strand_history[p]:
                    current = evaluator.crossing.phi(g, current)
        return row  # type: ignore[return-value]

    def collapse(self, evaluator: StripEvaluator, color: CenterObject, chain: list[str]) -> Morphism:
        """phi_{g_m}(... phi_{g_1}(color)) -> color, by phi_2 and functoriality."""
        crossing, group = evaluator.crossing, evaluator.group
        level = color
        f = evaluator.cat.identity(color.obj)
        h = group.unit
        for g in chain:
            before = crossing.phi(h, color)
            lifted = crossing.phi_morphism(g, f, level, before)
            f = crossing.phi_2(g, h, color) @ lifted
            level = crossing.phi(g, level)
            h = group.mul(h, g)
        if h != group.unit:
            raise SceneValidationError(f"Longitude de degré {h} pour {color.name}.", "longitude")
        return f

    def evaluate(
        self,
        evaluator: StripEvaluator,
        colors: Mapping[int, CenterObject],
        coupons: Optional[Mapping[int, int]] = None,
    ) -> Scalar:
        """Value of the closure with component p0 colored by colors[p0].

        coupons[p0] identity coupons are placed at the top of component p0.
        """
        chains = self.component_histories(evaluator.group)
        bottom = self.bottom_colors(evaluator, colors)
        closing = {p0: self.collapse(evaluator, colors[p0], chain) for p0, chain in chains.items()}
        diagram = StripDiagram(bottom, self.tiles())
        if coupons and any(coupons.values()):
            top, _ = evaluator.evaluate(diagram)
            boxes: list[Tile] = [
                Coupon(p, 1, evaluator.cat.identity(top[p].obj), (top[p],))
                for p, n in sorted(coupons.items())
                for _ in range(n)
            ]
            diagram = diagram.then(StripDiagram(top, boxes))
        return evaluator.close(diagram, closing)


def split_union(first: BraidClosure, second: BraidClosure) -> BraidClosure:
    """Braids side by side; components of second are shifted by first.strands."""
    shift = first.strands
    word = list(first.word) + [g + shift if g > 0 else g - shift for g in second.word]
    framings = dict(first.framings)
    framings.update({p + shift: n for p, n in second.framings.items()})
    return BraidClosure(shift + second.strands, word, list(first.degrees) + list(second.degrees), framings)
