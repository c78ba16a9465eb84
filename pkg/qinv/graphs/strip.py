"""
Colored G-graphs in the strip, presented as a stack of slices.

Business rules:
- A slice is a row of strands colored by center objects; a tile acts on a
  window of adjacent strands and leaves the others alone (identity on the
  left and right of the window).
- braid at k: (A, B) -> (B, T) by (id_B psi^-1) tau_{A,B}, where by default
  T = phi_{|B|}(A) and psi = id.
- unbraid at k: (X, A) -> (B, X) by tau_{B,X}^-1 (id_X psi), where by
  default B = phi_{|X|^-1}(A) and psi = phi_2(|X|, |X|^-1)_A^-1.
- twist at k: theta_A, A -> phi_{|A|}(A); untwist is its inverse composed
  with phi_2(a, a^-1)_A^-1.
- coupon at k: a center morphism from `width` strands to a list of outputs.
- Stacking is composition; a closed diagram evaluates to the trace of the
  composite followed by the closing maps.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Optional, Sequence, Union

from qinv.algebra.scalar import Scalar
from qinv.center.braiding import Braiding
from qinv.center.objects import CenterObject
from qinv.exceptions import CompositionError
from qinv.fusion.morphism import Morphism, Obj, obj_product

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Braid:
    k: int
    target: Optional[CenterObject] = None
    psi: Optional[Morphism] = None


@dataclass(frozen=True)
class Unbraid:
    k: int
    source: Optional[CenterObject] = None
    psi: Optional[Morphism] = None


@dataclass(frozen=True)
class Twist:
    k: int


@dataclass(frozen=True)
class Untwist:
    k: int


@dataclass(frozen=True)
class Coupon:
    k: int
    width: int
    morphism: Morphism
    outputs: tuple[CenterObject, ...]


Tile = Union[Braid, Unbraid, Twist, Untwist, Coupon]


def row_obj(row: Sequence[CenterObject]) -> Obj:
    return obj_product(*(x.obj for x in row))


@dataclass
class StripDiagram:
    """Bottom row plus tiles applied from bottom to top.

    Attributes:
        bottom: strand colors at the bottom, left to right.
        tiles: tiles in order of application.
    """

    bottom: list[CenterObject]
    tiles: list[Tile] = field(default_factory=list)

    def then(self, other: "StripDiagram") -> "StripDiagram":
        """Stack other on top; its bottom must be the objects this diagram ends on."""
        return StripDiagram(list(self.bottom), self.tiles + other.tiles)


class StripEvaluator:
    """Tile morphisms and diagram evaluation over a G-braiding."""

    def __init__(self, braiding: Braiding):
        self.braiding = braiding
        self.crossing = braiding.crossing
        self.cat = braiding.cat
        self.group = braiding.cat.group

    # =====================================================================
    # TILES
    # =====================================================================

    def braid(self, a: CenterObject, b: CenterObject, target=None, psi=None) -> tuple[list[CenterObject], Morphism]:
        tau = self.braiding.braid(a, b)
        if psi is None:
            return [b, self.crossing.phi(b.degree, a)], tau
        if target is None:
            raise CompositionError("Tresse avec psi mais sans objet cible.", "braid")
        return [b, target], self.cat.id_tensor(b.obj, psi.inverse()) @ tau

    def unbraid(self, x: CenterObject, a: CenterObject, source=None, psi=None) -> tuple[list[CenterObject], Morphism]:
        cat = self.cat
        if psi is None:
            xinv = self.group.inv(x.degree)
            source = self.crossing.phi(xinv, a)
            psi = self.crossing.phi_2(x.degree, xinv, a).inverse()
        elif source is None:
            raise CompositionError("Détresse avec psi mais sans objet source.", "unbraid")
        tau = self.braiding.tau(source, x.obj, x.degree)
        return [source, x], tau.inverse() @ cat.id_tensor(x.obj, psi)

    def twist(self, a: CenterObject) -> tuple[list[CenterObject], Morphism]:
        return [self.crossing.phi(a.degree, a)], self.braiding.twist(a)

    def untwist(self, a: CenterObject) -> tuple[list[CenterObject], Morphism]:
        ainv = self.group.inv(a.degree)
        b = self.crossing.phi(ainv, a)
        psi = self.crossing.phi_2(a.degree, ainv, a).inverse()
        return [b], self.braiding.twist(b).inverse() @ psi

    def apply(self, row: list[CenterObject], tile: Tile) -> tuple[list[CenterObject], Morphism]:
        """Objects after the tile, and the tile morphism on the whole row."""
        k = tile.k
        width = tile.width if isinstance(tile, Coupon) else (2 if isinstance(tile, (Braid, Unbraid)) else 1)
        if k < 0 or k + width > len(row):
            raise CompositionError(f"Tuile hors de la tranche ({k}, largeur {width}).", f"tile {tile}")
        window = row[k:k + width]
        if isinstance(tile, Braid):
            out, f = self.braid(window[0], window[1], tile.target, tile.psi)
        elif isinstance(tile, Unbraid):
            out, f = self.unbraid(window[0], window[1], tile.source, tile.psi)
        elif isinstance(tile, Twist):
            out, f = self.twist(window[0])
        elif isinstance(tile, Untwist):
            out, f = self.untwist(window[0])
        else:
            if tile.morphism.src != row_obj(window) or tile.morphism.tgt != row_obj(tile.outputs):
                raise CompositionError("La boîte ne s'accorde pas avec ses brins.", f"coupon at {k}")
            out, f = list(tile.outputs), tile.morphism
        left, right = row_obj(row[:k]), row_obj(row[k + width:])
        return row[:k] + out + row[k + width:], self.cat.id_tensor(left, f, right)

    # =====================================================================
    # DIAGRAMS
    # =====================================================================

    def evaluate(self, diagram: StripDiagram) -> tuple[list[CenterObject], Morphism]:
        row = list(diagram.bottom)
        total = self.cat.identity(row_obj(row))
        for tile in diagram.tiles:
            row, f = self.apply(row, tile)
            total = f @ total
        return row, total

    def close(self, diagram: StripDiagram, closing: Optional[dict[int, Morphism]] = None) -> Scalar:
        """Trace of the diagram followed by closing maps top[k] -> bottom[k].

        Positions without a closing map must end on the object they started with.
        """
        top, f = self.evaluate(diagram)
        return self.close_morphism(diagram.bottom, top, f, closing)

    def close_morphism(
        self,
        bottom: Sequence[CenterObject],
        top: Sequence[CenterObject],
        f: Morphism,
        closing: Optional[dict[int, Morphism]] = None,
    ) -> Scalar:
        closing = closing or {}
        if len(top) != len(bottom):
            raise CompositionError("Le diagramme ne se referme pas : nombre de brins différent.", "closure")
        maps = []
        for k, (t, b) in enumerate(zip(top, bottom)):
            if k in closing:
                g = closing[k]
                if g.src != t.obj or g.tgt != b.obj:
                    raise CompositionError(f"Application de fermeture mal typée en {k}.", "closure")
                maps.append(g)
            elif t is b:
                maps.append(self.cat.identity(b.obj))
            else:
                raise CompositionError(f"Le brin {k} ne revient pas sur {b.name}.", "closure")
        closing_map = self.cat.tensor_all(maps) if maps else self.cat.identity(f.tgt)
        return self.cat.trace(closing_map @ f)
