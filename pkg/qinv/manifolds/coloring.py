"""G-colorings of a plexus scene."""

from __future__ import annotations

from itertools import product
from math import prod
from typing import Iterator

from qinv.algebra.scalar import Scalar
from qinv.fusion.category import FusionCategory
from qinv.manifolds.scene import PlexusScene

Coloring = dict[str, str]


def enumerate_gcolorings(scene: PlexusScene, cat: FusionCategory) -> Iterator[Coloring]:
    """Every c with c(r) a simple of degree label(r).

    Regions in file order, simples in label order; the last region varies fastest.
    """
    ids = [r.id for r in scene.regions]
    choices = [cat.simples_of_degree(r.label) for r in scene.regions]
    for picked in product(*choices):
        yield dict(zip(ids, picked))


def coloring_count(scene: PlexusScene, cat: FusionCategory) -> int:
    return prod(len(cat.simples_of_degree(r.label)) for r in scene.regions)


def coloring_dim(scene: PlexusScene, cat: FusionCategory, c: Coloring) -> Scalar:
    """dim(c) = product over regions of dim(c(r)) ** chi(r)."""
    total = cat.one
    for r in scene.regions:
        if r.chi:
            total = total * cat.dim(c[r.id]) ** r.chi
    return total
