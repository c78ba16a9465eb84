"""
One-vertex triangulations and their dual skeletons.

Business rules:
- A triangulation is a list of ordered tetrahedra (vertices 0 < 1 < 2 < 3)
  with an orientation sign each, and a pairing of their faces. Face i of a
  tetrahedron omits vertex i; glued faces are identified by the map
  preserving the vertex order, and carry opposite induced orientations
  sign * (-1)^i.
- A G-coloring gives every edge class an element of G, with
  g(uv) g(vw) = g(uw) on every face u < v < w. The cocycle sum of a
  coloring is the product over tetrahedra of omega(g01, g12, g23)^sign.
- The dual skeleton has one region per edge class (a disk labeled by the
  color of the edge), one arc rim per glued face pair (end 0 on the first
  tetrahedron), one node per tetrahedron, and one ball per vertex class.
  The germs of a rim follow the boundary of its face, counterclockwise as
  seen from the tetrahedron at end 0; an edge met along its direction has
  sign +1.
- The bundled L(p,1) has p tetrahedra [x | x^j | x], j = 1..p: the first
  folds its faces 0 and 3 together, the last its faces 1 and 2, and
  tetrahedron j meets j+1 along faces (1, 0) and (2, 3).
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product
from typing import Callable, Optional

from qinv.algebra.scalar import Scalar
from qinv.exceptions import SceneValidationError
from qinv.fusion.group import FiniteGroup
from qinv.manifolds.scene import GermSpec, NodeSpec, PlexusScene, RegionSpec, RimSpec, VertexSpec

logger = logging.getLogger(__name__)

Cocycle = Callable[[str, str, str], Scalar]
Face = tuple[int, int]
LocalEdge = tuple[int, int, int]

EDGES = list(combinations(range(4), 2))


def face_vertices(i: int) -> tuple[int, ...]:
    return tuple(v for v in range(4) if v != i)


@dataclass(frozen=True)
class Gluing:
    """Face `first[1]` of tetrahedron `first[0]` glued to face `second[1]` of `second[0]`."""

    first: Face
    second: Face

    def vertex_map(self) -> dict[int, int]:
        return dict(zip(face_vertices(self.first[1]), face_vertices(self.second[1])))


@dataclass
class Triangulation:
    name: str
    signs: list[int]
    gluings: list[Gluing] = field(default_factory=list)

    @property
    def size(self) -> int:
        return len(self.signs)

    def mirrored(self) -> "Triangulation":
        return Triangulation(f"-{self.name}", [-s for s in self.signs], list(self.gluings))

    def orientation(self, face: Face) -> int:
        t, i = face
        return self.signs[t] * (-1) ** i

    # =====================================================================
    # CELLS
    # =====================================================================

    def _union(self, items: list, pairs: list[tuple]) -> dict:
        parent = {x: x for x in items}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for a, b in pairs:
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[rb] = ra
        return {x: find(x) for x in items}

    def edge_classes(self) -> dict[LocalEdge, str]:
        """E0, E1, ... in order of first appearance, tetrahedra then edges 01, 02, ..., 23."""
        items = [(t, a, b) for t in range(self.size) for a, b in EDGES]
        pairs = []
        for g in self.gluings:
            m = g.vertex_map()
            for a, b in combinations(face_vertices(g.first[1]), 2):
                pairs.append(((g.first[0], a, b), (g.second[0], m[a], m[b])))
        roots = self._union(items, pairs)
        names: dict = {}
        return {x: names.setdefault(roots[x], f"E{len(names)}") for x in items}

    def vertex_count(self) -> int:
        items = [(t, v) for t in range(self.size) for v in range(4)]
        pairs = []
        for g in self.gluings:
            pairs.extend(((g.first[0], a), (g.second[0], b)) for a, b in g.vertex_map().items())
        return len(set(self._union(items, pairs).values()))

    def euler_characteristic(self) -> int:
        return self.vertex_count() - len(set(self.edge_classes().values())) + len(self.gluings) - self.size

    def check(self) -> None:
        """Every face glued once with opposite orientations, and a closed 3-manifold count.

        Raises:
            SceneValidationError: naming the faulty face or count.
        """
        seen: set[Face] = set()
        for g in self.gluings:
            for face in (g.first, g.second):
                if face in seen:
                    raise SceneValidationError(f"Face {face} recollée deux fois.", self.name)
                seen.add(face)
            if self.orientation(g.first) != -self.orientation(g.second):
                raise SceneValidationError(f"Recollement {g.first} ~ {g.second} non orienté.", self.name)
        if len(seen) != 4 * self.size:
            raise SceneValidationError("Faces libres : la triangulation n'est pas fermée.", self.name)
        if self.euler_characteristic() != 0:
            raise SceneValidationError(f"Caractéristique d'Euler {self.euler_characteristic()} au lieu de 0.", self.name)

    # =====================================================================
    # COLORINGS
    # =====================================================================

    def flat_colorings(self, group: FiniteGroup) -> list[dict[str, str]]:
        classes = self.edge_classes()
        names = sorted(set(classes.values()), key=lambda s: int(s[1:]))
        out = []
        for picked in product(group.elements, repeat=len(names)):
            color = dict(zip(names, picked))
            if all(
                group.mul(color[classes[(t, u, v)]], color[classes[(t, v, w)]]) == color[classes[(t, u, w)]]
                for t in range(self.size)
                for i in range(4)
                for u, v, w in [face_vertices(i)]
            ):
                out.append(color)
        return out

    def cocycle_sum(self, omega: Cocycle, color: dict[str, str]) -> Scalar:
        classes = self.edge_classes()
        total: Optional[Scalar] = None
        for t, sign in enumerate(self.signs):
            g = [color[classes[(t, a, b)]] for a, b in ((0, 1), (1, 2), (2, 3))]
            w = omega(*g)
            w = w if sign > 0 else w.inverse()
            total = w if total is None else total * w
        if total is None:
            raise SceneValidationError("Triangulation vide.", self.name)
        return total

    def dijkgraaf_witten(self, group: FiniteGroup, omega: Cocycle) -> Scalar:
        """|G|^-V times the sum of the cocycle sums of all flat colorings."""
        colorings = self.flat_colorings(group)
        total = sum((self.cocycle_sum(omega, c) for c in colorings[1:]), self.cocycle_sum(omega, colorings[0]))
        return total * Fraction(1, len(group) ** self.vertex_count())


# =============================================================================
# LENS SPACES
# =============================================================================


def lens_triangulation(p: int) -> Triangulation:
    if p < 2:
        raise SceneValidationError(f"L({p},1) n'est pas un espace lenticulaire.", "triangulation")
    gluings = [Gluing((0, 0), (0, 3))]
    for j in range(p - 1):
        gluings.append(Gluing((j, 1), (j + 1, 0)))
        gluings.append(Gluing((j, 2), (j + 1, 3)))
    gluings.append(Gluing((p - 1, 2), (p - 1, 1)))
    return Triangulation(f"L({p},1)", [1] * p, gluings)


def holonomy_coloring(tri: Triangulation, group: FiniteGroup, g: str) -> dict[str, str]:
    """The flat coloring whose edge 01 of the first tetrahedron is colored g."""
    generator = tri.edge_classes()[(0, 0, 1)]
    found = [c for c in tri.flat_colorings(group) if c[generator] == g]
    if len(found) != 1:
        raise SceneValidationError(f"{len(found)} coloriages plats d'holonomie {g}.", tri.name)
    return found[0]


# =============================================================================
# DUAL SKELETON
# =============================================================================


def _boundary(face: tuple[int, ...], orientation: int) -> list[tuple[tuple[int, int], int]]:
    u, v, w = face
    if orientation > 0:
        return [((u, v), 1), ((v, w), 1), ((u, w), -1)]
    return [((u, v), -1), ((u, w), 1), ((v, w), -1)]


def dual_skeleton(tri: Triangulation, group: FiniteGroup, color: dict[str, str], name: Optional[str] = None) -> PlexusScene:
    tri.check()
    classes = tri.edge_classes()
    regions = [RegionSpec(id=e, chi=1, label=color[e]) for e in sorted(set(classes.values()), key=lambda s: int(s[1:]))]
    rims = []
    legs: dict[Face, tuple[str, int, list[tuple[int, int]]]] = {}
    for n, g in enumerate(tri.gluings):
        rid = f"F{n}"
        t, i = g.first
        cycle = _boundary(face_vertices(i), tri.orientation(g.first))
        rims.append(RimSpec(id=rid, germs=[GermSpec(region=classes[(t, *e)], sign=s) for e, s in cycle]))
        m = g.vertex_map()
        legs[g.first] = (rid, 0, [e for e, _ in cycle])
        legs[g.second] = (rid, 1, [tuple(sorted((m[a], m[b]))) for (a, b), _ in reversed(cycle)])
    nodes = []
    for t in range(tri.size):
        vertices, ends = [], {}
        for i in range(4):
            rid, end, local = legs[(t, i)]
            vertices.append(VertexSpec(id=f"f{i}", rim=rid, end=end))
            for k, e in enumerate(local):
                ends.setdefault(e, []).append((f"f{i}", k))
        arcs = [(a, i, b, j) for (a, i), (b, j) in (ends[e] for e in EDGES)]
        nodes.append(NodeSpec(id=f"T{t}", vertices=vertices, arcs=arcs))
    logger.debug("%s: %d regions, %d rims, %d nodes", tri.name, len(regions), len(rims), len(nodes))
    return PlexusScene(
        name=name or f"dual_{tri.name}",
        description=f"{tri.name} : squelette dual d'une triangulation à {tri.size} tétraèdres",
        balls=tri.vertex_count(),
        regions=regions,
        rims=rims,
        nodes=nodes,
    )


def lens_dual(group: FiniteGroup, p: int, g: str, mirror: bool = False) -> PlexusScene:
    tri = lens_triangulation(p)
    tri = tri.mirrored() if mirror else tri
    return dual_skeleton(tri, group, holonomy_coloring(tri, group, g), name="lens_dual")
