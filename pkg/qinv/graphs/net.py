"""
Knotted nets in the plane and the sphere, evaluated by contraction.

Business rules:
- A vertex is a cyclic list of legs. A leg ends an edge; it carries the
  object X of the edge and a sign: +1 reads X, -1 reads X*. The multiplicity
  module of a vertex read from base leg k is Hom(1, L_k ... L_{k-1}).
- Rotating the base by one leg is the cone isomorphism
  f -> (ev_{L_0} id)(id_{L_0*} f id_{L_0}) coev~_{L_0}; n rotations of an
  n-valent vertex give the identity.
- An edge joins two legs with the same object and opposite signs. Free
  vertices receive their vector at evaluation time; coupons and crossings
  carry a fixed vector obtained by bending the inputs of a morphism up.
- Evaluation merges vertices along edges, then closes adjacent leg pairs
  with ev (X* X) or ev~ (X X*). A rotation system that leaves a loop which
  never becomes adjacent is not planar and is rejected.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import TYPE_CHECKING, Iterable, Mapping, Optional

from qinv.algebra.scalar import Scalar
from qinv.exceptions import SceneValidationError
from qinv.fusion.category import FusionCategory
from qinv.fusion.morphism import UNIT_OBJ, Morphism, Obj, obj_product

if TYPE_CHECKING:
    from qinv.center.braiding import Braiding
    from qinv.center.objects import CenterObject

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Leg:
    edge: str
    obj: Obj
    sign: int = 1

    def letter(self, cat: FusionCategory) -> Obj:
        return self.obj if self.sign > 0 else cat.dual_obj(self.obj)

    def flipped(self) -> "Leg":
        return Leg(self.edge, self.obj, -self.sign)


@dataclass
class NetVertex:
    """A vertex of a net.

    Attributes:
        name: unique within the net.
        legs: incident legs in cyclic order, base leg first.
        vector: fixed vector in Hom(1, word of legs), or None for a free vertex.
    """

    name: str
    legs: list[Leg]
    vector: Optional[Morphism] = None

    @property
    def is_free(self) -> bool:
        return self.vector is None


def word_of(cat: FusionCategory, legs: Iterable[Leg]) -> Obj:
    return obj_product(*(leg.letter(cat) for leg in legs))


# =====================================================================
# MULTIPLICITY MODULES
# =====================================================================


class MultiplicityModule:
    """Hom(1, L_0 ... L_{n-1}) for a cyclic list of legs, read from a base."""

    def __init__(self, cat: FusionCategory, legs: list[Leg], base: int = 0):
        self.cat = cat
        self.legs = list(legs)
        self.base = base % len(legs) if legs else 0

    @property
    def ordered(self) -> list[Leg]:
        return self.legs[self.base:] + self.legs[: self.base]

    @property
    def word(self) -> Obj:
        return word_of(self.cat, self.ordered)

    def basis(self) -> list[Morphism]:
        return self.cat.hom_basis(UNIT_OBJ, self.word)

    @property
    def dim(self) -> int:
        return len(self.basis())

    def rotate(self, vec: Morphism, steps: int = 1) -> Morphism:
        """Move `steps` legs from the front of the word of vec to its end."""
        return rotate(self.cat, self.ordered, vec, steps)

    def rotation_matrix(self, steps: int = 1) -> list[list[Scalar]]:
        """Matrix of rotating by `steps` in the basis of this module, columns = images."""
        basis = self.basis()
        target = MultiplicityModule(self.cat, self.legs, self.base + steps)
        if target.word != self.word:
            raise SceneValidationError("La rotation ne préserve pas le mot du module.", "rotation")
        images = [self.rotate(b, steps).flatten() for b in basis]
        return [[images[j][i] for j in range(len(basis))] for i in range(len(basis))]


def rotate(cat: FusionCategory, legs: list[Leg], vec: Morphism, steps: int = 1) -> Morphism:
    n = len(legs)
    if n == 0:
        return vec
    current = list(legs)
    for _ in range(steps % n):
        head = current[0].letter(cat)
        rest = word_of(cat, current[1:])
        hd = cat.dual_obj(head)
        wrapped = cat.id_tensor(hd, vec, head)
        closed = cat.tensor(cat.ev(head), cat.identity(obj_product(rest, head)))
        vec = closed @ wrapped @ cat.coevt(head)
        current = current[1:] + current[:1]
    return vec


def nested_coev(cat: FusionCategory, objs: list[Obj]) -> Morphism:
    """1 -> X_1 ... X_k X_k* ... X_1*, letter by letter."""
    result = cat.identity(UNIT_OBJ)
    left: Obj = UNIT_OBJ
    right: Obj = UNIT_OBJ
    for x in objs:
        result = cat.id_tensor(left, cat.coev(x), right) @ result
        left = obj_product(left, x)
        right = obj_product(cat.dual_obj(x), right)
    return result


def morphism_vertex(
    cat: FusionCategory,
    name: str,
    f: Morphism,
    outputs: list[tuple[str, Obj]],
    inputs: list[tuple[str, Obj]],
) -> NetVertex:
    """Vertex whose vector is f with its inputs bent up to the right.

    Legs: outputs left to right with sign +1, then inputs right to left
    with sign -1.
    """
    if obj_product(*(o for _, o in outputs)) != f.tgt or obj_product(*(o for _, o in inputs)) != f.src:
        raise SceneValidationError(f"Les brins de {name} ne correspondent pas au morphisme.", name)
    coev = nested_coev(cat, [o for _, o in inputs])
    ins_dual = obj_product(*(cat.dual_obj(o) for _, o in reversed(inputs)))
    vector = cat.tensor(f, cat.identity(ins_dual)) @ coev
    legs = [Leg(e, o, 1) for e, o in outputs] + [Leg(e, o, -1) for e, o in reversed(inputs)]
    return NetVertex(name, legs, vector)


# =====================================================================
# NETS
# =====================================================================


@dataclass
class Net:
    vertices: list[NetVertex]
    ambient: str = "sphere"
    _ends: dict[str, list[tuple[int, int]]] = field(default_factory=dict, init=False, repr=False)

    def __post_init__(self) -> None:
        for vi, v in enumerate(self.vertices):
            for li, leg in enumerate(v.legs):
                self._ends.setdefault(leg.edge, []).append((vi, li))

    def vertex(self, name: str) -> NetVertex:
        for v in self.vertices:
            if v.name == name:
                return v
        raise KeyError(name)

    def free_vertices(self) -> list[NetVertex]:
        return [v for v in self.vertices if v.is_free]

    def edges(self) -> list[str]:
        return list(self._ends)

    def partner(self, vi: int, li: int) -> tuple[int, int]:
        a, b = self._ends[self.vertices[vi].legs[li].edge]
        return b if a == (vi, li) else a

    def faces(self) -> list[list[tuple[int, int]]]:
        """Orbits of darts: from (v, i) cross the edge to (w, j), continue at (w, j + 1)."""
        seen: set[tuple[int, int]] = set()
        out = []
        for vi, v in enumerate(self.vertices):
            for li in range(len(v.legs)):
                if (vi, li) in seen:
                    continue
                face = []
                dart = (vi, li)
                while dart not in seen:
                    seen.add(dart)
                    face.append(dart)
                    w, j = self.partner(*dart)
                    dart = (w, (j + 1) % len(self.vertices[w].legs))
                out.append(face)
        return out

    def components(self) -> int:
        parent = list(range(len(self.vertices)))

        def find(i: int) -> int:
            while parent[i] != i:
                parent[i] = parent[parent[i]]
                i = parent[i]
            return i

        for ends in self._ends.values():
            a, b = find(ends[0][0]), find(ends[1][0])
            parent[a] = b
        return len({find(i) for i in range(len(self.vertices))})


def validate_net(cat: FusionCategory, net: Net) -> None:
    """Edge pairing, fixed vectors and planarity of the rotation system.

    Raises:
        SceneValidationError: naming the first faulty edge or vertex.
    """
    names = [v.name for v in net.vertices]
    if len(set(names)) != len(names):
        raise SceneValidationError("Sommets en double dans le réseau.", "net")
    for edge, ends in net._ends.items():
        if len(ends) != 2:
            raise SceneValidationError(f"L'arête {edge} a {len(ends)} extrémités.", edge)
        (v1, l1), (v2, l2) = ends
        a, b = net.vertices[v1].legs[l1], net.vertices[v2].legs[l2]
        if a.obj != b.obj or a.sign != -b.sign:
            raise SceneValidationError(f"Les deux bouts de {edge} ne sont pas duaux.", edge)
    for v in net.vertices:
        if v.vector is not None and (v.vector.src != UNIT_OBJ or v.vector.tgt != word_of(cat, v.legs)):
            raise SceneValidationError(f"Le vecteur de {v.name} n'est pas dans son module.", v.name)
    n_edges = len(net._ends)
    euler = len(net.vertices) - n_edges + len(net.faces())
    if net.vertices and euler != 2 * net.components():
        raise SceneValidationError("Système de rotation non planaire.", "net")


# =====================================================================
# EVALUATION
# =====================================================================


@dataclass
class _Piece:
    legs: list[Leg]
    vector: Morphism


def _close_adjacent(cat: FusionCategory, piece: _Piece, i: int) -> _Piece:
    legs = piece.legs
    a = legs[i]
    cap = cat.evt(a.obj) if a.sign > 0 else cat.ev(a.obj)
    left = word_of(cat, legs[:i])
    right = word_of(cat, legs[i + 2:])
    vector = cat.id_tensor(left, cap, right) @ piece.vector
    return _Piece(legs[:i] + legs[i + 2:], vector)


def _close_loops(cat: FusionCategory, piece: _Piece) -> _Piece:
    while piece.legs:
        n = len(piece.legs)
        found = None
        for i in range(n):
            if piece.legs[i].edge == piece.legs[(i + 1) % n].edge:
                found = i
                break
        if found is None:
            raise SceneValidationError("Boucle non contractible : réseau non planaire.", "net")
        if found == n - 1:
            piece = _Piece(piece.legs[1:] + piece.legs[:1], rotate(cat, piece.legs, piece.vector, 1))
            found = n - 2
        piece = _close_adjacent(cat, piece, found)
    return piece


def _merge(cat: FusionCategory, left: _Piece, i: int, right: _Piece, j: int) -> _Piece:
    """Join leg i of left with leg j of right, then close that edge."""
    n = len(left.legs)
    shift = (i + 1) % n
    lv = rotate(cat, left.legs, left.vector, shift)
    llegs = left.legs[shift:] + left.legs[:shift]
    rv = rotate(cat, right.legs, right.vector, j)
    rlegs = right.legs[j:] + right.legs[:j]
    joined = _Piece(llegs + rlegs, cat.tensor(lv, rv))
    return _close_adjacent(cat, joined, len(llegs) - 1)


def evaluate_net(
    cat: FusionCategory,
    net: Net,
    vectors: Optional[Mapping[str, Morphism]] = None,
    bases: Optional[Mapping[str, int]] = None,
    start: int = 0,
) -> Scalar:
    """Scalar of a net whose free vertices get `vectors`.

    Args:
        vectors: vector of each free vertex, read from its base leg.
        bases: base leg of a free vertex (default 0).
        start: index of the vertex the contraction starts from.

    Raises:
        SceneValidationError: missing vector or non-planar rotation system.
    """
    vectors = vectors or {}
    bases = bases or {}
    pieces: list[Optional[_Piece]] = []
    for v in net.vertices:
        if v.vector is not None:
            pieces.append(_Piece(list(v.legs), v.vector))
            continue
        if v.name not in vectors:
            raise SceneValidationError(f"Vecteur manquant pour le sommet {v.name}.", v.name)
        base = bases.get(v.name, 0) % max(len(v.legs), 1)
        pieces.append(_Piece(v.legs[base:] + v.legs[:base], vectors[v.name]))

    owner = list(range(len(pieces)))
    order = list(range(start, len(pieces))) + list(range(start))
    for edge in _edge_order(net, order):
        ends = [(vi, li) for vi, v in enumerate(net.vertices) for li, leg in enumerate(v.legs) if leg.edge == edge]
        (va, _), (vb, _) = ends
        pa, pb = _root(owner, va), _root(owner, vb)
        if pa == pb:
            continue
        left, right = pieces[pa], pieces[pb]
        i = next(k for k, leg in enumerate(left.legs) if leg.edge == edge)
        j = next(k for k, leg in enumerate(right.legs) if leg.edge == edge)
        pieces[pa] = _merge(cat, left, i, right, j)
        pieces[pb] = None
        owner[pb] = pa

    value = cat.one
    for piece in pieces:
        if piece is None:
            continue
        closed = _close_loops(cat, piece)
        value = value * cat.scalar_of(closed.vector)
    return value


def _root(owner: list[int], i: int) -> int:
    while owner[i] != i:
        i = owner[i]
    return i


def _edge_order(net: Net, order: list[int]) -> list[str]:
    seen: dict[str, None] = {}
    for vi in order:
        for leg in net.vertices[vi].legs:
            seen.setdefault(leg.edge, None)
    return list(seen)


def evaluate_on_sphere(
    cat: FusionCategory,
    net: Net,
    vectors: Optional[Mapping[str, Morphism]] = None,
    infinity: int = 0,
) -> Scalar:
    """Evaluate with the face of index `infinity` pushed to infinity.

    Every free vertex on that face is read from the leg following the face,
    and contraction starts from the first vertex of the face.
    """
    vectors = dict(vectors or {})
    faces = net.faces()
    if not faces:
        return evaluate_net(cat, net, vectors)
    face = faces[infinity % len(faces)]
    bases: dict[str, int] = {}
    for vi, li in face:
        v = net.vertices[vi]
        if v.is_free and v.name not in bases:
            steps = (li + 1) % len(v.legs)
            bases[v.name] = steps
            vectors[v.name] = rotate(cat, v.legs, vectors[v.name], steps)
    return evaluate_net(cat, net, vectors, bases, start=face[0][0])


# =====================================================================
# STANDARD NETS
# =====================================================================


def theta_net(legs: list[Leg], shift: int = 0, names: tuple[str, str] = ("a", "b")) -> Net:
    """Two vertices, the second with the dual word; leg j of the first meets
    leg (n - 1 - j + shift) mod n of the second."""
    n = len(legs)
    first = [Leg(f"e{j}", leg.obj, leg.sign) for j, leg in enumerate(legs)]
    second: list[Optional[Leg]] = [None] * n
    for j, leg in enumerate(legs):
        second[(n - 1 - j + shift) % n] = Leg(f"e{j}", leg.obj, -leg.sign)
    return Net([NetVertex(names[0], first), NetVertex(names[1], list(second))])  # type: ignore[arg-type]


def pairing_matrix(cat: FusionCategory, legs: list[Leg]) -> list[list[Scalar]]:
    """G[i][j] = value of the theta net on (a_i, b_j), a_i in Hom(1, W), b_j in Hom(1, W*)."""
    net = theta_net(legs)
    first = MultiplicityModule(cat, net.vertices[0].legs).basis()
    second = MultiplicityModule(cat, net.vertices[1].legs).basis()
    return [[evaluate_net(cat, net, {"a": a, "b": b}) for b in second] for a in first]


def tetrahedron_net(labels: dict[str, Obj]) -> Net:
    """Tetrahedral net on vertices a, b, c, d with edges ab, ac, ad, bc, bd, cd.

    Each edge xy is oriented from x to y. Cyclic orders are those of the
    tetrahedron drawn with d in the middle of triangle abc.
    """

    def out(e: str) -> Leg:
        return Leg(e, labels[e], 1)

    def inc(e: str) -> Leg:
        return Leg(e, labels[e], -1)

    return Net(
        [
            NetVertex("a", [out("ab"), out("ad"), out("ac")]),
            NetVertex("b", [out("bc"), out("bd"), inc("ab")]),
            NetVertex("c", [inc("ac"), out("cd"), inc("bc")]),
            NetVertex("d", [inc("ad"), inc("bd"), inc("cd")]),
        ]
    )


def crossing_vertex(
    braiding: "Braiding",
    name: str,
    a: "CenterObject",
    x: Obj,
    edges: tuple[str, str, str, str],
    positive: bool = True,
    psi: Optional[Morphism] = None,
) -> NetVertex:
    """Four-valent vertex of a crossing whose distinguished strand is colored by a.

    edges = (distinguished in, plain in, plain out, distinguished out).
    A positive crossing carries tau_{A,X}: A X -> X phi_{|X|}(A); a negative
    one carries tau_{B,X}^-1: X phi_{|X|}(B) -> B X with B = a.

    psi recolors the distinguished strand on the far side of the crossing:
    positive crossings are followed by id_X psi with psi: phi_{|X|}(A) -> A',
    negative ones preceded by id_X psi with psi: B' -> phi_{|X|}(B).
    """
    cat = braiding.cat
    tau = braiding.tau(a, x)
    d_in, x_in, x_out, d_out = edges
    moved = braiding.crossing.phi(cat.obj_degree(x), a).obj
    if positive:
        if psi is None:
            return morphism_vertex(cat, name, tau, [(x_out, x), (d_out, moved)], [(d_in, a.obj), (x_in, x)])
        f = cat.tensor(cat.identity(x), psi) @ tau
        return morphism_vertex(cat, name, f, [(x_out, x), (d_out, psi.tgt)], [(d_in, a.obj), (x_in, x)])
    if psi is None:
        return morphism_vertex(cat, name, tau.inverse(), [(d_out, a.obj), (x_out, x)], [(x_in, x), (d_in, moved)])
    f = tau.inverse() @ cat.tensor(cat.identity(x), psi)
    return morphism_vertex(cat, name, f, [(d_out, a.obj), (x_out, x)], [(x_in, x), (d_in, psi.src)])


def hopf_net(braiding: "Braiding", a: "CenterObject", b: "CenterObject", mirror: bool = False) -> Net:
    """Two circles colored a and b joined by two crossings (a Hopf link).

    The value is S_{ab} for simples of the neutral component; the mirror
    image uses the inverse crossings.
    """
    cat = braiding.cat
    if not mirror:
        first = braiding.braid(a, b)
        second = braiding.braid(b, a)
    else:
        first = braiding.braid(b, a).inverse()
        second = braiding.braid(a, b).inverse()
    vf = morphism_vertex(cat, "f", first, [("eb1", b.obj), ("ea1", a.obj)], [("ea2", a.obj), ("eb2", b.obj)])
    vg = morphism_vertex(cat, "g", second, [("ea2", a.obj), ("eb2", b.obj)], [("eb1", b.obj), ("ea1", a.obj)])
    return Net([vf, vg])
