"""
G-braiding and twist of the center.

Business rules:
- tau_{A,X}: A X -> X phi_{|X|}(A) for a center object A and a homogeneous
  object X of C; the witness V of |X| gives
  tau = (id_X p^V_A)(sigma^A_{X V*} id_V)(id_{A X} coev~_V).
  On X in C_1 it is the half-braiding itself.
- The braiding of two center objects is c_{A,B} = tau_{A,B}.
- theta_J = (ev_J id)(id_{J*} c_{J,J})(coev~_J id): J -> phi_{|J|}(J).
  On Z_1 it is the scalar nu_J.
"""

from __future__ import annotations

import logging
from itertools import product
from typing import Optional

import sentry_sdk

from qinv.algebra.scalar import Scalar
from qinv.center.crossing import Crossing
from qinv.center.objects import CenterObject
from qinv.exceptions import CenterError, NonSingularityError
from qinv.fusion.morphism import Morphism, Obj, Word, obj_tensor

logger = logging.getLogger(__name__)


class Braiding:
    def __init__(self, crossing: Crossing):
        self.crossing = crossing
        self.center = crossing.center
        self.cat = crossing.cat

    def tau(self, a: CenterObject, x: Obj, degree: Optional[str] = None, witness: Optional[Word] = None) -> Morphism:
        """A X -> X phi_{|X|}(A)."""
        cat = self.cat
        degree = degree or cat.obj_degree(x)
        if degree is None:
            raise CenterError("Tresse vers un objet non homogène.")
        v = self.crossing.witness(degree) if witness is None else witness
        img = self.crossing.image(v, a)
        vo = (v,)
        vd = cat.dual_obj(vo)
        opened = cat.tensor(cat.identity(obj_tensor(a.obj, x)), cat.coevt(vo))
        moved = cat.tensor(self.center.sigma(a, obj_tensor(x, vd)), cat.identity(vo))
        closed = cat.tensor(cat.identity(x), img.p)
        return closed @ moved @ opened

    def braid(self, a: CenterObject, b: CenterObject) -> Morphism:
        """c_{A,B}: A B -> B phi_{|B|}(A)."""
        return self.tau(a, b.obj, b.degree)

    def twist(self, j: CenterObject, witness: Optional[Word] = None) -> Morphism:
        """theta_J: J -> phi_{|J|}(J), read through the given witness of |J|."""
        cat = self.cat
        v = self.crossing.witness(j.degree) if witness is None else witness
        target = self.crossing.image(v, j).obj
        opened = cat.tensor(cat.coevt(j.obj), cat.identity(j.obj))
        braided = cat.id_tensor(cat.dual_obj(j.obj), self.tau(j, j.obj, j.degree, witness=v))
        closed = cat.tensor(cat.ev(j.obj), cat.identity(target.obj))
        return closed @ braided @ opened

    def twist_right(self, j: CenterObject) -> Morphism:
        """(id_J ev~_J)(c_{J,J} id_{J*})(id_J coev_J), for J in Z_1."""
        cat = self.cat
        jd = cat.dual_obj(j.obj)
        opened = cat.tensor(cat.identity(j.obj), cat.coev(j.obj))
        braided = cat.tensor(self.braid(j, j), cat.identity(jd))
        closed = cat.tensor(cat.identity(j.obj), cat.evt(j.obj))
        return closed @ braided @ opened

    def nu(self, j: CenterObject) -> Scalar:
        if j.degree != self.cat.group.unit:
            raise CenterError(f"{j.name} n'est pas de degré neutre : pas de twist scalaire.")
        return self.twist(j).as_scalar()


# =====================================================================
# CHECKS
# =====================================================================


def check_braiding(braiding: Braiding, degrees: Optional[list[str]] = None) -> list[str]:
    """Ribbon, balancing and distributivity checks; names of the checks passed."""
    crossing, center, cat = braiding.crossing, braiding.center, braiding.cat
    simples = crossing.simples
    group = cat.group
    degrees = degrees or list(group.elements)
    ones = simples.of_degree(group.unit)
    passed = []

    for j in simples.all():
        if j.degree not in degrees:
            continue
        ws = crossing.witnesses[j.degree]
        base = braiding.twist(j, ws[0])
        if base.is_zero():
            raise NonSingularityError(f"theta_{j.name} est nul.")
        for w in ws[1:]:
            if crossing.delta(ws[0], w, j) @ base != braiding.twist(j, w):
                raise NonSingularityError(f"theta_{j.name} dépend du témoin {w} en degré {j.degree}.")
        if j.degree != group.unit:
            continue
        for w in ws:
            back = crossing.delta(w, ws[0], j) @ braiding.twist(j, w)
            if back != braiding.twist_right(j):
                raise NonSingularityError(f"Les deux twists de {j.name} diffèrent (témoin {w}).")
        if braiding.nu(simples.dual_of(j)) != braiding.nu(j):
            raise NonSingularityError(f"nu({j.name}*) != nu({j.name}).")
    passed.append("ribbon")

    nus = {id(j): braiding.nu(j) for j in ones}
    for i, j in product(ones, repeat=2):
        ij = center.tensor(i, j)
        double = braiding.braid(j, i) @ braiding.braid(i, j)
        for k in ones:
            factor = nus[id(k)] / (nus[id(i)] * nus[id(j)])
            for f in center.hom(k, ij):
                if double @ f != f.scale(factor):
                    raise NonSingularityError(f"Équilibrage en échec pour {k.name} dans {i.name} x {j.name}.")
    passed.append("balancing")

    letters = [a for a in cat.simples if cat.deg(a) in degrees]
    for a in simples.all():
        for x, y in product(letters, repeat=2):
            xo, yo = ((x,),), ((y,),)
            dx, dy = cat.deg(x), cat.deg(y)
            whole = braiding.tau(a, obj_tensor(xo, yo))
            first = cat.tensor(braiding.tau(a, xo), cat.identity(yo))
            moved = crossing.phi(dx, a)
            second = cat.id_tensor(xo, braiding.tau(moved, yo))
            collapse = cat.id_tensor(obj_tensor(xo, yo), crossing.phi_2(dy, dx, a))
            if whole != collapse @ second @ first:
                raise NonSingularityError(f"tau_{{{a.name}, {x}{y}}} n'est pas distributif.")
    passed.append("distributivity in X")

    for a, b in product(simples.all(), repeat=2):
        ab = center.tensor(a, b)
        for x in letters:
            xo = ((x,),)
            dx = cat.deg(x)
            whole = braiding.tau(ab, xo)
            chain = cat.tensor(braiding.tau(a, xo), cat.identity(crossing.phi(dx, b).obj)) @ cat.id_tensor(
                a.obj, braiding.tau(b, xo)
            )
            joined = cat.id_tensor(xo, crossing.monoidal(dx, a, b, ab))
            if whole != joined @ chain:
                raise NonSingularityError(f"tau_{{{a.name} {b.name}, {x}}} n'est pas distributif.")
    passed.append("distributivity in A")

    for alpha in degrees:
        ws = crossing.witnesses[alpha]
        if len(ws) < 2:
            continue
        u, v = ws[0], ws[1]
        for a in simples.all():
            for x in cat.simples_of_degree(alpha):
                xo = ((x,),)
                lhs = cat.id_tensor(xo, crossing.delta(v, u, a)) @ braiding.tau(a, xo, alpha, witness=v)
                if lhs != braiding.tau(a, xo, alpha, witness=u):
                    raise NonSingularityError(f"tau de {a.name} dépend du témoin en degré {alpha}.")
    passed.append("witness independence")

    sentry_sdk.capture_message(f"Braiding checked for {cat.name}: {', '.join(passed)}", level="info")
    return passed
