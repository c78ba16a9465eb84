"""
The crossing phi: G -> Aut(Z), realized through witnesses.

Business rules:
- A witness of degree alpha is a word V of degree alpha with invertible
  dimension. The unit degree uses the empty word, so phi_1 is the identity.
- For a center object A, pi^V_A = d_V^-1 loop(V, 1, V) is an idempotent of
  V* A V. Its image E, with p: V* A V -> E and q: E -> V* A V, is phi_V(A);
  it has degree alpha^-1 |A| alpha.
- The half-braiding of E at c is d_V^-1 (id_c p) loop(V, c, V) (q id_c).
- delta^{U,V}_A = d_U^-1 p^V loop(U, 1, V) q^U: phi_U(A) -> phi_V(A) for two
  witnesses of one degree.
- phi_2(alpha, beta)_A: phi_alpha phi_beta A -> phi_{beta alpha} A is the
  concatenation map m^{V_alpha, V_beta} followed by delta from the word
  V_beta V_alpha to the witness of beta alpha.
"""

from __future__ import annotations

import logging
import threading
from dataclasses import dataclass
from itertools import product
from typing import Optional

import sentry_sdk

from qinv.algebra.scalar import Scalar
from qinv.center.objects import Center, CenterObject, split_endomorphism
from qinv.center.simples import CenterSimples, underlying
from qinv.exceptions import NonSingularityError
from qinv.fusion.category import FusionCategory
from qinv.fusion.morphism import UNIT_OBJ, Morphism, Obj, Word, obj_product

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Image:
    """phi_V(A) with its splitting maps.

    Attributes:
        obj: the center object E.
        p: V* A V -> E.
        q: E -> V* A V.
    """

    obj: CenterObject
    p: Morphism
    q: Morphism


class Crossing:
    """phi_alpha, phi_2 and the witness comparison maps over a built center."""

    def __init__(self, simples: CenterSimples):
        self.simples = simples
        self.center: Center = simples.center
        self.cat: FusionCategory = simples.cat
        self._images: dict[tuple[Word, int], Image] = {}
        self._pins: dict[int, CenterObject] = {}
        self._lock = threading.RLock()
        self.witnesses: dict[str, list[Word]] = {
            alpha: self._find_witnesses(alpha) for alpha in self.cat.group.elements
        }

    # =====================================================================
    # WITNESSES
    # =====================================================================

    def _find_witnesses(self, alpha: str) -> list[Word]:
        """The empty word for the unit degree, then up to two simples."""
        cat = self.cat
        found: list[Word] = [()] if alpha == cat.group.unit else []
        for a in cat.simples_of_degree(alpha):
            if len(found) == 2:
                break
            if a == cat.unit or cat.dim(a).is_zero():
                continue
            found.append((a,))
        if not found:
            raise NonSingularityError(f"Aucun objet de dimension inversible en degré {alpha}.")
        return found

    def witness(self, alpha: str) -> Word:
        return self.witnesses[alpha][0]

    def word_dim(self, v: Word) -> Scalar:
        return self.cat.dim_obj((v,))

    # =====================================================================
    # IMAGES
    # =====================================================================

    def loop(self, a: CenterObject, u: Word, v: Word, z: Obj = UNIT_OBJ) -> Morphism:
        """U* A U Z -> Z V* A V: A is pulled through the ring U Z V*."""
        cat = self.cat
        uo, vo = (u,), (v,)
        ud, vd = cat.dual_obj(uo), cat.dual_obj(vo)
        src = obj_product(ud, a.obj, uo, z)
        opened = cat.tensor(cat.identity(src), cat.coevt(vo))
        ring = obj_product(uo, z, vd)
        pulled = cat.id_tensor(ud, self.center.sigma(a, ring), vo)
        closed = cat.tensor(cat.ev(uo), cat.identity(obj_product(z, vd, a.obj, vo)))
        return closed @ pulled @ opened

    def image(self, v: Word, a: CenterObject) -> Image:
        """phi_V(A), cached per (V, A)."""
        if not v:
            ident = self.cat.identity(a.obj)
            return Image(a, ident, ident)
        key = (v, id(a))
        found = self._images.get(key)
        if found is not None:
            return found
        cat = self.cat
        d_inv = self.word_dim(v).inverse()
        pi = self.loop(a, v, v).scale(d_inv)
        e_obj, p, q = split_endomorphism(cat, pi)
        sigma = {}
        for c in self.center.trivial:
            y = ((c,),)
            ring = self.loop(a, v, v, y)
            sigma[c] = (cat.tensor(cat.identity(y), p) @ ring @ cat.tensor(q, cat.identity(y))).scale(d_inv)
        alpha = cat.word_degree(v)
        e = CenterObject(f"phi{alpha}({a.name})", e_obj, cat.group.conj(a.degree, alpha), sigma)
        result = Image(e, p, q)
        with self._lock:
            self._images[key] = result
            self._pins[id(a)] = a
        logger.debug("phi_%s(%s) has %d summands", alpha, a.name, len(e_obj))
        return result

    def phi(self, alpha: str, a: CenterObject) -> CenterObject:
        return self.image(self.witness(alpha), a).obj

    def phi_morphism(self, alpha: str, f: Morphism, a: CenterObject, b: CenterObject) -> Morphism:
        """phi_alpha(f) for a center morphism f: A -> B."""
        v = self.witness(alpha)
        if not v:
            return f
        src, tgt = self.image(v, a), self.image(v, b)
        vo = (v,)
        return tgt.p @ self.cat.id_tensor(self.cat.dual_obj(vo), f, vo) @ src.q

    # =====================================================================
    # COMPARISON MAPS
    # =====================================================================

    def delta(self, u: Word, v: Word, a: CenterObject) -> Morphism:
        """delta^{U,V}_A: phi_U(A) -> phi_V(A)."""
        src, tgt = self.image(u, a), self.image(v, a)
        ring = self.loop(a, u, v)
        return (tgt.p @ ring @ src.q).scale(self.word_dim(u).inverse())

    def concat(self, u: Word, v: Word, a: CenterObject) -> Morphism:
        """m^{U,V}_A: phi_U(phi_V(A)) -> phi_{VU}(A)."""
        inner = self.image(v, a)
        outer = self.image(u, inner.obj)
        target = self.image(v + u, a)
        uo = (u,)
        middle = self.cat.id_tensor(self.cat.dual_obj(uo), inner.q, uo)
        return target.p @ middle @ outer.q

    def phi_2(self, alpha: str, beta: str, a: CenterObject) -> Morphism:
        """phi_alpha phi_beta A -> phi_{beta alpha} A."""
        group = self.cat.group
        if group.unit in (alpha, beta):
            return self.cat.identity(self.phi(alpha, self.phi(beta, a)).obj)
        ua, vb = self.witness(alpha), self.witness(beta)
        target = self.witness(group.mul(beta, alpha))
        return self.delta(vb + ua, target, a) @ self.concat(ua, vb, a)

    def phi_0(self, alpha: str) -> Morphism:
        """1 -> phi_alpha(1)."""
        v = self.witness(alpha)
        img = self.image(v, self.center.unit)
        return img.p @ self.cat.coevt((v,))

    def monoidal(self, alpha: str, a: CenterObject, b: CenterObject, ab: Optional[CenterObject] = None) -> Morphism:
        """(phi_alpha)_2: phi(A) phi(B) -> phi(A B)."""
        cat = self.cat
        ab = ab or self.center.tensor(a, b)
        v = self.witness(alpha)
        ia, ib, iab = self.image(v, a), self.image(v, b), self.image(v, ab)
        vo = (v,)
        vd = cat.dual_obj(vo)
        joined = cat.id_tensor(obj_product(vd, a.obj), cat.evt(vo), obj_product(b.obj, vo))
        return iab.p @ joined @ cat.tensor(ia.q, ib.q)

    # =====================================================================
    # SIMPLES
    # =====================================================================

    def image_simple(self, alpha: str, j: CenterObject) -> CenterObject:
        """The simple of J_{alpha^-1 |J| alpha} isomorphic to phi_alpha(J)."""
        e = self.phi(alpha, j)
        for k in self.simples.of_degree(e.degree):
            if underlying(self.cat, k) == underlying(self.cat, e) and self.center.hom_dim(k, e):
                return k
        raise NonSingularityError(f"phi_{alpha}({j.name}) n'est isomorphe à aucun simple de degré {e.degree}.")


# =====================================================================
# CHECKS
# =====================================================================


def is_iso(f: Morphism) -> bool:
    cat = f.cat
    for c in cat.simples:
        rows, cols = len(cat.basis(f.tgt, c)), len(cat.basis(f.src, c))
        if rows != cols:
            return False
        if rows and not f.block(c).is_invertible():
            return False
    return True


def _multiplicative(center: Center, e: CenterObject) -> bool:
    cat = center.cat
    for y1, y2 in product(center.trivial, repeat=2):
        whole = center.sigma(e, ((y1, y2),))
        composite = cat.tensor(cat.identity(((y1,),)), e.sigma[y2]) @ cat.tensor(e.sigma[y1], cat.identity(((y2,),)))
        if whole != composite:
            return False
    return True


def check_crossing(crossing: Crossing, degrees: Optional[list[str]] = None) -> list[str]:
    """Run the crossing coherence checks; return the names of the checks passed.

    Raises:
        NonSingularityError: naming the first failing map and its data.
    """
    cat, center = crossing.cat, crossing.center
    group = cat.group
    degrees = degrees or list(group.elements)
    simples = crossing.simples.all()
    passed = []

    for alpha in degrees:
        for v in crossing.witnesses[alpha]:
            for j in simples:
                img = crossing.image(v, j)
                if img.p @ img.q != cat.identity(img.obj.obj):
                    raise NonSingularityError(f"p q != id pour phi_{v}({j.name}).")
                if img.obj.degree != group.conj(j.degree, alpha):
                    raise NonSingularityError(f"phi_{alpha}({j.name}) a le degré {img.obj.degree}.")
                if center.hom_dim(img.obj, img.obj) != 1:
                    raise NonSingularityError(f"phi_{v}({j.name}) n'est pas simple.")
                if not _multiplicative(center, img.obj):
                    raise NonSingularityError(f"Tresse partielle de phi_{v}({j.name}) non multiplicative.")
    passed.append("splitting")

    for alpha in degrees:
        ws = crossing.witnesses[alpha]
        for j in simples:
            for u in ws:
                if crossing.delta(u, u, j) != cat.identity(crossing.image(u, j).obj.obj):
                    raise NonSingularityError(f"delta^{{{u},{u}}}({j.name}) != id.")
            for u, v in product(ws, repeat=2):
                d = crossing.delta(u, v, j)
                if not center.is_morphism(d, crossing.image(u, j).obj, crossing.image(v, j).obj):
                    raise NonSingularityError(f"delta^{{{u},{v}}}({j.name}) n'est pas un morphisme du centre.")
                back = crossing.delta(v, u, j) @ d
                if back != cat.identity(crossing.image(u, j).obj.obj):
                    raise NonSingularityError(f"delta^{{{v},{u}}} delta^{{{u},{v}}}({j.name}) != id.")
    passed.append("delta cocycle")

    for alpha in degrees:
        unit_image = crossing.phi(alpha, center.unit)
        eta = crossing.phi_0(alpha)
        if not center.is_morphism(eta, center.unit, unit_image) or not is_iso(eta):
            raise NonSingularityError(f"phi_0 en degré {alpha} n'est pas un isomorphisme du centre.")
        for a, b in product(simples, repeat=2):
            ab = center.tensor(a, b)
            m = crossing.monoidal(alpha, a, b, ab)
            src = center.tensor(crossing.phi(alpha, a), crossing.phi(alpha, b))
            if not center.is_morphism(m, src, crossing.phi(alpha, ab)) or not is_iso(m):
                raise NonSingularityError(f"(phi_{alpha})_2 sur ({a.name}, {b.name}) n'est pas un isomorphisme du centre.")
    passed.append("monoidal")

    for alpha, beta, gamma in product(degrees, repeat=3):
        for a in simples:
            inner = crossing.phi_2(beta, gamma, a)
            lhs = crossing.phi_2(alpha, group.mul(gamma, beta), a) @ crossing.phi_morphism(
                alpha, inner, crossing.phi(beta, crossing.phi(gamma, a)), crossing.phi(group.mul(gamma, beta), a)
            )
            rhs = crossing.phi_2(group.mul(beta, alpha), gamma, a) @ crossing.phi_2(alpha, beta, crossing.phi(gamma, a))
            if lhs != rhs:
                raise NonSingularityError(
                    f"phi_2 non associatif pour ({alpha}, {beta}, {gamma}) sur {a.name}."
                )
    passed.append("phi_2 associativity")

    sentry_sdk.capture_message(f"Crossing checked for {cat.name}: {', '.join(passed)}", level="info")
    return passed
