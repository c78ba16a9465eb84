"""
Objects of the relative center: underlying objects with half-braidings.

Business rules:
- A center object A of degree alpha carries sigma_c: A (c) -> (c) A for
  every simple c of the trivial component; sigma on any object Y of the
  trivial component is assembled from these through splitting trees.
- Hom_Z(A, B) is the subspace of Hom_C(A, B) commuting with the
  half-braidings; it is computed as a nullspace.
"""

from __future__ import annotations

import logging
import threading
from dataclasses import dataclass, field
from typing import Optional

from qinv.algebra.matrix import Mat, split_idempotent
from qinv.algebra.scalar import Scalar
from qinv.exceptions import CenterError
from qinv.fusion.category import FusionCategory
from qinv.fusion.morphism import UNIT_OBJ, Morphism, Obj, obj_tensor, obj_text

logger = logging.getLogger(__name__)


@dataclass(eq=False)
class CenterObject:
    name: str
    obj: Obj
    degree: str
    sigma: dict[str, Morphism] = field(repr=False)

    def __repr__(self) -> str:
        return f"CenterObject({self.name}: {obj_text(self.obj)}, deg {self.degree})"


class Center:
    """Operations on center objects over a fixed category."""

    def __init__(self, cat: FusionCategory):
        self.cat = cat
        self.trivial = cat.simples_of_degree(cat.group.unit)
        self._sigma_cache: dict[tuple[int, Obj], Morphism] = {}
        self._pins: dict[int, CenterObject] = {}
        self._lock = threading.RLock()
        self.unit = CenterObject(
            f"J{cat.group.unit}_0",
            UNIT_OBJ,
            cat.group.unit,
            {c: cat.identity(((c,),)) for c in self.trivial},
        )

    # =====================================================================
    # HALF-BRAIDINGS
    # =====================================================================

    def sigma(self, a: CenterObject, y: Obj) -> Morphism:
        """sigma^A_Y: A Y -> Y A for Y in the trivial component."""
        cat = self.cat
        if y == UNIT_OBJ:
            return cat.identity(a.obj)
        if len(y) == 1 and len(y[0]) == 1 and y[0][0] in a.sigma:
            return a.sigma[y[0][0]]
        key = (id(a), y)
        found = self._sigma_cache.get(key)
        if found is not None:
            return found
        src, tgt = obj_tensor(a.obj, y), obj_tensor(y, a.obj)
        total = cat.zero(src, tgt)
        ident = cat.identity(a.obj)
        for c in self.trivial:
            for t in range(len(cat.basis(y, c))):
                inc = cat.tree_inclusion(y, c, t)
                proj = cat.tree_projection(y, c, t)
                term = cat.tensor(inc, ident) @ a.sigma[c] @ cat.tensor(ident, proj)
                total = total + term
        for c in cat.simples:
            if c not in a.sigma and cat.basis(y, c):
                raise CenterError(f"{obj_text(y)} n'est pas dans la composante triviale.")
        with self._lock:
            self._sigma_cache[key] = total
            self._pins[id(a)] = a
        return total

    def is_morphism(self, f: Morphism, a: CenterObject, b: CenterObject) -> bool:
        cat = self.cat
        for c in self.trivial:
            y = ((c,),)
            lhs = cat.tensor(cat.identity(y), f) @ a.sigma[c]
            rhs = b.sigma[c] @ cat.tensor(f, cat.identity(y))
            if lhs != rhs:
                return False
        return True

    def hom(self, a: CenterObject, b: CenterObject) -> list[Morphism]:
        """Basis of Hom_Z(A, B)."""
        cat = self.cat
        basis = cat.hom_basis(a.obj, b.obj)
        if not basis:
            return []
        columns = []
        for f in basis:
            residual: list[Scalar] = []
            for c in self.trivial:
                y = ((c,),)
                diff = cat.tensor(cat.identity(y), f) @ a.sigma[c] - b.sigma[c] @ cat.tensor(f, cat.identity(y))
                residual.extend(diff.flatten())
            columns.append(residual)
        rows = len(columns[0])
        if rows == 0:
            return basis
        m = Mat([[columns[j][i] for j in range(len(basis))] for i in range(rows)], len(basis), cat.conductor)
        out = []
        for v in m.nullspace():
            f = cat.zero(a.obj, b.obj)
            for i, g in enumerate(basis):
                k = v[i, 0]
                if not k.is_zero():
                    f = f + g.scale(k)
            out.append(f)
        return out

    def hom_dim(self, a: CenterObject, b: CenterObject) -> int:
        return len(self.hom(a, b))

    # =====================================================================
    # CONSTRUCTIONS
    # =====================================================================

    def tensor(self, a: CenterObject, b: CenterObject, name: Optional[str] = None) -> CenterObject:
        cat = self.cat
        if a is self.unit:
            return b
        if b is self.unit:
            return a
        sigma = {}
        for c in self.trivial:
            y = ((c,),)
            sigma[c] = cat.tensor(a.sigma[c], cat.identity(b.obj)) @ cat.tensor(cat.identity(a.obj), b.sigma[c])
        return CenterObject(
            name or f"{a.name}.{b.name}",
            obj_tensor(a.obj, b.obj),
            cat.group.mul(a.degree, b.degree),
            sigma,
        )

    def tensor_all(self, objects: list[CenterObject]) -> CenterObject:
        result = self.unit
        for x in objects:
            result = self.tensor(result, x)
        return result

    def dual(self, a: CenterObject, name: Optional[str] = None) -> CenterObject:
        cat = self.cat
        ad = cat.dual_obj(a.obj)
        sigma = {}
        for c in self.trivial:
            y = ((c,),)
            inv = a.sigma[c].inverse()
            step = cat.tensor(cat.identity(obj_tensor(ad, y)), cat.coev(a.obj))
            mid = cat.id_tensor(ad, cat.tensor(inv, cat.identity(ad)))
            close = cat.tensor(cat.ev(a.obj), cat.identity(obj_tensor(y, ad)))
            sigma[c] = close @ mid @ step
        return CenterObject(name or f"{a.name}*", ad, cat.group.inv(a.degree), sigma)

    def direct_sum(self, parts: list[CenterObject], name: Optional[str] = None) -> CenterObject:
        cat = self.cat
        degrees = {p.degree for p in parts}
        if len(degrees) != 1:
            raise CenterError("Somme directe d'objets de degrés différents.")
        obj: tuple = ()
        for p in parts:
            obj = obj + p.obj
        sigma = {}
        for c in self.trivial:
            comps = {}
            offset = 0
            for p in parts:
                s = p.sigma[c]
                for ti in range(len(p.obj)):
                    for si in range(len(p.obj)):
                        comp = s.component(ti, si)
                        if comp.blocks:
                            comps[(offset + ti, offset + si)] = comp
                offset += len(p.obj)
            sigma[c] = Morphism.assemble(cat, obj_tensor(obj, ((c,),)), obj_tensor(((c,),), obj), comps)
        return CenterObject(name or "+".join(p.name for p in parts), obj, degrees.pop(), sigma)

    def split(self, a: CenterObject, p: Morphism, q: Morphism, name: str) -> CenterObject:
        """Image of the idempotent q p on A, with p: A -> E and q: E -> A."""
        cat = self.cat
        e_obj = p.tgt
        sigma = {}
        for c in self.trivial:
            y = ((c,),)
            sigma[c] = cat.tensor(cat.identity(y), p) @ a.sigma[c] @ cat.tensor(q, cat.identity(y))
        return CenterObject(name, e_obj, a.degree, sigma)

    def dim(self, a: CenterObject) -> Scalar:
        return self.cat.dim_obj(a.obj)

    def trace(self, f: Morphism) -> Scalar:
        return self.cat.trace(f)


def split_endomorphism(cat: FusionCategory, e: Morphism) -> tuple[Obj, Morphism, Morphism]:
    """Image of an idempotent e of X as (E, p: X -> E, q: E -> X).

    E lists one word (c,) per unit of rank of e at charge c, charges in
    label order, so the rows of p_c follow the basis of E at c.
    """
    words = []
    p_blocks, q_blocks = {}, {}
    for c in cat.simples:
        block = e.blocks.get(c)
        if block is None or block.is_zero():
            continue
        triple = split_idempotent(block)
        words.extend([(c,)] * triple.rank)
        p_blocks[c] = triple.p
        q_blocks[c] = triple.q
    e_obj: Obj = tuple(words)
    return e_obj, Morphism(cat, e.src, e_obj, p_blocks), Morphism(cat, e_obj, e.src, q_blocks)
