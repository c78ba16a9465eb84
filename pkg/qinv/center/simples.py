"""
Simple objects of the relative center, degree by degree.

Business rules:
- For V simple of degree alpha, the induced object I(V) = sum over X in
  the trivial component of X V X* carries the half-braiding built from
  dual bases of Hom(X, Y X').
- End_Z(I(V)) is split into primitive idempotents; each one is split per
  charge into an object E with maps p: I(V) -> E, q: E -> I(V).
- Two summands are the same simple when their underlying multisets agree
  and Hom_Z between them is nonzero. Induction stops once the squared
  dimensions of the simples found in a degree add up to dim(C_1)^2.
- The simples of degree alpha are named J{alpha}_{k}; J{1}_0 is the unit.
"""

from __future__ import annotations

import logging
import random
from dataclasses import dataclass, field
from typing import Optional

import sentry_sdk

from qinv.algebra.idempotents import AlgebraView, primitive_idempotents
from qinv.algebra.scalar import Scalar
from qinv.center.objects import Center, CenterObject, split_endomorphism
from qinv.config import RunConfig
from qinv.exceptions import CenterError, NonSingularityError
from qinv.fusion.category import FusionCategory
from qinv.fusion.morphism import Morphism, Obj, obj_tensor

logger = logging.getLogger(__name__)


@dataclass
class CenterSimples:
    """The simples J_alpha of every degree, with the Center they live in."""

    center: Center
    by_degree: dict[str, list[CenterObject]] = field(default_factory=dict)

    @property
    def cat(self) -> FusionCategory:
        return self.center.cat

    def of_degree(self, alpha: str) -> list[CenterObject]:
        return self.by_degree[alpha]

    def all(self) -> list[CenterObject]:
        return [j for alpha in self.cat.group.elements for j in self.by_degree[alpha]]

    def by_name(self, name: str) -> CenterObject:
        for j in self.all():
            if j.name == name:
                return j
        raise KeyError(f"Objet simple du centre inconnu : {name}")

    def dual_of(self, j: CenterObject) -> CenterObject:
        """The simple of J_{alpha^-1} isomorphic to J*."""
        jd = self.center.dual(j)
        for k in self.by_degree[jd.degree]:
            if underlying(self.cat, k) == underlying(self.cat, jd) and self.center.hom_dim(k, jd):
                return k
        raise CenterError(f"Dual de {j.name} introuvable.")

    def multiplicity(self, j: CenterObject, a: CenterObject) -> int:
        return self.center.hom_dim(j, a)


# =====================================================================
# INDUCTION
# =====================================================================


def _induced_sigma(cat: FusionCategory, trivial: list[str], v: str, y: str) -> Morphism:
    words = [(x, v, cat.dual(x)) for x in trivial]
    obj: Obj = tuple(words)
    src, tgt = obj_tensor(obj, ((y,),)), obj_tensor(((y,),), obj)
    comps = {}
    for si, x in enumerate(trivial):
        for ti, x2 in enumerate(trivial):
            yx2 = ((y, x2),)
            mult = cat.N(y, x2, x)
            if not mult:
                continue
            xd, x2d = ((cat.dual(x),),), ((cat.dual(x2),),)
            total = None
            for mu in range(mult):
                idx = cat.basis(yx2, x).index((0, ((x, mu),)))
                inc = cat.tree_inclusion(yx2, x, idx)
                proj = cat.tree_projection(yx2, x, idx)
                opened = cat.tensor(cat.identity(obj_tensor(xd, ((y,),))), cat.coev(((x2,),)))
                middle = cat.id_tensor(xd, cat.tensor(proj, cat.identity(x2d)))
                closed = cat.tensor(cat.ev(((x,),)), cat.identity(x2d))
                transposed = closed @ middle @ opened
                term = cat.tensor(cat.tensor(inc, cat.identity(((v,),))), transposed)
                total = term if total is None else total + term
            comps[(ti, si)] = total
    return Morphism.assemble(cat, src, tgt, comps)


def induced_object(center: Center, v: str) -> CenterObject:
    cat = center.cat
    obj = tuple((x, v, cat.dual(x)) for x in center.trivial)
    sigma = {y: _induced_sigma(cat, center.trivial, v, y) for y in center.trivial}
    return CenterObject(f"I({v})", obj, cat.deg(v), sigma)


def _end_algebra(center: Center, a: CenterObject) -> AlgebraView[Morphism]:
    cat = center.cat
    basis = center.hom(a, a)
    return AlgebraView(
        name=a.name,
        basis=basis,
        mul=lambda f, g: f @ g,
        add=lambda f, g: f + g,
        scale=lambda f, k: f.scale(k),
        coordinates=lambda f: f.flatten(),
        conductor=cat.conductor,
    )


def _split_summand(center: Center, a: CenterObject, e: Morphism, name: str) -> CenterObject:
    _, p, q = split_endomorphism(center.cat, e)
    return center.split(a, p, q, name)


def underlying(cat: FusionCategory, x: CenterObject) -> list[tuple[str, ...]]:
    """Multiset of words of the underlying object, unit letters dropped."""
    return sorted(tuple(a for a in w if a != cat.unit) for w in x.obj)


def _same_simple(center: Center, x: CenterObject, y: CenterObject) -> bool:
    if underlying(center.cat, x) != underlying(center.cat, y):
        return False
    return center.hom_dim(x, y) > 0


def build_simples(cat: FusionCategory, config: Optional[RunConfig] = None) -> CenterSimples:
    """Compute J_alpha for every alpha in G."""
    config = config or RunConfig()
    rng = random.Random(config.seed)
    center = Center(cat)
    target = cat.dim_component(cat.group.unit) ** 2
    result = CenterSimples(center)
    for alpha in cat.group.elements:
        found: list[CenterObject] = [center.unit] if alpha == cat.group.unit else []
        total = sum((center.dim(j) ** 2 for j in found), Scalar.zero(cat.conductor))
        for v in cat.simples_of_degree(alpha):
            if total == target:
                break
            induced = induced_object(center, v)
            algebra = _end_algebra(center, induced)
            idempotents = primitive_idempotents(
                algebra, cat.identity(induced.obj), rng, config.decomposition_tries
            )
            for e in idempotents:
                candidate = _split_summand(center, induced, e, f"J{alpha}_{len(found)}")
                if any(_same_simple(center, candidate, j) for j in found):
                    continue
                found.append(candidate)
                total = total + center.dim(candidate) ** 2
                logger.debug("new simple %s of degree %s", candidate.name, alpha)
        if total != target:
            raise NonSingularityError(
                f"Degré {alpha} : somme des d_J^2 = {total}, attendu dim(C_1)^2 = {target}."
            )
        ordered = _canonical_order(cat, found, alpha == cat.group.unit)
        for k, j in enumerate(ordered):
            j.name = f"J{alpha}_{k}"
        result.by_degree[alpha] = ordered
    sentry_sdk.capture_message(
        f"Center built for {cat.name}: "
        + ", ".join(f"{a}:{len(js)}" for a, js in result.by_degree.items()),
        level="info",
    )
    return result


def _canonical_order(cat: FusionCategory, found: list[CenterObject], has_unit: bool) -> list[CenterObject]:
    head = found[:1] if has_unit else []
    rest = found[1:] if has_unit else list(found)

    def key(j: CenterObject):
        return (len(j.obj), sorted(tuple(cat.index(a) for a in w) for w in j.obj))

    # stable: discovery order breaks ties
    return head + sorted(rest, key=key)


# =====================================================================
# CHECKS
# =====================================================================


def check_simples(simples: CenterSimples) -> list[str]:
    """Run the structural checks; return the names of the checks passed."""
    center = simples.center
    cat = center.cat
    passed = []
    target = cat.dim_component(cat.group.unit) ** 2
    for alpha, js in simples.by_degree.items():
        for j in js:
            if center.hom_dim(j, j) != 1:
                raise NonSingularityError(f"{j.name} n'est pas simple.")
        total = sum((center.dim(j) ** 2 for j in js), Scalar.zero(cat.conductor))
        if total != target:
            raise NonSingularityError(f"Degré {alpha} : somme des d_J^2 = {total} != {target}.")
    passed.append("dimensions")
    for j in simples.all():
        for y1 in center.trivial:
            for y2 in center.trivial:
                y = ((y1, y2),)
                whole = center.sigma(j, y)
                composite = cat.tensor(cat.identity(((y1,),)), j.sigma[y2]) @ cat.tensor(j.sigma[y1], cat.identity(((y2,),)))
                if whole != composite:
                    raise NonSingularityError(f"Tresse partielle non multiplicative pour {j.name} sur ({y1}, {y2}).")
    passed.append("half-braiding")
    ones = simples.of_degree(cat.group.unit)
    for a in ones:
        for b in ones:
            ab = center.tensor(a, b)
            total = Scalar.zero(cat.conductor)
            for c in ones:
                total = total + center.dim(c) * simples.multiplicity(c, ab)
            if total != center.dim(a) * center.dim(b):
                raise NonSingularityError(f"{a.name} x {b.name} ne se décompose pas sur J_1.")
    passed.append("fusion closure")
    return passed
