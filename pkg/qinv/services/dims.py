"""
Dimensions of the state spaces of surfaces with G-structure.

Business rules:
- A surface of genus g with marked points is given by the images
  alpha_j, beta_j of the standard generators and, per marked point, a
  center simple J_i and a sign eps_i; mu_i = |J_i|. The relation
  [alpha_1, beta_1] ... [alpha_g, beta_g] mu_1^eps_1 ... = 1 must hold.
- Surgery side: sum over J_1 in J_{beta_1}, ..., J_g in J_{beta_g} of
  dim Hom_Z(1, phi_{alpha_1}(J_1)* J_1 ... phi_{alpha_g}(J_g)* J_g U),
  U the product of the J_i^{eps_i}.
- State-sum side: dim Hom_Z(1, C_1 ... C_g U) with C_j the sum of
  i* j* i j over simples i of C_{alpha_j} and j of C_{beta_j}, its
  half-braiding built from the category data alone.
- With G trivial and no marked point both equal
  sum over J of (Delta / dim J)^(2g-2).
"""

from __future__ import annotations

import logging
from itertools import product
from pathlib import Path
from typing import Literal, Optional, Union

import sentry_sdk
from pydantic import BaseModel, ConfigDict, Field, ValidationError, model_validator

from qinv.algebra.scalar import Scalar
from qinv.center.objects import CenterObject
from qinv.exceptions import IdentityFailure, SceneValidationError, SpecFormatError
from qinv.fusion.category import FusionCategory
from qinv.fusion.morphism import Morphism, Obj, obj_tensor
from qinv.services.engine import Engine

logger = logging.getLogger(__name__)


class MarkSpec(BaseModel):
    model_config = ConfigDict(extra="forbid")

    color: str
    sign: Literal[1, -1] = 1


class SurfaceSpec(BaseModel):
    """A closed oriented surface with G-structure and colored marked points."""

    model_config = ConfigDict(extra="forbid")

    name: str = "surface"
    genus: int = Field(ge=0)
    alphas: list[str] = Field(default_factory=list)
    betas: list[str] = Field(default_factory=list)
    marks: list[MarkSpec] = Field(default_factory=list)

    @model_validator(mode="after")
    def _one_pair_per_handle(self) -> "SurfaceSpec":
        if len(self.alphas) != self.genus or len(self.betas) != self.genus:
            raise ValueError("une paire (alpha, beta) par anse est attendue")
        return self


def load_surface(path: Union[str, Path]) -> SurfaceSpec:
    path = Path(path)
    try:
        return SurfaceSpec.model_validate_json(path.read_text(encoding="utf-8"))
    except (OSError, ValidationError) as exc:
        raise SpecFormatError(f"Surface illisible {path} : {exc}")


class DimsResult(BaseModel):
    surface: str
    statesum: int
    surgery: int
    verlinde: Optional[str] = None


def _marked_object(engine: Engine, surface: SurfaceSpec) -> tuple[CenterObject, str]:
    center, group = engine.simples.center, engine.group
    parts, degree = [], group.unit
    for m in surface.marks:
        try:
            j = engine.simple(m.color)
        except KeyError as exc:
            raise SceneValidationError(str(exc), "marks")
        parts.append(j if m.sign > 0 else center.dual(j))
        degree = group.mul(degree, j.degree if m.sign > 0 else group.inv(j.degree))
    return center.tensor_all(parts), degree


def check_relation(engine: Engine, surface: SurfaceSpec) -> None:
    group = engine.group
    for g in surface.alphas + surface.betas:
        if g not in group.elements:
            raise SceneValidationError(f"{g} n'est pas un élément du groupe.", "relation")
    total = group.product(group.commutator(a, b) for a, b in zip(surface.alphas, surface.betas))
    _, marked = _marked_object(engine, surface)
    total = group.mul(total, marked)
    if total != group.unit:
        raise SceneValidationError(f"Le produit des commutateurs et des méridiens vaut {total}, pas 1.", "relation")


def handle_object(engine: Engine, alpha: str, j: CenterObject) -> CenterObject:
    """phi_alpha(J)* J."""
    center = engine.simples.center
    return center.tensor(center.dual(engine.crossing.phi(alpha, j)), j)


# =============================================================================
# COMMUTATOR OBJECTS
# =============================================================================


def _conjugates(cat: FusionCategory, x: str, z: str) -> list[tuple[str, Morphism, Morphism]]:
    """(y, e, e') with e running over a basis of Hom(z* x z, y) and e' over the dual basis."""
    triple = ((cat.dual(z), x, z),)
    out = []
    for y in cat.simples:
        down = cat.hom_basis(triple, ((y,),))
        up = cat.hom_basis(((y,),), triple)
        out.extend((y, e, f) for e, f in zip(down, up))
    return out


def _transpose(cat: FusionCategory, f: Morphism) -> Morphism:
    """f*: B* -> A* for f: A -> B."""
    ad, bd = cat.dual_obj(f.src), cat.dual_obj(f.tgt)
    opened = cat.id_tensor(bd, cat.coev(f.src))
    moved = cat.id_tensor(bd, f, ad)
    return cat.tensor(cat.ev(f.tgt), cat.identity(ad)) @ moved @ opened


def _through(cat: FusionCategory, x: Obj, z: str, e: Morphism) -> Morphism:
    """x z -> z y: open z z* on the left of x, then project z* x z with e."""
    zo = ((z,),)
    return cat.id_tensor(zo, e) @ cat.tensor(cat.coev(zo), cat.identity(obj_tensor(x, zo)))


def _crossings(cat: FusionCategory, x: str, z: str) -> list[tuple[str, Morphism, Morphism]]:
    """(y, x z -> z y, x* z -> z y*) for the conjugates y of x by z, dual bases paired."""
    out = []
    for y, e, f in _conjugates(cat, x, z):
        out.append((y, _through(cat, ((x,),), z, e), _through(cat, ((cat.dual(x),),), z, _transpose(cat, f))))
    return out


def commutator_object(engine: Engine, alpha: str, beta: str) -> CenterObject:
    """C_{alpha,beta}: the sum of i* j* i j over i of degree alpha and j of degree beta.

    A simple z of the trivial component crosses the word letter by letter:
    each letter x becomes a simple y of z* x z through a basis e of
    Hom(z* x z, y), the dual letter x* becomes y* through the transposed
    dual basis, and the bases of i and i* (j and j*) are summed together.
    """
    cat, center = engine.cat, engine.simples.center
    pairs = [(i, j) for i in cat.simples_of_degree(alpha) for j in cat.simples_of_degree(beta)]
    obj: Obj = tuple((cat.dual(i), cat.dual(j), i, j) for i, j in pairs)
    index = {pair: n for n, pair in enumerate(pairs)}
    sigma = {}
    for z in center.trivial:
        zo = ((z,),)
        moves = {x: _crossings(cat, x, z) for x in {i for i, _ in pairs} | {j for _, j in pairs}}
        comps: dict[tuple[int, int], Morphism] = {}
        for (i, j), s in index.items():
            idd, jd = cat.dual(i), cat.dual(j)
            for k, plain_i, starred_i in moves[i]:
                for l, plain_j, starred_j in moves[j]:
                    step = cat.id_tensor(((idd, jd, i),), plain_j)
                    step = cat.id_tensor(((idd, jd),), plain_i, ((l,),)) @ step
                    step = cat.id_tensor(((idd,),), starred_j, ((k, l),)) @ step
                    step = cat.tensor(starred_i, cat.identity(((cat.dual(l), k, l),))) @ step
                    key = (index[(k, l)], s)
                    comps[key] = comps[key] + step if key in comps else step
        sigma[z] = Morphism.assemble(cat, obj_tensor(obj, zo), obj_tensor(zo, obj), comps)
    logger.debug("C(%s, %s) has %d summands", alpha, beta, len(obj))
    return CenterObject(f"C({alpha},{beta})", obj, engine.group.commutator(alpha, beta), sigma)


def surgery_dim(engine: Engine, surface: SurfaceSpec) -> int:
    center = engine.simples.center
    marked, _ = _marked_object(engine, surface)
    choices = [engine.simples.of_degree(b) for b in surface.betas]
    total = 0
    for picked in product(*choices):
        parts = [handle_object(engine, a, j) for a, j in zip(surface.alphas, picked)]
        total += center.hom_dim(center.unit, center.tensor_all(parts + [marked]))
    return total


def statesum_dim(engine: Engine, surface: SurfaceSpec) -> int:
    center = engine.simples.center
    marked, _ = _marked_object(engine, surface)
    handles = [commutator_object(engine, a, b) for a, b in zip(surface.alphas, surface.betas)]
    return center.hom_dim(center.unit, center.tensor_all(handles + [marked]))


def verlinde_count(engine: Engine, genus: int) -> Scalar:
    """sum over simples J of Z_1 of (Delta / dim J)^(2g-2)."""
    center = engine.simples.center
    delta = engine.neutral_dim
    total = Scalar.zero(engine.cat.conductor)
    for j in engine.simples.of_degree(engine.group.unit):
        total = total + (delta / center.dim(j)) ** (2 * genus - 2)
    return total


def state_space_dims(engine: Engine, surface: SurfaceSpec) -> DimsResult:
    """Both dimensions of the state space; they must agree.

    Raises:
        SceneValidationError: the relation does not hold in G.
        IdentityFailure: the two dimensions differ.
    """
    check_relation(engine, surface)
    surgery = surgery_dim(engine, surface)
    statesum = statesum_dim(engine, surface)
    if surgery != statesum:
        sentry_sdk.capture_message(f"Dimension mismatch on {surface.name}", level="warning")
        raise IdentityFailure(f"dimensions de {surface.name}", str(statesum), str(surgery))
    verlinde = None
    if len(engine.group) == 1 and not surface.marks:
        count = verlinde_count(engine, surface.genus)
        if count != Scalar.rational(surgery, engine.cat.conductor):
            raise IdentityFailure(f"Verlinde en genre {surface.genus}", str(count), str(surgery))
        verlinde = str(count)
    logger.debug("%s: dimension %d", surface.name, surgery)
    return DimsResult(surface=surface.name, statesum=statesum, surgery=surgery, verlinde=verlinde)
