"""
Axiom checks for category specs.

Business rules:
- Checks run in a fixed order (grading, fusion, unit, pentagon, pivotal,
  dimension, spherical) and stop at the first violated axiom, raising the
  matching AxiomError subclass with the offending indices.
- A spec that passes every check is returned as a FusionCategory together
  with the report of the checks that ran.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

import sentry_sdk

from qinv.algebra.matrix import Mat
from qinv.algebra.scalar import Scalar
from qinv.exceptions import (
    DimensionError,
    FusionError,
    GradingError,
    PentagonError,
    PivotalError,
    SphericalityError,
    UnitError,
)
from qinv.fusion.category import FusionCategory
from qinv.fusion.morphism import Morphism
from qinv.fusion.spec import CategorySpec

logger = logging.getLogger(__name__)

CHECK_ORDER = ("group", "grading", "fusion", "unit", "pentagon", "pivotal", "dimension", "spherical")


@dataclass
class CheckReport:
    name: str
    passed: list[str] = field(default_factory=list)

    def add(self, check: str) -> None:
        self.passed.append(check)

    def summary(self) -> str:
        return ", ".join(f"{c}: ok" for c in self.passed)


# =====================================================================
# INDIVIDUAL CHECKS
# =====================================================================


def _check_grading(cat: FusionCategory) -> None:
    g = cat.group
    if cat.deg(cat.unit) != g.unit:
        raise GradingError(f"L'unité '{cat.unit}' n'est pas de degré neutre.")
    for a in cat.simples:
        if cat.deg(cat.dual(a)) != g.inv(cat.deg(a)):
            raise GradingError(f"deg({cat.dual(a)}) != deg({a})^-1.")
    for alpha in g.elements:
        if not cat.simples_of_degree(alpha):
            raise GradingError(f"Composante de degré {alpha} vide : graduation non fidèle.")
    for (a, b, c), m in cat.spec.fusion.items():
        if m and cat.deg(c) != g.mul(cat.deg(a), cat.deg(b)):
            raise GradingError(f"N_{a},{b}^{c} = {m} mais deg({c}) != deg({a}) deg({b}).")


def _check_fusion(cat: FusionCategory) -> None:
    u = cat.unit
    if cat.dual(u) != u:
        raise FusionError("L'unité doit être autoduale.")
    for a in cat.simples:
        if cat.dual(cat.dual(a)) != a:
            raise FusionError(f"Dualité non involutive en '{a}'.")
        for b in cat.simples:
            expected = 1 if b == cat.dual(a) else 0
            if cat.N(a, b, u) != expected:
                raise FusionError(f"N_{a},{b}^{u} = {cat.N(a, b, u)}, attendu {expected}.")
    for a in cat.simples:
        for b in cat.simples:
            for c in cat.simples:
                for d in cat.simples:
                    left = sum(cat.N(a, b, e) * cat.N(e, c, d) for e in cat.simples)
                    right = sum(cat.N(b, c, f) * cat.N(a, f, d) for f in cat.simples)
                    if left != right:
                        raise FusionError(f"Règles de fusion non associatives en ({a}, {b}, {c}; {d}).")
    for (a, b, c, d), table in cat.spec.fsymbols.items():
        left = set(cat.left_trees(a, b, c, d))
        right = set(cat.right_trees(a, b, c, d))
        for l, r in table:
            if l not in left or r not in right:
                raise FusionError(f"F^{a}{b}{c}_{d}[{l}, {r}] ne correspond à aucun arbre.")


def _check_unit(cat: FusionCategory) -> None:
    for key, table in cat.spec.fsymbols.items():
        if not cat.spec.is_unit_leg(key):
            continue
        a, b, c, d = key
        for (l, r), value in table.items():
            if value != cat.F(a, b, c, d, l, r):
                raise UnitError(f"Triangle en échec : F^{a}{b}{c}_{d}[{l}, {r}] = {value}, attendu l'identité.")


def _pentagon_at(cat: FusionCategory, a: str, b: str, c: str, d: str, x: str) -> None:
    zero = Scalar.zero(cat.conductor)
    rights = [
        (f, m1, g, m2, m3)
        for f, nf in cat.channels(c, d) for m1 in range(nf)
        for g, ng in cat.channels(b, f) for m2 in range(ng)
        for m3 in range(cat.N(a, g, x))
    ]
    lefts = [
        (e, l1, h, l2, l3)
        for e, ne in cat.channels(a, b) for l1 in range(ne)
        for h, nh in cat.channels(e, c) for l2 in range(nh)
        for l3 in range(cat.N(h, d, x))
    ]
    for e, l1, h, l2, l3 in lefts:
        for f, m1, g, m2, m3 in rights:
            path1 = zero
            for lam in range(cat.N(e, f, x)):
                u = cat.F(a, b, f, x, (e, l1, lam), (g, m2, m3))
                if u:
                    path1 = path1 + u * cat.F(e, c, d, x, (h, l2, l3), (f, m1, lam))
            path2 = zero
            for k, a1, a2 in cat.left_trees(b, c, d, g):
                u = cat.F(b, c, d, g, (k, a1, a2), (f, m1, m2))
                if not u:
                    continue
                for b1 in range(cat.N(a, k, h)):
                    v = cat.F(a, k, d, x, (h, b1, l3), (g, a2, m3))
                    if v:
                        path2 = path2 + u * v * cat.F(a, b, c, h, (e, l1, l2), (k, a1, b1))
            if path1 != path2:
                raise PentagonError(
                    f"Pentagone en échec pour ({a}, {b}, {c}, {d}; {x}), "
                    f"gauche ({e}, {l1}, {h}, {l2}, {l3}), droite ({f}, {m1}, {g}, {m2}, {m3}) : "
                    f"{path1} != {path2}"
                )


def _check_pentagon(cat: FusionCategory) -> None:
    nonunit = [s for s in cat.simples if s != cat.unit]
    for a in nonunit:
        for b in nonunit:
            for c in nonunit:
                for d in cat.simples:
                    left, right, mat = cat.F_matrix(a, b, c, d)
                    if len(left) != len(right) or not mat.is_invertible():
                        raise PentagonError(f"F^{a}{b}{c}_{d} n'est pas inversible.")
    for a in nonunit:
        for b in nonunit:
            for c in nonunit:
                for d in nonunit:
                    for x in cat.simples:
                        _pentagon_at(cat, a, b, c, d, x)


def _check_pivotal(cat: FusionCategory) -> None:
    if cat.pivotal(cat.unit) != 1:
        raise PivotalError("p_1 doit valoir 1.")
    for a in cat.simples:
        if cat.pivotal(a).is_zero():
            raise PivotalError(f"p_{a} est nul.")
    for a in cat.simples:
        x = ((a,),)
        xd = ((cat.dual(a),),)
        zig = cat.tensor(cat.ev(x), cat.identity(xd)) @ cat.tensor(cat.identity(xd), cat.coev(x))
        if zig != cat.identity(xd):
            raise PivotalError(f"Identité zigzag en échec pour '{a}'.")
    for a in cat.simples:
        if cat.dim_left(a) != cat.dim_right(cat.dual(a)):
            raise PivotalError(
                f"dim_l({a}) = {cat.dim_left(a)} != dim_r({cat.dual(a)}) = {cat.dim_right(cat.dual(a))}."
            )


def _check_dimensions(cat: FusionCategory) -> None:
    for a, declared in cat.spec.dims.items():
        if declared != cat.dim(a):
            raise DimensionError(f"Dimension déclarée de '{a}' : {declared}, calculée : {cat.dim(a)}.")
    for a in cat.simples:
        if cat.dim(a).is_zero():
            raise DimensionError(f"Dimension nulle pour '{a}'.")
        for b in cat.simples:
            lhs = cat.dim(a) * cat.dim(b)
            rhs = Scalar.zero(cat.conductor)
            for c, m in cat.channels(a, b):
                rhs = rhs + cat.dim(c) * m
            if lhs != rhs:
                raise DimensionError(f"d_{a} d_{b} = {lhs} != somme des d_c = {rhs}.")
    # pivotal global dimension: sum of d_l(a) d_r(a), equal to sum of d_a^2 once spherical
    total = Scalar.zero(cat.conductor)
    for a in cat.simples:
        total = total + cat.dim_left(a) * cat.dim_right(a)
    if total.is_zero():
        raise DimensionError("dim C = 0.")


def _check_spherical(cat: FusionCategory) -> None:
    for a in cat.simples:
        if cat.dim_left(a) != cat.dim_right(a):
            raise SphericalityError(f"dim_l({a}) = {cat.dim_left(a)} != dim_r({a}) = {cat.dim_right(a)}.")
    for a in cat.simples:
        for b in cat.simples:
            x = ((a, b),)
            for c, m in cat.channels(a, b):
                n = len(cat.basis(x, c))
                for mu in range(m):
                    idx = cat.basis(x, c).index((0, (((c, mu),))))
                    proj = Morphism(cat, x, x, {c: Mat.from_sparse(n, n, {(idx, idx): cat.one}, cat.conductor)})
                    left, right = cat.trace_left(proj), cat.trace_right(proj)
                    if left != right:
                        raise SphericalityError(
                            f"tr_l != tr_r sur le projecteur ({a} x {b} -> {c}, {mu}) : {left} != {right}."
                        )


# =====================================================================
# ENTRY POINT
# =====================================================================


def validate(spec: CategorySpec) -> tuple[FusionCategory, CheckReport]:
    """Run every axiom check; raise on the first failure."""
    cat = FusionCategory(spec)
    report = CheckReport(spec.name)
    report.add("group")
    for name, check in (
        ("grading", _check_grading),
        ("fusion", _check_fusion),
        ("unit", _check_unit),
        ("pentagon", _check_pentagon),
        ("pivotal", _check_pivotal),
        ("dimension", _check_dimensions),
        ("spherical", _check_spherical),
    ):
        logger.debug("checking %s on %s", name, spec.name)
        try:
            check(cat)
        except Exception:
            sentry_sdk.capture_message(f"{spec.name}: {name} check failed", level="warning")
            raise
        report.add(name)
    sentry_sdk.capture_message(f"Category validated: {spec.name}", level="info")
    return cat, report
