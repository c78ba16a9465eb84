"""
Bundled category specs and their seeding utilities.

This module builds the reference categories the engine ships with, plus
mutated copies that each break exactly one axiom. `write_seed_files`
writes them (and the bundled scenes) as JSON under the data directory.
"""

from __future__ import annotations

import copy
from pathlib import Path
from typing import Callable, Optional

from qinv.algebra.scalar import Scalar
from qinv.fusion.group import FiniteGroup
from qinv.fusion.spec import CategorySpec, save_category

Cocycle = Callable[[str, str, str], Scalar]


# =============================================================================
# POINTED CATEGORIES
# =============================================================================
# Vec_G^omega: simples are group elements, fusion is the group law and
# F^{abc}_{abc} = omega(a, b, c). With p_a = omega(a, a^-1, a) every
# dimension is 1.


def cyclic_cocycle(n: int, k: int) -> Cocycle:
    """omega(a, b, c) = zeta_n^(k a [b + c >= n]) on Z/n."""

    def omega(a: str, b: str, c: str) -> Scalar:
        x, y, z = int(a), int(b), int(c)
        return Scalar.zeta(n, k * x * (1 if y + z >= n else 0))

    return omega


def sign_cocycle(group: FiniteGroup) -> Cocycle:
    """Pullback of the nontrivial Z/2 cocycle along the sign of S_3."""

    def parity(p: str) -> int:
        perm = [int(ch) for ch in p]
        inversions = sum(1 for i in range(3) for j in range(i + 1, 3) if perm[i] > perm[j])
        return inversions % 2

    def omega(a: str, b: str, c: str) -> Scalar:
        return Scalar.rational(-1 if parity(a) * parity(b) * parity(c) else 1)

    return omega


def trivial_cocycle(a: str, b: str, c: str) -> Scalar:
    return Scalar.one()


def coboundary(group: FiniteGroup, beta: Callable[[str, str], Scalar], conductor: int) -> Cocycle:
    """delta beta (a, b, c) = beta(b, c) beta(a, bc) / (beta(ab, c) beta(a, b))."""

    def omega(a: str, b: str, c: str) -> Scalar:
        m = group.mul
        num = beta(b, c) * beta(a, m(b, c))
        den = beta(m(a, b), c) * beta(a, b)
        return (num / den).lift(conductor)

    return omega


def pointed_spec(
    name: str,
    group: FiniteGroup,
    omega: Cocycle,
    conductor: int,
    grading: Optional[FiniteGroup] = None,
    degree_of: Optional[Callable[[str], str]] = None,
    description: str = "",
) -> CategorySpec:
    """Vec_G^omega graded by G itself, or by `grading` through `degree_of`."""
    grading = grading or group
    degree_of = degree_of or (lambda g: g)
    u = group.unit
    labels = group.elements
    fusion = {}
    for a in labels:
        for b in labels:
            fusion[(a, b, group.mul(a, b))] = 1
    fsymbols = {}
    for a in labels:
        for b in labels:
            for c in labels:
                if u in (a, b, c):
                    continue
                ab, bc = group.mul(a, b), group.mul(b, c)
                d = group.mul(ab, c)
                fsymbols[(a, b, c, d)] = {((ab, 0, 0), (bc, 0, 0)): omega(a, b, c).lift(conductor)}
    pivotal = {}
    for a in labels:
        pivotal[a] = omega(a, group.inv(a), a).lift(conductor)
    return CategorySpec(
        name=name,
        description=description,
        group=grading,
        conductor=conductor,
        simples=labels,
        unit=u,
        degree={a: degree_of(a) for a in labels},
        dual={a: group.inv(a) for a in labels},
        fusion=fusion,
        fsymbols=fsymbols,
        pivotal=pivotal,
        dims={a: Scalar.one(conductor) for a in labels},
    )


def vec_z2(twisted: bool = False) -> CategorySpec:
    g = FiniteGroup.cyclic(2)
    if twisted:
        return pointed_spec("vec_z2_omega", g, cyclic_cocycle(2, 1), 4, description="Vec_{Z/2} tordu")
    return pointed_spec("vec_z2", g, trivial_cocycle, 2, description="Vec_{Z/2}")


def vec_z3(twisted: bool = False) -> CategorySpec:
    g = FiniteGroup.cyclic(3)
    if twisted:
        return pointed_spec("vec_z3_omega", g, cyclic_cocycle(3, 1), 3, description="Vec_{Z/3} tordu")
    return pointed_spec("vec_z3", g, trivial_cocycle, 3, description="Vec_{Z/3}")


def vec_s3(twisted: bool = False) -> CategorySpec:
    g = FiniteGroup.symmetric3()
    if twisted:
        return pointed_spec("vec_s3_omega", g, sign_cocycle(g), 1, description="Vec_{S3} tordu par le signe")
    return pointed_spec("vec_s3", g, trivial_cocycle, 1, description="Vec_{S3}")


def toric_code() -> CategorySpec:
    """Vec_{Z/2} graded by the trivial group: its center is the toric code."""
    g = FiniteGroup.cyclic(2)
    trivial = FiniteGroup.trivial()
    return pointed_spec(
        "toric", g, trivial_cocycle, 1, grading=trivial, degree_of=lambda _: trivial.unit,
        description="Vec_{Z/2}, graduation triviale",
    )


def vec_z4_over_z2(gauged: bool = False) -> CategorySpec:
    """Vec_{Z/4} graded by Z/2 (k mod 2); optionally with a coboundary gauge."""
    z4, z2 = FiniteGroup.cyclic(4), FiniteGroup.cyclic(2)
    conductor = 4
    if gauged:
        i = Scalar.zeta(4)

        def beta(a: str, b: str) -> Scalar:
            return i if (a, b) == ("1", "1") else Scalar.one(4)

        omega = coboundary(z4, beta, conductor)
        name, text = "vec_z4_z2_gauged", "Vec_{Z/4}/Z2, jauge beta(1,1) = i"
    else:
        omega, name, text = trivial_cocycle, "vec_z4_z2", "Vec_{Z/4} gradué par Z/2"
    return pointed_spec(
        name, z4, omega, conductor, grading=z2, degree_of=lambda a: str(int(a) % 2), description=text
    )


# =============================================================================
# FIBONACCI
# =============================================================================
# phi = 1 + z + z^4 in Q(zeta_5); F^{ttt}_t = [[phi^-1, 1], [phi^-1, -phi^-1]]
# with rows e in (1, t) and columns f in (1, t).


def golden(conductor: int = 5) -> Scalar:
    return Scalar([1, 1, 0, 0, 1], 5).lift(conductor)


def fibonacci() -> CategorySpec:
    n = 5
    phi = golden()
    phi_inv = phi - 1
    group = FiniteGroup.trivial()
    e = group.unit
    fusion = {("t", "t", "1"): 1, ("t", "t", "t"): 1}
    for a in ("1", "t"):
        fusion[("1", a, a)] = 1
        fusion[(a, "1", a)] = 1
    fsymbols = {
        ("t", "t", "t", "t"): {
            (("1", 0, 0), ("1", 0, 0)): phi_inv,
            (("1", 0, 0), ("t", 0, 0)): Scalar.one(n),
            (("t", 0, 0), ("1", 0, 0)): phi_inv,
            (("t", 0, 0), ("t", 0, 0)): -phi_inv,
        },
        ("t", "t", "t", "1"): {(("t", 0, 0), ("t", 0, 0)): Scalar.one(n)},
    }
    return CategorySpec(
        name="fibonacci",
        description="Fibonacci, t x t = 1 + t",
        group=group,
        conductor=n,
        simples=("1", "t"),
        unit="1",
        degree={"1": e, "t": e},
        dual={"1": "1", "t": "t"},
        fusion=fusion,
        fsymbols=fsymbols,
        pivotal={"1": Scalar.one(n), "t": Scalar.one(n)},
        dims={"1": Scalar.one(n), "t": phi},
    )


# =============================================================================
# MUTATIONS
# =============================================================================
# Each mutated spec breaks exactly one axiom; the key is the axiom name.


def _mutant(base: CategorySpec, name: str) -> CategorySpec:
    spec = copy.deepcopy(base)
    spec.name = name
    return spec


def mutations() -> dict[str, CategorySpec]:
    out = {}

    spec = _mutant(vec_z3(), "bad_pentagon")
    spec.fsymbols[("1", "1", "2", "1")] = {(("2", 0, 0), ("0", 0, 0)): Scalar.rational(-1, 3)}
    out["pentagon"] = spec

    spec = _mutant(vec_z4_over_z2(), "bad_grading")
    spec.degree["1"] = "0"
    spec.degree["3"] = "0"
    out["grading"] = spec

    spec = _mutant(toric_code(), "bad_fusion")
    del spec.fusion[("1", "1", "0")]
    spec.fusion[("1", "1", "1")] = 1
    spec.fsymbols = {}
    out["fusion"] = spec

    spec = _mutant(vec_z2(), "bad_unit")
    spec.fsymbols[("0", "1", "1", "0")] = {(("1", 0, 0), ("0", 0, 0)): Scalar.rational(-1, 2)}
    out["unit"] = spec

    spec = _mutant(fibonacci(), "bad_dimension")
    spec.dims["t"] = Scalar.one(5)
    out["dimension"] = spec

    spec = _mutant(vec_z3(), "bad_pivotal")
    spec.pivotal["1"] = Scalar.zeta(3)
    spec.dims = {}
    out["pivotal"] = spec

    spec = _mutant(vec_z3(), "bad_spherical")
    spec.pivotal["1"] = Scalar.zeta(3)
    spec.pivotal["2"] = Scalar.zeta(3, 2)
    spec.dims = {"0": Scalar.one(3), "1": Scalar.zeta(3, 2), "2": Scalar.zeta(3)}
    out["spherical"] = spec

    return out


# =============================================================================
# REGISTRY
# =============================================================================

BUNDLED_CATEGORIES: dict[str, Callable[[], CategorySpec]] = {
    "vec_z2": vec_z2,
    "vec_z2_omega": lambda: vec_z2(True),
    "vec_z3": vec_z3,
    "vec_z3_omega": lambda: vec_z3(True),
    "vec_s3": vec_s3,
    "vec_s3_omega": lambda: vec_s3(True),
    "toric": toric_code,
    "fibonacci": fibonacci,
    "vec_z4_z2": vec_z4_over_z2,
    "vec_z4_z2_gauged": lambda: vec_z4_over_z2(True),
}


def bundled(name: str) -> CategorySpec:
    try:
        return BUNDLED_CATEGORIES[name]()
    except KeyError:
        raise KeyError(f"Catégorie inconnue : {name}. Disponibles : {', '.join(sorted(BUNDLED_CATEGORIES))}")


def write_seed_files(data_dir: Path) -> list[Path]:
    """Write every bundled category, mutation and scene under data_dir."""
    from qinv.manifolds.library import write_bundled_scenes

    written = []
    for name, build in BUNDLED_CATEGORIES.items():
        written.append(save_category(build(), data_dir / "cats" / f"{name}.cat"))
    for axiom, spec in mutations().items():
        written.append(save_category(spec, data_dir / "mutations" / f"{axiom}.cat"))
    written.extend(write_bundled_scenes(data_dir))
    return written
