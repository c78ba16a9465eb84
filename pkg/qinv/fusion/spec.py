"""
Category spec files: parsing and canonical dumping.

Business rules:
- A spec file is JSON; its shape is checked with pydantic before any
  algebra is attempted, and shape errors surface as SpecFormatError.
- Unit fusion rules (1 x a = a = a x 1) are implied and may be omitted.
- F-symbol entries with a unit leg are optional; when present they are
  kept so the validator can check them against the identity.
- Zero F entries are dropped; the canonical dump is stable, so
  dump(parse(dump(spec))) == dump(spec) byte for byte.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Union

from pydantic import BaseModel, ConfigDict, Field, ValidationError

from qinv.algebra.scalar import Scalar, parse_scalar
from qinv.exceptions import FusionError, GradingError, SpecFormatError
from qinv.fusion.group import FiniteGroup

# (intermediate label, upper multiplicity, lower multiplicity)
TreeKey = tuple[str, int, int]
FKey = tuple[str, str, str, str]


# =====================================================================
# FILE SHAPE
# =====================================================================


class GroupFile(BaseModel):
    model_config = ConfigDict(extra="forbid")

    elements: list[str]
    table: list[list[str]]


class CategoryFile(BaseModel):
    model_config = ConfigDict(extra="forbid")

    name: str
    description: str = ""
    conductor: int = Field(ge=1)
    group: GroupFile
    simples: list[str]
    unit: str
    degree: dict[str, str]
    dual: dict[str, str]
    fusion: list[tuple[str, str, str, int]] = []
    F: list[tuple[str, str, str, str, tuple[str, int, int], tuple[str, int, int], str]] = []
    pivotal: dict[str, str]
    dims: dict[str, str] = {}


# =====================================================================
# SPEC
# =====================================================================


@dataclass
class CategorySpec:
    """Raw data of a G-graded spherical fusion category, before validation."""

    name: str
    group: FiniteGroup
    conductor: int
    simples: tuple[str, ...]
    unit: str
    degree: dict[str, str]
    dual: dict[str, str]
    fusion: dict[tuple[str, str, str], int]
    fsymbols: dict[FKey, dict[tuple[TreeKey, TreeKey], Scalar]]
    pivotal: dict[str, Scalar]
    dims: dict[str, Scalar] = field(default_factory=dict)
    description: str = ""

    def index(self, label: str) -> int:
        return self.simples.index(label)

    def is_unit_leg(self, key: FKey) -> bool:
        return self.unit in key[:3]


def _check_label(label: str, simples: set[str], where: str) -> None:
    if label not in simples:
        raise SpecFormatError(f"Objet simple inconnu '{label}' dans {where}.")


def parse_category(data: Union[str, bytes, dict[str, Any]]) -> CategorySpec:
    try:
        if isinstance(data, dict):
            raw = CategoryFile.model_validate(data)
        else:
            raw = CategoryFile.model_validate_json(data)
    except ValidationError as exc:
        raise SpecFormatError(f"Fichier de catégorie mal formé : {exc.errors()[0]['loc']} {exc.errors()[0]['msg']}")

    group = FiniteGroup.from_table(raw.group.elements, raw.group.table)
    simples = tuple(raw.simples)
    known = set(simples)
    if len(known) != len(simples):
        raise SpecFormatError("Objets simples en double.")
    _check_label(raw.unit, known, "unit")
    n = raw.conductor

    for label in simples:
        if label not in raw.degree:
            raise GradingError(f"Degré manquant pour '{label}'.")
        if raw.degree[label] not in group.elements:
            raise GradingError(f"Degré '{raw.degree[label]}' de '{label}' hors du groupe.")
        if label not in raw.dual:
            raise FusionError(f"Dual manquant pour '{label}'.")
        _check_label(raw.dual[label], known, "dual")
        if label not in raw.pivotal:
            raise SpecFormatError(f"Structure pivotale manquante pour '{label}'.")

    fusion: dict[tuple[str, str, str], int] = {}
    for a in simples:
        fusion[(raw.unit, a, a)] = 1
        fusion[(a, raw.unit, a)] = 1
    for a, b, c, mult in raw.fusion:
        for x in (a, b, c):
            _check_label(x, known, "fusion")
        if mult < 0:
            raise SpecFormatError(f"Multiplicité négative N_{a}{b}^{c}.")
        if raw.unit in (a, b):
            expected = 1 if c == (b if a == raw.unit else a) else 0
            if mult != expected:
                raise FusionError(f"Règle d'unité violée : N_{a},{b}^{c} = {mult}.")
            continue
        if mult:
            fusion[(a, b, c)] = mult

    fsymbols: dict[FKey, dict[tuple[TreeKey, TreeKey], Scalar]] = {}
    for a, b, c, d, left, right, text in raw.F:
        for x in (a, b, c, d, left[0], right[0]):
            _check_label(x, known, "F")
        value = parse_scalar(text, n)
        if value.is_zero():
            continue
        fsymbols.setdefault((a, b, c, d), {})[(tuple(left), tuple(right))] = value

    return CategorySpec(
        name=raw.name,
        description=raw.description,
        group=group,
        conductor=n,
        simples=simples,
        unit=raw.unit,
        degree=dict(raw.degree),
        dual=dict(raw.dual),
        fusion=fusion,
        fsymbols=fsymbols,
        pivotal={k: parse_scalar(v, n) for k, v in raw.pivotal.items()},
        dims={k: parse_scalar(v, n) for k, v in raw.dims.items()},
    )


def spec_to_dict(spec: CategorySpec) -> dict[str, Any]:
    idx = spec.index

    def lift(s: Scalar) -> str:
        return str(s.lift(spec.conductor) if s.conductor != spec.conductor else s)

    fusion = sorted(
        [[a, b, c, m] for (a, b, c), m in spec.fusion.items() if m and spec.unit not in (a, b)],
        key=lambda r: (idx(r[0]), idx(r[1]), idx(r[2])),
    )
    entries = []
    for (a, b, c, d), table in spec.fsymbols.items():
        for (left, right), value in table.items():
            entries.append([a, b, c, d, list(left), list(right), lift(value)])
    entries.sort(
        key=lambda r: (
            idx(r[0]), idx(r[1]), idx(r[2]), idx(r[3]),
            idx(r[4][0]), r[4][1], r[4][2],
            idx(r[5][0]), r[5][1], r[5][2],
        )
    )
    return {
        "name": spec.name,
        "description": spec.description,
        "conductor": spec.conductor,
        "group": {"elements": list(spec.group.elements), "table": spec.group.rows()},
        "simples": list(spec.simples),
        "unit": spec.unit,
        "degree": dict(spec.degree),
        "dual": dict(spec.dual),
        "fusion": fusion,
        "F": entries,
        "pivotal": {k: lift(v) for k, v in spec.pivotal.items()},
        "dims": {k: lift(v) for k, v in spec.dims.items()},
    }


def dump_category(spec: CategorySpec) -> str:
    return json.dumps(spec_to_dict(spec), indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def load_category(path: Union[str, Path]) -> CategorySpec:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise SpecFormatError(f"Lecture impossible de {path} : {exc}")
    return parse_category(text)


def save_category(spec: CategorySpec, path: Union[str, Path]) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(dump_category(spec), encoding="utf-8")
    return path
