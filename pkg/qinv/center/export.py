"""
Center data files: export and import of the simples of Z_G(C).

Business rules:
- The file names the category it was built from; importing it against a
  different category (name or conductor) is refused.
- Each simple is stored with its degree, its underlying words and, for
  every simple c of the trivial component, the blocks of sigma_c as
  scalar strings. Zero blocks are dropped.
- Importing rebuilds the CenterSimples exactly; export(import(f)) == f.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any, Union

from pydantic import BaseModel, ConfigDict, ValidationError

from qinv.algebra.matrix import Mat
from qinv.algebra.scalar import parse_scalar
from qinv.center.objects import Center, CenterObject
from qinv.center.simples import CenterSimples
from qinv.exceptions import SpecFormatError
from qinv.fusion.category import FusionCategory
from qinv.fusion.morphism import Morphism, obj_tensor


class SimpleFile(BaseModel):
    model_config = ConfigDict(extra="forbid")

    name: str
    degree: str
    words: list[list[str]]
    sigma: dict[str, dict[str, list[list[str]]]]


class CenterFile(BaseModel):
    model_config = ConfigDict(extra="forbid")

    category: str
    conductor: int
    simples: list[SimpleFile]


def center_to_dict(simples: CenterSimples) -> dict[str, Any]:
    cat = simples.cat
    entries = []
    for j in simples.all():
        sigma = {}
        for c in simples.center.trivial:
            blocks = {}
            for charge, m in sorted(j.sigma[c].blocks.items(), key=lambda kv: cat.index(kv[0])):
                if m.is_zero():
                    continue
                blocks[charge] = [[str(m[r, k]) for k in range(m.cols)] for r in range(m.rows)]
            sigma[c] = blocks
        entries.append({"name": j.name, "degree": j.degree, "words": [list(w) for w in j.obj], "sigma": sigma})
    return {"category": cat.name, "conductor": cat.conductor, "simples": entries}


def dump_center(simples: CenterSimples) -> str:
    return json.dumps(center_to_dict(simples), indent=2, ensure_ascii=False) + "\n"


def save_center(simples: CenterSimples, path: Union[str, Path]) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(dump_center(simples), encoding="utf-8")
    return path


def parse_center(cat: FusionCategory, data: Union[str, bytes, dict[str, Any]]) -> CenterSimples:
    """Rebuild CenterSimples over cat from exported data.

    Raises:
        SpecFormatError: malformed file, or data exported from another category.
    """
    try:
        raw = CenterFile.model_validate(data) if isinstance(data, dict) else CenterFile.model_validate_json(data)
    except ValidationError as exc:
        raise SpecFormatError(f"Fichier de centre mal formé : {exc.errors()[0]['loc']} {exc.errors()[0]['msg']}")
    if raw.category != cat.name or raw.conductor != cat.conductor:
        raise SpecFormatError(f"Centre exporté pour {raw.category}, pas pour {cat.name}.")

    center = Center(cat)
    result = CenterSimples(center)
    for entry in raw.simples:
        if entry.degree not in cat.group.elements:
            raise SpecFormatError(f"Degré inconnu '{entry.degree}' pour {entry.name}.")
        obj = tuple(tuple(w) for w in entry.words)
        if entry.name == center.unit.name and obj == center.unit.obj:
            result.by_degree.setdefault(entry.degree, []).append(center.unit)
            continue
        sigma = {}
        for c in center.trivial:
            y = ((c,),)
            src, tgt = obj_tensor(obj, y), obj_tensor(y, obj)
            blocks = {}
            for charge, rows in entry.sigma.get(c, {}).items():
                if charge not in cat.simples:
                    raise SpecFormatError(f"Charge inconnue '{charge}' dans {entry.name}.")
                values = [[parse_scalar(x, cat.conductor) for x in row] for row in rows]
                expected = (len(cat.basis(tgt, charge)), len(cat.basis(src, charge)))
                if (len(values), len(values[0]) if values else 0) != expected:
                    raise SpecFormatError(f"Bloc {charge} de sigma_{c}({entry.name}) de mauvaise taille.")
                blocks[charge] = Mat(values, expected[1], cat.conductor)
            sigma[c] = Morphism(cat, src, tgt, blocks)
        j = CenterObject(entry.name, obj, entry.degree, sigma)
        result.by_degree.setdefault(entry.degree, []).append(j)
    for alpha in cat.group.elements:
        if not result.by_degree.get(alpha):
            raise SpecFormatError(f"Aucun simple de degré {alpha} dans le fichier de centre.")
    return result


def load_center(cat: FusionCategory, path: Union[str, Path]) -> CenterSimples:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise SpecFormatError(f"Lecture impossible de {path} : {exc}")
    return parse_center(cat, text)
