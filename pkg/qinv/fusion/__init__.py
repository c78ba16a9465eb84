"""Graded fusion categories: groups, specs, morphisms and axiom checks."""

from qinv.fusion.category import FusionCategory
from qinv.fusion.group import FiniteGroup
from qinv.fusion.morphism import UNIT_OBJ, Morphism, Obj, Word, obj_product, obj_sum, obj_tensor, word
from qinv.fusion.spec import CategorySpec, dump_category, load_category, parse_category, save_category
from qinv.fusion.validate import CheckReport, validate

__all__ = [
    # Groups and categories
    "FiniteGroup",
    "FusionCategory",
    # Objects and morphisms
    "UNIT_OBJ",
    "Morphism",
    "Obj",
    "Word",
    "obj_product",
    "obj_sum",
    "obj_tensor",
    "word",
    # Category files
    "CategorySpec",
    "dump_category",
    "load_category",
    "parse_category",
    "save_category",
    # Axioms
    "CheckReport",
    "validate",
]
