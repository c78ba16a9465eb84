"""
The G-center Z_G(C): simples per degree, crossing, G-braiding, modular data.
"""

from qinv.center.braiding import Braiding, check_braiding
from qinv.center.crossing import Crossing, check_crossing
from qinv.center.export import dump_center, load_center, parse_center, save_center
from qinv.center.modular import ModularData, build_modular_data
from qinv.center.objects import Center, CenterObject
from qinv.center.simples import CenterSimples, build_simples, check_simples

__all__ = [
    # Objects
    "Center",
    "CenterObject",
    # Simples
    "CenterSimples",
    "build_simples",
    "check_simples",
    # Crossing
    "Crossing",
    "check_crossing",
    # Braiding
    "Braiding",
    "check_braiding",
    # Modular data
    "ModularData",
    "build_modular_data",
    # Files
    "dump_center",
    "load_center",
    "parse_center",
    "save_center",
]
