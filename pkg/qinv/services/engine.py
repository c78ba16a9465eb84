"""
The engine: one validated category and the center data built on demand.

Business rules:
- A category is named either by a bundled name or by the path of a .cat
  file; it is validated before anything else is built.
- The center simples, the crossing, the G-braiding and the modular data
  are built at most once per engine, in that order, each from the
  previous one. The simples may be read from an exported center file.
- Modular data is only needed by the surgery side; an anomalous category
  still supports state sums.
"""

from __future__ import annotations

import logging
import threading
from pathlib import Path
from typing import Optional, Union

from qinv import seeds
from qinv.algebra.scalar import Scalar
from qinv.center.braiding import Braiding
from qinv.center.crossing import Crossing
from qinv.center.export import load_center, save_center
from qinv.center.modular import ModularData, build_modular_data
from qinv.center.objects import CenterObject
from qinv.center.simples import CenterSimples, build_simples
from qinv.config import RunConfig
from qinv.exceptions import SpecFormatError
from qinv.fusion.category import FusionCategory
from qinv.fusion.spec import CategorySpec, load_category
from qinv.fusion.validate import CheckReport, validate
from qinv.graphs.strip import StripEvaluator

logger = logging.getLogger(__name__)


def resolve_category(name_or_path: Union[str, Path]) -> CategorySpec:
    """Bundled category by name, or a category file.

    Raises:
        SpecFormatError: neither a bundled name nor a readable file.
    """
    text = str(name_or_path)
    if text in seeds.BUNDLED_CATEGORIES:
        return seeds.bundled(text)
    path = Path(text)
    if not path.exists():
        raise SpecFormatError(
            f"Catégorie introuvable : {text}. Noms disponibles : {', '.join(sorted(seeds.BUNDLED_CATEGORIES))}"
        )
    return load_category(path)


class Engine:
    """Lazily built center data over a validated category."""

    def __init__(
        self,
        cat: FusionCategory,
        report: Optional[CheckReport] = None,
        config: Optional[RunConfig] = None,
        center_file: Optional[Path] = None,
    ):
        self.cat = cat
        self.report = report
        self.config = config or RunConfig()
        self.center_file = center_file
        self._lock = threading.RLock()
        self._simples: Optional[CenterSimples] = None
        self._crossing: Optional[Crossing] = None
        self._braiding: Optional[Braiding] = None
        self._modular: Optional[ModularData] = None
        self._evaluator: Optional[StripEvaluator] = None

    @property
    def group(self):
        return self.cat.group

    @property
    def simples(self) -> CenterSimples:
        with self._lock:
            if self._simples is None:
                if self.center_file is not None:
                    self._simples = load_center(self.cat, self.center_file)
                    logger.debug("center of %s read from %s", self.cat.name, self.center_file)
                else:
                    self._simples = build_simples(self.cat, self.config)
            return self._simples

    @property
    def crossing(self) -> Crossing:
        with self._lock:
            if self._crossing is None:
                self._crossing = Crossing(self.simples)
            return self._crossing

    @property
    def braiding(self) -> Braiding:
        with self._lock:
            if self._braiding is None:
                self._braiding = Braiding(self.crossing)
            return self._braiding

    @property
    def modular(self) -> ModularData:
        with self._lock:
            if self._modular is None:
                self._modular = build_modular_data(self.braiding)
            return self._modular

    @property
    def evaluator(self) -> StripEvaluator:
        with self._lock:
            if self._evaluator is None:
                self._evaluator = StripEvaluator(self.braiding)
            return self._evaluator

    @property
    def neutral_dim(self) -> Scalar:
        """dim(C_1), the normalization of the state sum."""
        return self.cat.dim_component(self.group.unit)

    def simple(self, name: str) -> CenterObject:
        return self.simples.by_name(name)

    def export_center(self, path: Path) -> Path:
        return save_center(self.simples, path)


def load_engine(
    name_or_path: Union[str, Path],
    config: Optional[RunConfig] = None,
    center_file: Optional[Path] = None,
) -> Engine:
    """Validate a category and wrap it in an engine.

    Raises:
        SpecFormatError: unreadable category.
        AxiomError: the first failing axiom.
    """
    spec = resolve_category(name_or_path)
    cat, report = validate(spec)
    return Engine(cat, report, config, center_file)
