"""
Modular data of the neutral component Z_1 of the center.

Business rules:
- S_{ij} = tr(c_{j,i} c_{i,j}) over the simples of Z_1, nu_i the twist
  scalars, Delta_pm = sum of nu_i^(+-1) dim(i)^2.
- S must be symmetric and invertible with S^2 = dim(Z_1) C, C the charge
  conjugation; Delta_+ = Delta_- = dim(C_1) (anomaly-free).
- Delta = dim(C_1) is the canonical rank used by the surgery formula.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

import sentry_sdk

from qinv.algebra.matrix import Mat
from qinv.algebra.scalar import Scalar
from qinv.center.braiding import Braiding
from qinv.center.objects import CenterObject
from qinv.exceptions import AnomalyError, NotModularError

logger = logging.getLogger(__name__)


@dataclass
class ModularData:
    """S-matrix and twists of Z_1.

    Attributes:
        labels: names of the simples of Z_1, in center order.
        dims: their dimensions.
        twists: their twist scalars nu.
        s: the unnormalized S-matrix.
        delta_plus: sum of nu dim^2.
        delta_minus: sum of nu^-1 dim^2.
    """

    labels: list[str]
    dims: list[Scalar]
    twists: list[Scalar]
    s: Mat
    delta_plus: Scalar
    delta_minus: Scalar
    conjugation: list[int] = field(default_factory=list)

    @property
    def delta(self) -> Scalar:
        return self.delta_plus

    def twist_of(self, name: str) -> Scalar:
        return self.twists[self.labels.index(name)]


def build_modular_data(braiding: Braiding) -> ModularData:
    """Compute S, nu and Delta_pm for Z_1 and check modularity.

    Raises:
        NotModularError: S singular or not symmetric, or S^2 != dim(Z_1) C.
        AnomalyError: Delta_+ != Delta_-.
    """
    simples = braiding.crossing.simples
    center, cat = braiding.center, braiding.cat
    ones: list[CenterObject] = simples.of_degree(cat.group.unit)
    n = len(ones)
    dims = [center.dim(j) for j in ones]
    twists = [braiding.nu(j) for j in ones]
    rows = []
    for i in ones:
        row = []
        for j in ones:
            row.append(center.trace(braiding.braid(j, i) @ braiding.braid(i, j)))
        rows.append(row)
    s = Mat(rows, n, cat.conductor)
    if s.transpose() != s:
        raise NotModularError("La matrice S n'est pas symétrique.")
    if not s.is_invertible():
        raise NotModularError()

    conjugation = [ones.index(simples.dual_of(j)) for j in ones]
    total = sum((d * d for d in dims), Scalar.zero(cat.conductor))
    expected = Mat.from_sparse(n, n, {(i, conjugation[i]): total for i in range(n)}, cat.conductor)
    if s @ s != expected:
        raise NotModularError("S^2 n'est pas dim(Z_1) fois la conjugaison.")

    plus = sum((nu * d * d for nu, d in zip(twists, dims)), Scalar.zero(cat.conductor))
    minus = sum((nu.inverse() * d * d for nu, d in zip(twists, dims)), Scalar.zero(cat.conductor))
    if plus != minus:
        raise AnomalyError(str(plus), str(minus))
    neutral = cat.dim_component(cat.group.unit)
    if plus != neutral:
        raise NotModularError(f"Delta = {plus} au lieu de dim(C_1) = {neutral}.")

    data = ModularData([j.name for j in ones], dims, twists, s, plus, minus, conjugation)
    sentry_sdk.capture_message(f"Modular data for {cat.name}: rank {n}, Delta = {plus}", level="info")
    logger.debug("twists of %s: %s", cat.name, [str(t) for t in twists])
    return data
