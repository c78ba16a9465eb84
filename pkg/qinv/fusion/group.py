"""
Finite groups given by multiplication tables.

Business rules:
- Elements are named by strings; the table is indexed by name.
- The table must be associative with a two-sided unit and inverses;
  violations raise GroupAxiomError naming the offending elements.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import reduce
from itertools import permutations
from typing import Iterable, Sequence

from qinv.exceptions import GroupAxiomError


@dataclass(frozen=True)
class FiniteGroup:
    elements: tuple[str, ...]
    table: dict[tuple[str, str], str] = field(compare=False, hash=False)
    unit: str = ""
    _inverse: dict[str, str] = field(default_factory=dict, compare=False, hash=False, repr=False)

    @classmethod
    def from_table(cls, elements: Sequence[str], rows: Sequence[Sequence[str]]) -> "FiniteGroup":
        """Build and validate; rows[i][j] = elements[i] * elements[j]."""
        elements = tuple(elements)
        if len(set(elements)) != len(elements):
            raise GroupAxiomError("Éléments du groupe en double.")
        if len(rows) != len(elements) or any(len(r) != len(elements) for r in rows):
            raise GroupAxiomError("Table de multiplication de taille incorrecte.")
        table = {}
        for g, row in zip(elements, rows):
            for h, gh in zip(elements, row):
                if gh not in elements:
                    raise GroupAxiomError(f"Produit {g}*{h} = {gh} hors du groupe.")
                table[(g, h)] = gh
        units = [e for e in elements if all(table[(e, g)] == g and table[(g, e)] == g for g in elements)]
        if not units:
            raise GroupAxiomError("Aucun élément neutre.")
        unit = units[0]
        inverse = {}
        for g in elements:
            inv = [h for h in elements if table[(g, h)] == unit and table[(h, g)] == unit]
            if not inv:
                raise GroupAxiomError(f"L'élément {g} n'a pas d'inverse.")
            inverse[g] = inv[0]
        for a in elements:
            for b in elements:
                for c in elements:
                    if table[(table[(a, b)], c)] != table[(a, table[(b, c)])]:
                        raise GroupAxiomError(f"Associativité en échec pour ({a}, {b}, {c}).")
        return cls(elements, table, unit, inverse)

    @classmethod
    def cyclic(cls, n: int) -> "FiniteGroup":
        names = [str(k) for k in range(n)]
        return cls.from_table(names, [[str((i + j) % n) for j in range(n)] for i in range(n)])

    @classmethod
    def symmetric3(cls) -> "FiniteGroup":
        """S_3 on {0,1,2}; an element is named by its one-line image string."""
        perms = ["".join(map(str, p)) for p in permutations(range(3))]

        def compose(p: str, q: str) -> str:
            # (p*q)(i) = p(q(i))
            return "".join(p[int(q[i])] for i in range(3))

        return cls.from_table(perms, [[compose(p, q) for q in perms] for p in perms])

    @classmethod
    def trivial(cls) -> "FiniteGroup":
        return cls.from_table(["e"], [["e"]])

    def mul(self, g: str, h: str) -> str:
        return self.table[(g, h)]

    def inv(self, g: str) -> str:
        return self._inverse[g]

    def product(self, items: Iterable[str]) -> str:
        return reduce(self.mul, items, self.unit)

    def conj(self, g: str, by: str) -> str:
        """by^-1 g by."""
        return self.mul(self.mul(self.inv(by), g), by)

    def commutator(self, a: str, b: str) -> str:
        """a^-1 b^-1 a b."""
        return self.product([self.inv(a), self.inv(b), a, b])

    def power(self, g: str, k: int) -> str:
        base = g if k >= 0 else self.inv(g)
        return self.product([base] * abs(k))

    def conjugacy_classes(self) -> list[list[str]]:
        seen: set[str] = set()
        classes = []
        for g in self.elements:
            if g in seen:
                continue
            cls_ = sorted({self.conj(g, h) for h in self.elements}, key=self.elements.index)
            seen.update(cls_)
            classes.append(cls_)
        return classes

    def rows(self) -> list[list[str]]:
        return [[self.mul(g, h) for h in self.elements] for g in self.elements]

    def __len__(self) -> int:
        return len(self.elements)

    def index(self, g: str) -> int:
        return self.elements.index(g)
