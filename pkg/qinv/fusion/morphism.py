"""
Objects and morphisms of a fusion category in splitting-tree coordinates.

An object is a direct sum of words: Obj = tuple of words, a word being a
tuple of simple labels. The empty word () is the unit object, the empty
tuple is the zero object.

A morphism f: X -> Y is stored per charge c as the matrix of
v |-> f o v on Hom(c, X): rows index the splitting-tree basis of Y at c,
columns the basis of X at c. Composition is blockwise matrix product.
"""

from __future__ import annotations

from typing import TYPE_CHECKING, Iterable, Mapping, Optional

from qinv.algebra.matrix import Mat
from qinv.algebra.scalar import Number, Scalar
from qinv.exceptions import AlgebraError, CompositionError

if TYPE_CHECKING:
    from qinv.fusion.category import FusionCategory

Word = tuple[str, ...]
Obj = tuple[Word, ...]

UNIT_OBJ: Obj = ((),)
ZERO_OBJ: Obj = ()


def word(*labels: str) -> Obj:
    """The object given by a single word."""
    return (tuple(labels),)


def obj_tensor(x: Obj, y: Obj) -> Obj:
    return tuple(a + b for a in x for b in y)


def obj_product(*objs: Obj) -> Obj:
    out = UNIT_OBJ
    for o in objs:
        out = obj_tensor(out, o)
    return out


def obj_sum(*objs: Obj) -> Obj:
    out: tuple = ()
    for o in objs:
        out = out + tuple(o)
    return out


def obj_text(x: Obj) -> str:
    if not x:
        return "0"
    return " + ".join("(" + " ".join(w) + ")" if w else "1" for w in x)


class Morphism:
    __slots__ = ("cat", "src", "tgt", "blocks", "ident")

    def __init__(
        self,
        cat: "FusionCategory",
        src: Obj,
        tgt: Obj,
        blocks: Mapping[str, Mat],
        ident: bool = False,
    ):
        self.cat = cat
        self.src = src
        self.tgt = tgt
        self.blocks = {c: m for c, m in blocks.items() if m.rows and m.cols}
        self.ident = ident

    # ---------- shape ----------

    def block(self, c: str) -> Mat:
        found = self.blocks.get(c)
        if found is not None:
            return found
        return Mat.zeros(
            len(self.cat.basis(self.tgt, c)), len(self.cat.basis(self.src, c)), self.cat.conductor
        )

    def charges(self) -> list[str]:
        return [c for c in self.cat.simples if self.cat.basis(self.src, c) and self.cat.basis(self.tgt, c)]

    def flatten(self) -> list[Scalar]:
        """Coordinates in the matrix-unit basis, charges in label order."""
        out: list[Scalar] = []
        for c in self.charges():
            out.extend(self.block(c).flatten())
        return out

    # ---------- algebra ----------

    def _check_parallel(self, other: "Morphism") -> None:
        if self.src != other.src or self.tgt != other.tgt:
            raise CompositionError("Morphismes non parallèles.")

    def __add__(self, other: "Morphism") -> "Morphism":
        self._check_parallel(other)
        blocks = dict(self.blocks)
        for c, m in other.blocks.items():
            blocks[c] = blocks[c] + m if c in blocks else m
        return Morphism(self.cat, self.src, self.tgt, blocks)

    def __sub__(self, other: "Morphism") -> "Morphism":
        return self + (-other)

    def __neg__(self) -> "Morphism":
        return Morphism(self.cat, self.src, self.tgt, {c: -m for c, m in self.blocks.items()})

    def scale(self, k: Number) -> "Morphism":
        k = Scalar.coerce(k, self.cat.conductor)
        if k.is_one():
            return self
        return Morphism(self.cat, self.src, self.tgt, {c: m.scale(k) for c, m in self.blocks.items()})

    def __matmul__(self, other: "Morphism") -> "Morphism":
        """self o other."""
        if other.tgt != self.src:
            raise CompositionError(
                f"Composition impossible : {obj_text(other.tgt)} != {obj_text(self.src)}"
            )
        if self.ident:
            return other
        if other.ident:
            return self
        blocks = {}
        for c, m in self.blocks.items():
            n = other.blocks.get(c)
            if n is not None:
                blocks[c] = m @ n
        return Morphism(self.cat, other.src, self.tgt, blocks)

    def inverse(self) -> "Morphism":
        if self.ident:
            return self
        blocks = {}
        for c in self.cat.simples:
            rows = len(self.cat.basis(self.tgt, c))
            cols = len(self.cat.basis(self.src, c))
            if rows != cols:
                raise AlgebraError(f"Morphisme non inversible (charge {c}).")
            if rows:
                blocks[c] = self.block(c).inverse()
        return Morphism(self.cat, self.tgt, self.src, blocks)

    def is_zero(self) -> bool:
        return all(m.is_zero() for m in self.blocks.values())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Morphism):
            return NotImplemented
        if self.src != other.src or self.tgt != other.tgt:
            return False
        for c in set(self.blocks) | set(other.blocks):
            if self.block(c) != other.block(c):
                return False
        return True

    __hash__ = None  # type: ignore[assignment]

    def as_scalar(self) -> Scalar:
        """k when self = k * id on an object whose nonzero blocks are 1x1-scalar multiples."""
        value: Optional[Scalar] = None
        for c in self.charges():
            m = self.block(c)
            if m.rows != m.cols:
                raise AlgebraError("Endomorphisme attendu.")
            for i in range(m.rows):
                for j in range(m.cols):
                    x = m[i, j]
                    if i != j and not x.is_zero():
                        raise AlgebraError("Morphisme non scalaire.")
                    if i == j:
                        if value is None:
                            value = x
                        elif x != value:
                            raise AlgebraError("Morphisme non scalaire.")
        return value if value is not None else Scalar.zero(self.cat.conductor)

    def __repr__(self) -> str:
        return f"Morphism({obj_text(self.src)} -> {obj_text(self.tgt)}, charges={sorted(self.blocks)})"

    # ---------- sums ----------

    @classmethod
    def assemble(
        cls,
        cat: "FusionCategory",
        src: Obj,
        tgt: Obj,
        components: Mapping[tuple[int, int], "Morphism"],
    ) -> "Morphism":
        """Morphism between sums from word components keyed by (target summand, source summand)."""
        blocks = {}
        for c in cat.simples:
            rows = cat.basis(tgt, c)
            cols = cat.basis(src, c)
            if not rows or not cols:
                continue
            row_off = cat.summand_offsets(tgt, c)
            col_off = cat.summand_offsets(src, c)
            values: dict[tuple[int, int], Scalar] = {}
            for (ti, si), f in components.items():
                m = f.blocks.get(c)
                if m is None:
                    continue
                for i in range(m.rows):
                    for j in range(m.cols):
                        x = m[i, j]
                        if not x.is_zero():
                            key = (row_off[ti] + i, col_off[si] + j)
                            values[key] = values[key] + x if key in values else x
            if values:
                blocks[c] = Mat.from_sparse(len(rows), len(cols), values, cat.conductor)
        return cls(cat, src, tgt, blocks)

    def component(self, ti: int, si: int) -> "Morphism":
        """The word morphism src[si] -> tgt[ti]."""
        src, tgt = (self.src[si],), (self.tgt[ti],)
        blocks = {}
        for c, m in self.blocks.items():
            r0 = self.cat.summand_offsets(self.tgt, c)[ti]
            c0 = self.cat.summand_offsets(self.src, c)[si]
            nr = len(self.cat.trees(self.tgt[ti], c))
            nc = len(self.cat.trees(self.src[si], c))
            if nr and nc:
                blocks[c] = m.submatrix(range(r0, r0 + nr), range(c0, c0 + nc))
        return Morphism(self.cat, src, tgt, blocks)


def morphism_sum(parts: Iterable[Morphism], src: Obj, tgt: Obj, cat: "FusionCategory") -> Morphism:
    total = cat.zero(src, tgt)
    for p in parts:
        total = total + p
    return total
