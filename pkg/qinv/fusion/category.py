"""
Spherical G-graded fusion categories in splitting-tree coordinates.

Business rules:
- Splitting trees of a word w = (a1, ..., an) at charge c are left-canonical:
  ((e2, mu2), ..., (en, mun)) with e_k in e_{k-1} x a_k and en = c.
- F-symbols change the bracketing of a three-leg tree:
  (id_a x v_bc^f) v_af^d = sum F[(e, k, l), (f, m, n)] (v_ab^e x id_c) v_ec^d.
  Entries with a unit leg are the identity and need not be declared.
- Tensor products of morphisms are strictly associative on words: they go
  through the change-of-basis matrices R that fuse two words separately and
  then fuse the results.
- coev_a has entry 1; ev_a has the entry x_a that makes the zigzag identity
  hold. The pivotal structure p gives evt_a = p_a ev_{a*} and
  coevt_a = p_a^-1 coev_{a*}, hence dim_l(a) = x_a / p_a.
"""

from __future__ import annotations

import logging
import threading
from typing import Iterable, Optional

from qinv.algebra.matrix import Mat
from qinv.algebra.scalar import Scalar
from qinv.exceptions import FusionError
from qinv.fusion.morphism import UNIT_OBJ, Morphism, Obj, Word, obj_tensor
from qinv.fusion.spec import CategorySpec, TreeKey

logger = logging.getLogger(__name__)

Tree = tuple[tuple[str, int], ...]


class FusionCategory:
    """Computational model of a validated (or to-be-validated) spec."""

    def __init__(self, spec: CategorySpec):
        self.spec = spec
        self.name = spec.name
        self.group = spec.group
        self.conductor = spec.conductor
        self.simples = spec.simples
        self.unit = spec.unit
        self._index = {a: i for i, a in enumerate(self.simples)}
        self._lock = threading.RLock()
        self._trees: dict[tuple[Word, str], list[Tree]] = {}
        self._word_r: dict[tuple[Word, Word, str], dict] = {}
        self._sum_r: dict[tuple[Obj, Obj, str], tuple[Mat, Mat]] = {}
        self._x: dict[str, Scalar] = {}
        self._duals: dict[tuple[str, Word], Morphism] = {}
        self._pairs: dict[str, list[tuple[str, str, int]]] = {}
        self._channels = {}
        for (a, b, c), m in spec.fusion.items():
            if m:
                self._channels.setdefault((a, b), []).append((c, m))
        for key in self._channels:
            self._channels[key].sort(key=lambda cm: self._index[cm[0]])

    # =====================================================================
    # FUSION DATA
    # =====================================================================

    def index(self, a: str) -> int:
        return self._index[a]

    def scalar(self, value) -> Scalar:
        return Scalar.coerce(value, self.conductor)

    @property
    def one(self) -> Scalar:
        return Scalar.one(self.conductor)

    def deg(self, a: str) -> str:
        return self.spec.degree[a]

    def dual(self, a: str) -> str:
        return self.spec.dual[a]

    def N(self, a: str, b: str, c: str) -> int:
        return self.spec.fusion.get((a, b, c), 0)

    def channels(self, a: str, b: str) -> list[tuple[str, int]]:
        return self._channels.get((a, b), [])

    def simples_of_degree(self, g: str) -> list[str]:
        return [a for a in self.simples if self.deg(a) == g]

    def word_degree(self, w: Word) -> str:
        return self.group.product(self.deg(a) for a in w)

    def obj_degree(self, x: Obj) -> Optional[str]:
        """Common degree of the summands, or None when mixed."""
        degrees = {self.word_degree(w) for w in x}
        return degrees.pop() if len(degrees) == 1 else None

    def dual_word(self, w: Word) -> Word:
        return tuple(self.dual(a) for a in reversed(w))

    def dual_obj(self, x: Obj) -> Obj:
        return tuple(self.dual_word(w) for w in x)

    def fusion_pairs(self, c: str) -> list[tuple[str, str, int]]:
        """(a, b, nu) with nu < N_ab^c, in label order."""
        found = self._pairs.get(c)
        if found is not None:
            return found
        out = []
        for a in self.simples:
            for b in self.simples:
                for nu in range(self.N(a, b, c)):
                    out.append((a, b, nu))
        self._pairs[c] = out
        return out

    def left_trees(self, a: str, b: str, c: str, d: str) -> list[TreeKey]:
        return [
            (e, k, l)
            for e, m in self.channels(a, b)
            for k in range(m)
            for l in range(self.N(e, c, d))
        ]

    def right_trees(self, a: str, b: str, c: str, d: str) -> list[TreeKey]:
        return [
            (f, m_, n)
            for f, m in self.channels(b, c)
            for m_ in range(m)
            for n in range(self.N(a, f, d))
        ]

    def F(self, a: str, b: str, c: str, d: str, left: TreeKey, right: TreeKey) -> Scalar:
        u = self.unit
        zero = Scalar.zero(self.conductor)
        if a == u:
            return self.one if left[0] == b and right[0] == d and left[2] == right[1] else zero
        if b == u:
            return self.one if left[0] == a and right[0] == c and left[2] == right[2] else zero
        if c == u:
            return self.one if left[0] == d and right[0] == b and left[1] == right[2] else zero
        table = self.spec.fsymbols.get((a, b, c, d))
        if not table:
            return zero
        return table.get((left, right), zero)

    def F_matrix(self, a: str, b: str, c: str, d: str) -> tuple[list[TreeKey], list[TreeKey], Mat]:
        left = self.left_trees(a, b, c, d)
        right = self.right_trees(a, b, c, d)
        mat = Mat(
            [[self.F(a, b, c, d, l, r) for r in right] for l in left],
            len(right),
            self.conductor,
        )
        return left, right, mat

    # =====================================================================
    # SPLITTING TREES
    # =====================================================================

    def trees(self, w: Word, c: str) -> list[Tree]:
        key = (w, c)
        found = self._trees.get(key)
        if found is not None:
            return found
        if not w:
            result = [()] if c == self.unit else []
        else:
            states: dict[str, list[Tree]] = {w[0]: [()]}
            for x in w[1:]:
                nxt: dict[str, list[Tree]] = {}
                for e in sorted(states, key=self.index):
                    for f, m in self.channels(e, x):
                        for mu in range(m):
                            nxt.setdefault(f, []).extend(t + ((f, mu),) for t in states[e])
                states = nxt
            result = sorted(states.get(c, []), key=lambda t: tuple((self._index[e], mu) for e, mu in t))
        with self._lock:
            self._trees[key] = result
        return result

    def tree_charge(self, w: Word, t: Tree) -> str:
        if t:
            return t[-1][0]
        return w[0] if w else self.unit

    def basis(self, x: Obj, c: str) -> list[tuple[int, Tree]]:
        return [(i, t) for i, w in enumerate(x) for t in self.trees(w, c)]

    def summand_offsets(self, x: Obj, c: str) -> list[int]:
        offsets, total = [], 0
        for w in x:
            offsets.append(total)
            total += len(self.trees(w, c))
        return offsets

    def charges(self, x: Obj) -> list[str]:
        return [c for c in self.simples if self.basis(x, c)]

    def hom_dim(self, x: Obj, y: Obj) -> int:
        return sum(len(self.basis(x, c)) * len(self.basis(y, c)) for c in self.simples)

    # =====================================================================
    # MORPHISMS
    # =====================================================================

    def identity(self, x: Obj) -> Morphism:
        blocks = {c: Mat.identity(len(self.basis(x, c)), self.conductor) for c in self.charges(x)}
        return Morphism(self, x, x, blocks, ident=True)

    def zero(self, src: Obj, tgt: Obj) -> Morphism:
        return Morphism(self, src, tgt, {})

    def hom_basis(self, src: Obj, tgt: Obj) -> list[Morphism]:
        """Matrix units, in the order of Morphism.flatten."""
        out = []
        for c in self.simples:
            rows = len(self.basis(tgt, c))
            cols = len(self.basis(src, c))
            for i in range(rows):
                for j in range(cols):
                    m = Mat.from_sparse(rows, cols, {(i, j): self.one}, self.conductor)
                    out.append(Morphism(self, src, tgt, {c: m}))
        return out

    def from_flat(self, src: Obj, tgt: Obj, values: list[Scalar]) -> Morphism:
        blocks, pos = {}, 0
        for c in self.simples:
            rows = len(self.basis(tgt, c))
            cols = len(self.basis(src, c))
            if rows and cols:
                chunk = values[pos:pos + rows * cols]
                blocks[c] = Mat([chunk[r * cols:(r + 1) * cols] for r in range(rows)], cols, self.conductor)
                pos += rows * cols
        return Morphism(self, src, tgt, blocks)

    def tree_inclusion(self, x: Obj, c: str, index: int) -> Morphism:
        """The basis vector v_index: (c) -> x of Hom(c, x)."""
        n = len(self.basis(x, c))
        return Morphism(self, ((c,),), x, {c: Mat.unit_column(n, index, self.conductor)})

    def tree_projection(self, x: Obj, c: str, index: int) -> Morphism:
        """The dual basis functional x -> (c) with projection o inclusion = delta."""
        n = len(self.basis(x, c))
        return Morphism(self, x, ((c,),), {c: Mat.unit_row(n, index, self.conductor)})

    # =====================================================================
    # TENSOR PRODUCT
    # =====================================================================

    def _word_fusion(self, w: Word, w2: Word, c: str) -> dict:
        """Columns of R_{w,w2}(c): pair (a, s, b, s2, nu) -> {tree of w+w2: coefficient}."""
        key = (w, w2, c)
        found = self._word_r.get(key)
        if found is not None:
            return found
        one = self.one
        cols: dict = {}
        if not w:
            for t in self.trees(w2, c):
                cols[(self.unit, (), c, t, 0)] = {t: one}
        elif not w2:
            for t in self.trees(w, c):
                cols[(c, t, self.unit, (), 0)] = {t: one}
        elif len(w2) == 1:
            x = w2[0]
            for a in self.simples:
                for s in self.trees(w, a):
                    for nu in range(self.N(a, x, c)):
                        row = s + ((c, nu),)
                        cols[(a, s, x, (), nu)] = {row: one}
        else:
            w3, x = w2[:-1], w2[-1]
            for b in self.simples:
                for s2 in self.trees(w2, b):
                    s3, (_, mu) = s2[:-1], s2[-1]
                    b3 = self.tree_charge(w3, s3)
                    for a in self.simples:
                        for s in self.trees(w, a):
                            for nu in range(self.N(a, b, c)):
                                col: dict = {}
                                for e, k, l in self.left_trees(a, b3, x, c):
                                    coeff = self.F(a, b3, x, c, (e, k, l), (b, mu, nu))
                                    if coeff.is_zero():
                                        continue
                                    inner = self._word_fusion(w, w3, e).get((a, s, b3, s3, k), {})
                                    for t, v in inner.items():
                                        row = t + ((c, l),)
                                        col[row] = col[row] + coeff * v if row in col else coeff * v
                                cols[(a, s, b, s2, nu)] = col
        with self._lock:
            self._word_r[key] = cols
        return cols

    def fusion_matrices(self, x: Obj, y: Obj, c: str) -> tuple[Mat, Mat]:
        """R_{x,y}(c) and its inverse; columns run over fusion_pairs then bases of x and y."""
        key = (x, y, c)
        found = self._sum_r.get(key)
        if found is not None:
            return found
        xy = obj_tensor(x, y)
        rows = self.basis(xy, c)
        row_index = {(k, t): n for n, (k, t) in enumerate(rows)}
        values: dict[tuple[int, int], Scalar] = {}
        col = 0
        for a, b, nu in self.fusion_pairs(c):
            for i, s in self.basis(x, a):
                for j, s2 in self.basis(y, b):
                    column = self._word_fusion(x[i], y[j], c).get((a, s, b, s2, nu), {})
                    k = i * len(y) + j
                    for t, v in column.items():
                        if not v.is_zero():
                            values[(row_index[(k, t)], col)] = v
                    col += 1
        if col != len(rows):
            raise FusionError(f"Bases de fusion incohérentes pour {x} x {y} en {c}.")
        r = Mat.from_sparse(len(rows), col, values, self.conductor)
        result = (r, r.inverse())
        with self._lock:
            self._sum_r[key] = result
        return result

    def tensor(self, f: Morphism, g: Morphism) -> Morphism:
        src = obj_tensor(f.src, g.src)
        tgt = obj_tensor(f.tgt, g.tgt)
        if f.ident and g.ident:
            return self.identity(src)
        blocks = {}
        for c in self.simples:
            if not self.basis(src, c) or not self.basis(tgt, c):
                continue
            parts = [f.block(a).kron(g.block(b)) for a, b, _ in self.fusion_pairs(c)]
            if all(p.is_zero() for p in parts):
                continue
            diag = Mat.block_diag(parts, self.conductor)
            r_tgt, _ = self.fusion_matrices(f.tgt, g.tgt, c)
            _, r_src_inv = self.fusion_matrices(f.src, g.src, c)
            blocks[c] = r_tgt @ diag @ r_src_inv
        return Morphism(self, src, tgt, blocks)

    def tensor_all(self, morphisms: Iterable[Morphism]) -> Morphism:
        result: Optional[Morphism] = None
        for m in morphisms:
            result = m if result is None else self.tensor(result, m)
        return result if result is not None else self.identity(UNIT_OBJ)

    def id_tensor(self, x: Obj, f: Morphism, y: Obj = UNIT_OBJ) -> Morphism:
        """id_x (x) f (x) id_y."""
        out = f
        if x != UNIT_OBJ:
            out = self.tensor(self.identity(x), out)
        if y != UNIT_OBJ:
            out = self.tensor(out, self.identity(y))
        return out

    # =====================================================================
    # DUALITY
    # =====================================================================

    def _ev_entry(self, a: str) -> Scalar:
        """x_a: the scalar of ev_a fixed by the zigzag identity."""
        found = self._x.get(a)
        if found is not None:
            return found
        if a == self.unit:
            value = self.one
        else:
            ad = self.dual(a)
            coev = self._letter_coev(a)
            raw_ev = Morphism(self, ((ad, a),), UNIT_OBJ, {self.unit: Mat([[self.one]])})
            zig = self.tensor(self.identity(((a,),)), raw_ev) @ self.tensor(coev, self.identity(((a,),)))
            s = zig.block(a)[0, 0]
            if s.is_zero():
                raise FusionError(f"Zigzag nul pour '{a}' : dual incorrect.")
            value = s.inverse()
        with self._lock:
            self._x[a] = value
        return value

    def _letter_coev(self, a: str) -> Morphism:
        return Morphism(self, UNIT_OBJ, ((a, self.dual(a)),), {self.unit: Mat([[self.one]])})

    def pivotal(self, a: str) -> Scalar:
        return self.spec.pivotal[a]

    def _letter(self, kind: str, a: str) -> Morphism:
        ad = self.dual(a)
        if kind == "coev":
            return self._letter_coev(a)
        if kind == "ev":
            return Morphism(self, ((ad, a),), UNIT_OBJ, {self.unit: Mat([[self._ev_entry(a)]])})
        if kind == "evt":
            return self._letter("ev", ad).scale(self.pivotal(a))
        if kind == "coevt":
            return self._letter("coev", ad).scale(self.pivotal(a).inverse())
        raise ValueError(kind)

    def _word_duality(self, kind: str, w: Word) -> Morphism:
        key = (kind, w)
        found = self._duals.get(key)
        if found is not None:
            return found
        if not w:
            result = self.identity(UNIT_OBJ)
        elif len(w) == 1:
            result = self._letter(kind, w[0])
        else:
            w1, x = w[:-1], w[-1:]
            o1, ox = (w1,), (x,)
            d1, dx = (self.dual_word(w1),), (self.dual_word(x),)
            if kind == "ev":
                result = self._word_duality("ev", x) @ self.id_tensor(dx, self._word_duality("ev", w1), ox)
            elif kind == "coev":
                result = self.id_tensor(o1, self._word_duality("coev", x), d1) @ self._word_duality("coev", w1)
            elif kind == "evt":
                result = self._word_duality("evt", w1) @ self.id_tensor(o1, self._word_duality("evt", x), d1)
            else:
                result = self.id_tensor(dx, self._word_duality("coevt", w1), ox) @ self._word_duality("coevt", x)
        with self._lock:
            self._duals[key] = result
        return result

    def _duality(self, kind: str, x: Obj) -> Morphism:
        if len(x) == 1:
            return self._word_duality(kind, x[0])
        n = len(x)
        xd = self.dual_obj(x)
        comps = {}
        for i, w in enumerate(x):
            f = self._word_duality(kind, w)
            if kind == "ev":
                comps[(0, i * n + i)] = f
            elif kind == "coev":
                comps[(i * n + i, 0)] = f
            elif kind == "evt":
                comps[(0, i * n + i)] = f
            else:
                comps[(i * n + i, 0)] = f
        if kind in ("ev", "evt"):
            src = obj_tensor(xd, x) if kind == "ev" else obj_tensor(x, xd)
            return Morphism.assemble(self, src, UNIT_OBJ, comps)
        tgt = obj_tensor(x, xd) if kind == "coev" else obj_tensor(xd, x)
        return Morphism.assemble(self, UNIT_OBJ, tgt, comps)

    def ev(self, x: Obj) -> Morphism:
        """x* x -> 1."""
        return self._duality("ev", x)

    def coev(self, x: Obj) -> Morphism:
        """1 -> x x*."""
        return self._duality("coev", x)

    def evt(self, x: Obj) -> Morphism:
        """x x* -> 1."""
        return self._duality("evt", x)

    def coevt(self, x: Obj) -> Morphism:
        """1 -> x* x."""
        return self._duality("coevt", x)

    # =====================================================================
    # DIMENSIONS AND TRACES
    # =====================================================================

    def dim_left(self, a: str) -> Scalar:
        return self._ev_entry(a) / self.pivotal(a)

    def dim_right(self, a: str) -> Scalar:
        return self.pivotal(a) * self._ev_entry(self.dual(a))

    def dim(self, a: str) -> Scalar:
        return self.dim_left(a)

    def dim_obj(self, x: Obj) -> Scalar:
        total = Scalar.zero(self.conductor)
        for w in x:
            term = self.one
            for a in w:
                term = term * self.dim(a)
            total = total + term
        return total

    def dim_component(self, g: Optional[str] = None) -> Scalar:
        """Sum of d_a^2 over simples of degree g (all simples when g is None)."""
        total = Scalar.zero(self.conductor)
        for a in self.simples:
            if g is None or self.deg(a) == g:
                total = total + self.dim(a) * self.dim(a)
        return total

    def trace(self, f: Morphism) -> Scalar:
        if f.src != f.tgt:
            raise FusionError("Trace d'un morphisme non endomorphe.")
        total = Scalar.zero(self.conductor)
        for c in f.charges():
            block = f.block(c)
            if not block.is_zero():
                total = total + self.dim(c) * block.trace()
        return total

    def trace_left(self, f: Morphism) -> Scalar:
        x = f.src
        closed = self.ev(x) @ self.tensor(self.identity(self.dual_obj(x)), f) @ self.coevt(x)
        return closed.block(self.unit)[0, 0] if closed.blocks else Scalar.zero(self.conductor)

    def trace_right(self, f: Morphism) -> Scalar:
        x = f.src
        closed = self.evt(x) @ self.tensor(f, self.identity(self.dual_obj(x))) @ self.coev(x)
        return closed.block(self.unit)[0, 0] if closed.blocks else Scalar.zero(self.conductor)

    def scalar_of(self, f: Morphism) -> Scalar:
        """Value of an endomorphism of the unit object."""
        if f.src != UNIT_OBJ or f.tgt != UNIT_OBJ:
            raise FusionError("Scalaire attendu : endomorphisme de l'unité.")
        return f.block(self.unit)[0, 0]
