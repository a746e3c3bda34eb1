"""Exact linear algebra over the rationals on sparse vectors.

Vectors are plain dicts ``{coordinate key: Fraction}`` with no zero
entries. :class:`EchelonSpace` keeps a reduced row echelon basis with
respect to a caller-supplied total order on keys, which makes the stored
basis canonical (independent of insertion order).
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Hashable, Iterable, Mapping, Sequence

Vector = dict


def _identity(k):
    return k


def axpy(y: dict, a: Fraction, x: Mapping) -> None:
    """In place ``y += a*x`` with zero entries removed."""
    for k, c in x.items():
        v = y.get(k, 0) + a * c
        if v:
            y[k] = v
        else:
            y.pop(k, None)


class EchelonSpace:
    """Span of sparse vectors held in reduced row echelon form.

    ``order`` maps a coordinate key to a sortable value; the largest key of
    a row is its pivot.
    """

    def __init__(self, order: Callable[[Hashable], object] | None = None,
                 vectors: Iterable[Mapping] = ()):
        self.order = order or _identity
        self.rows: dict[Hashable, dict] = {}
        for v in vectors:
            self.insert(v)

    def __len__(self) -> int:
        return len(self.rows)

    @property
    def dim(self) -> int:
        return len(self.rows)

    def copy(self) -> EchelonSpace:
        out = EchelonSpace(self.order)
        out.rows = {p: dict(r) for p, r in self.rows.items()}
        return out

    def pivots(self) -> list:
        return sorted(self.rows, key=self.order)

    def basis(self) -> list[dict]:
        """Rows ordered by increasing pivot."""
        return [self.rows[p] for p in self.pivots()]

    def stored_cells(self) -> int:
        return sum(len(r) for r in self.rows.values())

    def reduce(self, v: Mapping) -> dict:
        """Residual of ``v`` after eliminating every pivot coordinate."""
        r = {k: Fraction(c) for k, c in v.items() if c}
        for k in [k for k in r if k in self.rows]:
            c = r.get(k)
            if c:
                axpy(r, -c, self.rows[k])
        return r

    def contains(self, v: Mapping) -> bool:
        return not self.reduce(v)

    def insert(self, v: Mapping) -> bool:
        """Add ``v`` to the span; return True if the dimension grew."""
        r = self.reduce(v)
        if not r:
            return False
        p = max(r, key=self.order)
        inv = 1 / r[p]
        r = {k: c * inv for k, c in r.items()}
        for row in self.rows.values():
            c = row.get(p)
            if c:
                axpy(row, -c, r)
        self.rows[p] = r
        return True

    def reordered(self, order: Callable[[Hashable], object]) -> EchelonSpace:
        """Same span, re-echelonized under a different key order."""
        return EchelonSpace(order, self.rows.values())

    def intersect_coordinates(self, keep: Callable[[Hashable], bool]) -> EchelonSpace:
        """Intersection of the span with the coordinate subspace spanned by keys where ``keep``.

        Re-echelonizes with every discarded coordinate ranked above every
        kept one; rows whose pivot is kept then lie entirely in the
        coordinate subspace and span the intersection.
        """
        base = self.order
        ranked = self.reordered(lambda k: (bool(keep(k)) is False, base(k)))
        out = EchelonSpace(base)
        for p, row in ranked.rows.items():
            if keep(p):
                out.insert(row)
        return out


class GradedSpace:
    """Direct sum of :class:`EchelonSpace` blocks, one per grade.

    Only homogeneous vectors (all keys in one grade) may be inserted, so the
    span of the inserted vectors is exactly the sum of the blocks.
    """

    def __init__(self, grade: Callable[[Hashable], Hashable],
                 order: Callable[[Hashable], object] | None = None):
        self.grade = grade
        self.order = order
        self.blocks: dict[Hashable, EchelonSpace] = {}

    @property
    def dim(self) -> int:
        return sum(b.dim for b in self.blocks.values())

    def __len__(self) -> int:
        return self.dim

    def _block_of(self, v: Mapping):
        grades = {self.grade(k) for k in v}
        if len(grades) != 1:
            raise ValueError("GradedSpace accepts homogeneous vectors only")
        return grades.pop()

    def insert(self, v: Mapping) -> bool:
        if not v:
            return False
        g = self._block_of(v)
        blk = self.blocks.get(g)
        if blk is None:
            blk = self.blocks[g] = EchelonSpace(self.order)
        return blk.insert(v)

    def contains(self, v: Mapping) -> bool:
        if not v:
            return True
        blk = self.blocks.get(self._block_of(v))
        return blk is not None and blk.contains(v)

    def basis(self) -> list[dict]:
        out = []
        for g in sorted(self.blocks, key=repr):
            out.extend(self.blocks[g].basis())
        return out

    def stored_cells(self) -> int:
        return sum(b.stored_cells() for b in self.blocks.values())


def solve_linear(rows: Sequence[Sequence], rhs: Sequence, ncols: int):
    """Solve ``A x = b`` exactly; return one solution (free variables 0) or None.

    ``rows`` is a list of dense coefficient lists of length ``ncols``.
    """
    aug = [[Fraction(c) for c in row] + [Fraction(b)] for row, b in zip(rows, rhs)]
    piv_cols = []
    r = 0
    for c in range(ncols):
        sel = next((i for i in range(r, len(aug)) if aug[i][c]), None)
        if sel is None:
            continue
        aug[r], aug[sel] = aug[sel], aug[r]
        inv = 1 / aug[r][c]
        aug[r] = [x * inv for x in aug[r]]
        for i in range(len(aug)):
            if i != r and aug[i][c]:
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[r])]
        piv_cols.append(c)
        r += 1
    if any(row[-1] for row in aug[r:]):
        return None
    x = [Fraction(0)] * ncols
    for i, c in enumerate(piv_cols):
        x[c] = aug[i][-1]
    return x
