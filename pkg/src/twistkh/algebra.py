"""Exact sparse graded linear algebra over Q and over the graded ring Q[a].

Matrices are stored column-major as ``cols[c] = {row: coefficient}``.  Over
``Q[a]`` an entry is a monomial ``coefficient * a**e``; homogeneity pins the
exponent to ``e = (col_q[c] - row_q[r]) / deg_a``, so only the rational
coefficient is stored and the power of ``a`` is implied by the gradings.
"""

from __future__ import annotations

import heapq
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Mapping

__all__ = [
    "CoefficientRing",
    "RATIONALS",
    "POLY",
    "HomogeneityError",
    "GradedSparseMatrix",
    "ModuleDecomposition",
    "rank",
    "smith_over_poly",
    "smith_pivots",
    "homology_of_pair",
    "div",
]


class HomogeneityError(ValueError):
    pass


@dataclass(frozen=True)
class CoefficientRing:
    """Either the rationals or ``Q[a]`` with ``a`` of quantum degree ``a_degree``."""

    kind: str = "Q"
    a_degree: int = 4

    def __post_init__(self):
        if self.kind not in ("Q", "poly"):
            raise ValueError("unknown ring kind %r" % self.kind)
        if self.kind == "poly" and (self.a_degree <= 0 or self.a_degree % 2):
            raise ValueError("degree of a must be even and positive")

    @property
    def is_poly(self) -> bool:
        return self.kind == "poly"

    def exponent(self, row_q: int, col_q: int) -> int:
        """Power of ``a`` carried by an entry from degree col_q to row_q."""
        diff = col_q - row_q
        if not self.is_poly:
            if diff:
                raise HomogeneityError("entry changes quantum degree by %d over Q" % -diff)
            return 0
        e, r = divmod(diff, self.a_degree)
        if r or e < 0:
            raise HomogeneityError(
                "entry from q=%d to q=%d is not a monomial in a" % (col_q, row_q))
        return e

    def __str__(self):
        return "Q" if not self.is_poly else "Q[a], deg a = %d" % self.a_degree


RATIONALS = CoefficientRing("Q")
POLY = CoefficientRing("poly", 4)


def div(a, b):
    """Exact quotient that stays an int whenever possible."""
    if isinstance(a, int) and isinstance(b, int):
        q, r = divmod(a, b)
        if not r:
            return q
    return Fraction(a) / b


def _norm(v):
    if isinstance(v, Fraction) and v.denominator == 1:
        return v.numerator
    return v


class GradedSparseMatrix:
    """A homogeneous sparse matrix between graded free modules."""

    __slots__ = ("ring", "row_q", "col_q", "cols")

    def __init__(self, ring: CoefficientRing, row_q: Iterable[int], col_q: Iterable[int],
                 cols: Iterable[Mapping[int, Rational]] | None = None, check: bool = True):
        self.ring = ring
        self.row_q = tuple(row_q)
        self.col_q = tuple(col_q)
        if cols is None:
            self.cols = [dict() for _ in self.col_q]
        else:
            self.cols = [{r: _norm(v) for r, v in c.items() if v} for c in cols]
        if len(self.cols) != len(self.col_q):
            raise ValueError("column count mismatch")
        if check:
            self.check_homogeneous()

    @classmethod
    def from_entries(cls, ring, row_q, col_q, entries, check=True):
        cols = [dict() for _ in col_q]
        for (r, c), v in entries.items():
            if v:
                cols[c][r] = v
        return cls(ring, row_q, col_q, cols, check)

    @classmethod
    def zero(cls, ring, row_q, col_q):
        return cls(ring, row_q, col_q, None, check=False)

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.row_q), len(self.col_q)

    def nnz(self) -> int:
        return sum(len(c) for c in self.cols)

    def is_zero(self) -> bool:
        return all(not c for c in self.cols)

    def check_homogeneous(self) -> None:
        nr = len(self.row_q)
        for c, col in enumerate(self.cols):
            for r in col:
                if not 0 <= r < nr:
                    raise IndexError("row %d out of range" % r)
                self.ring.exponent(self.row_q[r], self.col_q[c])

    def entries(self):
        for c, col in enumerate(self.cols):
            for r, v in col.items():
                yield r, c, v

    def exponent(self, r: int, c: int) -> int:
        return self.ring.exponent(self.row_q[r], self.col_q[c])

    def __matmul__(self, other: "GradedSparseMatrix") -> "GradedSparseMatrix":
        """Composition ``self o other``; exponents add automatically."""
        if len(other.row_q) != len(self.col_q):
            raise ValueError("shape mismatch")
        out = []
        for col in other.cols:
            acc: dict[int, Rational] = {}
            for k, v in col.items():
                for r, w in self.cols[k].items():
                    acc[r] = acc.get(r, 0) + w * v
            out.append({r: v for r, v in acc.items() if v})
        return GradedSparseMatrix(self.ring, self.row_q, other.col_q, out, check=False)

    def __sub__(self, other):
        out = []
        for a, b in zip(self.cols, other.cols):
            acc = dict(a)
            for r, v in b.items():
                acc[r] = acc.get(r, 0) - v
            out.append({r: v for r, v in acc.items() if v})
        return GradedSparseMatrix(self.ring, self.row_q, self.col_q, out, check=False)

    def scaled(self, s) -> "GradedSparseMatrix":
        return GradedSparseMatrix(self.ring, self.row_q, self.col_q,
                                  [{r: v * s for r, v in c.items()} for c in self.cols],
                                  check=False)

    def to_dense(self, a_value=None):
        """Dense list-of-rows; over Q[a] the implied power of a is evaluated at a_value."""
        rows = [[0] * len(self.col_q) for _ in self.row_q]
        for r, c, v in self.entries():
            if self.ring.is_poly:
                if a_value is None:
                    raise ValueError("a_value required for a Q[a] matrix")
                v = v * a_value ** self.exponent(r, c)
            rows[r][c] = v
        return rows

    def __eq__(self, other):
        if not isinstance(other, GradedSparseMatrix):
            return NotImplemented
        return (self.ring == other.ring and self.row_q == other.row_q
                and self.col_q == other.col_q and self.cols == other.cols)

    def __repr__(self):
        return "GradedSparseMatrix(%dx%d, nnz=%d, %s)" % (*self.shape, self.nnz(), self.ring)


@dataclass
class ModuleDecomposition:
    """Graded module ``(+) R{q}  (+)  (+) R/(a^k){q}``.

    ``free`` counts free generators by quantum degree; ``torsion`` counts
    cyclic torsion summands by ``(quantum degree, order k)``.
    """

    free: Counter = field(default_factory=Counter)
    torsion: Counter = field(default_factory=Counter)

    def total_free(self) -> int:
        return sum(self.free.values())


def smith_pivots(m: GradedSparseMatrix) -> list[tuple[int, int, int]]:
    """Pivots ``(row, col, exponent)`` of a graded Smith reduction.

    Each step pivots on a nonzero entry of globally minimal ``a``-exponent.
    Because exponents are differences of row and column degrees, that entry
    divides every other entry of its row and column, so clearing them keeps
    the matrix homogeneous; the pivots are the invariant factors ``a**e``.
    Over Q every exponent is zero and this is plain Gaussian elimination.
    """
    ring = m.ring
    rows: dict[int, dict[int, Rational]] = {}
    cols: dict[int, dict[int, Rational]] = {}
    heap = []
    rq, cq = m.row_q, m.col_q
    for c, col in enumerate(m.cols):
        if col:
            cols[c] = dict(col)
            for r, v in col.items():
                rows.setdefault(r, {})[c] = v
                heapq.heappush(heap, (ring.exponent(rq[r], cq[c]), len(col), c, r))
    pivots = []
    while heap:
        e, _, c, r = heapq.heappop(heap)
        col = cols.get(c)
        if col is None or r not in col:
            continue
        p = col[r]
        prow = rows[r]
        for r2, v2 in list(col.items()):
            if r2 == r:
                continue
            f = div(v2, p)
            row2 = rows[r2]
            for c2, w in prow.items():
                if c2 == c:
                    continue
                nv = row2.get(c2, 0) - f * w
                if nv:
                    nv = _norm(nv)
                    row2[c2] = nv
                    cols[c2][r2] = nv
                    heapq.heappush(heap, (ring.exponent(rq[r2], cq[c2]), len(cols[c2]), c2, r2))
                else:
                    row2.pop(c2, None)
                    cols[c2].pop(r2, None)
            row2.pop(c, None)
        for c2 in prow:
            if c2 != c:
                cols[c2].pop(r, None)
        del rows[r]
        del cols[c]
        for r2 in list(col):
            if r2 != r and not rows.get(r2):
                rows.pop(r2, None)
        pivots.append((r, c, e))
    return pivots


def rank(m: GradedSparseMatrix) -> int:
    """Exact rank (over Q, or over the fraction field of Q[a])."""
    return len(smith_pivots(m))


def smith_over_poly(m: GradedSparseMatrix) -> list[int]:
    """Invariant factors ``a**k`` of a homogeneous Q[a] matrix, as sorted exponents."""
    if not m.ring.is_poly:
        raise ValueError("smith_over_poly needs a Q[a] matrix")
    m.check_homogeneous()
    return sorted(e for _, _, e in smith_pivots(m))


def homology_of_pair(d_in: GradedSparseMatrix, d_out: GradedSparseMatrix,
                     check: bool = True) -> ModuleDecomposition:
    """Homology ``ker(d_out) / im(d_in)`` at the middle module."""
    if d_in.row_q != d_out.col_q:
        raise ValueError("d_in and d_out do not share the middle module")
    if check and not (d_out @ d_in).is_zero():
        raise ValueError("composition d_out o d_in is nonzero")
    free = Counter(d_in.row_q)
    torsion: Counter = Counter()
    for _, c, _ in smith_pivots(d_out):
        free[d_out.col_q[c]] -= 1
    for r, _, e in smith_pivots(d_in):
        free[d_in.row_q[r]] -= 1
        if e > 0:
            torsion[(d_in.row_q[r], e)] += 1
    free = Counter({q: n for q, n in free.items() if n})
    if any(n < 0 for n in free.values()):
        raise ArithmeticError("negative free rank; graded pivots inconsistent")
    return ModuleDecomposition(free, torsion)
