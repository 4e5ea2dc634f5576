"""Exact sparse linear algebra over the Gaussian rationals.

Every coefficient in this package is a complex number ``a + b*i`` with
rational ``a``, ``b`` (:class:`GaussianRational`).  Ranks, kernels and
solvability questions are decided by exact row elimination, never by
floating point: a single rounding error would flip a page dimension.

The production eliminator works fraction-free.  Rows are scaled to Gaussian
*integer* entries, every update is ``row := pivot*row - entry*pivot_row``
followed by integer content removal, and pivots are chosen Markowitz-style
(sparsest column, then sparsest row, preferring unit pivots) to limit
fill-in.  A naive rational eliminator is kept as an independent cross-check
oracle for the test suite.

Column conventions: composite systems lay out their unknown blocks in a
fixed documented order, so "the projection onto block j" is always a
contiguous column range (see :func:`kernel_projection_basis`).
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Mapping, Sequence, Union

Scalar = Union[int, Fraction, "GaussianRational"]


def _fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"expected a rational, got {type(x).__name__}")


@dataclass(frozen=True)
class GaussianRational:
    """Exact complex scalar with rational real and imaginary parts.

    ``Fraction`` keeps both parts in reduced form with positive
    denominator, so equality is exact and hashing is well defined.
    """

    re: Fraction = Fraction(0)
    im: Fraction = Fraction(0)

    def __post_init__(self):
        if not isinstance(self.re, Fraction):
            object.__setattr__(self, "re", _fraction(self.re))
        if not isinstance(self.im, Fraction):
            object.__setattr__(self, "im", _fraction(self.im))

    @staticmethod
    def of(x: Scalar) -> "GaussianRational":
        if isinstance(x, GaussianRational):
            return x
        return GaussianRational(_fraction(x))

    def __bool__(self) -> bool:
        return bool(self.re) or bool(self.im)

    def __add__(self, other: Scalar) -> "GaussianRational":
        o = GaussianRational.of(other)
        return GaussianRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other: Scalar) -> "GaussianRational":
        o = GaussianRational.of(other)
        return GaussianRational(self.re - o.re, self.im - o.im)

    def __rsub__(self, other: Scalar) -> "GaussianRational":
        return GaussianRational.of(other) - self

    def __neg__(self) -> "GaussianRational":
        return GaussianRational(-self.re, -self.im)

    def __mul__(self, other: Scalar) -> "GaussianRational":
        o = GaussianRational.of(other)
        return GaussianRational(
            self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re
        )

    __rmul__ = __mul__

    def __truediv__(self, other: Scalar) -> "GaussianRational":
        o = GaussianRational.of(other)
        n = o.re * o.re + o.im * o.im
        if not n:
            raise ZeroDivisionError("division by zero GaussianRational")
        return GaussianRational(
            (self.re * o.re + self.im * o.im) / n,
            (self.im * o.re - self.re * o.im) / n,
        )

    def __rtruediv__(self, other: Scalar) -> "GaussianRational":
        return GaussianRational.of(other) / self

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    @property
    def is_real(self) -> bool:
        return not self.im

    def __str__(self) -> str:
        if not self.im:
            return str(self.re)
        if not self.re:
            return f"{self.im}i"
        sign = "+" if self.im > 0 else "-"
        return f"{self.re}{sign}{abs(self.im)}i"

    def __repr__(self) -> str:
        return f"GQ({self.re},{self.im})"


GQ_ZERO = GaussianRational()
GQ_ONE = GaussianRational(Fraction(1))
GQ_I = GaussianRational(Fraction(0), Fraction(1))


def gq(re: Scalar = 0, im: Scalar = 0) -> GaussianRational:
    """Shorthand constructor used heavily in tests and catalog data."""
    return GaussianRational(_fraction(re) if not isinstance(re, Fraction) else re,
                            _fraction(im) if not isinstance(im, Fraction) else im)


#: sparse coordinate vector: column index -> nonzero GaussianRational
Vector = dict


@dataclass(frozen=True)
class SparseMatrix:
    """Immutable sparse matrix with row-major, duplicate-free entries."""

    rows: int
    cols: int
    entries: tuple  # tuple[(row, col, GaussianRational), ...]

    @staticmethod
    def from_entries(rows: int, cols: int, entries: Iterable) -> "SparseMatrix":
        acc = {}
        for r, c, v in entries:
            if not (0 <= r < rows and 0 <= c < cols):
                raise IndexError(f"entry ({r},{c}) outside {rows}x{cols}")
            v = GaussianRational.of(v)
            if (r, c) in acc:
                acc[(r, c)] = acc[(r, c)] + v
            else:
                acc[(r, c)] = v
        clean = tuple(
            (r, c, v) for (r, c), v in sorted(acc.items()) if v
        )
        return SparseMatrix(rows, cols, clean)

    @staticmethod
    def from_rows(rows_maps: Sequence[Mapping[int, GaussianRational]], cols: int) -> "SparseMatrix":
        ents = []
        for r, row in enumerate(rows_maps):
            for c, v in row.items():
                ents.append((r, c, v))
        return SparseMatrix.from_entries(len(rows_maps), cols, ents)

    def transpose(self) -> "SparseMatrix":
        return SparseMatrix.from_entries(
            self.cols, self.rows, ((c, r, v) for r, c, v in self.entries)
        )

    def row_maps(self) -> list:
        rows = [dict() for _ in range(self.rows)]
        for r, c, v in self.entries:
            rows[r][c] = v
        return rows

    def apply(self, v: Mapping[int, GaussianRational]) -> Vector:
        """Matrix times sparse coordinate vector."""
        out: Vector = {}
        cols = {}
        for r, c, val in self.entries:
            cols.setdefault(c, []).append((r, val))
        for c, x in v.items():
            if not x:
                continue
            for r, val in cols.get(c, ()):
                cur = out.get(r, GQ_ZERO) + val * x
                if cur:
                    out[r] = cur
                elif r in out:
                    del out[r]
        return out

    def to_dense(self):
        dense = [[GQ_ZERO] * self.cols for _ in range(self.rows)]
        for r, c, v in self.entries:
            dense[r][c] = v
        return dense


class ArithmeticStats:
    """Running record of the largest integer seen during elimination."""

    def __init__(self):
        self._lock = threading.Lock()
        self.max_numerator_bits = 0

    def record(self, n: int) -> None:
        b = n.bit_length()
        if b > self.max_numerator_bits:
            with self._lock:
                if b > self.max_numerator_bits:
                    self.max_numerator_bits = b

    def reset(self) -> None:
        with self._lock:
            self.max_numerator_bits = 0


stats = ArithmeticStats()


# ---------------------------------------------------------------------------
# fraction-free elimination core
# ---------------------------------------------------------------------------

def _int_rows(m: SparseMatrix) -> list:
    """Rows as dicts col -> (a, b) Gaussian integers, scaled per row."""
    rows = []
    for row in m.row_maps():
        if not row:
            continue
        l = 1
        for v in row.values():
            l = l * v.re.denominator // gcd(l, v.re.denominator)
            l = l * v.im.denominator // gcd(l, v.im.denominator)
        irow = {}
        for c, v in row.items():
            irow[c] = (int(v.re * l), int(v.im * l))
        _strip_content(irow)
        rows.append(irow)
    return rows


def _strip_content(row: dict) -> None:
    g = 0
    big = 0
    for a, b in row.values():
        g = gcd(g, gcd(a, b))
        m = max(abs(a), abs(b))
        if m > big:
            big = m
    if big:
        stats.record(big)
    if g > 1:
        for c, (a, b) in row.items():
            row[c] = (a // g, b // g)


def _is_unit(v) -> bool:
    a, b = v
    return abs(a) + abs(b) == 1


class Echelon:
    """Result of one elimination pass.

    ``pivots`` lists ``(pivot_col, integer_row)`` in elimination order; when
    pivot ``k`` was processed, its column was cleared from every row that was
    still active, so back-substitution in reverse order is valid.  ``rest``
    holds the surviving rows whose support lies entirely in ``late`` columns.
    """

    def __init__(self, pivots, rest, late):
        self.pivots = pivots
        self.rest = rest
        self.late = late

    @property
    def pivot_count(self) -> int:
        return len(self.pivots)


def _eliminate(rows: list, late=frozenset()) -> Echelon:
    active = {i: row for i, row in enumerate(rows) if row}
    col_rows: dict = {}
    for i, row in active.items():
        for c in row:
            if c not in late:
                col_rows.setdefault(c, set()).add(i)
    pivots = []
    while True:
        best = None
        for c, holders in col_rows.items():
            if not holders:
                continue
            key = (len(holders), c)
            if best is None or key < best[0]:
                best = (key, c)
        if best is None:
            break
        c0 = best[1]
        holders = col_rows[c0]
        r0 = min(
            holders,
            key=lambda i: (len(active[i]), not _is_unit(active[i][c0]), i),
        )
        prow = active.pop(r0)
        for c in prow:
            s = col_rows.get(c)
            if s is not None:
                s.discard(r0)
        pv = prow[c0]
        pa, pb = pv
        targets = list(col_rows.get(c0, ()))
        for ri in targets:
            row = active[ri]
            w = row[c0]
            wa, wb = w
            old_support = set(row)
            if (pa, pb) != (1, 0):
                for c, (xa, xb) in list(row.items()):
                    row[c] = (pa * xa - pb * xb, pa * xb + pb * xa)
            for c, (ya, yb) in prow.items():
                ta = wa * ya - wb * yb
                tb = wa * yb + wb * ya
                cur = row.get(c)
                if cur is None:
                    if ta or tb:
                        row[c] = (-ta, -tb)
                else:
                    na, nb = cur[0] - ta, cur[1] - tb
                    if na or nb:
                        row[c] = (na, nb)
                    else:
                        del row[c]
            _strip_content(row)
            new_support = set(row)
            for c in old_support - new_support:
                s = col_rows.get(c)
                if s is not None:
                    s.discard(ri)
            for c in new_support - old_support:
                if c not in late:
                    col_rows.setdefault(c, set()).add(ri)
            if not row:
                del active[ri]
        del col_rows[c0]
        pivots.append((c0, prow))
    rest = [row for _, row in sorted(active.items()) if row]
    return Echelon(pivots, rest, late)


def _gq_of_pair(v) -> GaussianRational:
    return GaussianRational(Fraction(v[0]), Fraction(v[1]))


def _back_substitute(pivots, free_assign: Vector) -> Vector:
    """Complete ``free_assign`` to a kernel vector of the eliminated rows."""
    sol = dict(free_assign)
    for c0, row in reversed(pivots):
        s = GQ_ZERO
        for c, v in row.items():
            if c == c0:
                continue
            x = sol.get(c)
            if x is not None:
                s = s + _gq_of_pair(v) * x
        if s:
            sol[c0] = -s / _gq_of_pair(row[c0])
    return {c: v for c, v in sol.items() if v}


# ---------------------------------------------------------------------------
# public operations
# ---------------------------------------------------------------------------

def rank(m: SparseMatrix) -> int:
    """Exact rank over the field of Gaussian rationals."""
    return _eliminate(_int_rows(m)).pivot_count


def kernel_basis(m: SparseMatrix) -> list:
    """Exact basis of the null space; length == cols - rank."""
    ech = _eliminate(_int_rows(m))
    pivot_cols = {c for c, _ in ech.pivots}
    basis = []
    for c in range(m.cols):
        if c in pivot_cols:
            continue
        basis.append(_back_substitute(ech.pivots, {c: GQ_ONE}))
    return basis


def _check_keep(m: SparseMatrix, keep) -> list:
    keep = list(keep)
    for c in keep:
        if not 0 <= c < m.cols:
            raise IndexError(f"kept column {c} outside 0..{m.cols - 1}")
    return keep


def kernel_projection_basis(m: SparseMatrix, keep) -> list:
    """Basis of the projection of ker(m) onto the ``keep`` coordinates.

    Eliminates the non-kept columns first; the surviving rows constrain the
    kept coordinates alone, and any solution of that reduced system lifts to
    a full kernel vector (the eliminated part is solvable by construction).
    Returned vectors carry the original column indices.
    """
    keep = _check_keep(m, keep)
    keepset = frozenset(keep)
    ech = _eliminate(_int_rows(m), late=keepset)
    reduced = [
        {c: _gq_of_pair(v) for c, v in row.items()} for row in ech.rest
    ]
    pos = {c: i for i, c in enumerate(sorted(keepset))}
    sub = SparseMatrix.from_rows(
        [{pos[c]: v for c, v in row.items()} for row in reduced], len(pos)
    )
    inv = {i: c for c, i in pos.items()}
    return [
        {inv[i]: v for i, v in vec.items()} for vec in kernel_basis(sub)
    ]


def image_dim_after_projection(m: SparseMatrix, keep) -> int:
    """dim of the projection of ker(m) onto the kept coordinate range."""
    keep = _check_keep(m, keep)
    keepset = frozenset(keep)
    ech = _eliminate(_int_rows(m), late=keepset)
    pos = {c: i for i, c in enumerate(sorted(keepset))}
    sub_rows = [
        {pos[c]: _gq_of_pair(v) for c, v in row.items()} for row in ech.rest
    ]
    sub = SparseMatrix.from_rows(sub_rows, len(pos))
    return len(keepset) - rank(sub)


def solvable_columns(m: SparseMatrix, columns: Sequence[Mapping[int, GaussianRational]]) -> list:
    """For each vector b, decide exactly whether m·u = b has a solution.

    All right-hand sides share a single elimination: they are appended as
    extra columns flagged late, and b_j is in the column space iff no
    surviving row touches its slot.
    """
    rows = m.row_maps()
    width = m.cols
    aug_rows = []
    for r, row in enumerate(rows):
        row = dict(row)
        for j, b in enumerate(columns):
            v = b.get(r)
            if v:
                row[width + j] = v
        aug_rows.append(row)
    aug = SparseMatrix.from_rows(aug_rows, width + len(columns))
    late = frozenset(range(width, width + len(columns)))
    ech = _eliminate(_int_rows(aug), late=late)
    bad = set()
    for row in ech.rest:
        for c in row:
            bad.add(c - width)
    return [j not in bad for j in range(len(columns))]


def vectors_rank(vectors: Sequence[Mapping[int, GaussianRational]], dim: int) -> int:
    """Rank of a list of coordinate vectors inside a dim-dimensional space."""
    return rank(SparseMatrix.from_rows(list(vectors), dim))


class SpanBuilder:
    """Incremental span with exact membership tests (naive arithmetic).

    Used for picking representatives: vectors are reduced against the rows
    already accepted, and only rank-increasing vectors are kept.
    """

    def __init__(self):
        self._rows = []  # list of (pivot_col, reduced row dict)

    def reduce(self, vec: Mapping[int, GaussianRational]) -> Vector:
        v = {c: x for c, x in vec.items() if x}
        for c0, row in self._rows:
            x = v.get(c0)
            if x:
                for c, y in row.items():
                    cur = v.get(c, GQ_ZERO) - x * y
                    if cur:
                        v[c] = cur
                    elif c in v:
                        del v[c]
        return v

    def add(self, vec: Mapping[int, GaussianRational]) -> bool:
        """Insert vec; True iff it enlarged the span."""
        v = self.reduce(vec)
        if not v:
            return False
        c0 = min(v)
        pv = v[c0]
        row = {c: x / pv for c, x in v.items() if c != c0}
        self._rows.append((c0, row))
        return True

    def contains(self, vec) -> bool:
        return not self.reduce(vec)

    @property
    def dim(self) -> int:
        return len(self._rows)


def naive_rank(m: SparseMatrix) -> int:
    """Reference rank by plain rational Gaussian elimination (oracle)."""
    rows = [row for row in m.row_maps() if row]
    rk = 0
    for c in range(m.cols):
        piv = None
        for i, row in enumerate(rows):
            if row.get(c):
                piv = i
                break
        if piv is None:
            continue
        prow = rows.pop(piv)
        pv = prow[c]
        for row in rows:
            x = row.get(c)
            if not x:
                continue
            f = x / pv
            for cc, y in prow.items():
                cur = row.get(cc, GQ_ZERO) - f * y
                if cur:
                    row[cc] = cur
                elif cc in row:
                    del row[cc]
        rows = [row for row in rows if row]
        rk += 1
    return rk


def dense_determinant(h: Sequence[Sequence[GaussianRational]]) -> GaussianRational:
    """Exact determinant of a small dense matrix (rational elimination)."""
    n = len(h)
    a = [list(row) for row in h]
    det = GQ_ONE
    for c in range(n):
        piv = None
        for r in range(c, n):
            if a[r][c]:
                piv = r
                break
        if piv is None:
            return GQ_ZERO
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            det = -det
        pv = a[c][c]
        det = det * pv
        for r in range(c + 1, n):
            if not a[r][c]:
                continue
            f = a[r][c] / pv
            for cc in range(c, n):
                a[r][cc] = a[r][cc] - f * a[c][cc]
    return det
