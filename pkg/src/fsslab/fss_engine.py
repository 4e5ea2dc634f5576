"""Frolicher spectral sequence terms from exact zig-zag linear systems.

For a bigraded complex with anticommuting differentials ``del`` (bidegree
(1,0)) and ``delbar`` (bidegree (0,1)), the page entry E_r^{p,q} is the
quotient X_r^{p,q} / Y_r^{p,q} of two subspaces of the (p,q) slice:

* X_r^{p,q}: forms ``a_0`` of bidegree (p,q) admitting a zig-zag chain
  ``a_1, ..., a_{r-1}`` with ``a_j`` of bidegree (p+j, q-j) such that
  ``delbar a_0 = 0`` and ``del a_j + delbar a_{j+1} = 0`` for j < r-1
  (blocks outside the grid are the zero space, which silently turns the
  last in-range link equation into ``del a_last = 0``);
* Y_r^{p,q}: values ``delbar b_0 + del b_1`` over chains ``b_0`` of
  bidegree (p,q-1), ``b_1, ..., b_{r-1}`` of bidegrees (p-j, q-1+j),
  subject to ``delbar b_j + del b_{j+1} = 0`` (1 <= j <= r-2) and
  ``delbar b_{r-1} = 0``; at r = 1 the image is just ``delbar b_0``.

Everything reduces to kernel dimensions of one family of chain systems
(:meth:`FssEngine.chain_kernel_dim`), which are shared across pages and
bidegrees; explicit bases are extracted only where representatives or
membership certificates are needed.  The engine is generic over the
complex: Lie-algebra models and finite CDGA slices use the same code path.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from .exact_linalg import (
    GQ_ZERO,
    GaussianRational,
    SparseMatrix,
    SpanBuilder,
    Vector,
    image_dim_after_projection,
    kernel_projection_basis,
    solvable_columns,
)
from .complex_model import ComplexModel, Form

Bidegree = Tuple[int, int]


@dataclass(frozen=True)
class ZigZagSystem:
    """One assembled zig-zag constraint system.

    ``blocks`` lists the bidegrees of the unknown forms in column order
    (leading block first, so its coordinates are the contiguous range
    ``block_range(0)``).  For Y-type systems ``image_matrix`` maps a chain
    to ``delbar b_0 + del b_1`` in the (p,q) slice.
    """

    kind: str  # "X" or "Y"
    r: int
    p: int
    q: int
    blocks: Tuple[Bidegree, ...]
    block_dims: Tuple[int, ...]
    matrix: SparseMatrix
    image_matrix: Optional[SparseMatrix] = None

    def block_range(self, j: int) -> range:
        start = sum(self.block_dims[:j])
        return range(start, start + self.block_dims[j])


@dataclass
class PageTable:
    """Map (r,p,q) -> e_r^{p,q} plus the provenance of the ranks used."""

    model_name: str
    n: int
    r_max: int
    entries: Dict[Tuple[int, int, int], int]
    betti: Optional[List[int]] = None
    stabilized_at: Optional[int] = None

    def e(self, r: int, p: int, q: int) -> int:
        return self.entries.get((r, p, q), 0)

    def page(self, r: int) -> Dict[Bidegree, int]:
        return {
            (p, q): self.entries[(r, p, q)]
            for p in range(self.n + 1)
            for q in range(self.n + 1)
        }

    def page_total(self, r: int) -> int:
        return sum(self.page(r).values())

    def euler_characteristic(self, r: int) -> int:
        return sum(
            (-1) ** (p + q) * e for (p, q), e in self.page(r).items()
        )

    def rows(self):
        for r in range(1, self.r_max + 1):
            for p in range(self.n + 1):
                for q in range(self.n + 1):
                    yield r, p, q, self.entries[(r, p, q)]


@dataclass
class DegenerationReport:
    model_name: str
    first_degenerate_page: int
    per_page_diffs: List[Tuple[int, int, int, int, int]]  # (r, p, q, e_r, e_{r+1})
    table: PageTable


def _block_matrix(rows: int, cols: int, placed) -> SparseMatrix:
    entries = []
    for mat, roff, coff in placed:
        for r, c, v in mat.entries:
            entries.append((r + roff, c + coff, v))
    return SparseMatrix.from_entries(rows, cols, entries)


class FssEngine:
    """Spectral-sequence computations over one immutable bigraded complex."""

    def __init__(self, complex_):
        self.complex = complex_
        self._chain: Dict[Tuple[int, int, int], int] = {}
        self._lock = threading.Lock()

    # -- chain systems -------------------------------------------------------

    def x_system(self, r: int, p: int, q: int) -> ZigZagSystem:
        """X-type system: blocks (p,q), (p+1,q-1), ..., (p+r-1,q-r+1)."""
        c = self.complex
        blocks = tuple((p + j, q - j) for j in range(r))
        dims = tuple(c.dim(*b) for b in blocks)
        col_off = [0]
        for d in dims:
            col_off.append(col_off[-1] + d)
        placed = []
        row_off = 0
        # leading constraint: delbar on block 0
        t = c.dim(p, q + 1)
        if t and dims[0]:
            placed.append((c.delbar_matrix(p, q), row_off, col_off[0]))
        row_off += t if dims[0] else 0
        for j in range(r - 1):
            tp, tq = p + j + 1, q - j
            t = c.dim(tp, tq)
            if t == 0:
                continue
            any_col = False
            if dims[j]:
                placed.append((c.del_matrix(p + j, q - j), row_off, col_off[j]))
                any_col = True
            if dims[j + 1]:
                placed.append((c.delbar_matrix(p + j + 1, q - j - 1), row_off, col_off[j + 1]))
                any_col = True
            if any_col:
                row_off += t
        m = _block_matrix(row_off, col_off[-1], placed)
        return ZigZagSystem("X", r, p, q, blocks, dims, m)

    def y_system(self, r: int, p: int, q: int) -> ZigZagSystem:
        """Y-type system: blocks (p,q-1), (p-1,q), ..., (p-r+1,q+r-2)."""
        c = self.complex
        blocks = tuple((p - j, q - 1 + j) for j in range(r))
        dims = tuple(c.dim(*b) for b in blocks)
        col_off = [0]
        for d in dims:
            col_off.append(col_off[-1] + d)
        placed = []
        row_off = 0
        for m_idx in range(1, r - 1):
            tp, tq = p - m_idx, q + m_idx
            t = c.dim(tp, tq)
            if t == 0:
                continue
            any_col = False
            if dims[m_idx]:
                placed.append((c.delbar_matrix(p - m_idx, q + m_idx - 1), row_off, col_off[m_idx]))
                any_col = True
            if dims[m_idx + 1]:
                placed.append((c.del_matrix(p - m_idx - 1, q + m_idx), row_off, col_off[m_idx + 1]))
                any_col = True
            if any_col:
                row_off += t
        if r >= 2 and dims[r - 1]:
            t = c.dim(p - r + 1, q + r - 1)
            if t:
                placed.append(
                    (c.delbar_matrix(p - r + 1, q + r - 2), row_off, col_off[r - 1])
                )
                row_off += t
        m = _block_matrix(row_off, col_off[-1], placed)
        # image map into the (p,q) slice
        img_placed = []
        t = c.dim(p, q)
        if dims[0]:
            img_placed.append((c.delbar_matrix(p, q - 1), 0, col_off[0]))
        if r >= 2 and dims[1]:
            img_placed.append((c.del_matrix(p - 1, q), 0, col_off[1]))
        img = _block_matrix(t, col_off[-1], img_placed)
        return ZigZagSystem("Y", r, p, q, blocks, dims, m, img)

    # -- shared kernel dimensions ---------------------------------------------

    def chain_kernel_dim(self, p: int, q: int, length: int) -> int:
        """Kernel dimension of the X-type chain system with ``length`` blocks.

        Keys are normalised: leading zero-dimensional blocks are stripped
        (their link row is exactly the leading delbar row of the suffix
        chain) and trailing blocks past the grid are dropped once both the
        block and its link-row target are zero-dimensional.
        """
        c = self.complex
        while length > 0 and c.dim(p, q) == 0:
            p, q, length = p + 1, q - 1, length - 1
        while length > 1:
            lp, lq = p + length - 1, q - length + 1
            if c.dim(lp, lq) == 0 and c.dim(lp, lq + 1) == 0:
                length -= 1
            else:
                break
        if length <= 0:
            return 0
        key = (p, q, length)
        cached = self._chain.get(key)
        if cached is not None:
            return cached
        sys_ = self.x_system(length, p, q)
        dim = sum(sys_.block_dims) - _matrix_rank(sys_.matrix)
        with self._lock:
            self._chain[key] = dim
        return dim

    # -- dimensions ------------------------------------------------------------

    def x_dim(self, r: int, p: int, q: int) -> int:
        """dim X_r^{p,q}: the projection of the chain solution space onto
        its leading block, computed as a difference of chain kernels."""
        _require(r, p, q)
        return self.chain_kernel_dim(p, q, r) - self.chain_kernel_dim(p + 1, q - 1, r - 1)

    def y_dim(self, r: int, p: int, q: int) -> int:
        """dim Y_r^{p,q}: rank of the image map over the constrained chains."""
        _require(r, p, q)
        free = self.complex.dim(p, q - 1)
        lp, lq = p - r + 1, q + r - 2
        return free + self.chain_kernel_dim(lp, lq, r - 1) - self.chain_kernel_dim(lp, lq, r)

    def entry(self, r: int, p: int, q: int) -> int:
        """e_r^{p,q} = dim X_r - dim Y_r (the inclusion Y_r into X_r is a
        consequence of d*d = 0 and is re-verified by the invariant suite)."""
        return self.x_dim(r, p, q) - self.y_dim(r, p, q)

    # -- explicit bases ----------------------------------------------------------

    def x_projection_basis(self, r: int, p: int, q: int) -> List[Vector]:
        """Vectors in the (p,q) slice spanning X_r^{p,q} (a basis)."""
        _require(r, p, q)
        sys_ = self.x_system(r, p, q)
        if sys_.block_dims[0] == 0:
            return []
        return kernel_projection_basis(sys_.matrix, sys_.block_range(0))

    def y_image_basis(self, r: int, p: int, q: int) -> List[Vector]:
        """Vectors in the (p,q) slice spanning Y_r^{p,q} (a basis)."""
        _require(r, p, q)
        sys_ = self.y_system(r, p, q)
        img = sys_.image_matrix
        t = img.rows
        width = img.cols
        if t == 0:
            return []
        rows = [dict(row) for row in sys_.matrix.row_maps()]
        for r_i, row in enumerate(img.row_maps()):
            new = dict(row)
            new[width + r_i] = GaussianRational.of(-1)
            rows.append(new)
        aug = SparseMatrix.from_rows(rows, width + t)
        basis = kernel_projection_basis(aug, range(width, width + t))
        return [{c - width: v for c, v in vec.items()} for vec in basis]

    # -- membership ----------------------------------------------------------------

    def in_x(self, vec: Mapping[int, GaussianRational], r: int, p: int, q: int) -> bool:
        _require(r, p, q)
        c = self.complex
        if c.delbar_matrix(p, q).apply(vec):
            return False
        if r == 1:
            return True
        img = c.del_matrix(p, q).apply(vec)
        return self._extends(img, p, q, r)[0]

    def _extends(self, del_vecs_pq, p: int, q: int, r: int) -> List[bool]:
        """Solvability of the chain completion for one or many del-images.

        Each argument vector lives in the (p+1,q) slice; the affine system is
        ``delbar a_1 = -b`` plus the chain links, i.e. the X-type system at
        (p+1, q-1) with r-1 blocks and b placed in its leading row block.
        """
        if isinstance(del_vecs_pq, dict):
            del_vecs_pq = [del_vecs_pq]
        sys_ = self.x_system(r - 1, p + 1, q - 1)
        lead_rows = self.complex.dim(p + 1, q) if sys_.block_dims[0] else 0
        results = []
        pending = []
        pending_idx = []
        for i, b in enumerate(del_vecs_pq):
            if not b:
                results.append(True)
                continue
            if lead_rows == 0:
                results.append(False)
                continue
            results.append(None)
            pending.append({row: -v for row, v in b.items()})
            pending_idx.append(i)
        if pending:
            ok = solvable_columns(sys_.matrix, pending)
            out = []
            j = 0
            for res in results:
                if res is None:
                    out.append(ok[j])
                    j += 1
                else:
                    out.append(res)
            return out
        return results

    def in_y(self, vec: Mapping[int, GaussianRational], r: int, p: int, q: int) -> bool:
        _require(r, p, q)
        sys_ = self.y_system(r, p, q)
        img = sys_.image_matrix
        rows = [dict(row) for row in sys_.matrix.row_maps()]
        nconstraint = len(rows)
        rows.extend(dict(row) for row in img.row_maps())
        stacked = SparseMatrix.from_rows(rows, sys_.matrix.cols)
        b = {nconstraint + i: v for i, v in vec.items() if v}
        return solvable_columns(stacked, [b])[0]

    def verify_y_inside_x(self, r: int, p: int, q: int) -> bool:
        """Every basis vector of the computed Y_r lies in X_r (d*d = 0 cross-check)."""
        ybasis = self.y_image_basis(r, p, q)
        if not ybasis:
            return True
        c = self.complex
        for v in ybasis:
            if c.delbar_matrix(p, q).apply(v):
                return False
        if r == 1:
            return True
        imgs = [c.del_matrix(p, q).apply(v) for v in ybasis]
        return all(self._extends(imgs, p, q, r))

    # -- page assembly ------------------------------------------------------------

    def page_table(self, n: int, r_max: int, total_cohomology: Optional[int] = None,
                   jobs: int = 1, betti: Optional[List[int]] = None) -> PageTable:
        """All entries e_r^{p,q} for 1 <= r <= r_max on the [0,n]^2 grid.

        Once the total of a page equals the total cohomology dimension, the
        Frolicher inequalities force every later page to coincide with it,
        so remaining pages are copied rather than recomputed.
        """
        entries: Dict[Tuple[int, int, int], int] = {}
        grid = [(p, q) for p in range(n + 1) for q in range(n + 1)]
        stabilized = None
        name = getattr(self.complex, "name", "complex")
        for r in range(1, r_max + 1):
            if stabilized is not None:
                for p, q in grid:
                    entries[(r, p, q)] = entries[(stabilized, p, q)]
                continue
            if jobs > 1:
                from concurrent.futures import ThreadPoolExecutor

                with ThreadPoolExecutor(max_workers=jobs) as pool:
                    vals = list(pool.map(lambda pq: self.entry(r, *pq), grid))
                for (p, q), e in zip(grid, vals):
                    entries[(r, p, q)] = e
            else:
                for p, q in grid:
                    entries[(r, p, q)] = self.entry(r, p, q)
            if total_cohomology is not None:
                if sum(entries[(r, p, q)] for p, q in grid) == total_cohomology:
                    stabilized = r
        return PageTable(name, n, r_max, entries, betti=betti,
                         stabilized_at=stabilized)

    def dr_rank(self, r: int, p: int, q: int) -> int:
        """Rank of d_r on E_r^{p,q}, as dim((W + Y_t)/Y_t) with W the span of
        ``del(last chain block)`` over X-chain solutions and Y_t the Y-space
        of the target bidegree (p+r, q-r+1)."""
        _require(r, p, q)
        c = self.complex
        tp, tq = p + r, q - r + 1
        if tq < 0 or c.dim(tp, tq) == 0:
            return 0
        xsys = self.x_system(r, p, q)
        ysys = self.y_system(r, tp, tq)
        xw = sum(xsys.block_dims)
        yw = sum(ysys.block_dims)
        kx = self.chain_kernel_dim(p, q, r)
        kc = yw - _matrix_rank(ysys.matrix)
        rows: List[dict] = []
        for row in xsys.matrix.row_maps():
            rows.append(dict(row))
        base = len(rows)
        for row in ysys.matrix.row_maps():
            rows.append({col + xw: v for col, v in row.items()})
        link_rows = c.dim(tp, tq)
        link_off = len(rows)
        rows.extend({} for _ in range(link_rows))
        last = xsys.block_range(r - 1)
        if xsys.block_dims[r - 1]:
            dm = c.del_matrix(p + r - 1, q - r + 1)
            for rr, cc, v in dm.entries:
                rows[link_off + rr][last.start + cc] = v
        for rr, cc, v in ysys.image_matrix.entries:
            row = rows[link_off + rr]
            row[xw + cc] = row.get(xw + cc, GQ_ZERO) + v
        combined = SparseMatrix.from_rows(rows, xw + yw)
        kcomb = (xw + yw) - _matrix_rank(combined)
        w_plus_y = kx + kc - kcomb
        return w_plus_y - self.y_dim(r, tp, tq)


def _matrix_rank(m: SparseMatrix) -> int:
    from .exact_linalg import rank

    return rank(m)


def _require(r: int, p: int, q: int) -> None:
    if r < 1:
        raise ValueError(f"page index r={r} must be >= 1")
    if p < 0 or q < 0:
        raise ValueError(f"bidegree ({p},{q}) out of range")


# ---------------------------------------------------------------------------
# model-level API
# ---------------------------------------------------------------------------

_engines: "Dict[int, FssEngine]" = {}
_engines_lock = threading.Lock()


def engine_for(complex_) -> FssEngine:
    key = id(complex_)
    eng = _engines.get(key)
    if eng is None or eng.complex is not complex_:
        with _engines_lock:
            eng = _engines.get(key)
            if eng is None or eng.complex is not complex_:
                eng = FssEngine(complex_)
                _engines[key] = eng
    return eng


def _check_model_range(model: ComplexModel, p: int, q: int) -> None:
    if not (0 <= p <= model.n and 0 <= q <= model.n):
        raise ValueError(f"bidegree ({p},{q}) out of range for n={model.n}")


def x_dim(model: ComplexModel, r: int, p: int, q: int) -> int:
    _check_model_range(model, p, q)
    return engine_for(model).x_dim(r, p, q)


def y_dim(model: ComplexModel, r: int, p: int, q: int) -> int:
    _check_model_range(model, p, q)
    return engine_for(model).y_dim(r, p, q)


def page_dims(model: ComplexModel, r_max: Optional[int] = None, jobs: int = 1) -> PageTable:
    """PageTable of e_r^{p,q} for r = 1..r_max (default n+1)."""
    if r_max is None:
        r_max = model.n + 1
    betti = model.de_rham_betti()
    return engine_for(model).page_table(
        model.n, r_max, total_cohomology=sum(betti), jobs=jobs, betti=betti
    )


def dr_rank(model: ComplexModel, r: int, p: int, q: int) -> int:
    _check_model_range(model, p, q)
    return engine_for(model).dr_rank(r, p, q)


def class_membership(model: ComplexModel, x: Form, r: int, p: int, q: int) -> Tuple[bool, bool]:
    """(x in X_r^{p,q}, x in Y_r^{p,q}) by affine solvability of the zig-zags."""
    _check_model_range(model, p, q)
    if not x.is_zero() and x.bidegree() != (p, q):
        raise ValueError(f"form is not homogeneous of bidegree ({p},{q})")
    vec = model.coordinates(x, p, q)
    eng = engine_for(model)
    return eng.in_x(vec, r, p, q), eng.in_y(vec, r, p, q)


def representatives(model: ComplexModel, r: int, p: int, q: int) -> List[Form]:
    """Forms whose classes are a basis of E_r^{p,q}: members of the computed
    X_r basis that stay independent modulo Y_r."""
    _check_model_range(model, p, q)
    eng = engine_for(model)
    span = SpanBuilder()
    for v in eng.y_image_basis(r, p, q):
        span.add(v)
    reps = []
    for v in eng.x_projection_basis(r, p, q):
        if span.add(v):
            reps.append(model.form_from_coordinates(p, q, v))
    return reps


def degeneration_report(model: ComplexModel, r_max: Optional[int] = None) -> DegenerationReport:
    """First page from which the table no longer changes, plus every drop."""
    if r_max is None:
        r_max = model.n + 1
    table = page_dims(model, r_max=r_max)
    diffs = []
    for r in range(1, r_max):
        for p in range(model.n + 1):
            for q in range(model.n + 1):
                a = table.e(r, p, q)
                b = table.e(r + 1, p, q)
                if a != b:
                    diffs.append((r, p, q, a, b))
    first = r_max
    for r in range(r_max, 0, -1):
        if all(
            table.e(r, p, q) == table.e(r_max, p, q)
            for p in range(model.n + 1)
            for q in range(model.n + 1)
        ):
            first = r
        else:
            break
    return DegenerationReport(model.name, first, diffs, table)
