"""Products: direct-sum models, page-table convolution, product constants."""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, Optional, Tuple

from .complex_model import ComplexModel, Form
from .fss_engine import PageTable
from .hermitian import HermitianMetric


def _shift_form(f: Form, n_total: int, offset: int) -> Form:
    out = Form.zero(n_total)
    terms = {}
    for mono, c in f.terms.items():
        shifted = tuple(i + offset if i > 0 else i - offset for i in mono)
        terms[shifted] = c
    out.terms = dict(terms)
    return out


def product_model(m1: ComplexModel, m2: ComplexModel, name: Optional[str] = None) -> ComplexModel:
    """Direct-sum structure equations; the right factor's coframe is
    relabelled to n1+1..n1+n2 and validation is re-run."""
    n = m1.n + m2.n
    d_gen = {}
    for k in range(1, m1.n + 1):
        d_gen[k] = _shift_form(m1.d_generator(k), n, 0)
    for k in range(1, m2.n + 1):
        d_gen[m1.n + k] = _shift_form(m2.d_generator(k), n, m1.n)
    if name is None:
        name = f"{m1.name} x {m2.name}"
    return ComplexModel(n, name, d_gen)


def product_metric(h1: HermitianMetric, h2: HermitianMetric, name: str = "product") -> HermitianMetric:
    """Block-diagonal H, the matrix of F + F' on the product coframe."""
    from .exact_linalg import GQ_ZERO

    n = h1.n + h2.n
    rows = []
    for i in range(n):
        row = []
        for j in range(n):
            if i < h1.n and j < h1.n:
                row.append(h1.entries[i][j])
            elif i >= h1.n and j >= h1.n:
                row.append(h2.entries[i - h1.n][j - h1.n])
            else:
                row.append(GQ_ZERO)
        rows.append(row)
    return HermitianMetric.from_matrix(rows, name=name)


def kunneth_page(t1: PageTable, t2: PageTable, r: int) -> Dict[Tuple[int, int], int]:
    """e_r^{p,q}(product) by convolution of the factors' page-r entries."""
    if r > t1.r_max or r > t2.r_max:
        raise ValueError(f"page {r} missing from one of the tables")
    n = t1.n + t2.n
    out: Dict[Tuple[int, int], int] = {}
    for p in range(n + 1):
        for q in range(n + 1):
            s = 0
            for p1 in range(0, min(p, t1.n) + 1):
                p2 = p - p1
                if p2 > t2.n:
                    continue
                for q1 in range(0, min(q, t1.n) + 1):
                    q2 = q - q1
                    if q2 > t2.n:
                        continue
                    a = t1.e(r, p1, q1)
                    if not a:
                        continue
                    b = t2.e(r, p2, q2)
                    if b:
                        s += a * b
            out[(p, q)] = s
    return out


def product_c1(c1: Fraction, n1: int, c1p: Fraction, n2: int) -> Fraction:
    """Gauduchon constant of the product metric F + F' from the factors."""
    if n1 < 1 or n2 < 1:
        raise ValueError("factor dimensions must be >= 1")
    n = n1 + n2
    denom = n * (n - 1)
    return Fraction(n1 * (n1 - 1), denom) * c1 + Fraction(n2 * (n2 - 1), denom) * c1p
