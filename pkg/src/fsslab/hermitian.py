"""Invariant Hermitian metrics and their special-metric predicates.

A metric is stored as the n x n Hermitian coefficient matrix H with
real-rational diagonal; its fundamental 2-form is

    F = i * sum_{k,l} H[k][l] w^k wedge conj(w^l),

which for n = 4 matches the coefficient dictionary
x_{kk} = H[k][k] (diagonal) and x_{kl} = i*H[k][l] for k < l.  Positivity
is decided exactly through leading principal minors (Sylvester); cofactors
H_rs follow the convention "determinant of H with row r and column s
removed", without the (-1)^{r+s} sign.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import List, Mapping, Optional, Sequence, Tuple

from .complex_model import ComplexModel, Form
from .exact_linalg import (
    GQ_ONE,
    GQ_ZERO,
    GaussianRational,
    dense_determinant,
    gq,
)


class MetricError(ValueError):
    pass


@dataclass(frozen=True)
class HermitianMetric:
    """Hermitian coefficient matrix plus its derived fundamental form."""

    n: int
    entries: Tuple[Tuple[GaussianRational, ...], ...]
    name: str = "metric"

    def __post_init__(self):
        h = self.entries
        if len(h) != self.n or any(len(row) != self.n for row in h):
            raise MetricError(f"H must be {self.n}x{self.n}")
        for k in range(self.n):
            if h[k][k].im:
                raise MetricError(f"diagonal entry H[{k + 1}][{k + 1}] must be real")
            for l in range(self.n):
                if h[l][k] != h[k][l].conjugate():
                    raise MetricError("H is not Hermitian")

    # -- constructors ---------------------------------------------------------

    @staticmethod
    def from_matrix(rows: Sequence[Sequence], name: str = "metric") -> "HermitianMetric":
        ent = tuple(tuple(GaussianRational.of(v) for v in row) for row in rows)
        return HermitianMetric(len(ent), ent, name)

    @staticmethod
    def identity(n: int) -> "HermitianMetric":
        return HermitianMetric.from_matrix(
            [[GQ_ONE if i == j else GQ_ZERO for j in range(n)] for i in range(n)],
            name="identity",
        )

    @staticmethod
    def diagonal(weights: Sequence, name: str = "diagonal") -> "HermitianMetric":
        n = len(weights)
        return HermitianMetric.from_matrix(
            [
                [GaussianRational.of(weights[i]) if i == j else GQ_ZERO for j in range(n)]
                for i in range(n)
            ],
            name=name,
        )

    @staticmethod
    def from_x_coefficients(
        n: int,
        diagonal: Mapping[int, Fraction],
        off_diagonal: Optional[Mapping[Tuple[int, int], GaussianRational]] = None,
        name: str = "metric",
    ) -> "HermitianMetric":
        """Build H from fundamental-form coefficients x_{k kbar}, x_{k lbar}.

        The dictionary keys are 1-based; H[k][l] = -i x_{k lbar} for k < l.
        Missing coefficients default to zero.
        """
        h = [[GQ_ZERO] * n for _ in range(n)]
        for k in range(1, n + 1):
            v = diagonal.get(k, Fraction(0))
            h[k - 1][k - 1] = GaussianRational.of(v)
        for (k, l), x in (off_diagonal or {}).items():
            if not 1 <= k < l <= n:
                raise MetricError(f"off-diagonal key ({k},{l}) must satisfy k < l")
            x = GaussianRational.of(x)
            v = gq(0, -1) * x
            h[k - 1][l - 1] = v
            h[l - 1][k - 1] = v.conjugate()
        return HermitianMetric.from_matrix(h, name=name)

    # -- derived data -----------------------------------------------------------

    @cached_property
    def fundamental_form(self) -> Form:
        f = Form.zero(self.n)
        i = gq(0, 1)
        for k in range(self.n):
            for l in range(self.n):
                c = self.entries[k][l]
                if c:
                    f = f + Form.monomial(self.n, (k + 1, -(l + 1)), i * c)
        return f

    def scale(self, s) -> "HermitianMetric":
        s = GaussianRational.of(s)
        if s.im or s.re <= 0:
            raise MetricError("metric scale must be a positive rational")
        return HermitianMetric.from_matrix(
            [[v * s for v in row] for row in self.entries], name=self.name
        )

    def __repr__(self):
        return f"HermitianMetric({self.name!r}, n={self.n})"


def is_positive_definite(h: HermitianMetric) -> bool:
    """Exact Sylvester criterion: all leading principal minors positive."""
    for k in range(1, h.n + 1):
        sub = [row[:k] for row in h.entries[:k]]
        d = dense_determinant(sub)
        if d.im:
            raise MetricError("principal minor of a Hermitian matrix must be real")
        if d.re <= 0:
            return False
    return True


def cofactor(h: HermitianMetric, r: int, s: int) -> GaussianRational:
    """Determinant of H with row r and column s removed (1-based, unsigned)."""
    if not (1 <= r <= h.n and 1 <= s <= h.n):
        raise IndexError(f"cofactor index ({r},{s}) out of range 1..{h.n}")
    sub = [
        [v for j, v in enumerate(row) if j != s - 1]
        for i, row in enumerate(h.entries)
        if i != r - 1
    ]
    return dense_determinant(sub)


def _check_pair(model: ComplexModel, metric: HermitianMetric) -> None:
    if model.n != metric.n:
        raise MetricError(
            f"metric dimension {metric.n} does not match model dimension {model.n}"
        )


def form_power(f: Form, k: int) -> Form:
    out = Form.monomial(f.n, ())
    for _ in range(k):
        out = out.wedge(f)
    return out


def is_balanced(model: ComplexModel, metric: HermitianMetric) -> bool:
    """del F wedge F^{n-2} = 0 for n >= 3; for n = 2 the condition is dF = 0."""
    _check_pair(model, metric)
    f = metric.fundamental_form
    if model.n < 2:
        return True
    if model.n == 2:
        return model.d(f).is_zero()
    lhs = model.partial(f).wedge(form_power(f, model.n - 2))
    return lhs.is_zero()


def is_skt(model: ComplexModel, metric: HermitianMetric) -> bool:
    """Pluriclosed: del delbar F = 0."""
    _check_pair(model, metric)
    f = metric.fundamental_form
    return model.partial(model.partial_bar(f)).is_zero()


def is_kth_gauduchon(model: ComplexModel, metric: HermitianMetric, k: int) -> bool:
    """del delbar (F^k) wedge F^{n-k-1} = 0 for 1 <= k <= n-1."""
    _check_pair(model, metric)
    n = model.n
    if not 1 <= k <= n - 1:
        raise MetricError(f"k = {k} out of range 1..{n - 1}")
    f = metric.fundamental_form
    lhs = model.partial(model.partial_bar(form_power(f, k)))
    return lhs.wedge(form_power(f, n - k - 1)).is_zero()


def is_standard(model: ComplexModel, metric: HermitianMetric) -> bool:
    return is_kth_gauduchon(model, metric, model.n - 1)


def c1_constant(model: ComplexModel, metric: HermitianMetric) -> Fraction:
    """The real rational c with (i/2) del delbar F wedge F^{n-2} = c * F^n."""
    _check_pair(model, metric)
    n = model.n
    if n < 2:
        raise MetricError("c1 needs complex dimension >= 2")
    f = metric.fundamental_form
    lhs = model.partial(model.partial_bar(f)).wedge(form_power(f, n - 2))
    lhs = lhs.scaled(gq(0, Fraction(1, 2)))
    vol = form_power(f, n)
    top = tuple(range(1, n + 1)) + tuple(-k for k in range(1, n + 1))
    denom = vol.coefficient(top)
    if not denom:
        raise MetricError("F^n vanishes; the metric is degenerate")
    num = lhs.coefficient(top)
    stray_l = {m for m in lhs.terms if m != top}
    stray_v = {m for m in vol.terms if m != top}
    if stray_l or stray_v:
        raise ArithmeticError("top-degree forms have off-volume components")
    c = num / denom
    if c.im:
        raise ArithmeticError(f"c1 came out non-real ({c}); conventions are broken")
    return c.re


# ---------------------------------------------------------------------------
# closed-form balanced residuals for the two 8-dimensional families
# ---------------------------------------------------------------------------

def _imag(v: GaussianRational) -> GaussianRational:
    return GaussianRational.of(v.im)


def family_balance_residuals(family: str, params, metric: HermitianMetric):
    """The coefficients (A, B, C) of (1/2) del F wedge F^2 on the monomials
    w^{1234,conj(123)}, w^{1234,conj(124)}, w^{1234,conj(134)}, from the
    closed-form cofactor expressions.  ``params`` carries the family tuple
    attributes (epsilon, nu, a, b, delta) or (epsilon, mu, nu, a, b)."""
    if metric.n != 4:
        raise MetricError("family residuals are defined for n = 4")
    h11 = cofactor(metric, 1, 1)
    h12 = cofactor(metric, 1, 2)
    h13 = cofactor(metric, 1, 3)
    h14 = cofactor(metric, 1, 4)
    h22 = cofactor(metric, 2, 2)
    i = gq(0, 1)
    if family == "I":
        eps = Fraction(params.epsilon)
        nu = Fraction(params.nu)
        a = Fraction(params.a)
        b = Fraction(params.b)
        delta = Fraction(params.delta)
        A = -nu * h11 - i * b * h22 + 2 * i * delta * _imag(h13)
        B = -delta * eps * b * h12.conjugate() - i * a * h12 - i * h14.conjugate()
        C = -i * eps * h11
        return A, B, C
    if family == "II":
        eps = Fraction(params.epsilon)
        mu = Fraction(params.mu)
        nu = Fraction(params.nu)
        a = Fraction(params.a)
        b = Fraction(params.b)
        h24 = cofactor(metric, 2, 4)
        A = -nu * h11 + i * (mu * h22 - 2 * b * _imag(h12) + 2 * _imag(h13))
        B = -2 * eps * _imag(h12) + mu * h24.conjugate() + i * a * h11
        C = i * h14.conjugate()
        return A, B, C
    raise ValueError(f"unknown family {family!r}; expected 'I' or 'II'")


def half_delF_wedge_F2_coefficients(model: ComplexModel, metric: HermitianMetric):
    """Directly computed coefficients of (1/2) del F wedge F^2 in the basis
    of (4,3) monomials with full holomorphic part; the independent route
    against which :func:`family_balance_residuals` is checked."""
    if model.n != 4:
        raise MetricError("defined for n = 4")
    _check_pair(model, metric)
    f = metric.fundamental_form
    w = model.partial(f).wedge(f.wedge(f)).scaled(Fraction(1, 2))
    mono = lambda conj: (1, 2, 3, 4) + conj
    coeffs = (
        w.coefficient(mono((-1, -2, -3))),
        w.coefficient(mono((-1, -2, -4))),
        w.coefficient(mono((-1, -3, -4))),
        w.coefficient(mono((-2, -3, -4))),
    )
    return coeffs


def random_positive_metric(rng: random.Random, n: int, spread: int = 3) -> HermitianMetric:
    """Random Hermitian positive-definite H with small Gaussian-rational
    entries: random off-diagonal part made diagonally dominant, then the
    Sylvester criterion is re-checked exactly."""
    def rand_rat():
        return Fraction(rng.randint(-spread, spread), rng.randint(1, 3))

    h = [[GQ_ZERO] * n for _ in range(n)]
    for k in range(n):
        for l in range(k + 1, n):
            v = GaussianRational(rand_rat(), rand_rat())
            h[k][l] = v
            h[l][k] = v.conjugate()
    for k in range(n):
        bound = sum(abs(h[k][l].re) + abs(h[k][l].im) for l in range(n) if l != k)
        h[k][k] = GaussianRational.of(bound + Fraction(rng.randint(1, spread)))
    metric = HermitianMetric.from_matrix(h, name="random")
    if not is_positive_definite(metric):
        raise AssertionError("diagonally dominant Hermitian matrix must be positive")
    return metric


# ---------------------------------------------------------------------------
# metric files
# ---------------------------------------------------------------------------

# Format:
#   metric "<name>" dim <n>
#   x <k> <k> = <rational>
#   x <k> <l> = (<re>,<im>)        for k < l
# Unset coefficients are zero.


def parse_metric(text: str) -> HermitianMetric:
    name = None
    n = None
    diag = {}
    off = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("metric"):
            if name is not None:
                raise MetricError(f"line {lineno}: duplicate metric header")
            try:
                name = line[line.index('"') + 1: line.rindex('"')]
            except ValueError:
                raise MetricError(f"line {lineno}: metric header needs a quoted name")
            parts = line.split()
            if parts[-2] != "dim":
                raise MetricError(f"line {lineno}: expected dim <n>")
            n = int(parts[-1])
            continue
        if not line.startswith("x "):
            raise MetricError(f"line {lineno}: unrecognised statement {line!r}")
        if n is None:
            raise MetricError(f"line {lineno}: coefficient before metric header")
        lhs, _, rhs = line.partition("=")
        parts = lhs.split()
        if len(parts) != 3 or not _:
            raise MetricError(f"line {lineno}: expected x <k> <l> = ...")
        k, l = int(parts[1]), int(parts[2])
        rhs = rhs.strip()
        if k == l:
            diag[k] = Fraction(rhs)
        elif k < l:
            if not (rhs.startswith("(") and rhs.endswith(")")):
                raise MetricError(f"line {lineno}: off-diagonal needs (<re>,<im>)")
            re_s, _, im_s = rhs[1:-1].partition(",")
            off[(k, l)] = GaussianRational(Fraction(re_s.strip()), Fraction(im_s.strip()))
        else:
            raise MetricError(f"line {lineno}: store x {l} {k} instead (k < l)")
    if name is None or n is None:
        raise MetricError("missing metric header")
    return HermitianMetric.from_x_coefficients(n, diag, off, name=name)


def emit_metric(metric: HermitianMetric) -> str:
    lines = [f'metric "{metric.name}" dim {metric.n}']
    i = gq(0, 1)
    for k in range(metric.n):
        v = metric.entries[k][k]
        if v:
            lines.append(f"x {k + 1} {k + 1} = {v.re}")
    for k in range(metric.n):
        for l in range(k + 1, metric.n):
            x = i * metric.entries[k][l]  # x_{k lbar} = i H[k][l]
            if x:
                lines.append(f"x {k + 1} {l + 1} = ({x.re},{x.im})")
    return "\n".join(lines) + "\n"
