"""Constructors for every concrete model used by the reference tables.

Families I and II are the two classes of 8-real-dimensional nilpotent Lie
algebras with 1-dimensional center and invariant complex structure, written
on a (1,0)-coframe w^1..w^4:

Family I (parameters epsilon, nu in {0,1}, a >= 0, b rational, delta = +-1,
(a,b) != (0,0)):

    d w^1 = 0
    d w^2 = epsilon w^{1,-1}
    d w^3 = w^{1,4} + w^{1,-4} + a w^{2,-1} + i delta epsilon b w^{1,-2}
    d w^4 = i nu w^{1,-1} + b w^{2,-2} + i delta (w^{1,-3} - w^{3,-1})

Family II (epsilon, mu, nu in {0,1}, a, b rational):

    d w^1 = 0
    d w^2 = w^{1,4} + w^{1,-4}
    d w^3 = a w^{1,-1} + epsilon (w^{1,2} + w^{1,-2} - w^{2,-1})
            + i mu (w^{2,4} + w^{2,-4})
    d w^4 = i nu w^{1,-1} - mu w^{2,-2} + i b (w^{1,-2} - w^{2,-1})
            + i (w^{1,-3} - w^{3,-1})

The module also carries the 2-step tower models of every complex dimension
4n-2 (``bigalke_rollenske``), the 6-dimensional model with a page drop at
r = 3 (``cfg_example``), a 3-dimensional model whose unit-coframe metric
has negative Gauduchon constant, the list of real nilpotent Lie algebras
with 1-dimensional center in dimension 8, and the expected-value rows that
drive the table-reproduction harness.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, List, Mapping, Optional, Sequence, Tuple

from .complex_model import ComplexModel, Form, canonical_monomial
from .exact_linalg import GQ_ONE, GaussianRational, SparseMatrix, gq, rank


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"expected rational, got {x!r}")


# ---------------------------------------------------------------------------
# family tuples
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FamilyTupleI:
    epsilon: int
    nu: int
    a: Fraction
    b: Fraction
    delta: int = 1

    def __post_init__(self):
        object.__setattr__(self, "a", _frac(self.a))
        object.__setattr__(self, "b", _frac(self.b))
        if self.epsilon not in (0, 1) or self.nu not in (0, 1):
            raise ValueError("epsilon and nu must be 0 or 1")
        if self.delta not in (1, -1):
            raise ValueError("delta must be +1 or -1")
        if self.a < 0:
            raise ValueError("a must be >= 0")
        if self.a == 0 and self.b == 0:
            raise ValueError("(a,b) = (0,0) is excluded")

    @property
    def classified(self) -> bool:
        """Whether the tuple matches one of the admissible classes
        (0,0,0,1), (0,0,1,0), (0,0,1,1), (0,1,0,+-1), (0,1,1,b),
        (1,0,0,1), (1,0,1,|b|), (1,1,a,b)."""
        e, n, a, b = self.epsilon, self.nu, self.a, self.b
        if (e, n) == (0, 0):
            return (a, b) in ((0, 1), (1, 0), (1, 1))
        if (e, n) == (0, 1):
            return (a == 0 and b in (1, -1)) or a == 1
        if (e, n) == (1, 0):
            return (a, b) == (0, 1) or a == 1
        return True  # (1,1,a,b)


@dataclass(frozen=True)
class FamilyTupleII:
    epsilon: int
    mu: int
    nu: int
    a: Fraction
    b: Fraction

    def __post_init__(self):
        object.__setattr__(self, "a", _frac(self.a))
        object.__setattr__(self, "b", _frac(self.b))
        for flag in (self.epsilon, self.mu, self.nu):
            if flag not in (0, 1):
                raise ValueError("epsilon, mu, nu must be 0 or 1")

    @property
    def classified(self) -> bool:
        """(1,1,0,a,b), (1,0,1,a,b), (1,0,0,0,b), (1,0,0,1,b),
        (0,1,0,0,0) or (0,1,0,1,0)."""
        e, m, n, a, b = self.epsilon, self.mu, self.nu, self.a, self.b
        if (e, m, n) == (1, 1, 0) or (e, m, n) == (1, 0, 1):
            return True
        if (e, m, n) == (1, 0, 0):
            return a in (0, 1)
        if (e, m, n) == (0, 1, 0):
            return b == 0 and a in (0, 1)
        return False


def family_I(t: FamilyTupleI) -> ComplexModel:
    i = gq(0, 1)
    d2 = Form.monomial(4, (1, -1), gq(t.epsilon))
    d3 = (
        Form.monomial(4, (1, 4))
        + Form.monomial(4, (1, -4))
        + Form.monomial(4, (2, -1), gq(t.a))
        + Form.monomial(4, (1, -2), i * gq(t.delta * t.epsilon * t.b))
    )
    d4 = (
        Form.monomial(4, (1, -1), i * gq(t.nu))
        + Form.monomial(4, (2, -2), gq(t.b))
        + Form.monomial(4, (1, -3), i * gq(t.delta))
        + Form.monomial(4, (3, -1), -i * gq(t.delta))
    )
    name = f"familyI({t.epsilon},{t.nu},{t.a},{t.b};delta={t.delta})"
    return ComplexModel(4, name, {2: d2, 3: d3, 4: d4})


def family_II(t: FamilyTupleII) -> ComplexModel:
    i = gq(0, 1)
    d2 = Form.monomial(4, (1, 4)) + Form.monomial(4, (1, -4))
    d3 = (
        Form.monomial(4, (1, -1), gq(t.a))
        + Form.monomial(4, (1, 2), gq(t.epsilon))
        + Form.monomial(4, (1, -2), gq(t.epsilon))
        + Form.monomial(4, (2, -1), -gq(t.epsilon))
        + Form.monomial(4, (2, 4), i * gq(t.mu))
        + Form.monomial(4, (2, -4), i * gq(t.mu))
    )
    d4 = (
        Form.monomial(4, (1, -1), i * gq(t.nu))
        + Form.monomial(4, (2, -2), -gq(t.mu))
        + Form.monomial(4, (1, -2), i * gq(t.b))
        + Form.monomial(4, (2, -1), -i * gq(t.b))
        + Form.monomial(4, (1, -3), i)
        + Form.monomial(4, (3, -1), -i)
    )
    name = f"familyII({t.epsilon},{t.mu},{t.nu},{t.a},{t.b})"
    return ComplexModel(4, name, {2: d2, 3: d3, 4: d4})


def theta(delta: int, nu, a, b) -> Fraction:
    """Theta(delta,nu,a,b) = ((a-b)^2 - 2 delta nu b)((a+b)^2 - 2 delta nu b)."""
    a = _frac(a)
    b = _frac(b)
    nu = _frac(nu)
    if delta not in (1, -1):
        raise ValueError("delta must be +1 or -1")
    return ((a - b) ** 2 - 2 * delta * nu * b) * ((a + b) ** 2 - 2 * delta * nu * b)


def torus(n: int) -> ComplexModel:
    return ComplexModel(n, f"torus{n}", {})


# ---------------------------------------------------------------------------
# towers, counterexamples
# ---------------------------------------------------------------------------


def bigalke_rollenske(n: int):
    """The complex-dimension 4n-2 model with d_n != 0 starting at (0, n-1).

    Returns (model, beta, expected_dn_image): beta is the (0,n-1) monomial
    conj(t^{2n+1}) ^ ... ^ conj(t^{3n-2}) ^ conj(t^{4n-2}) whose page-n class
    maps onto t^1 ^ ... ^ t^{n-1} ^ t^{2n-1}.
    """
    if n < 2:
        raise ValueError("the tower construction needs n >= 2")
    dim = 4 * n - 2
    d_gen = {}
    for m in range(2, n + 1):
        k = 3 * n - 3 + m
        d_gen[k] = Form.monomial(dim, (m - 1, n + m - 1)) + Form.monomial(
            dim, (n + m - 2, -(2 * n + m - 2))
        )
    d_gen[4 * n - 2] = Form.monomial(dim, (2 * n, -n))
    model = ComplexModel(dim, f"br{n}", d_gen)
    beta_idx = tuple(-k for k in range(2 * n + 1, 3 * n - 1)) + (-(4 * n - 2),)
    beta = Form.monomial(dim, beta_idx)
    image = Form.monomial(dim, tuple(range(1, n)) + (2 * n - 1,))
    return model, beta, image


def cfg_example() -> ComplexModel:
    """The 6-dimensional model whose page table drops between r=3 and r=4."""
    d4 = Form.monomial(6, (1, 2)) + Form.monomial(6, (1, -2))
    d5 = Form.monomial(6, (2, -1), gq(-1))
    d6 = Form.monomial(6, (1, 4)) + Form.monomial(6, (1, -3))
    return ComplexModel(6, "cfg6", {4: d4, 5: d5, 6: d6})


def dim3_c1neg_example() -> ComplexModel:
    """Three-dimensional model whose unit-coframe metric (i/2) sum w^{k,-k}
    has Gauduchon constant exactly -1/12.

    d w^3 = (w^{1,-1} + (1+i) w^{2,-2})/2; the factor 1/2 is a coframe
    normalisation (w^3 -> 2 w^3) of the same complex structure, chosen so
    the reference constant is attained by the stated unit metric.
    """
    d3 = Form.monomial(3, (1, -1), gq(Fraction(1, 2))) + Form.monomial(
        3, (2, -2), gq(Fraction(1, 2), Fraction(1, 2))
    )
    return ComplexModel(3, "dim3-c1neg", {3: d3})


# ---------------------------------------------------------------------------
# real nilpotent Lie algebras with 1-dimensional center (dimension 8)
# ---------------------------------------------------------------------------


class RealLieAlgebra:
    """Real Chevalley-Eilenberg complex from abbreviated structure data."""

    def __init__(self, name: str, dim: int, diff: Mapping[int, Sequence[Tuple[Fraction, int, int]]]):
        self.name = name
        self.dim = dim
        self.diff = {k: tuple((Fraction(c), i, j) for c, i, j in v) for k, v in diff.items()}
        for k, terms in self.diff.items():
            if not 1 <= k <= dim:
                raise ValueError(f"generator {k} out of range")
            for _, i, j in terms:
                if not (1 <= i <= dim and 1 <= j <= dim and i != j):
                    raise ValueError(f"bad structure term ({i},{j}) in de^{k}")
        self._check_d_squared()

    def d_monomial(self, mono: Tuple[int, ...]) -> Dict[Tuple[int, ...], Fraction]:
        out: Dict[Tuple[int, ...], Fraction] = {}
        for t, g in enumerate(mono):
            for c, i, j in self.diff.get(g, ()):
                rest = mono[:t] + mono[t + 1:]
                sign, canon = canonical_monomial((i, j) + rest)
                if sign == 0:
                    continue
                val = c * sign * (1 if t % 2 == 0 else -1)
                cur = out.get(canon, Fraction(0)) + val
                if cur:
                    out[canon] = cur
                elif canon in out:
                    del out[canon]
        return out

    def _check_d_squared(self):
        for k in range(1, self.dim + 1):
            acc: Dict[Tuple[int, ...], Fraction] = {}
            for c, i, j in self.diff.get(k, ()):
                sign, canon = canonical_monomial((i, j))
                for m2, c2 in self.d_monomial(canon).items():
                    cur = acc.get(m2, Fraction(0)) + sign * c * c2
                    if cur:
                        acc[m2] = cur
                    elif m2 in acc:
                        del acc[m2]
            if acc:
                raise ValueError(f"{self.name}: d(d e^{k}) != 0 ({acc})")

    def basis(self, k: int):
        return list(itertools.combinations(range(1, self.dim + 1), k))

    def d_matrix(self, k: int) -> SparseMatrix:
        src = self.basis(k)
        tgt = {m: i for i, m in enumerate(self.basis(k + 1))}
        entries = []
        for col, mono in enumerate(src):
            for m2, c in self.d_monomial(mono).items():
                entries.append((tgt[m2], col, gq(c)))
        return SparseMatrix.from_entries(len(tgt), len(src), entries)

    def betti(self) -> List[int]:
        from math import comb

        ranks = [rank(self.d_matrix(k)) for k in range(self.dim + 1)]
        out = []
        for k in range(self.dim + 1):
            prev = ranks[k - 1] if k > 0 else 0
            out.append(comb(self.dim, k) - ranks[k] - prev)
        return out


@dataclass(frozen=True)
class NLARecord:
    """One real nilpotent Lie algebra class from the dimension-8 list."""

    name: str
    ascending_type: Tuple[int, ...]
    #: per generator 1..8: list of (coefficient expression, i, j); the
    #: expression may reference the record's parameters by name
    structure: Tuple[Tuple[Tuple[str, int, int], ...], ...]
    parameters: Tuple[str, ...] = ()
    constraints: str = ""
    notes: str = ""

    def instantiate(self, **params) -> RealLieAlgebra:
        vals = {k: _frac(v) for k, v in params.items()}
        missing = set(self.parameters) - set(vals)
        if missing:
            raise ValueError(f"{self.name}: missing parameters {sorted(missing)}")
        self.check_constraints(vals)
        diff = {}
        for gen_index, terms in enumerate(self.structure, start=1):
            acc = []
            for expr, i, j in terms:
                c = _eval_coeff(expr, vals)
                if c:
                    acc.append((c, i, j))
            if acc:
                diff[gen_index] = acc
        label = self.name
        if self.parameters:
            label += "(" + ",".join(f"{k}={vals[k]}" for k in self.parameters) + ")"
        return RealLieAlgebra(label, 8, diff)

    def check_constraints(self, vals: Mapping[str, Fraction]) -> None:
        if self.name.startswith("g1") or self.name.startswith("g3") or \
           self.name.startswith("g9") or self.name.startswith("g10") or \
           self.name.startswith("g12"):
            g = vals.get("gamma")
            if g is not None and g not in (0, 1):
                raise ValueError(f"{self.name}: gamma must be 0 or 1")
        if self.name == "g4":
            alpha, beta = vals["alpha"], vals["beta"]
            ok = (alpha != 0 and beta > 0) or (alpha > 0 and beta == 0)
            if not ok:
                raise ValueError("g4 requires (alpha,beta) in R*xR+ or R+x{0}")
        if self.name == "g11":
            alpha, beta = vals["alpha"], vals["beta"]
            ok = (alpha, beta) in ((0, 0), (1, 0)) or (beta == 1 and alpha >= 0)
            if not ok:
                raise ValueError("g11 requires (alpha,beta) = (0,0), (1,0) or (alpha,1), alpha >= 0")


def _eval_coeff(expr: str, vals: Mapping[str, Fraction]) -> Fraction:
    """Tiny evaluator for coefficients like '1', '-2', 'gamma', 'alpha-1',
    '-4*delta*b', '-beta', '-2*beta'."""
    expr = expr.replace(" ", "")
    total = Fraction(0)
    token = ""
    sign_terms = []
    depth = 0
    cur = ""
    for ch in expr:
        if ch in "+-" and not cur.endswith("*") and cur != "" and cur[-1] not in "+-*":
            sign_terms.append(cur)
            cur = ch if ch == "-" else ""
        else:
            cur += ch
    sign_terms.append(cur)
    for term in sign_terms:
        if not term:
            continue
        sgn = Fraction(1)
        while term.startswith("-"):
            sgn = -sgn
            term = term[1:]
        while term.startswith("+"):
            term = term[1:]
        val = Fraction(1)
        for fct in term.split("*"):
            if not fct:
                continue
            if fct[0].isdigit():
                val *= Fraction(fct)
            else:
                val *= vals[fct]
        total += sgn * val
    return total


def _rec(name, atype, params, constraints, *gens, notes=""):
    structure = []
    for g in gens:
        terms = []
        for chunk in g:
            terms.append(chunk)
        structure.append(tuple(terms))
    return NLARecord(name, atype, tuple(structure), tuple(params), constraints, notes)


_Z = ()  # closed generator


NLA_RECORDS: Dict[str, NLARecord] = {
    rec.name: rec
    for rec in [
        _rec("g1", (1, 3, 8), ("gamma",), "gamma in {0,1}",
             _Z, _Z, _Z, _Z, _Z,
             (("1", 1, 3), ("1", 1, 5), ("1", 2, 4)),
             (("1", 1, 4), ("-1", 2, 3), ("1", 2, 5)),
             (("1", 1, 6), ("1", 2, 7), ("gamma", 3, 4))),
        _rec("g2", (1, 3, 6, 8), ("alpha",), "alpha rational",
             _Z, _Z, _Z, _Z,
             (("1", 1, 2),),
             (("1", 1, 3), ("1", 1, 5), ("1", 2, 4)),
             (("1", 1, 4), ("-1", 2, 3), ("1", 2, 5)),
             (("1", 1, 6), ("1", 2, 7), ("alpha", 3, 4))),
        _rec("g3", (1, 3, 6, 8), ("gamma",), "gamma in {0,1}",
             _Z, _Z, _Z, _Z,
             (("1", 1, 2),),
             (("1", 1, 3), ("gamma", 1, 5), ("1", 2, 5)),
             (("1", 1, 5), ("1", 2, 4), ("gamma", 2, 5)),
             (("1", 1, 6), ("1", 2, 7))),
        _rec("g4", (1, 3, 6, 8), ("alpha", "beta"),
             "(alpha,beta) in R*xR+ or R+x{0}",
             _Z, _Z, _Z, _Z,
             (("1", 1, 2),),
             (("1", 1, 5), ("alpha+1", 2, 4)),
             (("alpha-1", 1, 4), ("-1", 2, 3), ("beta-1", 2, 5)),
             (("1", 1, 6), ("1", 2, 7), ("1", 3, 4), ("-2", 4, 5))),
        _rec("g5", (1, 4, 8), (), "",
             _Z, _Z, _Z, _Z,
             (("2", 1, 2),),
             (("1", 1, 4), ("-1", 2, 3)),
             (("1", 1, 3), ("1", 2, 4)),
             (("1", 1, 6), ("1", 2, 7), ("1", 3, 5))),
        _rec("g6", (1, 4, 6, 8), (), "",
             _Z, _Z, _Z, _Z,
             (("2", 1, 2),),
             (("1", 1, 4), ("1", 1, 5), ("-1", 2, 3)),
             (("1", 1, 3), ("1", 2, 4), ("1", 2, 5)),
             (("1", 1, 6), ("1", 2, 7), ("1", 3, 5))),
        _rec("g7", (1, 5, 8), (), "",
             _Z, _Z, _Z, _Z, _Z,
             (("1", 1, 5),),
             (("1", 2, 5),),
             (("1", 1, 6), ("1", 2, 7), ("1", 3, 4))),
        _rec("g8", (1, 5, 6, 8), (), "",
             _Z, _Z, _Z, _Z,
             (("1", 1, 2),),
             (("1", 1, 5),),
             (("1", 2, 5),),
             (("1", 1, 6), ("1", 2, 7), ("1", 3, 4))),
        _rec("g9", (1, 3, 5, 8), ("gamma",), "gamma in {0,1}",
             _Z, _Z, _Z,
             (("1", 1, 3),),
             (("1", 2, 3),),
             (("1", 3, 5),),
             (("gamma", 1, 2), ("-1", 3, 4)),
             (("1", 1, 6), ("1", 2, 7), ("1", 4, 5))),
        _rec("g10", (1, 3, 5, 8), ("gamma",), "gamma in {0,1}",
             _Z, _Z, _Z,
             (("1", 1, 3),),
             (("1", 2, 3),),
             (("1", 1, 4), ("1", 2, 5)),
             (("1", 1, 5), ("1", 2, 4)),
             (("1", 1, 6), ("gamma", 2, 5), ("1", 2, 7))),
        _rec("g11", (1, 3, 5, 8), ("alpha", "beta"),
             "(alpha,beta) = (0,0), (1,0) or (alpha,1) with alpha >= 0",
             _Z, _Z, _Z,
             (("1", 1, 3),),
             (("1", 2, 3),),
             (("1", 1, 4), ("1", 2, 5), ("-1", 3, 5)),
             (("alpha", 1, 2), ("1", 1, 5), ("1", 2, 4), ("1", 3, 4)),
             (("1", 1, 6), ("1", 2, 7), ("-1", 4, 5), ("-2*beta", 2, 5), ("-beta", 3, 5))),
        _rec("g12", (1, 3, 5, 6, 8), ("gamma",), "gamma in {0,1}",
             _Z, _Z,
             (("1", 1, 2),),
             (("1", 1, 3),),
             (("1", 2, 3),),
             (("1", 1, 4), ("1", 2, 5)),
             (("1", 1, 5), ("1", 2, 4)),
             (("1", 1, 6), ("1", 2, 7), ("gamma", 2, 5))),
    ]
}


def nla_real_model(record: NLARecord, params: Optional[Mapping[str, object]] = None) -> RealLieAlgebra:
    return record.instantiate(**(params or {}))


# ---------------------------------------------------------------------------
# expected-value rows for the two reference tables
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class TableRow:
    """One table row with a rational sample tuple witnessing its cell."""

    table: int
    label: str
    sample: tuple  # FamilyTupleI or FamilyTupleII
    expected_e02: Tuple[int, int, int]
    nla: Optional[str] = None
    nla_params: Optional[Tuple[Tuple[str, Fraction], ...]] = None
    notes: str = ""

    def model(self) -> ComplexModel:
        if self.table == 1:
            return family_I(self.sample)
        return family_II(self.sample)


def _row1(label, tup, exp, nla=None, nla_params=None, notes=""):
    return TableRow(1, label, tup, exp, nla, nla_params, notes)


def _row2(label, tup, exp, nla=None, nla_params=None, notes=""):
    return TableRow(2, label, tup, exp, nla, nla_params, notes)


F = Fraction

TABLE1_ROWS: Tuple[TableRow, ...] = (
    _row1("(0,0,1,0)", FamilyTupleI(0, 0, 1, 0, 1), (4, 2, 2), "g1", (("gamma", F(0)),)),
    _row1("(0,0,1,1)", FamilyTupleI(0, 0, 1, 1, 1), (4, 2, 2), "g1", (("gamma", F(1)),)),
    _row1("(0,1,1,delta/2)", FamilyTupleI(0, 1, 1, F(1, 2), 1), (4, 3, 3), "g2",
          (("alpha", F(-2)),), notes="alpha = -4*delta*b"),
    _row1("(0,1,1,b), b != delta/2", FamilyTupleI(0, 1, 1, 1, 1), (4, 2, 2), "g2",
          (("alpha", F(-4)),)),
    _row1("(1,1,a,0), a in (0,2)", FamilyTupleI(1, 1, 1, 0, 1), (4, 3, 3), "g2",
          (("alpha", F(0)),)),
    _row1("(1,1,2,0)", FamilyTupleI(1, 1, 2, 0, 1), (4, 3, 3), "g3", (("gamma", F(1)),)),
    _row1("(1,1,a,0), a in (2,oo)", FamilyTupleI(1, 1, 3, 0, 1), (4, 3, 3), "g3",
          (("gamma", F(0)),)),
    _row1("(1,0,1,0)", FamilyTupleI(1, 0, 1, 0, 1), (4, 3, 3), "g3", (("gamma", F(0)),)),
    _row1("(1,0,1,1)", FamilyTupleI(1, 0, 1, 1, 1), (4, 4, 4), "g4",
          (("alpha", F(1)), ("beta", F(1)))),
    _row1("(1,0,1,b), b in R+-{1}", FamilyTupleI(1, 0, 1, F(1, 2), 1), (4, 4, 3), "g4",
          (("alpha", F(2)), ("beta", F(1, 2)))),
    _row1("(1,1,a,b), Theta = 0", FamilyTupleI(1, 1, 4, 2, 1), (4, 4, 4), "g4",
          None, notes="b - 2*delta*nu = 0; correspondence parameter degenerate"),
    _row1("(1,1,a,b), Theta != 0", FamilyTupleI(1, 1, 1, 1, 1), (4, 4, 3), "g4",
          (("alpha", F(-1)), ("beta", F(1)))),
    _row1("(1,1,0,2delta)", FamilyTupleI(1, 1, 0, 2, 1), (4, 4, 4), "g5"),
    _row1("(1,0,0,1)", FamilyTupleI(1, 0, 0, 1, 1), (4, 3, 3), "g6"),
    _row1("(1,1,0,b), b != 0, 2delta", FamilyTupleI(1, 1, 0, 1, 1), (4, 3, 3), "g6"),
    _row1("(0,0,0,1)", FamilyTupleI(0, 0, 0, 1, 1), (4, 4, 4), "g7"),
    _row1("(0,1,0,1)", FamilyTupleI(0, 1, 0, 1, 1), (4, 2, 2), "g8"),
)

TABLE2_ROWS: Tuple[TableRow, ...] = (
    _row2("(0,1,0,0,0)", FamilyTupleII(0, 1, 0, 0, 0), (2, 2, 2), "g9", (("gamma", F(0)),)),
    _row2("(0,1,0,1,0)", FamilyTupleII(0, 1, 0, 1, 0), (2, 2, 2), "g9", (("gamma", F(1)),)),
    _row2("(1,0,0,0,0)", FamilyTupleII(1, 0, 0, 0, 0), (2, 2, 2), "g10", (("gamma", F(0)),)),
    _row2("(1,0,0,1,0)", FamilyTupleII(1, 0, 0, 1, 0), (2, 2, 2), "g10", (("gamma", F(0)),)),
    _row2("(1,0,0,0,1)", FamilyTupleII(1, 0, 0, 0, 1), (2, 2, 2), "g10", (("gamma", F(1)),)),
    _row2("(1,0,0,1,1)", FamilyTupleII(1, 0, 0, 1, 1), (2, 2, 2), "g10", (("gamma", F(1)),)),
    _row2("(1,1,0,0,0)", FamilyTupleII(1, 1, 0, 0, 0), (2, 2, 1), "g11",
          (("alpha", F(0)), ("beta", F(0)))),
    _row2("(1,1,0,a,0), a != 0", FamilyTupleII(1, 1, 0, 1, 0), (2, 2, 1), "g11",
          (("alpha", F(1)), ("beta", F(0)))),
    _row2("(1,1,0,0,b), b != 0", FamilyTupleII(1, 1, 0, 0, 1), (2, 2, 1), "g11",
          (("alpha", F(0)), ("beta", F(1)))),
    _row2("(1,1,0,a,b), a,b != 0", FamilyTupleII(1, 1, 0, 1, 1), (2, 2, 1), "g11",
          None, notes="alpha = 2*sqrt(3)|a|/|b| irrational at this sample"),
    _row2("(1,0,1,1,0)", FamilyTupleII(1, 0, 1, 1, 0), (2, 2, 2), "g12", (("gamma", F(0)),)),
    _row2("(1,0,1,1,1)", FamilyTupleII(1, 0, 1, 1, 1), (2, 2, 2), "g12", (("gamma", F(1)),)),
)


# ---------------------------------------------------------------------------
# registry for the command line
# ---------------------------------------------------------------------------


def _build_family_I(params: Mapping[str, Fraction]) -> ComplexModel:
    t = FamilyTupleI(
        int(params.get("eps", params.get("epsilon", 0))),
        int(params.get("nu", 0)),
        params.get("a", Fraction(0)),
        params.get("b", Fraction(0)),
        int(params.get("delta", 1)),
    )
    return family_I(t)


def _build_family_II(params: Mapping[str, Fraction]) -> ComplexModel:
    t = FamilyTupleII(
        int(params.get("eps", params.get("epsilon", 0))),
        int(params.get("mu", 0)),
        int(params.get("nu", 0)),
        params.get("a", Fraction(0)),
        params.get("b", Fraction(0)),
    )
    return family_II(t)


CATALOG: Dict[str, Tuple[str, Callable[[Mapping[str, Fraction]], ComplexModel]]] = {
    "torus": ("torus of dimension n (--param n=...)",
              lambda p: torus(int(p.get("n", 2)))),
    "family-I": ("family I model (--param eps= nu= a= b= delta=)", _build_family_I),
    "family-II": ("family II model (--param eps= mu= nu= a= b=)", _build_family_II),
    "br": ("tower model of complex dimension 4n-2 (--param n=...)",
           lambda p: bigalke_rollenske(int(p.get("n", 2)))[0]),
    "cfg": ("6-dimensional example with a drop at page 3", lambda p: cfg_example()),
    "dim3-c1neg": ("3-dimensional example with c1 = -1/12", lambda p: dim3_c1neg_example()),
}


def catalog_names() -> List[str]:
    return sorted(CATALOG)


def catalog_build(name: str, params: Mapping[str, Fraction]) -> ComplexModel:
    if name not in CATALOG:
        raise KeyError(f"unknown catalog model {name!r}; try: {', '.join(catalog_names())}")
    return CATALOG[name][1](params)
