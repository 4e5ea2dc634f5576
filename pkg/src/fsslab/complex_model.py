"""Lie algebras with invariant complex structure, as structure equations.

A model of complex dimension ``n`` is described by the differentials of a
(1,0)-coframe ``w^1, ..., w^n``.  The conjugate coframe is written with
negative indices: ``-k`` stands for the conjugate of ``w^k``, so the index
tuple ``(1, -4)`` is the wedge of ``w^1`` with conjugate ``w^4``.

Monomials are kept canonical: holomorphic indices strictly increasing,
then conjugate indices with strictly increasing absolute value, with the
reordering sign absorbed into the coefficient.  Each ``d w^k`` may only
contain components of bidegree (2,0) and (1,1); this is a parse/construction
guarantee, and ``d*d = 0`` on every generator is checked on top of it.
Differentials of conjugate generators are derived by conjugation, never
entered by hand.
"""

from __future__ import annotations

import itertools
import threading
from fractions import Fraction
from typing import Iterable, Mapping, Optional, Sequence, Tuple

from .exact_linalg import (
    GQ_ONE,
    GQ_ZERO,
    GaussianRational,
    SparseMatrix,
    Vector,
    gq,
    rank,
)

Monomial = Tuple[int, ...]


def _index_key(i: int):
    return (0, i) if i > 0 else (1, -i)


def canonical_monomial(indices: Sequence[int]) -> Tuple[int, Monomial]:
    """Sort an index tuple; returns (sign, monomial), sign 0 on a repeat."""
    idx = list(indices)
    sign = 1
    # insertion sort with parity tracking; monomials are short
    for i in range(1, len(idx)):
        j = i
        while j > 0 and _index_key(idx[j - 1]) > _index_key(idx[j]):
            idx[j - 1], idx[j] = idx[j], idx[j - 1]
            sign = -sign
            j -= 1
    for a, b in zip(idx, idx[1:]):
        if a == b:
            return 0, tuple(idx)
    return sign, tuple(idx)


def monomial_bidegree(m: Monomial) -> Tuple[int, int]:
    p = sum(1 for i in m if i > 0)
    return p, len(m) - p


class Form:
    """Sparse invariant form: canonical index tuples -> GaussianRational.

    Forms may be inhomogeneous; :meth:`bidegree_part` projects exactly.
    """

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms: Optional[Mapping[Monomial, GaussianRational]] = None):
        self.n = n
        clean = {}
        if terms:
            for mono, coeff in terms.items():
                coeff = GaussianRational.of(coeff)
                if not coeff:
                    continue
                for i in mono:
                    if i == 0 or abs(i) > n:
                        raise ValueError(f"index {i} outside coframe of dimension {n}")
                sign, canon = canonical_monomial(mono)
                if sign == 0:
                    continue
                if sign < 0:
                    coeff = -coeff
                cur = clean.get(canon)
                cur = coeff if cur is None else cur + coeff
                if cur:
                    clean[canon] = cur
                elif canon in clean:
                    del clean[canon]
        self.terms = clean

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zero(n: int) -> "Form":
        return Form(n)

    @staticmethod
    def monomial(n: int, indices: Sequence[int], coeff=GQ_ONE) -> "Form":
        return Form(n, {tuple(indices): GaussianRational.of(coeff)})

    # -- ring structure ----------------------------------------------------

    def __add__(self, other: "Form") -> "Form":
        self._same_coframe(other)
        t = dict(self.terms)
        for m, c in other.terms.items():
            cur = t.get(m, GQ_ZERO) + c
            if cur:
                t[m] = cur
            elif m in t:
                del t[m]
        out = Form(self.n)
        out.terms = t
        return out

    def __sub__(self, other: "Form") -> "Form":
        return self + (-other)

    def __neg__(self) -> "Form":
        out = Form(self.n)
        out.terms = {m: -c for m, c in self.terms.items()}
        return out

    def scaled(self, s) -> "Form":
        s = GaussianRational.of(s)
        out = Form(self.n)
        if s:
            out.terms = {m: c * s for m, c in self.terms.items()}
        return out

    def __mul__(self, s):
        return self.scaled(s)

    __rmul__ = __mul__

    def wedge(self, other: "Form") -> "Form":
        self._same_coframe(other)
        acc = {}
        for ma, ca in self.terms.items():
            for mb, cb in other.terms.items():
                sign, canon = canonical_monomial(ma + mb)
                if sign == 0:
                    continue
                c = ca * cb
                if sign < 0:
                    c = -c
                cur = acc.get(canon, GQ_ZERO) + c
                if cur:
                    acc[canon] = cur
                elif canon in acc:
                    del acc[canon]
        out = Form(self.n)
        out.terms = acc
        return out

    def conjugate(self) -> "Form":
        out = Form(self.n)
        acc = {}
        for m, c in out.terms.items():
            pass
        for m, c in self.terms.items():
            sign, canon = canonical_monomial(tuple(-i for i in m))
            cc = c.conjugate()
            if sign < 0:
                cc = -cc
            acc[canon] = acc.get(canon, GQ_ZERO) + cc
        out.terms = {m: c for m, c in acc.items() if c}
        return out

    # -- inspection --------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, indices: Sequence[int]) -> GaussianRational:
        sign, canon = canonical_monomial(indices)
        if sign == 0:
            return GQ_ZERO
        c = self.terms.get(canon, GQ_ZERO)
        return -c if sign < 0 else c

    def bidegree_part(self, p: int, q: int) -> "Form":
        out = Form(self.n)
        out.terms = {
            m: c for m, c in self.terms.items() if monomial_bidegree(m) == (p, q)
        }
        return out

    def bidegrees(self):
        return sorted({monomial_bidegree(m) for m in self.terms})

    def bidegree(self) -> Optional[Tuple[int, int]]:
        """The (p,q) of a homogeneous form, None if mixed or zero."""
        bds = self.bidegrees()
        return bds[0] if len(bds) == 1 else None

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Form)
            and self.n == other.n
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.n, tuple(sorted(self.terms.items(), key=lambda t: t[0]))))

    def _same_coframe(self, other: "Form") -> None:
        if self.n != other.n:
            raise ValueError(f"coframe dimensions differ: {self.n} vs {other.n}")

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        bits = []
        for m, c in sorted(self.terms.items(), key=lambda t: (len(t[0]), t[0])):
            idx = ",".join(str(i) for i in m)
            bits.append(f"({c.re},{c.im}) w[{idx}]")
        return " + ".join(bits)


# ---------------------------------------------------------------------------
# model
# ---------------------------------------------------------------------------


class ModelError(ValueError):
    """Base for model construction/parsing problems; may carry a line."""

    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class ModelSyntaxError(ModelError):
    pass


class UnboundParameterError(ModelError):
    pass


class BidegreeComponentError(ModelError):
    """A structure equation carries a forbidden (0,2) component."""


class ClosureError(ModelError):
    """d*d != 0 on some generator (Jacobi identity fails)."""


class ComplexModel:
    """Validated structure equations plus cached bigraded machinery.

    Immutable after construction; the per-bidegree matrix caches are guarded
    by a lock so concurrent readers always observe a finished matrix.
    """

    def __init__(self, n: int, name: str, d_generators: Mapping[int, Form]):
        if n < 0:
            raise ModelError("coframe dimension must be nonnegative")
        self.n = n
        self.name = name
        gens = {}
        for k in range(1, n + 1):
            f = d_generators.get(k)
            if f is None:
                f = Form.zero(n)
            if f.n != n:
                raise ModelError(f"d w^{k} lives in the wrong coframe dimension")
            for m in f.terms:
                bd = monomial_bidegree(m)
                if len(m) != 2:
                    raise ModelError(f"d w^{k} has a term of degree {len(m)}")
                if bd == (0, 2):
                    raise BidegreeComponentError(
                        f"d w^{k} has a (0,2) component {m}"
                    )
            gens[k] = f
        extra = set(d_generators) - set(gens)
        if extra:
            raise ModelError(f"differentials given for unknown generators {sorted(extra)}")
        self._d_gen = gens
        self._d_conj = {k: f.conjugate() for k, f in gens.items()}
        self._basis = {}
        self._basis_pos = {}
        self._del = {}
        self._delbar = {}
        self._lock = threading.Lock()
        for k in range(1, n + 1):
            dd = self.d(gens[k])
            if not dd.is_zero():
                raise ClosureError(f"d(d w^{k}) != 0: {dd!r}")

    # -- differentials -----------------------------------------------------

    def d_generator(self, index: int) -> Form:
        if index > 0:
            return self._d_gen[index]
        return self._d_conj[-index]

    def d(self, x: Form) -> Form:
        dx, _, _ = self.differentials(x)
        return dx

    def partial(self, x: Form) -> Form:
        _, px, _ = self.differentials(x)
        return px

    def partial_bar(self, x: Form) -> Form:
        _, _, pbx = self.differentials(x)
        return pbx

    def differentials(self, x: Form):
        """(dx, del-part, delbar-part); d extends the structure equations
        as an anti-derivation and the parts are its bigraded projections."""
        if x.n != self.n:
            raise ValueError("form does not live over this model's coframe")
        dx = Form.zero(self.n)
        px = Form.zero(self.n)
        pbx = Form.zero(self.n)
        for mono, coeff in x.terms.items():
            p, q = monomial_bidegree(mono)
            for t, idx in enumerate(mono):
                dgen = self.d_generator(idx)
                if dgen.is_zero():
                    continue
                rest = mono[:t] + mono[t + 1:]
                c = coeff if t % 2 == 0 else -coeff
                piece = dgen.wedge(Form.monomial(self.n, rest, c))
                dx = dx + piece
                px = px + piece.bidegree_part(p + 1, q)
                pbx = pbx + piece.bidegree_part(p, q + 1)
        return dx, px, pbx

    # -- bigraded bases and matrices ----------------------------------------

    def dim(self, p: int, q: int) -> int:
        if 0 <= p <= self.n and 0 <= q <= self.n:
            return len(self.bigraded_basis(p, q))
        return 0

    def bigraded_basis(self, p: int, q: int) -> tuple:
        """Lexicographic monomial basis of Lambda^{p,q}; C(n,p)*C(n,q) long."""
        if not (0 <= p <= self.n and 0 <= q <= self.n):
            raise ValueError(f"bidegree ({p},{q}) out of range for n={self.n}")
        key = (p, q)
        basis = self._basis.get(key)
        if basis is None:
            with self._lock:
                basis = self._basis.get(key)
                if basis is None:
                    rng = range(1, self.n + 1)
                    basis = tuple(
                        holo + tuple(-c for c in conj)
                        for holo in itertools.combinations(rng, p)
                        for conj in itertools.combinations(rng, q)
                    )
                    self._basis[key] = basis
                    self._basis_pos[key] = {m: i for i, m in enumerate(basis)}
        return basis

    def basis_position(self, p: int, q: int) -> Mapping[Monomial, int]:
        self.bigraded_basis(p, q)
        return self._basis_pos[(p, q)]

    def _derivation_matrix(self, p: int, q: int, which: str) -> SparseMatrix:
        tp, tq = (p + 1, q) if which == "del" else (p, q + 1)
        cols = self.dim(p, q)
        rows = self.dim(tp, tq)
        if rows == 0 or cols == 0:
            return SparseMatrix.from_entries(rows, cols, ())
        target_pos = self.basis_position(tp, tq)
        entries = []
        for j, mono in enumerate(self.bigraded_basis(p, q)):
            _, px, pbx = self.differentials(Form.monomial(self.n, mono))
            image = px if which == "del" else pbx
            for m, c in image.terms.items():
                entries.append((target_pos[m], j, c))
        return SparseMatrix.from_entries(rows, cols, entries)

    def del_matrix(self, p: int, q: int) -> SparseMatrix:
        if not (0 <= p <= self.n and 0 <= q <= self.n):
            return SparseMatrix.from_entries(self.dim(p + 1, q), 0, ())
        key = (p, q)
        m = self._del.get(key)
        if m is None:
            with self._lock:
                m = self._del.get(key)
                if m is None:
                    m = self._derivation_matrix(p, q, "del")
                    self._del[key] = m
        return m

    def delbar_matrix(self, p: int, q: int) -> SparseMatrix:
        if not (0 <= p <= self.n and 0 <= q <= self.n):
            return SparseMatrix.from_entries(self.dim(p, q + 1), 0, ())
        key = (p, q)
        m = self._delbar.get(key)
        if m is None:
            with self._lock:
                m = self._delbar.get(key)
                if m is None:
                    m = self._derivation_matrix(p, q, "delbar")
                    self._delbar[key] = m
        return m

    # -- coordinates ---------------------------------------------------------

    def coordinates(self, x: Form, p: int, q: int) -> Vector:
        vec: Vector = {}
        pos = self.basis_position(p, q)
        for m, c in x.terms.items():
            if monomial_bidegree(m) != (p, q):
                raise ValueError(f"term {m} is not of bidegree ({p},{q})")
            vec[pos[m]] = c
        return vec

    def form_from_coordinates(self, p: int, q: int, vec: Mapping[int, GaussianRational]) -> Form:
        basis = self.bigraded_basis(p, q)
        out = Form.zero(self.n)
        out.terms = {basis[i]: GaussianRational.of(c) for i, c in vec.items() if c}
        return out

    # -- Chevalley-Eilenberg Betti numbers -----------------------------------

    def total_degree_dim(self, k: int) -> int:
        return sum(self.dim(p, k - p) for p in range(0, k + 1))

    def _d_total_matrix(self, k: int) -> SparseMatrix:
        """d on complex k-forms, blocks ordered by increasing p."""
        src_off = {}
        off = 0
        for p in range(0, k + 1):
            src_off[p] = off
            off += self.dim(p, k - p)
        tgt_off = {}
        toff = 0
        for p in range(0, k + 2):
            tgt_off[p] = toff
            toff += self.dim(p, k + 1 - p)
        entries = []
        for p in range(0, k + 1):
            q = k - p
            if self.dim(p, q) == 0:
                continue
            dm = self.del_matrix(p, q)
            for r, c, v in dm.entries:
                entries.append((tgt_off[p + 1] + r, src_off[p] + c, v))
            bm = self.delbar_matrix(p, q)
            for r, c, v in bm.entries:
                entries.append((tgt_off[p] + r, src_off[p] + c, v))
        return SparseMatrix.from_entries(toff, off, entries)

    def de_rham_betti(self) -> list:
        """Betti numbers b_0..b_{2n} of the underlying real Lie algebra.

        Computed from the complexified Chevalley-Eilenberg complex; complex
        dimensions of complex-valued cohomology equal the real Betti numbers.
        """
        n2 = 2 * self.n
        ranks = [rank(self._d_total_matrix(k)) for k in range(0, n2 + 1)]
        betti = []
        for k in range(0, n2 + 1):
            prev = ranks[k - 1] if k > 0 else 0
            betti.append(self.total_degree_dim(k) - ranks[k] - prev)
        return betti

    def total_cohomology_dim(self) -> int:
        return sum(self.de_rham_betti())

    def __repr__(self):
        return f"ComplexModel({self.name!r}, n={self.n})"


def differentials(model: ComplexModel, x: Form):
    return model.differentials(x)


def wedge(x: Form, y: Form) -> Form:
    return x.wedge(y)


# ---------------------------------------------------------------------------
# model files
# ---------------------------------------------------------------------------

# Grammar (UTF-8, line oriented; ';' also separates statements, '#' comments):
#   model "<name>" dim <n>
#   param <ident> ...
#   d <k> = 0
#   d <k> = (<re>,<im>) w[<i>,<j>] (+ (<re>,<im>) w[<i>,<j>])*
# re/im are sums/products of rational literals p/q and declared parameters.
# Conjugate indices are negative; a (0,2) term (both negative) is rejected.


class _ExprParser:
    def __init__(self, text: str, params: Mapping[str, Fraction], line: int):
        self.text = text
        self.pos = 0
        self.params = params
        self.line = line

    def fail(self, msg: str):
        raise ModelSyntaxError(f"{msg} in expression {self.text!r}", self.line)

    def peek(self) -> str:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def parse(self) -> Fraction:
        v = self.sum()
        if self.peek():
            self.fail(f"trailing input at {self.text[self.pos:]!r}")
        return v

    def sum(self) -> Fraction:
        v = self.product()
        while True:
            ch = self.peek()
            if ch == "+":
                self.pos += 1
                v = v + self.product()
            elif ch == "-":
                self.pos += 1
                v = v - self.product()
            else:
                return v

    def product(self) -> Fraction:
        v = self.atom()
        while self.peek() == "*":
            self.pos += 1
            v = v * self.atom()
        return v

    def atom(self) -> Fraction:
        ch = self.peek()
        if ch == "-":
            self.pos += 1
            return -self.atom()
        if ch == "(":
            self.pos += 1
            v = self.sum()
            if self.peek() != ")":
                self.fail("unbalanced parenthesis")
            self.pos += 1
            return v
        if ch.isdigit():
            start = self.pos
            while self.pos < len(self.text) and self.text[self.pos].isdigit():
                self.pos += 1
            num = int(self.text[start:self.pos])
            if self.peek() == "/":
                self.pos += 1
                if not self.peek().isdigit():
                    self.fail("malformed rational literal")
                start = self.pos
                while self.pos < len(self.text) and self.text[self.pos].isdigit():
                    self.pos += 1
                den = int(self.text[start:self.pos])
                if den == 0:
                    self.fail("zero denominator")
                return Fraction(num, den)
            return Fraction(num)
        if ch.isalpha() or ch == "_":
            start = self.pos
            while self.pos < len(self.text) and (
                self.text[self.pos].isalnum() or self.text[self.pos] == "_"
            ):
                self.pos += 1
            name = self.text[start:self.pos]
            if name not in self.params:
                raise UnboundParameterError(
                    f"parameter {name!r} has no rational binding", self.line
                )
            return self.params[name]
        self.fail(f"unexpected character {ch!r}")


def _split_terms(rhs: str, line: int) -> list:
    """Split on '+' at depth 0 of parentheses/brackets."""
    parts = []
    depth = 0
    cur = []
    for ch in rhs:
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
            if depth < 0:
                raise ModelSyntaxError("unbalanced brackets", line)
        if ch == "+" and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    parts.append("".join(cur))
    return [p.strip() for p in parts]


def parse_term(term: str, params: Mapping[str, Fraction], line: int,
               max_index: int, arity: Optional[int] = 2) -> Tuple[GaussianRational, Tuple[int, ...]]:
    term = term.strip()
    if not term.startswith("("):
        raise ModelSyntaxError(f"term must start with a coefficient pair: {term!r}", line)
    depth = 0
    split = None
    comma = None
    for i, ch in enumerate(term):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
            if depth == 0:
                split = i
                break
        elif ch == "," and depth == 1 and comma is None:
            comma = i
    if split is None or comma is None:
        raise ModelSyntaxError(f"malformed coefficient in term {term!r}", line)
    re_src = term[1:comma]
    im_src = term[comma + 1:split]
    coeff = GaussianRational(
        _ExprParser(re_src, params, line).parse(),
        _ExprParser(im_src, params, line).parse(),
    )
    rest = term[split + 1:].strip()
    if not (rest.startswith("w[") and rest.endswith("]")):
        raise ModelSyntaxError(f"expected w[...] after coefficient: {term!r}", line)
    try:
        indices = tuple(int(t.strip()) for t in rest[2:-1].split(","))
    except ValueError:
        raise ModelSyntaxError(f"malformed index list in {rest!r}", line)
    if arity is not None and len(indices) != arity:
        raise ModelSyntaxError(f"expected {arity} indices in {rest!r}", line)
    seen = set()
    for i in indices:
        if i == 0 or abs(i) > max_index:
            raise ModelSyntaxError(f"index {i} out of range 1..{max_index}", line)
        if i in seen:
            raise ModelSyntaxError(f"repeated index {i} in {rest!r}", line)
        seen.add(i)
    return coeff, indices


def parse_form_expr(n: int, text: str, params: Optional[Mapping[str, Fraction]] = None) -> Form:
    """Parse a form expression in the model-file term grammar (any arity)."""
    params = dict(params or {})
    out = Form.zero(n)
    for term in _split_terms(text, 0):
        if not term:
            continue
        coeff, indices = parse_term(term, params, 0, n, arity=None)
        out = out + Form.monomial(n, indices, coeff)
    return out


def parse_model(text: str, bindings: Optional[Mapping[str, Fraction]] = None) -> ComplexModel:
    """Parse and validate a model file; fails loudly with the offending line."""
    bindings = {k: _fraction_of(v) for k, v in (bindings or {}).items()}
    name = None
    n = None
    declared = set()
    d_gen = {}
    seen_d = set()
    statements = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        raw = raw.split("#", 1)[0]
        for chunk in raw.split(";"):
            chunk = chunk.strip()
            if chunk:
                statements.append((lineno, chunk))
    for lineno, stmt in statements:
        if stmt.startswith("model"):
            parts = stmt.split()
            if name is not None:
                raise ModelSyntaxError("duplicate model header", lineno)
            try:
                quoted = stmt[stmt.index('"') + 1: stmt.rindex('"')]
            except ValueError:
                raise ModelSyntaxError('model header needs a quoted name', lineno)
            if parts[-2] != "dim":
                raise ModelSyntaxError('model header must end with: dim <n>', lineno)
            try:
                n = int(parts[-1])
            except ValueError:
                raise ModelSyntaxError(f"bad dimension {parts[-1]!r}", lineno)
            if n < 1:
                raise ModelSyntaxError("dimension must be >= 1", lineno)
            name = quoted
        elif stmt.startswith("param"):
            if n is None:
                raise ModelSyntaxError("param line before model header", lineno)
            for ident in stmt.split()[1:]:
                if not ident.replace("_", "a").isalnum() or ident[0].isdigit():
                    raise ModelSyntaxError(f"bad parameter name {ident!r}", lineno)
                declared.add(ident)
                if ident not in bindings:
                    raise UnboundParameterError(
                        f"parameter {ident!r} declared but not bound", lineno
                    )
        elif stmt.startswith("d "):
            if n is None:
                raise ModelSyntaxError("differential line before model header", lineno)
            lhs, _, rhs = stmt.partition("=")
            parts = lhs.split()
            if len(parts) != 2 or not _:
                raise ModelSyntaxError(f"expected: d <k> = ...: {stmt!r}", lineno)
            try:
                k = int(parts[1])
            except ValueError:
                raise ModelSyntaxError(f"bad generator index {parts[1]!r}", lineno)
            if not 1 <= k <= n:
                raise ModelSyntaxError(f"generator index {k} out of range 1..{n}", lineno)
            if k in seen_d:
                raise ModelSyntaxError(f"duplicate differential for generator {k}", lineno)
            seen_d.add(k)
            rhs = rhs.strip()
            if rhs == "0":
                d_gen[k] = Form.zero(n)
                continue
            usable = {p: bindings[p] for p in declared}
            form = Form.zero(n)
            for term in _split_terms(rhs, lineno):
                if not term:
                    raise ModelSyntaxError("empty term", lineno)
                coeff, indices = parse_term(term, usable, lineno, n, arity=2)
                if indices[0] < 0 and indices[1] < 0:
                    raise BidegreeComponentError(
                        f"(0,2) component w[{indices[0]},{indices[1]}] in d {k}", lineno
                    )
                form = form + Form.monomial(n, indices, coeff)
            d_gen[k] = form
        else:
            raise ModelSyntaxError(f"unrecognised statement {stmt!r}", lineno)
    if name is None or n is None:
        raise ModelSyntaxError("missing model header", 1)
    missing = [k for k in range(1, n + 1) if k not in seen_d]
    if missing:
        raise ModelSyntaxError(f"missing differential lines for generators {missing}", 1)
    return ComplexModel(n, name, d_gen)


def _fraction_of(v) -> Fraction:
    if isinstance(v, Fraction):
        return v
    if isinstance(v, int):
        return Fraction(v)
    if isinstance(v, str):
        return Fraction(v)
    raise TypeError(f"cannot interpret {v!r} as a rational")


def parse_param_binding(text: str) -> Tuple[str, Fraction]:
    """Parse a name=p/q command-line binding."""
    name, _, value = text.partition("=")
    if not _ or not name:
        raise ValueError(f"expected name=value, got {text!r}")
    return name.strip(), Fraction(value.strip())


def emit_model(model: ComplexModel) -> str:
    """Serialise a model back to the file grammar (fully bound, no params)."""
    lines = [f'model "{model.name}" dim {model.n}']
    for k in range(1, model.n + 1):
        f = model.d_generator(k)
        if f.is_zero():
            lines.append(f"d {k} = 0")
            continue
        terms = []
        for m, c in sorted(f.terms.items(), key=lambda t: t[0]):
            idx = ",".join(str(i) for i in m)
            terms.append(f"({c.re},{c.im}) w[{idx}]")
        lines.append(f"d {k} = " + " + ".join(terms))
    return "\n".join(lines) + "\n"
