"""Bidegree slices of free graded-commutative algebras.

Generators are odd (exterior) or even (polynomial) with a fixed bidegree;
a pair of derivations raises bidegree by (1,0) and (0,1).  Every slice is
a finite-dimensional vector space as long as each generator has
nonnegative bidegree of positive total degree, so slice bases, derivation
matrices between slices and the generic zig-zag machinery all apply.

Monomials are exponent vectors in generator-declaration order; odd
exponents live in {0,1} and the Koszul sign of any reordering is absorbed
when monomials are multiplied.

If a generator's declared derivation image is not homogeneous of the
expected bidegree, the model still validates (the differentials are data,
and the d^2-type identities are what is actually checked) but the
offending generators are flagged, and any slice computation that would
have to differentiate them raises instead of silently dropping terms.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from .exact_linalg import GQ_ONE, GQ_ZERO, GaussianRational, SparseMatrix, gq

Mono = Tuple[int, ...]
Poly = Dict[Mono, GaussianRational]


@dataclass(frozen=True)
class CDGAGenerator:
    name: str
    p: int
    q: int
    odd: bool

    def __post_init__(self):
        if self.p < 0 or self.q < 0 or self.p + self.q == 0:
            raise ValueError(
                f"generator {self.name}: bidegree ({self.p},{self.q}) must be "
                "nonnegative with positive total degree"
            )
        if self.odd != bool((self.p + self.q) % 2):
            raise ValueError(
                f"generator {self.name}: parity must match total degree "
                f"({self.p}+{self.q})"
            )


class CDGAError(ValueError):
    pass


class CDGAModel:
    """Free graded-commutative algebra with a (del, delbar) derivation pair."""

    def __init__(self, generators: Sequence[CDGAGenerator],
                 del_images: Mapping[str, Poly],
                 delbar_images: Mapping[str, Poly],
                 name: str = "cdga"):
        self.name = name
        self.generators = tuple(generators)
        names = [g.name for g in self.generators]
        if len(set(names)) != len(names):
            raise CDGAError("duplicate generator names")
        self.index = {g.name: i for i, g in enumerate(self.generators)}
        z: Poly = {}
        self._del = [dict(del_images.get(g.name, z)) for g in self.generators]
        self._delbar = [dict(delbar_images.get(g.name, z)) for g in self.generators]
        unknown = (set(del_images) | set(delbar_images)) - set(names)
        if unknown:
            raise CDGAError(f"derivation images for unknown generators {sorted(unknown)}")
        self.inhomogeneous: Dict[str, List[str]] = {}
        for gi, g in enumerate(self.generators):
            probs = []
            for which, img, dp, dq in (("del", self._del[gi], 1, 0),
                                       ("delbar", self._delbar[gi], 0, 1)):
                for mono in img:
                    bd = self.mono_bidegree(mono)
                    if bd != (g.p + dp, g.q + dq):
                        probs.append(
                            f"{which} {g.name} has a term of bidegree {bd}, "
                            f"expected ({g.p + dp},{g.q + dq})"
                        )
            if probs:
                self.inhomogeneous[g.name] = probs
        self._check_squares()
        self._slice: Dict[Tuple[int, int], Tuple[Mono, ...]] = {}
        self._slice_pos: Dict[Tuple[int, int], Dict[Mono, int]] = {}
        self._mat: Dict[Tuple[str, int, int], SparseMatrix] = {}
        self._lock = threading.Lock()

    # -- polynomial algebra ----------------------------------------------------

    def zero_poly(self) -> Poly:
        return {}

    def unit(self) -> Poly:
        return {tuple(0 for _ in self.generators): GQ_ONE}

    def generator_poly(self, name: str) -> Poly:
        e = [0] * len(self.generators)
        e[self.index[name]] = 1
        return {tuple(e): GQ_ONE}

    def mono_bidegree(self, mono: Mono) -> Tuple[int, int]:
        p = q = 0
        for e, g in zip(mono, self.generators):
            p += e * g.p
            q += e * g.q
        return p, q

    def mono_mul(self, a: Mono, b: Mono) -> Tuple[int, Mono]:
        """(sign, product monomial); sign 0 when an odd generator repeats."""
        sign = 1
        odd_after = 0  # odd generators of `a` strictly after the current slot
        odd_counts_a = [1 if (e and g.odd) else 0
                        for e, g in zip(a, self.generators)]
        suffix = [0] * (len(a) + 1)
        for i in range(len(a) - 1, -1, -1):
            suffix[i] = suffix[i + 1] + odd_counts_a[i]
        out = []
        for i, (ea, eb) in enumerate(zip(a, b)):
            g = self.generators[i]
            if g.odd:
                if ea and eb:
                    return 0, a
                if eb and suffix[i + 1] % 2:
                    sign = -sign
            out.append(ea + eb)
        return sign, tuple(out)

    def poly_add(self, x: Poly, y: Poly) -> Poly:
        out = dict(x)
        for m, c in y.items():
            cur = out.get(m, GQ_ZERO) + c
            if cur:
                out[m] = cur
            elif m in out:
                del out[m]
        return out

    def poly_scale(self, x: Poly, s) -> Poly:
        s = GaussianRational.of(s)
        if not s:
            return {}
        return {m: c * s for m, c in x.items()}

    def poly_mul(self, x: Poly, y: Poly) -> Poly:
        out: Poly = {}
        for ma, ca in x.items():
            for mb, cb in y.items():
                sign, m = self.mono_mul(ma, mb)
                if sign == 0:
                    continue
                c = ca * cb
                if sign < 0:
                    c = -c
                cur = out.get(m, GQ_ZERO) + c
                if cur:
                    out[m] = cur
                elif m in out:
                    del out[m]
        return out

    def poly_eq(self, x: Poly, y: Poly) -> bool:
        return {m: c for m, c in x.items() if c} == {m: c for m, c in y.items() if c}

    # -- derivations -------------------------------------------------------------

    def apply_derivation(self, which: str, x: Poly) -> Poly:
        images = self._del if which == "del" else self._delbar
        out: Poly = {}
        for mono, coeff in x.items():
            prefix_odd = 0
            for gi, e in enumerate(mono):
                g = self.generators[gi]
                img = images[gi]
                if e and img:
                    # remove one copy of the generator, multiply by its image
                    rest = list(mono)
                    rest[gi] = e - 1
                    rest_m = tuple(rest)
                    # sign: derivation passes the prefix, then the odd image
                    # of an even generator passes the (odd part of the) suffix
                    sgn = -1 if prefix_odd % 2 else 1
                    if not g.odd:
                        suffix_odd = sum(
                            1 for gj in range(gi + 1, len(mono))
                            if mono[gj] and self.generators[gj].odd
                        )
                        if suffix_odd % 2:
                            sgn = -sgn
                    factor = GaussianRational.of(e if not g.odd else 1)
                    base = {rest_m: coeff * factor * sgn}
                    term = self.poly_mul(base, img)
                    out = self.poly_add(out, term)
                if e and g.odd:
                    prefix_odd += 1
        return out

    def del_(self, x: Poly) -> Poly:
        return self.apply_derivation("del", x)

    def delbar(self, x: Poly) -> Poly:
        return self.apply_derivation("delbar", x)

    def _check_squares(self):
        for g in self.generators:
            x = self.generator_poly(g.name)
            if self.del_(self.del_(x)):
                raise CDGAError(f"del^2 {g.name} != 0")
            if self.delbar(self.delbar(x)):
                raise CDGAError(f"delbar^2 {g.name} != 0")
            anti = self.poly_add(self.del_(self.delbar(x)), self.delbar(self.del_(x)))
            if anti:
                raise CDGAError(f"del delbar + delbar del != 0 on {g.name}")

    # -- slices --------------------------------------------------------------------

    def slice_basis(self, p: int, q: int) -> Tuple[Mono, ...]:
        """All monomials of bidegree exactly (p,q), in deterministic order."""
        if p < 0 or q < 0:
            return ()
        key = (p, q)
        got = self._slice.get(key)
        if got is not None:
            return got
        acc: List[Mono] = []
        exps = [0] * len(self.generators)

        def rec(i: int, rp: int, rq: int):
            if i == len(self.generators):
                if rp == 0 and rq == 0:
                    acc.append(tuple(exps))
                return
            g = self.generators[i]
            top = 1 if g.odd else 10**9
            if g.p:
                top = min(top, rp // g.p)
            if g.q:
                top = min(top, rq // g.q)
            for e in range(top + 1):
                exps[i] = e
                rec(i + 1, rp - e * g.p, rq - e * g.q)
            exps[i] = 0

        rec(0, p, q)
        acc.sort()
        basis = tuple(acc)
        with self._lock:
            self._slice[key] = basis
            self._slice_pos[key] = {m: i for i, m in enumerate(basis)}
        return basis

    def dim(self, p: int, q: int) -> int:
        return len(self.slice_basis(p, q))

    def slice_position(self, p: int, q: int) -> Dict[Mono, int]:
        self.slice_basis(p, q)
        return self._slice_pos[(p, q)]

    def coordinates(self, x: Poly, p: int, q: int):
        pos = self.slice_position(p, q)
        out = {}
        for m, c in x.items():
            if not c:
                continue
            if self.mono_bidegree(m) != (p, q):
                raise CDGAError(f"term {m} is not of bidegree ({p},{q})")
            out[pos[m]] = c
        return out

    def _slice_matrix(self, which: str, p: int, q: int) -> SparseMatrix:
        dp, dq = (1, 0) if which == "del" else (0, 1)
        src = self.slice_basis(p, q)
        tgt_pos = self.slice_position(p + dp, q + dq)
        entries = []
        for col, mono in enumerate(src):
            touched = [
                self.generators[i].name
                for i, e in enumerate(mono)
                if e and self.generators[i].name in self.inhomogeneous
            ]
            img = self.apply_derivation(which, {mono: GQ_ONE})
            for m, c in img.items():
                if self.mono_bidegree(m) != (p + dp, q + dq):
                    raise CDGAError(
                        f"{which} of slice ({p},{q}) leaves the target slice; "
                        f"flagged generators involved: {touched or 'none'}"
                    )
                entries.append((tgt_pos[m], col, c))
        return SparseMatrix.from_entries(len(tgt_pos), len(src), entries)

    def slice_matrix(self, which: str, p: int, q: int) -> SparseMatrix:
        if which not in ("del", "delbar"):
            raise ValueError("which must be 'del' or 'delbar'")
        key = (which, p, q)
        m = self._mat.get(key)
        if m is None:
            with self._lock:
                m = self._mat.get(key)
            if m is None:
                m = self._slice_matrix(which, p, q)
                with self._lock:
                    self._mat[key] = m
        return m

    def del_matrix(self, p: int, q: int) -> SparseMatrix:
        if p < 0 or q < 0:
            return SparseMatrix.from_entries(self.dim(p + 1, q), 0, ())
        return self.slice_matrix("del", p, q)

    def delbar_matrix(self, p: int, q: int) -> SparseMatrix:
        if p < 0 or q < 0:
            return SparseMatrix.from_entries(self.dim(p, q + 1), 0, ())
        return self.slice_matrix("delbar", p, q)

    def poly_repr(self, x: Poly) -> str:
        if not x:
            return "0"
        bits = []
        for m, c in sorted(x.items()):
            factors = []
            for e, g in zip(m, self.generators):
                if e == 1:
                    factors.append(g.name)
                elif e > 1:
                    factors.append(f"{g.name}^{e}")
            mono = "*".join(factors) or "1"
            bits.append(f"({c.re},{c.im}) {mono}")
        return " + ".join(bits)


# ---------------------------------------------------------------------------
# the SO(9)-type model and its second-page check
# ---------------------------------------------------------------------------


def pittie_so9() -> CDGAModel:
    """The 8-generator model behind the 18-dimensional pluriclosed example.

    Odd generators w21, w43, w65, w87 of bidegrees (2,1), (4,3), (6,5),
    (8,7); even v1, v2 of bidegree (1,1); odd u1, u2 of bidegree (0,1).
    With f = v1^2 + v2^2 and g = v1^2 v2^2 the derivations are

        del u1 = v1, del u2 = v2, del (everything else) = 0,
        delbar w43 = f^2, delbar w65 = f*g, delbar w87 = f^2,
        delbar (everything else) = 0.

    The displayed delbar w87 is encoded verbatim even though its bidegree
    does not match the (8,8) target; the generator is flagged and every
    slice computation that would differentiate it refuses to run.  The
    second-page verification below never touches such a slice.
    """
    gens = [
        CDGAGenerator("w21", 2, 1, True),
        CDGAGenerator("w43", 4, 3, True),
        CDGAGenerator("w65", 6, 5, True),
        CDGAGenerator("w87", 8, 7, True),
        CDGAGenerator("v1", 1, 1, False),
        CDGAGenerator("v2", 1, 1, False),
        CDGAGenerator("u1", 0, 1, True),
        CDGAGenerator("u2", 0, 1, True),
    ]
    model = CDGAModel(gens, {}, {}, name="so9-pittie")
    v1 = model.generator_poly("v1")
    v2 = model.generator_poly("v2")
    f = model.poly_add(model.poly_mul(v1, v1), model.poly_mul(v2, v2))
    g = model.poly_mul(model.poly_mul(v1, v1), model.poly_mul(v2, v2))
    f2 = model.poly_mul(f, f)
    fg = model.poly_mul(f, g)
    return CDGAModel(
        gens,
        del_images={"u1": v1, "u2": v2},
        delbar_images={"w43": f2, "w65": fg, "w87": f2},
        name="so9-pittie",
    )


def slice_basis(model: CDGAModel, p: int, q: int):
    return model.slice_basis(p, q)


def slice_matrix(model: CDGAModel, which: str, p: int, q: int) -> SparseMatrix:
    return model.slice_matrix(which, p, q)


@dataclass
class So9Check:
    name: str
    passed: bool
    detail: str


@dataclass
class So9Report:
    checks: List[So9Check]

    @property
    def all_passed(self) -> bool:
        return all(c.passed for c in self.checks)


def verify_so9_d2() -> So9Report:
    """Exact verification that d_2 is nonzero on the (6,8) class f*xi*eta.

    1. the chain witness: del(f xi eta) + delbar(w65 xi - w43 eta) = 0, so
       f xi eta defines a second-page class (confirmed through the generic
       zig-zag membership test);
    2. its d_2 image: del(w65 xi - w43 eta) = w43 g - w65 f;
    3. that image is not in Y_2^{8,7}, by the zig-zag system over the
       slices (8,6) and (7,7).
    """
    from .fss_engine import FssEngine

    model = pittie_so9()
    checks: List[So9Check] = []
    u1 = model.generator_poly("u1")
    u2 = model.generator_poly("u2")
    v1 = model.generator_poly("v1")
    v2 = model.generator_poly("v2")
    w43 = model.generator_poly("w43")
    w65 = model.generator_poly("w65")
    mul = model.poly_mul
    add = model.poly_add
    f = add(mul(v1, v1), mul(v2, v2))
    g = mul(mul(v1, v1), mul(v2, v2))
    xi = add(mul(u1, v1), mul(u2, v2))
    eta = mul(mul(u1, v1), mul(v2, v2))
    fxe = mul(f, mul(xi, eta))
    witness = add(mul(w65, xi), model.poly_scale(mul(w43, eta), -1))

    engine = FssEngine(model)

    residual = add(model.del_(fxe), model.delbar(witness))
    closed = model.delbar(fxe)
    in_x2 = engine.in_x(model.coordinates(fxe, 6, 8), 2, 6, 8)
    ok1 = (not residual) and (not closed) and in_x2
    checks.append(
        So9Check(
            "second-page class",
            ok1,
            "del(f xi eta) + delbar(w65 xi - w43 eta) = "
            + model.poly_repr(residual)
            + f"; delbar-closed: {not closed}; zig-zag membership: {in_x2}",
        )
    )

    image = model.del_(witness)
    expected = add(mul(w43, g), model.poly_scale(mul(w65, f), -1))
    ok2 = model.poly_eq(image, expected)
    checks.append(
        So9Check(
            "d2 image",
            ok2,
            "del(w65 xi - w43 eta) = " + model.poly_repr(image),
        )
    )

    vec = model.coordinates(expected, 8, 7)
    in_y = engine.in_y(vec, 2, 8, 7)
    checks.append(
        So9Check(
            "image escapes Y_2^{8,7}",
            not in_y,
            f"membership of w43 g - w65 f in Y_2^(8,7): {in_y}",
        )
    )
    return So9Report(checks)


# ---------------------------------------------------------------------------
# files
# ---------------------------------------------------------------------------

# Format (line oriented, '#' comments):
#   cdga "<name>"
#   gen <name> (<p>,<q>) <odd|even>
#   del <name> = 0 | <term> (+ <term>)*
#   delbar <name> = 0 | <term> (+ <term>)*
# term: (<re>,<im>) <gen>[^<exp>] ('*' <gen>[^<exp>])*


def parse_cdga(text: str) -> CDGAModel:
    name = None
    gens: List[CDGAGenerator] = []
    dels: Dict[str, Poly] = {}
    delbars: Dict[str, Poly] = {}
    pending: List[Tuple[int, str, str, str]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("cdga"):
            try:
                name = line[line.index('"') + 1: line.rindex('"')]
            except ValueError:
                raise CDGAError(f"line {lineno}: cdga header needs a quoted name")
        elif line.startswith("gen "):
            parts = line.split()
            if len(parts) != 4:
                raise CDGAError(f"line {lineno}: expected gen <name> (<p>,<q>) <odd|even>")
            gname, bidegree, parity = parts[1], parts[2], parts[3]
            if not (bidegree.startswith("(") and bidegree.endswith(")")):
                raise CDGAError(f"line {lineno}: bidegree must be (<p>,<q>)")
            ps, _, qs = bidegree[1:-1].partition(",")
            if parity not in ("odd", "even"):
                raise CDGAError(f"line {lineno}: parity must be odd or even")
            gens.append(CDGAGenerator(gname, int(ps), int(qs), parity == "odd"))
        elif line.startswith("del ") or line.startswith("delbar "):
            which, rest = line.split(None, 1)
            gname, _, rhs = rest.partition("=")
            if not _:
                raise CDGAError(f"line {lineno}: expected {which} <name> = ...")
            pending.append((lineno, which, gname.strip(), rhs.strip()))
        else:
            raise CDGAError(f"line {lineno}: unrecognised statement {line!r}")
    if name is None:
        raise CDGAError("missing cdga header")
    probe = CDGAModel(gens, {}, {}, name=name)

    def parse_poly(lineno: int, rhs: str) -> Poly:
        if rhs == "0":
            return {}
        poly: Poly = {}
        for term in rhs.split("+"):
            term = term.strip()
            if not term.startswith("("):
                raise CDGAError(f"line {lineno}: term must start with (<re>,<im>)")
            close = term.index(")")
            re_s, _, im_s = term[1:close].partition(",")
            coeff = GaussianRational(Fraction(re_s.strip()), Fraction(im_s.strip()))
            mono = [0] * len(gens)
            body = term[close + 1:].strip()
            if body:
                for factor in body.replace("*", " ").split():
                    base, _, exp = factor.partition("^")
                    if base not in probe.index:
                        raise CDGAError(f"line {lineno}: unknown generator {base!r}")
                    mono[probe.index[base]] += int(exp) if exp else 1
            m = tuple(mono)
            poly[m] = poly.get(m, GQ_ZERO) + coeff
        return {m: c for m, c in poly.items() if c}

    for lineno, which, gname, rhs in pending:
        if gname not in probe.index:
            raise CDGAError(f"line {lineno}: unknown generator {gname!r}")
        target = dels if which == "del" else delbars
        if gname in target:
            raise CDGAError(f"line {lineno}: duplicate {which} for {gname}")
        target[gname] = parse_poly(lineno, rhs)
    return CDGAModel(gens, dels, delbars, name=name)


def emit_cdga(model: CDGAModel) -> str:
    lines = [f'cdga "{model.name}"']
    for g in model.generators:
        lines.append(f"gen {g.name} ({g.p},{g.q}) {'odd' if g.odd else 'even'}")
    for which, images in (("del", model._del), ("delbar", model._delbar)):
        for g, img in zip(model.generators, images):
            if img:
                lines.append(f"{which} {g.name} = {model.poly_repr(img)}")
    return "\n".join(lines) + "\n"
