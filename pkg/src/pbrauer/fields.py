"""Exact arithmetic in rational function fields F_p(t1,...,tn), p in {2,3,5}.

Polynomials are sparse maps from exponent tuples to nonzero coefficients.
Every RatFunc is kept canonical (numerator and denominator coprime, the
denominator monic with respect to graded-lex order), so structural equality
of the dictionaries decides equality in the field.

The same raw polynomial helpers are reused mod p^L by the truncated
valuation-ring model; only GCD and exact division insist on a prime modulus.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import DivisionByZero

Mono = tuple  # exponent vector, one entry per variable


# ---------------------------------------------------------------------------
# raw sparse polynomials: dict[Mono, int], coefficients nonzero mod m

def glex_key(e: Mono):
    return (sum(e), e)


def lead_mono(a: dict) -> Mono:
    return max(a, key=glex_key)


def poly_add(a: dict, b: dict, m: int) -> dict:
    r = dict(a)
    for e, c in b.items():
        v = (r.get(e, 0) + c) % m
        if v:
            r[e] = v
        else:
            r.pop(e, None)
    return r


def poly_neg(a: dict, m: int) -> dict:
    return {e: m - c for e, c in a.items()}


def poly_sub(a: dict, b: dict, m: int) -> dict:
    return poly_add(a, poly_neg(b, m), m)


def poly_mul(a: dict, b: dict, m: int) -> dict:
    r: dict = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = tuple(x + y for x, y in zip(ea, eb))
            v = (r.get(e, 0) + ca * cb) % m
            if v:
                r[e] = v
            else:
                r.pop(e, None)
    return r


def poly_scale(a: dict, c: int, m: int) -> dict:
    c %= m
    r = {}
    for e, v in a.items():
        w = (v * c) % m
        if w:
            r[e] = w
    return r


def poly_normal(a: dict, m: int) -> dict:
    """Drop zero coefficients, reduce the rest mod m."""
    r = {}
    for e, c in a.items():
        c %= m
        if c:
            r[tuple(e)] = c
    return r


def poly_degree_in(a: dict, j: int) -> int:
    return max((e[j] for e in a), default=-1)


def _coeff_in(a: dict, j: int, d: int) -> dict:
    # coefficient of x_j^d, with the j-slot zeroed
    r = {}
    for e, c in a.items():
        if e[j] == d:
            r[e[:j] + (0,) + e[j + 1:]] = c
    return r


def _mono_min(a: dict) -> Mono:
    it = iter(a)
    m = list(next(it))
    for e in it:
        for i, x in enumerate(e):
            if x < m[i]:
                m[i] = x
    return tuple(m)


def _mono_strip(a: dict, m: Mono) -> dict:
    return {tuple(x - y for x, y in zip(e, m)): c for e, c in a.items()}


def poly_monic(a: dict, p: int) -> dict:
    if not a:
        return a
    c = a[lead_mono(a)]
    if c == 1:
        return a
    return poly_scale(a, pow(c, -1, p), p)


def poly_divexact(a: dict, b: dict, p: int) -> dict:
    """Exact division a/b over F_p; raises ValueError when not divisible."""
    if not b:
        raise DivisionByZero("polynomial division by zero")
    q: dict = {}
    r = dict(a)
    lb = lead_mono(b)
    cbinv = pow(b[lb], -1, p)
    while r:
        lr = lead_mono(r)
        e = tuple(x - y for x, y in zip(lr, lb))
        if any(x < 0 for x in e):
            raise ValueError("inexact polynomial division")
        c = (r[lr] * cbinv) % p
        q[e] = c
        for eb, vb in b.items():
            k = tuple(x + y for x, y in zip(e, eb))
            v = (r.get(k, 0) - c * vb) % p
            if v:
                r[k] = v
            else:
                r.pop(k, None)
    return q


def _prem(a: dict, b: dict, j: int, p: int) -> dict:
    # pseudo-remainder of a by b in the main variable x_j
    db = poly_degree_in(b, j)
    lb = _coeff_in(b, j, db)
    r = a
    while r:
        dr = poly_degree_in(r, j)
        if dr < db:
            break
        lr = _coeff_in(r, j, dr)
        shift = {(0,) * j + (dr - db,) + (0,) * (len(lead_mono(b)) - j - 1): 1}
        r = poly_sub(poly_mul(lb, r, p), poly_mul(poly_mul(lr, shift, p), b, p), p)
    return r


def _content_prim(a: dict, j: int, p: int):
    # content and primitive part with respect to the main variable x_j
    one = {(0,) * len(lead_mono(a)): 1}
    cont: dict = {}
    for d in sorted({e[j] for e in a}):
        cont = poly_gcd(cont, _coeff_in(a, j, d), p)
        if cont == one:
            return one, a
    return cont, poly_divexact(a, cont, p)


def _gcd_core(a: dict, b: dict, p: int) -> dict:
    n = len(lead_mono(a))
    one = {(0,) * n: 1}
    j = -1
    for k in range(n - 1, -1, -1):
        if poly_degree_in(a, k) > 0 or poly_degree_in(b, k) > 0:
            j = k
            break
    if j < 0:
        return one  # both constant
    conta, prima = _content_prim(a, j, p)
    contb, primb = _content_prim(b, j, p)
    cg = poly_gcd(conta, contb, p)
    A, B = prima, primb
    if poly_degree_in(A, j) < poly_degree_in(B, j):
        A, B = B, A
    if poly_degree_in(B, j) <= 0:
        gprim = one
    else:
        while True:
            r = _prem(A, B, j, p)
            if not r:
                gprim = B
                break
            if poly_degree_in(r, j) == 0:
                gprim = one
                break
            A, B = B, _content_prim(r, j, p)[1]
    return poly_mul(cg, gprim, p)


def poly_gcd(a: dict, b: dict, p: int) -> dict:
    """Monic multivariate GCD over F_p via content/primitive-part recursion."""
    if not a:
        return poly_monic(b, p)
    if not b:
        return poly_monic(a, p)
    ma, mb = _mono_min(a), _mono_min(b)
    A, B = _mono_strip(a, ma), _mono_strip(b, mb)
    if poly_monic(A, p) == poly_monic(B, p):
        g = poly_monic(A, p)
    else:
        g = _gcd_core(A, B, p)
    cg = tuple(min(x, y) for x, y in zip(ma, mb))
    if any(cg):
        g = poly_mul(g, {cg: 1}, p)
    return poly_monic(g, p)


def poly_str(a: dict, var_names) -> str:
    if not a:
        return "0"
    terms = []
    for e in sorted(a, key=glex_key, reverse=True):
        c = a[e]
        parts = []
        for name, k in zip(var_names, e):
            if k == 1:
                parts.append(name)
            elif k > 1:
                parts.append("%s^%d" % (name, k))
        if not parts:
            terms.append(str(c))
        elif c == 1:
            terms.append("*".join(parts))
        else:
            terms.append("%d*%s" % (c, "*".join(parts)))
    return " + ".join(terms)


# ---------------------------------------------------------------------------
# field descriptors and canonical rational functions

@dataclass(frozen=True)
class FieldDescriptor:
    """A rational function field F_p(t1,...,tn).  The variables are a p-basis,
    so num_vars equals the p-rank."""

    p: int
    var_names: tuple = ()

    def __post_init__(self):
        if self.p not in (2, 3, 5):
            raise ValueError("supported primes are 2, 3, 5")
        object.__setattr__(self, "var_names", tuple(self.var_names))
        if len(set(self.var_names)) != len(self.var_names):
            raise ValueError("variable names must be distinct")

    @property
    def num_vars(self) -> int:
        return len(self.var_names)

    def zero(self) -> "RatFunc":
        return RatFunc(self, {})

    def one(self) -> "RatFunc":
        return self.const(1)

    def const(self, c: int) -> "RatFunc":
        c %= self.p
        return RatFunc(self, {(0,) * self.num_vars: c} if c else {}, _coprime=True)

    def gen(self, j: int) -> "RatFunc":
        e = [0] * self.num_vars
        e[j] = 1
        return RatFunc(self, {tuple(e): 1}, _coprime=True)

    def gens(self):
        return [self.gen(j) for j in range(self.num_vars)]

    def element(self, text: str) -> "RatFunc":
        from .parsing import parse_element
        return parse_element(text, self)


class RatFunc:
    """Canonical reduced fraction of sparse polynomials over F_p."""

    __slots__ = ("field", "num", "den", "_hash")

    def __init__(self, fld: FieldDescriptor, num: dict, den: dict | None = None,
                 _coprime: bool = False):
        p = fld.p
        num = poly_normal(num, p)
        den = poly_normal(den, p) if den is not None else {(0,) * fld.num_vars: 1}
        if not den:
            raise DivisionByZero("zero denominator")
        if not num:
            den = {(0,) * fld.num_vars: 1}
        elif not _coprime:
            g = poly_gcd(num, den, p)
            if len(g) > 1 or any(lead_mono(g)):
                num = poly_divexact(num, g, p)
                den = poly_divexact(den, g, p)
        if num:
            c = den[lead_mono(den)]
            if c != 1:
                cinv = pow(c, -1, p)
                num = poly_scale(num, cinv, p)
                den = poly_scale(den, cinv, p)
        self.field = fld
        self.num = num
        self.den = den
        self._hash = None

    # -- structure ---------------------------------------------------------
    def __bool__(self) -> bool:
        return bool(self.num)

    def is_one(self) -> bool:
        return self.num == self.den

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = self.field.const(other)
        if not isinstance(other, RatFunc):
            return NotImplemented
        return (self.field == other.field and self.num == other.num
                and self.den == other.den)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.field,
                               frozenset(self.num.items()),
                               frozenset(self.den.items())))
        return self._hash

    def glex_size(self):
        """Pivot-selection key: graded-lex size of the leading monomials."""
        ln = glex_key(lead_mono(self.num)) if self.num else ((-1), ())
        ld = glex_key(lead_mono(self.den))
        return (ln, ld)

    # -- arithmetic ----------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, int):
            return self.field.const(other)
        if isinstance(other, RatFunc) and other.field == self.field:
            return other
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        p = self.field.p
        num = poly_add(poly_mul(self.num, o.den, p), poly_mul(o.num, self.den, p), p)
        return RatFunc(self.field, num, poly_mul(self.den, o.den, p))

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(self.field, poly_neg(self.num, self.field.p), self.den,
                       _coprime=True)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        p = self.field.p
        return RatFunc(self.field, poly_mul(self.num, o.num, p),
                       poly_mul(self.den, o.den, p))

    __rmul__ = __mul__

    def inv(self) -> "RatFunc":
        if not self.num:
            raise DivisionByZero("inverse of zero")
        return RatFunc(self.field, self.den, self.num, _coprime=True)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inv()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inv()

    def __pow__(self, k: int):
        if k < 0:
            return self.inv() ** (-k)
        r = self.field.one()
        b = self
        while k:
            if k & 1:
                r = r * b
            b = b * b
            k >>= 1
        return r

    def partial(self, j: int) -> "RatFunc":
        """Partial derivative with respect to the j-th variable."""
        p = self.field.p
        dn = _poly_partial(self.num, j, p)
        dd = _poly_partial(self.den, j, p)
        num = poly_sub(poly_mul(dn, self.den, p), poly_mul(self.num, dd, p), p)
        return RatFunc(self.field, num, poly_mul(self.den, self.den, p))

    # -- display -------------------------------------------------------------
    def __repr__(self):
        ns = poly_str(self.num, self.field.var_names)
        if self.den == {(0,) * self.field.num_vars: 1}:
            return ns
        if len(self.num) > 1:
            ns = "(%s)" % ns
        return "%s/(%s)" % (ns, poly_str(self.den, self.field.var_names))


def _poly_partial(a: dict, j: int, p: int) -> dict:
    r = {}
    for e, c in a.items():
        if e[j] == 0:
            continue
        v = (c * e[j]) % p
        if v:
            r[e[:j] + (e[j] - 1,) + e[j + 1:]] = v
    return r


# ---------------------------------------------------------------------------
# string-dispatched arithmetic entry points

def rf_arith(op: str, f: RatFunc, g: RatFunc | None = None) -> RatFunc:
    """Field arithmetic dispatcher: add, mul, inv, neg."""
    if op == "add":
        return f + g
    if op == "mul":
        return f * g
    if op == "inv":
        return f.inv()
    if op == "neg":
        return -f
    raise ValueError("unknown operation %r" % op)


def pth_root(f: RatFunc) -> RatFunc | None:
    """The unique g with g^p = f if f is a p-th power, else None.

    In canonical form f is a p-th power iff every exponent of the numerator
    and denominator is divisible by p: F_p coefficients are fixed by
    Frobenius, and coprimality plus a monic denominator pass to the root.
    """
    p = f.field.p
    if not f.num:
        return f.field.zero()
    for e in list(f.num) + list(f.den):
        if any(x % p for x in e):
            return None
    num = {tuple(x // p for x in e): c for e, c in f.num.items()}
    den = {tuple(x // p for x in e): c for e, c in f.den.items()}
    return RatFunc(f.field, num, den, _coprime=True)


@dataclass(frozen=True)
class FrobeniusDecomposition:
    """f = sum over e in [0,p)^n of components[e]^p * t^e."""

    fld: FieldDescriptor
    components: dict

    def __getitem__(self, e: Mono) -> RatFunc:
        return self.components.get(tuple(e), self.fld.zero())

    def expand(self) -> RatFunc:
        total = self.fld.zero()
        for e, c in self.components.items():
            total = total + (c ** self.fld.p) * RatFunc(self.fld, {e: 1}, _coprime=True)
        return total


def frobenius_decompose(f: RatFunc) -> FrobeniusDecomposition:
    """Unique decomposition over the p-basis monomials t^e, e in [0,p)^n.

    Multiplying by den^p makes the denominator a p-th power, after which the
    numerator's monomials split by their exponent residues mod p.
    """
    fld = f.field
    p = fld.p
    # f = (num * den^(p-1)) / den^p
    top = f.num
    for _ in range(p - 1):
        top = poly_mul(top, f.den, p)
    buckets: dict = {}
    for e, c in top.items():
        res = tuple(x % p for x in e)
        quo = tuple(x // p for x in e)
        buckets.setdefault(res, {})[quo] = c  # distinct quo per (res, e)
    comps = {}
    for res, poly in buckets.items():
        c_e = RatFunc(fld, poly, dict(f.den))
        if c_e:
            comps[res] = c_e
    return FrobeniusDecomposition(fld, comps)


@dataclass(frozen=True)
class RankCertificate:
    """Outcome of the Jacobian p-independence test."""

    independent: bool
    rank: int
    pivots: tuple

    def __bool__(self) -> bool:
        return self.independent


def p_independence(elems) -> RankCertificate:
    """Elements are p-independent iff their differentials are linearly
    independent, i.e. the Jacobian (da_i/dt_j) has full row rank."""
    from .linalg import row_reduce
    elems = list(elems)
    if not elems:
        return RankCertificate(True, 0, ())
    n = elems[0].field.num_vars
    rows = [[f.partial(j) for j in range(n)] for f in elems]
    _, pivots = row_reduce(rows)
    return RankCertificate(len(pivots) == len(elems), len(pivots), tuple(pivots))


# ---------------------------------------------------------------------------
# embeddings: t_j -> s_j^(p^r_j), the p-radical relabeling extensions

@dataclass(frozen=True)
class Embedding:
    """Field embedding sending the j-th source variable to the j-th target
    variable raised to p^powers[j].  The target field is the source with each
    t_j replaced by a p^r_j-th root, written in new variable names."""

    source: FieldDescriptor
    target: FieldDescriptor
    powers: tuple

    def __post_init__(self):
        object.__setattr__(self, "powers", tuple(self.powers))
        if self.source.p != self.target.p:
            raise ValueError("characteristic mismatch")
        if not (self.source.num_vars == self.target.num_vars == len(self.powers)):
            raise ValueError("variable count mismatch")
        if any(r < 0 for r in self.powers):
            raise ValueError("powers must be nonnegative")

    @classmethod
    def identity(cls, fld: FieldDescriptor) -> "Embedding":
        return cls(fld, fld, (0,) * fld.num_vars)

    @classmethod
    def radical(cls, source: FieldDescriptor, powers, prefix: str = "s") -> "Embedding":
        names = tuple("%s%d" % (prefix, j + 1) for j in range(source.num_vars))
        return cls(source, FieldDescriptor(source.p, names), powers)

    @property
    def degree(self) -> int:
        d = 1
        for r in self.powers:
            d *= self.source.p ** r
        return d

    def var_images(self):
        return [self.target.gen(j) ** (self.source.p ** r)
                for j, r in enumerate(self.powers)]

    def compose(self, then: "Embedding") -> "Embedding":
        """self followed by then (targets must chain)."""
        if self.target != then.source:
            raise ValueError("embeddings do not chain")
        return Embedding(self.source, then.target,
                         tuple(a + b for a, b in zip(self.powers, then.powers)))


def embed_element(f: RatFunc, e: Embedding) -> RatFunc:
    """Image of f under the variable relabeling t_j -> s_j^(p^r_j).

    Exponent remapping is injective on monomials and a finite flat pullback
    keeps coprime pairs coprime, so no GCD pass is needed.
    """
    if f.field != e.source:
        raise ValueError("element not over the embedding source")
    q = [e.source.p ** r for r in e.powers]

    def remap(a):
        return {tuple(x * k for x, k in zip(mono, q)): c for mono, c in a.items()}

    return RatFunc(e.target, remap(f.num), remap(f.den), _coprime=True)


def subst_element(f: RatFunc, images, target: FieldDescriptor) -> RatFunc:
    """Evaluate f under a general substitution var_j -> images[j].

    images are arbitrary nonzero RatFuncs over the target field; raises
    DivisionByZero when the denominator of f collapses to zero.
    """
    num = _eval_poly(f.num, images, target)
    den = _eval_poly(f.den, images, target)
    if not den:
        raise DivisionByZero("substitution sends denominator to zero")
    return num / den


def _eval_poly(a: dict, images, target: FieldDescriptor) -> RatFunc:
    total = target.zero()
    for e, c in a.items():
        term = target.const(c)
        for img, k in zip(images, e):
            if k:
                term = term * img ** k
        total = total + term
    return total
