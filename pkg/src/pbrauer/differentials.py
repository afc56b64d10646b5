"""Kaehler differentials of F_p(t1..tn) as explicit coordinate vectors.

Omega1 is free on dt_1..dt_n over the field (the variables are a p-basis),
Omega2 on dt_i^dt_j for i < j.  Restriction along p-radical embeddings kills
dt_j exactly when the embedding takes a p-power root of t_j.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import DependentGenerators, DivisionByZero, HypothesisFailed
from .fields import (Embedding, FieldDescriptor, RatFunc, embed_element,
                     p_independence, subst_element)
from .linalg import solve


@dataclass(frozen=True)
class Omega1Form:
    """Sum of coords[j] * dt_j."""

    fld: FieldDescriptor
    coords: tuple

    def __post_init__(self):
        object.__setattr__(self, "coords", tuple(self.coords))
        if len(self.coords) != self.fld.num_vars:
            raise ValueError("coordinate count mismatch")

    @classmethod
    def zero(cls, fld: FieldDescriptor) -> "Omega1Form":
        return cls(fld, (fld.zero(),) * fld.num_vars)

    def __bool__(self) -> bool:
        return any(self.coords)

    def __add__(self, other: "Omega1Form") -> "Omega1Form":
        return Omega1Form(self.fld, tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __rmul__(self, c: RatFunc) -> "Omega1Form":
        return Omega1Form(self.fld, tuple(c * a for a in self.coords))

    def __repr__(self):
        terms = ["(%r)*d%s" % (c, name)
                 for c, name in zip(self.coords, self.fld.var_names) if c]
        return " + ".join(terms) if terms else "0"


def _pairs(n: int):
    return [(i, j) for i in range(n) for j in range(i + 1, n)]


@dataclass(frozen=True)
class Omega2Form:
    """Sum of coords[(i,j)] * dt_i^dt_j with i < j; zero entries dropped."""

    fld: FieldDescriptor
    coords: dict

    def __post_init__(self):
        clean = {}
        for (i, j), c in self.coords.items():
            if i >= j:
                raise ValueError("pair indices must satisfy i < j")
            if c:
                clean[(i, j)] = c
        object.__setattr__(self, "coords", clean)

    @classmethod
    def zero(cls, fld: FieldDescriptor) -> "Omega2Form":
        return cls(fld, {})

    def coord(self, i: int, j: int) -> RatFunc:
        if i == j:
            return self.fld.zero()
        if i < j:
            return self.coords.get((i, j), self.fld.zero())
        return -self.coords.get((j, i), self.fld.zero())

    def __bool__(self) -> bool:
        return bool(self.coords)

    def __eq__(self, other) -> bool:
        return (isinstance(other, Omega2Form) and self.fld == other.fld
                and self.coords == other.coords)

    def __hash__(self):
        return hash((self.fld, frozenset(self.coords.items())))

    def __add__(self, other: "Omega2Form") -> "Omega2Form":
        r = dict(self.coords)
        for k, c in other.coords.items():
            r[k] = r.get(k, self.fld.zero()) + c
        return Omega2Form(self.fld, r)

    def __rmul__(self, c: RatFunc) -> "Omega2Form":
        return Omega2Form(self.fld, {k: c * v for k, v in self.coords.items()})

    def __repr__(self):
        names = self.fld.var_names
        terms = ["(%r)*d%s^d%s" % (c, names[i], names[j])
                 for (i, j), c in sorted(self.coords.items())]
        return " + ".join(terms) if terms else "0"


# ---------------------------------------------------------------------------
# derivations

def d(f: RatFunc) -> Omega1Form:
    n = f.field.num_vars
    return Omega1Form(f.field, tuple(f.partial(j) for j in range(n)))


def dlog(f: RatFunc) -> Omega1Form:
    if not f:
        raise DivisionByZero("dlog of zero")
    return f.inv() * d(f)


def wedge(w: Omega1Form, v: Omega1Form) -> Omega2Form:
    fld = w.fld
    coords = {}
    for i, j in _pairs(fld.num_vars):
        coords[(i, j)] = w.coords[i] * v.coords[j] - w.coords[j] * v.coords[i]
    return Omega2Form(fld, coords)


# ---------------------------------------------------------------------------
# restriction along embeddings and general substitutions

def restrict_omega2(a: Omega2Form, e: Embedding) -> Omega2Form:
    """Push a 2-form through t_j -> s_j^(p^r_j): dt_j dies when r_j >= 1."""
    coords = {}
    for (i, j), c in a.coords.items():
        if e.powers[i] == 0 and e.powers[j] == 0:
            coords[(i, j)] = embed_element(c, e)
    return Omega2Form(e.target, coords)


def pushforward_omega2(a: Omega2Form, images, target: FieldDescriptor) -> Omega2Form:
    """Push a 2-form through an arbitrary substitution t_j -> images[j]
    using the chain rule d(images[j]) = sum_k (d images[j]/d s_k) ds_k."""
    n_src = a.fld.num_vars
    n_tgt = target.num_vars
    jac = [[images[i].partial(k) for k in range(n_tgt)] for i in range(n_src)]
    out: dict = {}
    for (i, j), c in a.coords.items():
        ci = subst_element(c, images, target)
        for k, l in _pairs(n_tgt):
            v = ci * (jac[i][k] * jac[j][l] - jac[i][l] * jac[j][k])
            if v:
                out[(k, l)] = out.get((k, l), target.zero()) + v
    return Omega2Form(target, out)


# ---------------------------------------------------------------------------
# kernel decomposition for radical base changes

def kernel_decompose(a: Omega2Form, gens) -> list | None:
    """Write a = sum_i d(gens[i]) ^ f_i, or None when impossible.

    The forms vanishing under restriction to the field adjoining all p-th
    roots of the generators are exactly the expressible ones, which makes
    this an exact linear solve in the wedge coordinates.
    """
    gens = list(gens)
    cert = p_independence(gens)
    if not cert:
        raise DependentGenerators("generators are p-dependent (rank %d of %d)"
                                  % (cert.rank, len(gens)))
    fld = a.fld
    n = fld.num_vars
    k = len(gens)
    if n < 2:
        return [Omega1Form.zero(fld) for _ in gens]
    jac = [[g.partial(r) for r in range(n)] for g in gens]
    pairs = _pairs(n)
    unknowns = [(g, m) for g in range(k) for m in range(n)]
    rows = []
    rhs = []
    for (i, j) in pairs:
        row = []
        for (g, m) in unknowns:
            if m == j:
                row.append(jac[g][i])
            elif m == i:
                row.append(-jac[g][j])
            else:
                row.append(fld.zero())
        rows.append(row)
        rhs.append(a.coord(i, j))
    x = solve(rows, rhs)
    if x is None:
        return None
    forms = []
    for g in range(k):
        forms.append(Omega1Form(fld, tuple(x[g * n + m] for m in range(n))))
    return forms


# ---------------------------------------------------------------------------
# the bounded-extension non-vanishing certificate

def paired_wedge_form(lambdas, gens) -> Omega2Form:
    """sum_i lambdas[i] * d(gens[2i]) ^ d(gens[2i+1])."""
    fld = gens[0].field
    total = Omega2Form.zero(fld)
    for i, lam in enumerate(lambdas):
        total = total + lam * wedge(d(gens[2 * i]), d(gens[2 * i + 1]))
    return total


def nonvanishing_degree_bound(lambdas, gens) -> int:
    """Certify that sum lambdas[i]*d(gens[2i])^d(gens[2i+1]) stays nonzero
    in Omega2 of every extension of degree < p^m, and return m = len(lambdas).

    Hypotheses checked: the 2m generators are p-independent and every
    coefficient is nonzero.  The conclusion then holds for all extensions at
    once, which is why only the hypotheses are computed here; sampled
    restriction checks live next to the callers.
    """
    lambdas = list(lambdas)
    gens = list(gens)
    if len(gens) != 2 * len(lambdas) or not lambdas:
        raise HypothesisFailed("need exactly two generators per coefficient")
    if not all(lambdas):
        raise HypothesisFailed("zero coefficient")
    cert = p_independence(gens)
    if not cert:
        raise DependentGenerators("generators are p-dependent (rank %d of %d)"
                                  % (cert.rank, len(gens)))
    return len(lambdas)


# ---------------------------------------------------------------------------
# degree-2 monomial radical extensions as explicit substitutions (p = 2)

def _int_inverse(a):
    n = len(a)
    m = [[Fraction(a[i][j]) for j in range(n)] + [Fraction(i == j) for j in range(n)]
         for i in range(n)]
    for col in range(n):
        piv = next(i for i in range(col, n) if m[i][col])
        m[col], m[piv] = m[piv], m[col]
        pv = m[col][col]
        m[col] = [x / pv for x in m[col]]
        for i in range(n):
            if i != col and m[i][col]:
                f = m[i][col]
                m[i] = [x - f * y for x, y in zip(m[i], m[col])]
    inv = [[m[i][n + j] for j in range(n)] for i in range(n)]
    assert all(x.denominator == 1 for row in inv for x in row)
    return [[int(x) for x in row] for row in inv]


def monomial_root_images(fld: FieldDescriptor, exps, prefix: str = "s"):
    """Images of t_1..t_n inside kappa(sqrt(t^exps)) written in new variables.

    Only p = 2.  The extension is realized by a unimodular monomial change of
    variables u = t^A (first row of A is the odd part of exps) followed by the
    relabeling u_1 = s_1^2, u_i = s_i; the returned images are the resulting
    Laurent monomials, so sqrt(t^exps) itself maps to a polynomial.

    Returns (target_field, images, square_root_image).
    """
    if fld.p != 2:
        raise HypothesisFailed("monomial radical towers are built for p = 2")
    n = fld.num_vars
    a = [e % 2 for e in exps]
    if len(a) != n or not any(a):
        raise HypothesisFailed("exponent vector is even: the monomial is a square")
    k = a.index(1)
    rows = [list(a)]
    for j in range(n):
        if j != k:
            e = [0] * n
            e[j] = 1
            rows.append(e)
    b = _int_inverse(rows)  # t_j = prod_i u_i^(b[j][i])
    target = FieldDescriptor(2, tuple("%s%d" % (prefix, j + 1) for j in range(n)))
    images = []
    for j in range(n):
        vec = [2 * b[j][0]] + [b[j][i] for i in range(1, n)]
        num = {tuple(x if x > 0 else 0 for x in vec): 1}
        den = {tuple(-x if x < 0 else 0 for x in vec): 1}
        images.append(RatFunc(target, num, den, _coprime=True))
    # sqrt(t^exps) = s_1 * (integer square root of the even discrepancy)
    half = [(e - r) // 2 for e, r in zip(exps, a)]
    root = target.gen(0)
    for j, h in enumerate(half):
        if h:
            root = root * images[j] ** h
    return target, images, root
