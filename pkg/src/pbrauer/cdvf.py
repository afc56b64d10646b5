"""Truncated model of a complete discretely valued field of characteristic 0
with residue field F_p(t1..tn) and uniformizer pi = p (unramified, e = 1).

Units are kept as fractions of polynomials with coefficients mod p^L where
L = floor(e*p/(p-1)) + 1; classes of period p carry no information above that
cutoff, so the truncation is lossless for everything computed here.
Denominators are units of the local ring (nonzero mod p), which makes them
non-zero-divisors mod p^L, so fraction equality is plain cross-multiplication.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import NonUnit
from .fields import (FieldDescriptor, RatFunc, Embedding, lead_mono, glex_key,
                     poly_add, poly_mul, poly_normal, poly_scale, poly_sub)


@dataclass(frozen=True)
class CdvfModel:
    """Configuration: residue field, ramification index (only e = 1), and the
    truncation exponent L (defaults to the filtration cutoff M plus one)."""

    residue: FieldDescriptor
    e: int = 1
    precision: int | None = None  # override for L

    def __post_init__(self):
        if self.e != 1:
            raise ValueError("only the unramified model (e = 1) is instantiated")
        if self.precision is not None and self.precision < self.M + 1:
            raise ValueError("precision below the filtration cutoff loses classes")

    @property
    def p(self) -> int:
        return self.residue.p

    @property
    def N(self) -> Fraction:
        return Fraction(self.e * self.p, self.p - 1)

    @property
    def M(self) -> int:
        return int(self.N)

    @property
    def L(self) -> int:
        return self.precision if self.precision is not None else self.M + 1

    @property
    def modulus(self) -> int:
        return self.p ** self.L

    def unit(self, num, den=None) -> "TruncatedUnit":
        return TruncatedUnit(self, num, den)

    def unit_const(self, c: int) -> "TruncatedUnit":
        n = self.residue.num_vars
        return TruncatedUnit(self, {(0,) * n: c})

    def one(self) -> "TruncatedUnit":
        return self.unit_const(1)

    def element(self, text: str) -> "CdvfElement":
        from .parsing import parse_cdvf_element
        return parse_cdvf_element(text, self)

    def symbols(self, text: str):
        from .parsing import parse_brauer_class
        return parse_brauer_class(text, self)


def filtration_cutoff(m: CdvfModel):
    """(N, M, L) with N = e*p/(p-1), M = floor(N), L = M+1."""
    return (m.N, m.M, m.L)


def _mono_floor(a: dict):
    it = iter(a)
    m = list(next(it))
    for e in it:
        for i, x in enumerate(e):
            if x < m[i]:
                m[i] = x
    return tuple(m)


class TruncatedUnit:
    """Fraction of sparse polynomials with coefficients in Z/p^L; the
    denominator must be a unit of the local ring (nonzero mod p)."""

    __slots__ = ("model", "num", "den")

    def __init__(self, model: CdvfModel, num: dict, den: dict | None = None):
        mod = model.modulus
        n = model.residue.num_vars
        num = poly_normal(num, mod)
        den = poly_normal(den, mod) if den is not None else {(0,) * n: 1}
        p = model.p
        units = [e for e, c in den.items() if c % p]
        if not units:
            raise NonUnit("denominator vanishes mod p")
        if num:
            # monomials are units of the local ring, so common monomial
            # content cancels; keeps reprs readable
            common = tuple(min(a, b) for a, b in
                           zip(_mono_floor(num), _mono_floor(den)))
            if any(common):
                num = {tuple(x - y for x, y in zip(e, common)): c
                       for e, c in num.items()}
                den = {tuple(x - y for x, y in zip(e, common)): c
                       for e, c in den.items()}
                units = [e for e, c in den.items() if c % p]
            if num == den:
                num = den = {(0,) * n: 1}
                units = [(0,) * n]
        lead = max(units, key=glex_key)
        c = den[lead]
        if c != 1:
            cinv = pow(c, -1, mod)
            num = poly_scale(num, cinv, mod)
            den = poly_scale(den, cinv, mod)
        self.model = model
        self.num = num
        self.den = den

    # -- structure -----------------------------------------------------------
    @property
    def is_unit(self) -> bool:
        p = self.model.p
        return any(c % p for c in self.num.values())

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = self.model.unit_const(other)
        if not isinstance(other, TruncatedUnit):
            return NotImplemented
        if self.model != other.model:
            return False
        mod = self.model.modulus
        return poly_mul(self.num, other.den, mod) == poly_mul(other.num, self.den, mod)

    __hash__ = None  # equality is semantic (cross-multiplied), not structural

    # -- ring operations -------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, int):
            return self.model.unit_const(other)
        if isinstance(other, TruncatedUnit) and other.model == self.model:
            return other
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        mod = self.model.modulus
        num = poly_add(poly_mul(self.num, o.den, mod),
                       poly_mul(o.num, self.den, mod), mod)
        return TruncatedUnit(self.model, num, poly_mul(self.den, o.den, mod))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        mod = self.model.modulus
        num = poly_sub(poly_mul(self.num, o.den, mod),
                       poly_mul(o.num, self.den, mod), mod)
        return TruncatedUnit(self.model, num, poly_mul(self.den, o.den, mod))

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        mod = self.model.modulus
        return TruncatedUnit(self.model, poly_scale(self.num, mod - 1, mod), self.den)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        mod = self.model.modulus
        return TruncatedUnit(self.model, poly_mul(self.num, o.num, mod),
                             poly_mul(self.den, o.den, mod))

    __rmul__ = __mul__

    def inv(self) -> "TruncatedUnit":
        if not self.is_unit:
            raise NonUnit("numerator vanishes mod p; not invertible")
        return TruncatedUnit(self.model, self.den, self.num)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inv()

    def __pow__(self, k: int):
        if k < 0:
            return self.inv() ** (-k)
        r = self.model.one()
        b = self
        while k:
            if k & 1:
                r = r * b
            b = b * b
            k >>= 1
        return r

    def embed(self, e: Embedding, target: CdvfModel) -> "TruncatedUnit":
        """Exponent remap along t_j -> s_j^(p^r_j); coefficients unchanged."""
        q = [e.source.p ** r for r in e.powers]

        def remap(a):
            return {tuple(x * k for x, k in zip(mono, q)): c for mono, c in a.items()}

        return TruncatedUnit(target, remap(self.num), remap(self.den))

    def evaluate(self, point):
        """(numerator value, denominator value) mod p^L at integer point."""
        mod = self.model.modulus

        def ev(a):
            total = 0
            for e, c in a.items():
                term = c
                for x, k in zip(point, e):
                    term = term * pow(x, k, mod) % mod
                total = (total + term) % mod
            return total

        return ev(self.num), ev(self.den)

    def __repr__(self):
        names = self.model.residue.var_names
        from .fields import poly_str
        ns = poly_str(self.num, names)
        if self.den == {(0,) * self.model.residue.num_vars: 1}:
            return ns
        if len(self.num) > 1:
            ns = "(%s)" % ns
        return "%s/(%s)" % (ns, poly_str(self.den, names))


# ---------------------------------------------------------------------------
# lifts and reductions between the residue field and the truncated ring

def lift_unit(f: RatFunc, model: CdvfModel) -> TruncatedUnit:
    """Coefficientwise lift along {0..p-1} into Z/p^L.  Fixed convention so
    layer decompositions are reproducible."""
    if not f:
        raise NonUnit("cannot lift zero to a unit")
    if f.field != model.residue:
        raise ValueError("element not over the model's residue field")
    return TruncatedUnit(model, dict(f.num), dict(f.den))


def reduce_unit(u: TruncatedUnit) -> RatFunc:
    """Reduction mod p onto the residue field, canonicalized."""
    p = u.model.p
    den = poly_normal(u.den, p)
    if not den:
        raise NonUnit("denominator vanishes mod p")
    return RatFunc(u.model.residue, poly_normal(u.num, p), den)


@dataclass(frozen=True)
class UnitLayers:
    """u = lift(residue_part) * prod_i (1 + lift(layer_coeffs[i-1]) * p^i)
    exactly mod p^L."""

    model: CdvfModel
    residue_part: RatFunc
    layer_coeffs: tuple

    def reconstruct(self) -> TruncatedUnit:
        u = lift_unit(self.residue_part, self.model)
        for i, c in enumerate(self.layer_coeffs, start=1):
            u = u * one_unit(self.model, i, c)
        return u


def one_unit(model: CdvfModel, i: int, c: RatFunc) -> TruncatedUnit:
    """1 + lift(c) * p^i as a TruncatedUnit."""
    if not c:
        return model.one()
    lifted = lift_unit(c, model)
    mod = model.modulus
    pi_i = model.p ** i
    num = poly_add(dict(lifted.den), poly_scale(lifted.num, pi_i, mod), mod)
    return TruncatedUnit(model, num, lifted.den)


def unit_layers(u: TruncatedUnit) -> UnitLayers:
    """Greedy multiplicative peeling through the unit filtration.

    residue_part = reduce(u); afterwards w is a 1-unit and the p^i coefficient
    of w - 1, reduced mod p, is peeled off multiplicatively for i = 1..M.
    The loop ends with w = 1 exactly mod p^L since L = M + 1.
    """
    if not u.is_unit:
        raise NonUnit("unit_layers of a non-unit")
    model = u.model
    res = reduce_unit(u)
    w = u / lift_unit(res, model)
    coeffs = []
    mod = model.modulus
    for i in range(1, model.M + 1):
        pi_i = model.p ** i
        diff = poly_sub(w.num, w.den, mod)
        assert all(c % pi_i == 0 for c in diff.values()), "not in filtration layer"
        quo = {e: c // pi_i for e, c in diff.items()}
        c_i = RatFunc(model.residue, poly_normal(quo, model.p),
                      poly_normal(w.den, model.p))
        coeffs.append(c_i)
        if c_i:
            w = w / one_unit(model, i, c_i)
    assert w == 1, "layer peeling left a tail below the cutoff"
    return UnitLayers(model, res, tuple(coeffs))


# ---------------------------------------------------------------------------
# valuation + unit presentation of nonzero field elements

@dataclass(frozen=True)
class CdvfElement:
    """pi^val * unit with the unit known mod p^L."""

    val: int
    unit: TruncatedUnit

    def __post_init__(self):
        if not self.unit.is_unit:
            raise NonUnit("unit part must be a unit")

    @property
    def model(self) -> CdvfModel:
        return self.unit.model

    @classmethod
    def from_residue(cls, f: RatFunc, model: CdvfModel, val: int = 0) -> "CdvfElement":
        return cls(val, lift_unit(f, model))

    @classmethod
    def pi(cls, model: CdvfModel, k: int = 1) -> "CdvfElement":
        return cls(k, model.one())

    def __mul__(self, other: "CdvfElement") -> "CdvfElement":
        return CdvfElement(self.val + other.val, self.unit * other.unit)

    def inv(self) -> "CdvfElement":
        return CdvfElement(-self.val, self.unit.inv())

    def __eq__(self, other) -> bool:
        return (isinstance(other, CdvfElement) and self.val == other.val
                and self.unit == other.unit)

    __hash__ = None

    def __repr__(self):
        if self.val == 0:
            return repr(self.unit)
        head = "pi" if self.val == 1 else "pi^%d" % self.val
        if self.unit == 1:
            return head
        return "%s*(%r)" % (head, self.unit)


def cdvf_arith(op: str, x: CdvfElement, y: CdvfElement | None = None) -> CdvfElement:
    """mul and inv; valuations add / negate, units multiply / invert."""
    if op == "mul":
        return x * y
    if op == "inv":
        return x.inv()
    raise ValueError("unknown operation %r" % op)
