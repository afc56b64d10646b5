"""Input language for field elements, truncated local elements, symbol sums
and certificate sums.

    symsum  := "0" | symbol { "+" symbol }
    symbol  := "sym" "(" expr "," expr ")"
    certsum := cert { "+" cert }
    cert    := "cert" "(" expr "," expr "," expr ")"
    expr    := term { ("+" | "-") term }
    term    := factor { ("*" | "/") factor }
    factor  := { "-" } atom [ "^" [ "-" ] integer ]
    atom    := integer | name | "(" expr ")"

Names are the model's variables, plus `pi` in local-field context.  Local
elements are evaluated exactly over integer-coefficient fractions and only
then truncated, so valuations and unit parts come out exact; `pi^-3 * 24`
is the same element as `6 / (1 + 1)`.
"""

from __future__ import annotations

import re

from .errors import ParseError, ZeroEntry
from .fields import FieldDescriptor, RatFunc
from .milnor import SymbolSum
from .cdvf import CdvfElement, CdvfModel, TruncatedUnit
from .brauer import BrauerClass

_TOKEN = re.compile(r"\s*(?:(?P<int>\d+)|(?P<name>[A-Za-z_][A-Za-z_0-9]*)"
                    r"|(?P<op>\*\*|[-+*/^(),]))")


def _tokenize(text: str):
    toks = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            if text[pos:].strip():
                raise ParseError("unexpected character %r" % text[pos:].strip()[0],
                                 pos)
            break
        if m.lastgroup == "int":
            toks.append(("int", m.group("int"), m.start("int")))
        elif m.lastgroup == "name":
            toks.append(("name", m.group("name"), m.start("name")))
        else:
            op = m.group("op")
            toks.append(("op", "^" if op == "**" else op, m.start("op")))
        pos = m.end()
    toks.append(("end", "", len(text)))
    return toks


class _ZFrac:
    """Exact fraction of integer-coefficient sparse polynomials; the parse
    target for local elements, truncated only at the very end."""

    __slots__ = ("n", "num", "den")

    def __init__(self, n, num, den):
        self.n = n
        self.num = {e: c for e, c in num.items() if c}
        self.den = {e: c for e, c in den.items() if c}
        if not self.den:
            raise ZeroEntry("division by zero in element expression")

    @classmethod
    def const(cls, n, c):
        return cls(n, {(0,) * n: c}, {(0,) * n: 1})

    @classmethod
    def gen(cls, n, j):
        e = [0] * n
        e[j] = 1
        return cls(n, {tuple(e): 1}, {(0,) * n: 1})

    def _mul_polys(self, a, b):
        out = {}
        for ea, ca in a.items():
            for eb, cb in b.items():
                e = tuple(x + y for x, y in zip(ea, eb))
                out[e] = out.get(e, 0) + ca * cb
        return out

    def __add__(self, o):
        return _ZFrac(self.n,
                      _poly_zadd(self._mul_polys(self.num, o.den),
                                 self._mul_polys(o.num, self.den)),
                      self._mul_polys(self.den, o.den))

    def __sub__(self, o):
        return self + (-o)

    def __neg__(self):
        return _ZFrac(self.n, {e: -c for e, c in self.num.items()}, self.den)

    def __mul__(self, o):
        return _ZFrac(self.n, self._mul_polys(self.num, o.num),
                      self._mul_polys(self.den, o.den))

    def __truediv__(self, o):
        if not o.num:
            raise ZeroEntry("division by zero in element expression")
        return _ZFrac(self.n, self._mul_polys(self.num, o.den),
                      self._mul_polys(self.den, o.num))

    def __pow__(self, k):
        if k < 0:
            return (_ZFrac(self.n, self.den, self.num)
                    if self.num else _zero_division()) ** (-k)
        r = _ZFrac.const(self.n, 1)
        b = self
        while k:
            if k & 1:
                r = r * b
            b = b * b
            k >>= 1
        return r

    def to_cdvf(self, model: CdvfModel) -> CdvfElement:
        if not self.num:
            raise ZeroEntry("zero is not an element of the multiplicative group")
        p = model.p
        vn = min(_padic(c, p) for c in self.num.values())
        vd = min(_padic(c, p) for c in self.den.values())
        mod = model.modulus
        num = {e: (c // p ** vn) % mod for e, c in self.num.items()}
        den = {e: (c // p ** vd) % mod for e, c in self.den.items()}
        return CdvfElement(vn - vd, TruncatedUnit(model, num, den))


def _zero_division():
    raise ZeroEntry("division by zero in element expression")


def _poly_zadd(a, b):
    out = dict(a)
    for e, c in b.items():
        out[e] = out.get(e, 0) + c
    return out


def _padic(c: int, p: int) -> int:
    v = 0
    while c % p == 0:
        c //= p
        v += 1
    return v


class _Parser:
    def __init__(self, text, fld: FieldDescriptor, model: CdvfModel | None):
        self.text = text
        self.fld = fld
        self.model = model  # None: residue mode, values are RatFunc
        self.toks = _tokenize(text)
        self.i = 0

    # -- token plumbing ------------------------------------------------------
    def peek(self):
        return self.toks[self.i]

    def take(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def expect(self, op):
        kind, val, pos = self.take()
        if kind != "op" or val != op:
            raise ParseError("expected %r, found %r" % (op, val or "end of input"),
                             pos)

    def at_op(self, op):
        kind, val, _ = self.peek()
        return kind == "op" and val == op

    def done(self):
        kind, val, pos = self.peek()
        if kind != "end":
            raise ParseError("trailing input %r" % val, pos)

    # -- values ---------------------------------------------------------------
    def _const(self, c):
        if self.model is not None:
            return _ZFrac.const(self.fld.num_vars, c)
        return self.fld.const(c)

    def _var(self, name, pos):
        if name == "pi":
            if self.model is None:
                raise ParseError("pi is not an element of the residue field", pos)
            return _ZFrac.const(self.fld.num_vars, self.model.p)
        try:
            j = self.fld.var_names.index(name)
        except ValueError:
            raise ParseError("unknown variable %r (have %s)"
                             % (name, ", ".join(self.fld.var_names) or "none"),
                             pos) from None
        if self.model is not None:
            return _ZFrac.gen(self.fld.num_vars, j)
        return self.fld.gen(j)

    # -- grammar ---------------------------------------------------------------
    def expr(self):
        v = self.term()
        while self.at_op("+") or self.at_op("-"):
            _, op, _ = self.take()
            w = self.term()
            v = v + w if op == "+" else v - w
        return v

    def term(self):
        v = self.factor()
        while self.at_op("*") or self.at_op("/"):
            _, op, pos = self.take()
            w = self.factor()
            if op == "*":
                v = v * w
            else:
                try:
                    v = v / w
                except ZeroDivisionError:
                    raise ZeroEntry("division by zero in element expression") from None
        return v

    def factor(self):
        neg = False
        while self.at_op("-"):
            self.take()
            neg = not neg
        v = self.atom()
        if self.at_op("^"):
            self.take()
            sign = 1
            if self.at_op("-"):
                self.take()
                sign = -1
            kind, val, pos = self.take()
            if kind != "int":
                raise ParseError("expected integer exponent", pos)
            v = v ** (sign * int(val))
        return -v if neg else v

    def atom(self):
        kind, val, pos = self.take()
        if kind == "int":
            return self._const(int(val))
        if kind == "name":
            return self._var(val, pos)
        if kind == "op" and val == "(":
            v = self.expr()
            self.expect(")")
            return v
        raise ParseError("expected a value, found %r" % (val or "end of input"),
                         pos)

    def call(self, head, arity):
        kind, val, pos = self.take()
        if kind != "name" or val != head:
            raise ParseError("expected %r" % head, pos)
        self.expect("(")
        args = [self.expr()]
        for _ in range(arity - 1):
            self.expect(",")
            args.append(self.expr())
        self.expect(")")
        return args


# ---------------------------------------------------------------------------
# public entry points

def parse_element(text: str, fld: FieldDescriptor) -> RatFunc:
    """Residue-field element."""
    p = _Parser(text, fld, None)
    v = p.expr()
    p.done()
    return v


def parse_cdvf_element(text: str, model: CdvfModel) -> CdvfElement:
    """Local-field element: exact integer evaluation, then truncation."""
    p = _Parser(text, model.residue, model)
    v = p.expr()
    p.done()
    return v.to_cdvf(model)


def parse_symbol_sum(text: str, fld: FieldDescriptor) -> SymbolSum:
    """`sym(a, b) + ...` over the residue field; `0` is the empty sum."""
    p = _Parser(text, fld, None)
    if p.peek()[0] == "int" and p.peek()[1] == "0":
        p.take()
        p.done()
        return SymbolSum(fld, ())
    entries = [tuple(p.call("sym", 2))]
    while p.at_op("+"):
        p.take()
        entries.append(tuple(p.call("sym", 2)))
    p.done()
    return SymbolSum(fld, tuple(entries))


def parse_brauer_class(text: str, model: CdvfModel) -> BrauerClass:
    """`sym(x, y) + ...` with local-element literals; `0` is the zero class."""
    p = _Parser(text, model.residue, model)
    if p.peek()[0] == "int" and p.peek()[1] == "0":
        p.take()
        p.done()
        return BrauerClass(model, ())
    entries = []
    while True:
        x, y = p.call("sym", 2)
        entries.append((x.to_cdvf(model), y.to_cdvf(model)))
        if not p.at_op("+"):
            break
        p.take()
    p.done()
    return BrauerClass(model, tuple(entries))


def parse_cert_sum(text: str, fld: FieldDescriptor):
    """`cert(lambda, g, h) + ...` -> (lambdas, generators) for the wedge
    nonvanishing bound."""
    p = _Parser(text, fld, None)
    lams, gens = [], []
    while True:
        lam, g, h = p.call("cert", 3)
        lams.append(lam)
        gens.extend((g, h))
        if not p.at_op("+"):
            break
        p.take()
    p.done()
    return lams, gens


# ---------------------------------------------------------------------------
# pretty printers (grammar-compatible, re-parse to equal values)

def pretty_ratfunc(f: RatFunc) -> str:
    from .fields import poly_str
    names = f.field.var_names
    num = poly_str(f.num, names)
    if f.den == {(0,) * f.field.num_vars: 1}:
        return num
    return "(%s)/(%s)" % (num, poly_str(f.den, names))


def pretty_unit(u: TruncatedUnit) -> str:
    from .fields import poly_str
    names = u.model.residue.var_names
    num = poly_str(u.num, names)
    if u.den == {(0,) * u.model.residue.num_vars: 1}:
        return "(%s)" % num
    return "(%s)/(%s)" % (num, poly_str(u.den, names))


def pretty_cdvf(x: CdvfElement) -> str:
    unit = pretty_unit(x.unit)
    if x.val == 0:
        return unit
    if x.val == 1:
        return "pi * %s" % unit
    return "pi^%d * %s" % (x.val, unit)


def pretty_symbol_sum(s: SymbolSum) -> str:
    if not s.entries:
        return "0"
    return " + ".join("sym(%s, %s)" % (pretty_ratfunc(a), pretty_ratfunc(b))
                      for a, b in s.entries)


def pretty_class(c: BrauerClass) -> str:
    if not c.entries:
        return "0"
    return " + ".join("sym(%s, %s)" % (pretty_cdvf(x), pretty_cdvf(y))
                      for x, y in c.entries)
