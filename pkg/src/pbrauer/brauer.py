"""Period-p Brauer classes over the truncated local-field model.

A class is a formal sum of symbols (x, y) in nonzero field elements.  The
engine rewrites it, by exact symbol identities only, into

    k2 atoms (a~, b~)   +   (pi, U)   +   carriers  (P_x, x~)

where a~, b~, x~ are canonical lifts of residue elements, U is a unit and
every carrier P_x is a principal unit.  Bilinearity aggregates everything
sharing a slot, one-unit pairs are pushed upward level by level through the
Steinberg relation, and anything landing above the filtration cutoff is a
p-th power and is dropped.  Graded data then read off layer by layer.

Everything here is restricted to p = 2 (the base field contains -1, so
symbols need no extra root of unity); signs collapse and classes are
2-torsion, which the rewriting uses freely.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import (AlgebraError, BadSpecialization, LevelOutOfRange,
                     NotInBr1, NotInLevel, UnresolvedSymbolRelation,
                     UnsupportedPrime, ZeroEntry)
from .fields import Embedding, FieldDescriptor, RatFunc, pth_root
from .differentials import Omega1Form, dlog, wedge
from .milnor import SymbolSum, h2p
from .cdvf import (CdvfElement, CdvfModel, TruncatedUnit, lift_unit, one_unit,
                   reduce_unit, unit_layers)
from .hilbert import hilbert2

INFINITE_LEVEL = float("inf")


# ---------------------------------------------------------------------------
# classes and graded data

@dataclass(frozen=True)
class BrauerClass:
    """Formal sum of period-p symbols (x_i, y_i) over the model field."""

    model: CdvfModel
    entries: tuple

    def __post_init__(self):
        object.__setattr__(self, "entries", tuple(tuple(e) for e in self.entries))
        for x, y in self.entries:
            if not (x.unit.is_unit and y.unit.is_unit):
                raise ZeroEntry("symbol entries must be nonzero field elements")

    @classmethod
    def of(cls, model: CdvfModel, *pairs) -> "BrauerClass":
        return cls(model, pairs)

    @classmethod
    def from_residues(cls, model: CdvfModel, pairs) -> "BrauerClass":
        entries = [(CdvfElement.from_residue(a, model),
                    CdvfElement.from_residue(b, model)) for a, b in pairs]
        return cls(model, tuple(entries))

    def __add__(self, other: "BrauerClass") -> "BrauerClass":
        if self.model != other.model:
            raise ValueError("classes over different models")
        return BrauerClass(self.model, self.entries + other.entries)

    def map_embedding(self, e: Embedding, target: CdvfModel) -> "BrauerClass":
        entries = [(CdvfElement(x.val, x.unit.embed(e, target)),
                    CdvfElement(y.val, y.unit.embed(e, target)))
                   for x, y in self.entries]
        return BrauerClass(target, tuple(entries))

    def __repr__(self):
        if not self.entries:
            return "0"
        return " + ".join("sym(%r, %r)" % (x, y) for x, y in self.entries)


@dataclass(frozen=True)
class GradedDatum0:
    """Level-0 datum: a k2 symbol sum and a unit class mod p-th powers."""

    k2_part: SymbolSum
    unit_class: RatFunc

    def is_trivial(self) -> bool:
        return (not h2p(self.k2_part)) and pth_root(self.unit_class) is not None

    def same_datum(self, other: "GradedDatum0") -> bool:
        """Equality as graded data: k2 parts compared through the
        differential symbol, unit classes mod p-th powers."""
        if h2p(self.k2_part + other.k2_part):
            return False
        return pth_root(self.unit_class / other.unit_class) is not None


@dataclass(frozen=True)
class GradedDatumI:
    """Level-i datum: a 1-form and a scalar, for 1 <= i <= M."""

    level: int
    form: Omega1Form
    scalar: RatFunc

    def is_zero(self) -> bool:
        return not self.form and not self.scalar


@dataclass(frozen=True)
class NormalForm:
    """(lambdas[0], u_1) + ... + (lambdas[n-1], u_n) + (pi, pi_coeff) with
    u_j the fixed lifts of the residue p-basis."""

    model: CdvfModel
    lambdas: tuple
    pi_coeff: TruncatedUnit
    basis_lifts: tuple

    def as_class(self) -> BrauerClass:
        entries = []
        for lam, u in zip(self.lambdas, self.basis_lifts):
            if lam != 1:
                entries.append((CdvfElement(0, lam), CdvfElement(0, u)))
        if self.pi_coeff != 1:
            entries.append((CdvfElement.pi(self.model), CdvfElement(0, self.pi_coeff)))
        return BrauerClass(self.model, tuple(entries))

    def __repr__(self):
        names = self.model.residue.var_names
        parts = ["sym(%r, %s)" % (lam, nm) for lam, nm in zip(self.lambdas, names)]
        parts.append("sym(pi, %r)" % (self.pi_coeff,))
        return " + ".join(parts)


@dataclass(frozen=True)
class IndexBounds:
    """index guaranteed within [p^lower_exp, p^upper_exp]."""

    lower_exp: int
    upper_exp: int
    certificates: tuple


@dataclass(frozen=True)
class SplittingField:
    """Radical generators (element text, root degree) with total degree."""

    generators: tuple
    total_degree: int


# ---------------------------------------------------------------------------
# the rewriting engine

class _State:
    """Aggregated exact presentation of a class during rewriting."""

    def __init__(self, model: CdvfModel):
        if model.p != 2:
            raise UnsupportedPrime("symbol rewriting is instantiated for p = 2")
        self.model = model
        self.fld = model.residue
        self.k2: dict = {}            # oriented residue pair -> multiplicity mod 2
        self.upi = model.one()        # (pi, upi)
        self.carriers: dict = {}      # slot residue -> principal-unit product
        self.unit_obstruction: RatFunc | None = None

    # -- feeding symbols ----------------------------------------------------
    def push_class(self, c: BrauerClass):
        for x, y in c.entries:
            self.push_symbol(x, y)

    def push_symbol(self, x: CdvfElement, y: CdvfElement):
        a, b = x.val % 2, y.val % 2
        if a and b:
            self.upi = self.upi * self.model.unit_const(-1)  # (pi,pi) = (pi,-1)
        if a:
            self.upi = self.upi * y.unit
        if b:
            self.upi = self.upi * x.unit
        self.push_unit_unit(x.unit, y.unit)

    def push_unit_unit(self, u: TruncatedUnit, v: TruncatedUnit):
        ub, vb = reduce_unit(u), reduce_unit(v)
        u1 = u / lift_unit(ub, self.model)
        v1 = v / lift_unit(vb, self.model)
        self.k2_insert(ub, vb)
        self.insert_carrier(ub, v1)
        self.insert_carrier(vb, u1)
        self.push_mixed(u1, v1)

    # -- k2 atoms -------------------------------------------------------------
    def k2_insert(self, a: RatFunc, b: RatFunc):
        if a.is_one() or b.is_one():
            return  # (1, x) = 0
        key = tuple(sorted((a, b), key=lambda f: (f.glex_size(), repr(f))))
        self.k2[key] = self.k2.get(key, 0) ^ 1
        if not self.k2[key]:
            del self.k2[key]

    # -- carriers ---------------------------------------------------------------
    def insert_carrier(self, slot: RatFunc, P: TruncatedUnit):
        """Record (P, lift(slot)) for a principal unit P."""
        if P == 1 or slot.is_one():
            return
        num = RatFunc(self.fld, dict(slot.num), _coprime=True)
        den = RatFunc(self.fld, dict(slot.den), _coprime=True)
        self._insert_poly_slot(num, P)
        if not den.is_one():
            self._insert_poly_slot(den, P)

    def _insert_poly_slot(self, q: RatFunc, P: TruncatedUnit):
        # peel monomial content into basis slots; exponents even = squares drop
        exps = [min(e[j] for e in q.num) for j in range(self.fld.num_vars)]
        for j, e in enumerate(exps):
            if e % 2:
                self._bump(self.fld.gen(j), P)
        if any(exps):
            q = q / _monomial(self.fld, exps)
        if q.is_one():
            return
        w = pth_root(q)
        if w is not None:
            # (P, q~) = (P, w~^2 r~) = (P, r~) with r~ a principal unit
            r = lift_unit(q, self.model) / lift_unit(w, self.model) ** 2
            self.push_mixed(P, r)
            return
        for key in list(self.carriers):
            if _is_basis_slot(key):
                continue
            w = pth_root(q * key)
            if w is not None:
                # (P, q~) = (P, key~) + (P, q~ key~ / w~^2)
                self._bump(key, P)
                r = (lift_unit(q, self.model) * lift_unit(key, self.model)
                     / lift_unit(w, self.model) ** 2)
                self.push_mixed(P, r)
                return
        self._bump(q, P)

    def _bump(self, slot: RatFunc, P: TruncatedUnit):
        cur = self.carriers.get(slot)
        new = P if cur is None else cur * P
        if new == 1:
            self.carriers.pop(slot, None)
        else:
            self.carriers[slot] = new

    # -- one-unit pairs ----------------------------------------------------------
    def push_mixed(self, U: TruncatedUnit, V: TruncatedUnit):
        """(U, V) with both principal units: push to level i+j exactly."""
        i = _principal_level(U)
        j = _principal_level(V)
        if i is None or j is None:
            return  # a slot is 1 mod pi^L: it is a p-th power, symbol dies
        if i + j > self.model.M:
            return  # lands above the cutoff where br vanishes
        # Steinberg chain: with a = U-1, X = 1 + a(V-1)/U,
        # (U, V) = (-(U-1), X) + (V, X)
        X = (U * V - V + 1) / U
        a_num, a_den = _fraction_minus_one(U)
        v = _pi_content(a_num, self.model)
        # (U-1)/pi^v: exact in the layers that matter, junk above them lands
        # past the cutoff and dies
        x_unit = TruncatedUnit(self.model,
                               {e: c >> v for e, c in a_num.items()}, a_den)
        if v % 2:
            self.upi = self.upi * X
        self.push_unit_unit(-x_unit, X)
        self.push_mixed(V, X)

    # -- level-0 resolution ---------------------------------------------------
    def resolve(self):
        """Rewrite k2-trivial residue data into higher levels; records the
        level-0 obstructions when the data are not trivial."""
        z = reduce_unit(self.upi)
        w = pth_root(z)
        if w is None:
            self.unit_obstruction = z
        elif not z.is_one():
            self.upi = self.upi / lift_unit(w, self.model) ** 2
        if not self.k2:
            return
        if h2p(self.k2_sum()):
            return  # genuine level-0 k2 obstruction; leave atoms in place
        guard = 0
        while self.k2:
            guard += 1
            if guard > 1000:
                raise UnresolvedSymbolRelation("resolution did not terminate")
            if self._rule_diagonal():
                continue
            if self._rule_square_slot():
                continue
            if self._rule_shared_slot():
                continue
            if self._rule_dependent_pair():
                continue
            raise UnresolvedSymbolRelation(
                "symbols vanish in k2 but no rewriting rule applies: %r"
                % (self.k2_sum(),))

    def _rule_diagonal(self) -> bool:
        for (a, b) in list(self.k2):
            if a == b:
                del self.k2[(a, b)]
                # (a~, a~) = (a~, -1)
                self.push_unit_unit(lift_unit(a, self.model),
                                    self.model.unit_const(-1))
                return True
        return False

    def _rule_square_slot(self) -> bool:
        for (a, b) in list(self.k2):
            for x, y in ((a, b), (b, a)):
                w = pth_root(y)
                if w is not None:
                    del self.k2[(a, b)]
                    r = lift_unit(y, self.model) / lift_unit(w, self.model) ** 2
                    self.push_unit_unit(lift_unit(x, self.model), r)
                    return True
        return False

    def _rule_shared_slot(self) -> bool:
        atoms = list(self.k2)
        for idx1 in range(len(atoms)):
            for idx2 in range(idx1 + 1, len(atoms)):
                for s1 in atoms[idx1]:
                    for s2 in atoms[idx2]:
                        w = pth_root(s1 * s2)
                        if w is None:
                            continue
                        x = _other_slot(atoms[idx1], s1)
                        y = _other_slot(atoms[idx2], s2)
                        del self.k2[atoms[idx1]]
                        del self.k2[atoms[idx2]]
                        # (x,s1)+(y,s2) = (xy, s1) + (y, s2*s1) with s2*s1 square
                        self.push_unit_unit(
                            lift_unit(x, self.model) * lift_unit(y, self.model),
                            lift_unit(s1, self.model))
                        self.push_unit_unit(
                            lift_unit(y, self.model),
                            lift_unit(s2, self.model) * lift_unit(s1, self.model))
                        return True
        return False

    def _rule_dependent_pair(self) -> bool:
        for (a, b) in list(self.k2):
            if wedge(dlog(a), dlog(b)):
                continue
            lam1, lam0 = _square_combination(a, b)
            if lam1 is None or not lam1:
                continue  # b a square: the square-slot rule owns it
            del self.k2[(a, b)]
            at = lift_unit(a, self.model)
            if not lam0:
                # b = lam1^2 a: (a~,b~) = (a~,-1) + (a~, r~)
                r = (lift_unit(b, self.model)
                     / (lift_unit(lam1, self.model) ** 2 * at))
                self.push_unit_unit(at, self.model.unit_const(-1))
                self.push_unit_unit(at, r)
            else:
                l0 = lift_unit(lam0, self.model)
                m = lift_unit(lam1, self.model) / l0
                X = m * m * at + 1
                r = lift_unit(b, self.model) / (l0 ** 2 * X)
                # (a~,b~) = (-1, X) + (a~, r~)
                self.push_unit_unit(self.model.unit_const(-1), X)
                self.push_unit_unit(at, r)
            return True
        return False

    # -- readouts ----------------------------------------------------------------
    def k2_sum(self) -> SymbolSum:
        return SymbolSum(self.fld, tuple(self.k2))

    def datum0(self) -> GradedDatum0:
        return GradedDatum0(self.k2_sum(), reduce_unit(self.upi))

    def level_table(self):
        """Per level 1..M: (form, scalar, clean) where clean means every slot
        contribution vanished individually, so deeper levels stay exact."""
        m = self.model
        scal_layers = unit_layers(self.upi).layer_coeffs
        slot_layers = []
        for slot, P in self.carriers.items():
            lay = unit_layers(P)
            assert lay.residue_part.is_one()
            slot_layers.append((slot, lay.layer_coeffs))
        table = []
        for i in range(1, m.M + 1):
            form = Omega1Form.zero(self.fld)
            clean = True
            for slot, lays in slot_layers:
                c = lays[i - 1]
                if c:
                    clean = False
                    form = form + c * dlog(slot)
            scalar = scal_layers[i - 1]
            table.append((GradedDatumI(i, form, scalar), clean))
        return table


def _monomial(fld: FieldDescriptor, exps) -> RatFunc:
    return RatFunc(fld, {tuple(exps): 1}, _coprime=True)


def _is_basis_slot(f: RatFunc) -> bool:
    return (len(f.num) == 1 and f.den == {(0,) * f.field.num_vars: 1}
            and sum(lead := next(iter(f.num))) == 1 and f.num[lead] == 1)


def _other_slot(pair, s):
    return pair[1] if pair[0] == s else pair[0]


def _fraction_minus_one(U: TruncatedUnit):
    from .fields import poly_sub
    return poly_sub(U.num, U.den, U.model.modulus), dict(U.den)


def _pi_content(num: dict, model: CdvfModel) -> int:
    v = model.L
    for c in num.values():
        k = 0
        while c % 2 == 0:
            c //= 2
            k += 1
        v = min(v, k)
    return v


def _principal_level(U: TruncatedUnit):
    """Smallest i >= 1 with U not 1 mod pi^(i); None when U = 1 mod pi^L."""
    diff, _ = _fraction_minus_one(U)
    if not diff:
        return None
    return _pi_content(diff, U.model)


def _square_combination(a: RatFunc, b: RatFunc):
    """lam1, lam0 with b = lam0^2 + lam1^2 * a, or (None, None)."""
    fld = a.field
    j = next((k for k in range(fld.num_vars) if a.partial(k)), None)
    if j is None:
        return None, None
    lam1 = pth_root(b.partial(j) / a.partial(j))
    if lam1 is None:
        return None, None
    lam0 = pth_root(b - lam1 * lam1 * a)
    if lam0 is None:
        return None, None
    return lam1, lam0


def _atomize(c: BrauerClass, resolve: bool = True) -> _State:
    st = _State(c.model)
    st.push_class(c)
    if resolve:
        st.resolve()
    return st


# ---------------------------------------------------------------------------
# the graded maps

def rho0_forward(d: GradedDatum0, m: CdvfModel) -> BrauerClass:
    """Lift a level-0 datum: k2 entries coefficientwise, (pi, unit class)."""
    entries = [(CdvfElement.from_residue(a, m), CdvfElement.from_residue(b, m))
               for a, b in d.k2_part.entries]
    if not d.unit_class:
        raise ZeroEntry("unit class must be nonzero")
    if not d.unit_class.is_one():
        entries.append((CdvfElement.pi(m), CdvfElement.from_residue(d.unit_class, m)))
    return BrauerClass(m, tuple(entries))


def rho0_extract(c: BrauerClass) -> GradedDatum0:
    """Level-0 datum by bilinear expansion; exact since the level-0 graded
    map is an isomorphism."""
    return _atomize(c, resolve=False).datum0()


def rhoi_forward(d: GradedDatumI, m: CdvfModel) -> BrauerClass:
    """(1 + b_j~ pi^i, t_j~) per form coordinate plus (pi, 1 + a~ pi^i)."""
    if not 1 <= d.level <= m.M:
        raise LevelOutOfRange("level %r outside 1..%d" % (d.level, m.M))
    fld = m.residue
    entries = []
    for j in range(fld.num_vars):
        b = d.form.coords[j] * fld.gen(j)  # dt_j coordinate -> dlog t_j coefficient
        if b:
            entries.append((CdvfElement(0, one_unit(m, d.level, b)),
                            CdvfElement.from_residue(fld.gen(j), m)))
    if d.scalar:
        entries.append((CdvfElement.pi(m),
                        CdvfElement(0, one_unit(m, d.level, d.scalar))))
    return BrauerClass(m, tuple(entries))


def rhoi_extract(c: BrauerClass, i: int) -> GradedDatumI:
    """Level-i datum of a class in br_i.  NotInLevel when a nonzero datum
    shows up below i; honest failure when hidden cross-slot content below i
    makes the level-i datum unreachable."""
    m = c.model
    if not 1 <= i <= m.M:
        raise LevelOutOfRange("level %r outside 1..%d" % (i, m.M))
    st = _atomize(c)
    if st.k2 or st.unit_obstruction is not None:
        raise NotInLevel("nontrivial level-0 datum: %r" % (st.datum0(),))
    table = st.level_table()
    for datum, clean in table[:i - 1]:
        if not datum.is_zero():
            raise NotInLevel("nonzero datum at level %d" % datum.level)
        if not clean:
            raise UnresolvedSymbolRelation(
                "slot data cancel across distinct slots at level %d; "
                "deeper data not determined by the rewriting rules" % datum.level)
    return table[i - 1][0]


def filtration_level(c: BrauerClass):
    """Smallest level with a nonzero datum; INFINITE_LEVEL means the class is
    exactly zero.  One-sided: the class always lies in br at the returned
    level; past a level where distinct slots cancel each other the scan stops
    and returns that level plus one."""
    st = _atomize(c)
    if st.k2 or st.unit_obstruction is not None:
        return 0
    for datum, clean in st.level_table():
        if not datum.is_zero():
            return datum.level
        if not clean:
            return datum.level + 1  # in br there, deeper content undecidable
    return INFINITE_LEVEL


# ---------------------------------------------------------------------------
# reduction into the unit filtration (level >= 1)

def reduce_to_level_one(c: BrauerClass):
    """Split off (pi, u) and adjoin p-th roots of the first n-1 basis
    variables, after which the class lies in level >= 1 of the filtration.

    Returns (u, base_change, reduced).  Subtracting (pi, u) kills the unit
    class over the original field already; the base change then kills the k2
    part, and the residue p-rank drops to one.
    """
    m = c.model
    fld = m.residue
    d0 = rho0_extract(c)
    u = lift_unit(d0.unit_class, m)
    n = fld.num_vars
    powers = tuple(1 if j < n - 1 else 0 for j in range(n))
    base_change = Embedding.radical(fld, powers)
    target = CdvfModel(base_change.target, m.e, m.precision)
    moved = c.map_embedding(base_change, target)
    if not d0.unit_class.is_one():
        moved = moved + BrauerClass.of(
            target, (CdvfElement.pi(target),
                     CdvfElement(0, u.embed(base_change, target))))
    level = filtration_level(moved)
    if level == 0:
        raise AlgebraError("reduction failed to reach level 1")  # unreachable
    return u, base_change, moved


# ---------------------------------------------------------------------------
# the normal form

def normal_form(c: BrauerClass) -> NormalForm:
    """Sweep the filtration levels, accumulating multiplicative corrections
    (1 + b~ pi^i) into the basis-slot coefficients and (1 + a~ pi^i) into the
    pi coefficient.  Requires the class in level >= 1; each sweep kills its
    level exactly because correction and carrier share the same slot."""
    m = c.model
    fld = m.residue
    st = _atomize(c)
    if st.k2 or st.unit_obstruction is not None:
        raise NotInBr1("class has a nontrivial level-0 datum", st.datum0())
    basis = [fld.gen(j) for j in range(fld.num_vars)]
    for slot in st.carriers:
        if not _is_basis_slot(slot):
            raise UnresolvedSymbolRelation(
                "carrier slot %r is not a basis variable; its graded data "
                "cannot be folded into the normal form exactly" % (slot,))
    lambdas = [m.one() for _ in basis]
    pi_coeff = m.one()
    for i in range(1, m.M + 1):
        for j, t in enumerate(basis):
            P = st.carriers.get(t)
            if P is None:
                continue
            b = unit_layers(P).layer_coeffs[i - 1]
            if b:
                corr = one_unit(m, i, b)
                lambdas[j] = lambdas[j] * corr
                st.carriers[t] = P * corr  # kills layer i exactly
        z = unit_layers(st.upi).layer_coeffs[i - 1]
        if z:
            corr = one_unit(m, i, z)
            pi_coeff = pi_coeff * corr
            st.upi = st.upi * corr
    assert st.upi == 1, "pi-coefficient sweep left a tail"
    assert all(P == 1 for P in st.carriers.values()), "carrier sweep left a tail"
    return NormalForm(m, tuple(lambdas), pi_coeff,
                      tuple(lift_unit(t, m) for t in basis))


# ---------------------------------------------------------------------------
# splitting fields, index bounds, dimension report

def splitting_field(c: BrauerClass) -> SplittingField:
    """One field splits every period-p class: p^2-th roots of the first n-1
    basis lifts, a p-th root of the last one, and a p-th root of pi."""
    m = c.model
    p = m.p
    names = m.residue.var_names
    gens = []
    n = len(names)
    for j, nm in enumerate(names):
        gens.append((nm, p * p if j < n - 1 else p))
    gens.append(("pi", p))
    total = 1
    for _, k in gens:
        total *= k
    return SplittingField(tuple(gens), total)


def paired_basis_class(m: CdvfModel) -> BrauerClass:
    """(t1, t2) + (t3, t4) + ...: the canonical class with p-independent
    residues whose index is exactly p^(n/2)."""
    fld = m.residue
    if fld.num_vars % 2:
        raise ValueError("needs an even number of variables")
    pairs = [(fld.gen(2 * i), fld.gen(2 * i + 1))
             for i in range(fld.num_vars // 2)]
    return BrauerClass.from_residues(m, pairs)


def index_bounds(c: BrauerClass) -> IndexBounds:
    from .differentials import nonvanishing_degree_bound
    m = c.model
    n = m.residue.num_vars
    s = len(c.entries)
    uppers = [(s, "product of %d degree-p symbols" % s)]
    if n >= 1:
        uppers.append((2 * n, "p-rank bound: index divides p^(2n)"))
    else:
        uppers.append((1, "perfect residue field: index divides p"))
    try:
        level = filtration_level(c)
    except UnresolvedSymbolRelation:
        level = None
    if level is not None and level != 0 and n >= 1:
        uppers.append((n + 1, "class in level >= 1: index divides p^(n+1)"))
    upper, upper_note = min(uppers)
    certs = ["upper: " + upper_note]
    lower = 0
    shape = _paired_unit_shape(c)
    if shape is not None:
        try:
            mexp = nonvanishing_degree_bound([m.residue.one()] * (len(shape) // 2),
                                             shape)
        except AlgebraError:
            mexp = None
        if mexp is not None:
            lower = mexp
            certs.append("lower: %d symbol pairs with p-independent residues "
                         "stay nonsplit below degree p^%d (injectivity at "
                         "level 0)" % (mexp, mexp))
    if lower == 0:
        if level == 0:
            lower = 1
            certs.append("lower: nonzero level-0 datum, exact by the level-0 "
                         "isomorphism")
        else:
            certs.append("lower: no certificate (graded data above level 0 "
                         "are one-sided)")
    return IndexBounds(lower, max(lower, upper), tuple(certs))


def _paired_unit_shape(c: BrauerClass):
    """Residue slots when every entry is a unit-by-unit symbol; None else."""
    if not c.entries:
        return None
    slots = []
    for x, y in c.entries:
        if x.val % 2 or y.val % 2:
            return None
        slots.append(reduce_unit(x.unit))
        slots.append(reduce_unit(y.unit))
    return slots


@dataclass(frozen=True)
class BrDimReport:
    lower: int
    upper: int
    witness: IndexBounds | None


def brdim_report(m: CdvfModel) -> BrDimReport:
    """Period-p dimension interval [ceil(n/2), 2n] (n = 0: [0, 1]), with the
    even-rank witness delegated to index_bounds on the paired basis class."""
    n = m.residue.num_vars
    if n == 0:
        return BrDimReport(0, 1, None)
    witness = None
    if n % 2 == 0:
        witness = index_bounds(paired_basis_class(m))
    return BrDimReport((n + 1) // 2, 2 * n, witness)


def period_power_bound(d: int, n: int, ell: int) -> int:
    """If period ell forces index | ell^d, then period ell^n forces
    index | ell^(n*d)."""
    if d < 0 or n < 0:
        raise ValueError("exponents must be nonnegative")
    if ell < 2 or any(ell % k == 0 for k in range(2, int(ell ** 0.5) + 1)):
        raise ValueError("ell must be prime")
    return n * d


# ---------------------------------------------------------------------------
# the 2-adic specialization oracle

def hilbert_specialize(c: BrauerClass, point) -> int:
    """Product of 2-adic Hilbert symbols after sending each variable to an
    odd integer.  The truncated units determine odd parts mod 8, which pins
    the symbol; an even numerator or denominator value leaves the odd part
    underdetermined and raises BadSpecialization."""
    m = c.model
    if m.p != 2:
        raise UnsupportedPrime("specialization oracle is 2-adic")
    pt = _point_tuple(point, m.residue)
    sign = 1
    for x, y in c.entries:
        sign *= hilbert2(_specialize_element(x, pt), _specialize_element(y, pt))
    return sign


def _point_tuple(point, fld: FieldDescriptor):
    if isinstance(point, dict):
        pt = tuple(point[name] for name in fld.var_names)
    else:
        pt = tuple(point)
    if len(pt) != fld.num_vars:
        raise ValueError("point arity mismatch")
    if any(v % 2 == 0 for v in pt):
        raise BadSpecialization("points must have odd coordinates")
    return pt


def _specialize_element(x: CdvfElement, pt) -> int:
    nv, dv = x.unit.evaluate(pt)
    if dv % 2 == 0:
        raise BadSpecialization("denominator specializes to an even integer")
    if nv % 2 == 0:
        raise BadSpecialization("numerator specializes to an even integer; "
                                "odd part not determined at this precision")
    w = nv * pow(dv, -1, x.unit.model.modulus) % x.unit.model.modulus
    return (2 ** (x.val % 2)) * w


def sample_admissible_points(classes, count: int, rng, bound: int = 31):
    """Odd points in [1, bound]^n at which every symbol slot of every class
    specializes to a 2-adic unit."""
    model = classes[0].model
    fld = model.residue
    if fld.num_vars == 0:
        return [() for _ in range(count)]
    # dedupe only while the odd grid is big enough to supply distinct points
    dedupe = ((bound + 1) // 2) ** fld.num_vars >= 2 * count
    pts = []
    seen = set()
    tries = 0
    while len(pts) < count:
        tries += 1
        if tries > 200 * count + 200:
            raise BadSpecialization("could not find %d admissible points" % count)
        pt = tuple(rng.randrange(1, bound + 1, 2) for _ in range(fld.num_vars))
        if dedupe and pt in seen:
            continue
        try:
            for c in classes:
                for x, y in c.entries:
                    _specialize_element(x, pt)
                    _specialize_element(y, pt)
        except BadSpecialization:
            continue
        seen.add(pt)
        pts.append(pt)
    return pts
