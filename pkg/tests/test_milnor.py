import random

import pytest

from pbrauer.errors import ZeroEntry
from pbrauer.fields import Embedding, FieldDescriptor
from pbrauer.differentials import dlog, wedge
from pbrauer.milnor import SymbolSum, h2p, k2_is_zero, k2_restrict
from pbrauer.selftest import (random_dependent_pair, random_ratfunc,
                              random_symbol_sum)

F2 = FieldDescriptor(2, ("t1", "t2"))
F3 = FieldDescriptor(3, ("t1", "t2"))


def test_h2p_matches_wedge_of_dlogs():
    t1, t2 = F2.gens()
    s = SymbolSum.of((t1, t2))
    assert h2p(s) == wedge(dlog(t1), dlog(t2))


def test_basis_pairs_are_nonzero():
    for fld in (F2, F3):
        t1, t2 = fld.gens()
        assert not k2_is_zero(SymbolSum.of((t1, t2)))


def test_zero_entries_rejected():
    t1, _ = F2.gens()
    with pytest.raises(ZeroEntry):
        h2p(SymbolSum.of((t1, F2.zero())))


def test_symbol_sum_addition_concatenates():
    t1, t2 = F2.gens()
    s = SymbolSum.of((t1, t2)) + SymbolSum.of((t2, t1))
    assert len(s) == 2
    assert k2_is_zero(s)  # (a,b) + (b,a) = 0


def test_steinberg_relation():
    rng = random.Random(2)
    for fld in (F2, F3):
        hits = 0
        while hits < 25:
            a = random_ratfunc(fld, rng, nonzero=True)
            if a == 1:
                continue
            assert k2_is_zero(SymbolSum.of((a, fld.one() - a)))
            hits += 1


def test_bilinearity_through_h2p():
    rng = random.Random(4)
    for _ in range(25):
        a = random_ratfunc(F2, rng, nonzero=True)
        b = random_ratfunc(F2, rng, nonzero=True)
        c = random_ratfunc(F2, rng, nonzero=True)
        lhs = h2p(SymbolSum.of((a, b * c)))
        rhs = h2p(SymbolSum.of((a, b))) + h2p(SymbolSum.of((a, c)))
        assert lhs == rhs


def test_p_dependent_pairs_vanish():
    rng = random.Random(6)
    for fld in (F2, F3):
        for _ in range(25):
            a, b = random_dependent_pair(fld, rng)
            assert k2_is_zero(SymbolSum.of((a, b)))


def test_pth_powers_vanish():
    rng = random.Random(8)
    for fld in (F2, F3):
        for _ in range(10):
            a = random_ratfunc(fld, rng, nonzero=True)
            b = random_ratfunc(fld, rng, nonzero=True)
            assert k2_is_zero(SymbolSum.of((a ** fld.p, b)))


def test_restriction_along_partial_radical_kills_k2():
    # roots of all variables but the last leave one differential direction
    rng = random.Random(10)
    for fld in (F2, F3):
        e = Embedding.radical(fld, (1, 0))
        for _ in range(15):
            s = random_symbol_sum(fld, rng)
            assert k2_is_zero(k2_restrict(s, e))


def test_restriction_preserves_symbols_componentwise():
    t1, t2 = F2.gens()
    e = Embedding.radical(F2, (0, 1))
    s = k2_restrict(SymbolSum.of((t1, t2)), e)
    s1, s2 = e.target.gens()
    assert s.entries == ((s1, s2 ** 2),)
    assert k2_is_zero(s)  # square slot


def test_empty_sum_is_zero():
    assert k2_is_zero(SymbolSum(F2, ()))
