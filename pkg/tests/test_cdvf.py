import random
from fractions import Fraction

import pytest

from pbrauer.errors import NonUnit
from pbrauer.fields import FieldDescriptor
from pbrauer.cdvf import (CdvfElement, CdvfModel, TruncatedUnit,
                          filtration_cutoff, lift_unit, one_unit, reduce_unit,
                          unit_layers)
from pbrauer.selftest import random_unit

F0 = FieldDescriptor(2, ())
F1 = FieldDescriptor(2, ("t",))
M0 = CdvfModel(F0)
M1 = CdvfModel(F1)


def test_cutoff_constants():
    assert filtration_cutoff(M1) == (Fraction(2), 2, 3)
    assert M1.modulus == 8
    assert CdvfModel(F1, precision=5).modulus == 32


def test_precision_below_cutoff_rejected():
    with pytest.raises(ValueError):
        CdvfModel(F1, precision=2)


def test_only_unramified_model():
    with pytest.raises(ValueError):
        CdvfModel(F1, e=2)


def test_unit_normalization():
    t = (1,)
    # common monomial content cancels: (t^2 + 2t)/t = t + 2
    u = TruncatedUnit(M1, {(2,): 1, t: 2}, {t: 1})
    assert u == TruncatedUnit(M1, {t: 1, (0,): 2})
    # num == den collapses to 1
    assert TruncatedUnit(M1, {t: 3}, {t: 3}) == 1


def test_non_unit_rejected():
    even = TruncatedUnit(M1, {(0,): 2})  # the ring element 2: not a unit
    assert not even.is_unit
    with pytest.raises(NonUnit):
        even.inv()
    with pytest.raises(NonUnit):
        TruncatedUnit(M1, {(0,): 1}, {(0,): 2})  # even denominator
    with pytest.raises(NonUnit):
        CdvfElement(0, TruncatedUnit(M1, {(1,): 2}))  # 2t as a unit part


def test_arithmetic_mod_p_cubed():
    three = M0.unit_const(3)
    assert three * three == 9 % 8
    assert three * three.inv() == 1
    assert (three ** 2) == M0.unit_const(1)
    assert -M0.one() == M0.unit_const(7)


def test_worked_layer_examples():
    # 3 = 1 * (1 + 2*1) * (1 + 4*0)
    lay = unit_layers(M0.unit_const(3))
    assert lay.residue_part == 1
    assert [bool(c) for c in lay.layer_coeffs] == [True, False]
    assert lay.layer_coeffs[0] == 1
    # 7 = 1 * (1 + 2) * (1 + 4) mod 8
    lay = unit_layers(M0.unit_const(7))
    assert lay.layer_coeffs[0] == 1 and lay.layer_coeffs[1] == 1
    # t + 2 = t * (1 + 2/t) * (1 + 4*0)
    lay = unit_layers(TruncatedUnit(M1, {(1,): 1, (0,): 2}))
    t = F1.gen(0)
    assert lay.residue_part == t
    assert lay.layer_coeffs[0] == t.inv()
    assert not lay.layer_coeffs[1]


def test_layer_reconstruction_random():
    rng = random.Random(12)
    for _ in range(60):
        u = random_unit(M1, rng, monomial_residue=bool(rng.randrange(2)))
        assert unit_layers(u).reconstruct() == u


def test_one_unit_level_placement():
    t = F1.gen(0)
    u = one_unit(M1, 2, t)
    lay = unit_layers(u)
    assert lay.residue_part == 1
    assert not lay.layer_coeffs[0]
    assert lay.layer_coeffs[1] == t


def test_reduce_lift_roundtrip():
    t = F1.gen(0)
    f = (t + 1) / t
    assert reduce_unit(lift_unit(f, M1)) == f
    assert reduce_unit(M0.unit_const(3)) == 1


def test_cdvf_element_arithmetic():
    x = CdvfElement(1, M1.unit_const(3))
    y = CdvfElement(-1, M1.unit_const(5))
    assert (x * y).val == 0
    assert (x * y).unit == 15 % 8
    assert x * x.inv() == CdvfElement(0, M1.one())


def test_unit_equality_cross_multiplies():
    t = (1,)
    a = TruncatedUnit(M1, {t: 1, (0,): 1}, {t: 1})  # (t+1)/t
    b = TruncatedUnit(M1, {(2,): 1, t: 1}, {(2,): 1})  # (t^2+t)/t^2
    assert a == b
