import random

import pytest

from pbrauer.errors import DependentGenerators, DivisionByZero, HypothesisFailed
from pbrauer.fields import Embedding, FieldDescriptor
from pbrauer.differentials import (Omega1Form, Omega2Form, d, dlog,
                                   kernel_decompose, nonvanishing_degree_bound,
                                   paired_wedge_form, restrict_omega2, wedge)
from pbrauer.selftest import random_ratfunc

F = FieldDescriptor(2, ("t1", "t2", "t3"))
F4 = FieldDescriptor(2, ("t1", "t2", "t3", "t4"))


def test_d_on_monomials():
    t1, t2, t3 = F.gens()
    w = d(t1 * t2)
    assert w.coords == (t2, t1, F.zero())
    assert not d(t1 ** 2)  # Frobenius kernel


def test_leibniz_and_dlog_additivity():
    rng = random.Random(3)
    for _ in range(25):
        f = random_ratfunc(F, rng, nonzero=True)
        g = random_ratfunc(F, rng, nonzero=True)
        assert d(f * g) == f * d(g) + g * d(f)
        assert dlog(f * g) == dlog(f) + dlog(g)


def test_dlog_of_zero_raises():
    with pytest.raises(DivisionByZero):
        dlog(F.zero())


def test_wedge_alternates():
    t1, t2, _ = F.gens()
    assert not wedge(d(t1), d(t1))
    a = wedge(d(t1), d(t2))
    b = wedge(d(t2), d(t1))
    assert a + b == Omega2Form.zero(F)  # char 2: antisymmetry = symmetry
    assert a.coord(0, 1) == 1 and a.coord(1, 0) == 1


def test_restriction_kills_rooted_directions():
    t1, t2, _ = F.gens()
    a = wedge(dlog(t1), dlog(t2))
    assert not restrict_omega2(a, Embedding.radical(F, (1, 0, 0)))
    assert not restrict_omega2(a, Embedding.radical(F, (0, 1, 0)))
    assert restrict_omega2(a, Embedding.radical(F, (0, 0, 1)))
    assert restrict_omega2(a, Embedding.identity(F))


def test_kernel_decompose_roundtrip():
    rng = random.Random(9)
    t1 = F.gen(0)
    for _ in range(25):
        w = Omega1Form(F, tuple(random_ratfunc(F, rng) for _ in range(3)))
        a = wedge(d(t1), w)
        assert not restrict_omega2(a, Embedding.radical(F, (1, 0, 0)))
        forms = kernel_decompose(a, [t1])
        assert forms is not None
        back = wedge(d(t1), forms[0])
        assert back == a


def test_kernel_decompose_rejects_outside_span():
    t1, t2, t3 = F.gens()
    a = wedge(d(t2), d(t3))  # no dt1 component: not of the form dt1 ^ f
    assert kernel_decompose(a, [t1]) is None


def test_kernel_decompose_needs_independent_generators():
    t1 = F.gen(0)
    with pytest.raises(DependentGenerators):
        kernel_decompose(Omega2Form.zero(F), [t1, t1 * t1])


def test_paired_wedge_form_and_bound():
    t = F4.gens()
    lambdas = [F4.one(), F4.one()]
    gens = [t[0], t[1], t[2], t[3]]
    form = paired_wedge_form(lambdas, gens)
    assert form.coord(0, 1) == 1 and form.coord(2, 3) == 1
    assert nonvanishing_degree_bound(lambdas, gens) == 2


def test_bound_hypotheses_are_checked():
    t = F4.gens()
    with pytest.raises(HypothesisFailed):
        nonvanishing_degree_bound([F4.zero()], [t[0], t[1]])
    with pytest.raises(HypothesisFailed):
        nonvanishing_degree_bound([F4.one()], [t[0]])
    with pytest.raises(DependentGenerators):
        nonvanishing_degree_bound([F4.one(), F4.one()],
                                  [t[0], t[1], t[0] * t[1] ** 2, t[3]])
