import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from todagauss import (MumfordDivisor, Polynomial, StandardFormCurve, TodaState, add,
                       compose, cyclic_shift, divisor_D, divisor_D_tilde, eigenvector_map,
                       equal_mod_Cn, neg, reduce, scalar_mul, spectral_curve, standard_form,
                       sub, to_standard_form, toda_step, torsion_generator,
                       validate_membership, zero)

from conftest import P, random_state, toda_states, x

WORKED = TodaState.of([1, 2, 3], [4, 5, 6])
WORKED4 = TodaState.of([1, 2, 3, 4], [5, 6, 7, 8])


def generators(s):
    curve = spectral_curve(s)
    return [eigenvector_map(s), divisor_D(s), torsion_generator(curve),
            eigenvector_map(cyclic_shift(s, 1))]


def random_element(rng, gens):
    out = zero(gens[0].curve)
    for g in gens:
        out = add(out, scalar_mul(rng.randint(-4, 4), g))
    return out


@pytest.fixture(scope="module")
def curve3():
    return spectral_curve(WORKED)


def div(Pp, Qp, d, curve):
    return MumfordDivisor(Pp, Qp, d, curve)


# --- examples on the n = 3 curve --------------------------------------------

def test_membership_examples(curve3):
    assert validate_membership(zero(curve3))
    assert validate_membership(div(x, P(-6), 2, curve3))
    m = validate_membership(div(x, P(1), 2, curve3))
    assert not m and m.reason == "P-does-not-divide-norm"
    assert validate_membership(div(2 * x, P(-6), 2, curve3)).reason == "P-not-monic"
    assert validate_membership(div(x, x, 2, curve3)).reason == "deg-Q-not-below-deg-P"
    assert validate_membership(div(x**3, P(0), 2, curve3)).reason == "deg-P-exceeds-genus"
    assert validate_membership(div(x, P(-6), 3, curve3)).reason == "weight-not-even"
    assert validate_membership(div(x, P(-6), 8, curve3)).reason == "weight-outside-window"


def test_divisor_D(curve3):
    D = divisor_D(WORKED)
    assert (D.P, D.Q, D.d) == (x, P(-6), 2)
    curve_std, Dt = divisor_D_tilde(WORKED)
    assert (Dt.P, Dt.Q, Dt.d) == (x, P(114), 2)
    assert curve_std == standard_form(curve3)
    assert to_standard_form(D) == Dt


def test_compose_examples(curve3):
    psi, D = eigenvector_map(WORKED), divisor_D(WORKED)
    assert compose(psi, zero(curve3)) == (psi.P, psi.Q)
    assert compose(psi, D) == (P(1, -13, 38, 0), P(-3, 21, -6))
    Pt, Qt = compose(D, D)
    assert Pt == x**2
    e = reduce(Pt, Qt, curve3)
    assert validate_membership(e) and e.P.degree <= 2


def test_theorem1_single_step(curve3):
    psi, D = eigenvector_map(WORKED), divisor_D(WORKED)
    nxt = eigenvector_map(toda_step(WORKED))
    assert (nxt.P, nxt.Q, nxt.d) == (P(1, -12, 27), P(-6, 42), 2)
    assert add(psi, D) == nxt
    Pt, Qt = compose(psi, D)
    assert reduce(Pt, Qt, curve3).pq == nxt.pq
    assert reduce(Pt, Qt, curve3, d=psi.d + D.d) == nxt


def test_neg_examples(curve3):
    z = zero(curve3)
    assert neg(z) == z
    nD = neg(divisor_D(WORKED))
    assert (nD.P, nD.Q, nD.d) == (x, P(-120), 0)
    assert validate_membership(nD)
    assert add(divisor_D(WORKED), nD) == z


def test_scalar_examples(curve3):
    G = torsion_generator(curve3)
    psi = eigenvector_map(WORKED)
    assert scalar_mul(1, psi) == psi
    assert scalar_mul(2, psi) == add(psi, psi)
    assert scalar_mul(-1, psi) == neg(psi)
    assert [scalar_mul(k, G).d for k in range(5)] == [0, 2, -2, 0, 2]
    assert scalar_mul(3, G) == zero(curve3)


def test_equal_mod_Cn_examples():
    psi = eigenvector_map(WORKED)
    assert equal_mod_Cn(psi, psi) == (True, 0)
    assert equal_mod_Cn(eigenvector_map(cyclic_shift(WORKED, 1)), psi) == (True, 1)
    assert equal_mod_Cn(eigenvector_map(cyclic_shift(WORKED, 2)), psi) == (True, 2)
    assert equal_mod_Cn(divisor_D(WORKED), psi) == (False, -1)


def test_sub_shift_is_generator(curve3):
    psi = eigenvector_map(WORKED)
    assert sub(eigenvector_map(cyclic_shift(WORKED, 1)), psi) == torsion_generator(curve3)


def test_standard_form_transport(curve3):
    z = zero(curve3)
    assert to_standard_form(z).pq == z.pq
    std = to_standard_form(eigenvector_map(WORKED))
    assert validate_membership(std).reason == "ok-unweighted"
    F = std.curve.F
    assert F == curve3.h * curve3.h + 4 * curve3.f


def test_standard_form_has_no_group_law(curve3):
    a = to_standard_form(divisor_D(WORKED))
    with pytest.raises(NotImplementedError):
        add(a, a)


def test_curve_mismatch_rejected():
    with pytest.raises(ValueError):
        add(divisor_D(WORKED), divisor_D(WORKED4))


# --- group axioms on both instance curves -----------------------------------

@pytest.mark.parametrize("s", [WORKED, WORKED4], ids=["n3", "n4"])
def test_group_axioms(s):
    rng = random.Random(7)
    gens = generators(s)
    curve = gens[0].curve
    z = zero(curve)
    for _ in range(25):
        a, b, c = (random_element(rng, gens) for _ in range(3))
        for e in (a, b, c):
            assert validate_membership(e)
        assert add(a, b) == add(b, a)
        assert add(add(a, b), c) == add(a, add(b, c))
        assert add(a, z) == a
        assert add(a, neg(a)) == z
        assert neg(neg(a)) == a
        assert validate_membership(add(a, b)) and validate_membership(neg(a))


def test_transport_commutes_with_negation_even_genus():
    rng = random.Random(11)
    gens = generators(WORKED)
    for _ in range(10):
        a = random_element(rng, gens)
        std = to_standard_form(a)
        assert to_standard_form(neg(a)).pq == neg(std).pq
        assert neg(std).Q == (-std.Q) % a.P


def test_transport_commutes_with_negation_odd_genus():
    # for odd genus the weight window is not symmetric under negation; when
    # the mirrored weight leaves it, neg picks another representative of the
    # same class and only the unnormalised inverse pair transports
    rng = random.Random(11)
    gens = generators(WORKED4)
    stayed = 0
    candidates = gens[1:3] + [random_element(rng, gens) for _ in range(20)]
    for a in candidates:
        std = to_standard_form(a)
        b = neg(a)
        if b.d // 2 == a.P.degree - a.d // 2:
            stayed += 1
            assert to_standard_form(b).pq == neg(std).pq
        else:
            assert b.pq != neg(std).pq
        assert validate_membership(neg(std))
    assert stayed > 0


@given(toda_states())
@settings(max_examples=25)
def test_torsion_order(s):
    curve = spectral_curve(s)
    G = torsion_generator(curve)
    assert scalar_mul(s.n, G) == zero(curve)
    assert all(scalar_mul(k, G) != zero(curve) for k in range(1, s.n))


@given(st.integers(0, 10 ** 6), st.sampled_from([3, 4, 5]))
@settings(max_examples=15)
def test_theorem1_iterated(seed, n):
    s = random_state(random.Random(seed), n, horizon=3)
    psi, D = eigenvector_map(s), divisor_D(s)
    t = s
    for k in range(1, 4):
        t = toda_step(t)
        assert eigenvector_map(t) == add(psi, scalar_mul(k, D))


@given(toda_states())
@settings(max_examples=25)
def test_lemma11_group_form(s):
    curve = spectral_curve(s)
    lhs = add(eigenvector_map(cyclic_shift(s, -1)), torsion_generator(curve))
    assert lhs == eigenvector_map(s)


@given(toda_states())
@settings(max_examples=25)
def test_psi_transport_discriminant(s):
    psi = eigenvector_map(s)
    curve = psi.curve
    lhs = (psi.Q * 2 + curve.h) ** 2 - (curve.h * curve.h + 4 * curve.f)
    assert (lhs % psi.P).is_zero()
