import random

import pytest

from diffext import Derivation, Field
from diffext.errors import DivisionByZero, IncompatibleExtension
from diffext.extension import (
    DerivationCocycle,
    ExtElement,
    commutator_closed_form,
    ext_commutator,
    ext_mul,
    make_alpha,
    nonsplit_witness,
    perfectness_family,
    torus_alpha_closed_form,
    torus_commutator,
    torus_lift,
)
from diffext.field import random_ratfunc
from diffext.groups import ADJOINT, NATURAL, TRIVIAL, GroupElement, Representation, sample_sl2
from diffext.linalg import MatrixK, mat_derive, trace

K = Field.rational(2)
T1, T2 = K.gens()
D1, D2 = Derivation.partial(K, 1), Derivation.partial(K, 2)
ALPHA = make_alpha(D1, D2, NATURAL)


def images(rep, seed, count):
    return [rep(g) for g in sample_sl2(seed, count)]


def direct_alpha(d1, d2, g, h):
    """tr(c1(g) g c2(h) g^-1) straight from the matrices."""
    G, H = g.matrix, h.matrix
    Gi, Hi = g.inverse_matrix(), h.inverse_matrix()
    c1g = mat_derive(d1, G) * Gi
    c2h = mat_derive(d2, H) * Hi
    return trace(c1g * G * c2h * Gi)


# ---- derivation cocycle ---------------------------------------------------

@pytest.mark.parametrize("rep", [NATURAL, ADJOINT], ids=lambda r: r.name)
@pytest.mark.parametrize("d", [D1, D2, Derivation.of(K, [T2, 1])], ids=["d1", "d2", "mixed"])
def test_derivation_cocycle_identity(rep, d):
    c = DerivationCocycle(d, rep)
    assert c(GroupElement.identity(K, rep.dim)).is_zero()
    gs = images(rep, 1, 60)
    for g, h in zip(gs[::2], gs[1::2]):
        assert c(g * h) == c(g) + g.conj(c(h))
        assert c(g.inverse()) == -(g.inverse().conj(c(g)))


def test_derivation_cocycle_on_torus():
    # d1(diag(t1, 1/t1)) diag(1/t1, t1) = diag(1/t1, -1/t1)
    c = DerivationCocycle(D1, NATURAL)
    assert c(NATURAL.nu(K, T1)) == MatrixK.diag(K, [1 / T1, -1 / T1])
    assert c(NATURAL.nu(K, T2)).is_zero()


# ---- alpha ----------------------------------------------------------------

def test_alpha_examples():
    e = GroupElement.identity(K, 2)
    for g in images(NATURAL, 2, 5):
        assert ALPHA(g, e) == 0 and ALPHA(e, g) == 0
    nu1, nu2 = NATURAL.nu(K, T1), NATURAL.nu(K, T2)
    assert ALPHA(nu1, nu2) == direct_alpha(D1, D2, nu1, nu2) == 2 / (T1 * T2)
    a1, a2 = ADJOINT.nu(K, T1), ADJOINT.nu(K, T2)
    assert a1.matrix == MatrixK.diag(K, [T1 * T1, 1, 1 / (T1 * T1)])
    assert make_alpha(D1, D2, ADJOINT)(a1, a2) == direct_alpha(D1, D2, a1, a2) == 8 / (T1 * T2)


def test_alpha_symmetric_for_equal_derivations():
    alpha = make_alpha(D1, D1, NATURAL)
    rng = random.Random(5)
    for _ in range(10):
        s, t = random_ratfunc(K, rng, 3), random_ratfunc(K, rng, 3)
        ns, nt = NATURAL.nu(K, s), NATURAL.nu(K, t)
        assert alpha(ns, nt) == alpha(nt, ns)


@pytest.mark.parametrize("rep", [NATURAL, ADJOINT], ids=lambda r: r.name)
def test_alpha_double_form(rep):
    alpha = make_alpha(D1, D2, rep)
    gs = images(rep, 3, 40)
    for g, h in zip(gs[::2], gs[1::2]):
        v = alpha(g, h)
        assert v == alpha.twisted_form(g, h) == direct_alpha(D1, D2, g, h)


def test_torus_closed_form_examples():
    assert torus_alpha_closed_form(T1, T2, NATURAL, D1, D2) == 2 / (T1 * T2)
    assert torus_alpha_closed_form(T1, T2, ADJOINT, D1, D2) == 8 / (T1 * T2)
    assert torus_alpha_closed_form(T1, T1, NATURAL, D1, D2) == 0
    with pytest.raises(DivisionByZero):
        torus_alpha_closed_form(K.zero, T2, NATURAL, D1, D2)
    with pytest.raises(DivisionByZero):
        commutator_closed_form(T1, K.zero, NATURAL, D1, D2)


@pytest.mark.parametrize("rep", [NATURAL, ADJOINT], ids=lambda r: r.name)
def test_torus_closed_form_matches_generic(rep):
    alpha = make_alpha(D1, D2, rep)
    rng = random.Random(6)
    for _ in range(25):
        s, t = random_ratfunc(K, rng, 3), random_ratfunc(K, rng, 3)
        assert alpha(rep.nu(K, s), rep.nu(K, t)) == torus_alpha_closed_form(s, t, rep, D1, D2)
        assert torus_commutator(alpha, s, t).x == commutator_closed_form(s, t, rep, D1, D2)


# ---- the extension group --------------------------------------------------

def test_ext_mul_examples():
    a, b = T1 + 1, T2 / T1
    assert ext_mul(ExtElement.central(ALPHA, a), ExtElement.central(ALPHA, b)) == ExtElement.central(ALPHA, a + b)
    for g in images(NATURAL, 4, 5):
        p = ExtElement(g, T1 * T2, ALPHA)
        assert (p * p.inverse()).is_identity()
        assert (p.inverse() * p).is_identity()
    prod = torus_lift(ALPHA, T1) * torus_lift(ALPHA, T2)
    assert prod.g == NATURAL.nu(K, T1) * NATURAL.nu(K, T2)
    assert prod.x == 2 / (T1 * T2)


def test_commutator_by_hand():
    g, h = NATURAL.nu(K, T1), NATURAL.nu(K, T2)
    p, q = torus_lift(ALPHA, T1), torus_lift(ALPHA, T2)
    # expand p q p^-1 q^-1 with the group law, one factor at a time
    a = ALPHA
    gi, hi = g.inverse(), h.inverse()
    pi_x = -a(g, gi)
    qi_x = -a(h, hi)
    x1 = a(g, h)
    x2 = x1 + pi_x + a(g * h, gi)
    x3 = x2 + qi_x + a(g * h * gi, hi)
    assert (g * h * gi * hi).is_identity()
    comm = ext_commutator(p, q)
    assert comm.is_central_element() and comm.x == x3 == 2 / (T1 * T2)
    assert ext_commutator(p, p).is_identity()


def test_dependent_derivations_give_trivial_commutators():
    rng = random.Random(7)
    for f in (T2, random_ratfunc(K, rng, 2), K(3)):
        alpha = make_alpha(D1, D1.scale(f), NATURAL)
        for _ in range(5):
            s, t = random_ratfunc(K, rng, 3), random_ratfunc(K, rng, 3)
            assert torus_commutator(alpha, s, t).is_identity()


def test_incompatible_extension():
    other = make_alpha(D2, D1, NATURAL)
    p = torus_lift(ALPHA, T1)
    q = torus_lift(other, T1)
    with pytest.raises(IncompatibleExtension):
        p * q
    with pytest.raises(IncompatibleExtension):
        ext_commutator(p, q)


@pytest.mark.parametrize("rep", [NATURAL, ADJOINT], ids=lambda r: r.name)
def test_group_axioms(rep):
    alpha = make_alpha(D1, D2, rep)
    gs = images(rep, 8, 45)
    rng = random.Random(8)
    els = [ExtElement(g, random_ratfunc(K, rng, 2), alpha) for g in gs]
    e = ExtElement.identity(alpha)
    for p, q, r in zip(els[0::3], els[1::3], els[2::3]):
        assert (p * q) * r == p * (q * r)
    z = ExtElement.central(alpha, T1 - T2)
    for p in els:
        assert e * p == p == p * e
        assert (p * p.inverse()).is_identity()
        assert z * p == p * z


# ---- witnesses ------------------------------------------------------------

def test_nonsplit_witness():
    assert nonsplit_witness(NATURAL, D1, D2) == (T1, T2, 2 / (T1 * T2))
    assert nonsplit_witness(ADJOINT, D1, D2) == (T1, T2, 8 / (T1 * T2))
    assert nonsplit_witness(NATURAL, D1, D1) is None
    assert nonsplit_witness(NATURAL, D1, D1.scale(T2)) is None
    assert nonsplit_witness(TRIVIAL, D1, D2) is None
    zero3 = Representation("zero3", 3, (0, 0, 0), lambda g: GroupElement.identity(K, 3))
    assert nonsplit_witness(zero3, D1, D2) is None


def test_nonsplit_witness_scaled_derivation():
    # non-constant coefficient: 2 (t1 * 1 * 1 - 0) / (t1 t2)
    d = Derivation.of(K, [T1, 0])
    s, t, v = nonsplit_witness(NATURAL, d, D2)
    assert (s, t) == (T1, T2) and v == 2 / T2


def test_perfectness_family():
    c = perfectness_family(T1, T2, NATURAL, D1, D2)
    assert c.is_central_element() and c.x == 2 / (T1 * T2)
    assert perfectness_family(T1, T1, NATURAL, D1, D2).is_identity()
    c = perfectness_family(T1 * T1, T2, NATURAL, D1, D2)
    assert c.x == 2 * (2 * T1) / (T1 * T1 * T2) == 4 / (T1 * T2)
    with pytest.raises(DivisionByZero):
        perfectness_family(K.zero, T2, NATURAL, D1, D2)
