"""Seeded verification suites run by ``diffext verify``.

Every case draws from its own RNG derived from (seed, suite, case name), so the
inputs of a case never depend on which other cases ran before it.  Sample
counts scale with ``samples``; the default of 50 reproduces the counts of the
acceptance runs (200 field cases, 100 cocycle pairs, ...).
"""

from __future__ import annotations

import hashlib
import random
from dataclasses import dataclass
from typing import Callable, Iterable, Optional

from . import char2
from .cohomology import (
    Cochain,
    EndConj,
    ScalarTrivial,
    constant_cochain,
    cup,
    differential,
    is_cocycle,
    is_homomorphism_on,
    trace_pairing,
    zero_cochain,
)
from .extension import (
    AlphaCocycle,
    DerivationCocycle,
    ExtElement,
    commutator_closed_form,
    make_alpha,
    nonsplit_witness,
    perfectness_family,
    torus_alpha_closed_form,
    torus_commutator,
)
from .field import Derivation, Field, derivations_independent, random_ratfunc
from .groups import ADJOINT, NATURAL, GroupElement, Representation, random_sl2, torus
from .linalg import FlagSpec, MatrixK, det, preserves_flag, trace
from .linearization import (
    LinElement,
    UVector,
    is_p_t,
    key_identity_check,
    l_action,
    l_dual_action,
    make_p_g,
    make_p_t,
    membership_check,
    pairing,
    section,
)

SUITES = ("field", "cohomology", "cocycle1", "alpha", "extension", "commutator",
          "linearization", "char2")

FIELD = Field.rational(2)


@dataclass(frozen=True)
class Case:
    name: str
    passed: bool
    witness: Optional[str] = None


@dataclass(frozen=True)
class Settings:
    samples: int
    seed: int
    degree_cap: int
    rep: Representation
    d1: Derivation
    d2: Derivation


def case_seed(seed: int, *parts: str) -> int:
    digest = hashlib.sha256(":".join((str(seed),) + parts).encode()).digest()
    return int.from_bytes(digest[:8], "big")


def scaled(s: Settings, base: int) -> int:
    """Sample count for a case whose acceptance run uses ``base`` samples."""
    return max(1, base * s.samples // 50)


def _short(obj, limit: int = 400) -> str:
    text = str(obj)
    return text if len(text) <= limit else text[:limit] + "..."


class _Runner:
    def __init__(self, suite: str, s: Settings):
        self.suite = suite
        self.s = s
        self.cases: list[Case] = []

    def rng(self, name: str) -> random.Random:
        return random.Random(case_seed(self.s.seed, self.suite, name))

    def check(self, name: str, fn: Callable[[random.Random], Optional[object]]):
        """Run ``fn``; it returns None on success or a witness on failure."""
        try:
            witness = fn(self.rng(name))
        except Exception as exc:  # a crash is a failed case, not a crashed run
            self.cases.append(Case(name, False, f"{type(exc).__name__}: {_short(exc)}"))
            return
        if witness is None:
            self.cases.append(Case(name, True))
        else:
            self.cases.append(Case(name, False, _short(witness)))

    # sampling helpers
    def rf(self, rng, degree_cap=None):
        return random_ratfunc(FIELD, rng, degree_cap=degree_cap or self.s.degree_cap)

    def g(self, rng, rep: Optional[Representation] = None) -> GroupElement:
        rep = rep or self.s.rep
        return rep(random_sl2(FIELD, rng, self.s.degree_cap))


def _first(items: Iterable, pred) -> Optional[object]:
    for item in items:
        if not pred(item):
            return item
    return None


def _random_derivation(rng) -> Derivation:
    return Derivation(FIELD, tuple(random_ratfunc(FIELD, rng, degree_cap=1, max_terms=2) for _ in range(2)))


# -- suites ------------------------------------------------------------------

def suite_field(r: _Runner):
    s = r.s
    n = scaled(s, 200)
    cap = max(s.degree_cap, 1)
    t1, t2 = FIELD.gens()

    def leibniz(rng):
        for _ in range(n):
            d = _random_derivation(rng)
            f, g = r.rf(rng, degree_cap=cap), r.rf(rng, degree_cap=cap)
            if d(f * g) != d(f) * g + f * d(g):
                return (d, f, g)

    def partials(rng):
        p = [Derivation.partial(FIELD, i) for i in (1, 2)]
        for _ in range(n):
            f = r.rf(rng, degree_cap=cap)
            for a in p:
                for b in p:
                    if a(b(f)) != b(a(f)):
                        return f

    def canonical(rng):
        for _ in range(n):
            f, g = r.rf(rng, degree_cap=cap), r.rf(rng, degree_cap=cap)
            h = (f * g) / g
            if h != f or str(h) != str(f) or hash(h) != hash(f) or h.terms() != f.terms():
                return (f, g)
            k = (f + g) - g
            if str(k) != str(f):
                return (f, g)

    def axioms(rng):
        for _ in range(n):
            a, b, c = (r.rf(rng, degree_cap=cap) for _ in range(3))
            if (a + b) + c != a + (b + c) or (a * b) * c != a * (b * c):
                return (a, b, c)
            if a + b != b + a or a * b != b * a or a * (b + c) != a * b + a * c:
                return (a, b, c)

    def spot_values(_):
        d1, d2 = Derivation.partial(FIELD, 1), Derivation.partial(FIELD, 2)
        checks = [
            (t1 * t1 - t2 * t2) / (t1 - t2) == t1 + t2,
            (t1 / t2) * (t2 / t1) == 1,
            (t1 + (-t1)).is_zero(),
            d1(t1 * t1 * t2) == 2 * t1 * t2,
            d2(t1).is_zero(),
            d1(1 / t1) == -1 / (t1 * t1),
            derivations_independent(d1, d2),
            not derivations_independent(d1, d1.scale(t2)),
            derivations_independent(d1 + d2, d1 - d2),
        ]
        return _first(range(len(checks)), lambda k: checks[k])

    r.check("leibniz rule", leibniz)
    r.check("formal partials commute", partials)
    r.check("canonical form", canonical)
    r.check("field axioms", axioms)
    r.check("spot values", spot_values)


def suite_cohomology(r: _Runner):
    s = r.s
    n = scaled(s, 50)
    scalar = ScalarTrivial(FIELD)
    end = EndConj(FIELD, 2)

    def poly_in_entries(rng, module):
        if module is scalar:
            cs = [r.rf(rng, degree_cap=1) for _ in range(3)]
            return Cochain(1, scalar, lambda g: cs[0] * g.matrix[0, 0] * g.matrix[1, 0]
                           + cs[1] * g.matrix[0, 1] + cs[2])
        M = MatrixK(FIELD, [[r.rf(rng, degree_cap=1) for _ in range(2)] for _ in range(2)])
        N = MatrixK(FIELD, [[r.rf(rng, degree_cap=1) for _ in range(2)] for _ in range(2)])
        return Cochain(1, end, lambda g: g.matrix * M * g.matrix + N)

    def d_squared(arity, module):
        def run(rng):
            for _ in range(n):
                if arity == 0:
                    v = r.rf(rng) if module is scalar else MatrixK(
                        FIELD, [[r.rf(rng, degree_cap=1) for _ in range(2)] for _ in range(2)])
                    f = constant_cochain(module, v)
                else:
                    f = poly_in_entries(rng, module)
                dd = differential(differential(f))
                args = [r.g(rng, NATURAL) for _ in range(arity + 2)]
                if not module.is_zero(dd(*args)):
                    return args
        return run

    def z1(rng):
        # log-derivative is a homomorphism on the torus and not on SL2
        d = r.s.d1
        logd = Cochain(1, scalar, lambda g: d(g.matrix[0, 0]) / g.matrix[0, 0])
        tor = [NATURAL(torus(FIELD, r.rf(rng))) for _ in range(2 * n)]
        pairs = list(zip(tor[::2], tor[1::2]))
        gen = [r.g(rng, NATURAL) for _ in range(2 * n)]
        gen_pairs = [(a, b) for a, b in zip(gen[::2], gen[1::2])
                     if not a.matrix[0, 0].is_zero() and not (a * b).matrix[0, 0].is_zero()
                     and not b.matrix[0, 0].is_zero()]
        entry = Cochain(1, scalar, lambda g: g.matrix[0, 1])
        for f, ps in ((logd, pairs), (logd, gen_pairs), (entry, gen_pairs)):
            if is_cocycle(f, ps)[0] != is_homomorphism_on(f, ps):
                return f
        if not is_cocycle(logd, pairs)[0]:
            return "log-derivative not a cocycle on the torus"

    def zero_is_cocycle(rng):
        f = zero_cochain(1, end)
        ok, w = is_cocycle(f, [(r.g(rng, NATURAL), r.g(rng, NATURAL)) for _ in range(5)])
        return None if ok else w

    def cup_is_cocycle(rng):
        c1 = DerivationCocycle(r.s.d1, NATURAL)
        c2 = DerivationCocycle(r.s.d2, NATURAL)
        a = cup(c1.cochain, c2.cochain, trace_pairing, scalar)
        triples = [tuple(r.g(rng, NATURAL) for _ in range(3)) for _ in range(n)]
        ok, w = is_cocycle(a, triples)
        return None if ok else w

    def equivariance(rng):
        for _ in range(n):
            g = r.g(rng, NATURAL)
            A, B = (MatrixK(FIELD, [[r.rf(rng, degree_cap=2) for _ in range(2)] for _ in range(2)])
                    for _ in range(2))
            if trace(g.conj(A) * g.conj(B)) != trace(A * B):
                return (g, A, B)

    r.check("d(d f) = 0, n=0, trivial action", d_squared(0, scalar))
    r.check("d(d f) = 0, n=0, conjugation action", d_squared(0, end))
    r.check("d(d f) = 0, n=1, trivial action", d_squared(1, scalar))
    r.check("d(d f) = 0, n=1, conjugation action", d_squared(1, end))
    r.check("Z1 (trivial action) = homomorphisms on sampled pairs", z1)
    r.check("zero cochain is a cocycle", zero_is_cocycle)
    r.check("cup of derivation 1-cocycles is a 2-cocycle", cup_is_cocycle)
    r.check("trace form is conjugation invariant", equivariance)


def suite_cocycle1(r: _Runner):
    s = r.s
    n = scaled(s, 100)
    for rep in (NATURAL, ADJOINT):
        for label, d in (("d1", s.d1), ("d2", s.d2)):
            c = DerivationCocycle(d, rep)

            def identity(rng, c=c, rep=rep):
                for _ in range(n):
                    g, h = r.g(rng, rep), r.g(rng, rep)
                    if c(g * h) != c(g) + g.conj(c(h)):
                        return (g, h)

            def unit(_, c=c, rep=rep):
                e = GroupElement.identity(FIELD, rep.dim)
                return None if c(e).is_zero() else c(e)

            def inv(rng, c=c, rep=rep):
                for _ in range(scaled(s, 50)):
                    g = r.g(rng, rep)
                    gi = g.inverse()
                    if c(gi) != -(gi.conj(c(g))):
                        return g

            r.check(f"{rep.name}/{label}: c(gh) = c(g) + g c(h) g^-1", identity)
            r.check(f"{rep.name}/{label}: c(e) = 0", unit)
            r.check(f"{rep.name}/{label}: c(g^-1) = -g^-1 c(g) g", inv)


def suite_alpha(r: _Runner):
    s = r.s
    rep = s.rep
    alpha = make_alpha(s.d1, s.d2, rep)
    t1, t2 = FIELD.gens()
    p1, p2 = Derivation.partial(FIELD, 1), Derivation.partial(FIELD, 2)

    def double_form(rng):
        for _ in range(scaled(s, 100)):
            g, h = r.g(rng), r.g(rng)
            if alpha(g, h) != alpha.twisted_form(g, h):
                return (g, h)

    def normalized(rng):
        e = GroupElement.identity(FIELD, rep.dim)
        for _ in range(10):
            g = r.g(rng)
            if not alpha(g, e).is_zero() or not alpha(e, g).is_zero():
                return g

    def closed_form(rng):
        for _ in range(scaled(s, 50)):
            a, b = r.rf(rng), r.rf(rng)
            if alpha(rep.nu(FIELD, a), rep.nu(FIELD, b)) != torus_alpha_closed_form(a, b, rep, s.d1, s.d2):
                return (a, b)

    def spot(rep_, expected):
        def run(_):
            got = make_alpha(p1, p2, rep_)(rep_.nu(FIELD, t1), rep_.nu(FIELD, t2))
            return None if got == expected else got
        return run

    def two_cocycle(rng):
        triples = [tuple(r.g(rng) for _ in range(3)) for _ in range(scaled(s, 20))]
        ok, w = is_cocycle(alpha.cochain, triples)
        return None if ok else w

    r.check("tr(c1(g) g c2(h) g^-1) = -tr(c1(g^-1) c2(h))", double_form)
    r.check("alpha(g, e) = alpha(e, g) = 0", normalized)
    r.check("alpha(nu(s), nu(t)) = (sum d_i^2) d1(s) d2(t)/(st)", closed_form)
    r.check("natural: alpha(nu(t1), nu(t2)) = 2/(t1 t2)", spot(NATURAL, 2 / (t1 * t2)))
    r.check("adjoint: alpha(nu(t1), nu(t2)) = 8/(t1 t2)", spot(ADJOINT, 8 / (t1 * t2)))
    r.check("alpha is a 2-cocycle on sampled triples", two_cocycle)


def suite_extension(r: _Runner):
    s = r.s
    alpha = make_alpha(s.d1, s.d2, s.rep)
    n = scaled(s, 50)

    def el(rng) -> ExtElement:
        return ExtElement(r.g(rng), r.rf(rng), alpha)

    def assoc(rng):
        for _ in range(n):
            p, q, w = el(rng), el(rng), el(rng)
            if (p * q) * w != p * (q * w):
                return (p, q, w)

    def identity(rng):
        e = ExtElement.identity(alpha)
        for _ in range(10):
            p = el(rng)
            if e * p != p or p * e != p:
                return p

    def inverse(rng):
        e = ExtElement.identity(alpha)
        for _ in range(n):
            p = el(rng)
            if p * p.inverse() != e or p.inverse() * p != e:
                return p

    def central(rng):
        for _ in range(n):
            z = ExtElement.central(alpha, r.rf(rng))
            p = el(rng)
            if z * p != p * z:
                return (z, p)

    def central_sum(rng):
        a, b = r.rf(rng), r.rf(rng)
        got = ExtElement.central(alpha, a) * ExtElement.central(alpha, b)
        return None if got == ExtElement.central(alpha, a + b) else got

    r.check("associativity", assoc)
    r.check("identity law", identity)
    r.check("inverse law", inverse)
    r.check("(e, x) is central", central)
    r.check("(e, a)(e, b) = (e, a + b)", central_sum)


def suite_commutator(r: _Runner):
    s = r.s
    rep = s.rep
    alpha = make_alpha(s.d1, s.d2, rep)
    n = scaled(s, 50)
    independent = derivations_independent(s.d1, s.d2)

    def closed(rng):
        for _ in range(n):
            a, b = r.rf(rng), r.rf(rng)
            comm = torus_commutator(alpha, a, b)
            if not comm.g.is_identity() or comm.x != commutator_closed_form(a, b, rep, s.d1, s.d2):
                return (a, b, comm)

    def self_comm(rng):
        for _ in range(10):
            p = ExtElement(r.g(rng), r.rf(rng), alpha)
            if not (p * p * p.inverse() * p.inverse()).is_identity():
                return p

    def degenerate_multiple(rng):
        for _ in range(n):
            f = r.rf(rng)
            a = make_alpha(s.d1, s.d1.scale(f), rep)
            x, y = r.rf(rng), r.rf(rng)
            comm = torus_commutator(a, x, y)
            if not comm.is_identity():
                return (f, x, y, comm)

    def perfect(rng):
        for _ in range(n):
            a, b = r.rf(rng), r.rf(rng)
            z = perfectness_family(a, b, rep, s.d1, s.d2)
            if z != ExtElement.central(alpha, commutator_closed_form(a, b, rep, s.d1, s.d2)):
                return (a, b, z)

    r.check("[(nu(s),0), (nu(t),0)] = (e, (sum d_i^2)(d1(s)d2(t) - d1(t)d2(s))/(st))", closed)
    r.check("self-commutators are trivial", self_comm)
    r.check("d2 = f d1: torus commutators vanish", degenerate_multiple)
    r.check("perfectness family: closed-form central values are commutators", perfect)

    w = nonsplit_witness(rep, s.d1, s.d2, seed=case_seed(s.seed, "commutator", "witness"))
    if independent:
        def found(_):
            if w is None:
                return "no witness among candidates"
            a, b, v = w
            if v.is_zero() or v != commutator_closed_form(a, b, rep, s.d1, s.d2):
                return w
        label = "nonsplit_witness: nonzero commutator of torus lifts"
        if w is not None:
            label += f" [(nu({w[0]}),0), (nu({w[1]}),0)] = (e, {w[2]})"
        r.check(label, found)
    else:
        def vanish(rng):
            for _ in range(n):
                a, b = r.rf(rng), r.rf(rng)
                if not torus_commutator(alpha, a, b).is_identity():
                    return (a, b)
        r.check("degenerate derivations: commutators vanish", vanish)
        r.check("nonsplit_witness: absent", lambda _: None if w is None else w)


def suite_linearization(r: _Runner):
    s = r.s
    rep = s.rep
    c1 = DerivationCocycle(s.d1, rep)
    c2 = DerivationCocycle(s.d2, rep)
    swapped = AlphaCocycle(c2, c1)
    n = scaled(s, 50)
    dim = rep.dim
    flag = FlagSpec.for_dim(dim)

    def rand_u(rng) -> UVector:
        A = MatrixK(FIELD, [[r.rf(rng, degree_cap=2) for _ in range(dim)] for _ in range(dim)])
        return UVector(A, r.rf(rng, degree_cap=2))

    def duality(rng):
        for _ in range(n):
            g, u, v = r.g(rng), rand_u(rng), rand_u(rng)
            if pairing(l_action(c1, g, u), l_dual_action(c1, g, v)) != pairing(u, v):
                return (g, u, v)

    def l_hom(rng):
        for _ in range(scaled(s, 20)):
            g, h, u = r.g(rng), r.g(rng), rand_u(rng)
            if l_action(c1, g * h, u) != l_action(c1, g, l_action(c1, h, u)):
                return (g, h)

    def membership(rng):
        for _ in range(n):
            g = r.g(rng)
            el = section(c1, c2, g)
            if not preserves_flag(el.p, flag) or not membership_check(el, c1, c2):
                return g

    def membership_kernel(rng):
        for _ in range(scaled(s, 10)):
            g, t = r.g(rng), r.rf(rng)
            el = LinElement(g, make_p_g(c1, c2, g) * make_p_t(FIELD, dim, t))
            if not membership_check(el, c1, c2):
                return (g, t)

    def kernel(rng):
        e = GroupElement.identity(FIELD, dim)
        for _ in range(scaled(s, 10)):
            t = r.rf(rng)
            p = make_p_t(FIELD, dim, t)
            if not membership_check(LinElement(e, p), c1, c2):
                return ("p_t rejected", t)
            # perturb one entry inside P: must leave the kernel
            rows = [list(row) for row in p.rows]
            i = rng.randrange(0, dim * dim + 1)
            j = rng.randrange(max(1, i), dim * dim + 2)
            if (i, j) == (0, dim * dim + 1):
                j = i = 1
            rows[i][j] = rows[i][j] + r.rf(rng)
            q = MatrixK(FIELD, rows)
            if preserves_flag(q, flag) and membership_check(LinElement(e, q), c1, c2) and not is_p_t(q):
                return ("non p_t accepted", q)

    def key(rng):
        for _ in range(n):
            g, h = r.g(rng), r.g(rng)
            k = key_identity_check(c1, c2, g, h)
            if not (k.holds and k.cohomologous and k.t == -swapped(h, g)):
                return (g, h, k)

    def ps_pt(rng):
        for _ in range(n):
            a, b = r.rf(rng), r.rf(rng)
            if make_p_t(FIELD, dim, a) * make_p_t(FIELD, dim, b) != make_p_t(FIELD, dim, a + b):
                return (a, b)

    def pt_central(rng):
        for _ in range(scaled(s, 20)):
            g, t = r.g(rng), r.rf(rng)
            pg, pt = make_p_g(c1, c2, g), make_p_t(FIELD, dim, t)
            if pg * pt != pt * pg:
                return (g, t)

    def embedding(rng):
        for _ in range(scaled(s, 10)):
            g = r.g(rng)
            m = section(c1, c2, g).embedded()
            if m.n != dim + dim * dim + 2 or det(m).is_zero():
                return g

    r.check("pairing is invariant under (l_c, l'_c)", duality)
    r.check("l_c is a homomorphism", l_hom)
    r.check("(g, p_g) satisfies both membership conditions", membership)
    r.check("(g, p_g p_t) satisfies both membership conditions", membership_kernel)
    r.check("kernel: (e, p) is a member iff p = p_t", kernel)
    r.check("p_h p_g = p_hg p_t with t = alpha(h,g) + d(tr c1 c2)(h,g) = -alpha(c2,c1)(h,g)", key)
    r.check("p_s p_t = p_(s+t)", ps_pt)
    r.check("p_t commutes with p_g", pt_central)
    r.check("block_diag(g, p_g) is invertible of size n + n^2 + 2", embedding)


def suite_char2(r: _Runner):
    s = r.s
    F2 = char2.F2T
    tt = F2.gens()[0]

    def hom(rng):
        ok, w = char2.rho_homomorphism_check(rng.getrandbits(64), scaled(s, 100), s.degree_cap)
        return None if ok else w

    def commute(rng):
        for _ in range(scaled(s, 20)):
            u = char2.random_unit(rng, s.degree_cap)
            if not char2.central_unipotent_check(u, rng.getrandbits(64), scaled(s, 20), s.degree_cap):
                return u

    def square_class(rng):
        for _ in range(scaled(s, 20)):
            u, w = char2.random_unit(rng, s.degree_cap), char2.random_unit(rng, s.degree_cap)
            if char2.unipotent_part(u * w * w) != char2.unipotent_part(u):
                return (u, w)

    def order_two(rng):
        for _ in range(scaled(s, 20)):
            v = char2.unipotent_part(char2.random_unit(rng, s.degree_cap))
            if not (v * v).is_identity():
                return v

    def spot(_):
        one = MatrixK.identity(F2, 2)
        checks = [
            char2.rho(one).is_identity(),
            char2.unipotent_part(tt * tt).is_identity(),
            not char2.unipotent_part(tt).is_identity(),
        ]
        return _first(range(len(checks)), lambda k: checks[k])

    def mutation(rng):
        def mutated(g):
            m = char2.rho(g)
            rows = [list(row) for row in m.rows]
            a, b, c, d = g.matrix.flatten()
            rows[0][3] = char2.D_T(a) * d  # drop the d(b) c term
            return MatrixK(F2, rows)

        ok, _ = char2.rho_homomorphism_check(rng.getrandbits(64), scaled(s, 100), s.degree_cap, rep=mutated)
        return "mutation not detected" if ok else None

    r.check("rho(gh) = rho(g) rho(h)", hom)
    r.check("unipotent parts v(u) centralise the image", commute)
    r.check("v(u w^2) = v(u)", square_class)
    r.check("v(u)^2 = I", order_two)
    r.check("spot values", spot)
    r.check("mutated rho is rejected", mutation)


SUITE_FUNCS = {
    "field": suite_field,
    "cohomology": suite_cohomology,
    "cocycle1": suite_cocycle1,
    "alpha": suite_alpha,
    "extension": suite_extension,
    "commutator": suite_commutator,
    "linearization": suite_linearization,
    "char2": suite_char2,
}


def run_suite(name: str, settings: Settings) -> list[Case]:
    runner = _Runner(name, settings)
    SUITE_FUNCS[name](runner)
    return sorted(runner.cases, key=lambda c: c.name)
