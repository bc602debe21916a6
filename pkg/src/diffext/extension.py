"""The central extension E' = G x K defined by the trace cup product of two
derivation cocycles.

Group elements are always taken in the image of the chosen representation,
i.e. G is realised inside GL_n(K).  For the adjoint representation that image
is PSL2; every cochain below factors through it.
"""

from __future__ import annotations

import itertools
import random
from typing import Optional

from .cohomology import Cochain, EndConj, ScalarTrivial, cup, trace_pairing
from .errors import ArityMismatch, DivisionByZero, IncompatibleExtension
from .field import Derivation, Field, RatFunc, derivations_independent, random_ratfunc
from .groups import GroupElement, Representation, weight_square_sum
from .linalg import mat_derive, trace


class DerivationCocycle:
    """c(g) = d(g) g^-1 with d applied entry-wise; a 1-cocycle with values in End(V)."""

    def __init__(self, d: Derivation, rep: Representation):
        self.d = d
        self.rep = rep
        self.field = d.field
        self.cochain = Cochain(1, EndConj(d.field, rep.dim), self._eval)

    def _eval(self, g: GroupElement):
        return mat_derive(self.d, g.matrix) * g.inverse_matrix()

    def __call__(self, g: GroupElement):
        return self.cochain(g)

    def __eq__(self, other):
        if not isinstance(other, DerivationCocycle):
            return NotImplemented
        return self.d == other.d and self.rep == other.rep

    def __hash__(self):
        return hash((self.d, self.rep))

    def __repr__(self):
        return f"DerivationCocycle({self.d}, {self.rep.name})"


class AlphaCocycle:
    """alpha(g, h) = tr(c1(g) g c2(h) g^-1), a 2-cocycle with values in K."""

    def __init__(self, c1: DerivationCocycle, c2: DerivationCocycle):
        if c1.field != c2.field or c1.rep != c2.rep:
            raise ArityMismatch("cocycles over different fields or representations")
        self.c1 = c1
        self.c2 = c2
        self.field = c1.field
        self.rep = c1.rep
        self.cochain = cup(c1.cochain, c2.cochain, trace_pairing, ScalarTrivial(c1.field))

    def __call__(self, g: GroupElement, h: GroupElement) -> RatFunc:
        return self.cochain(g, h)

    def twisted_form(self, g: GroupElement, h: GroupElement) -> RatFunc:
        """The same value written as -tr(c1(g^-1) c2(h))."""
        return -trace(self.c1(g.inverse()) * self.c2(h))

    def __eq__(self, other):
        if not isinstance(other, AlphaCocycle):
            return NotImplemented
        return self.c1 == other.c1 and self.c2 == other.c2

    def __hash__(self):
        return hash((self.c1, self.c2))

    def __repr__(self):
        return f"AlphaCocycle({self.c1!r}, {self.c2!r})"


def make_alpha(d1: Derivation, d2: Derivation, rep: Representation) -> AlphaCocycle:
    return AlphaCocycle(DerivationCocycle(d1, rep), DerivationCocycle(d2, rep))


class ExtElement:
    """(g, x) in E' with (g, x)(h, y) = (gh, x + y + alpha(g, h))."""

    __slots__ = ("g", "x", "alpha")

    def __init__(self, g: GroupElement, x: RatFunc, alpha: AlphaCocycle):
        self.g = g
        self.x = alpha.field(x)
        self.alpha = alpha

    @classmethod
    def identity(cls, alpha: AlphaCocycle) -> "ExtElement":
        return cls(GroupElement.identity(alpha.field, alpha.rep.dim), alpha.field.zero, alpha)

    @classmethod
    def central(cls, alpha: AlphaCocycle, x) -> "ExtElement":
        return cls(GroupElement.identity(alpha.field, alpha.rep.dim), x, alpha)

    def _check(self, other: "ExtElement"):
        if not isinstance(other, ExtElement):
            raise TypeError(f"expected ExtElement, got {type(other).__name__}")
        if other.alpha != self.alpha:
            raise IncompatibleExtension(f"{self.alpha!r} vs {other.alpha!r}")

    def __mul__(self, other: "ExtElement") -> "ExtElement":
        self._check(other)
        return ExtElement(self.g * other.g, self.x + other.x + self.alpha(self.g, other.g), self.alpha)

    def inverse(self) -> "ExtElement":
        gi = self.g.inverse()
        return ExtElement(gi, -self.x - self.alpha(self.g, gi), self.alpha)

    def is_identity(self) -> bool:
        return self.g.is_identity() and self.x.is_zero()

    def is_central_element(self) -> bool:
        return self.g.is_identity()

    def __eq__(self, other):
        if not isinstance(other, ExtElement):
            return NotImplemented
        return self.alpha == other.alpha and self.g == other.g and self.x == other.x

    def __hash__(self):
        return hash((self.g, self.x))

    def __repr__(self):
        return f"ExtElement({self.g}, {self.x})"


def ext_mul(p: ExtElement, q: ExtElement) -> ExtElement:
    return p * q


def ext_commutator(p: ExtElement, q: ExtElement) -> ExtElement:
    """p q p^-1 q^-1."""
    return p * q * p.inverse() * q.inverse()


def torus_alpha_closed_form(s: RatFunc, t: RatFunc, rep: Representation,
                            d1: Derivation, d2: Derivation) -> RatFunc:
    """alpha(nu(s), nu(t)) = (sum d_i^2) d1(s) d2(t) / (st)."""
    if s.is_zero() or t.is_zero():
        raise DivisionByZero("torus parameter must be nonzero")
    return weight_square_sum(rep) * d1(s) * d2(t) / (s * t)


def commutator_closed_form(s: RatFunc, t: RatFunc, rep: Representation,
                           d1: Derivation, d2: Derivation) -> RatFunc:
    """Central coordinate of [(nu(s), 0), (nu(t), 0)]."""
    if s.is_zero() or t.is_zero():
        raise DivisionByZero("torus parameter must be nonzero")
    return weight_square_sum(rep) * (d1(s) * d2(t) - d1(t) * d2(s)) / (s * t)


def torus_lift(alpha: AlphaCocycle, s: RatFunc) -> ExtElement:
    """(nu(s), 0)."""
    return ExtElement(alpha.rep.nu(alpha.field, s), alpha.field.zero, alpha)


def torus_commutator(alpha: AlphaCocycle, s: RatFunc, t: RatFunc) -> ExtElement:
    return ext_commutator(torus_lift(alpha, s), torus_lift(alpha, t))


def _witness_candidates(field: Field, seed: int, extra: int = 20):
    gens = field.gens()
    for i, j in itertools.combinations(range(len(gens)), 2):
        yield gens[i], gens[j]
    rng = random.Random(seed)
    for _ in range(extra):
        yield (
            random_ratfunc(field, rng, degree_cap=2, max_terms=3, polynomial=True),
            random_ratfunc(field, rng, degree_cap=2, max_terms=3, polynomial=True),
        )


def nonsplit_witness(rep: Representation, d1: Derivation, d2: Derivation,
                     seed: int = 0) -> Optional[tuple[RatFunc, RatFunc, RatFunc]]:
    """Find s, t with [(nu(s),0), (nu(t),0)] != 1 in E'.

    A nonzero commutator of lifts of commuting torus elements shows that the
    extension cannot split over the torus.  Candidates are the variable pairs
    (ti, tj), i < j, then 20 seeded random low-degree pairs; the first hit is
    returned as ``(s, t, central value)``.
    """
    if not derivations_independent(d1, d2) or weight_square_sum(rep) == 0:
        return None
    alpha = make_alpha(d1, d2, rep)
    for s, t in _witness_candidates(d1.field, seed):
        if s.is_zero() or t.is_zero():
            continue
        comm = torus_commutator(alpha, s, t)
        if not comm.x.is_zero():
            return s, t, comm.x
    return None


def perfectness_family(s: RatFunc, t: RatFunc, rep: Representation,
                       d1: Derivation, d2: Derivation) -> ExtElement:
    """The central element realised as the commutator of two torus lifts.

    Over a differentially closed field these values exhaust K; over
    Q(t1, ..., tm) only this two-parameter family is exhibited.
    """
    if s.is_zero() or t.is_zero():
        raise DivisionByZero("torus parameter must be nonzero")
    comm = torus_commutator(make_alpha(d1, d2, rep), s, t)
    assert comm.is_central_element()
    return comm
