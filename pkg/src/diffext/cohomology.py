"""Inhomogeneous group cochains, the bar differential and the cup product.

G is infinite, so cochains are black-box evaluators and cocycle membership is
checked on sampled tuples only.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from functools import reduce
from typing import Callable, Sequence

from .errors import ModuleMismatch
from .field import Field, RatFunc
from .groups import GroupElement
from .linalg import MatrixK, trace


@dataclass(frozen=True)
class ScalarTrivial:
    """K with trivial G-action."""

    field: Field

    def act(self, g: GroupElement, v: RatFunc) -> RatFunc:
        return v

    def zero(self) -> RatFunc:
        return self.field.zero

    def check(self, v):
        if not isinstance(v, RatFunc) or v.field != self.field:
            raise ModuleMismatch(f"expected an element of {self.field}, got {v!r}")
        return v

    def is_zero(self, v) -> bool:
        return v.is_zero()


@dataclass(frozen=True)
class EndConj:
    """n x n matrices with G acting by conjugation."""

    field: Field
    n: int

    def act(self, g: GroupElement, v: MatrixK) -> MatrixK:
        if g.n != self.n:
            raise ModuleMismatch(f"{g.n}x{g.n} group element acting on End of dimension {self.n}")
        return g.conj(v)

    def zero(self) -> MatrixK:
        return MatrixK.zeros(self.field, self.n)

    def check(self, v):
        if not isinstance(v, MatrixK) or v.n != self.n or v.field != self.field:
            raise ModuleMismatch(f"expected a {self.n}x{self.n} matrix over {self.field}, got {v!r}")
        return v

    def is_zero(self, v) -> bool:
        return v.is_zero()


CoeffModule = ScalarTrivial | EndConj


@dataclass(frozen=True)
class Cochain:
    """A function G^arity -> module."""

    arity: int
    module: CoeffModule
    fn: Callable = dc_field(compare=False, repr=False)

    def __call__(self, *gs: GroupElement):
        if len(gs) != self.arity:
            raise TypeError(f"{self.arity}-cochain evaluated on {len(gs)} arguments")
        return self.module.check(self.fn(*gs))

    def __add__(self, other: "Cochain") -> "Cochain":
        if other.arity != self.arity or other.module != self.module:
            raise ModuleMismatch("cochains of different arity or module")
        return Cochain(self.arity, self.module, lambda *gs: self(*gs) + other(*gs))

    def __neg__(self) -> "Cochain":
        return Cochain(self.arity, self.module, lambda *gs: -self(*gs))

    def __sub__(self, other: "Cochain") -> "Cochain":
        return self + (-other)


def zero_cochain(arity: int, module: CoeffModule) -> Cochain:
    return Cochain(arity, module, lambda *gs: module.zero())


def constant_cochain(module: CoeffModule, value) -> Cochain:
    """The 0-cochain with the given value."""
    module.check(value)
    return Cochain(0, module, lambda: value)


def differential(f: Cochain) -> Cochain:
    """Bar differential d^n f, an (n+1)-cochain.

    (d f)(g0..gn) = g0 . f(g1..gn)
                    + sum_{i=1..n} (-1)^i f(g0, .., g_{i-1} g_i, .., gn)
                    + (-1)^(n+1) f(g0..g_{n-1})
    """
    n = f.arity
    mod = f.module

    def df(*gs):
        acc = mod.act(gs[0], f(*gs[1:]))
        for i in range(1, n + 1):
            merged = gs[: i - 1] + (gs[i - 1] * gs[i],) + gs[i + 1:]
            term = f(*merged)
            acc = acc - term if i % 2 else acc + term
        last = f(*gs[:n])
        return acc - last if (n + 1) % 2 else acc + last

    return Cochain(n + 1, mod, df)


def is_cocycle(f: Cochain, samples: Sequence[Sequence[GroupElement]]):
    """Evaluate d f on each sampled (n+1)-tuple.

    Returns ``(True, None)`` or ``(False, (tuple, value))`` for the first tuple
    where the differential does not vanish.
    """
    df = differential(f)
    for tup in samples:
        tup = tuple(tup)
        if len(tup) != f.arity + 1:
            raise TypeError(f"sample of length {len(tup)} for a {f.arity}-cochain")
        v = df(*tup)
        if not f.module.is_zero(v):
            return False, (tup, v)
    return True, None


def trace_pairing(A: MatrixK, B: MatrixK) -> RatFunc:
    """The G-equivariant form End V x End V -> K, (A, B) -> tr(AB)."""
    return trace(A * B)


def scalar_product(a: RatFunc, b: RatFunc) -> RatFunc:
    return a * b


def cup(f: Cochain, f2: Cochain, pair: Callable, target: CoeffModule) -> Cochain:
    """(f u f2)(g1..g_{i+j}) = pair(f(g1..gi), (g1...gi) . f2(g_{i+1}..g_{i+j}))."""
    i, j = f.arity, f2.arity

    def fn(*gs):
        left = f(*gs[:i])
        right = f2(*gs[i:])
        if i:
            right = f2.module.act(reduce(lambda a, b: a * b, gs[:i]), right)
        return pair(left, right)

    return Cochain(i + j, target, fn)


def is_homomorphism_on(f: Cochain, pairs: Sequence[Sequence[GroupElement]]) -> bool:
    """Direct check of f(gh) = f(g) + g.f(h) on sampled pairs, without the differential."""
    mod = f.module
    for g, h in pairs:
        if f(g * h) != f(g) + mod.act(g, f(h)):
            return False
    return True

