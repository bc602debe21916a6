"""A four-dimensional representation of SL2(F2(t)) that only exists in characteristic 2.

With d = d/dt the map

    [[a, b], [c, d]] -> [[1, ac,  bd,  d(a) d + d(b) c],
                         [0, a^2, b^2, d(ab)],
                         [0, c^2, d^2, d(cd)],
                         [0, 0,   0,   1]]

is multiplicative on SL2.  Diagonal elements map to a semisimple part
diag(1, u^2, u^-2, 1) times a unipotent part that centralises the image and
depends only on the class of u modulo squares.
"""

from __future__ import annotations

import random
from typing import Callable, Optional

from .errors import NotInSL2, NotInvertible
from .field import Derivation, Field, RatFunc, random_ratfunc
from .groups import GroupElement, random_sl2
from .linalg import MatrixK

F2T = Field.gf2()
D_T = Derivation.partial(F2T, 1)


def _entries(g) -> tuple[RatFunc, RatFunc, RatFunc, RatFunc]:
    m = g.matrix if isinstance(g, GroupElement) else g
    if m.n != 2:
        raise NotInSL2(f"{m.n}x{m.n} matrix is not in SL2")
    (a, b), (c, d) = m.rows
    if not (a * d - b * c).is_one():
        raise NotInSL2(f"det {a * d - b * c} != 1")
    return a, b, c, d


def rho(g) -> MatrixK:
    a, b, c, d = _entries(g)
    dt = D_T
    z, o = F2T.zero, F2T.one
    return MatrixK._raw(F2T, (
        (o, a * c, b * d, dt(a) * d + dt(b) * c),
        (z, a * a, b * b, dt(a * b)),
        (z, c * c, d * d, dt(c * d)),
        (z, z, z, o),
    ))


def sample_sl2_f2(rng: random.Random, count: int, degree_cap: int = 3) -> list[GroupElement]:
    return [random_sl2(F2T, rng, degree_cap) for _ in range(count)]


def rho_homomorphism_check(seed: int, count: int, degree_cap: int = 3,
                           rep: Callable = rho) -> tuple[bool, Optional[tuple]]:
    """rep(gh) == rep(g) rep(h) on ``count`` seeded random pairs.

    ``rep`` defaults to :func:`rho`; pass a modified map to check that a
    mutation is detected.  Returns ``(ok, witness)`` with witness ``(g, h)``.
    """
    rng = random.Random(seed)
    for _ in range(count):
        g, h = sample_sl2_f2(rng, 2, degree_cap)
        if rep(g * h) != rep(g) * rep(h):
            return False, (g, h)
    return True, None


def semisimple_part(u: RatFunc) -> MatrixK:
    return MatrixK.diag(F2T, [1, u * u, (u * u).inverse(), 1])


def unipotent_part(u) -> MatrixK:
    """v = s^-1 rho(diag(u, 1/u)) with s = diag(1, u^2, u^-2, 1)."""
    u = F2T(u)
    if u.is_zero():
        raise NotInvertible("u = 0")
    diag = MatrixK.diag(F2T, [u, u.inverse()])
    s_inv = MatrixK.diag(F2T, [1, (u * u).inverse(), u * u, 1])
    return s_inv * rho(diag)


def is_unipotent(v: MatrixK) -> bool:
    n = v.n
    return ((v - MatrixK.identity(v.field, n)) ** n).is_zero()


def central_unipotent_check(u, seed: int, count: int, degree_cap: int = 3) -> bool:
    """v(u) is unipotent, s v = rho(diag(u, 1/u)), and v commutes with sampled images."""
    u = F2T(u)
    if u.is_zero():
        raise NotInvertible("u = 0")
    v = unipotent_part(u)
    if not is_unipotent(v):
        return False
    if semisimple_part(u) * v != rho(MatrixK.diag(F2T, [u, u.inverse()])):
        return False
    rng = random.Random(seed)
    for g in sample_sl2_f2(rng, count, degree_cap):
        r = rho(g)
        if r * v != v * r:
            return False
    return True


def random_unit(rng: random.Random, degree_cap: int = 3) -> RatFunc:
    return random_ratfunc(F2T, rng, degree_cap=degree_cap, max_terms=4)
