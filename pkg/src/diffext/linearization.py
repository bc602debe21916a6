"""Matrix realisation of the extension inside GL(W), W = K + End(V) + K.

Coordinates on U = End(V) + K are (A row-major, a); on W they are
(b, A row-major, a).  P is the stabiliser of K < K + End(V) < W, i.e. the
block upper triangular matrices for the block sizes (1, n^2, 1).
"""

from __future__ import annotations

from dataclasses import dataclass

from .cohomology import Cochain, ScalarTrivial
from .errors import NotInP, ShapeError
from .extension import AlphaCocycle, DerivationCocycle
from .field import Field, RatFunc
from .groups import GroupElement
from .linalg import FlagSpec, MatrixK, inverse, preserves_flag, trace


@dataclass(frozen=True)
class UVector:
    A: MatrixK
    a: RatFunc

    @property
    def n(self) -> int:
        return self.A.n

    def coords(self) -> tuple[RatFunc, ...]:
        return self.A.flatten() + (self.a,)

    @classmethod
    def from_coords(cls, field: Field, n: int, xs) -> "UVector":
        if len(xs) != n * n + 1:
            raise ShapeError(f"{len(xs)} coordinates for U of dimension {n * n + 1}")
        return cls(MatrixK.unflatten(field, n, xs[:-1]), xs[-1])

    @classmethod
    def basis(cls, field: Field, n: int) -> list["UVector"]:
        dim = n * n + 1
        o, z = field.one, field.zero
        return [cls.from_coords(field, n, [o if i == k else z for i in range(dim)]) for k in range(dim)]


@dataclass(frozen=True)
class WVector:
    b: RatFunc
    A: MatrixK
    a: RatFunc

    def coords(self) -> tuple[RatFunc, ...]:
        return (self.b,) + self.A.flatten() + (self.a,)

    @classmethod
    def from_coords(cls, field: Field, n: int, xs) -> "WVector":
        if len(xs) != n * n + 2:
            raise ShapeError(f"{len(xs)} coordinates for W of dimension {n * n + 2}")
        return cls(xs[0], MatrixK.unflatten(field, n, xs[1:-1]), xs[-1])


def pi(w: WVector) -> UVector:
    """(b, A, a) -> (A, a)."""
    return UVector(w.A, w.a)


def iota(u: UVector) -> WVector:
    """(B, b) -> (b, B, 0)."""
    return WVector(u.a, u.A, u.a.field.zero)


def l_action(c: DerivationCocycle, g: GroupElement, u: UVector) -> UVector:
    """l_c(g)(A, a) = (g A g^-1 + c(g) a, a)."""
    return UVector(g.conj(u.A) + c(g) * u.a, u.a)


def l_dual_action(c: DerivationCocycle, g: GroupElement, u: UVector) -> UVector:
    """l'_c(g)(B, b) = (g B g^-1, b + tr(c(g^-1) B))."""
    return UVector(g.conj(u.A), u.a + trace(c(g.inverse()) * u.A))


def pairing(u: UVector, v: UVector) -> RatFunc:
    """<(A, a), (B, b)> = tr(AB) + ab."""
    if u.n != v.n:
        raise ShapeError(f"pairing of U vectors of sizes {u.n} and {v.n}")
    return trace(u.A * v.A) + u.a * v.a


def _matrix_of(field: Field, n: int, f) -> MatrixK:
    return MatrixK.from_columns(field, [f(e).coords() for e in UVector.basis(field, n)])


def l_matrix(c: DerivationCocycle, g: GroupElement) -> MatrixK:
    return _matrix_of(g.field, g.n, lambda u: l_action(c, g, u))


def l_dual_matrix(c: DerivationCocycle, g: GroupElement) -> MatrixK:
    return _matrix_of(g.field, g.n, lambda u: l_dual_action(c, g, u))


def apply_p_g(c1: DerivationCocycle, c2: DerivationCocycle, g: GroupElement, w: WVector) -> WVector:
    """p_g(b, A, a) = (b + tr(c2(g^-1) A), g A g^-1 + c1(g) a, a)."""
    return WVector(
        w.b + trace(c2(g.inverse()) * w.A),
        g.conj(w.A) + c1(g) * w.a,
        w.a,
    )


def make_p_g(c1: DerivationCocycle, c2: DerivationCocycle, g: GroupElement) -> MatrixK:
    field, n = g.field, g.n
    dim = n * n + 2
    o, z = field.one, field.zero
    cols = []
    for k in range(dim):
        e = WVector.from_coords(field, n, [o if i == k else z for i in range(dim)])
        cols.append(apply_p_g(c1, c2, g, e).coords())
    return MatrixK.from_columns(field, cols)


def make_p_t(field: Field, n: int, t) -> MatrixK:
    """p_t(b, A, a) = (b + a t, A, a): the identity plus t in the (b, a) corner."""
    t = field(t)
    dim = n * n + 2
    o, z = field.one, field.zero
    rows = [[o if i == j else z for j in range(dim)] for i in range(dim)]
    rows[0][dim - 1] = t
    return MatrixK._raw(field, tuple(tuple(r) for r in rows))


def is_p_t(p: MatrixK) -> bool:
    """True iff p is the identity outside its top-right corner."""
    last = p.n - 1
    return all(
        (a.is_one() if i == j else a.is_zero())
        for i, r in enumerate(p.rows)
        for j, a in enumerate(r)
        if (i, j) != (0, last)
    )


def _require_P(p: MatrixK, n: int):
    if p.n != n * n + 2:
        raise ShapeError(f"{p.n}x{p.n} matrix does not act on W of dimension {n * n + 2}")
    if not preserves_flag(p, FlagSpec.for_dim(n)):
        raise NotInP("matrix does not preserve the flag")


def pi_star(p: MatrixK, n: int) -> MatrixK:
    """Map induced by p on W/K = U."""
    _require_P(p, n)
    field = p.field

    def induced(u: UVector) -> UVector:
        w = WVector(field.zero, u.A, u.a)
        return pi(WVector.from_coords(field, n, p.apply(w.coords())))

    return _matrix_of(field, n, induced)


def iota_star(p: MatrixK, n: int) -> MatrixK:
    """Restriction of p to iota(U) = K + End(V), read back through iota."""
    _require_P(p, n)
    field = p.field

    def restricted(u: UVector) -> UVector:
        w = WVector.from_coords(field, n, p.apply(iota(u).coords()))
        return UVector(w.A, w.b)

    return _matrix_of(field, n, restricted)


@dataclass(frozen=True)
class LinElement:
    """(g, p) in G x P."""

    g: GroupElement
    p: MatrixK

    def __mul__(self, other: "LinElement") -> "LinElement":
        return LinElement(self.g * other.g, self.p * other.p)

    def embedded(self) -> MatrixK:
        """block_diag(g, p) in GL(V' + W)."""
        field = self.p.field
        m, k = self.g.n, self.p.n
        z = field.zero
        rows = []
        for r in self.g.matrix.rows:
            rows.append(tuple(r) + (z,) * k)
        for r in self.p.rows:
            rows.append((z,) * m + tuple(r))
        return MatrixK._raw(field, tuple(rows))


def section(c1: DerivationCocycle, c2: DerivationCocycle, g: GroupElement) -> LinElement:
    """g -> (g, p_g)."""
    return LinElement(g, make_p_g(c1, c2, g))


def membership_check(el: LinElement, c1: DerivationCocycle, c2: DerivationCocycle) -> bool:
    """Both defining conditions: pi_*(p) = l_c1(g) and iota^*(p) = l'_c2(g)."""
    n = el.g.n
    return pi_star(el.p, n) == l_matrix(c1, el.g) and iota_star(el.p, n) == l_dual_matrix(c2, el.g)


def section_cocycle(c1: DerivationCocycle, c2: DerivationCocycle) -> Cochain:
    """(h, g) -> tr(c1(g) c2(h^-1)): the corner of p_hg^-1 p_h p_g, computed in closed form."""
    return Cochain(2, ScalarTrivial(c1.field), lambda h, g: trace(c1(g) * c2(h.inverse())))


def trace_product_cochain(c1: DerivationCocycle, c2: DerivationCocycle) -> Cochain:
    """g -> tr(c1(g) c2(g)); its coboundary relates the section cocycle to alpha."""
    return Cochain(1, ScalarTrivial(c1.field), lambda g: trace(c1(g) * c2(g)))


@dataclass(frozen=True)
class KeyIdentity:
    holds: bool                # p_h p_g = p_hg p_t for the extracted t
    t: RatFunc                 # corner entry of p_hg^-1 p_h p_g
    alpha: RatFunc             # alpha(c1 (x) c2)(h, g)
    agrees_with_alpha: bool    # t == alpha(h, g)
    cohomologous: bool         # t - alpha(h, g) == (d f)(h, g), f = tr(c1 c2)


def key_identity_check(c1: DerivationCocycle, c2: DerivationCocycle,
                       g: GroupElement, h: GroupElement) -> KeyIdentity:
    """Compare p_h p_g with p_hg p_t.

    The quotient p_hg^-1 p_h p_g is computed by matrix inversion; it must be of
    the form p_t.  The extracted t equals tr(c1(g) c2(h^-1)).  That differs
    from alpha(h, g) by the coboundary of g -> tr(c1(g) c2(g)), so the two
    agree as cohomology classes but not value by value.
    """
    n = g.n
    field = g.field
    lhs = make_p_g(c1, c2, h) * make_p_g(c1, c2, g)
    p_hg = make_p_g(c1, c2, h * g)
    q = inverse(p_hg) * lhs
    t = q[0, q.n - 1]
    holds = is_p_t(q) and lhs == p_hg * make_p_t(field, n, t)
    alpha = AlphaCocycle(c1, c2)(h, g)
    f = trace_product_cochain(c1, c2)
    cob = f(g) - f(h * g) + f(h)
    return KeyIdentity(holds, t, alpha, t == alpha, t - alpha == cob)
