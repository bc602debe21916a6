"""SL2(K), its natural and adjoint representations, and seeded sampling."""

from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field
from typing import Callable, Optional

from .errors import NotInvertible
from .field import Field, RatFunc, random_ratfunc
from .linalg import MatrixK, inverse


class GroupElement:
    """An invertible matrix together with its (lazily computed) inverse."""

    __slots__ = ("matrix", "_inverse")

    def __init__(self, matrix: MatrixK, inverse_matrix: Optional[MatrixK] = None):
        self.matrix = matrix
        self._inverse = inverse_matrix

    @classmethod
    def identity(cls, field: Field, n: int) -> "GroupElement":
        one = MatrixK.identity(field, n)
        return cls(one, one)

    @property
    def field(self) -> Field:
        return self.matrix.field

    @property
    def n(self) -> int:
        return self.matrix.n

    def inverse_matrix(self) -> MatrixK:
        if self._inverse is None:
            inv = inverse(self.matrix)
            if inv is None:
                raise NotInvertible("singular group element")
            self._inverse = inv
        return self._inverse

    def inverse(self) -> "GroupElement":
        return GroupElement(self.inverse_matrix(), self.matrix)

    def __mul__(self, other: "GroupElement") -> "GroupElement":
        inv = None
        if self._inverse is not None and other._inverse is not None:
            inv = other._inverse * self._inverse
        return GroupElement(self.matrix * other.matrix, inv)

    def conj(self, M: MatrixK) -> MatrixK:
        """g M g^-1."""
        return self.matrix * M * self.inverse_matrix()

    def is_identity(self) -> bool:
        return self.matrix.is_identity()

    def __eq__(self, other):
        if not isinstance(other, GroupElement):
            return NotImplemented
        return self.matrix == other.matrix

    def __hash__(self):
        return hash(self.matrix)

    def __str__(self):
        return str(self.matrix)

    def __repr__(self):
        return f"GroupElement{self.matrix}"


def elem_upper(field: Field, f) -> GroupElement:
    f = field(f)
    o, z = field.one, field.zero
    return GroupElement(MatrixK._raw(field, ((o, f), (z, o))), MatrixK._raw(field, ((o, -f), (z, o))))


def elem_lower(field: Field, f) -> GroupElement:
    f = field(f)
    o, z = field.one, field.zero
    return GroupElement(MatrixK._raw(field, ((o, z), (f, o))), MatrixK._raw(field, ((o, z), (-f, o))))


def torus(field: Field, u) -> GroupElement:
    """diag(u, 1/u)."""
    u = field(u)
    if u.is_zero():
        raise NotInvertible("torus(0)")
    ui = u.inverse()
    return GroupElement(MatrixK.diag(field, [u, ui]), MatrixK.diag(field, [ui, u]))


def sl2_generators(field: Field, kind: str, param) -> GroupElement:
    """Generator by name: ``elem_upper``, ``elem_lower`` or ``torus``."""
    try:
        make = {"elem_upper": elem_upper, "elem_lower": elem_lower, "torus": torus}[kind]
    except KeyError:
        raise ValueError(f"unknown generator kind {kind!r}") from None
    return make(field, param)


def random_sl2(field: Field, rng: random.Random, degree_cap: int = 3,
               max_factors: int = 4) -> GroupElement:
    """Product of 1..max_factors random generators with random parameters."""
    g = GroupElement.identity(field, 2)
    for _ in range(rng.randint(1, max_factors)):
        kind = rng.choice(("elem_upper", "elem_lower", "torus"))
        param = random_ratfunc(field, rng, degree_cap=degree_cap, max_terms=3, coeff_bound=3)
        g = g * sl2_generators(field, kind, param)
    return g


def sample_sl2(seed: int, count: int, degree_cap: int = 3,
               field: Optional[Field] = None) -> list[GroupElement]:
    """Deterministic list of ``count`` elements of SL2(K)."""
    if degree_cap < 1:
        raise ValueError("degree_cap must be >= 1")
    field = field or Field.rational(2)
    rng = random.Random(seed)
    return [random_sl2(field, rng, degree_cap) for _ in range(count)]


def _adjoint_matrix(g: MatrixK, ginv: MatrixK) -> MatrixK:
    # basis e+ = E12, h = E11 - E22, e- = E21; coordinates of [[x, y], [z, -x]] are (y, x, z)
    field = g.field
    o, z = field.one, field.zero
    basis = (
        MatrixK._raw(field, ((z, o), (z, z))),
        MatrixK._raw(field, ((o, z), (z, -o))),
        MatrixK._raw(field, ((z, z), (o, z))),
    )
    cols = []
    for X in basis:
        Y = g * X * ginv
        cols.append((Y[0, 1], Y[0, 0], Y[1, 0]))
    return MatrixK.from_columns(field, cols)


def _natural(g: GroupElement) -> GroupElement:
    return g


def _adjoint(g: GroupElement) -> GroupElement:
    gi = g.inverse_matrix()
    return GroupElement(_adjoint_matrix(g.matrix, gi), _adjoint_matrix(gi, g.matrix))


def _trivial(g: GroupElement) -> GroupElement:
    return GroupElement.identity(g.field, 1)


@dataclass(frozen=True)
class Representation:
    """A representation of SL2 with a diagonal torus of known weights."""

    name: str
    dim: int
    weights: tuple[int, ...]
    evaluator: Callable[[GroupElement], GroupElement] = dc_field(compare=False, repr=False)

    def __call__(self, g: GroupElement) -> GroupElement:
        return self.evaluator(g)

    def nu(self, field: Field, t) -> GroupElement:
        """Image of the torus element diag(t, 1/t)."""
        return self(torus(field, t))


NATURAL = Representation("natural", 2, (1, -1), _natural)
ADJOINT = Representation("adjoint", 3, (2, 0, -2), _adjoint)
TRIVIAL = Representation("trivial", 1, (0,), _trivial)

REPRESENTATIONS = {r.name: r for r in (NATURAL, ADJOINT, TRIVIAL)}


def apply_rep(rep: Representation, g: GroupElement) -> GroupElement:
    return rep(g)


def weight_square_sum(rep: Representation) -> int:
    return sum(d * d for d in rep.weights)


def torus_image_expected(rep: Representation, u: RatFunc) -> MatrixK:
    """diag(u^d1, ..., u^dn), the expected image of the torus."""
    return MatrixK.diag(u.field, [u**d for d in rep.weights])
