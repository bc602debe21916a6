import random

import pytest

from diffext.char2 import (
    D_T,
    F2T,
    central_unipotent_check,
    is_unipotent,
    random_unit,
    rho,
    rho_homomorphism_check,
    semisimple_part,
    unipotent_part,
)
from diffext.errors import NotInSL2, NotInvertible
from diffext.groups import GroupElement, elem_lower, elem_upper, torus
from diffext.linalg import MatrixK

t = F2T.var(1)
I4 = MatrixK.identity(F2T, 4)


def E14(x):
    return x * MatrixK.unit(F2T, 4, 0, 3)


def test_rho_examples():
    assert rho(GroupElement.identity(F2T, 2)).is_identity()
    assert rho(elem_upper(F2T, t)) == MatrixK(F2T, [
        [1, 0, t, 0],
        [0, 1, t * t, 1],
        [0, 0, 1, 0],
        [0, 0, 0, 1],
    ])
    u = (t ** 3 + 1) / (t + t * t + 1)
    # a = u, d = 1/u, b = c = 0
    assert rho(torus(F2T, u)) == MatrixK(F2T, [
        [1, 0, 0, D_T(u) / u],
        [0, u * u, 0, 0],
        [0, 0, 1 / (u * u), 0],
        [0, 0, 0, 1],
    ])


def test_rho_hand_expanded_pair():
    g, h = elem_upper(F2T, t), elem_lower(F2T, 1)
    # gh = [[1 + t, t], [1, 1]]; substituting into the display by hand
    expected = MatrixK(F2T, [
        [1, 1 + t, t, 0],
        [0, 1 + t * t, t * t, 1],
        [0, 1, 1, 0],
        [0, 0, 0, 1],
    ])
    assert rho(g * h) == expected
    assert rho(g) * rho(h) == expected


def test_rho_requires_sl2():
    with pytest.raises(NotInSL2):
        rho(MatrixK(F2T, [[t, 0], [0, 1]]))
    with pytest.raises(NotInSL2):
        rho(MatrixK.identity(F2T, 3))


def test_homomorphism_check():
    assert rho_homomorphism_check(0, 0) == (True, None)
    assert rho_homomorphism_check(1, 100) == (True, None)


def test_mutation_is_caught():
    def mutated(g):
        r = rho(g)
        (a, b), (c, d) = (g.matrix if isinstance(g, GroupElement) else g).rows
        rows = [list(x) for x in r.rows]
        rows[0][3] = rows[0][3] + a * b  # an added term
        return MatrixK(F2T, rows)

    ok, witness = rho_homomorphism_check(1, 100, rep=mutated)
    assert not ok
    g, h = witness
    assert mutated(g * h) != mutated(g) * mutated(h)


def test_unipotent_examples():
    assert unipotent_part(1).is_identity()
    assert unipotent_part(t * t).is_identity()
    v = unipotent_part(t)
    assert v == I4 + E14(1 / t)
    assert not v.is_identity() and is_unipotent(v)
    # explicit commutation with one image
    r = rho(elem_upper(F2T, t))
    assert v * r == r + E14(1 / t) == r * v
    assert central_unipotent_check(t, seed=3, count=20)
    assert central_unipotent_check(1, seed=3, count=5)


def test_unipotent_errors():
    with pytest.raises(NotInvertible):
        unipotent_part(0)
    with pytest.raises(NotInvertible):
        central_unipotent_check(F2T.zero, 0, 1)


def test_square_classes_and_order_two():
    rng = random.Random(9)
    for _ in range(20):
        u, w = random_unit(rng), random_unit(rng)
        v = unipotent_part(u)
        assert unipotent_part(u * w * w) == v
        assert v * v == I4
        assert semisimple_part(u) * v == rho(torus(F2T, u))
        # square classes multiply
        assert unipotent_part(u * w) == v * unipotent_part(w)
