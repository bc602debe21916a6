import itertools
import random

import pytest

from diffext import Derivation, Field
from diffext.errors import ShapeError
from diffext.field import random_ratfunc
from diffext.linalg import (
    FlagSpec,
    MatrixK,
    det,
    det_inv_trace,
    inverse,
    mat_arith,
    mat_derive,
    preserves_flag,
    trace,
)
from diffext.linearization import make_p_t

K = Field.rational(2)
T1, T2 = K.gens()
D1 = Derivation.partial(K, 1)


def random_matrix(rng, n, degree_cap=2):
    return MatrixK(K, [[random_ratfunc(K, rng, degree_cap, max_terms=3) if rng.random() < 0.8 else 0
                        for _ in range(n)] for _ in range(n)])


def leibniz_det(A: MatrixK):
    """Permutation expansion; independent of the elimination code."""
    n = A.n
    total = K.zero
    for perm in itertools.permutations(range(n)):
        inversions = sum(perm[i] > perm[j] for i in range(n) for j in range(i + 1, n))
        term = K.one
        for i in range(n):
            term = term * A[i, perm[i]]
        total = total - term if inversions % 2 else total + term
    return total


def test_mat_arith_examples():
    A = MatrixK(K, [[T1, 2], [T2, T1 * T2]])
    assert mat_arith(MatrixK.identity(K, 2), A, "mul") == A
    assert mat_arith(MatrixK.diag(K, [T1, 1 / T1]), MatrixK.diag(K, [1 / T1, T1]), "mul").is_identity()
    up = mat_arith(MatrixK(K, [[1, T1], [0, 1]]), MatrixK(K, [[1, T2], [0, 1]]), "mul")
    assert up == MatrixK(K, [[1, T1 + T2], [0, 1]])
    assert mat_arith(A, A, "add") == 2 * A


def test_shape_errors():
    with pytest.raises(ShapeError):
        MatrixK.identity(K, 2) * MatrixK.identity(K, 3)
    with pytest.raises(ShapeError):
        MatrixK(K, [[1, 2]])
    with pytest.raises(ShapeError):
        preserves_flag(MatrixK.identity(K, 5), FlagSpec.for_dim(2))


def test_det_inv_trace_examples():
    A = MatrixK(K, [[T1, 1], [0, 1 / T1]])
    d, inv, tr = det_inv_trace(A)
    assert d == 1 and tr == T1 + 1 / T1
    assert inv == MatrixK(K, [[1 / T1, -1], [0, T1]])
    assert (A * inv).is_identity() and (inv * A).is_identity()

    for n in (1, 2, 4):
        d, inv, tr = det_inv_trace(MatrixK.identity(K, n))
        assert d == 1 and inv.is_identity() and tr == n

    d, inv, _ = det_inv_trace(MatrixK(K, [[T1, T1], [1, 1]]))
    assert d == 0 and inv is None


def test_mat_derive_examples():
    assert mat_derive(D1, MatrixK.identity(K, 3)).is_zero()
    assert mat_derive(D1, MatrixK(K, [[1, T1], [0, 1]])) == MatrixK.unit(K, 2, 0, 1)
    assert mat_derive(D1, MatrixK.diag(K, [T1, 1 / T1])) == MatrixK.diag(K, [1, -1 / (T1 * T1)])


def test_flag_examples():
    flag = FlagSpec.for_dim(2)
    assert preserves_flag(MatrixK.identity(K, 6), flag)
    swap = MatrixK(K, [[1 if (i, j) in ((0, 5), (5, 0)) or (i == j and i not in (0, 5)) else 0
                        for j in range(6)] for i in range(6)])
    assert not preserves_flag(swap, flag)
    for t in (T1, T1 / (T2 + 1), 0):
        p = make_p_t(K, 2, t)
        # direct inspection: only the (0, 5) entry leaves the diagonal
        assert all(p[i, j] == (1 if i == j else 0) for i in range(6) for j in range(6) if (i, j) != (0, 5))
        assert preserves_flag(p, flag)


def test_text_form():
    assert str(MatrixK(K, [[1, T1], [0, 1]])) == "[[(1)/(1), (t1)/(1)], [(0)/(1), (1)/(1)]]"


def test_det_matches_permutation_expansion():
    rng = random.Random(11)
    for n in (2, 3, 4):
        for _ in range(4):
            A = random_matrix(rng, n)
            assert det(A) == leibniz_det(A)


def test_det_with_zero_pivot():
    A = MatrixK(K, [[0, 1, T1], [1, 0, 0], [T2, 1, 0]])
    assert det(A) == leibniz_det(A)


def test_random_pair_properties():
    rng = random.Random(12)
    for _ in range(10):
        A, B = random_matrix(rng, 3), random_matrix(rng, 3)
        assert det(A * B) == det(A) * det(B)
        assert trace(A * B) == trace(B * A)
        assert mat_derive(D1, A * B) == mat_derive(D1, A) * B + A * mat_derive(D1, B)
        inv = inverse(A)
        if inv is not None:
            assert (A * inv).is_identity()


def random_flag_matrix(rng):
    """Block upper triangular for blocks (1, 4, 1) with invertible diagonal blocks."""
    while True:
        rows = [[K.zero] * 6 for _ in range(6)]
        rows[0][0] = random_ratfunc(K, rng, 2, max_terms=3)
        rows[5][5] = random_ratfunc(K, rng, 2, max_terms=3)
        for i in range(6):
            for j in range(6):
                in_mid = 1 <= i <= 4 and 1 <= j <= 4
                above = (i == 0 and j > 0) or (1 <= i <= 4 and j == 5)
                if (in_mid or above) and rng.random() < 0.6:
                    rows[i][j] = random_ratfunc(K, rng, 2, max_terms=3)
        p = MatrixK(K, rows)
        if not det(p).is_zero():
            return p


def test_flag_closure():
    rng = random.Random(13)
    flag = FlagSpec.for_dim(2)
    for _ in range(5):
        p, q = random_flag_matrix(rng), random_flag_matrix(rng)
        assert preserves_flag(p, flag) and preserves_flag(q, flag)
        assert preserves_flag(p * q, flag)
        assert preserves_flag(inverse(p), flag)


def test_flatten_roundtrip():
    A = MatrixK(K, [[T1, 2], [T2, 3]])
    assert A.flatten() == (T1, K(2), T2, K(3))
    assert MatrixK.unflatten(K, 2, A.flatten()) == A
