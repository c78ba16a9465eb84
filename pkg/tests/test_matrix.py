from fractions import Fraction

import pytest

from qinv.algebra.matrix import Mat, solve_linear, split_idempotent
from qinv.algebra.scalar import Scalar
from qinv.exceptions import NotIdempotentError, SingularMatrixError


def test_split_diagonal_projector():
    e = Mat([[1, 0], [0, 0]])
    triple = split_idempotent(e)
    assert triple.rank == 1
    assert triple.p == Mat([[1, 0]])
    assert triple.q == Mat([[1], [0]])


def test_split_half_projector():
    h = Fraction(1, 2)
    e = Mat([[h, h], [h, h]])
    triple = split_idempotent(e)
    assert triple.rank == 1
    assert triple.q @ triple.p == e
    assert triple.p @ triple.q == Mat.identity(1)


def test_split_rejects_non_idempotent():
    with pytest.raises(NotIdempotentError):
        split_idempotent(Mat([[1, 1], [0, 0]]).scale(2))


def test_split_over_cyclotomic():
    z = Scalar.zeta(3)
    # projector onto span(1, z) along span(0, 1)
    e = Mat([[1, 0], [z, 0]], conductor=3)
    triple = split_idempotent(e)
    assert triple.rank == 1
    assert triple.q @ triple.p == e


def test_solve_inconsistent():
    a = Mat([[1, 1], [2, 2]])
    b = Mat.column([1, 3])
    assert not solve_linear(a, b).consistent


def test_solve_with_nullspace():
    a = Mat([[1, 2, 3]])
    b = Mat.column([6])
    sol = solve_linear(a, b)
    assert sol.consistent
    assert a @ sol.particular == b
    assert len(sol.nullspace) == 2
    for v in sol.nullspace:
        assert (a @ v).is_zero()


def test_inverse_and_singular():
    z = Scalar.zeta(5)
    m = Mat([[1, z], [z, 2]], conductor=5)
    assert m @ m.inverse() == Mat.identity(2, 5)
    with pytest.raises(SingularMatrixError):
        Mat([[1, 2], [2, 4]]).inverse()


def test_kron_and_block_diag():
    a = Mat([[1, 2], [3, 4]])
    i = Mat.identity(2)
    k = a.kron(i)
    assert k.shape == (4, 4)
    assert k[2, 0] == 3 and k[2, 1] == 0
    d = Mat.block_diag([a, Mat([[5]])])
    assert d.shape == (3, 3) and d[2, 2] == 5 and d[0, 2] == 0


def test_rank_and_transpose():
    m = Mat([[1, 2, 3], [2, 4, 6]])
    assert m.rank() == 1
    assert m.transpose().shape == (3, 2)
    assert Mat.zeros(0, 3).transpose().shape == (3, 0)


def random_mat(rows, cols, conductor, rng):
    z = Scalar.zeta(conductor)
    return Mat(
        [[rng.randint(-2, 2) + rng.randint(-2, 2) * z for _ in range(cols)] for _ in range(rows)],
        conductor=conductor,
    )


@pytest.mark.parametrize("conductor", [1, 3, 5])
def test_random_systems(conductor, rng):
    for _ in range(40):
        rows, cols = rng.randint(1, 4), rng.randint(1, 4)
        a = random_mat(rows, cols, conductor, rng)
        x = random_mat(cols, 1, conductor, rng)
        sol = solve_linear(a, a @ x)
        assert sol.consistent
        assert a @ sol.particular == a @ x
        assert len(sol.nullspace) == cols - a.rank()
        for v in sol.nullspace:
            assert (a @ v).is_zero()


@pytest.mark.parametrize("conductor", [3, 8])
def test_random_inverses(conductor, rng):
    for _ in range(40):
        m = random_mat(3, 3, conductor, rng)
        if not m.is_invertible():
            continue
        assert m @ m.inverse() == Mat.identity(3, conductor)
        assert m.inverse() @ m == Mat.identity(3, conductor)
