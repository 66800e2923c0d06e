import random
from fractions import Fraction

import pytest

from vvmf.exactnum import CycNum
from vvmf.linalg import Matrix, Subspace


def e(i, n):
    return [1 if j == i else 0 for j in range(n)]


def test_kernel_examples():
    assert Matrix.identity(3).kernel().dim == 0
    assert Matrix.zeros(2, 2).kernel().dim == 2
    k = Matrix.from_rows([[1, -1]]).kernel()
    assert k.dim == 1
    assert k.member([1, 1])


def test_intersection_examples():
    u = Subspace.from_rows(2, [e(0, 2)])
    v = Subspace.from_rows(2, [e(1, 2)])
    assert u.intersect(u) == u
    assert u.intersect(v).dim == 0
    a = Subspace.from_rows(3, [e(0, 3), e(1, 3)])
    b = Subspace.from_rows(3, [e(1, 3), e(2, 3)])
    c = a.intersect(b)
    assert c == Subspace.from_rows(3, [e(1, 3)])


def test_intersection_requires_equal_ambient():
    with pytest.raises(ValueError):
        Subspace.from_rows(2, [e(0, 2)]).intersect(Subspace.from_rows(3, [e(0, 3)]))


def kron_oracle(a, b):
    out = [
        [None] * (a.cols * b.cols) for _ in range(a.rows * b.rows)
    ]
    for i in range(a.rows):
        for j in range(a.cols):
            for p in range(b.rows):
                for q in range(b.cols):
                    out[i * b.rows + p][j * b.cols + q] = a[i, j] * b[p, q]
    return Matrix.from_rows(out)


def random_matrix(rng, rows, cols, conductor=1):
    from vvmf.exactnum import euler_phi

    def cell():
        if conductor == 1:
            return CycNum.from_rational(Fraction(rng.randint(-4, 4)))
        return CycNum(conductor, [rng.randint(-2, 2) for _ in range(euler_phi(conductor))])

    return Matrix(rows, cols, [cell() for _ in range(rows * cols)])


def test_kron_examples_and_mixed_product():
    assert Matrix.identity(2).kron(Matrix.identity(3)) == Matrix.identity(6)
    rng = random.Random(5)
    for _ in range(5):
        a, b, c, d = (random_matrix(rng, 2, 2) for _ in range(4))
        assert a.kron(b) == kron_oracle(a, b)
        assert a.kron(b) * c.kron(d) == (a * c).kron(b * d)


def test_kron_of_threefold_symmetry_matrix():
    s3 = Matrix.from_rows([[0, 1, 0], [1, 0, 0], [-1, -1, -1]])
    big = s3.kron(s3)
    assert big.shape == (9, 9)
    assert big == kron_oracle(s3, s3)
    # first row, fifth column (1-based): products of the (1,2) entries
    assert big[0, 4] == CycNum.one()


def test_solve_right_examples():
    b = Matrix.from_rows([[3], [5]])
    assert Matrix.identity(2).solve_right(b) == b
    assert Matrix.identity(2).scaled(2).solve_right(b) == b.scaled(Fraction(1, 2))
    with pytest.raises(ValueError):
        Matrix.from_rows([[1], [0]]).solve_right(Matrix.from_rows([[0], [1]]))


def test_member_examples():
    s = Subspace.from_rows(3, [e(0, 3)])
    assert s.member(e(0, 3))
    assert s.member([0, 0, 0])
    assert not s.member(e(1, 3))
    with pytest.raises(ValueError):
        s.member([1, 0])


def test_rank_nullity_random():
    rng = random.Random(99)
    for trial in range(20):
        rows = rng.randint(1, 8)
        cols = rng.randint(1, 8)
        conductor = rng.choice([1, 1, 3])
        m = random_matrix(rng, rows, cols, conductor)
        assert m.rank() + m.kernel().dim == cols, (trial, rows, cols)


def test_member_invariant_under_basis_recombination():
    rng = random.Random(17)
    for _ in range(10):
        rows = [[rng.randint(-3, 3) for _ in range(5)] for _ in range(2)]
        s = Subspace.from_rows(5, rows)
        if s.dim != 2:
            continue
        # invertible recombination of the generating rows
        a, b, c, d = 1, rng.randint(-2, 2), 0, 1
        rec = [
            [a * x + b * y for x, y in zip(rows[0], rows[1])],
            [c * x + d * y for x, y in zip(rows[0], rows[1])],
        ]
        s2 = Subspace.from_rows(5, rec)
        assert s == s2
        probe = [rng.randint(-3, 3) for _ in range(5)]
        assert s.member(probe) == s2.member(probe)


def test_kron_respects_inverse():
    rng = random.Random(23)
    done = 0
    while done < 5:
        a = random_matrix(rng, 2, 2)
        b = random_matrix(rng, 2, 2)
        try:
            ia, ib = a.inverse(), b.inverse()
        except ValueError:
            continue
        assert a.kron(b).inverse() == ia.kron(ib)
        done += 1


def test_inverse_errors_on_singular():
    with pytest.raises(ValueError):
        Matrix.from_rows([[1, 2], [2, 4]]).inverse()


def test_rref_is_canonical():
    m = Matrix.from_rows([[2, 4, 6], [1, 2, 3], [0, 1, 1]])
    r, pivots = m.rref()
    assert pivots == [0, 1]
    assert r.row(0) == tuple([CycNum.one(), CycNum.zero(), CycNum.one()])
    assert r.row(1) == tuple([CycNum.zero(), CycNum.one(), CycNum.one()])
