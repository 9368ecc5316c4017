import random

import pytest

from edr.matrix import (
    COL,
    ROW,
    Axpy,
    Combine,
    IndexMap,
    Matrix,
    Scale,
    Swap,
    apply_elementary,
    block_mx,
    det_bareiss,
    det_cofactor,
    determinant,
    diag_mx_seq,
    elementary_matrix,
    identity,
    minor,
    strict_maps,
    submatrix,
    zeros,
)
from edr.rings import QQx, ZZ
from conftest import random_matrix
from oracles import leibniz_det


def Z(rows, n=None):
    return Matrix.from_ints(ZZ, rows, n)


def test_construction_and_access():
    m = Z([[1, 2, 3], [4, 5, 6]])
    assert m.shape == (2, 3)
    assert m[1, 2] == 6
    assert m.row(0) == (1, 2, 3) and m.col(1) == (2, 5)
    with pytest.raises(IndexError):
        m[2, 0]
    with pytest.raises(IndexError):
        m[0, -1]
    with pytest.raises(ValueError):
        Matrix(ZZ, 2, 2, [1, 2, 3])
    assert Matrix(ZZ, 0, 3).shape == (0, 3)


def test_diag_mx_seq_examples():
    assert diag_mx_seq(ZZ, 2, 3, [7, 9]) == Z([[7, 0, 0], [0, 9, 0]])
    assert diag_mx_seq(ZZ, 2, 2, []) == zeros(ZZ, 2, 2)
    assert diag_mx_seq(ZZ, 3, 2, [1, 2, 3]) == Z([[1, 0], [0, 2], [0, 0]])


def test_elementary_examples():
    m = Z([[1, 2], [3, 4]])
    assert apply_elementary(m, Swap(0, 1)) == Z([[3, 4], [1, 2]])
    assert apply_elementary(identity(ZZ, 2), Axpy(0, 1, 2)) == Z([[1, 2], [0, 1]])
    assert apply_elementary(Z([[4], [6]]), Combine(0, 1, -1, 1, -3, 2)) == Z([[2], [0]])
    with pytest.raises(ValueError):
        apply_elementary(m, Scale(0, 2))
    with pytest.raises(ValueError):
        apply_elementary(m, Combine(0, 1, 2, 0, 0, 1))
    with pytest.raises(IndexError):
        apply_elementary(m, Swap(0, 2))


def test_elementary_equals_matrix_product():
    rng = random.Random(1)
    for _ in range(200):
        m = random_matrix(ZZ, rng, rng.randint(2, 5), rng.randint(2, 5), 20)
        side = rng.choice([ROW, COL])
        n = m.nrows if side == ROW else m.ncols
        i, j = rng.sample(range(n), 2)
        op = rng.choice([Swap(i, j), Scale(i, -1), Axpy(i, j, rng.randint(-5, 5)),
                         Combine(i, j, 2, 1, 1, 1)])
        e = elementary_matrix(ZZ, n, op, side)
        expected = e @ m if side == ROW else m @ e
        assert apply_elementary(m, op, side) == expected
        assert e == apply_elementary(identity(ZZ, n), op, side)


def test_arithmetic_examples():
    a = Z([[1, 2], [3, 4]])
    assert identity(ZZ, 2) @ a == a
    assert a @ Z([[0, 1], [1, 0]]) == Z([[2, 1], [4, 3]])
    assert a + a == a.scale(2)
    assert (a - a).is_zero()
    assert a.T == Z([[1, 3], [2, 4]])
    assert Matrix(ZZ, 0, 3).T.shape == (3, 0)
    assert (Matrix(ZZ, 2, 0) @ Matrix(ZZ, 0, 3)).is_zero()
    with pytest.raises(ValueError):
        a @ Z([[1, 2, 3]])
    with pytest.raises(ValueError):
        a + Z([[1]])


def test_block_roundtrip():
    rng = random.Random(2)
    for _ in range(50):
        m = random_matrix(ZZ, rng, rng.randint(1, 5), rng.randint(1, 5), 9)
        i, j = rng.randint(0, m.nrows), rng.randint(0, m.ncols)
        assert block_mx(m.ulsub(i, j), m.ursub(i, j), m.dlsub(i, j), m.drsub(i, j)) == m


def test_submatrix_examples():
    m = Z([[1, 2, 3], [4, 5, 6], [7, 8, 9]])
    assert submatrix(IndexMap.identity(3), IndexMap.identity(3), m) == m
    assert submatrix(IndexMap((0, 0), 3), IndexMap((0,), 3), m) == Z([[1], [1]])
    assert submatrix(IndexMap((0, 1), 3), IndexMap((1, 2), 3), m) == Z([[2, 3], [5, 6]])
    with pytest.raises(IndexError):
        IndexMap((3,), 3)


def test_index_map_flags():
    assert IndexMap((0, 2), 3).strict
    assert not IndexMap((2, 0), 3).strict and IndexMap((2, 0), 3).injective
    assert not IndexMap((1, 1), 3).injective


def test_determinant_examples():
    assert determinant(identity(ZZ, 6)) == 1
    assert determinant(Z([[1, 2], [3, 4]])) == -2
    assert determinant(Z([[1, 2, 3], [1, 2, 3], [4, 5, 6]])) == 0
    assert determinant(Matrix(ZZ, 0, 0)) == 1


@pytest.mark.parametrize("ring", [ZZ, QQx], ids=["Z", "Q[x]"])
def test_bareiss_agrees_with_cofactor_and_leibniz(ring):
    rng = random.Random(3)
    for _ in range(60):
        n = rng.randint(1, 5)
        m = random_matrix(ring, rng, n, n, 30 if ring is ZZ else 2)
        ref = leibniz_det(ring, m.tolist())
        assert det_bareiss(m) == ref
        if n <= 4:
            assert det_cofactor(m) == ref


def test_bareiss_with_zero_pivots():
    m = Z([[0, 1, 2, 3, 4], [1, 0, 0, 0, 0], [0, 0, 0, 1, 0], [0, 0, 1, 0, 0], [0, 2, 0, 0, 1]])
    assert det_bareiss(m) == leibniz_det(ZZ, m.tolist())


def test_minor_examples():
    m = Z([[1, 2, 3], [4, 5, 6], [7, 8, 10]])
    assert minor(IndexMap((1,), 3), IndexMap((2,), 3), m) == 6
    assert minor(IndexMap((0, 0), 3), IndexMap((0, 1), 3), m) == 0
    assert minor(IndexMap.identity(3), IndexMap.identity(3), m) == determinant(m)


def test_strict_maps_examples():
    assert [tuple(f) for f in strict_maps(2, 3)] == [(0, 1), (0, 2), (1, 2)]
    assert [tuple(f) for f in strict_maps(0, 4)] == [()]
    assert [tuple(f) for f in strict_maps(3, 3)] == [(0, 1, 2)]
    assert strict_maps(4, 3) == []


def test_determinant_multiplicative():
    rng = random.Random(4)
    for _ in range(100):
        n = rng.randint(1, 5)
        a, b = random_matrix(ZZ, rng, n, n, 9), random_matrix(ZZ, rng, n, n, 9)
        assert determinant(a @ b) == determinant(a) * determinant(b)


def test_permuted_minor_is_signed_sorted_minor():
    rng = random.Random(5)
    for _ in range(100):
        m = random_matrix(ZZ, rng, 5, 5, 9)
        k = rng.randint(1, 4)
        f = rng.sample(range(5), k)
        g = rng.sample(range(5), k)
        lhs = minor(IndexMap(tuple(f), 5), IndexMap(tuple(g), 5), m)
        rhs = minor(IndexMap(tuple(sorted(f)), 5), IndexMap(tuple(sorted(g)), 5), m)
        assert lhs in (rhs, -rhs)
