import itertools
from fractions import Fraction

import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from lvmbkit.field import sign
from lvmbkit.fixtures import blowup_extended, pentagon
from lvmbkit.linalg import Lattice, det, hnf, kernel_basis, mat_vec, rank, same_row_space, transpose


def test_rank_examples():
    assert rank([[1, 0, 0], [0, 1, 0], [0, 0, 1]]) == 3
    assert rank(blowup_extended().matrix()) == 2


def test_pentagon_rank_by_minors():
    V = pentagon()
    assert rank(V.matrix()) == 2
    # independent oracle: some 2x2 minor has nonzero exact sign
    minors = [sign(u[0] * v[1] - u[1] * v[0]) for u, v in itertools.combinations(V.vectors, 2)]
    assert any(minors)


def test_kernel_examples():
    square = [[1, 0, -1, 0], [0, 1, 0, -1]]
    K = kernel_basis(square)
    assert len(K) == 2
    assert same_row_space(K, [[1, 0, 1, 0], [0, 1, 0, 1]])

    K7 = kernel_basis(blowup_extended().matrix())
    assert len(K7) == 5
    assert rank(K7 + [[1] * 7]) == 5

    P = pentagon()
    K5 = kernel_basis(P.matrix())
    assert len(K5) == 3
    assert rank(K5 + [[1] * 5]) == 3
    for row in K5:
        assert all(x == 0 for x in mat_vec(P.matrix(), row))


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 5).flatmap(lambda r: st.integers(1, 7).flatmap(
    lambda c: st.lists(st.lists(st.fractions(-5, 5, max_denominator=4), min_size=c, max_size=c), min_size=r, max_size=r))))
def test_kernel_annihilates_and_counts(M):
    K = kernel_basis(M)
    assert len(K) + rank(M) == len(M[0])
    for v in K:
        assert all(x == 0 for x in mat_vec(M, v))
    assert rank(M) == sympy.Matrix(M).rank()


def test_det_rational_and_algebraic():
    assert det([[Fraction(1, 2), 3], [4, 5]]) == Fraction(5, 2) - 12
    P = pentagon()
    u, v = P.vectors[0], P.vectors[1]
    assert det([list(u), list(v)]) == u[0] * v[1] - u[1] * v[0]


def test_hnf_examples():
    H, U = hnf([[2, 0], [0, 2]])
    assert H == [[2, 0], [0, 2]]
    assert Lattice([[2, 0], [0, 2]]).coordinates([1, 1]) is None

    H, _ = hnf([[1, 0], [0, 1], [-1, 1]])
    assert [r for r in H if any(r)] == [[1, 0], [0, 1]]

    L = Lattice(blowup_extended().vectors)
    assert L.rank == 2
    assert L.basis_vectors() == [[1, 0], [0, 1]]


def test_lattice_with_denominators():
    L = Lattice([[Fraction(1, 2), 0], [0, Fraction(1, 3)]])
    assert L.coordinates([Fraction(3, 2), Fraction(2, 3)]) is not None
    assert L.coordinates([Fraction(1, 4), 0]) is None


def test_transpose():
    assert transpose([[1, 2, 3], [4, 5, 6]]) == [[1, 4], [2, 5], [3, 6]]
