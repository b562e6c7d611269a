import random

import numpy as np
import pytest
import sympy

from cyclotrace.linalg import bareiss_det, charpoly, inertia, is_positive_definite, leading_principal_minors


def rand_matrix(rng, n, lo=-9, hi=9):
    return [[rng.randint(lo, hi) for _ in range(n)] for _ in range(n)]


def test_det_matches_sympy():
    rng = random.Random(7)
    for n in range(0, 8):
        for _ in range(20):
            A = rand_matrix(rng, n)
            assert bareiss_det(A) == (sympy.Matrix(A).det() if n else 1)


def test_det_needs_pivoting():
    assert bareiss_det([[0, 1], [1, 0]]) == -1
    assert bareiss_det([[0, 0], [1, 0]]) == 0
    assert bareiss_det([[1, 2, 3], [2, 4, 6], [1, 0, 1]]) == 0


def test_det_big_integers():
    A = [[10**30, 1], [1, 10**30]]
    assert bareiss_det(A) == 10**60 - 1


def test_leading_minors():
    rng = random.Random(3)
    for _ in range(50):
        A = rand_matrix(rng, 5, -2, 2)
        expected = [sympy.Matrix([r[:k] for r in A[:k]]).det() for k in range(1, 6)]
        assert leading_principal_minors(A) == expected


def test_charpoly_matches_sympy():
    rng = random.Random(11)
    x = sympy.Symbol("x")
    for n in range(1, 7):
        A = rand_matrix(rng, n)
        assert charpoly(A) == [int(c) for c in sympy.Matrix(A).charpoly(x).all_coeffs()]


def test_inertia_matches_eigenvalues():
    rng = random.Random(5)
    for n in range(1, 8):
        for _ in range(20):
            B = rand_matrix(rng, n, -4, 4)
            A = [[B[i][j] + B[j][i] for j in range(n)] for i in range(n)]
            ev = np.linalg.eigvalsh(np.array(A, dtype=float))
            pos, neg, zero = inertia(A)
            assert pos + neg + zero == n
            if np.min(np.abs(ev)) > 1e-6:
                assert (pos, neg) == (int((ev > 0).sum()), int((ev < 0).sum()))


def test_inertia_singular_and_definite():
    assert inertia([[1, 1], [1, 1]]) == (1, 0, 1)
    assert inertia([[2, -1], [-1, 2]]) == (2, 0, 0)
    assert is_positive_definite([[2, -1], [-1, 2]])
    assert not is_positive_definite([[-1, 2], [2, -1]])
    with pytest.raises(ValueError):
        inertia([[1, 2], [0, 1]])
