"""Cross-checks of the exact linear algebra against sympy."""

import random
from fractions import Fraction

import pytest
import sympy

from twistor4.linalg import bareiss_determinant, left_nullspace, nullspace, rank


def _random_matrix(rng, rows, cols, lo=-6, hi=6):
    return [[rng.randint(lo, hi) for _ in range(cols)] for _ in range(rows)]


def test_determinant_matches_sympy():
    rng = random.Random(20260816)
    for _ in range(120):
        n = rng.randint(1, 6)
        m = _random_matrix(rng, n, n)
        assert bareiss_determinant(m) == int(sympy.Matrix(m).det())


def test_determinant_empty_and_nonsquare():
    assert bareiss_determinant([]) == 1
    with pytest.raises(ValueError):
        bareiss_determinant([[1, 2], [3, 4], [5, 6]])


def test_determinant_rational_entries():
    m = [[Fraction(1, 2), Fraction(1, 3)], [Fraction(1, 4), Fraction(1, 5)]]
    assert bareiss_determinant(m) == Fraction(1, 10) - Fraction(1, 12)


def test_rank_matches_sympy():
    rng = random.Random(7)
    for _ in range(120):
        r = rng.randint(1, 5)
        c = rng.randint(1, 5)
        m = _random_matrix(rng, r, c, lo=-3, hi=3)
        assert rank(m) == sympy.Matrix(m).rank()


def test_rank_with_fractions():
    m = [[Fraction(1, 2), 1], [Fraction(1, 4), Fraction(1, 2)]]
    assert rank(m) == 1


def test_nullspace_matches_sympy_dimension_and_membership():
    rng = random.Random(99)
    for _ in range(80):
        r = rng.randint(1, 4)
        c = rng.randint(1, 5)
        m = _random_matrix(rng, r, c, lo=-3, hi=3)
        basis = nullspace(m)
        assert len(basis) == c - sympy.Matrix(m).rank()
        for v in basis:
            image = sympy.Matrix(m) * sympy.Matrix(v)
            assert all(entry == 0 for entry in image)


def test_nullspace_vectors_are_primitive_integer():
    singular = [
        [2, 0, 0, 0, 1],
        [0, 2, 0, 0, 1],
        [0, 0, 2, 0, 1],
        [0, 0, 0, 2, 1],
        [-1, -1, -1, -1, -2],
    ]
    basis = nullspace(singular)
    assert len(basis) == 1
    for v in basis:
        assert all(isinstance(c, int) for c in v)
        from math import gcd
        g = 0
        for c in v:
            g = gcd(g, c)
        assert g == 1
        first = next(c for c in v if c != 0)
        assert first > 0


def test_left_nullspace_is_nullspace_of_transpose():
    m = [[1, 2, 3], [2, 4, 6]]
    for v in left_nullspace(m):
        assert all(
            sum(v[i] * m[i][j] for i in range(len(m))) == 0
            for j in range(len(m[0]))
        )
    assert len(left_nullspace(m)) == 1
