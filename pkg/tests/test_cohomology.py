"""Ring tests: an independent polynomial-quotient oracle plus anchors.

The oracle rebuilds H*(Z) as Q[x1..xn, w] modulo the ideal

    (x_i x_j for i<j,  x_i^2 - x_1^2,  w^2 + w*sum(x_i) + x_1^2,  x_1^3)

and checks every cup product against Groebner normal forms.  The x_1^3
generator is the top-degree truncation; for n >= 2 it is already a
consequence of the quadratic relations, but for n = 1 it is independent
and must be imposed for H^6 to be a single copy of Z.
"""

import random

import pytest
import sympy

from twistor4.cohomology import (
    c1_class,
    c2_class,
    chern_numbers,
    CohomologyClass,
    cup,
    degree_map,
    euler_char_fundamental,
    evaluate,
    fundamental_class,
    pairing_kernel,
    pairing_matrix,
    scalar,
    vanishing_profile,
    w,
    x,
    zero,
)
from twistor4.errors import DegreeError


def _ring(n):
    gens = sympy.symbols(f"x1:{n + 1}") + (sympy.Symbol("w"),)
    xs, ww = gens[:-1], gens[-1]
    ideal = []
    for i in range(n):
        for j in range(i + 1, n):
            ideal.append(xs[i] * xs[j])
    for i in range(1, n):
        ideal.append(xs[i] ** 2 - xs[0] ** 2)
    ideal.append(ww**2 + ww * sum(xs) + xs[0] ** 2)
    ideal.append(xs[0] ** 3)
    basis = sympy.groebner(ideal, *gens, order="grevlex")
    return xs, ww, basis


def _nf(basis, expr):
    return basis.reduce(sympy.expand(expr))[1]


def _to_poly(cls, xs, ww):
    n = cls.n
    if cls.degree == 0:
        return sympy.Integer(cls.coeffs[0])
    if cls.degree == 2:
        return sum(cls.coeffs[i] * xs[i] for i in range(n)) + cls.coeffs[n] * ww
    if cls.degree == 4:
        return (
            sum(cls.coeffs[i] * ww * xs[i] for i in range(n))
            + cls.coeffs[n] * xs[0] ** 2
        )
    return cls.coeffs[0] * ww * xs[0] ** 2


def _random_class(rng, n, degree):
    length = 1 if degree in (0, 6) else n + 1
    return CohomologyClass(
        n, degree, tuple(rng.randint(-5, 5) for _ in range(length))
    )


@pytest.mark.parametrize("n", [2, 4])
def test_cup_matches_groebner_oracle(n):
    xs, ww, basis = _ring(n)
    rng = random.Random(1000 + n)
    combos = [(2, 2), (2, 4), (4, 2), (0, 2), (2, 0), (0, 4), (0, 6), (0, 0)]
    for trial in range(150):
        da, db = combos[trial % len(combos)]
        a = _random_class(rng, n, da)
        b = _random_class(rng, n, db)
        product = cup(a, b)
        assert product.degree == da + db
        diff = _to_poly(a, xs, ww) * _to_poly(b, xs, ww) - _to_poly(
            product, xs, ww
        )
        assert _nf(basis, diff) == 0, (a, b, product)


def test_triple_products_match_groebner_oracle():
    n = 4
    xs, ww, basis = _ring(n)
    rng = random.Random(77)
    for _ in range(60):
        a = _random_class(rng, n, 2)
        b = _random_class(rng, n, 2)
        c = _random_class(rng, n, 2)
        product = cup(cup(a, b), c)
        diff = (
            _to_poly(a, xs, ww) * _to_poly(b, xs, ww) * _to_poly(c, xs, ww)
            - _to_poly(product, xs, ww)
        )
        assert _nf(basis, diff) == 0


@pytest.mark.parametrize("n,implied", [(1, False), (2, True), (4, True)])
def test_top_truncation_independent_only_for_one_summand(n, implied):
    # x2(x1 x2) - x1(x2^2 - x1^2) = x1^3, so for n >= 2 the truncation
    # follows from the quadratic relations; for n = 1 it must be imposed
    gens = sympy.symbols(f"x1:{n + 1}") + (sympy.Symbol("w"),)
    xs, ww = gens[:-1], gens[-1]
    ideal = []
    for i in range(n):
        for j in range(i + 1, n):
            ideal.append(xs[i] * xs[j])
    for i in range(1, n):
        ideal.append(xs[i] ** 2 - xs[0] ** 2)
    ideal.append(ww**2 + ww * sum(xs) + xs[0] ** 2)
    partial = sympy.groebner(ideal, *gens, order="grevlex")
    assert (partial.reduce(xs[0] ** 3)[1] == 0) == implied


def test_cup_commutative_and_associative_seeded():
    rng = random.Random(20260816)
    for _ in range(500):
        n = rng.randint(1, 5)
        a = _random_class(rng, n, 2)
        b = _random_class(rng, n, 2)
        c = _random_class(rng, n, 2)
        assert cup(a, b).coeffs == cup(b, a).coeffs
        assert cup(cup(a, b), c).coeffs == cup(a, cup(b, c)).coeffs


def test_matmul_is_cup():
    a, b = w(3), x(3, 2)
    assert (a @ b).coeffs == cup(a, b).coeffs


@pytest.mark.parametrize("n", range(1, 9))
def test_w_cubed_evaluates_to_one_minus_n(n):
    assert evaluate(w(n) @ w(n) @ w(n)) == 1 - n


def test_generator_relations():
    n = 4
    assert cup(x(n, 1), x(n, 2)).is_zero()
    sq1 = cup(x(n, 1), x(n, 1))
    sq3 = cup(x(n, 3), x(n, 3))
    assert sq1.coeffs == sq3.coeffs
    assert cup(cup(x(n, 1), x(n, 1)), x(n, 1)).is_zero()
    # w^2 + w sum(x_i) + x_1^2 == 0
    total = cup(w(n), w(n))
    for i in range(1, n + 1):
        total = total + cup(w(n), x(n, i))
    total = total + cup(x(n, 1), x(n, 1))
    assert total.is_zero()


@pytest.mark.parametrize("n", range(1, 9))
def test_chern_numbers_closed_forms(n):
    data = chern_numbers(n)
    assert data == (16 * (4 - n), 24, 2 * (n + 2))
    c1, c2 = c1_class(n), c2_class(n)
    assert evaluate(c1 @ c1 @ c1) == data.c1_cubed
    assert evaluate(cup(c1, c2)) == data.c1_c2


@pytest.mark.parametrize("n", range(1, 9))
def test_fundamental_class_is_half_of_c1(n):
    f = fundamental_class(n)
    assert (2 * f).coeffs == c1_class(n).coeffs
    assert evaluate(f @ f @ f) == 2 * (4 - n)
    assert degree_map(f) == 2


def test_degree_map_reads_fibre_degree():
    assert degree_map(w(4)) == 1
    assert degree_map(x(4, 2)) == 0
    with pytest.raises(DegreeError):
        degree_map(scalar(4, 1))


@pytest.mark.parametrize("n", range(1, 11))
def test_pairing_determinant_closed_form(n):
    matrix, det = pairing_matrix(n)
    assert abs(det) == 2 ** (n - 1) * abs(n - 4)
    assert det == sympy.Matrix([list(r) for r in matrix]).det()


def test_pairing_matrix_layout_small_n():
    matrix, det = pairing_matrix(2)
    assert matrix == ((2, 0, 1), (0, 2, 1), (-1, -1, -2))
    assert det == -4


def test_pairing_kernel_only_at_four():
    assert pairing_kernel(4) == ((1, 1, 1, 1, 2),)
    for n in (1, 2, 3, 5, 6):
        assert pairing_kernel(n) == ()


def test_kernel_vector_kills_the_pairing():
    matrix, _ = pairing_matrix(4)
    v = pairing_kernel(4)[0]
    for j in range(len(matrix[0])):
        assert sum(v[i] * matrix[i][j] for i in range(len(matrix))) == 0


def test_euler_char_fundamental():
    for m in range(0, 51):
        assert euler_char_fundamental(4, m) == m + 1
    assert euler_char_fundamental(4, 5) == 6
    for n in range(1, 9):
        for m in range(0, 12):
            assert (
                euler_char_fundamental(n, m)
                == m + 1 + 2 * (4 - n) * ((m + 2) * (m + 1) * m) // 6
            )
    with pytest.raises(DegreeError):
        euler_char_fundamental(0, 1)
    with pytest.raises(DegreeError):
        euler_char_fundamental(4, -1)


def test_vanishing_profile_bands():
    assert vanishing_profile(-4) == frozenset({0, 1})
    assert vanishing_profile(-3) == frozenset({0, 1, 3})
    assert vanishing_profile(-2) == frozenset({0, 1, 2, 3})
    assert vanishing_profile(-1) == frozenset({0, 2, 3})
    assert vanishing_profile(0) == frozenset({2, 3})
    assert vanishing_profile(7) == frozenset({2, 3})


def test_cup_degree_overflow_errors():
    n = 3
    deg4 = cup(w(n), w(n))
    with pytest.raises(DegreeError):
        cup(deg4, deg4)
    top = cup(deg4, w(n))
    with pytest.raises(DegreeError):
        cup(top, w(n))


def test_cup_distinct_n_errors():
    with pytest.raises(DegreeError):
        cup(w(2), w(3))


def test_evaluate_needs_top_degree():
    with pytest.raises(DegreeError):
        evaluate(w(2))
    assert evaluate(CohomologyClass(2, 6, (1,))) == -1


def test_generator_index_bounds():
    with pytest.raises(DegreeError):
        x(3, 0)
    with pytest.raises(DegreeError):
        x(3, 4)


def test_class_validation():
    with pytest.raises(DegreeError):
        CohomologyClass(2, 3, (0, 0, 0))
    with pytest.raises(DegreeError):
        CohomologyClass(2, 2, (1, 2))  # needs n+1 coefficients
    assert zero(2, 4).is_zero()


def test_addition_and_scalar_action():
    a = x(2, 1) + x(2, 2)
    assert a.coeffs == (1, 1, 0)
    assert (3 * a - a).coeffs == (2, 2, 0)
    assert (-a).coeffs == (-1, -1, 0)
    with pytest.raises(DegreeError):
        w(2) + cup(w(2), w(2))


def test_doctests():
    import doctest

    import twistor4.cohomology as mod

    failures, _ = doctest.testmod(mod)
    assert failures == 0
