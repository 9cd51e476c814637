"""The integral cohomology ring of a simply connected twistor space over nCP².

The ring is Z[x_1..x_n, w] modulo the relations

    x_i x_j        (i != j)
    x_i^2 - x_j^2
    w^2 + w(x_1 + ... + x_n) + x_1^2

truncated above degree 6 (top class H^6 = Z, so additionally x_1^3 = 0; the
monomial w*x_1^2 generates the top).  The truncation is an independent
relation only when n = 1 — for n >= 2 it already follows, via
x_2(x_1 x_2) - x_1(x_2^2 - x_1^2) = x_1^3.  Each graded piece gets a fixed
basis:

    H^0: 1
    H^2: x_1, ..., x_n, w                -> coeffs (a_1..a_n, b)
    H^4: w*x_1, ..., w*x_n, x_1^2        -> coeffs (c_1..c_n, d)
    H^6: w*x_1^2                         -> coeffs (e,)

The normalization is fixed by the geometry of real twistor fibres: the fibre
class is dual to -x_1^2, which forces the top monomial w*x_1^2 to evaluate
to -1 against the fundamental class.  All consistency anchors (c_1^3,
c_1.c_2, the cube of the half-canonical class) are asserted in tests against
this single choice.

Everything is exact integer arithmetic on immutable values.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

from . import linalg
from .errors import DegreeError

_BASIS_LEN = {0: lambda n: 1, 2: lambda n: n + 1, 4: lambda n: n + 1, 6: lambda n: 1}


@dataclass(frozen=True)
class CohomologyClass:
    """An element of one graded piece of H*(Z, Z).

    >>> w(2) @ w(2)
    CohomologyClass(n=2, degree=4, coeffs=(-1, -1, -1))
    >>> evaluate(w(4) @ w(4) @ w(4))
    -3
    """

    n: int
    degree: int
    coeffs: tuple[int, ...]

    def __post_init__(self):
        if self.n < 1:
            raise DegreeError("n must be a positive integer")
        if self.degree not in _BASIS_LEN:
            raise DegreeError(f"degree must be one of 0,2,4,6, got {self.degree}")
        expected = _BASIS_LEN[self.degree](self.n)
        if len(self.coeffs) != expected:
            raise DegreeError(
                f"degree-{self.degree} class over n={self.n} needs "
                f"{expected} coefficients, got {len(self.coeffs)}"
            )
        object.__setattr__(self, "coeffs", tuple(int(c) for c in self.coeffs))

    # -- linear structure ------------------------------------------------
    def _check_compatible(self, other):
        if not isinstance(other, CohomologyClass):
            raise TypeError("expected a CohomologyClass")
        if self.n != other.n:
            raise DegreeError("classes of different n never combine")

    def __add__(self, other):
        self._check_compatible(other)
        if self.degree != other.degree:
            raise DegreeError("cannot add classes of different degree")
        return CohomologyClass(
            self.n, self.degree, tuple(a + b for a, b in zip(self.coeffs, other.coeffs))
        )

    def __sub__(self, other):
        return self + (-1) * other

    def __neg__(self):
        return (-1) * self

    def __rmul__(self, k):
        if not isinstance(k, int):
            return NotImplemented
        return CohomologyClass(self.n, self.degree, tuple(k * c for c in self.coeffs))

    def __mul__(self, k):
        return self.__rmul__(k)

    def __matmul__(self, other):
        """``a @ b`` is the cup product."""
        return cup(self, other)

    def is_zero(self):
        return all(c == 0 for c in self.coeffs)

    def __str__(self):
        names = _basis_names(self.n, self.degree)
        terms = []
        for c, name in zip(self.coeffs, names):
            if c == 0:
                continue
            if name == "1":
                terms.append(f"{c}")
            elif c == 1:
                terms.append(name)
            elif c == -1:
                terms.append(f"-{name}")
            else:
                terms.append(f"{c}*{name}")
        if not terms:
            return "0"
        out = terms[0]
        for t in terms[1:]:
            out += f" - {t[1:]}" if t.startswith("-") else f" + {t}"
        return out


def _basis_names(n, degree):
    if degree == 0:
        return ("1",)
    if degree == 2:
        return tuple(f"x{i}" for i in range(1, n + 1)) + ("w",)
    if degree == 4:
        return tuple(f"w*x{i}" for i in range(1, n + 1)) + ("x1^2",)
    return ("w*x1^2",)


# -- constructors ---------------------------------------------------------

def zero(n, degree):
    return CohomologyClass(n, degree, (0,) * _BASIS_LEN[degree](n))


def scalar(n, k):
    return CohomologyClass(n, 0, (k,))


def x(n, i):
    """The generator x_i, 1-based."""
    if not 1 <= i <= n:
        raise DegreeError(f"x{i} does not exist for n={n}")
    coeffs = [0] * (n + 1)
    coeffs[i - 1] = 1
    return CohomologyClass(n, 2, tuple(coeffs))


def w(n):
    return CohomologyClass(n, 2, (0,) * n + (1,))


def c1_class(n):
    """First Chern class 4w + 2*sum(x_i), in degree 2."""
    return CohomologyClass(n, 2, (2,) * n + (4,))


def c2_class(n):
    """Second Chern class -6*x_1^2, in degree 4."""
    return CohomologyClass(n, 4, (0,) * n + (-6,))


def fundamental_class(n):
    """The half-canonical class 2w + sum(x_i); twice it is c_1.

    >>> fundamental_class(4).coeffs
    (1, 1, 1, 1, 2)
    """
    result = CohomologyClass(n, 2, (1,) * n + (2,))
    assert (2 * result).coeffs == c1_class(n).coeffs
    return result


# -- ring structure -------------------------------------------------------

def cup(a: CohomologyClass, b: CohomologyClass) -> CohomologyClass:
    """Cup product, reduced to the fixed basis.

    Rewrite rules: x_i x_j = 0 (i != j); x_i^2 = x_1^2;
    w^2 = -sum_j(w x_j) - x_1^2; w(w x_i) = -w x_1^2;
    x_j (w x_i) = w x_1^2 if i = j else 0; w x_1^2 stays; x_i x_1^2 = 0.
    """
    if not isinstance(a, CohomologyClass) or not isinstance(b, CohomologyClass):
        raise TypeError("cup expects two CohomologyClass values")
    if a.n != b.n:
        raise DegreeError("mismatched n")
    total = a.degree + b.degree
    if total > 6:
        raise DegreeError(f"cup product of degrees {a.degree}+{b.degree} exceeds 6")
    n = a.n
    if a.degree == 0:
        return a.coeffs[0] * b
    if b.degree == 0:
        return b.coeffs[0] * a
    if a.degree == 2 and b.degree == 2:
        *av, ab = a.coeffs
        *bv, bb = b.coeffs
        c = tuple(av[i] * bb + bv[i] * ab - ab * bb for i in range(n))
        d = sum(av[i] * bv[i] for i in range(n)) - ab * bb
        return CohomologyClass(n, 4, c + (d,))
    if {a.degree, b.degree} == {2, 4}:
        two, four = (a, b) if a.degree == 2 else (b, a)
        *av, ab = two.coeffs
        *cv, cd = four.coeffs
        e = sum(av[i] * cv[i] for i in range(n)) - ab * sum(cv) + ab * cd
        return CohomologyClass(n, 6, (e,))
    raise DegreeError(f"no product defined for degrees {a.degree} and {b.degree}")


def evaluate(c: CohomologyClass) -> int:
    """Pair a degree-6 class with the fundamental homology class.

    The basis monomial w*x_1^2 evaluates to -1 (the unique normalization
    under which real twistor fibres, dual to -x_1^2, have degree +1).
    """
    if not isinstance(c, CohomologyClass):
        raise TypeError("expected a CohomologyClass")
    if c.degree != 6:
        raise DegreeError(f"evaluate needs a degree-6 class, got degree {c.degree}")
    return -c.coeffs[0]


def degree_map(c: CohomologyClass) -> int:
    """Degree of the corresponding line bundle on a real twistor line.

    Sends each x_i to 0 and w to 1, i.e. returns the w-coefficient.
    """
    if not isinstance(c, CohomologyClass):
        raise TypeError("expected a CohomologyClass")
    if c.degree != 2:
        raise DegreeError(f"degree_map needs a degree-2 class, got degree {c.degree}")
    return c.coeffs[-1]


# -- derived invariants ----------------------------------------------------

class ChernData(NamedTuple):
    c1_cubed: int
    c1_c2: int
    c3: int


def chern_numbers(n: int) -> ChernData:
    """Chern numbers (c_1^3, c_1 c_2, c_3) = (16(4-n), 24, 2(n+2)).

    The first two are also recomputed through the ring and asserted equal;
    c_3 lives in odd-degree data the ring model does not carry, so the
    closed form is authoritative.
    """
    if n < 1:
        raise DegreeError("n must be a positive integer")
    data = ChernData(16 * (4 - n), 24, 2 * (n + 2))
    c1 = c1_class(n)
    assert evaluate(cup(c1, cup(c1, c1))) == data.c1_cubed
    assert evaluate(cup(c1, c2_class(n))) == data.c1_c2
    return data


class PairingData(NamedTuple):
    matrix: tuple[tuple[int, ...], ...]
    det: int


def pairing_matrix(n: int) -> PairingData:
    """Matrix of (alpha -> alpha cup s) on H^2, s = 2w + sum(x_i).

    Row i is the image of the i-th H^2 basis vector (x_1..x_n, w) written in
    the H^4 basis (w x_1..w x_n, x_1^2); with this row convention the matrix
    is

        ( 2 0 .. 0 | 1 )
        ( 0 2 .. 0 | 1 )        and the signed determinant is
        ( ......... | . )       2^(n-1) * (n - 4).
        ( 0 0 .. 2 | 1 )
        (-1 -1 .. -1|-2 )

    The determinant is found by fraction-free elimination, never floats.
    """
    if n < 1:
        raise DegreeError("n must be a positive integer")
    s = fundamental_class(n)
    basis = [x(n, i) for i in range(1, n + 1)] + [w(n)]
    matrix = tuple(cup(alpha, s).coeffs for alpha in basis)
    det = linalg.bareiss_determinant(matrix)
    assert abs(det) == 2 ** (n - 1) * abs(n - 4)
    return PairingData(matrix, det)


def pairing_kernel(n: int):
    """Primitive integer generators of {alpha in H^2 : alpha cup s = 0}.

    Empty unless n = 4, where the kernel is spanned by the half-canonical
    class itself, coordinates (1, 1, 1, 1, 2).
    """
    matrix, _ = pairing_matrix(n)
    return tuple(linalg.left_nullspace(matrix))


def euler_char_fundamental(n: int, m: int) -> int:
    """chi of the m-th power of the half-canonical bundle.

    Riemann-Roch on the twistor space gives m + 1 + 2(4-n)*C(m+2, 3);
    for n = 4 this collapses to m + 1.
    """
    if n < 1:
        raise DegreeError("n must be a positive integer")
    if m < 0:
        raise DegreeError("m must be non-negative")
    return m + 1 + 2 * (4 - n) * math.comb(m + 2, 3)


def vanishing_profile(line_bundle_degree: int) -> frozenset[int]:
    """Cohomology indices forced to vanish for a line bundle of given degree.

    On a twistor space of positive type: h^0 dies for degree <= -1, h^1 for
    degree <= -2, h^2 for degree >= -2, h^3 for degree >= -3.

    >>> sorted(vanishing_profile(-2))
    [0, 1, 2, 3]
    >>> sorted(vanishing_profile(0))
    [2, 3]
    """
    d = int(line_bundle_degree)
    out = set()
    if d <= -1:
        out.add(0)
    if d <= -2:
        out.add(1)
    if d >= -2:
        out.add(2)
    if d >= -3:
        out.add(3)
    return frozenset(out)
