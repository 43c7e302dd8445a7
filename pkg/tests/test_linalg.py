import random
from fractions import Fraction

from noethops import linalg
from noethops.poly import Poly, RationalFunction


def test_rref_simple():
    rows = [[Fraction(2), Fraction(4)], [Fraction(1), Fraction(2)]]
    reduced, pivots = linalg.rref(rows, 2)
    assert pivots == [0]
    assert reduced == [[Fraction(1), Fraction(2)]]


def test_kernel_matches_rank_nullity():
    rng = random.Random(3)
    for _ in range(25):
        nrows, ncols = rng.randint(1, 5), rng.randint(1, 6)
        rows = [[Fraction(rng.randint(-3, 3)) for _ in range(ncols)] for _ in range(nrows)]
        r = linalg.rank(rows, ncols)
        kernel = linalg.kernel_basis(rows, ncols)
        assert len(kernel) == ncols - r
        for v in kernel:
            for row in rows:
                assert sum(a * b for a, b in zip(row, v)) == 0


def test_row_space_membership():
    rows = [[Fraction(1), Fraction(0), Fraction(1)], [Fraction(0), Fraction(1), Fraction(1)]]
    reduced, pivots = linalg.rref(rows, 3)
    assert linalg.in_row_space(reduced, pivots, [Fraction(1), Fraction(1), Fraction(2)])
    assert not linalg.in_row_space(reduced, pivots, [Fraction(0), Fraction(0), Fraction(1)])


def test_rref_over_rational_functions():
    y = Poly.variable(1, 0)
    one = Poly.one(1)
    rf = lambda num, den=None: RationalFunction(num, den)
    rows = [[rf(y), rf(one)], [rf(y * y), rf(y)]]
    reduced, pivots = linalg.rref(rows, 2)
    assert pivots == [0]
    kernel = linalg.kernel_basis(rows, 2, one=rf(one), zero=rf(Poly.zero(1)))
    assert len(kernel) == 1
    v = kernel[0]
    assert rows[0][0] * v[0] + rows[0][1] * v[1] == rf(Poly.zero(1))
