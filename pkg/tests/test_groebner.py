import random
from fractions import Fraction

import pytest

from noethops.groebner import (
    IdealHandle,
    NotZeroDimensionalError,
    RingSpec,
    buchberger,
    eliminate,
    ideal_equal,
    ideal_intersect,
    ideal_power,
    is_subideal,
    normal_form,
    saturate,
    standard_monomials,
)
from noethops.poly import GrevLex, Poly, monomials_up_to

from conftest import P, ideal

XY = ["x", "y"]
XYZ = ["x", "y", "z"]


# --- buchberger ----------------------------------------------------------


def test_gb_single_generator():
    assert buchberger([P("x")]) == [P("x")]


def test_gb_circle_line():
    gb = buchberger([P("x^2 + y^2 - 1"), P("x - y")])
    assert gb == [P("x - y"), P("y^2 - 1/2")]


def test_gb_square_of_maximal_already_reduced():
    gb = buchberger([P("x^2"), P("x*y"), P("y^2")])
    assert gb == [P("y^2"), P("x*y"), P("x^2")]


def test_gb_zero_ideal():
    assert buchberger([Poly.zero(2)]) == []


def test_gb_byte_stable_across_runs():
    gens = [P("x^2 + y^2 - 1"), P("x*y - 2"), P("x - y^3")]
    first = [g.format(XY) for g in IdealHandle(2, gens).gb]
    second = [g.format(XY) for g in IdealHandle(2, list(gens)).gb]
    assert first == second


def _naive_groebner(gens, order):
    """Criterion-free Buchberger; the reduced basis is unique, so this is an
    independent oracle for the optimized implementation."""
    from noethops.groebner import _interreduce, _monic, _reduce_basis, _s_polynomial

    basis = _interreduce(list(gens), order)
    if not basis:
        return []
    pairs = [(i, j) for j in range(len(basis)) for i in range(j)]
    k = 0
    while k < len(pairs):
        i, j = pairs[k]
        k += 1
        r = normal_form(_s_polynomial(basis[i], basis[j], order), basis, order)
        if r:
            basis.append(_monic(r, order))
            pairs.extend((i2, len(basis) - 1) for i2 in range(len(basis) - 1))
    return _reduce_basis(basis, order)


def test_gb_agrees_with_naive_buchberger():
    rng = random.Random(400)
    order = GrevLex()
    for _ in range(12):
        monos = monomials_up_to(2, 3)
        gens = []
        for _ in range(rng.randint(2, 3)):
            terms = {
                monos[rng.randrange(len(monos))]: Fraction(rng.randint(-3, 3)) for _ in range(3)
            }
            gens.append(Poly(2, terms))
        assert buchberger(gens, order) == _naive_groebner(gens, order)


# --- normal form ----------------------------------------------------------


def test_nf_examples():
    assert ideal("x^2").normal_form(P("x^2")) == Poly.zero(2)
    assert ideal("x^2 - y").normal_form(P("x^2*y")) == P("y^2")
    assert ideal("x").normal_form(P("y")) == P("y")


def _random_poly(rng, nvars, deg):
    monos = monomials_up_to(nvars, deg)
    terms = {}
    for _ in range(rng.randint(1, 4)):
        terms[monos[rng.randrange(len(monos))]] = Fraction(rng.randint(-4, 4))
    return Poly(nvars, terms)


def _random_pool(rng, count=12):
    pool = []
    names = XYZ
    while len(pool) < count:
        gens = [_random_poly(rng, 3, rng.randint(1, 3)) for _ in range(rng.randint(2, 3))]
        handle = IdealHandle(3, gens)
        if handle.gens:
            pool.append(handle)
    return pool


def test_membership_linearity_idempotence_randomized():
    rng = random.Random(2024)
    pool = _random_pool(rng)
    for _ in range(120):
        I = pool[rng.randrange(len(pool))]
        f = Poly.zero(3)
        for g in I.gens:
            f = f + _random_poly(rng, 3, 3) * g
        assert not I.normal_form(f)
        a, b = _random_poly(rng, 3, 6), _random_poly(rng, 3, 6)
        assert I.normal_form(a + b) == I.normal_form(a) + I.normal_form(b)
        assert I.normal_form(I.normal_form(a)) == I.normal_form(a)


# --- ideal arithmetic -------------------------------------------------------


def test_power_examples():
    assert ideal_equal(ideal_power(ideal("x", "y"), 2), ideal("x^2", "x*y", "y^2"))
    assert ideal_equal(ideal_power(ideal("y"), 3), ideal("y^3"))
    assert ideal_power(ideal("x - y"), 0).contains_one()


def test_power_products_land_in_power_sums():
    I = ideal("x + y", "x*y")
    for m in (1, 2):
        for n in (1, 2):
            prod_gens = [a * b for a in ideal_power(I, m).gens for b in ideal_power(I, n).gens]
            target = ideal_power(I, m + n)
            assert all(target.contains(g) for g in prod_gens)


def test_eliminate_examples():
    E = eliminate(IdealHandle(3, [P("t*x - 1", ["t", "x", "y"]), P("y", ["t", "x", "y"])]), [0])
    assert len(E.gens) == 1 and E.gens[0] == P("y", ["t", "x", "y"])
    I = ideal("x - y")
    assert eliminate(I, []) is I
    assert eliminate(ideal("x"), [0]).is_zero()


def test_saturate_examples():
    assert ideal_equal(saturate(ideal("x^2*y"), P("x")), ideal("y"))
    assert ideal_equal(saturate(ideal("x"), P("y")), ideal("x"))
    assert saturate(IdealHandle(2, []), P("y")).is_zero()
    with pytest.raises(ValueError):
        saturate(ideal("x"), Poly.zero(2))


def test_saturate_properties():
    I = ideal("x^2*y", "x*y^2")
    S = saturate(I, P("x"))
    assert is_subideal(I, S)
    assert ideal_equal(saturate(S, P("x")), S)


def test_contains_equal_intersect():
    assert ideal("x^2", "x*y", "y^2").contains(P("x*y"))
    assert ideal_equal(ideal("x", "y"), ideal("y", "x + y"))
    assert ideal_equal(ideal_intersect(ideal("x"), ideal("y")), ideal("x*y"))


def test_intersect_contained_in_both_and_equal_is_equivalence():
    I, J = ideal("x^2", "y"), ideal("x - y")
    K = ideal_intersect(I, J)
    assert is_subideal(K, I) and is_subideal(K, J)
    assert ideal_equal(I, I)
    assert ideal_equal(I, ideal("y", "x^2")) == ideal_equal(ideal("y", "x^2"), I)


# --- standard monomials -----------------------------------------------------


def test_standard_monomials_examples():
    assert standard_monomials(ideal("x^2", "y")) == [(0, 0), (1, 0)]
    assert standard_monomials(ideal("x", "y")) == [(0, 0)]
    assert standard_monomials(ideal("x^2", "x*y", "y^2")) == [(0, 0), (0, 1), (1, 0)]


def test_standard_monomials_rejects_positive_dimension():
    with pytest.raises(NotZeroDimensionalError):
        standard_monomials(ideal("x^2"))


# --- ring presentation -------------------------------------------------------


def test_ringspec_validation():
    rad = ideal("x")
    RingSpec(tuple(XY), ideal("x^2"), rad, (rad,))
    with pytest.raises(ValueError):
        RingSpec(tuple(XY), ideal("y"), rad, (rad,))
    with pytest.raises(ValueError):
        RingSpec(tuple(XY), ideal("x^2*y^2"), ideal("x*y"), (ideal("x"),))


def test_image_in_reduced(ring_x2):
    I = ring_x2.image_in_reduced(ideal("x - y"))
    assert ideal_equal(I, ideal("y"))
