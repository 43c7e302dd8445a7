import itertools
import random

import pytest

from noethops.closures import (
    NewtonPolyhedron,
    NonMonomialIdealError,
    bs_harness,
    monomial_closure_bruteforce_oracle,
    monomial_integral_closure,
    symb_harness,
    symbolic_power,
)
from noethops.groebner import (
    IdealHandle,
    RingSpec,
    ideal_equal,
    ideal_power,
    is_subideal,
)
from noethops.poly import Poly
from noethops.uniformity import find_min_c

from conftest import P, ideal

YZ = ["y", "z"]


def mono_ideal(*exps, nvars=2):
    return IdealHandle(nvars, [Poly.monomial(nvars, e) for e in exps])


def gens_exponents(I):
    return {next(iter(g.terms)) for g in I.gens}


# --- integral closure -----------------------------------------------------------


def test_closure_two_cusps():
    C = monomial_integral_closure(mono_ideal((3, 0), (0, 3)), 1)
    assert gens_exponents(C) == {(3, 0), (2, 1), (1, 2), (0, 3)}


def test_closure_principal_power():
    C = monomial_integral_closure(mono_ideal((2,), nvars=1), 3)
    assert gens_exponents(C) == {(6,)}


def test_closure_already_closed():
    C = monomial_integral_closure(mono_ideal((4, 0), (0, 1)), 1)
    assert gens_exponents(C) == {(4, 0), (0, 1)}


def test_closure_three_variables():
    I = mono_ideal((2, 0, 0), (0, 2, 0), (0, 0, 2), nvars=3)
    C = monomial_integral_closure(I, 1)
    # all degree-2 monomials are integral over the squares of the variables
    assert gens_exponents(C) == {e for e in itertools.product(range(3), repeat=3) if sum(e) == 2}


def test_closure_rejects_nonmonomial():
    with pytest.raises(NonMonomialIdealError):
        monomial_integral_closure(ideal("x + y"), 1)


def test_closure_contains_ideal_and_idempotent():
    for I in (mono_ideal((3, 0), (0, 3)), mono_ideal((2, 1), (1, 3)), mono_ideal((4, 0), (1, 1))):
        C = monomial_integral_closure(I, 1)
        assert is_subideal(I, C)
        assert ideal_equal(monomial_integral_closure(C, 1), C)


def test_closure_of_power_contains_power_of_closure():
    for I in (mono_ideal((3, 0), (0, 3)), mono_ideal((2, 1), (1, 2))):
        for m in (2, 3):
            Cm = monomial_integral_closure(I, m)
            C1m = ideal_power(monomial_integral_closure(I, 1), m)
            assert all(Cm.contains(g) for g in C1m.gens)


def test_closure_oracle_agreement():
    I = mono_ideal((3, 0), (0, 3))
    C = monomial_integral_closure(I, 1)
    for e in gens_exponents(C):
        assert monomial_closure_bruteforce_oracle(I, e, 6)
    poly = NewtonPolyhedron.of([(3, 0), (0, 3)])
    rng = random.Random(13)
    checked = 0
    while checked < 20:
        e = (rng.randrange(6), rng.randrange(6))
        if poly.contains(e):
            continue
        assert not monomial_closure_bruteforce_oracle(I, e, 6)
        checked += 1


def test_oracle_examples():
    I = mono_ideal((3, 0), (0, 3))
    assert monomial_closure_bruteforce_oracle(I, (2, 1), 3)
    assert not monomial_closure_bruteforce_oracle(I, (1, 1), 10)
    assert monomial_closure_bruteforce_oracle(I, (3, 0), 1)


# --- symbolic powers ---------------------------------------------------------------


def test_symbolic_power_of_linear_prime():
    p = mono_ideal((1, 0, 0), (0, 1, 0), nvars=3)
    w = Poly.variable(3, 2)
    assert ideal_equal(symbolic_power(p, 2, w), ideal_power(p, 2))


def test_symbolic_power_principal():
    p = IdealHandle(1, [Poly.variable(1, 0)])
    assert ideal_equal(symbolic_power(p, 3, Poly.one(1)), IdealHandle(1, [Poly.variable(1, 0) ** 3]))


def test_symbolic_power_first_power_and_containment():
    p = mono_ideal((1, 0, 0), (0, 1, 0), nvars=3)
    w = Poly.variable(3, 2)
    assert ideal_equal(symbolic_power(p, 1, w), p)
    for n in (2, 3):
        sp = symbolic_power(p, n, w)
        assert is_subideal(ideal_power(p, n), sp)


def test_symbolic_power_rejects_witness_in_prime():
    p = mono_ideal((1, 0, 0), (0, 1, 0), nvars=3)
    with pytest.raises(ValueError):
        symbolic_power(p, 2, Poly.variable(3, 0))


def test_monomial_curve_prime_symbolic_square_is_strict():
    abc = ["a", "b", "c"]
    p = IdealHandle(3, [P(t, abc) for t in ("b^2 - a*c", "b*c - a^3", "c^2 - a^2*b")])
    sp = symbolic_power(p, 2, P("a", abc))
    sq = ideal_power(p, 2)
    assert is_subideal(sq, sp)
    assert not ideal_equal(sp, sq)


# --- harnesses ------------------------------------------------------------------------


def test_bs_harness_fixture(ring_x2, ops_pi_dx):
    rep = bs_harness(ideal("y^2", "x*y"), ops_pi_dx, ring_x2, 3, 3, 12, ideal_name="J")
    assert [r.c_min for r in rep.rows] == [0, 0, 0]


def test_bs_harness_closed_image_matches_plain_search(ring_x2, ops_pi_dx):
    plain = find_min_c(ideal("y"), ops_pi_dx, ring_x2, 3, 3, 10)
    closed = bs_harness(ideal("y"), ops_pi_dx, ring_x2, 3, 3, 10)
    assert [r.c_min for r in plain.rows] == [r.c_min for r in closed.rows] == [0, 0, 0]


def test_bs_harness_dominates_plain_search(ring_x2, ops_pi_dx):
    for J in (ideal("y^2", "x*y"), ideal("y")):
        plain = find_min_c(J, ops_pi_dx, ring_x2, 3, 3, 10)
        closed = bs_harness(J, ops_pi_dx, ring_x2, 3, 3, 10)
        for a, b in zip(plain.rows, closed.rows):
            assert b.c_min >= a.c_min


def test_bs_harness_rejects_nonmonomial_image(ring_x2, ops_pi_dx):
    with pytest.raises(NonMonomialIdealError):
        bs_harness(ideal("y^2 + y"), ops_pi_dx, ring_x2, 2, 2, 8)


def test_symb_harness_dimension_one_matches_plain(ring_x2, ops_pi_dx):
    rep = symb_harness(ideal("x - y"), ops_pi_dx, ring_x2, 1, Poly.one(2), 3, 3, 12)
    assert [r.c_min for r in rep.rows] == [1, 1, 1]
    assert rep.rows[0].witness == P("y")


def test_symb_harness_two_dimensional_reduced_ring():
    xyz = ["x", "y", "z"]
    rad = IdealHandle(3, [P("x", xyz)])
    ring = RingSpec(tuple(xyz), IdealHandle(3, [P("x^2", xyz)]), rad, (rad,))
    from noethops.diffops import DiffOp, OperatorSet

    ops = OperatorSet([DiffOp.identity(3), DiffOp.partial(3, (1, 0, 0))], rad)
    J = IdealHandle(3, [P("x - y", xyz), P("z", xyz)])
    rep = symb_harness(J, ops, ring, 2, Poly.one(3), 2, 4, 8)
    assert all(r.c_min is not None for r in rep.rows)


def test_symb_harness_rejects_witness_in_image(ring_x2, ops_pi_dx):
    with pytest.raises(ValueError):
        symb_harness(ideal("x - y"), ops_pi_dx, ring_x2, 1, P("y"), 2, 2, 8)
