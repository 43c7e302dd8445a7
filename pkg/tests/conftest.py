import pytest

from noethops.diffops import DiffOp, OperatorSet
from noethops.groebner import IdealHandle, RingSpec
from noethops.poly import Poly

XY = ["x", "y"]


def P(text: str, names=XY) -> Poly:
    from noethops.poly import parse_polynomial

    return parse_polynomial(text, names)


def ideal(*texts: str, names=XY) -> IdealHandle:
    return IdealHandle(len(names), [P(t, names) for t in texts])


@pytest.fixture
def ring_x2() -> RingSpec:
    """Q[x,y] with defining ideal (x^2), radical (x)."""
    rad = ideal("x")
    return RingSpec(tuple(XY), ideal("x^2"), rad, (rad,))


@pytest.fixture
def ring_x3() -> RingSpec:
    rad = ideal("x")
    return RingSpec(tuple(XY), ideal("x^3"), rad, (rad,))


@pytest.fixture
def ops_pi_dx(ring_x2) -> OperatorSet:
    """The projection and the projected first derivative, into R_red."""
    return OperatorSet([DiffOp.identity(2), DiffOp.partial(2, (1, 0))], ring_x2.rad)
