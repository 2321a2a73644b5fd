import math
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings, strategies as st

from adehirota.cyclo import (
    CycPoly,
    cyclotomic_polynomial,
    embed,
    field,
    is_rational,
    solve_kernel,
    sqrt_rational,
    to_complex,
)

from conftest import cox_of


def test_cyclotomic_polynomials():
    assert cyclotomic_polynomial(1) == (-1, 1)
    assert cyclotomic_polynomial(4) == (1, 0, 1)
    phi30 = cyclotomic_polynomial(30)
    assert len(phi30) - 1 == 8
    # Phi_30 divides x^30 - 1: the root eta satisfies eta^30 = 1 in the reduced field
    F = field(30)
    assert F.gen() ** 30 == F.one()


def test_defining_relation_and_inverse():
    F = field(3)
    eta = F.gen()
    assert eta ** 3 == 1
    assert (1 - eta).inv() == (1 - eta ** 2) * Fraction(1, 3)
    assert (1 - eta) ** -2 * (1 - eta) ** 2 == 1
    with pytest.raises(ZeroDivisionError):
        F.zero().inv()


def test_is_rational():
    F = field(3)
    assert is_rational(F.rational(Fraction(5, 3))) == Fraction(5, 3)
    assert is_rational(F.gen()) is None
    eta = F.gen()
    assert is_rational((1 - eta) * (1 - eta ** 2)) == 3


def test_to_complex():
    assert abs(to_complex(1 + field(2).gen(), 30)) < mpmath.mpf(10) ** -30
    with mpmath.workdps(40):
        assert abs(to_complex(field(4).gen(), 30) - 1j) < mpmath.mpf(10) ** -30
        eta = field(3).gen()
        assert abs(to_complex((1 - eta) * (1 - eta ** 2), 30) - 3) < mpmath.mpf(10) ** -30
    with pytest.raises(ValueError):
        to_complex(eta, 10)


def test_conductor_mismatch():
    with pytest.raises(ValueError):
        field(3).gen() + field(4).gen()


def test_galois_sanity():
    for n in (5, 8, 12, 30):
        F = field(n)
        prod = CycPoly(F, [F.one()])
        for k in range(1, n + 1):
            if math.gcd(k, n) == 1:
                prod = prod * CycPoly(F, [-F.root(k), F.one()])
        assert [c.is_rational() for c in prod.coeffs] == [Fraction(c) for c in cyclotomic_polynomial(n)]


def test_embedding_is_homomorphism():
    a, b = field(6).gen() + 2, field(6).gen() ** 5 - Fraction(1, 3)
    F = field(12)
    assert embed(a * b, F) == embed(a, F) * embed(b, F)
    assert embed(field(6).gen(), F) == F.gen() ** 2


def test_sqrt_rational():
    for r, n in [(2, 8), (3, 12), (-5, 20), (Fraction(3, 2), 24), (-1, 4)]:
        s = sqrt_rational(r, field(n))
        assert s * s == r


def test_kernel_examples():
    F = field(3)
    ident = [[F.one(), F.zero()], [F.zero(), F.one()]]
    assert solve_kernel(ident) == []
    cox = cox_of("A_2")
    eta = F.gen()
    A = [[F.rational(cox.M[i][j]) - (eta if i == j else 0) for j in range(2)] for i in range(2)]
    (v,) = solve_kernel(A)
    Mv = [sum((cox.M[i][j] * v[j] for j in range(2)), F.zero()) for i in range(2)]
    assert Mv == [eta * x for x in v]


def test_kernel_d4_minus_one():
    cox = cox_of("D_4")
    F = field(6)
    A = [[F.rational(cox.M[i][j] + (1 if i == j else 0)) for j in range(4)] for i in range(4)]
    ker = solve_kernel(A)
    assert len(ker) == 2
    for v in ker:
        assert all(sum((A[i][j] * v[j] for j in range(4)), F.zero()).is_zero for i in range(4))


small = st.lists(st.fractions(min_value=-3, max_value=3, max_denominator=5), min_size=4, max_size=4)


@settings(max_examples=40, deadline=None)
@given(small, small)
def test_ring_homomorphism_fuzz(x, y):
    F = field(5)
    a, b = F.element(x), F.element(y)
    with mpmath.workdps(40):
        lhs = to_complex(a * b, 30)
        rhs = to_complex(a, 30) * to_complex(b, 30)
        assert abs(lhs - rhs) < mpmath.mpf(10) ** -25


@settings(max_examples=40, deadline=None)
@given(small)
def test_field_axioms_fuzz(x):
    F = field(5)
    a = F.element(x)
    if not a.is_zero:
        assert a * a.inv() == 1
    assert a + (-a) == 0
    assert a.conj().conj() == a
    assert F.element(a.coeffs) == a  # reduction idempotent
