"""Exact arithmetic in cyclotomic fields Q(zeta_n).

Elements are stored in the power basis 1, z, ..., z^(d-1), d = phi(n), reduced
modulo the n-th cyclotomic polynomial.  Coordinates are kept as a tuple of
Python integers over one positive common denominator, so products of 30th
roots of unity never overflow and equality is a tuple comparison.

>>> F = field(3)
>>> eta = F.gen()
>>> (1 - eta) * (1 - eta**2)
CycNum(3, [3])
"""
from __future__ import annotations

import functools
import math
from fractions import Fraction
from numbers import Rational

import mpmath

__all__ = [
    "CycNum",
    "CycPoly",
    "CyclotomicField",
    "cyclotomic_polynomial",
    "embed",
    "field",
    "is_rational",
    "solve_kernel",
    "sqrt_conductor",
    "sqrt_rational",
    "to_complex",
]


# ---------------------------------------------------------------------------
# integer polynomials (constant term first)

def _poly_mul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _poly_divexact(a, b):
    """Quotient of a by b, raising if the division leaves a remainder."""
    a = list(a)
    q = [0] * (len(a) - len(b) + 1)
    lead = b[-1]
    for k in range(len(q) - 1, -1, -1):
        c, r = divmod(a[k + len(b) - 1], lead)
        if r:
            raise ArithmeticError("inexact polynomial division")
        q[k] = c
        if c:
            for j, y in enumerate(b):
                a[k + j] -= c * y
    if any(a[: len(b) - 1]):
        raise ArithmeticError("inexact polynomial division")
    return q


def _divisors(n):
    return [d for d in range(1, n + 1) if n % d == 0]


@functools.lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Phi_n as an integer coefficient tuple, constant term first.

    Uses x^n - 1 = prod_{d | n} Phi_d with exact division.

    >>> cyclotomic_polynomial(4)
    (1, 0, 1)
    """
    if n < 1:
        raise ValueError(f"cyclotomic index must be positive, got {n}")
    p = [-1] + [0] * (n - 1) + [1]
    for d in _divisors(n)[:-1]:
        p = _poly_divexact(p, cyclotomic_polynomial(d))
    return tuple(p)


def _totient(n):
    return sum(1 for k in range(1, n + 1) if math.gcd(k, n) == 1)


# ---------------------------------------------------------------------------
# the field

class CyclotomicField:
    """Q(zeta_n) with zeta_n = exp(2 pi i / n)."""

    def __init__(self, n: int):
        if n < 1:
            raise ValueError(f"conductor must be positive, got {n}")
        self.n = n
        self.phi = cyclotomic_polynomial(n)
        self.degree = len(self.phi) - 1
        # zeta^j reduced, j = 0..n-1
        d = self.degree
        powers = []
        cur = [1] + [0] * (d - 1)
        for _ in range(n):
            powers.append(tuple(cur))
            top = cur[-1]
            cur = [0] + cur[:-1]
            if top:
                for j in range(d):
                    cur[j] -= top * self.phi[j]
        self._powers = powers

    def __repr__(self):
        return f"CyclotomicField({self.n})"

    def __reduce__(self):
        return (field, (self.n,))

    def element(self, coeffs, den=1) -> CycNum:
        """Element from (possibly unreduced) integer or rational coordinates."""
        coeffs = list(coeffs)
        if any(not isinstance(c, int) for c in coeffs) or not isinstance(den, int):
            fr = [Fraction(c) / Fraction(den) for c in coeffs]
            den = math.lcm(1, *(f.denominator for f in fr))
            coeffs = [int(f * den) for f in fr]
        return CycNum._make(self, self._reduce(coeffs), den)

    def zero(self) -> CycNum:
        return CycNum._make(self, (0,) * self.degree, 1)

    def one(self) -> CycNum:
        return self.rational(1)

    def rational(self, r) -> CycNum:
        r = Fraction(r)
        return CycNum._make(self, (r.numerator,) + (0,) * (self.degree - 1), r.denominator)

    def gen(self) -> CycNum:
        """The generator zeta_n."""
        return self.root(1)

    def root(self, k: int) -> CycNum:
        """zeta_n ** k for any integer k."""
        return CycNum._make(self, self._powers[k % self.n], 1)

    def _reduce(self, coeffs):
        d = self.degree
        coeffs = list(coeffs)
        if len(coeffs) <= d:
            return tuple(coeffs) + (0,) * (d - len(coeffs))
        phi = self.phi
        for k in range(len(coeffs) - 1, d - 1, -1):
            c = coeffs[k]
            if c:
                base = k - d
                for j in range(d):
                    if phi[j]:
                        coeffs[base + j] -= c * phi[j]
        return tuple(coeffs[:d])


@functools.lru_cache(maxsize=None)
def field(n: int) -> CyclotomicField:
    """Cached field instance; elements compare equal only within one conductor."""
    return CyclotomicField(n)


# ---------------------------------------------------------------------------
# elements

def _qpoly_trim(p):
    while p and p[-1] == 0:
        p.pop()
    return p


def _qpoly_divmod(a, b):
    a = list(a)
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    lead = b[-1]
    for k in range(len(a) - len(b), -1, -1):
        c = a[k + len(b) - 1] / lead
        q[k] = c
        if c:
            for j, y in enumerate(b):
                a[k + j] -= c * y
    return _qpoly_trim(q), _qpoly_trim(a[: len(b) - 1])


def _qpoly_sub_mul(a, q, b):
    """a - q*b"""
    out = list(a) + [Fraction(0)] * max(0, len(q) + len(b) - 1 - len(a))
    for i, x in enumerate(q):
        for j, y in enumerate(b):
            out[i + j] -= x * y
    return _qpoly_trim(out)


class CycNum:
    """An element of Q(zeta_n).

    Construct through a :class:`CyclotomicField`; arithmetic mixes freely with
    ints and Fractions.
    """

    __slots__ = ("field", "num", "den", "_hash")

    def __init__(self, fld: CyclotomicField, coeffs, den=1):
        other = fld.element(coeffs, den)
        self.field, self.num, self.den, self._hash = fld, other.num, other.den, None

    @classmethod
    def _make(cls, fld, num, den):
        g = math.gcd(den, *num)
        if g != 1:
            num = tuple(c // g for c in num)
            den //= g
        obj = object.__new__(cls)
        obj.field = fld
        obj.num = num
        obj.den = den
        obj._hash = None
        return obj

    # -- inspection
    @property
    def conductor(self) -> int:
        return self.field.n

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(c, self.den) for c in self.num)

    def is_zero(self) -> bool:
        return not any(self.num)

    def __bool__(self):
        return any(self.num)

    def __repr__(self):
        coeffs = [str(c) for c in self.coeffs]
        while len(coeffs) > 1 and coeffs[-1] == "0":
            coeffs.pop()
        return f"CycNum({self.field.n}, [{', '.join(coeffs)}])"

    def __eq__(self, other):
        if isinstance(other, CycNum):
            if other.field.n != self.field.n:
                raise ValueError(f"conductor mismatch: {self.field.n} vs {other.field.n}")
            return self.num == other.num and self.den == other.den
        if isinstance(other, (int, Rational)):
            r = self.is_rational()
            return r is not None and r == other
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.field.n, self.num, self.den))
        return self._hash

    def is_rational(self) -> Fraction | None:
        if any(self.num[1:]):
            return None
        return Fraction(self.num[0], self.den)

    # -- arithmetic
    def _coerce(self, other):
        if isinstance(other, CycNum):
            if other.field.n != self.field.n:
                raise ValueError(f"conductor mismatch: {self.field.n} vs {other.field.n}")
            return other
        if isinstance(other, (int, Rational)):
            return self.field.rational(other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if self.den == other.den:
            return CycNum._make(self.field, tuple(x + y for x, y in zip(self.num, other.num)), self.den)
        a, b = self.den, other.den
        return CycNum._make(self.field, tuple(x * b + y * a for x, y in zip(self.num, other.num)), a * b)

    __radd__ = __add__

    def __neg__(self):
        return CycNum._make(self.field, tuple(-x for x in self.num), self.den)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return CycNum._make(self.field, tuple(x * other for x in self.num), self.den)
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if not any(other.num[1:]):
            c = other.num[0]
            return CycNum._make(self.field, tuple(x * c for x in self.num), self.den * other.den)
        if not any(self.num[1:]):
            c = self.num[0]
            return CycNum._make(self.field, tuple(x * c for x in other.num), self.den * other.den)
        prod = _poly_mul(self.num, other.num)
        return CycNum._make(self.field, self.field._reduce(prod), self.den * other.den)

    __rmul__ = __mul__

    def inv(self) -> CycNum:
        """Multiplicative inverse via the extended Euclidean algorithm against Phi_n."""
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in cyclotomic field")
        r = self.is_rational()
        if r is not None:
            return self.field.rational(1 / r)
        # s*a + t*phi = g, tracking s only
        a = _qpoly_trim([Fraction(c, self.den) for c in self.num])
        b = [Fraction(c) for c in self.field.phi]
        s0, s1 = [Fraction(1)], []
        r0, r1 = a, b
        while r1:
            q, rem = _qpoly_divmod(r0, r1)
            r0, r1 = r1, rem
            s0, s1 = s1, _qpoly_sub_mul(s0, q, s1)
        # r0 is a nonzero constant since Phi_n is irreducible
        if len(r0) != 1:
            raise ArithmeticError("element shares a factor with the cyclotomic polynomial")
        s = [c / r0[0] for c in s0]
        return self.field.element(s)

    def __truediv__(self, other):
        if isinstance(other, (int, Rational)):
            if other == 0:
                raise ZeroDivisionError("division by zero")
            return self * (1 / Fraction(other))
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self * other.inv()

    def __rtruediv__(self, other):
        return self.inv() * other

    def __pow__(self, k: int) -> CycNum:
        if not isinstance(k, int):
            return NotImplemented
        base = self
        if k < 0:
            base, k = self.inv(), -k
        out = self.field.one()
        while k:
            if k & 1:
                out = out * base
            k >>= 1
            if k:
                base = base * base
        return out

    def conj(self) -> CycNum:
        """Image under zeta -> zeta^-1 (complex conjugation)."""
        out = self.field.zero()
        n = self.field.n
        acc = [0] * self.field.degree
        for j, c in enumerate(self.num):
            if c:
                p = self.field._powers[(-j) % n]
                for t in range(len(acc)):
                    acc[t] += c * p[t]
        return CycNum._make(self.field, tuple(acc), self.den) if any(acc) else out

    def to_complex(self, digits: int = 30) -> mpmath.mpc:
        return to_complex(self, digits)


def is_rational(a: CycNum) -> Fraction | None:
    """The value as a Fraction if it lies in Q, else None."""
    return a.is_rational()


def to_complex(a: CycNum, digits: int = 30) -> mpmath.mpc:
    """Complex embedding at zeta_n = exp(2 pi i/n).

    Evaluated with 10 guard digits; the absolute error is bounded by
    sum_j |c_j| * (j + 2) * 10**-(digits + 10), which is far below
    10**-digits for any coordinates this package produces.
    """
    if digits < 15:
        raise ValueError("digits must be at least 15")
    with mpmath.workdps(digits + 10):
        z = mpmath.expjpi(mpmath.mpf(2) / a.field.n)
        acc = mpmath.mpc(0)
        for c in reversed(a.num):
            acc = acc * z + c
        return acc / a.den


def embed(a: CycNum, target: CyclotomicField) -> CycNum:
    """Image of a in a larger cyclotomic field (zeta_n -> zeta_L^(L/n))."""
    n, L = a.field.n, target.n
    if L % n:
        raise ValueError(f"Q(zeta_{n}) is not a subfield of Q(zeta_{L})")
    step = L // n
    acc = [0] * target.degree
    for j, c in enumerate(a.num):
        if c:
            p = target._powers[(j * step) % L]
            for t in range(target.degree):
                acc[t] += c * p[t]
    return CycNum._make(target, tuple(acc), a.den)


# ---------------------------------------------------------------------------
# square roots of rationals

def _squarefree_split(n: int):
    """n = s^2 * d with d squarefree; returns (s, d) for n > 0."""
    s, d, p = 1, 1, 2
    while p * p <= n:
        while n % (p * p) == 0:
            n //= p * p
            s *= p
        if n % p == 0:
            n //= p
            d *= p
        p += 1
    return s, d * n


def _rational_sqrt_parts(r):
    r = Fraction(r)
    if r == 0:
        raise ValueError("square root of zero is not a unit")
    sign = -1 if r < 0 else 1
    s, d = _squarefree_split(abs(r.numerator) * r.denominator)
    # sqrt(r) = (s / den) * sqrt(sign * d)
    return Fraction(s, r.denominator), sign * d


def _odd_primes(d):
    d, out, p = abs(d), [], 3
    while d % 2 == 0:
        d //= 2
    while d > 1:
        while d % p:
            p += 2
        out.append(p)
        d //= p
    return out


def sqrt_conductor(r) -> int:
    """Smallest n with sqrt(r) in Q(zeta_n)."""
    _, d = _rational_sqrt_parts(r)
    if d == 1:
        return 1
    return abs(d) if d % 4 == 1 else 4 * abs(d)


def _legendre(a, p):
    t = pow(a, (p - 1) // 2, p)
    return -1 if t == p - 1 else t


def sqrt_rational(r, fld: CyclotomicField) -> CycNum:
    """A square root of the rational r inside fld.

    Built from quadratic Gauss sums, so the sign is a fixed but otherwise
    arbitrary choice.  Raises if fld does not contain sqrt(r).
    """
    scale, d = _rational_sqrt_parts(r)
    if fld.n % sqrt_conductor(d):
        raise ValueError(f"sqrt({r}) does not lie in Q(zeta_{fld.n})")
    out = fld.rational(scale)
    if d == 1:
        return out
    primes = _odd_primes(d)
    pstar = 1
    for p in primes:
        # Gauss sum: g^2 = p* = (-1)^((p-1)/2) p
        g = fld.zero()
        step = fld.n // p
        for a in range(1, p):
            g = g + fld.root(a * step) * _legendre(a, p)
        out = out * g
        pstar *= p if p % 4 == 1 else -p
    unit = d // pstar
    if unit == -1:
        out = out * fld.root(fld.n // 4)
    elif unit == 2:
        out = out * (fld.root(fld.n // 8) + fld.root(-(fld.n // 8)))
    elif unit == -2:
        out = out * (fld.root(fld.n // 8) + fld.root(3 * (fld.n // 8)))
    if out * out != Fraction(r):
        raise ArithmeticError(f"square root construction failed for {r}")
    return out


# ---------------------------------------------------------------------------
# polynomials over Q(zeta_n)

class CycPoly:
    """Dense univariate polynomial with CycNum coefficients, constant first."""

    def __init__(self, fld: CyclotomicField, coeffs=()):
        self.field = fld
        cs = [c if isinstance(c, CycNum) else fld.rational(c) for c in coeffs]
        while cs and cs[-1].is_zero():
            cs.pop()
        self.coeffs = cs

    def __repr__(self):
        return f"CycPoly({self.field.n}, {self.coeffs!r})"

    def __eq__(self, other):
        return isinstance(other, CycPoly) and self.coeffs == other.coeffs

    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __mul__(self, other: CycPoly) -> CycPoly:
        if not self.coeffs or not other.coeffs:
            return CycPoly(self.field)
        out = [self.field.zero()] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    if b:
                        out[i + j] = out[i + j] + a * b
        return CycPoly(self.field, out)

    def __call__(self, x) -> CycNum:
        acc = self.field.zero()
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def divide_linear(self, root) -> tuple[CycPoly, CycNum]:
        """Synthetic division by (x - root): returns (quotient, remainder)."""
        if not self.coeffs:
            return CycPoly(self.field), self.field.zero()
        out = []
        acc = self.field.zero()
        for c in reversed(self.coeffs):
            acc = acc * root + c
            out.append(acc)
        rem = out.pop()
        return CycPoly(self.field, reversed(out)), rem


# ---------------------------------------------------------------------------
# linear algebra

def solve_kernel(A) -> list[list[CycNum]]:
    """Basis of {v : A v = 0} for a matrix given as a list of rows of CycNum.

    Gauss-Jordan elimination with exact field division; one basis vector per
    free column, with a 1 in that column.
    """
    rows = [list(r) for r in A]
    if not rows:
        return []
    ncols = len(rows[0])
    fld = next((c.field for r in rows for c in r if isinstance(c, CycNum)), None)
    if fld is None:
        raise ValueError("solve_kernel needs CycNum entries")
    rows = [[c if isinstance(c, CycNum) else fld.rational(c) for c in r] for r in rows]
    pivots = []
    rank = 0
    for col in range(ncols):
        piv = next((r for r in range(rank, len(rows)) if rows[r][col]), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = rows[rank][col].inv()
        rows[rank] = [c * inv for c in rows[rank]]
        for r in range(len(rows)):
            if r != rank and rows[r][col]:
                f = rows[r][col]
                rows[r] = [x - f * y for x, y in zip(rows[r], rows[rank])]
        pivots.append(col)
        rank += 1
        if rank == len(rows):
            break
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [fld.zero()] * ncols
        v[fc] = fld.one()
        for r, pc in enumerate(pivots):
            v[pc] = -rows[r][fc]
        basis.append(v)
    return basis
