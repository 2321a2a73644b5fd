"""Simply-laced root systems, Coxeter elements and their exponents.

Everything is integral: roots are coordinate vectors in the basis of simple
roots, the inner product is the Cartan (= Gram) matrix, and the Coxeter
element is an integer matrix acting on column vectors.  Exponents come from
factoring the characteristic polynomial into cyclotomic factors, never from a
floating-point eigen-solve.

Simple roots follow Bourbaki's numbering:

* ``A_N``: a chain 1 - 2 - ... - N.
* ``D_N``: a chain 1 - ... - (N-2) with N-1 and N both attached to N-2.
* ``E_N``: a chain 1 - 3 - 4 - 5 - ... - N with 2 attached to 4.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from fractions import Fraction

from .cyclo import cyclotomic_polynomial

Vector = tuple[int, ...]
Matrix = tuple[tuple[int, ...], ...]


class RootSystemError(ValueError):
    """Unsupported family/rank combination or malformed label."""


@dataclass(frozen=True, order=True)
class RootSystemId:
    family: str
    rank: int

    def __post_init__(self):
        fam, n = self.family, self.rank
        ok = (
            (fam == "A" and n >= 1)
            or (fam == "D" and n >= 4)
            or (fam == "E" and n in (6, 7, 8))
        )
        if not ok or not isinstance(n, int):
            raise RootSystemError(f"no simply-laced root system {fam}_{n}")

    @classmethod
    def parse(cls, label: str) -> RootSystemId:
        """Parse ``A_3``, ``A3`` or ``a3``."""
        m = re.fullmatch(r"\s*([ADEade])_?(\d+)\s*", label)
        if not m:
            raise RootSystemError(f"cannot parse root system label {label!r}")
        return cls(m.group(1).upper(), int(m.group(2)))

    def __str__(self):
        return f"{self.family}_{self.rank}"


def cartan_matrix(rsid: RootSystemId) -> Matrix:
    n = rsid.rank
    if rsid.family == "A":
        edges = [(i, i + 1) for i in range(n - 1)]
    elif rsid.family == "D":
        edges = [(i, i + 1) for i in range(n - 2)] + [(n - 3, n - 1)]
    else:
        edges = [(0, 2), (2, 3), (1, 3)] + [(k, k + 1) for k in range(3, n - 1)]
    C = [[2 if i == j else 0 for j in range(n)] for i in range(n)]
    for i, j in edges:
        C[i][j] = C[j][i] = -1
    return tuple(tuple(r) for r in C)


def _matvec(A, v):
    return tuple(sum(a * x for a, x in zip(row, v)) for row in A)


def _matmul(A, B):
    cols = list(zip(*B))
    return tuple(tuple(sum(a * b for a, b in zip(row, col)) for col in cols) for row in A)


def _identity(n):
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


@dataclass(frozen=True)
class RootSystem:
    id: RootSystemId
    cartan: Matrix
    roots: frozenset[Vector]

    @property
    def N(self) -> int:
        return self.id.rank

    def inner(self, x, y):
        """x^T C y; integer for lattice vectors, exact for Fractions or CycNums."""
        if len(x) != self.N or len(y) != self.N:
            raise ValueError(f"expected vectors of length {self.N}")
        total = 0
        for i, xi in enumerate(x):
            if xi:
                row = self.cartan[i]
                s = 0
                for j, yj in enumerate(y):
                    if row[j]:
                        s = s + row[j] * yj
                total = total + xi * s
        return total

    def simple_root(self, i: int) -> Vector:
        """i-th simple root, 0-based."""
        return tuple(int(j == i) for j in range(self.N))

    def reflection(self, i: int) -> Matrix:
        """s_i(x) = x - (alpha_i | x) alpha_i as an integer matrix."""
        n = self.N
        S = [list(r) for r in _identity(n)]
        for j in range(n):
            S[i][j] -= self.cartan[i][j]
        return tuple(tuple(r) for r in S)

    def reflect(self, i: int, v: Vector) -> Vector:
        c = sum(a * x for a, x in zip(self.cartan[i], v))
        return tuple(x - c * (j == i) for j, x in enumerate(v))

    def sorted_roots(self) -> list[Vector]:
        return sorted(self.roots)

    def to_dict(self) -> dict:
        return {
            "family": self.id.family,
            "rank": self.N,
            "cartan": [list(r) for r in self.cartan],
            "num_roots": len(self.roots),
        }


def build(rsid: RootSystemId | str) -> RootSystem:
    """Root system generated by closing the simple roots under simple reflections."""
    if isinstance(rsid, str):
        rsid = RootSystemId.parse(rsid)
    C = cartan_matrix(rsid)
    rs = RootSystem(rsid, C, frozenset())
    n = rsid.rank
    seen = {rs.simple_root(i) for i in range(n)}
    frontier = list(seen)
    while frontier:
        new = []
        for v in frontier:
            for i in range(n):
                w = rs.reflect(i, v)
                if w not in seen:
                    seen.add(w)
                    new.append(w)
        frontier = new
    return RootSystem(rsid, C, frozenset(seen))


def inner(rs: RootSystem, x, y):
    return rs.inner(x, y)


# ---------------------------------------------------------------------------
# characteristic polynomial and exponents

def charpoly(A) -> list[int]:
    """det(x I - A) for an integer matrix (Faddeev-LeVerrier), constant first."""
    n = len(A)
    Af = [[Fraction(a) for a in row] for row in A]
    coeffs = [Fraction(0)] * (n + 1)
    coeffs[n] = Fraction(1)
    Mk = [[Fraction(0)] * n for _ in range(n)]
    for k in range(1, n + 1):
        # M_k = A M_{k-1} + c_{n-k+1} I
        prev = Mk
        Mk = [[sum(Af[i][t] * prev[t][j] for t in range(n)) for j in range(n)] for i in range(n)]
        for i in range(n):
            Mk[i][i] += coeffs[n - k + 1]
        AM = [[sum(Af[i][t] * Mk[t][j] for t in range(n)) for j in range(n)] for i in range(n)]
        coeffs[n - k] = -sum(AM[i][i] for i in range(n)) / k
    out = [int(c) for c in coeffs]
    if any(Fraction(o) != c for o, c in zip(out, coeffs)):
        raise ArithmeticError("non-integral characteristic polynomial")
    return out


def _divmod_int(a, b):
    a = list(a)
    q = [0] * max(len(a) - len(b) + 1, 0)
    for k in range(len(q) - 1, -1, -1):
        c = a[k + len(b) - 1] // b[-1]
        q[k] = c
        for j, y in enumerate(b):
            a[k + j] -= c * y
    return q, a[: len(b) - 1]


def exponents_from_charpoly(p, h: int) -> list[int]:
    """Exponents m with eigenvalues exp(2 pi i m/h), by cyclotomic factorisation."""
    out = []
    p = list(p)
    for d in (d for d in range(1, h + 1) if h % d == 0):
        phi = cyclotomic_polynomial(d)
        while len(p) >= len(phi):
            q, r = _divmod_int(p, phi)
            if any(r):
                break
            p = q
            out.extend(j * (h // d) for j in range(d) if math.gcd(j, d) == 1)
    if len(p) != 1 or abs(p[0]) != 1:
        raise ArithmeticError("characteristic polynomial is not a product of cyclotomic factors")
    return sorted(out)


# ---------------------------------------------------------------------------
# Coxeter data

@dataclass(frozen=True)
class CoxeterData:
    rs: RootSystem
    M: Matrix
    ordering: tuple[int, ...]
    h: int
    exponents: tuple[int, ...]
    orbits: tuple[tuple[Vector, ...], ...]
    reps: tuple[Vector, ...]
    _powers: tuple[Matrix, ...] = field(repr=False, compare=False, default=())

    @property
    def N(self) -> int:
        return self.rs.N

    def power(self, k: int) -> Matrix:
        return self._powers[k % self.h]

    def apply(self, v: Vector, k: int = 1) -> Vector:
        return _matvec(self.power(k), v)

    def orbit_profile(self, i: int) -> tuple[int, ...]:
        """(alpha_i | M^k alpha_i) for k = 0..h-1."""
        return self.profile_of(self.reps[i])

    def profile_of(self, alpha: Vector) -> tuple[int, ...]:
        return tuple(self.rs.inner(alpha, self.apply(alpha, k)) for k in range(self.h))


    def to_dict(self) -> dict:
        return {
            "family": self.rs.id.family,
            "rank": self.N,
            "cartan": [list(r) for r in self.rs.cartan],
            "ordering": [i + 1 for i in self.ordering],
            "h": self.h,
            "exponents": list(self.exponents),
            "representatives": [list(r) for r in self.reps],
        }


def _canonical_rep(orbit) -> Vector:
    return min(v for v in orbit if all(c >= 0 for c in v))


def coxeter(rs: RootSystem, ordering=None) -> CoxeterData:
    """Coxeter element s_{o1} s_{o2} ... s_{oN} for a 0-based ordering (default identity).

    Orbits are listed in the order of their representatives, each
    representative being the lexicographically smallest positive root in its
    orbit (every Coxeter orbit contains positive roots).
    """
    n = rs.N
    if ordering is None:
        ordering = tuple(range(n))
    ordering = tuple(ordering)
    if sorted(ordering) != list(range(n)):
        raise ValueError(f"ordering must be a permutation of 0..{n - 1}")
    M = _identity(n)
    for i in ordering:
        M = _matmul(M, rs.reflection(i))
    ident = _identity(n)
    powers = [ident]
    P = M
    while P != ident:
        powers.append(P)
        P = _matmul(P, M)
    h = len(powers)
    exps = exponents_from_charpoly(charpoly(M), h)

    remaining = set(rs.roots)
    orbits = []
    while remaining:
        start = min(remaining)
        orb = [start]
        v = _matvec(M, start)
        while v != start:
            orb.append(v)
            v = _matvec(M, v)
        remaining.difference_update(orb)
        orbits.append(tuple(orb))
    orbits.sort(key=_canonical_rep)
    reps = tuple(_canonical_rep(o) for o in orbits)
    return CoxeterData(rs, M, ordering, h, tuple(exps), tuple(orbits), reps, tuple(powers))


def orbit_weights(cox: CoxeterData, i: int, k: int) -> int:
    """(alpha_i | M^k alpha_i) for orbit i (0-based) and 0 <= k < h."""
    if not 0 <= i < cox.N or not 0 <= k < cox.h:
        raise IndexError("orbit or power index out of range")
    a = cox.reps[i]
    return cox.rs.inner(a, cox.apply(a, k))


SUPPORTED_DEFAULT = tuple(
    [RootSystemId("A", n) for n in range(1, 9)]
    + [RootSystemId("D", n) for n in range(4, 9)]
    + [RootSystemId("E", n) for n in (6, 7, 8)]
)


def coxeter_data(label: str | RootSystemId, ordering=None) -> CoxeterData:
    """Shorthand: build the root system and its Coxeter element in one go."""
    return coxeter(build(label), ordering)
