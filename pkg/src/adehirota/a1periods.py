"""A_1 Picard-Lefschetz phase integrals on the real slice.

For A_1 the period is I(lambda, u) = 2 / sqrt(2 (lambda - u)).  With
s = lambda - mu the regularized phase integral is

    F(s, eps) = int_{-1}^{-eps} 4 du / (sqrt(2(s-u)) sqrt(2(-u))) + int_1^{s+eps} 2 dxi / xi.

Its closed form is

    F = -2 ln(eps + s/2 + sqrt((s+eps) eps)) + 2 ln(1 + s/2 + sqrt(1+s)) + 2 ln(s + eps),

which vanishes identically at s = 0 and tends to 4 ln 2 when eps = 0 and
s -> 0.  The two limits do not commute: along the ray s = k eps the limit is
2 ln 2 + 2 ln((1+k) / (1 + k/2 + sqrt(1+k))), interpolating between 0 (k = 0)
and 4 ln 2 (k -> infinity).
"""
from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass

import mpmath
from scipy import integrate

__all__ = [
    "A1PhaseParams",
    "QuadratureConfig",
    "QuadratureError",
    "StudyRow",
    "ATildeDirect",
    "a_tilde_a1_details",
    "a_tilde_a1_direct",
    "iterated_limits",
    "four_ln2",
    "limit_commutation_study",
    "period_a1",
    "phase_integral_closed",
    "phase_integral_quadrature",
    "ray_limit",
    "study_csv",
]


class QuadratureError(RuntimeError):
    """Adaptive quadrature did not converge within the configured subdivisions."""


@dataclass(frozen=True)
class A1PhaseParams:
    s: float
    epsilon: float
    digits: int = 30

    def __post_init__(self):
        if self.s < 0 or self.epsilon < 0:
            raise ValueError("s and epsilon must be nonnegative")
        if self.s + self.epsilon <= 0:
            raise ValueError("need s + epsilon > 0")
        if self.epsilon > 1:
            raise ValueError("epsilon must not exceed 1")


@dataclass(frozen=True)
class QuadratureConfig:
    """Settings for scipy.integrate.quad.

    ``mode`` is ``"substitution"`` (integrate in t with u = -t^2, smooth up to
    eps = 0) or ``"direct"`` (integrate in u; requires eps > 0).
    """

    abs_tol: float = 1e-12
    rel_tol: float = 1e-12
    max_subdivisions: int = 200
    mode: str = "substitution"

    def __post_init__(self):
        if self.abs_tol <= 0 or self.rel_tol <= 0:
            raise ValueError("tolerances must be positive")
        if self.mode not in ("substitution", "direct"):
            raise ValueError(f"unknown mode {self.mode!r}")


def four_ln2(digits: int = 30):
    with mpmath.workdps(digits):
        return 4 * mpmath.log(2)


def period_a1(lam, u):
    """2 / sqrt(2 (lambda - u)) on the positive branch."""
    if not lam > u:
        raise ValueError("period needs lambda > u")
    return 2 / mpmath.sqrt(2 * (mpmath.mpf(lam) - u))


def phase_integral_closed(p: A1PhaseParams):
    """Closed-form value of F(s, eps) via the antiderivative."""
    with mpmath.workdps(p.digits + 10):
        s, e = mpmath.mpf(p.s), mpmath.mpf(p.epsilon)
        if e == 0:
            # the first term becomes -2 ln(s/2)
            first = -2 * mpmath.log(s / 2)
        else:
            first = -2 * mpmath.log(e + s / 2 + mpmath.sqrt((s + e) * e))
        val = first + 2 * mpmath.log(1 + s / 2 + mpmath.sqrt(1 + s)) + 2 * mpmath.log(s + e)
    return +val


def phase_integral_quadrature(p: A1PhaseParams, q: QuadratureConfig = QuadratureConfig()) -> float:
    """F(s, eps) by adaptive quadrature (double precision)."""
    s, e = float(p.s), float(p.epsilon)
    if q.mode == "substitution":
        f, lo, hi = (lambda t: 4.0 / math.sqrt(s + t * t)), math.sqrt(e), 1.0
    else:
        if e == 0:
            raise ValueError("direct mode needs epsilon > 0")
        f, lo, hi = (lambda u: 2.0 / math.sqrt((s - u) * (-u))), -1.0, -e
    val, err, info, *rest = integrate.quad(f, lo, hi, epsabs=q.abs_tol, epsrel=q.rel_tol,
                                           limit=q.max_subdivisions, full_output=1)
    if rest and rest[0]:
        raise QuadratureError(f"quad did not converge for {p}: {rest[0]}")
    return val + 2.0 * math.log(s + e)


def ray_limit(k, digits: int = 30):
    """lim_{eps -> 0} F(k eps, eps) for k >= 0."""
    with mpmath.workdps(digits):
        k = mpmath.mpf(k)
        return 2 * mpmath.log(2) + 2 * mpmath.log((1 + k) / (1 + k / 2 + mpmath.sqrt(1 + k)))


@dataclass(frozen=True)
class ATildeDirect:
    value: object
    divergent_pieces: tuple


def a_tilde_a1_direct(digits: int = 30, epsilons=(1e-2, 1e-4, 1e-8)) -> object:
    """a~_1 = h exp(-int_{-1}^{-eps} I o I - int_1^eps 2 dxi/xi - 4 ln 2) for A_1, h = 2.

    I o I du = -2 du/u along t = u.  The first integral is evaluated by
    quadrature at each eps, the second exactly; their sum must vanish at every
    eps (both are -+ 2 ln eps), leaving 2 exp(-4 ln 2) = 1/8.
    """
    return a_tilde_a1_details(digits, epsilons).value


def a_tilde_a1_details(digits: int = 30, epsilons=(1e-2, 1e-4, 1e-8)) -> ATildeDirect:
    if digits < 15:
        raise ValueError("digits must be at least 15")
    pieces = []
    with mpmath.workdps(digits + 10):
        for eps in epsilons:
            eps = mpmath.mpf(eps)
            # int_{-1}^{-eps} -2 du/u, split at powers of ten for the tanh-sinh rule
            nodes = [-mpmath.mpf(10) ** (-j) for j in range(int(-mpmath.log10(eps)) + 1)]
            nodes = [n for n in nodes if n < -eps] + [-eps]
            ii = mpmath.quad(lambda u: -2 / u, nodes)
            xi = 2 * mpmath.log(eps)
            pieces.append((ii, xi, ii + xi))
        exponent = -pieces[-1][2] - 4 * mpmath.log(2)
        value = 2 * mpmath.exp(exponent)
    return ATildeDirect(+value, tuple(pieces))


@dataclass(frozen=True)
class StudyRow:
    s: float
    epsilon: float
    closed_form: float
    quadrature: float

    @property
    def abs_diff(self) -> float:
        return abs(self.closed_form - self.quadrature)


DEFAULT_GRID = tuple(
    [(s, 0.0) for s in (1e-2, 1e-4, 1e-6)]
    + [(0.0, e) for e in (1e-2, 1e-4, 1e-6)]
    + [(d, d) for d in (1e-2, 1e-4, 1e-6)]
    + [(1.0, 1e-4), (0.5, 1e-6), (1.0, 0.0)]
)


def limit_commutation_study(grid=DEFAULT_GRID, q: QuadratureConfig = QuadratureConfig(),
                            digits: int = 30) -> list[StudyRow]:
    """Closed form and quadrature over a grid of (s, eps) pairs."""
    rows = []
    for s, e in grid:
        p = A1PhaseParams(s, e, digits)
        rows.append(StudyRow(s, e, float(phase_integral_closed(p)), phase_integral_quadrature(p, q)))
    return rows


def iterated_limits(digits: int = 30, small=1e-12) -> dict:
    """Both orders of limits, with the 4 ln 2 offset of the s -> 0 first order made explicit.

    eps -> 0 then s -> 0 gives 4 ln 2 directly.  s -> 0 first gives 0 because
    the integrals cancel; adding the offset 4 ln 2 recovers the same total.
    """
    eps_first = phase_integral_closed(A1PhaseParams(small, 0.0, digits))
    s_first = phase_integral_closed(A1PhaseParams(0.0, small, digits))
    return {"eps_then_s": eps_first, "s_then_eps": s_first, "s_then_eps_plus_offset": s_first + four_ln2(digits)}


def study_csv(rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["s", "epsilon", "closed_form", "quadrature", "abs_diff"])
    for r in rows:
        w.writerow([repr(r.s), repr(r.epsilon), f"{r.closed_form:.15e}", f"{r.quadrature:.15e}", f"{r.abs_diff:.3e}"])
    return buf.getvalue()
