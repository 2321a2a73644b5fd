"""Weight-truncated Fock space, principal vertex operators and the Hirota engine.

The Fock space is C[y_(a,n)], one variable per label (a, n) of E_+ with
weight m = m_a + n h.  Variables are keyed by label, not weight, so the two
labels of D_even sharing a weight stay distinct.

All operators involved are homogeneous of degree 0 once zeta carries weight
-1, so polynomials are truncated by total weight, never by degree.  Every
graded component that survives a truncation is exact.

Vertex operators act as

    Gamma^{+-alpha_i}(zeta) = exp(+- sum beta_{i,m} y_m zeta^m)
                              exp(-+ sum beta_{i,-m} d/dy_m zeta^-m / m).

The derivative exponential is applied as the Taylor shift
y_l -> y_l + c_l zeta^-m_l on each monomial; the multiplication exponential
is a product of one-variable exponentials truncated at the weight cap.
"""
from __future__ import annotations

import json
import math
import operator
from dataclasses import dataclass, field as dc_field
from fractions import Fraction

from .coeffs import BetaTable, b_series_product, target_sum
from .cyclo import CycNum, CyclotomicField, embed
from .rootsys import CoxeterData

Label = tuple[int, int]
Mono = tuple[int, ...]

__all__ = [
    "CapError",
    "FockPoly",
    "FockSpace",
    "HirotaResidual",
    "LaurentBlock",
    "OPEReport",
    "QPolynomial",
    "TensorFockPoly",
    "apply_vertex",
    "euler_grading",
    "heisenberg_action",
    "hirota_residual",
    "ope_check",
    "rescale_to_singularity_variables",
    "tau_one_soliton",
    "unrescale",
]


class CapError(ValueError):
    """Weight caps of the inputs are inconsistent."""


class FockSpace:
    """Labels of weight <= max_weight with their indices, over a coefficient field."""

    def __init__(self, cox: CoxeterData, fld: CyclotomicField, max_weight: int):
        self.cox = cox
        self.field = fld
        self.max_weight = max_weight
        labels = []
        for a, m in enumerate(cox.exponents, start=1):
            n = 0
            while m + n * cox.h <= max_weight:
                labels.append((a, n))
                n += 1
        labels.sort(key=lambda lab: (self.label_weight(lab), lab))
        self.labels: tuple[Label, ...] = tuple(labels)
        self.index = {lab: k for k, lab in enumerate(labels)}
        self.weights = tuple(self.label_weight(lab) for lab in labels)
        self._mono_weight: dict[Mono, int] = {}
        self.zero_mono: Mono = (0,) * len(labels)

    def __repr__(self):
        return f"FockSpace({self.cox.rs.id}, field={self.field.n}, max_weight={self.max_weight})"

    def label_weight(self, label: Label) -> int:
        a, n = label
        return self.cox.exponents[a - 1] + n * self.cox.h

    def weight(self, mono: Mono) -> int:
        w = self._mono_weight.get(mono)
        if w is None:
            w = sum(e * m for e, m in zip(mono, self.weights) if e)
            self._mono_weight[mono] = w
        return w

    def mono(self, powers: dict[Label, int]) -> Mono:
        out = [0] * len(self.labels)
        for lab, e in powers.items():
            if lab not in self.index:
                raise CapError(f"label {lab} beyond max weight {self.max_weight}")
            out[self.index[lab]] += e
        return tuple(out)

    def mono_str(self, mono: Mono, var: str = "y") -> str:
        parts = []
        for k, e in enumerate(mono):
            if e:
                a, n = self.labels[k]
                parts.append(f"{var}({a},{n})" + (f"^{e}" if e > 1 else ""))
        return "*".join(parts) or "1"

    def basis_monomials(self, W: int) -> list[Mono]:
        """All monomials of weight <= W, in a deterministic order."""
        if W > self.max_weight:
            raise CapError(f"W = {W} exceeds space max weight {self.max_weight}")
        out = []

        def rec(k, remaining, cur):
            if k == len(self.labels):
                out.append(tuple(cur))
                return
            w = self.weights[k]
            for e in range(remaining // w + 1):
                cur.append(e)
                rec(k + 1, remaining - e * w, cur)
                cur.pop()

        rec(0, W, [])
        out.sort(key=lambda m: (self.weight(m), m))
        return out

    # -- constructors
    def poly(self, terms: dict | None = None, cap: int | None = None) -> FockPoly:
        return FockPoly(self, dict(terms or {}), self.max_weight if cap is None else cap)

    def one(self, cap: int | None = None) -> FockPoly:
        return self.poly({self.zero_mono: self.field.one()}, cap)

    def var(self, label: Label, cap: int | None = None) -> FockPoly:
        return self.poly({self.mono({label: 1}): self.field.one()}, cap)

    def coerce(self, c) -> CycNum:
        if isinstance(c, CycNum):
            if c.field is not self.field:
                return embed(c, self.field)
            return c
        return self.field.rational(c)


def _add_mono(a: Mono, b: Mono) -> Mono:
    return tuple(map(operator.add, a, b))


def _accumulate(target: dict, key, value: CycNum):
    cur = target.get(key)
    if cur is None:
        if value:
            target[key] = value
    else:
        s = cur + value
        if s:
            target[key] = s
        else:
            del target[key]


class FockPoly:
    """Sparse polynomial in the y-variables with every monomial of weight <= cap."""

    __slots__ = ("space", "terms", "cap")

    def __init__(self, space: FockSpace, terms: dict, cap: int):
        if cap > space.max_weight:
            raise CapError(f"cap {cap} exceeds space max weight {space.max_weight}")
        self.space = space
        self.cap = cap
        coerced = ((m, space.coerce(c)) for m, c in terms.items() if space.weight(m) <= cap)
        self.terms = {m: c for m, c in coerced if c}

    @classmethod
    def _raw(cls, space, terms, cap):
        obj = object.__new__(cls)
        obj.space, obj.terms, obj.cap = space, terms, cap
        return obj

    def __repr__(self):
        return f"FockPoly({self})"

    def __str__(self):
        if not self.terms:
            return "0"
        sp = self.space
        items = sorted(self.terms.items(), key=lambda kv: (sp.weight(kv[0]), kv[0]))
        return " + ".join(f"({c.is_rational() if c.is_rational() is not None else c})*{sp.mono_str(m)}"
                          for m, c in items)

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        if isinstance(other, FockPoly):
            return self.terms == other.terms
        if other == 0:
            return not self.terms
        return NotImplemented

    def coefficient(self, powers) -> CycNum:
        mono = powers if isinstance(powers, tuple) else self.space.mono(powers)
        return self.terms.get(mono, self.space.field.zero())

    def with_cap(self, cap: int) -> FockPoly:
        sp = self.space
        return FockPoly._raw(sp, {m: c for m, c in self.terms.items() if sp.weight(m) <= cap}, cap)

    def __add__(self, other: FockPoly) -> FockPoly:
        cap = min(self.cap, other.cap)
        out = {m: c for m, c in self.terms.items() if self.space.weight(m) <= cap}
        for m, c in other.terms.items():
            if self.space.weight(m) <= cap:
                _accumulate(out, m, c)
        return FockPoly._raw(self.space, out, cap)

    def __neg__(self):
        return FockPoly._raw(self.space, {m: -c for m, c in self.terms.items()}, self.cap)

    def __sub__(self, other: FockPoly) -> FockPoly:
        return self + (-other)

    def scale(self, c) -> FockPoly:
        c = self.space.coerce(c)
        if not c:
            return FockPoly._raw(self.space, {}, self.cap)
        return FockPoly._raw(self.space, {m: v * c for m, v in self.terms.items()}, self.cap)

    def __mul__(self, other):
        if not isinstance(other, FockPoly):
            return self.scale(other)
        sp = self.space
        cap = min(self.cap, other.cap)
        out: dict = {}
        for m1, c1 in self.terms.items():
            w1 = sp.weight(m1)
            for m2, c2 in other.terms.items():
                if w1 + sp.weight(m2) <= cap:
                    _accumulate(out, _add_mono(m1, m2), c1 * c2)
        return FockPoly._raw(sp, out, cap)

    __rmul__ = scale

    def diff(self, label: Label) -> FockPoly:
        """d/dy_label"""
        k = self.space.index[label]
        out = {}
        for m, c in self.terms.items():
            e = m[k]
            if e:
                nm = m[:k] + (e - 1,) + m[k + 1:]
                out[nm] = c * e
        return FockPoly._raw(self.space, out, self.cap)

    def mul_var(self, label: Label) -> FockPoly:
        """y_label * p, truncated at the cap."""
        sp = self.space
        k, w = sp.index[label], sp.label_weight(label)
        out = {}
        for m, c in self.terms.items():
            if sp.weight(m) + w <= self.cap:
                out[m[:k] + (m[k] + 1,) + m[k + 1:]] = c
        return FockPoly._raw(sp, out, self.cap)

    def weight_components(self) -> dict[int, FockPoly]:
        sp = self.space
        out: dict[int, dict] = {}
        for m, c in self.terms.items():
            out.setdefault(sp.weight(m), {})[m] = c
        return {w: FockPoly._raw(sp, t, self.cap) for w, t in sorted(out.items())}


# ---------------------------------------------------------------------------
# Heisenberg action and grading

def heisenberg_action(label: Label, sign: int):
    """Operator for H_{a,-m} (sign < 0: multiplication by m y_m) or H_{a,m} (sign > 0: d/dy_m).

    K acts as the scalar 1/h and is not an operator here.
    """
    if sign > 0:
        return lambda p: p.diff(label)

    def create(p: FockPoly) -> FockPoly:
        return p.mul_var(label).scale(p.space.label_weight(label))

    return create


def central_charge(cox: CoxeterData) -> Fraction:
    """Scalar by which K acts on the Fock space."""
    return Fraction(1, cox.h)


def euler_grading(p: FockPoly) -> dict[int, FockPoly]:
    """Split p into weight-homogeneous pieces; d = -sum m y_m d/dy_m acts on piece w as -w."""
    return p.weight_components()


def euler_operator(p: FockPoly) -> FockPoly:
    """-sum_m m y_m d/dy_m applied to p."""
    acc = p.space.poly(cap=p.cap)
    for lab in p.space.labels:
        d = p.diff(lab)
        if d.terms:
            acc = acc + heisenberg_action(lab, -1)(d)
    return -acc


# ---------------------------------------------------------------------------
# exponentials on graded blocks
#
# A block is a dict key -> FockPoly where key is a tuple of formal-variable
# exponents (zeta,) or (zeta, w).  ``var`` selects the formal variable.

def _shift_key(key, var, delta):
    return key[:var] + (key[var] + delta,) + key[var + 1:]


def _derivative_exp(block: dict, coeffs: dict[Label, CycNum], var: int) -> dict:
    """exp(sum_l c_l d/dy_l z^-m_l) via the Taylor shift y_l -> y_l + c_l z^-m_l."""
    if not block:
        return {}
    sp = next(iter(block.values())).space
    idx = [(sp.index[lab], sp.label_weight(lab), c) for lab, c in coeffs.items() if c and lab in sp.index]
    out_terms: dict = {}
    caps: dict = {}
    for key, poly in block.items():
        for mono, coef in poly.terms.items():
            # expand prod_l (y_l + c_l z^-m)^e_l
            partial = [(mono, 0, coef)]
            for k, w, c in idx:
                e = mono[k]
                if not e:
                    continue
                nxt = []
                cpow = [sp.field.one()]
                for _ in range(e):
                    cpow.append(cpow[-1] * c)
                for m2, shift, cf in partial:
                    for j in range(e + 1):
                        nm = m2[:k] + (e - j,) + m2[k + 1:]
                        nxt.append((nm, shift + j * w, cf * (cpow[j] * math.comb(e, j))))
                partial = nxt
            for nm, shift, cf in partial:
                nk = _shift_key(key, var, -shift)
                _accumulate(out_terms.setdefault(nk, {}), nm, cf)
                caps[nk] = poly.cap
    return {k: FockPoly._raw(sp, t, caps[k]) for k, t in out_terms.items() if t}


def _multiplication_series(sp: FockSpace, coeffs: dict[Label, CycNum], cap: int) -> list[tuple[Mono, int, CycNum]]:
    """Terms of exp(sum_l c_l y_l z^m_l) with weight <= cap as (mono, z-power, coefficient)."""
    terms = [(sp.zero_mono, 0, sp.field.one())]
    for lab, c in coeffs.items():
        if not c or lab not in sp.index:
            continue
        k, w = sp.index[lab], sp.label_weight(lab)
        nxt = []
        for mono, wt, cf in terms:
            cj = cf
            j = 0
            while wt + j * w <= cap:
                nm = mono[:k] + (mono[k] + j,) + mono[k + 1:]
                nxt.append((nm, wt + j * w, cj))
                j += 1
                cj = cj * c * Fraction(1, j)
        terms = nxt
    return terms


def _multiplication_exp(block: dict, coeffs: dict[Label, CycNum], var: int, cap: int, keep=None) -> dict:
    """exp(sum_l c_l y_l z^m_l) * block, truncated at total weight ``cap``."""
    if not block:
        return {}
    sp = next(iter(block.values())).space
    series = _multiplication_series(sp, coeffs, cap)
    out: dict = {}
    for key, poly in block.items():
        for mono, coef in poly.terms.items():
            w0 = sp.weight(mono)
            if w0 > cap:
                continue
            for emono, ew, ec in series:
                if w0 + ew > cap:
                    continue
                nk = _shift_key(key, var, ew)
                if keep is not None and not keep(nk):
                    continue
                _accumulate(out.setdefault(nk, {}), _add_mono(mono, emono), coef * ec)
    return {k: FockPoly._raw(sp, t, cap) for k, t in out.items() if t}


def _vertex_coeffs(beta: BetaTable, sp: FockSpace, i: int, sign: int):
    mult, der = {}, {}
    for lab in sp.labels:
        m = sp.label_weight(lab)
        mult[lab] = sp.coerce(beta.beta(i, lab, 1)) * sign
        der[lab] = sp.coerce(beta.beta(i, lab, -1)) * Fraction(-sign, m)
    return mult, der


@dataclass
class LaurentBlock:
    """Coefficients of a Laurent series in zeta with FockPoly coefficients."""

    space: FockSpace
    terms: dict[int, FockPoly]

    def coefficient(self, p: int) -> FockPoly:
        return self.terms.get(p, self.space.poly())

    def powers(self) -> list[int]:
        return sorted(self.terms)

    def __eq__(self, other):
        if not isinstance(other, LaurentBlock):
            return NotImplemented
        keys = set(self.terms) | set(other.terms)
        return all(self.coefficient(k) == other.coefficient(k) for k in keys)


def apply_vertex(beta: BetaTable, sp: FockSpace, i: int, sign: int, p: FockPoly, W: int | None = None) -> LaurentBlock:
    """Gamma^{sign alpha_i}(zeta) p, exact for every output coefficient of weight <= W."""
    W = p.cap if W is None else W
    if W > sp.max_weight or W > beta.cutoff:
        raise CapError(f"weight cap {W} exceeds the space ({sp.max_weight}) or beta cutoff ({beta.cutoff})")
    if p.space is not sp:
        raise CapError("polynomial belongs to a different Fock space")
    mult, der = _vertex_coeffs(beta, sp, i, sign)
    block = {(0,): p}
    block = _derivative_exp(block, der, 0)
    block = _multiplication_exp(block, mult, 0, W)
    return LaurentBlock(sp, {k[0]: v for k, v in block.items()})


# ---------------------------------------------------------------------------
# OPE

@dataclass
class OPEReport:
    type: str
    orbit: int
    weight_cap: int
    order: int
    monomials: int
    coefficients_compared: int
    mismatches: list = dc_field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.mismatches

    @property
    def max_deviation(self) -> str:
        return "0" if self.passed else self.mismatches[0]


def ope_sides(beta: BetaTable, sp: FockSpace, i: int, mono: Mono, W: int, K: int, bseries) -> tuple[dict, dict]:
    """Both sides of Gamma^{a}(zeta) Gamma^{-a}(w) = B(zeta, w) :Gamma^{a}(zeta) Gamma^{-a}(w): on one monomial.

    Keys are (zeta power, w power).  The returned coefficients are those of
    weight <= W with w-power <= K - weight(mono); all of them are exact.
    """
    wp = sp.weight(mono)
    bmax = K - wp
    keep = (lambda key: key[1] <= bmax)
    p = FockPoly._raw(sp, {mono: sp.field.one()}, sp.max_weight)
    mult_p, der_p = _vertex_coeffs(beta, sp, i, 1)
    mult_m, der_m = _vertex_coeffs(beta, sp, i, -1)

    # Gamma^{a}(zeta) Gamma^{-a}(w) p
    lhs = {(0, 0): p}
    lhs = _derivative_exp(lhs, der_m, 1)
    lhs = _multiplication_exp(lhs, mult_m, 1, wp + bmax, keep)
    lhs = _derivative_exp(lhs, der_p, 0)
    lhs = _multiplication_exp(lhs, mult_p, 0, W, keep)

    # :Gamma Gamma: p, then multiply by B
    rhs = {(0, 0): p}
    rhs = _derivative_exp(rhs, der_m, 1)
    rhs = _derivative_exp(rhs, der_p, 0)
    rhs = _multiplication_exp(rhs, mult_m, 1, W, keep)
    rhs = _multiplication_exp(rhs, mult_p, 0, W, keep)
    out: dict = {}
    for (za, wb), poly in rhs.items():
        for k, bk in enumerate(bseries.coeffs):
            if not bk or wb + k > bmax:
                continue
            nk = (za - k, wb + k)
            acc = out.setdefault(nk, {})
            for m, c in poly.terms.items():
                _accumulate(acc, m, c * bk)
    rhs = {k: FockPoly._raw(sp, t, W) for k, t in out.items() if t}
    return lhs, rhs


def ope_check(cox: CoxeterData, beta: BetaTable, i: int, W: int = 6, K: int = 12,
              sp: FockSpace | None = None) -> OPEReport:
    """Check the OPE exactly on every basis monomial of weight <= W.

    The factor B_i is taken from the product formula (coeffs.b_series_product),
    independently of the beta table used by the vertex operators.
    """
    if K < W:
        raise ValueError("series order K must be at least the weight cap W")
    sp = sp or FockSpace(cox, beta.field, W + K)
    bseries = b_series_product(cox, i, K, alpha=beta.reps[i] if beta.reps else None).embed(beta.field)
    compared, mismatches = 0, []
    monos = sp.basis_monomials(W)
    for mono in monos:
        lhs, rhs = ope_sides(beta, sp, i, mono, W, K, bseries)
        for key in sorted(set(lhs) | set(rhs)):
            a = lhs.get(key)
            b = rhs.get(key)
            ta = a.terms if a else {}
            tb = b.terms if b else {}
            compared += len(set(ta) | set(tb))
            if ta != tb:
                mismatches.append(f"input {sp.mono_str(mono)}, zeta^{key[0]} w^{key[1]}")
    return OPEReport(str(cox.rs.id), i, W, K, len(monos), compared, mismatches)


# ---------------------------------------------------------------------------
# tensor products and the Hirota residual

class TensorFockPoly:
    """Sparse polynomial in y'_m (left) and y''_m (right), truncated at total weight cap."""

    __slots__ = ("space", "terms", "cap")

    def __init__(self, space: FockSpace, terms: dict, cap: int):
        self.space, self.terms, self.cap = space, terms, cap

    @classmethod
    def product(cls, left: FockPoly, right: FockPoly, cap: int) -> TensorFockPoly:
        sp = left.space
        out = {}
        for m1, c1 in left.terms.items():
            w1 = sp.weight(m1)
            if w1 > cap:
                continue
            for m2, c2 in right.terms.items():
                if w1 + sp.weight(m2) <= cap:
                    out[(m1, m2)] = c1 * c2
        return cls(sp, out, cap)

    def weight(self, key) -> int:
        return self.space.weight(key[0]) + self.space.weight(key[1])

    def iadd(self, other: TensorFockPoly, scale=None) -> TensorFockPoly:
        for k, c in other.terms.items():
            _accumulate(self.terms, k, c if scale is None else c * scale)
        return self

    def weight_components(self) -> dict[int, TensorFockPoly]:
        out: dict = {}
        for k, c in self.terms.items():
            out.setdefault(self.weight(k), {})[k] = c
        return {w: TensorFockPoly(self.space, t, self.cap) for w, t in sorted(out.items())}

    def key_str(self, key) -> str:
        left = self.space.mono_str(key[0], "y'")
        right = self.space.mono_str(key[1], "y''")
        parts = [s for s in (left, right) if s != "1"]
        return "*".join(parts) or "1"

    def leading(self) -> str:
        """Smallest monomial (by weight, then exponents) with its coefficient."""
        key = min(self.terms, key=lambda k: (self.weight(k), k))
        c = self.terms[key]
        r = c.is_rational()
        cs = str(r) if r is not None else repr(c)
        return f"({cs})*{self.key_str(key)}"

    def is_zero(self) -> bool:
        return not self.terms


@dataclass
class HirotaResidual:
    type: str
    weight_cap: int
    components: dict[int, TensorFockPoly]
    certified_weight: int
    tau: str = ""

    def component(self, w: int) -> TensorFockPoly | None:
        return self.components.get(w)

    @property
    def nonzero_weights(self) -> list[int]:
        return [w for w, c in sorted(self.components.items())
                if w <= self.certified_weight and not c.is_zero()]

    @property
    def passed(self) -> bool:
        return not self.nonzero_weights

    def to_dict(self) -> dict:
        per = []
        for w in range(self.certified_weight + 1):
            c = self.components.get(w)
            per.append({"weight": w, "residual_norm": "zero" if c is None or c.is_zero() else c.leading()})
        return {
            "type": self.type,
            "tau": self.tau,
            "weight_cap": self.weight_cap,
            "certified_weight": self.certified_weight,
            "per_weight": per,
            "verdict": "pass" if self.passed else "fail",
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"


def hirota_residual(cox: CoxeterData, a_list, beta: BetaTable, tau: FockPoly, W: int | None = None) -> HirotaResidual:
    """Graded components of LHS - RHS of the bilinear equation on tau (x) tau.

    LHS = Res dzeta/zeta sum_i a_i Gamma^{alpha_i}(zeta) (x) Gamma^{-alpha_i}(zeta) (tau (x) tau)
    RHS = h^-2 (rho|rho) tau (x) tau
          + h^-1 sum_m m (y'_m - y''_m)(d/dy'_m - d/dy''_m) (tau (x) tau)

    tau is trusted up to weight W (default: its cap); components of weight <= W
    are exact, higher ones are never reported.
    """
    sp = tau.space
    W = tau.cap if W is None else W
    if W > tau.cap or W > beta.cutoff:
        raise CapError(f"W = {W} exceeds the tau cap ({tau.cap}) or beta cutoff ({beta.cutoff})")
    if len(a_list) != cox.N:
        raise ValueError("need one coefficient per orbit")
    tau = tau.with_cap(W)
    lhs = TensorFockPoly(sp, {}, W)
    for i, a in enumerate(a_list):
        a = sp.coerce(a)
        plus = apply_vertex(beta, sp, i, 1, tau, W)
        minus = apply_vertex(beta, sp, i, -1, tau, W)
        for p, poly in plus.terms.items():
            other = minus.terms.get(-p)
            if other is not None:
                lhs.iadd(TensorFockPoly.product(poly, other, W), a)

    rhs = TensorFockPoly.product(tau, tau, W)
    for k in list(rhs.terms):
        rhs.terms[k] = rhs.terms[k] * target_sum(cox)
    inv_h = Fraction(1, cox.h)
    for lab in sp.labels:
        m = sp.label_weight(lab)
        if m > W:
            continue
        d = tau.diff(lab)
        if d.is_zero():
            continue
        yd = d.mul_var(lab)
        yt = tau.mul_var(lab)
        c = inv_h * m
        rhs.iadd(TensorFockPoly.product(yd, tau, W), c)
        rhs.iadd(TensorFockPoly.product(yt, d, W), -c)
        rhs.iadd(TensorFockPoly.product(d, yt, W), -c)
        rhs.iadd(TensorFockPoly.product(tau, yd, W), c)

    diff = TensorFockPoly(sp, dict(lhs.terms), W).iadd(rhs, -1)
    return HirotaResidual(str(cox.rs.id), W, diff.weight_components(), W)


def tau_one_soliton(beta: BetaTable, sp: FockSpace, i: int, z0, c, W: int) -> FockPoly:
    """1 + c exp(sum_{m <= W} beta_{i,m} y_m z0^m), truncated at weight W."""
    z0, c = Fraction(z0), Fraction(c)
    if z0 == 0:
        raise ValueError("z0 must be nonzero")
    coeffs = {lab: sp.coerce(beta.beta(i, lab, 1)) * z0 ** sp.label_weight(lab)
              for lab in sp.labels if sp.label_weight(lab) <= W}
    series = _multiplication_series(sp, coeffs, W)
    terms: dict = {}
    for mono, _, cf in series:
        _accumulate(terms, mono, cf * c)
    _accumulate(terms, sp.zero_mono, sp.field.one())
    return FockPoly._raw(sp, terms, W)


# ---------------------------------------------------------------------------
# singularity-side variables
#
# q_k^a = sqrt(hbar) prod_{r=0}^k (m_a + r h) y_{m_a + k h}, hbar = 1, with
# lambda = zeta^h / h.  Since dlambda/lambda and dzeta/zeta have the same
# residue, the zeta^0 coefficient of the bilinear equation is the lambda^0
# coefficient of its singularity form, and m y_m d/dy_m = (m_a + k h) q d/dq
# term by term.

def rescale_factor(cox: CoxeterData, label: Label) -> int:
    """prod_{r=0}^{k} (m_a + r h) for label (a, k)."""
    a, k = label
    return math.prod(cox.exponents[a - 1] + r * cox.h for r in range(k + 1))


@dataclass
class QPolynomial:
    """A Fock polynomial rewritten in the q_k^a variables (same exponent tuples)."""

    space: FockSpace
    terms: dict
    cap: int

    def __str__(self):
        if not self.terms:
            return "0"
        sp = self.space
        parts = []
        for m, c in sorted(self.terms.items(), key=lambda kv: (sp.weight(kv[0]), kv[0])):
            names = []
            for k, e in enumerate(m):
                if e:
                    a, n = sp.labels[k]
                    names.append(f"q_{n}^{a}" + (f"**{e}" if e > 1 else ""))
            r = c.is_rational()
            names_s = "*".join(names) or "1"
            parts.append(f"({r if r is not None else c})*{names_s}")
        return " + ".join(parts)

    def euler(self) -> QPolynomial:
        """-sum (m_a + k h) q_k^a d/dq_k^a"""
        sp = self.space
        return QPolynomial(sp, {m: c * (-sp.weight(m)) for m, c in self.terms.items() if sp.weight(m)}, self.cap)


def rescale_to_singularity_variables(p: FockPoly) -> QPolynomial:
    """Rewrite p(y) in q-variables: y_(a,k) = q_k^a / prod_{r=0}^k (m_a + r h)."""
    sp = p.space
    out = {}
    for m, c in p.terms.items():
        denom = 1
        for k, e in enumerate(m):
            if e:
                denom *= rescale_factor(sp.cox, sp.labels[k]) ** e
        out[m] = c * Fraction(1, denom)
    return QPolynomial(sp, out, p.cap)


def unrescale(q: QPolynomial) -> FockPoly:
    sp = q.space
    out = {}
    for m, c in q.terms.items():
        num = 1
        for k, e in enumerate(m):
            if e:
                num *= rescale_factor(sp.cox, sp.labels[k]) ** e
        out[m] = c * num
    return FockPoly._raw(sp, out, q.cap)
