from fractions import Fraction

import pytest
import sympy as sp_sym
from hypothesis import given, settings, strategies as st

from adehirota.coeffs import BSeries, b_series_product
from adehirota.fock import (
    CapError,
    FockSpace,
    apply_vertex,
    euler_grading,
    euler_operator,
    heisenberg_action,
    hirota_residual,
    ope_check,
    ope_sides,
    rescale_factor,
    rescale_to_singularity_variables,
    tau_one_soliton,
    unrescale,
)

import hirota_oracle
from conftest import a_of, basis_of, beta_of, cox_of


def space(label, W):
    return FockSpace(cox_of(label), basis_of(label).field, W)


def test_labels_keyed_by_pair_in_d4():
    sp = space("D_4", 9)
    assert (2, 0) in sp.index and (3, 0) in sp.index
    assert sp.label_weight((2, 0)) == sp.label_weight((3, 0)) == 3
    assert sp.var((2, 0)) != sp.var((3, 0))


def test_heisenberg_examples():
    sp = space("A_1", 9)
    d1 = heisenberg_action((1, 0), +1)
    assert d1(sp.one()).is_zero()
    y1 = sp.var((1, 0))
    assert heisenberg_action((1, 0), -1)(d1(y1)) == y1.scale(1)
    y3 = sp.var((1, 1))
    assert heisenberg_action((1, 1), -1)(d1(y3 * y1 * y1)) == (y3 * y3 * y1 * y1).diff((1, 0)).scale(0) + (y3 * y3 * y1).scale(6)


@pytest.mark.parametrize("label", ["A_1", "D_4"])
def test_canonical_commutation(label):
    # keep p well below the cap so that multiplication never truncates
    sp = space(label, 9)
    p = sp.poly({m: k + 1 for k, m in enumerate(sp.basis_monomials(2))}, 9)
    for l1 in sp.labels[:4]:
        for l2 in sp.labels[:4]:
            d, c = heisenberg_action(l1, +1), heisenberg_action(l2, -1)
            comm = d(c(p)) - c(d(p))
            want = p.scale(sp.label_weight(l1) if l1 == l2 else 0)
            assert comm == want


def test_euler_grading_examples():
    sp = space("A_1", 9)
    y1, y3 = sp.var((1, 0)), sp.var((1, 1))
    assert list(euler_grading(y1 * y3)) == [4]
    assert list(euler_grading(sp.one())) == [0]
    assert euler_operator(y1 * y1) == (y1 * y1).scale(-2)


def test_vertex_on_one_a1():
    sp = space("A_1", 7)
    beta = beta_of("A_1", 7)
    out = apply_vertex(beta, sp, 0, 1, sp.one(7), 7)
    assert out.powers() == list(range(8))
    # coefficient of zeta^3: 2 y_3 + (2 y_1)^3 / 6
    y1, y3 = sp.var((1, 0)), sp.var((1, 1))
    assert out.coefficient(3) == y3.scale(2) + (y1 * y1 * y1).scale(Fraction(4, 3))


@pytest.mark.parametrize("label", ["A_2", "D_4"])
def test_vertex_weight_homogeneity_all_monomials(label):
    W = 6
    sp = space(label, W)
    beta = beta_of(label, W)
    for mono in sp.basis_monomials(W):
        w = sp.weight(mono)
        p = sp.poly({mono: 1}, W)
        for sign in (1, -1):
            block = apply_vertex(beta, sp, 0, sign, p, W)
            assert min(block.powers()) >= -w
            for k, poly in block.terms.items():
                assert set(euler_grading(poly)) == {w + k}


@settings(max_examples=20, deadline=None)
@given(st.lists(st.integers(-3, 3), min_size=3, max_size=3), st.integers(0, 1))
def test_vertex_linearity(cs, i):
    W = 5
    sp = space("A_2", W)
    beta = beta_of("A_2", W)
    basis = sp.basis_monomials(W)
    p = sp.poly({basis[1]: cs[0], basis[3]: cs[1]}, W)
    q = sp.poly({basis[2]: cs[2], basis[3]: 1}, W)
    lhs = apply_vertex(beta, sp, i, 1, p + q, W)
    rp, rq = apply_vertex(beta, sp, i, 1, p, W), apply_vertex(beta, sp, i, 1, q, W)
    for k in set(lhs.terms) | set(rp.terms) | set(rq.terms):
        assert lhs.coefficient(k) == rp.coefficient(k) + rq.coefficient(k)


def test_vertex_cap_errors():
    sp = space("A_1", 5)
    with pytest.raises(CapError):
        apply_vertex(beta_of("A_1", 5), sp, 0, 1, sp.one(5), 9)
    with pytest.raises(CapError):
        sp.poly({}, 12)


def test_ope_a1():
    r = ope_check(cox_of("A_1"), beta_of("A_1", 18), 0, 6, 12)
    assert r.passed and r.coefficients_compared > 1000 and r.max_deviation == "0"


def test_ope_constant_term_on_one():
    cox = cox_of("A_2")
    beta = beta_of("A_2", 18)
    sp = space("A_2", 18)
    bs = b_series_product(cox, 0, 12).embed(beta.field)
    lhs, rhs = ope_sides(beta, sp, 0, sp.zero_mono, 6, 12, bs)
    assert lhs[(0, 0)] == rhs[(0, 0)] == sp.one(6)


def test_ope_detects_wrong_b():
    cox = cox_of("A_1")
    beta = beta_of("A_1", 18)
    sp = space("A_1", 18)
    good = b_series_product(cox, 0, 12).embed(beta.field)
    bad = BSeries(good.coeffs[:5] + (good.coeffs[5] + 1,) + good.coeffs[6:])
    lhs, rhs = ope_sides(beta, sp, 0, sp.zero_mono, 6, 12, bad)
    assert any(lhs.get(k) != rhs.get(k) for k in set(lhs) | set(rhs))


def test_tau_one_soliton_example():
    sp = space("A_1", 9)
    tau = tau_one_soliton(beta_of("A_1", 9), sp, 0, 1, 1, 3)
    y1, y3 = sp.var((1, 0), 3), sp.var((1, 1), 3)
    want = sp.one(3).scale(2) + y1.scale(2) + (y1 * y1).scale(2) + (y1 * y1 * y1).scale(Fraction(4, 3)) + y3.scale(2)
    assert tau == want
    assert tau_one_soliton(beta_of("A_1", 9), sp, 0, 1, 0, 5) == sp.one(5)
    assert max(euler_grading(tau_one_soliton(beta_of("A_1", 9), sp, 0, 2, 3, 7))) <= 7
    with pytest.raises(ValueError):
        tau_one_soliton(beta_of("A_1", 9), sp, 0, 0, 1, 3)


@pytest.mark.parametrize("label", ["A_1", "A_4", "D_4", "E_6"])
def test_hirota_tau_one(label):
    W = 6
    r = hirota_residual(cox_of(label), a_of(label), beta_of(label, W), space(label, W).one(W), W)
    assert r.passed and r.certified_weight == W


def test_hirota_a1_soliton_weight_9():
    sp = space("A_1", 9)
    beta = beta_of("A_1", 9)
    r = hirota_residual(cox_of("A_1"), a_of("A_1"), beta, tau_one_soliton(beta, sp, 0, 1, 1, 9), 9)
    assert r.passed and r.to_dict()["verdict"] == "pass"


def test_hirota_y1_squared_fails():
    sp = space("A_1", 9)
    y1 = sp.var((1, 0), 9)
    r = hirota_residual(cox_of("A_1"), a_of("A_1"), beta_of("A_1", 9), y1 * y1, 9)
    assert r.nonzero_weights == [4]
    assert r.to_dict()["per_weight"][4]["residual_norm"] != "zero"


def _engine_by_weight(tau, W=5):
    r = hirota_residual(cox_of("A_1"), a_of("A_1"), beta_of("A_1", W), tau, W)
    return {w: r.components.get(w) for w in range(W + 1)}


def _to_sympy(tpoly, W=5):
    """Convert an engine TensorFockPoly to the oracle's variables u_m, v_m."""
    if tpoly is None:
        return sp_sym.Integer(0)
    space_ = tpoly.space
    expr = sp_sym.Integer(0)
    for (m1, m2), c in tpoly.terms.items():
        term = sp_sym.Rational(c.is_rational().numerator, c.is_rational().denominator)
        for k, e in enumerate(m1):
            term *= sp_sym.Symbol(f"u{space_.weights[k]}") ** e
        for k, e in enumerate(m2):
            term *= sp_sym.Symbol(f"v{space_.weights[k]}") ** e
        expr += term
    return sp_sym.expand(expr)


@pytest.mark.parametrize("name", ["soliton", "y1", "y1_squared", "schur21"])
def test_engine_matches_oracle(name):
    W = 5
    sp = space("A_1", W)
    beta = beta_of("A_1", W)
    y1, y3 = sp.var((1, 0), W), sp.var((1, 1), W)
    engine_tau = {
        "soliton": tau_one_soliton(beta, sp, 0, 1, 1, W),
        "y1": y1,
        "y1_squared": y1 * y1,
        "schur21": y1 * y1 * y1 - y3.scale(Fraction(3, 2)),
    }[name]
    oracle_tau = {
        "soliton": lambda y: hirota_oracle.one_soliton(y, 1, 1, W),
        "y1": lambda y: y[1],
        "y1_squared": lambda y: y[1] ** 2,
        "schur21": lambda y: y[1] ** 3 - sp_sym.Rational(3, 2) * y[3],
    }[name]
    oracle = hirota_oracle.residual_by_weight(oracle_tau, W)
    engine = _engine_by_weight(engine_tau, W)
    for w in range(W + 1):
        assert _to_sympy(engine[w]) == oracle[w], f"weight {w}"


def test_rescaling_examples():
    sp = space("A_1", 9)
    y1, y3 = sp.var((1, 0)), sp.var((1, 1))
    q1 = rescale_to_singularity_variables(y1)
    assert list(q1.terms.values())[0] == 1  # m_1 = 1
    q3 = rescale_to_singularity_variables(y3)
    assert list(q3.terms.values())[0] == Fraction(1, 3)
    assert str(q3) == "(1/3)*q_1^1"
    assert rescale_factor(cox_of("A_1"), (1, 1)) == 3
    sp4 = space("D_4", 9)
    assert list(rescale_to_singularity_variables(sp4.var((3, 1))).terms.values())[0] == Fraction(1, 3 * 9)


@settings(max_examples=25, deadline=None)
@given(st.lists(st.tuples(st.integers(0, 2), st.integers(0, 1), st.integers(0, 1), st.integers(-4, 4)), max_size=5))
def test_rescale_roundtrip_and_euler(terms):
    sp = space("A_2", 9)
    p = sp.poly(cap=9)
    for e1, e2, e3, c in terms:
        mono = sp.mono({(1, 0): e1, (2, 0): e2, (1, 1): e3})
        p = p + sp.poly({mono: c}, 9)
    q = rescale_to_singularity_variables(p)
    assert unrescale(q) == p
    # m y d/dy in y-variables equals (m_a + k h) q d/dq in q-variables
    assert unrescale(q.euler()) == euler_operator(p)
