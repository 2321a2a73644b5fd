# %% [markdown]
# # Vertex operators, the OPE and the bilinear equation
#
# The Fock space C[y_(a,n)] is graded by weight m_a + n h.  Every operator
# used here has degree 0, so truncating by weight keeps the surviving
# components exact.

# %%
from adehirota.coeffs import beta_table, compute_a, eigenbasis
from adehirota.fock import FockSpace, apply_vertex, hirota_residual, ope_check, tau_one_soliton
from adehirota.rootsys import coxeter_data

cox = coxeter_data("A_1")
basis = eigenbasis(cox)
beta = beta_table(cox, basis, 18)
sp = FockSpace(cox, basis.field, 18)

# %% [markdown]
# ## Gamma^{alpha}(zeta) applied to 1
#
# The derivative part acts trivially, leaving exp(sum 2 y_m zeta^m).

# %%
block = apply_vertex(beta, sp, 0, 1, sp.one(5), 5)
for p in block.powers():
    print(f"zeta^{p}:", block.coefficient(p))

# %% [markdown]
# ## OPE check
#
# Both sides of Gamma^{alpha}(zeta) Gamma^{-alpha}(w) = B(zeta, w) :Gamma Gamma:
# are compared on every monomial of weight <= 6, with B from the product
# formula.

# %%
for label in ("A_1", "A_2"):
    c = coxeter_data(label)
    b = eigenbasis(c)
    r = ope_check(c, beta_table(c, b, 18), 0, 6, 12)
    print(label, r.passed, r.coefficients_compared, "coefficients compared")

# %% [markdown]
# ## Tau functions for KdV (A_1)
#
# The one-soliton and y_1 are tau functions; y_1^2 is not.

# %%
a = compute_a(cox)
W = 9
small = FockSpace(cox, basis.field, W)
b9 = beta_table(cox, basis, W)
y1 = small.var((1, 0), W)
for name, tau in [("soliton", tau_one_soliton(b9, small, 0, 1, 1, W)), ("y1", y1), ("y1^2", y1 * y1)]:
    res = hirota_residual(cox, a, b9, tau, W)
    print(f"{name:8s} nonzero weights: {res.nonzero_weights}")
