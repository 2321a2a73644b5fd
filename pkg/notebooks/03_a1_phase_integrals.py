# %% [markdown]
# # A_1 phase integrals
#
# F(s, eps) vanishes at s = 0 and tends to 4 ln 2 as eps = 0, s -> 0.  The
# two limits do not commute, and along rays s = k eps every value between 0
# and 4 ln 2 is reached.

# %%
import math

from adehirota.a1periods import (
    A1PhaseParams,
    a_tilde_a1_direct,
    limit_commutation_study,
    phase_integral_closed,
    ray_limit,
    study_csv,
)

# %%
print(study_csv(limit_commutation_study()))

# %% [markdown]
# ## Approach to 4 ln 2

# %%
for s in (1e-2, 1e-4, 1e-6, 1e-8):
    v = phase_integral_closed(A1PhaseParams(s, 0.0))
    print(f"s = {s:.0e}: F = {float(v):.12f}, gap = {float(v) - 4 * math.log(2):.3e}")

# %% [markdown]
# ## Ray limits

# %%
for k in (0, 0.1, 1, 10, 1e3, 1e6):
    print(f"k = {k:g}: {float(ray_limit(k)):.9f}")

# %% [markdown]
# ## a~_1 directly
#
# The divergent pieces -+ 2 ln eps cancel, leaving 2 exp(-4 ln 2) = 1/8.

# %%
print(a_tilde_a1_direct())
