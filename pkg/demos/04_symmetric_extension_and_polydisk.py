# %% [markdown]
# # Symmetric extension and the polydisk
#
# Extending `q` to all orthants by `q(z) = conj q(conj z)` keeps a
# decomposition, now with an error term `E` built from the mixed `N`-sum.
# The Cayley transform moves everything to the unit polydisk.

# %%
import numpy as np

import nvk
from nvk.fixtures import curve_measure, inverse_sum_sym, orthant_D

# %% [markdown]
# ## Error term across orthants
# When both points share an orthant of the upper half-plane, `E` vanishes.
# For `z` in `C+ x C-` and `w` in `C- x C+` the Poisson-type part is zero and
# `E` carries the whole jump.

# %%
mu = curve_measure()
z, w = np.array([1 + 1j, 2j]), np.array([-1 + 0.5j, 1j])
print("E, same orthant  :", abs(nvk.symmetric_error_term(mu, z, w)))
z, w = np.array([1 + 1j, -0.5 - 2j]), np.array([0.3 - 1j, 2 + 0.5j])
E = nvk.symmetric_error_term(mu, z, w)
jump = inverse_sum_sym(z) - np.conj(inverse_sum_sym(w))
print("E, mixed orthants:", np.round(E, 10), " -jump:", np.round(-jump, 10))
print("residual         :", nvk.symmetric_decomposition_residual(inverse_sum_sym, np.zeros(2), mu, z, w, D_sym=orthant_D))

# %% [markdown]
# ## Polydisk
# `f(xi) = -i q(phi(xi))` has nonnegative real part and a PSD Szego-type kernel.

# %%
f = nvk.DiskFunction.from_hn(nvk.InverseSum())
xi = nvk.sample_disk_points(2, 20, seed=3)
print("min Re f          :", f.min_real_part(xi))
print("Szego kernel PSD  :", nvk.psd_check(nvk.szego_psd_function(f), xi).verdict_psd)
print("residue identity  :", nvk.residue_identity_check(0.5, 0.2j))
