# %% [markdown]
# # Kernels and positive semi-definiteness
#
# A Herglotz-Nevanlinna function `q` on the poly-upper half-plane has
# `Im q >= 0`.  Its Nevanlinna kernel `(q(z) - conj q(w)) / (z - conj w)`
# style objects are tested for positive semi-definiteness through Gram
# matrices on sampled points.

# %%
import numpy as np

import nvk
from nvk.fixtures import curve_measure, inverse_sum_D

# %% [markdown]
# ## The Poisson kernel and its extension
# On the diagonal `w = z` the extended Poisson kernel reduces to the usual
# product Poisson kernel.

# %%
z = np.array([1 + 1j, -0.5 + 2j])
t = np.array([[0.0, 0.0], [1.0, -1.0]])
print("P_2(z, t)          :", nvk.poisson_kernel(z, t))
print("extended at w = z  :", nvk.extended_poisson(z, z, t).real)
print("kernel identity res:", nvk.kernel_difference_check(z, np.array([2 - 1j, 1j]), t).max())

# %% [markdown]
# ## Gram matrices
# The Poisson-type function of the curve measure behind `-1/(z1 + z2)` is
# positive semi-definite.  A negated rank-one kernel is not.

# %%
D = nvk.PoissonTypeFunction(curve_measure(), closed_form=inverse_sum_D)
pts = nvk.sample_upper_points(2, 25, seed=0)
rep = nvk.psd_check(D.kernel(), pts)
print(f"D: m={rep.m} min eigenvalue {rep.min_eigenvalue:.3e}, negative count {rep.negative_count}")

bad = nvk.KernelFunction(lambda z, w: -1.0 / ((z[0] + z[1]) * np.conj(w[0] + w[1])), 2, name="minus rank one")
rep = nvk.psd_check(bad, pts[:10])
print(f"{bad.name}: min eigenvalue {rep.min_eigenvalue:.3e}, negative count {rep.negative_count}")

# %% [markdown]
# ## Negative squares
# Nested samples give a lower estimate of the number of negative squares.

# %%
kappa, est = nvk.negative_squares_estimate(bad, trials=2, sizes=(4, 8, 16))
print("negative squares estimate:", kappa, "counts per trial:", est.counts)
