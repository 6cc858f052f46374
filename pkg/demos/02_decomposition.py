# %% [markdown]
# # Decomposing a Herglotz-Nevanlinna function
#
# Every such `q` with data `(a, b, mu)` satisfies
# `q(z) - conj q(w) = sum_j b_j (z_j - conj w_j) + (2i)^{1-n} prod_j (z_j - conj w_j) D(z, w)`
# where `D` is the Poisson-type function of `mu`.  `decompose` certifies this
# on random pairs.

# %%
import numpy as np

import nvk

# %% [markdown]
# ## `q(z) = -1/(z1 + z2)`
# Its representing measure lives on the anti-diagonal `t2 = -t1`.

# %%
q = nvk.DataBacked(nvk.InverseSum().data)
cert = nvk.decompose(q, m=20, seed=1)
print("verdict      :", cert.verdict)
print("max residual :", f"{cert.max_residual:.2e}")
print("d            :", cert.d)

# %% [markdown]
# ## Reconstructing `q` from `(a, d, D)`

# %%
for z in nvk.sample_upper_points(2, 3, seed=2):
    rebuilt = nvk.d_representation(0.0, cert.d, cert.D, z)
    print(np.round(z, 3), "q =", np.round(q(z), 8), "rebuilt =", np.round(rebuilt, 8))

# %% [markdown]
# ## Linear functions
# `q(z) = sum b_j z_j` has zero measure, so `D = 0` and `d = b`.

# %%
cert = nvk.decompose(nvk.Affine(0.0, (1.0, 3.0)), m=5)
print("d =", cert.d, "unique:", cert.unique)
