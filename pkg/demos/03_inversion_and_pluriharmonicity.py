# %% [markdown]
# # Recovering the measure and testing pluriharmonicity
#
# The Stieltjes inversion formula recovers `int psi dmu` from the diagonal
# `y^n D(x + iy, x + iy)` as `y -> 0`.  A Poisson-type function comes from a
# Nevanlinna measure exactly when `prod Im z_j D(z, z)` is pluriharmonic.

# %%
import math

import numpy as np

import nvk
from nvk.fixtures import curve_measure, dirac_D, dirac_measure, inverse_sum_D


def lorentz(x):
    return np.prod(1 / (1 + x * x), axis=-1)


# %% [markdown]
# ## Inversion

# %%
P = nvk.PoissonTypeFunction(nvk.ScaledLebesgue((1.0,)))
res = nvk.stieltjes_invert(P, lorentz)
print(f"Lebesgue on R : {res.value:.10f}  (exact pi = {math.pi:.10f})")

Pd = nvk.PoissonTypeFunction(dirac_measure(), closed_form=dirac_D, closed_form_domain="offaxis")
res = nvk.stieltjes_invert(Pd, lorentz)
print(f"pi^2 delta_0  : {res.value:.6f}  (exact pi^2 = {math.pi ** 2:.6f})")
print("raw sequence  :", np.round(res.raw, 6))

# %% [markdown]
# ## Pluriharmonicity
# The curve measure is Nevanlinna; a single point mass in two variables is not.

# %%
Pc = nvk.PoissonTypeFunction(curve_measure(), closed_form=inverse_sum_D)
print("curve defect :", f"{nvk.pluriharmonic_defect(Pc, [1j, 2j]).defect:.2e}")
print("dirac defect :", f"{nvk.pluriharmonic_defect(Pd, [1j, 1j]).defect:.2e}")
print("dirac Nevanlinna check:", nvk.check_nevanlinna(dirac_measure(), [[1 + 1j, 2j]]).verdict)
