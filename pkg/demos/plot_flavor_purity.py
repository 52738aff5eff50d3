"""
Flavor purity and chiral oscillations
=====================================

A neutrino created left-handed, spin down and in electron flavor does not stay
in a pure flavor state: tracing out chirality leaves a mixed flavor density
matrix.  The effect is largest when the momentum is comparable to the masses
and disappears for ultra-relativistic neutrinos.
"""

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from nuccr import single as sn
from nuccr.dirac import PhysParams

# sin^2(theta) = 0.306, (m2^2 - m1^2) / m1^2 = 0.001, masses in units of m1
fig, (ax1, ax2) = plt.subplots(2, 1, figsize=(7, 6))
for p in (0.1, 1.0, 10.0):
    params = PhysParams.from_ratios(p)
    t = sn.time_grid(params, steps=20000)
    ax1.plot(t * params.delta_E / (2 * np.pi), sn.flavor_purity_closed(t, params), lw=0.8, label=f"p/m1 = {p:g}")
    print(f"p/m1 = {p:5g}: min purity {sn.flavor_purity_closed(t, params).min():.4f}")
ax1.set_xlabel(r"$\Delta E\, t / 2\pi$")
ax1.set_ylabel(r"Tr $\rho_{e\mu}^2$")
ax1.legend()

# %%
# The survival probability differs from the textbook two-flavor formula by
# fast ripples at the chiral frequency ``E_i``.  Zoom in on the first few.
params = PhysParams.from_ratios(1.0)
t = np.linspace(0, sn.chiral_zoom_t_max(params), 4000)
ax2.plot(t, sn.survival_probability(t, params) - sn.survival_probability_standard(t, params))
ax2.set_xlabel(r"$t\ [1/m_1]$")
ax2.set_ylabel(r"$P_{ee} - P_{ee}^{S}$")
fig.tight_layout()
fig.savefig("flavor_purity.png", dpi=120)
