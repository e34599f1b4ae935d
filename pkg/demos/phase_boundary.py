"""Unit-filling localized lobe: closed form versus the numerical oracle.

Traces the critical hopping across the lobe with the perturbative closed
form, marks the tip, and overlays the independent self-consistent numerical
boundary (which keeps every dressed channel the closed form truncates).
"""

from pathlib import Path

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from jchmf import gutzwiller, perturbation
from jchmf.model import ModelParams, mott_lobe_interval

OUT = Path(__file__).parent / "output"
OUT.mkdir(exist_ok=True)

lo, hi = mott_lobe_interval(ModelParams())
mu_star, zk_star = perturbation.lobe_tip(ModelParams())
print(f"lobe interval: mu_tilde in ({lo:.4f}, {hi:.4f})")
print(f"tip: mu_tilde = {mu_star:.5f}, zkappa_c = {zk_star:.6f}  (about 0.16)")

mu_dense = np.linspace(lo + 1e-4, hi - 1e-4, 400)
closed_form = [perturbation.boundary_kappa(ModelParams(mu_tilde=float(m)))
               for m in mu_dense]

mu_oracle = np.linspace(lo + 0.05, hi - 0.03, 9)
basis = gutzwiller.TruncatedBasis(6)
print("\nmu_tilde    closed form   numerical    rel dev")
numeric = []
for m in mu_oracle:
    params = ModelParams(mu_tilde=float(m))
    pt = perturbation.boundary_kappa(params)
    nb = gutzwiller.numeric_boundary(params, basis)
    numeric.append(nb)
    print(f"{m:+.4f}     {pt:.6f}     {nb:.6f}    {abs(nb - pt) / pt:.3%}")

fig, ax = plt.subplots(figsize=(5.5, 4))
ax.plot(closed_form, mu_dense, label="closed form")
ax.plot(numeric, mu_oracle, "o", mfc="none", label="numerical oracle")
ax.plot(zk_star, mu_star, "k*", ms=12, label="tip")
ax.set_xlabel("zkappa/beta")
ax.set_ylabel("mu_tilde")
ax.set_title("localized lobe (left of the curve)")
ax.legend()
fig.tight_layout()
fig.savefig(OUT / "phase_boundary.png", dpi=150)
print(f"\nwrote {OUT / 'phase_boundary.png'}")
