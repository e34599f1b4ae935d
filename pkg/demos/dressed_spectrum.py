"""Anharmonic dressed ladder of one lossy atom-cavity site.

Prints the lossless dressed levels, the sqrt(n) splittings behind photon
blockade, and the complex spectra once both decay channels are open, then
draws the ladder.
"""

from pathlib import Path

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt

from jchmf import model
from jchmf.model import ModelParams

OUT = Path(__file__).parent / "output"
OUT.mkdir(exist_ok=True)

lossless = ModelParams(omega_c=1000.0)
lossy = ModelParams(omega_c=1000.0, gamma_a=0.005, gamma_c=0.005)

print("n   E(-,n)        E(+,n)        splitting   2*sqrt(n)")
for n in range(1, 6):
    e_minus = model.jc_energy(lossless, n, -1)
    e_plus = model.jc_energy(lossless, n, +1)
    print(f"{n}   {e_minus:11.6f}   {e_plus:11.6f}   {e_plus - e_minus:.6f}"
          f"    {2 * n**0.5:.6f}")

print("\nwith gamma_a = gamma_c = 0.005 the levels acquire equal widths:")
for n in range(1, 4):
    minus, plus = model.complex_dressed_spectrum(lossy, n)
    print(f"n={n}: Im E(-,n) = {minus.energy.imag:+.4f}   "
          f"Im E(+,n) = {plus.energy.imag:+.4f}   "
          f"(total intensity rate {model.total_decay(lossy, n):.3f})")

defect = model.commutator_defect(lossy)
print(f"\nlowering-mode commutator defect gamma_c/omega_c = {defect:.1e} "
      f"({'high-Q, effectively bosonic' if defect <= model.HIGH_Q_DEFECT else 'low-Q'})")

# ladder sketch: harmonic reference vs dressed levels
fig, ax = plt.subplots(figsize=(5, 4))
for n in range(1, 6):
    ax.hlines(n * 1000.0, 0.0, 0.8, color="0.7")
    ax.hlines(model.jc_energy(lossless, n, -1), 1.2, 2.0, color="tab:blue")
    ax.hlines(model.jc_energy(lossless, n, +1), 1.2, 2.0, color="tab:red")
ax.set_xticks([0.4, 1.6], ["bare cavity", "dressed"])
ax.set_ylabel("energy [beta]")
ax.set_title("photon blockade: sqrt(n) anharmonicity")
fig.tight_layout()
fig.savefig(OUT / "dressed_spectrum.png", dpi=150)
print(f"\nwrote {OUT / 'dressed_spectrum.png'}")
