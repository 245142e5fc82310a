"""Why the element wavenumber must avoid Neumann-Laplace eigenvalues.

The projector onto the wave space inverts the boundary-reduced energy form;
its minimal eigenvalue collapses whenever k^2 approaches a Neumann-Laplace
eigenvalue pi^2 (m^2 + n^2) of the element.  The scan reproduces the dips
on the unit square and writes them as a CSV.
"""
import os

import numpy as np

from wavevem.assembly import local_G
from wavevem.mesh import ElementGeometry
from wavevem.waves import make_element_basis

OUT = os.path.join(os.path.dirname(__file__), "out")
os.makedirs(OUT, exist_ok=True)

square = ElementGeometry.from_loop([[0, 0], [1, 0], [1, 1], [0, 1]])
ks = np.arange(3.2, 9.8 + 1e-9, 0.05)

curves = {}
for q2, qt2 in ((4, 1), (6, 1)):
    vals = []
    for k2 in ks:
        basis = make_element_basis(
            0, square.centroid, float(k2), q=q2, q_ev=qt2,
            n1=2.0, n2=1.0, k_base=float(k2),
        )
        G = local_G(square, basis)
        vals.append(np.min(np.abs(np.linalg.eigvalsh(0.5 * (G + G.conj().T)))))
    curves[(q2, qt2)] = np.array(vals)

path = os.path.join(OUT, "resonance_scan.csv")
with open(path, "w") as fh:
    fh.write("k2," + ",".join(f"mineig_q{q}_qt{t}" for q, t in curves) + "\n")
    for i, k2 in enumerate(ks):
        row = ",".join(f"{curves[key][i]:.6e}" for key in curves)
        fh.write(f"{k2:.4f},{row}\n")
print(f"wrote {path}")

targets = [np.sqrt(2) * np.pi, 2 * np.pi, np.sqrt(5) * np.pi, 2 * np.sqrt(2) * np.pi]
print("Neumann-Laplace resonances sqrt(pi^2 (m^2+n^2)) in range:")
print("  " + "  ".join(f"{t:.3f}" for t in targets))
for key, vals in curves.items():
    mins = [
        float(ks[i])
        for i in range(1, len(ks) - 1)
        if vals[i] < vals[i - 1] and vals[i] < vals[i + 1]
    ]
    print(f"local minima at q2={key[0]}, qt2={key[1]}: "
          + "  ".join(f"{m:.2f}" for m in mins))
