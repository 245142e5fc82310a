"""The two physical regimes of the interface problem.

An incoming plane wave from below hits y = 0.  Above the critical angle it
is partially reflected and a plane wave is transmitted upward; below it,
total internal reflection leaves only exponentially decaying modes above
the interface.  This script prints the Snell coefficients for both regimes
and writes raster CSVs of the exact fields (re/im parts) that the plotting
frontend turns into the contour figures.
"""
import os

import numpy as np

from wavevem import ExactSolution, InterfaceProblem, critical_angle

OUT = os.path.join(os.path.dirname(__file__), "out")
os.makedirs(OUT, exist_ok=True)


def dump_raster(exact, path, n=161):
    ticks = np.linspace(-1.0, 1.0, n + 1)
    mids = 0.5 * (ticks[:-1] + ticks[1:])
    X, Y = np.meshgrid(mids, mids, indexing="ij")
    pts = np.column_stack([X.ravel(), Y.ravel()])
    vals = exact(pts)
    with open(path, "w") as fh:
        fh.write("x,y,re_exact,im_exact,re_proj,im_proj\n")
        for p, v in zip(pts, vals):
            fh.write(
                f"{p[0]:.10e},{p[1]:.10e},{v.real:.10e},{v.imag:.10e},"
                f"{v.real:.10e},{v.imag:.10e}\n"
            )
    print(f"  wrote {path}")


print(f"critical angle for n1=2, n2=1: {np.degrees(critical_angle(2.0, 1.0)):.1f} deg")

for name, theta_deg in (("transmission", 75.0), ("total_reflection", 50.0)):
    problem = InterfaceProblem(k=7.0, n1=2.0, n2=1.0, theta_inc=np.deg2rad(theta_deg))
    exact = ExactSolution(problem)
    print(f"\n{name}: incidence {theta_deg:.0f} deg (k1={problem.k1:.0f}, k2={problem.k2:.0f})")
    print(f"  K1 = {exact.K1:.6f}")
    print(f"  K2 = {exact.K2:.6f}")
    print(f"  R  = {exact.R:.6f}  |R| = {abs(exact.R):.6f}")
    print(f"  T  = {exact.T:.6f}")
    if exact.K2.imag > 0:
        rate = problem.k2 * exact.K2.imag
        print(f"  transmitted field decays like exp(-{rate:.3f} y)")
    dump_raster(exact, os.path.join(OUT, f"exact_{name}.csv"))
