"""Mean Berwald curvature: closed form against the Hessian oracle.

E_ij = (1/2) d^2 S / dy_i dy_j.  The closed form expands the derivatives of
the family factor W(s) and of s(y) analytically; the oracle differentiates
the generic-path S numerically (central differences with one Richardson
refinement).  Agreement is at the 1e-5 scale set by second-order numeric
differentiation.
"""

import numpy as np

import homfinsler as hf

entry = hf.catalog_get("solvable2")
model, v = entry.model, entry.v
y = np.array([1.0, 0.3])

for family in ("infinite_series", "exponential"):
    spec = hf.MetricSpec.for_vector(hf.phi_family(family), v)
    closed = hf.mean_berwald(model, v, spec, y, path="closed_form")
    oracle = hf.mean_berwald(model, v, spec, y, path="finite_difference")
    print(f"== {family} on solvable2 at y = {y}")
    print("closed form:")
    print(np.array2string(closed, precision=12))
    print("finite-difference Hessian of S:")
    print(np.array2string(oracle, precision=12))
    print(f"max |difference| = {np.max(np.abs(closed - oracle)):.3e}")
    print()

# E is homogeneous of degree -1: doubling y halves E.
spec = hf.MetricSpec.for_vector(hf.phi_family("exponential"), v)
e1 = hf.mean_berwald(model, v, spec, y)
e2 = hf.mean_berwald(model, v, spec, 2.0 * y)
print("max |E(2y) - E(y)/2| =", np.max(np.abs(e2 - e1 / 2.0)))

# The workspace exposes the intermediates if you want to inspect them:
ws = hf.berwald_workspace(model, v, spec, y)
print(f"s = {ws.s:.6f}, W = {ws.factor:.6f}, dW/ds = {ws.dfactor_ds:.6f}, "
      f"d2W/ds2 = {ws.d2factor_ds2:.6f}")
print("Euler check s_y . y =", float(ws.s_y @ y), "(degree-0 homogeneity of s)")
