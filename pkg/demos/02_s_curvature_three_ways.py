"""S-curvature by three independent routes.

The same scalar S(H, y) is assembled (1) from the per-family closed-form
rational functions, (2) from the generic phi-derivative coefficients, and
(3) from the contracted origin tensors r_00 and s_0.  The three numbers
agree to rounding on every in-domain tangent vector.
"""

import numpy as np

import homfinsler as hf

entry = hf.catalog_get("heisenberg3")
model, v = entry.model, entry.v

for family in ("infinite_series", "exponential"):
    spec = hf.MetricSpec.for_vector(hf.phi_family(family), v)
    print(f"== {family} metric on heisenberg3")
    print(f"{'y':<22s} {'closed':>14s} {'generic':>14s} {'tensors':>14s}")
    rng = np.random.default_rng(1)
    shown = 0
    while shown < 6:
        y = rng.standard_normal(3)
        y /= np.linalg.norm(y)
        s = v.c * y[-1]
        if family == "infinite_series" and abs(s) < 0.1:
            continue  # stay clear of the s = 0 singular locus
        a = hf.s_curvature(model, v, spec, y)
        b = hf.s_curvature(model, v, spec, y, path="generic")
        c = hf.s_curvature_via_tensors(model, v, spec, y)
        print(f"{np.array2string(y, precision=2):<22s} {a:>14.9f} {b:>14.9f} {c:>14.9f}")
        shown += 1
    print()

# Degenerate directions are exact zeros, not small numbers:
spec = hf.MetricSpec.for_vector(hf.phi_family("exponential"), v)
vf = v.frame_coords(model)
print("S(H, v) =", hf.s_curvature(model, v, spec, vf), "(y = v kills both brackets)")

central = hf.catalog_get("heisenberg_central_v")
spec_c = hf.MetricSpec.for_vector(hf.phi_family("exponential"), central.v)
y = np.array([0.3, -1.0, 0.7])
print("central v:", hf.s_curvature(central.model, central.v, spec_c, y),
      "(v in the center kills the bracket map)")

# ... and the isotropy test distinguishes the vanishing spaces:
for name in ("heisenberg3", "su2_like"):
    e = hf.catalog_get(name)
    sp = hf.MetricSpec.for_vector(hf.phi_family("exponential"), e.v)
    rep = hf.isotropy_test(e.model, e.v, sp, 30)
    print(f"{name}: isotropic = {rep.isotropic}, c_H = {rep.c_h:.2e}, "
          f"vanishing = {rep.vanishing}")
