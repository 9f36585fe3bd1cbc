"""Tour of the built-in example spaces and their validation reports.

Each catalog entry is a reductive homogeneous space given by structure
constants, with an invariant vector v of length 0.5.  The validator checks
bracket antisymmetry, the Jacobi identity, reductivity, and the two
h-invariance conditions, reporting a max residual for each.
"""

import numpy as np

import homfinsler as hf

for name in hf.catalog_names():
    entry = hf.catalog_get(name)
    model = entry.model
    print(f"== {name}  (dim g = {model.structure.dim_g}, "
          f"dim m = {model.m_dim}, |v| = {entry.v.c})")
    print(f"   {entry.notes}")
    report = hf.validate_model(model, entry.v)
    for check in report.checks:
        status = "ok " if check.passed else "FAIL"
        print(f"   [{status}] {check.name:<26s} residual {check.residual:.3e}")
    print(f"   frame (rows are frame vectors in m-coordinates):")
    for row in model.frame:
        print(f"      {np.array2string(row, precision=3)}")
    print()

# The validator also catches broken inputs.  Supplying both c(0,1,2) = 1 and
# c(1,0,2) = 0 verbatim breaks antisymmetry with residual exactly 1:
broken = hf.StructureConstants.from_entries(
    3, {(0, 1, 2): 1.0, (1, 0, 2): 0.0}, strict=False)
model, v = hf.build_model(broken, 0, np.eye(3), [0.5, 0.0, 0.0])
report = hf.validate_model(model, v)
bad = report.failed_checks()[0]
print(f"broken table: check {bad.name!r} fails with residual {bad.residual}")
