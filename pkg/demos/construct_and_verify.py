"""Build a representation of a rational curve from its parametrization.

Run with ``python3 demos/construct_and_verify.py``.
"""

import numpy as np

from livsic import curves, detrep

# the smooth rational quartic (1, t, t^3, t^4) in P^3
c = curves.RationalCurveParam([[1], [0, 1], [0, 0, 0, 1], [0, 0, 0, 0, 1]])
print("validation:", curves.validate_curve(c))

res = curves.represent_curve(c, seed=1)
print("normalizing g =\n", np.round(res.normalization.g, 4))
print("divisor:", np.round(res.normalization.divisor.as_array(), 6))
print("very reasonable:", res.report.vr)
print("containment residual in original coordinates:", res.containment_residual)

V, u = np.random.default_rng(2).standard_normal((2, 4)), np.random.default_rng(3).standard_normal(4)
comm = detrep.pencil_commutation_report(res.gamma, V, u)
print("pencil commutator", comm.commutator, "semisimple:", comm.ok)
print("structure residual:", detrep.vr_struct_residual(res.gamma, V))

# compare with the classical tensor for the same curve
print("built-in tensor passes too:",
      curves.containment_check(c, curves.builtin_example("rational_p3")).passed)
