"""Bezoutians of rational functions with simple poles.

Run with ``python3 demos/bezoutians.py``.
"""

import numpy as np

from livsic.bezoutian import (Divisor, bezout_matrix, duality_report,
                              fundamental_identity_residual, u_vector)
from livsic.ratfunc import Poly, RationalFunction

t = Poly([0.0, 1.0])
f = RationalFunction(1.0, t)        # 1/t
g = RationalFunction(1.0, t - 1)    # 1/(t - 1)
D = Divisor([0.0, 1.0])

B = bezout_matrix(f, g, D)
print("B_D(1/t, 1/(t-1)) =")
print(B.matrix)

# (f(p) g(q) - f(q) g(p)) / (q - p) is recovered from the matrix
p, q = 2.0, 3.0
value = u_vector(D, p, "left") @ B.matrix @ u_vector(D, q, "right")
print(f"kernel form at ({p}, {q}): {value:.15f}  (exact -1/12 = {-1 / 12:.15f})")
print("identity residual:", fundamental_identity_residual(B, f, g, p, q))

# a Pick function gives a definite Bezoutian against the constant 1
pick = -RationalFunction.from_partial_fractions([0, 1], [1, 1])
print("B(-1, -(1/t + 1/(t-1))) eigenvalues:",
      np.linalg.eigvalsh(bezout_matrix(RationalFunction(-1.0), pick, D).matrix))

# on an unramified fiber the pairings diagonalize with g' on the diagonal
print("pairings over the fiber of the Pick function at 1:")
print(np.round(duality_report(pick, D, 1.0).real, 12))
