"""Exploring the classical tensor of the twisted cubic.

Run with ``python3 demos/twisted_cubic.py``.
"""

import numpy as np

from livsic import curves, detrep
from livsic.exterior import contract_subspace

gamma = curves.builtin_example("twisted_cubic")
for I in gamma.index_sets:
    print(f"gamma_{I[0]}{I[1]} =", gamma[I].astype(int).tolist())

# points of the curve have a one-dimensional kernel, other points none
for mu in ([1, 2, 4, 8], [1, 0, 1, 0]):
    print(mu, "kernel dimension", detrep.membership(gamma, mu).kernel_dim)

# the plane x_0 = x_3 meets the curve at the cube roots of unity
rep = detrep.slice_intersections(gamma, np.eye(4)[1:3], [1, 0, 0, 1])
for pt in rep.points:
    print("slice point t =", np.round(pt.t, 12), "kernel", pt.kernel_dim)

deg = detrep.degree(gamma, seed=0)
print("degree", deg.degree, "of matrix size", deg.n)
print("gamma(span{e1, e2}) =", contract_subspace(gamma, np.eye(4)[1:3]).astype(int).tolist())

rng = np.random.default_rng(0)
V0, w1, w2 = rng.standard_normal((3, 4))
prof = detrep.schubert_det_profile(gamma, [V0], w1, w2)
print("pencil determinant has degree", prof.degree, "with roots", np.round(prof.roots(), 6))
