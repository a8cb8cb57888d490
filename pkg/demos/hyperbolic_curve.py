"""A real cubic that is hyperbolic with respect to a line.

The curve t -> (t^3 - t, 1 - 3t^2, t^3, t^2 + t) is hyperbolic with respect
to the line x_0 = x_1 = 0, so planes through that line meet it in real points
only and the Hermitian representation is definite there.

Run with ``python3 demos/hyperbolic_curve.py``.
"""

import numpy as np

from livsic import curves, hyperbolicity as hy
from livsic.exterior import contract_subspace

c = curves.builtin_curve("pick_cubic")
line = np.eye(4)[2:]

exact = hy.is_witness_exact(c, line)
print("disjoint:", exact.disjoint, "residues:", [float(r) for r in exact.dividing.residues])

gamma = curves.construct_gamma(c).gamma
print("gamma(V) =", contract_subspace(gamma, line).tolist())
print("definite sign:", hy.is_witness_definite(gamma, line))
print("sections:", hy.sampled_section_reality(c, line, count=200))

# moving the line a little keeps it a witness; crossing the curve does not
rng = np.random.default_rng(0)
step = rng.standard_normal((2, 4))
path = [line + s * step for s in np.linspace(0, 0.05, 6)]
print("small path:", hy.witness_path_check(c, path))
through = np.vstack([c(0.5), [0, 0, 1, 0]])
print("through a curve point:", hy.witness_path_check(c, [line, through]))

scan = hy.slice_definiteness_scan(gamma, [[0, 0, 1, 0]], [0, 0, 0, 1], [1, 0, 0, 0])
print("definite runs along a pencil of planes:", scan.runs)

exp = hy.lmi_export(gamma)
print("LMI coefficient index sets:", list(exp.matrices))
