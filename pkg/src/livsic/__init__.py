"""Livsic-type determinantal representations of rational curves.

Submodules:

- ``exterior``: index sets, Plücker coordinates and the tensors γ
- ``ratfunc``: polynomials, rational functions and the dividing test
- ``bezoutian``: Bezoutians of rational functions on a divisor
- ``detrep``: membership, slicing, degree and structure of a tensor
- ``curves``: rational curves and the Bezoutian construction
- ``hyperbolicity``: witnesses, definiteness and LMI export
- ``cli``: command-line front end
"""

from .bezoutian import Divisor, bezout_matrix
from .curves import (RationalCurveParam, builtin_curve, builtin_example,
                     construct_gamma, containment_check, normalize_coordinates,
                     represent_curve)
from .detrep import Tolerances, degree, is_very_reasonable, membership
from .errors import LivsicError
from .exterior import GammaTensor, contract_subspace
from .ratfunc import Poly, RationalFunction, is_dividing

__all__ = [
    "Divisor", "GammaTensor", "LivsicError", "Poly", "RationalCurveParam",
    "RationalFunction", "Tolerances", "bezout_matrix", "builtin_curve",
    "builtin_example", "construct_gamma", "containment_check",
    "contract_subspace", "degree", "is_dividing", "is_very_reasonable",
    "membership", "normalize_coordinates", "represent_curve",
]
