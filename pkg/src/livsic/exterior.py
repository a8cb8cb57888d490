"""Exterior-algebra bookkeeping for tensors in Λ^{k+1} C^{d+1} ⊗ M_n(C).

Index sets are plain sorted tuples of ints.  The orientation of the top
exterior power is fixed by ``e_0 ∧ ... ∧ e_d -> 1``; every sign in this
module follows from that choice.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

import numpy as np
from scipy.linalg import null_space

from .errors import Inconsistency, InvalidArgument

IndexSet = tuple[int, ...]

_DEPENDENCE_RTOL = 1e-12


def index_set(elements: Iterable[int], d: int | None = None) -> IndexSet:
    """Validate and return ``elements`` as a sorted tuple."""
    out = tuple(int(e) for e in elements)
    if any(a >= b for a, b in zip(out, out[1:])):
        raise InvalidArgument(f"index set {out} is not strictly increasing")
    if out and out[0] < 0:
        raise InvalidArgument(f"negative index in {out}")
    if d is not None and out and out[-1] > d:
        raise InvalidArgument(f"index set {out} exceeds range 0..{d}")
    return out


def subsets(d: int, size: int) -> list[IndexSet]:
    """All index sets of the given size in ``{0, ..., d}``, lexicographic."""
    return list(itertools.combinations(range(d + 1), size))


def complement(I: Sequence[int], d: int) -> IndexSet:
    s = set(I)
    return tuple(j for j in range(d + 1) if j not in s)


def removal_sign(J: Sequence[int], j: int) -> int:
    """(-1)**(number of elements of J larger than j); j must belong to J."""
    if j not in J:
        raise InvalidArgument(f"{j} is not an element of {tuple(J)}")
    return -1 if sum(1 for x in J if x > j) % 2 else 1


def complement_sign(I: Sequence[int], d: int) -> int:
    """Sign s with e_I ∧ e_{I^c} = s · e_0 ∧ ... ∧ e_d."""
    I = index_set(I, d)
    Ic = complement(I, d)
    inversions = sum(1 for i in I for j in Ic if j < i)
    return -1 if inversions % 2 else 1


@dataclass(frozen=True, eq=False)
class GammaTensor:
    """A tensor γ = Σ_I γ_I e_I with n×n matrix coefficients.

    ``entries`` maps index sets of size ``k + 1`` to matrices; a missing key
    stands for the zero matrix.
    """

    d: int
    k: int
    n: int
    entries: Mapping[IndexSet, np.ndarray] = field(default_factory=dict)

    def __post_init__(self):
        if not (0 <= self.k < self.d):
            raise InvalidArgument(f"need 0 <= k < d, got k={self.k}, d={self.d}")
        if self.n < 1:
            raise InvalidArgument("matrix size n must be positive")
        clean = {}
        for key, mat in self.entries.items():
            I = index_set(key, self.d)
            if len(I) != self.k + 1:
                raise InvalidArgument(f"index set {I} should have size {self.k + 1}")
            m = np.array(mat, dtype=complex if np.iscomplexobj(mat) else float)
            if m.shape != (self.n, self.n):
                raise InvalidArgument(f"entry {I} has shape {m.shape}, expected {(self.n, self.n)}")
            m.setflags(write=False)
            clean[I] = m
        object.__setattr__(self, "entries", dict(sorted(clean.items())))

    def __getitem__(self, I: Sequence[int]) -> np.ndarray:
        I = tuple(I)
        if I in self.entries:
            return self.entries[I]
        return np.zeros((self.n, self.n), dtype=self.dtype)

    @property
    def dtype(self):
        if any(np.iscomplexobj(m) for m in self.entries.values()):
            return complex
        return float

    @property
    def index_sets(self) -> list[IndexSet]:
        return subsets(self.d, self.k + 1)

    @classmethod
    def zeros(cls, d: int, k: int, n: int) -> "GammaTensor":
        return cls(d, k, n, {})

    def is_zero(self, atol: float = 0.0) -> bool:
        return all(np.max(np.abs(m)) <= atol for m in self.entries.values())

    def norm(self) -> float:
        """Largest Frobenius norm among the coefficient matrices."""
        return max((np.linalg.norm(m) for m in self.entries.values()), default=0.0)

    def is_hermitian(self, rtol: float = 1e-10) -> bool:
        scale = max(self.norm(), 1.0)
        return all(np.max(np.abs(m - m.conj().T), initial=0.0) <= rtol * scale
                   for m in self.entries.values())

    def is_real(self, rtol: float = 1e-12) -> bool:
        scale = max(self.norm(), 1.0)
        return all(np.max(np.abs(np.imag(m)), initial=0.0) <= rtol * scale
                   for m in self.entries.values())

    def real_if_close(self, rtol: float = 1e-12) -> "GammaTensor":
        if self.dtype is float or not self.is_real(rtol):
            return self
        return GammaTensor(self.d, self.k, self.n, {I: np.real(m) for I, m in self.entries.items()})

    def map(self, fn) -> "GammaTensor":
        return GammaTensor(self.d, self.k, self.n, {I: fn(m) for I, m in self.entries.items()})

    def __add__(self, other: "GammaTensor") -> "GammaTensor":
        if (self.d, self.k, self.n) != (other.d, other.k, other.n):
            raise InvalidArgument("shape mismatch in tensor sum")
        keys = set(self.entries) | set(other.entries)
        return GammaTensor(self.d, self.k, self.n, {I: self[I] + other[I] for I in keys})

    def __mul__(self, c) -> "GammaTensor":
        return self.map(lambda m: c * m)

    __rmul__ = __mul__

    def with_entry(self, I: Sequence[int], mat) -> "GammaTensor":
        ent = dict(self.entries)
        ent[tuple(I)] = mat
        return GammaTensor(self.d, self.k, self.n, ent)

    def direct_sum(self, other: "GammaTensor") -> "GammaTensor":
        """Block-diagonal tensor with blocks ``self`` and ``other``."""
        if (self.d, self.k) != (other.d, other.k):
            raise InvalidArgument("direct sum needs equal d and k")
        n = self.n + other.n
        ent = {}
        for I in set(self.entries) | set(other.entries):
            m = np.zeros((n, n), dtype=complex if complex in (self.dtype, other.dtype) else float)
            m[: self.n, : self.n] = self[I]
            m[self.n:, self.n:] = other[I]
            ent[I] = m
        return GammaTensor(self.d, self.k, n, ent)


@dataclass(frozen=True)
class PluckerVector:
    d: int
    m: int
    coords: Mapping[IndexSet, complex]

    def __getitem__(self, J: Sequence[int]) -> complex:
        return self.coords.get(tuple(J), 0.0)

    def as_array(self) -> np.ndarray:
        return np.array([self[J] for J in subsets(self.d, self.m)])


def _as_matrix(basis, d: int | None = None) -> np.ndarray:
    """Stack basis vectors as the columns of a (d+1)×m array."""
    M = np.array(basis)
    if M.ndim == 1:
        M = M[None, :]
    M = M.T
    if d is not None and M.shape[0] != d + 1:
        raise InvalidArgument(f"vectors must have length {d + 1}, got {M.shape[0]}")
    return M


def check_independent(M: np.ndarray, what: str = "basis") -> None:
    if M.shape[1] == 0:
        return
    if M.shape[1] > M.shape[0]:
        raise InvalidArgument(f"{what}: {M.shape[1]} vectors in dimension {M.shape[0]}")
    s = np.linalg.svd(M, compute_uv=False)
    if s[0] == 0 or s[-1] <= _DEPENDENCE_RTOL * s[0]:
        raise InvalidArgument(f"{what} is linearly dependent")


def plucker_coords(basis) -> PluckerVector:
    """Maximal minors of the matrix whose columns are the basis vectors."""
    M = _as_matrix(basis)
    check_independent(M)
    d, m = M.shape[0] - 1, M.shape[1]
    return PluckerVector(d, m, _minors(M))


def _minors(M: np.ndarray) -> dict[IndexSet, complex]:
    d, m = M.shape[0] - 1, M.shape[1]
    out = {}
    for J in subsets(d, m):
        val = np.linalg.det(M[list(J), :]) if m else 1.0
        if val != 0:
            out[J] = val
    return out


def wedge_point(gamma: GammaTensor, mu) -> dict[IndexSet, np.ndarray]:
    """Coefficients (γ∧μ)_J for all index sets J of size k+2."""
    mu = np.asarray(mu)
    if mu.shape != (gamma.d + 1,):
        raise InvalidArgument(f"point must have {gamma.d + 1} coordinates")
    if not np.any(mu):
        raise InvalidArgument("zero vector does not define a point")
    dtype = np.result_type(gamma.dtype, mu.dtype)
    out = {}
    for J in subsets(gamma.d, gamma.k + 2):
        acc = np.zeros((gamma.n, gamma.n), dtype=dtype)
        for j in J:
            I = tuple(x for x in J if x != j)
            if I in gamma.entries and mu[j] != 0:
                acc = acc + removal_sign(J, j) * mu[j] * gamma.entries[I]
        out[J] = acc
    return out


def stacked_wedge(gamma: GammaTensor, mu) -> np.ndarray:
    """All (γ∧μ)_J stacked vertically, an (N·n)×n matrix."""
    return np.vstack(list(wedge_point(gamma, mu).values()))


def _contract(gamma: GammaTensor, M: np.ndarray) -> np.ndarray:
    if M.shape != (gamma.d + 1, gamma.d - gamma.k):
        raise InvalidArgument(
            f"need {gamma.d - gamma.k} vectors of length {gamma.d + 1}, got shape {M.T.shape}")
    p = _minors(M)
    out = np.zeros((gamma.n, gamma.n), dtype=np.result_type(gamma.dtype, M.dtype))
    for I, mat in gamma.entries.items():
        Ic = complement(I, gamma.d)
        if Ic in p:
            out = out + complement_sign(I, gamma.d) * p[Ic] * mat
    return out


def contract_subspace(gamma: GammaTensor, basis) -> np.ndarray:
    """γ(V) = γ ∧ v_0 ∧ ... ∧ v_{d-k-1} as an n×n matrix."""
    M = _as_matrix(basis, gamma.d)
    check_independent(M, "subspace basis")
    return _contract(gamma, M)


def contract_replaced(gamma: GammaTensor, basis, i: int, u) -> np.ndarray:
    """γ(V, i, u): the contraction with the i-th basis vector replaced by ``u``."""
    M = _as_matrix(basis, gamma.d)
    if not 0 <= i < M.shape[1]:
        raise InvalidArgument(f"slot {i} out of range 0..{M.shape[1] - 1}")
    u = np.asarray(u)
    M = M.astype(np.result_type(M.dtype, u.dtype), copy=True)
    M[:, i] = u
    return _contract(gamma, M)


def dual_plucker_pair(basis) -> tuple[np.ndarray, np.ndarray]:
    """Covectors (a, b) annihilating a codimension-2 subspace V.

    They are normalized so that ``a_i b_j - a_j b_i`` equals the signed
    complementary Plücker coordinate of V for every i < j, which makes
    ``γ(V) = Σ_{i<j} (a_i b_j - a_j b_i) γ_ij``.
    """
    M = _as_matrix(basis)
    d = M.shape[0] - 1
    if M.shape[1] != d - 1:
        raise InvalidArgument(f"need {d - 1} basis vectors in dimension {d + 1}")
    check_independent(M, "subspace basis")
    N = null_space(M.T)
    a, b = N[:, 0], N[:, 1]
    p = _minors(M)
    pairs = subsets(d, 2)
    target = np.array([complement_sign(P, d) * p.get(complement(P, d), 0.0) for P in pairs])
    wedge = np.array([a[i] * b[j] - a[j] * b[i] for i, j in pairs])
    scale = np.vdot(wedge, target) / np.vdot(wedge, wedge)
    if np.isrealobj(M):
        scale = scale.real
    b = b * scale
    wedge = wedge * scale
    if np.max(np.abs(wedge - target)) > 1e-9 * np.max(np.abs(target)):
        raise Inconsistency("dual pair does not reproduce the Plücker coordinates")
    return a, b


def transform(gamma: GammaTensor, g) -> GammaTensor:
    """Push γ forward along g ∈ GL_{d+1}: e_I ↦ (Λ^{k+1} g) e_I."""
    g = np.asarray(g)
    if g.shape != (gamma.d + 1, gamma.d + 1):
        raise InvalidArgument("g has the wrong shape")
    check_independent(g, "transformation")
    dtype = np.result_type(gamma.dtype, g.dtype)
    out = {}
    for K in gamma.index_sets:
        acc = np.zeros((gamma.n, gamma.n), dtype=dtype)
        for I, mat in gamma.entries.items():
            c = np.linalg.det(g[np.ix_(K, I)])
            if c != 0:
                acc = acc + c * mat
        out[K] = acc
    return GammaTensor(gamma.d, gamma.k, gamma.n, out)
