"""Hyperbolicity of real rational curves with respect to codimension-2 planes.

A real plane V of codimension 2 misses the curve C and is a witness when
every real hyperplane through V meets C in real points only.  With (a, b) a
dual pair of V, the hyperplanes through V are the pullbacks of cos θ·a +
sin θ·b, so V is a witness exactly when t ↦ (b·μ(t)) / (a·μ(t)) has all its
fibers over the real line real.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .curves import RationalCurveParam, lambda_functions
from .errors import Inconsistency, InvalidArgument, NotHermitian
from .exterior import (GammaTensor, PluckerVector, complement, complement_sign,
                       contract_subspace, dual_plucker_pair, plucker_coords,
                       subsets)
from .ratfunc import DividingVerdict, Poly, RationalFunction, is_dividing, roots


class PlaneSpec:
    """A projective plane given by basis vectors, with its Plücker data."""

    __slots__ = ("basis", "plucker", "_dual")

    def __init__(self, basis):
        B = np.atleast_2d(np.array(basis))
        if B.dtype.kind not in "fc":
            B = B.astype(float)
        B.setflags(write=False)
        self.basis = B
        self.plucker: PluckerVector = plucker_coords(B)
        self._dual = None

    @property
    def dim(self) -> int:
        """Number of basis vectors (projective dimension + 1)."""
        return self.basis.shape[0]

    @property
    def d(self) -> int:
        return self.basis.shape[1] - 1

    def is_real(self) -> bool:
        return np.isrealobj(self.basis) or bool(np.all(self.basis.imag == 0))

    @property
    def dual_pair(self) -> tuple[np.ndarray, np.ndarray]:
        if self._dual is None:
            self._dual = dual_plucker_pair(self.basis)
        return self._dual

    def __repr__(self):
        return f"PlaneSpec({self.basis.tolist()})"


def _plane(V) -> PlaneSpec:
    return V if isinstance(V, PlaneSpec) else PlaneSpec(V)


def _require_real(c: RationalCurveParam, V: PlaneSpec) -> None:
    if not c.real:
        raise InvalidArgument("curve must be real")
    if not V.is_real():
        raise InvalidArgument("plane must be real")
    if V.d != c.d:
        raise InvalidArgument(f"plane lives in P^{V.d}, curve in P^{c.d}")
    if V.dim != c.d - 1:
        raise InvalidArgument(f"plane needs {c.d - 1} basis vectors")


def kappa_pair(c: RationalCurveParam, V) -> tuple[RationalFunction, RationalFunction]:
    """κ_0 = Σ a_i λ_i and κ_1 = Σ b_i λ_i for the dual pair (a, b) of V."""
    V = _plane(V)
    _require_real(c, V)
    a, b = (x.real for x in V.dual_pair)
    lambda_functions(c)  # rejects unnormalized curves
    mu0 = c.polys[0]
    # over the common denominator μ_0 rather than summing the λ_i one by one
    return (RationalFunction(pullback(c, a), mu0).reduced(),
            RationalFunction(pullback(c, b), mu0).reduced())


def pullback(c: RationalCurveParam, covector) -> Poly:
    """t ↦ Σ α_j μ_j(t)."""
    out = Poly()
    for aj, p in zip(covector, c.polys):
        out = out + aj * p
    return out


@dataclass(frozen=True)
class SectionStats:
    count: int
    all_real: int
    max_imag: float
    worst_angle: float | None = None

    @property
    def fraction(self) -> float:
        return self.all_real / self.count if self.count else 1.0


@dataclass(frozen=True)
class WitnessReport:
    disjoint: bool
    dividing: DividingVerdict | None
    definite_sign: int | None = None
    section_stats: SectionStats | None = None
    common_points: tuple = field(default=())

    @property
    def is_witness(self) -> bool:
        return self.disjoint and self.dividing is not None and self.dividing.is_dividing


def _meets_curve(c: RationalCurveParam, A: Poly, B: Poly, tol: float) -> tuple:
    """Parameters (possibly inf) where both pullbacks vanish."""
    if A.is_zero() or B.is_zero():
        return (np.inf,)
    hits = []
    if A.degree < c.n and B.degree < c.n:
        hits.append(np.inf)
    base, other = (A, B) if A.degree <= B.degree else (B, A)
    if base.degree >= 1:
        for r in roots(base):
            if abs(other(r)) <= tol * max(other.scale_at(r), 1e-300):
                hits.append(r)
    return tuple(hits)


def is_witness_exact(c: RationalCurveParam, V, tol: float = 1e-9) -> WitnessReport:
    """Disjointness of V from C plus the residue-sign test for B/A."""
    V = _plane(V)
    _require_real(c, V)
    a, b = (x.real for x in V.dual_pair)
    A, B = pullback(c, a), pullback(c, b)
    hits = _meets_curve(c, A, B, max(tol, 1e-8))
    if hits:
        return WitnessReport(False, None, common_points=hits)
    return WitnessReport(True, is_dividing(RationalFunction(B, A), tol))


def _hermitian_matrix(M: np.ndarray) -> np.ndarray:
    return (M + M.conj().T) / 2


def definiteness_sign(M: np.ndarray, tol: float = 1e-9) -> int | None:
    """+1 / -1 for a positive / negative definite Hermitian matrix, else None."""
    w = np.linalg.eigvalsh(_hermitian_matrix(M))
    scale = max(float(np.max(np.abs(w))), 1e-300)
    if np.all(w > tol * scale):
        return 1
    if np.all(w < -tol * scale):
        return -1
    return None


def _require_hermitian(gamma: GammaTensor) -> None:
    if not gamma.is_hermitian():
        raise NotHermitian("every coefficient matrix must be Hermitian")


def is_witness_definite(gamma: GammaTensor, V, tol: float = 1e-9) -> int | None:
    """Sign of definiteness of γ(V), or None when γ(V) is indefinite or singular."""
    _require_hermitian(gamma)
    V = _plane(V)
    if not V.is_real():
        raise InvalidArgument("plane must be real")
    return definiteness_sign(contract_subspace(gamma, V.basis.real), tol)


def sampled_section_reality(c: RationalCurveParam, V, count: int = 200, seed: int = 0,
                            tol: float = 1e-8) -> SectionStats:
    """Count seeded real hyperplanes through V whose section of C is all real."""
    V = _plane(V)
    _require_real(c, V)
    a, b = (x.real for x in V.dual_pair)
    if _meets_curve(c, pullback(c, a), pullback(c, b), 1e-8):
        raise InvalidArgument("the plane meets the curve")
    if count < 0:
        raise InvalidArgument("count must be non-negative")
    rng = np.random.default_rng(seed)
    good, worst, worst_angle = 0, 0.0, None
    for theta in rng.uniform(0, np.pi, count):
        alpha = np.cos(theta) * a + np.sin(theta) * b
        alpha = alpha / np.linalg.norm(alpha)
        r = roots(pullback(c, alpha))
        imag = np.abs(r.imag) / np.maximum(1.0, np.abs(r)) if len(r) else np.zeros(0)
        m = float(imag.max(initial=0.0))
        if m <= tol:
            good += 1
        if m > worst or worst_angle is None:
            worst, worst_angle = max(m, worst), float(theta)
    return SectionStats(count, good, worst, worst_angle)


def witness_report(c: RationalCurveParam, V, gamma: GammaTensor | None = None,
                   count: int = 200, seed: int = 0, tol: float = 1e-9) -> WitnessReport:
    """Exact verdict together with the definiteness and sampling cross-checks.

    ``gamma`` must represent ``c`` in the same coordinates.  A definite γ(V)
    for a non-witness, an indefinite one for a witness, or a sampled non-real
    section for a witness raises Inconsistency.  All-real samples for a
    non-witness are not contradictory, since the bad hyperplanes may be rare.
    """
    exact = is_witness_exact(c, V, tol)
    sign = is_witness_definite(gamma, V, tol) if gamma is not None else None
    stats = sampled_section_reality(c, V, count, seed) if exact.disjoint else None
    if gamma is not None and (sign is not None) != exact.is_witness:
        raise Inconsistency("definiteness of γ(V) disagrees with the exact witness test")
    if stats is not None and exact.is_witness and stats.all_real < stats.count:
        raise Inconsistency("a witness plane produced a non-real section")
    return WitnessReport(exact.disjoint, exact.dividing, sign, stats, exact.common_points)


def _orthonormal(V) -> np.ndarray:
    B = V.basis if isinstance(V, PlaneSpec) else np.atleast_2d(np.asarray(V))
    return np.linalg.qr(B.T)[0]


def grassmann_distance(V, W) -> float:
    """Spectral norm of the difference of the orthogonal projections onto V and W."""
    Q1, Q2 = _orthonormal(V), _orthonormal(W)
    if Q1.shape != Q2.shape:
        raise InvalidArgument(f"subspaces of shapes {Q1.shape} and {Q2.shape} are not comparable")
    P = Q1 @ Q1.conj().T - Q2 @ Q2.conj().T
    return float(np.linalg.norm(P, 2))


@dataclass(frozen=True)
class SliceConvexityReport:
    pairs: int
    tested: int
    opposite_signs: int
    not_definite: int
    violations: int


def _slice_matrix(gamma: GammaTensor, V0: np.ndarray, w) -> np.ndarray:
    return contract_subspace(gamma, np.vstack([V0, w]))


def _check_slice_base(gamma: GammaTensor, V0) -> np.ndarray:
    V0 = np.atleast_2d(np.asarray(V0, dtype=float)).reshape(-1, gamma.d + 1)
    if V0.shape[0] != gamma.d - gamma.k - 1:
        raise InvalidArgument(f"slice base needs {gamma.d - gamma.k - 1} vectors")
    if V0.shape[0] and np.linalg.matrix_rank(V0) < V0.shape[0]:
        raise InvalidArgument("slice base is linearly dependent")
    return V0


def slice_convexity_probe(gamma: GammaTensor, V0, trials: int = 100, seed: int = 0,
                          tol: float = 1e-9, center=None, spread: float = 1.0
                          ) -> SliceConvexityReport:
    """Test midpoint definiteness for pairs of planes span(V0, w1), span(V0, w2).

    Directions are drawn as ``center + spread·N(0, I)`` (center defaults to 0).
    """
    _require_hermitian(gamma)
    V0 = _check_slice_base(gamma, V0)
    rng = np.random.default_rng(seed)
    c0 = np.zeros(gamma.d + 1) if center is None else np.asarray(center, dtype=float)
    tested = opposite = indefinite = bad = 0
    for _ in range(trials):
        w1 = c0 + spread * rng.standard_normal(gamma.d + 1)
        w2 = c0 + spread * rng.standard_normal(gamma.d + 1)
        try:
            s1 = definiteness_sign(_slice_matrix(gamma, V0, w1), tol)
            s2 = definiteness_sign(_slice_matrix(gamma, V0, w2), tol)
        except InvalidArgument:
            indefinite += 1
            continue
        if s1 is None or s2 is None:
            indefinite += 1
        elif s1 != s2:
            opposite += 1
        else:
            tested += 1
            if definiteness_sign(_slice_matrix(gamma, V0, (w1 + w2) / 2), tol) != s1:
                bad += 1
    return SliceConvexityReport(trials, tested, opposite, indefinite, bad)


@dataclass(frozen=True, eq=False)
class DefinitenessScan:
    angles: np.ndarray
    signs: np.ndarray  # +1, -1 or 0 per angle
    runs: int

    @property
    def is_interval(self) -> bool:
        return self.runs <= 1


def slice_definiteness_scan(gamma: GammaTensor, V0, w1, w2, points: int = 1000,
                            tol: float = 1e-9) -> DefinitenessScan:
    """Definiteness of γ(span(V0, cos θ w1 + sin θ w2)) on a grid of θ in [0, π).

    The angle runs over the whole pencil of planes (a projective line), so the
    definite set should be one run when the ends θ = 0 and θ = π are glued.
    """
    _require_hermitian(gamma)
    V0 = _check_slice_base(gamma, V0)
    w1, w2 = np.asarray(w1, dtype=float), np.asarray(w2, dtype=float)
    if np.linalg.matrix_rank(np.vstack([V0, w1, w2])) < V0.shape[0] + 2:
        raise InvalidArgument("w1, w2 must extend V0 independently")
    theta = np.linspace(0.0, np.pi, points, endpoint=False)
    signs = np.array([definiteness_sign(_slice_matrix(gamma, V0, np.cos(t) * w1 + np.sin(t) * w2), tol)
                      or 0 for t in theta])
    definite = signs != 0
    if definite.all():
        runs = 1
    else:
        # count starts of runs on the circle
        runs = int(np.sum(definite & ~np.roll(definite, 1)))
    return DefinitenessScan(theta, signs, runs)


@dataclass(frozen=True, eq=False)
class SpectrahedronExport:
    """γ(V) = Σ_J p(V)_J M_J over index sets J of size d - k."""

    d: int
    k: int
    n: int
    matrices: dict

    def evaluate(self, V) -> np.ndarray:
        p = _plane(V).plucker
        out = np.zeros((self.n, self.n), dtype=complex)
        for J, M in self.matrices.items():
            out = out + p[J] * M
        return out.real if all(np.isrealobj(M) for M in self.matrices.values()) and \
            np.isrealobj(_plane(V).basis) else out


def lmi_export(gamma: GammaTensor) -> SpectrahedronExport:
    """Coefficients of γ(V) in the Plücker coordinates of V."""
    _require_hermitian(gamma)
    mats = {}
    for J in subsets(gamma.d, gamma.d - gamma.k):
        I = complement(J, gamma.d)
        mats[J] = complement_sign(I, gamma.d) * gamma[I]
    return SpectrahedronExport(gamma.d, gamma.k, gamma.n, mats)


@dataclass(frozen=True)
class PathReport:
    passed: bool
    first_failure: int | None
    distances: tuple[float, ...]


def witness_path_check(c: RationalCurveParam, planes: Sequence) -> PathReport:
    """Exact witness test along a sequence of planes."""
    planes = [_plane(V) for V in planes]
    dist = tuple(grassmann_distance(planes[i], planes[i + 1]) for i in range(len(planes) - 1))
    for i, V in enumerate(planes):
        if not is_witness_exact(c, V).is_witness:
            return PathReport(False, i, dist)
    return PathReport(True, None, dist)
