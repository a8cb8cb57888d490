"""Numerical analysis of a tensor γ ∈ Λ^{k+1} C^{d+1} ⊗ M_n(C).

Rank decisions are relative: a singular value counts as zero when it is at
most ``rank_rel`` times a natural scale of the matrix in question.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import null_space

from .errors import InvalidArgument, SingularBasePlane, TransversalityFailure
from .exterior import (GammaTensor, _as_matrix, _contract, check_independent,
                       contract_replaced, contract_subspace, removal_sign,
                       stacked_wedge, subsets, transform)
from .ratfunc import Poly


@dataclass(frozen=True)
class Tolerances:
    rank_rel: float = 1e-10
    eig_imag: float = 1e-8
    residual: float = 1e-9
    cluster: float = 1e-6

    def __post_init__(self):
        if min(self.rank_rel, self.eig_imag, self.residual, self.cluster) <= 0:
            raise InvalidArgument("tolerances must be positive")


DEFAULT_TOL = Tolerances()


@dataclass(frozen=True, eq=False)
class MembershipReport:
    kernel_dim: int
    singular_values: np.ndarray
    kernel_basis: np.ndarray
    scale: float = 1.0

    @property
    def residual(self) -> float:
        """Smallest singular value of the stacked matrix over ‖γ‖·‖μ‖."""
        return float(self.singular_values[-1] / self.scale) if self.scale > 0 else 0.0


def membership(gamma: GammaTensor, mu, tol: Tolerances = DEFAULT_TOL) -> MembershipReport:
    """Kernel of the stacked matrix of all (γ∧μ)_J.

    Singular values are compared with ‖γ‖·‖μ‖ (largest coefficient norm
    times the Euclidean norm of μ) rather than with the largest singular
    value, which would make every 1×1 case full rank.
    """
    mu = np.asarray(mu)
    S = stacked_wedge(gamma, mu)
    _, s, vh = np.linalg.svd(S)
    scale = gamma.norm() * float(np.linalg.norm(mu))
    if scale == 0:
        return MembershipReport(gamma.n, s, np.eye(gamma.n), 0.0)
    small = s <= tol.rank_rel * scale
    basis = vh[small].conj().T
    return MembershipReport(int(small.sum()), s, basis, scale)


def _rcond(M: np.ndarray) -> float:
    s = np.linalg.svd(M, compute_uv=False)
    return float(s[-1] / s[0]) if s[0] > 0 else 0.0


def is_nondegenerate(gamma: GammaTensor, trials: int = 8, seed: int = 0,
                     tol: Tolerances = DEFAULT_TOL) -> bool:
    """True if γ(V) is invertible for some seeded random plane V."""
    if trials < 1:
        raise InvalidArgument("trials must be positive")
    if gamma.is_zero():
        return False
    rng = np.random.default_rng(seed)
    for _ in range(trials):
        V = rng.standard_normal((gamma.d - gamma.k, gamma.d + 1))
        if _rcond(contract_subspace(gamma, V)) > tol.rank_rel:
            return True
    return False


def _pencil(gamma: GammaTensor, V, u, tol: Tolerances):
    V = np.atleast_2d(np.asarray(V))
    u = np.asarray(u)
    G = contract_subspace(gamma, V)
    if _rcond(G) <= tol.rank_rel:
        raise SingularBasePlane("γ(V) is singular")
    try:
        check_independent(_as_matrix(np.vstack([V, u[None, :]])), "u together with V")
    except InvalidArgument:
        raise InvalidArgument("u lies in the span of V") from None
    A = [np.linalg.solve(G, contract_replaced(gamma, V, i, u)) for i in range(V.shape[0])]
    return V, u, G, A


def _clusters(values: np.ndarray, tol: float) -> list[list[int]]:
    """Group eigenvalues closer than ``tol`` (relative) into clusters."""
    n = len(values)
    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(n):
        for j in range(i + 1, n):
            if abs(values[i] - values[j]) <= tol * max(1.0, abs(values[i]), abs(values[j])):
                parent[find(i)] = find(j)
    groups: dict[int, list[int]] = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(i)
    return list(groups.values())


@dataclass(frozen=True, eq=False)
class SlicePoint:
    t: np.ndarray
    mu: np.ndarray
    kernel_dim: int
    kernel_basis: np.ndarray
    multiplicity: int


@dataclass(frozen=True, eq=False)
class SliceReport:
    points: list[SlicePoint]
    pencils: list[np.ndarray] = field(default_factory=list)

    @property
    def total_kernel_dim(self) -> int:
        return sum(p.kernel_dim for p in self.points)


def _joint_eigen(A: list[np.ndarray], tol: Tolerances, seed: int = 0):
    """Joint eigenvalue tuples of nearly commuting matrices, with cluster sizes."""
    rng = np.random.default_rng(seed)
    c = rng.uniform(0.5, 1.5, len(A)) * rng.choice([-1, 1], len(A))
    M = sum(ci * Ai for ci, Ai in zip(c, A))
    w, X = np.linalg.eig(M)
    out = []
    for grp in _clusters(w, tol.cluster):
        Q = np.linalg.qr(X[:, grp])[0]
        lam = np.array([np.mean(np.linalg.eigvals(Q.conj().T @ Ai @ Q)) for Ai in A])
        out.append((lam, len(grp)))
    return out


def slice_intersections(gamma: GammaTensor, V, u, tol: Tolerances = DEFAULT_TOL,
                        seed: int = 0) -> SliceReport:
    """Points of D(γ) on the plane spanned by V and u.

    With A_i = γ(V)^{-1} γ(V, i, u) every such point is u + Σ t_i v_i where
    (-t_0, ..., -t_{d-k-1}) is a joint eigenvalue of the A_i.  Candidates are
    kept only when the membership kernel there is nontrivial.
    """
    V, u, _, A = _pencil(gamma, V, u, tol)
    points = []
    for lam, mult in _joint_eigen(A, tol, seed):
        t = -lam
        mu = u + t @ V
        rep = membership(gamma, mu, tol)
        if rep.kernel_dim >= 1:
            points.append(SlicePoint(t, mu, rep.kernel_dim, rep.kernel_basis, mult))
    return SliceReport(points, A)


@dataclass(frozen=True)
class CommutationReport:
    commutator: float
    semisimplicity_defect: int

    @property
    def ok(self) -> bool:
        return self.semisimplicity_defect == 0


def _defect(A: np.ndarray, tol: Tolerances) -> int:
    n = A.shape[0]
    w = np.linalg.eigvals(A)
    worst = 0
    scale = max(np.linalg.norm(A, 2), 1.0)
    for grp in _clusters(w, tol.cluster):
        lam = np.mean(w[grp])
        s = np.linalg.svd(A - lam * np.eye(n), compute_uv=False)
        geo = int(np.sum(s <= np.sqrt(tol.cluster) * scale))
        worst = max(worst, len(grp) - geo)
    return worst


def pencil_commutation_report(gamma: GammaTensor, V, u,
                              tol: Tolerances = DEFAULT_TOL) -> CommutationReport:
    """Relative commutator size of the pencils A_i and their semisimplicity defect.

    The commutator is max ‖A_i A_j - A_j A_i‖ / (‖A_i‖ ‖A_j‖); the defect is
    the largest gap between algebraic and geometric multiplicity of an
    eigenvalue over all A_i and a random combination of them.
    """
    _, _, _, A = _pencil(gamma, V, u, tol)
    comm = 0.0
    for i in range(len(A)):
        for j in range(i + 1, len(A)):
            den = np.linalg.norm(A[i]) * np.linalg.norm(A[j])
            if den > 0:
                comm = max(comm, float(np.linalg.norm(A[i] @ A[j] - A[j] @ A[i]) / den))
    rng = np.random.default_rng(0)
    combo = sum(rng.uniform(0.5, 1.5) * Ai for Ai in A)
    defect = max(_defect(Ai, tol) for Ai in [*A, combo])
    return CommutationReport(comm, defect)


@dataclass(frozen=True, eq=False)
class DegreeTrial:
    t: list
    kernel_dims: list[int]
    transversal: bool


@dataclass(frozen=True, eq=False)
class DegreeReport:
    degree: int
    n: int
    trials: list[DegreeTrial]


def _is_transversal(rep: SliceReport, tol: Tolerances) -> bool:
    pts = rep.points
    for i in range(len(pts)):
        if pts[i].kernel_dim != pts[i].multiplicity:
            return False
        for j in range(i):
            gap = np.max(np.abs(pts[i].t - pts[j].t))
            if gap <= tol.cluster * max(1.0, np.max(np.abs(pts[i].t))):
                return False
    return True


def degree(gamma: GammaTensor, trials: int = 6, seed: int = 0,
           tol: Tolerances = DEFAULT_TOL) -> DegreeReport:
    """Minimum over transversal random slices of the summed kernel dimensions."""
    rng = np.random.default_rng(seed)
    records = []
    for trial in range(trials):
        V = rng.standard_normal((gamma.d - gamma.k, gamma.d + 1))
        u = rng.standard_normal(gamma.d + 1)
        try:
            rep = slice_intersections(gamma, V, u, tol, seed=trial)
        except SingularBasePlane:
            continue
        ok = _is_transversal(rep, tol)
        records.append(DegreeTrial([p.t for p in rep.points],
                                   [p.kernel_dim for p in rep.points], ok))
    good = [sum(r.kernel_dims) for r in records if r.transversal]
    if not good:
        raise TransversalityFailure("no transversal slice found")
    return DegreeReport(min(good), gamma.n, records)


def is_very_reasonable(gamma: GammaTensor, trials: int = 6, seed: int = 0,
                       tol: Tolerances = DEFAULT_TOL) -> bool:
    """deg γ == n.  Degenerate tensors are reported as not very reasonable."""
    if not is_nondegenerate(gamma, seed=seed, tol=tol):
        return False
    return degree(gamma, trials, seed, tol).degree == gamma.n


def schubert_det_profile(gamma: GammaTensor, V0, w1, w2,
                         sample_count: int | None = None) -> Poly:
    """t ↦ det γ(span(V0, w1 + t w2)), interpolated as a polynomial of degree <= n."""
    V0 = np.atleast_2d(np.asarray(V0)).reshape(-1, gamma.d + 1)
    w1, w2 = np.asarray(w1), np.asarray(w2)
    if V0.shape[0] != gamma.d - gamma.k - 1:
        raise InvalidArgument(f"V0 needs {gamma.d - gamma.k - 1} vectors")
    check_independent(_as_matrix(np.vstack([V0, w1, w2])), "flag")
    N = max(sample_count or 0, gamma.n + 1)
    nodes = np.exp(2j * np.pi * np.arange(N) / N)
    vals = np.array([np.linalg.det(_contract(gamma, _as_matrix(np.vstack([V0, w1 + t * w2]))))
                     for t in nodes])
    vander = nodes[:, None] ** np.arange(gamma.n + 1)[None, :]
    coeffs = np.linalg.lstsq(vander, vals, rcond=None)[0]
    if np.isrealobj(gamma[gamma.index_sets[0]]) and all(np.isrealobj(x) for x in (V0, w1, w2)):
        coeffs = coeffs.real
    return Poly(coeffs).trim(1e-10)


def _standardize(gamma: GammaTensor, V, tol: Tolerances) -> GammaTensor:
    """Change coordinates so that V becomes span(e_{k+1}, ..., e_d)."""
    V = np.atleast_2d(np.asarray(V))
    if V.shape != (gamma.d - gamma.k, gamma.d + 1):
        raise InvalidArgument(f"V needs {gamma.d - gamma.k} vectors of length {gamma.d + 1}")
    Q = np.linalg.qr(V.T)[0]
    C = null_space(Q.conj().T)
    g = np.linalg.inv(np.hstack([C, Q]))
    gp = transform(gamma, g)
    I0 = tuple(range(gamma.k + 1))
    if _rcond(gp[I0]) <= tol.rank_rel:
        raise SingularBasePlane("γ(V) is singular")
    return gp


def _pencil_blocks(gp: GammaTensor) -> dict[tuple[int, int], np.ndarray]:
    k, d = gp.k, gp.d
    I0 = tuple(range(k + 1))
    G0 = gp[I0]
    return {(m, j): np.linalg.solve(G0, gp[tuple(sorted(set(I0) - {m} | {j}))])
            for m in range(k + 1) for j in range(k + 1, d + 1)}


def reconstruct_entry(gp: GammaTensor, I, p: int) -> np.ndarray:
    """γ_I predicted from entries closer to I_0 = {0..k}, eliminating z_p.

    ``gp`` must already be in coordinates where γ(V) = γ_{I_0}.
    """
    k = gp.k
    I = tuple(I)
    if p in I or p > k:
        raise InvalidArgument("p must lie in I_0 and outside I")
    M = _pencil_blocks(gp)
    J = tuple(sorted(I + (p,)))
    acc = sum(removal_sign(J, j) * (-1) ** (k - p) * gp[tuple(x for x in J if x != j)] @ M[p, j]
              for j in J if j > k)
    return -removal_sign(J, p) * acc


def vr_struct_residual(gamma: GammaTensor, V, tol: Tolerances = DEFAULT_TOL) -> float:
    """Largest violation of the relations satisfied by a very reasonable tensor.

    After moving V to span(e_{k+1}, ..., e_d), every point z of D(γ) has
    z_j w = Σ_m (-1)^{k-m} z_m γ_{I_0}^{-1} γ_{I_0 - m + j} w for j > k.
    Substituting this into each equation (γ∧z)_J w = 0 yields a matrix
    coefficient for every free variable z_m, m <= k, which must vanish when
    the joint eigenvectors span C^n.  The result is scaled by the largest
    coefficient norm of the standardized tensor.
    """
    gp = _standardize(gamma, V, tol)
    k, d = gp.k, gp.d
    M = _pencil_blocks(gp)
    scale = max(gp.norm(), 1e-300)
    worst = 0.0
    for J in subsets(d, k + 2):
        for m in range(k + 1):
            C = np.zeros((gp.n, gp.n), dtype=complex)
            if m in J:
                C += removal_sign(J, m) * gp[tuple(x for x in J if x != m)]
            for j in J:
                if j > k:
                    C += removal_sign(J, j) * (-1) ** (k - m) * gp[tuple(x for x in J if x != j)] @ M[m, j]
            worst = max(worst, float(np.linalg.norm(C)) / scale)
    return worst
