"""Rational space curves and their Bezoutian determinantal representations.

A curve is given by polynomials μ_0, ..., μ_d of degree at most n.  After a
linear change of coordinates making μ_0 squarefree of exact degree n, the
functions λ_j = μ_j / μ_0 have simple poles on the divisor D of roots of μ_0
and γ_ij = B_D(λ_i, λ_j) defines a tensor whose degeneracy set is the curve.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np
from scipy.linalg import null_space

from .bezoutian import Divisor, bezout_matrix
from .detrep import DEFAULT_TOL, Tolerances, is_very_reasonable, membership
from .errors import (BasePointError, DegenerateSpan, InvalidArgument,
                     NormalizationFailure, NotNormalized, SectionNotReal,
                     UnknownExample)
from .exterior import GammaTensor, check_independent, transform
from .ratfunc import Poly, RationalFunction, homogenize, roots

_ROOT_SEPARATION = 1e-6
_COPRIME_RTOL = 1e-8
_RETRIES = 64


@dataclass(frozen=True, eq=False)
class RationalCurveParam:
    """t ↦ (μ_0(t) : ... : μ_d(t)) with n the largest degree."""

    polys: tuple[Poly, ...]

    def __init__(self, polys: Sequence):
        ps = tuple(p if isinstance(p, Poly) else Poly(p) for p in polys)
        if len(ps) < 2:
            raise InvalidArgument("a curve needs at least two coordinates")
        if all(p.is_zero() for p in ps):
            raise InvalidArgument("all coordinate polynomials vanish")
        object.__setattr__(self, "polys", ps)

    @property
    def d(self) -> int:
        return len(self.polys) - 1

    @property
    def n(self) -> int:
        return max(p.degree for p in self.polys)

    @property
    def real(self) -> bool:
        return all(p.is_real() for p in self.polys)

    def coefficient_matrix(self) -> np.ndarray:
        """(d+1)×(n+1) matrix of ascending coefficients."""
        dtype = float if all(np.isrealobj(p.coeffs) for p in self.polys) else complex
        C = np.zeros((self.d + 1, self.n + 1), dtype=dtype)
        for j, p in enumerate(self.polys):
            C[j, : len(p.coeffs)] = p.coeffs
        return C

    def __call__(self, t) -> np.ndarray:
        """Homogeneous coordinates of the point with parameter t (t may be inf)."""
        if np.isinf(t):
            return self.coefficient_matrix()[:, -1]
        return np.array([p(t) for p in self.polys])

    def transformed(self, g) -> "RationalCurveParam":
        """The curve g·μ."""
        C = np.asarray(g) @ self.coefficient_matrix()
        return RationalCurveParam([Poly(row) for row in C])

    def reparametrized(self, a, b, c, d) -> "RationalCurveParam":
        """s ↦ μ((a s + b)/(c s + d)), cleared of denominators."""
        n = self.n
        return RationalCurveParam([homogenize(p, n, a, b, c, d) for p in self.polys])


@dataclass(frozen=True)
class CurveDiagnostics:
    n: int
    rank: int
    injectivity_samples: int
    injectivity_failures: int


def _common_roots(polys: Sequence[Poly], tol: float = _COPRIME_RTOL) -> list:
    nonzero = [p for p in polys if not p.is_zero()]
    if not nonzero:
        return []
    base = min(nonzero, key=lambda p: p.degree)
    if base.degree <= 0:
        return []
    return [r for r in roots(base)
            if all(abs(p(r)) <= tol * max(p.scale_at(r), 1e-300) for p in nonzero)]


def _other_preimages(c: RationalCurveParam, t) -> list:
    """Parameters s != t with μ(s) proportional to μ(t)."""
    m = c(t)
    j0 = int(np.argmax(np.abs(m)))
    eqs = [c.polys[j] * m[j0] - c.polys[j0] * m[j] for j in range(c.d + 1) if j != j0]
    cand = _common_roots(eqs)
    scale = max(1.0, abs(t))
    return [s for s in cand if abs(s - t) > 1e-6 * scale]


def validate_curve(c: RationalCurveParam, samples: int = 8, seed: int = 0) -> CurveDiagnostics:
    """Check base-point freeness, linear nondegeneracy and generic injectivity."""
    if _common_roots(c.polys):
        raise BasePointError("coordinate polynomials share a root")
    rank = int(np.linalg.matrix_rank(c.coefficient_matrix(), tol=1e-10 * np.abs(c.coefficient_matrix()).max()))
    if rank < c.d + 1:
        raise DegenerateSpan(f"curve lies in a proper linear subspace (rank {rank})")
    rng = np.random.default_rng(seed)
    failures = 0
    for _ in range(samples):
        t = rng.standard_normal() + 1j * rng.standard_normal()
        if _other_preimages(c, t):
            failures += 1
    return CurveDiagnostics(c.n, rank, samples, failures)


@dataclass(frozen=True, eq=False)
class NormalizationResult:
    g: np.ndarray
    curve: RationalCurveParam
    divisor: Divisor
    mobius: tuple | None = None


def _normal_defect(c: RationalCurveParam) -> str | None:
    """Why c is not normalized, or None if it is."""
    mu0, mu1 = c.polys[0], c.polys[1]
    if mu0.degree != c.n or c.n < 1:
        return "μ_0 does not have full degree"
    r = roots(mu0)
    scale = max(1.0, float(np.max(np.abs(r))))
    for i in range(len(r)):
        for j in range(i):
            if abs(r[i] - r[j]) <= _ROOT_SEPARATION * scale:
                return "μ_0 has a repeated root"
    if any(abs(mu1(x)) <= _COPRIME_RTOL * max(mu1.scale_at(x), 1e-300) for x in r):
        return "μ_0 and μ_1 share a root"
    return None


def is_normalized(c: RationalCurveParam) -> bool:
    return _normal_defect(c) is None


def _result(g, c: RationalCurveParam, mob=None) -> NormalizationResult:
    r = roots(c.polys[0])
    return NormalizationResult(np.asarray(g, dtype=float), c, Divisor(r), mob)


_MOBIUS_CENTERS = (0.0, 1.0, -1.0, 2.0, -2.0, 0.5, -0.5, 3.0, -3.0)


def _section_chart(c: RationalCurveParam) -> tuple[RationalCurveParam, tuple | None]:
    """Move t = ∞ off the hyperplane x_0 = 0 by a real Möbius map if needed."""
    if c.polys[0].degree == c.n:
        return c, None
    for r0 in _MOBIUS_CENTERS:
        if abs(c.polys[0](r0)) > 1e-8 * max(c.polys[0].scale_at(r0), 1e-300):
            mob = (r0, 1.0, 1.0, 0.0)  # t = (r0 s + 1)/s sends s = ∞ to t = r0
            return c.reparametrized(*mob), mob
    raise NormalizationFailure("could not move the parameter chart off the hyperplane")


def normalize_coordinates(c: RationalCurveParam, seed: int = 0, mode: str = "generic",
                          hyperplane=None, retries: int = _RETRIES) -> NormalizationResult:
    """Find real g with g·μ normalized: μ_0 squarefree of degree n, coprime to μ_1.

    ``generic`` tries g = identity and then seeded random matrices with
    entries in [-1, 1].  ``real_section`` fixes the first row of g to the given
    real hyperplane (default x_0) and additionally requires every root of the
    new μ_0 to be real; the parameter may be changed by a real Möbius map to
    keep the section finite.
    """
    validate_curve(c, samples=0)
    D = c.d + 1
    rng = np.random.default_rng(seed)
    if mode == "generic":
        if hyperplane is not None:
            raise InvalidArgument("hyperplane is only used in real_section mode")
        candidates = [np.eye(D)] + [rng.uniform(-1, 1, (D, D)) for _ in range(retries)]
        for g in candidates:
            if abs(np.linalg.det(g)) < 1e-8:
                continue
            cc = c.transformed(g)
            if is_normalized(cc):
                return _result(g, cc)
        raise NormalizationFailure(f"no normalizing g found in {retries} tries")
    if mode != "real_section":
        raise InvalidArgument(f"unknown mode {mode!r}")
    if not c.real:
        raise InvalidArgument("real_section needs a real curve")
    h = np.zeros(D) if hyperplane is None else np.asarray(hyperplane, dtype=complex)
    if hyperplane is None:
        h[0] = 1.0
    if h.shape != (D,) or np.any(np.abs(h.imag) > 0):
        raise InvalidArgument("hyperplane must be a real vector of length d+1")
    h = h.real
    if not np.any(h):
        raise InvalidArgument("zero hyperplane")
    first = np.eye(D)
    first[0] = h
    candidates = [first] + [np.vstack([h, rng.uniform(-1, 1, (D - 1, D))]) for _ in range(retries)]
    section_checked = False
    for g in candidates:
        try:
            check_independent(g, "g")
        except InvalidArgument:
            continue
        cc, mob = _section_chart(c.transformed(g))
        if not section_checked:
            r = roots(cc.polys[0])
            if np.any(np.abs(r.imag) > 1e-9 * np.maximum(1.0, np.abs(r))):
                raise SectionNotReal("the hyperplane section has non-real points")
            section_checked = True
        if is_normalized(cc):
            return _result(g, cc, mob)
    raise NormalizationFailure(f"no normalizing g found in {retries} tries")


def lambda_functions(c: RationalCurveParam) -> list[RationalFunction]:
    """λ_j = μ_j / μ_0, reduced; λ_0 = 1."""
    why = _normal_defect(c)
    if why:
        raise NotNormalized(why)
    mu0 = c.polys[0]
    out = [RationalFunction(1.0)]
    for p in c.polys[1:]:
        out.append(RationalFunction(p, mu0).reduced())
    return out


def divisor_of(c: RationalCurveParam) -> Divisor:
    why = _normal_defect(c)
    if why:
        raise NotNormalized(why)
    return Divisor(roots(c.polys[0]))


@dataclass(frozen=True, eq=False)
class ContainmentResult:
    residual: float
    passed: bool
    kernel_dims: tuple[int, ...]
    parameters: np.ndarray


def sample_parameters(samples: int, seed: int) -> np.ndarray:
    """Seeded parameters, alternating real and complex."""
    rng = np.random.default_rng(seed)
    t = rng.standard_normal(samples) + 0j
    t[1::2] += 1j * rng.standard_normal(len(t[1::2]))
    return t


def containment_check(c: RationalCurveParam, gamma: GammaTensor, samples: int = 25,
                      seed: int = 0, tol: float = 1e-8,
                      tolerances: Tolerances = DEFAULT_TOL) -> ContainmentResult:
    """Largest normalized smallest singular value of γ∧μ(t) over sampled t."""
    if c.d != gamma.d:
        raise InvalidArgument(f"curve lives in P^{c.d} but γ in P^{gamma.d}")
    ts = sample_parameters(samples, seed)
    worst, dims = 0.0, []
    for t in ts:
        rep = membership(gamma, c(t), tolerances)
        worst = max(worst, rep.residual)
        dims.append(rep.kernel_dim)
    return ContainmentResult(worst, worst < tol, tuple(dims), ts)


@dataclass(frozen=True, eq=False)
class ConstructionReport:
    gamma: GammaTensor
    divisor: Divisor
    containment_residual: float
    vr: bool
    lambdas: list = field(default_factory=list)


def construct_gamma(c: RationalCurveParam, samples: int = 50, seed: int = 0) -> ConstructionReport:
    """γ_ij = B_D(λ_i, λ_j) for 0 <= i < j <= d on a normalized curve."""
    lam = lambda_functions(c)
    D = divisor_of(c)
    ent = {}
    for i in range(c.d + 1):
        for j in range(i + 1, c.d + 1):
            ent[(i, j)] = bezout_matrix(lam[i], lam[j], D).matrix
    gamma = GammaTensor(c.d, 1, c.n, ent).real_if_close()
    res = containment_check(c, gamma, samples, seed).residual
    return ConstructionReport(gamma, D, res, is_very_reasonable(gamma, seed=seed), lam)


@dataclass(frozen=True, eq=False)
class RepresentationResult:
    gamma: GammaTensor
    normalization: NormalizationResult
    report: ConstructionReport
    containment_residual: float


def represent_curve(c: RationalCurveParam, seed: int = 0, mode: str = "generic",
                    hyperplane=None, samples: int = 50) -> RepresentationResult:
    """Normalize, construct, and pull γ back to the original coordinates."""
    norm = normalize_coordinates(c, seed, mode, hyperplane)
    rep = construct_gamma(norm.curve, samples, seed)
    gamma = transform(rep.gamma, np.linalg.inv(norm.g)).real_if_close(1e-10)
    res = containment_check(c, gamma, samples, seed).residual
    return RepresentationResult(gamma, norm, rep, res)


def _hyperplane_through(c: RationalCurveParam, ts) -> np.ndarray:
    P = np.array([c(t) for t in ts]).real
    N = null_space(P)
    return N[:, 0] if N.shape[1] == 1 else None


def hermitian_representation(c: RationalCurveParam, seed: int = 0, hyperplanes=(),
                             samples: int = 50, retries: int = 32) -> RepresentationResult:
    """A representation with real symmetric entries for a real curve.

    This needs a real divisor, i.e. a real hyperplane whose section is all
    real.  Candidates are x_0, the given ``hyperplanes``, and then hyperplanes
    through d seeded random real points of the curve.
    """
    if not c.real:
        raise InvalidArgument("a Hermitian representation needs a real curve")
    e0 = np.zeros(c.d + 1)
    e0[0] = 1.0
    rng = np.random.default_rng(seed)
    cands = [e0, *hyperplanes]
    for _ in range(retries):
        h = _hyperplane_through(c, np.sort(rng.uniform(-3, 3, c.d)))
        if h is not None:
            cands.append(h)
    for h in cands:
        try:
            return represent_curve(c, seed, "real_section", np.asarray(h, dtype=float), samples)
        except (SectionNotReal, NormalizationFailure):
            continue
    raise NormalizationFailure("no real hyperplane with an all-real section found")


def _e(n: int, ones, sign: float = 1.0) -> np.ndarray:
    M = np.zeros((n, n))
    for i, j in ones:
        M[i, j] = sign
    return M


def _hankel(n: int, s: int, sign: float = 1.0) -> np.ndarray:
    """Ones on the anti-diagonal i + j = s."""
    return _e(n, [(i, s - i) for i in range(n) if 0 <= s - i < n], sign)


def _quintic(sign: float) -> dict:
    ent = {(0, 1): _hankel(3, 2), (0, 2): _hankel(4, 3), (0, 3): _hankel(5, 4)}
    ent = {I: np.pad(m, (0, 5 - len(m))) for I, m in ent.items()}
    ent[(1, 2)] = _e(5, [(3, 3)], sign)
    ent[(1, 3)] = _e(5, [(3, 4), (4, 3)], sign)
    ent[(2, 3)] = _e(5, [(4, 4)], sign)
    return ent


_EXAMPLES = {
    "twisted_cubic": lambda: GammaTensor(3, 1, 3, {
        (0, 1): _e(3, [(0, 0)]), (0, 2): _hankel(3, 1), (0, 3): _hankel(3, 2),
        (1, 2): _e(3, [(1, 1)]), (1, 3): _e(3, [(1, 2), (2, 1)]), (2, 3): _e(3, [(2, 2)])}),
    # sign +1 on the last three entries represents (1, t^3, t^4, t^5);
    # the variant with sign -1 represents (1, t^3, -t^4, t^5)
    "monomial_quintic": lambda: GammaTensor(3, 1, 5, _quintic(1.0)),
    "monomial_quintic_variant": lambda: GammaTensor(3, 1, 5, _quintic(-1.0)),
    "rational_p3": lambda: GammaTensor(3, 1, 4, {
        (0, 1): _e(4, [(0, 0)]), (0, 2): _hankel(4, 2), (0, 3): _hankel(4, 3),
        (1, 2): _e(4, [(1, 2), (2, 1)]), (1, 3): _e(4, [(1, 3), (2, 2), (3, 1)]),
        (2, 3): _e(4, [(3, 3)])}),
}

_CURVES = {
    "twisted_cubic": [[1], [0, 1], [0, 0, 1], [0, 0, 0, 1]],
    "monomial_quintic": [[1], [0, 0, 0, 1], [0, 0, 0, 0, 1], [0, 0, 0, 0, 0, 1]],
    "monomial_quintic_variant": [[1], [0, 0, 0, 1], [0, 0, 0, 0, -1], [0, 0, 0, 0, 0, 1]],
    "rational_p3": [[1], [0, 1], [0, 0, 0, 1], [0, 0, 0, 0, 1]],
    # real curve with a witness line x_0 = x_1 = 0, used for hyperbolicity checks
    "pick_cubic": [[0, -1, 0, 1], [1, 0, -3], [0, 0, 0, 1], [0, 1, 1]],
}


def example_names() -> list[str]:
    return list(_EXAMPLES)


def builtin_example(name: str) -> GammaTensor:
    """Tensors of the classical worked examples, by name."""
    try:
        return _EXAMPLES[name]()
    except KeyError:
        raise UnknownExample(f"unknown example {name!r}; choose from {sorted(_EXAMPLES)}") from None


def builtin_curve(name: str) -> RationalCurveParam:
    """Parametrization matching ``builtin_example(name)``, plus ``pick_cubic``."""
    try:
        return RationalCurveParam(_CURVES[name])
    except KeyError:
        raise UnknownExample(f"unknown curve {name!r}; choose from {sorted(_CURVES)}") from None
