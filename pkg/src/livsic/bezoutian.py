"""Bezoutians of rational functions on the Riemann sphere.

The Cauchy kernel is K(p, q) = 1/(q - p).  For f, g with at most simple
poles on a finite divisor D = {p_1, ..., p_m} the Bezoutian B = B_D(f, g) is
the unique m×m matrix with

    (f(p) g(q) - f(q) g(p)) K(p, q) = u_left(p) · B · u_right(q)

where u_left(p)_i = K(p, p_i) and u_right(q)_j = K(p_j, q).  Matching
residues gives, with f = a_i/(t - p_i) + b_i + ... and
g = c_i/(t - p_i) + d_i + ... at p_i,

    B_ii = b_i c_i - a_i d_i,      B_ij = (a_i c_j - a_j c_i) / (p_i - p_j).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import (InvalidArgument, NotInLD, PoleAtDivisor, PoleOnDiagonal,
                     RamifiedFiber)
from .ratfunc import RationalFunction, laurent_simple, roots

_POLE_MATCH_RTOL = 1e-6


@dataclass(frozen=True)
class Divisor:
    """A reduced effective divisor of distinct finite points."""

    points: tuple

    def __init__(self, points: Sequence):
        pts = tuple(complex(p) if np.imag(p) != 0 else float(np.real(p)) for p in points)
        arr = np.array(pts, dtype=complex)
        for i in range(len(arr)):
            for j in range(i + 1, len(arr)):
                if arr[i] == arr[j]:
                    raise InvalidArgument(f"divisor points must be distinct, {arr[i]} repeats")
        if not np.all(np.isfinite(arr)):
            raise InvalidArgument("divisor points must be finite")
        object.__setattr__(self, "points", pts)

    def __len__(self):
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def as_array(self) -> np.ndarray:
        return np.array(self.points, dtype=complex)

    def is_real(self, tol: float = 1e-12) -> bool:
        a = self.as_array()
        return bool(np.all(np.abs(a.imag) <= tol * np.maximum(1.0, np.abs(a))))

    def nearest(self, z) -> tuple[int, float]:
        dist = np.abs(self.as_array() - z)
        i = int(np.argmin(dist))
        return i, float(dist[i])


def cauchy_kernel(p, q):
    if p == q:
        raise PoleOnDiagonal(f"kernel is singular at p = q = {p}")
    return 1.0 / (q - p)


def u_vector(D: Divisor, q, side: str = "right") -> np.ndarray:
    """u_right(q)_i = K(p_i, q); u_left(q)_i = K(q, p_i)."""
    pts = D.as_array() if not D.is_real(0.0) else np.array(D.points, dtype=float)
    if np.any(pts == q):
        raise PoleAtDivisor(f"{q} is a point of the divisor")
    if side == "right":
        return 1.0 / (q - pts)
    if side == "left":
        return 1.0 / (pts - q)
    raise InvalidArgument(f"side must be 'left' or 'right', got {side!r}")


@dataclass(frozen=True, eq=False)
class BezoutMatrix:
    matrix: np.ndarray
    divisor: Divisor
    f: RationalFunction | None = None
    g: RationalFunction | None = None

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.matrix, dtype=dtype)


def check_in_LD(f: RationalFunction, D: Divisor, name: str = "function") -> RationalFunction:
    """Return f reduced, or raise NotInLD if it has a pole off D or a multiple pole."""
    h = f.reduced()
    if h.num.degree > h.den.degree:
        raise NotInLD(f"{name} has a pole at infinity")
    if h.den.degree <= 0:
        return h
    if len(D) == 0:
        raise NotInLD(f"{name} has poles but the divisor is empty")
    hit = set()
    for r in roots(h.den):
        i, dist = D.nearest(r)
        if dist > _POLE_MATCH_RTOL * max(1.0, abs(r)):
            raise NotInLD(f"{name} has a pole at {r} outside the divisor")
        if i in hit:
            raise NotInLD(f"{name} has a multiple pole at {D.points[i]}")
        hit.add(i)
    return h


def _laurent_table(h: RationalFunction, D: Divisor):
    a = np.zeros(len(D), dtype=complex)
    b = np.zeros(len(D), dtype=complex)
    for i, p in enumerate(D.points):
        e = laurent_simple(h, p)
        a[i], b[i] = e.a, e.b
    return a, b


def bezout_matrix(f, g, D: Divisor) -> BezoutMatrix:
    """B_D(f, g) for f, g with at most simple poles, all contained in D."""
    f = f if isinstance(f, RationalFunction) else RationalFunction(f)
    g = g if isinstance(g, RationalFunction) else RationalFunction(g)
    hf = check_in_LD(f, D, "f")
    hg = check_in_LD(g, D, "g")
    a, b = _laurent_table(hf, D)
    c, d = _laurent_table(hg, D)
    pts = D.as_array()
    m = len(D)
    B = np.zeros((m, m), dtype=complex)
    for i in range(m):
        B[i, i] = b[i] * c[i] - a[i] * d[i]
        for j in range(i + 1, m):
            B[i, j] = B[j, i] = (a[i] * c[j] - a[j] * c[i]) / (pts[i] - pts[j])
    if f.is_real() and g.is_real() and D.is_real():
        B = B.real
    return BezoutMatrix(B, D, f, g)


def _mat(B) -> np.ndarray:
    return np.asarray(B.matrix if isinstance(B, BezoutMatrix) else B)


def fundamental_identity_residual(B, f, g, p, q=None) -> float:
    """|b(f, g)(p, q) - u_left(p) B u_right(q)|; the limit form when q == p."""
    D = B.divisor
    M = _mat(B)
    ul = u_vector(D, p, "left")
    ur = u_vector(D, p if q is None else q, "right")
    rhs = ul @ M @ ur
    if q is None or q == p:
        lhs = f(p) * g.deriv()(p) - f.deriv()(p) * g(p)
    else:
        lhs = (f(p) * g(q) - f(q) * g(p)) * cauchy_kernel(p, q)
    return float(abs(lhs - rhs))


def verify_common_zero(f, g, D: Divisor, z, strict: bool = True, tol: float = 1e-9) -> float:
    """‖B_D(f, g) u_right(z)‖, which vanishes when z is a common zero of f and g."""
    if strict:
        for h, name in ((f, "f"), (g, "g")):
            val = h(z)
            if not np.isfinite(val) or abs(val) > tol * max(1.0, abs(h.num.scale_at(z))):
                raise InvalidArgument(f"{z} is not a zero of {name}")
    B = bezout_matrix(f, g, D)
    return float(np.linalg.norm(B.matrix @ u_vector(D, z, "right")))


def det_vanish_residual(f, g, D: Divisor, z) -> float:
    """‖(g(z) B(1, f) - f(z) B(1, g) + B(f, g)) u_right(z)‖."""
    if np.any(D.as_array() == z):
        raise PoleAtDivisor(f"{z} is a point of the divisor")
    one = RationalFunction(1.0)
    M = (g(z) * bezout_matrix(one, f, D).matrix
         - f(z) * bezout_matrix(one, g, D).matrix
         + bezout_matrix(f, g, D).matrix)
    return float(np.linalg.norm(M @ u_vector(D, z, "right")))


def duality_report(g: RationalFunction, D: Divisor, z, tol: float = 1e-6) -> np.ndarray:
    """Pairings u_left(q_i) B(1, g - z) u_right(q_j) over the fiber g^{-1}(z).

    For an unramified fiber of m = |D| points the result is diagonal with
    g'(q_i) on the diagonal.
    """
    h = g.reduced()
    F = h.num - z * h.den
    if F.degree < len(D):
        raise InvalidArgument("fiber is not m finite points (it meets infinity or D is too large)")
    q = roots(F)
    dg = h.deriv()
    scale = max(1.0, float(np.max(np.abs(q))))
    for i in range(len(q)):
        if any(abs(q[i] - q[j]) <= tol * scale for j in range(i)):
            raise RamifiedFiber(f"fiber over {z} has a repeated point")
        if abs(dg(q[i])) <= tol:
            raise RamifiedFiber(f"g is ramified at {q[i]}")
    B = bezout_matrix(RationalFunction(1.0), h - z, D).matrix
    UL = np.array([u_vector(D, qi, "left") for qi in q])
    UR = np.array([u_vector(D, qi, "right") for qi in q]).T
    return UL @ B @ UR
