"""Univariate polynomials and rational functions over C, in floating point.

Coefficients are stored in ascending order.  Root finding uses companion
matrix eigenvalues (``numpy.polynomial``) followed by one Newton step.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np
from numpy.polynomial import polynomial as P

from .errors import InvalidArgument, UnsupportedPoleOrder

INFINITY = np.inf


def _strip(c: np.ndarray) -> np.ndarray:
    nz = np.flatnonzero(c)
    return c[: nz[-1] + 1] if nz.size else c[:0]


class Poly:
    """Polynomial with ascending coefficients; the zero polynomial is empty."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence = ()):
        c = np.atleast_1d(np.array(coeffs))
        if c.dtype.kind not in "fc":
            c = c.astype(float)
        c = _strip(c)
        c.setflags(write=False)
        self.coeffs = c

    @classmethod
    def from_roots(cls, roots, lead=1.0) -> "Poly":
        return cls(lead * P.polyfromroots(roots))

    @classmethod
    def monomial(cls, k: int, c=1.0) -> "Poly":
        return cls([0.0] * k + [c])

    @property
    def degree(self) -> int:
        """Index of the last nonzero coefficient (-1 for the zero polynomial)."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return len(self.coeffs) == 0

    @property
    def lead(self):
        return self.coeffs[-1] if len(self.coeffs) else 0.0

    def norm(self) -> float:
        return float(np.linalg.norm(self.coeffs))

    def is_real(self, rtol: float = 1e-12) -> bool:
        return np.max(np.abs(np.imag(self.coeffs)), initial=0.0) <= rtol * max(self.norm(), 1e-300)

    def real(self) -> "Poly":
        return Poly(np.real(self.coeffs))

    def __call__(self, t):
        if self.is_zero():
            return np.zeros_like(np.asarray(t, dtype=complex if np.iscomplexobj(t) else float))
        return P.polyval(t, self.coeffs)

    def scale_at(self, t) -> float:
        """Σ |c_i| |t|^i, the natural size of p(t) for rounding-error purposes."""
        return float(P.polyval(abs(t), np.abs(self.coeffs))) if len(self.coeffs) else 0.0

    def deriv(self, m: int = 1) -> "Poly":
        if self.degree < m:
            return Poly()
        return Poly(P.polyder(self.coeffs, m))

    def trim(self, rtol: float = 1e-13) -> "Poly":
        """Drop trailing coefficients that are negligible relative to the norm."""
        c = np.array(self.coeffs)
        if c.size:
            c[np.abs(c) <= rtol * np.max(np.abs(c))] = 0
        return Poly(c)

    def __add__(self, other):
        other = _as_poly(other)
        return Poly(P.polyadd(self.coeffs, other.coeffs) if len(self.coeffs) and len(other.coeffs)
                    else (self.coeffs if len(self.coeffs) else other.coeffs))

    __radd__ = __add__

    def __neg__(self):
        return Poly(-self.coeffs)

    def __sub__(self, other):
        return self + (-_as_poly(other))

    def __rsub__(self, other):
        return _as_poly(other) - self

    def __mul__(self, other):
        other = _as_poly(other)
        if self.is_zero() or other.is_zero():
            return Poly()
        return Poly(P.polymul(self.coeffs, other.coeffs))

    __rmul__ = __mul__

    def __truediv__(self, c):
        return Poly(self.coeffs / c)

    def __divmod__(self, other: "Poly"):
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        if self.is_zero():
            return Poly(), Poly()
        q, r = P.polydiv(self.coeffs, other.coeffs)
        return Poly(q), Poly(r)

    def __eq__(self, other):
        other = _as_poly(other)
        return len(self.coeffs) == len(other.coeffs) and bool(np.all(self.coeffs == other.coeffs))

    def allclose(self, other, atol: float = 1e-12) -> bool:
        other = _as_poly(other)
        n = max(len(self.coeffs), len(other.coeffs))
        a = np.zeros(n, complex)
        b = np.zeros(n, complex)
        a[: len(self.coeffs)] = self.coeffs
        b[: len(other.coeffs)] = other.coeffs
        return bool(np.allclose(a, b, atol=atol, rtol=0))

    def __repr__(self):
        return f"Poly({np.array2string(self.coeffs, precision=6, separator=', ')})"

    def roots(self, tol: float = 1e-12) -> np.ndarray:
        return roots(self, tol)


def _as_poly(x) -> Poly:
    return x if isinstance(x, Poly) else Poly([x])


def roots(p: Poly, tol: float = 1e-12) -> np.ndarray:
    """All ``deg p`` roots of ``p`` with multiplicity."""
    if p.is_zero():
        raise InvalidArgument("the zero polynomial has no well-defined roots")
    if p.degree == 0:
        return np.zeros(0, dtype=complex)
    r = P.polyroots(p.coeffs).astype(complex)
    dp = p.deriv()
    for i, z in enumerate(r):
        f, df = p(z), dp(z)
        if df != 0:
            z1 = z - f / df
            if abs(p(z1)) < abs(f):
                r[i] = z1
    if p.is_real():
        # keep conjugate symmetry exact for nearly real roots
        small = np.abs(r.imag) <= tol * np.maximum(1.0, np.abs(r))
        r[small] = r[small].real
    return r


def sorted_roots(r: np.ndarray) -> np.ndarray:
    return r[np.lexsort((r.imag, r.real))]


class RationalFunction:
    """num/den with a monic denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=1.0):
        num, den = _as_poly(num), _as_poly(den)
        if den.is_zero():
            raise InvalidArgument("zero denominator")
        lead = den.lead
        self.num = num / lead
        self.den = den / lead

    @classmethod
    def from_partial_fractions(cls, poles, residues, poly=()) -> "RationalFunction":
        """Σ r_i / (t - p_i) + poly(t)."""
        den = Poly.from_roots(poles) if len(poles) else Poly([1.0])
        num = Poly(poly) * den
        for i, (p, r) in enumerate(zip(poles, residues)):
            others = [q for j, q in enumerate(poles) if j != i]
            num = num + Poly.from_roots(others, r) if others else num + Poly([r])
        return cls(num, den)

    def __repr__(self):
        return f"RationalFunction({self.num!r}, {self.den!r})"

    @property
    def degree(self) -> int:
        """Degree as a map P^1 -> P^1, for reduced functions."""
        return max(self.num.degree, self.den.degree)

    def is_real(self, rtol: float = 1e-12) -> bool:
        return self.num.is_real(rtol) and self.den.is_real(rtol)

    def reduced(self, tol: float = 1e-8) -> "RationalFunction":
        """Cancel common roots of numerator and denominator."""
        num, den = self.num, self.den
        if num.is_zero():
            return RationalFunction(Poly(), Poly([1.0]))
        changed = True
        while changed and den.degree > 0 and num.degree > 0:
            changed = False
            for r in roots(den):
                if abs(num(r)) <= tol * max(num.scale_at(r), 1e-300):
                    lin = Poly([-r, 1.0])
                    num, _ = divmod(num, lin)
                    den, _ = divmod(den, lin)
                    if self.is_real() and abs(np.imag(r)) < tol:
                        num, den = num.real(), den.real()
                    changed = True
                    break
        return RationalFunction(num, den)

    def __call__(self, t):
        return evaluate(self, t)

    def deriv(self) -> "RationalFunction":
        return RationalFunction(self.num.deriv() * self.den - self.num * self.den.deriv(),
                                self.den * self.den)

    def __add__(self, other):
        other = _as_rf(other)
        return RationalFunction(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(-self.num, self.den)

    def __sub__(self, other):
        return self + (-_as_rf(other))

    def __rsub__(self, other):
        return _as_rf(other) - self

    def __mul__(self, other):
        other = _as_rf(other)
        return RationalFunction(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _as_rf(other)
        if other.num.is_zero():
            raise ZeroDivisionError("division by the zero function")
        return RationalFunction(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        return _as_rf(other) / self

    def compose_mobius(self, a, b, c, d) -> "RationalFunction":
        """f((a s + b) / (c s + d)) as a rational function of s."""
        n = max(self.num.degree, self.den.degree, 0)
        return RationalFunction(homogenize(self.num, n, a, b, c, d),
                                homogenize(self.den, n, a, b, c, d))


def homogenize(p: Poly, n: int, a, b, c, d) -> Poly:
    """(c s + d)^n · p((a s + b) / (c s + d)) for deg p <= n."""
    out = Poly()
    top, bot = Poly([b, a]), Poly([d, c])
    for i, ci in enumerate(p.coeffs):
        term = Poly([ci])
        for _ in range(i):
            term = term * top
        for _ in range(n - i):
            term = term * bot
        out = out + term
    return out


def _as_rf(x) -> RationalFunction:
    if isinstance(x, RationalFunction):
        return x
    return RationalFunction(_as_poly(x))


def evaluate(f: RationalFunction, t):
    """f(t), or ``INFINITY`` when t is a pole."""
    den = f.den(t)
    if abs(den) <= 1e-14 * max(f.den.scale_at(t), 1e-300):
        num = f.num(t)
        if abs(num) <= 1e-10 * max(f.num.scale_at(t), 1e-300):
            g = f.reduced()
            if g.den.degree < f.den.degree:
                return evaluate(g, t)
        return INFINITY
    return f.num(t) / den


@dataclass(frozen=True)
class PoleExpansion:
    """f(t) = a / (t - pole) + b + O(t - pole)."""

    pole: complex
    a: complex
    b: complex


def laurent_simple(f: RationalFunction, p, tol: float = 1e-10) -> PoleExpansion:
    """Residue and constant term of f at p, assuming at most a simple pole."""
    num, den = f.num, f.den
    d0 = den(p)
    if abs(d0) > tol * max(den.scale_at(p), 1e-300):
        return PoleExpansion(p, 0.0, num(p) / d0)
    d1p, d2p = den.deriv(), den.deriv(2)
    d1 = d1p(p)
    if abs(d1) <= tol * max(d1p.scale_at(p), 1e-300):
        g = f.reduced()
        if g.den.degree < den.degree:
            return laurent_simple(g, p, tol)
        raise UnsupportedPoleOrder(f"pole of order > 1 at {p}")
    n0, n1 = num(p), num.deriv()(p)
    a = n0 / d1
    b = n1 / d1 - n0 * d2p(p) / (2 * d1 * d1)
    return PoleExpansion(p, a, b)


@dataclass(frozen=True)
class DividingVerdict:
    is_dividing: bool
    orientation_sign: int | None = None
    failure_witness: float | None = None
    poles: tuple = field(default=())
    residues: tuple = field(default=())
    reason: str = ""


_WITNESS_CANDIDATES = (1.0, -1.0, 0.0, 2.0, -2.0, 0.5, -0.5, 3.0, -3.0, 10.0, -10.0)


def _normalized_real(f: RationalFunction) -> RationalFunction:
    scale = max(f.num.norm(), f.den.norm())
    for p in (f.num, f.den):
        if np.max(np.abs(np.imag(p.coeffs)), initial=0.0) > 1e-12 * scale:
            raise InvalidArgument("rational function has non-real coefficients")
    return RationalFunction(f.num.real(), f.den.real())


def fiber(f: RationalFunction, c) -> np.ndarray:
    """Roots of num - c·den (finite part of f^{-1}(c))."""
    return roots(f.num - c * f.den)


def find_nonreal_fiber(f: RationalFunction, tol: float = 1e-6) -> float | None:
    """A real value whose fiber under f contains a non-real point, if one is found."""
    grid = np.tan(np.linspace(-np.pi / 2, np.pi / 2, 403)[1:-1])
    for c in (*_WITNESS_CANDIDATES, *grid):
        g = f.num - c * f.den
        if g.is_zero() or g.degree < 1:
            continue
        r = roots(g)
        if np.any(np.abs(r.imag) > tol * np.maximum(1.0, np.abs(r))):
            return float(c)
    return None


def is_dividing(f: RationalFunction, tol: float = 1e-9) -> DividingVerdict:
    """Decide whether a real rational function has all-real fibers.

    Such a function is, up to sign, a Pick function: its poles on the real
    projective line are simple and the residues (with the coefficient of t
    at infinity, counted with opposite sign) all share one sign.  The sign
    reported is +1 when f maps the upper half-plane to itself.
    """
    f = _normalized_real(f).reduced()
    if f.num.degree <= 0 and f.den.degree == 0:
        raise InvalidArgument("constant function")
    q, r = divmod(f.num, f.den)
    poles = roots(f.den) if f.den.degree > 0 else np.zeros(0, complex)
    slope = q.coeffs[1].real if q.degree >= 1 else 0.0

    def reject(reason):
        return DividingVerdict(False, None, find_nonreal_fiber(f), tuple(poles), (), reason)

    if q.degree > 1:
        return reject("pole of order > 1 at infinity")
    if np.any(np.abs(poles.imag) > tol * np.maximum(1.0, np.abs(poles))):
        return reject("non-real pole")
    poles = poles.real
    dden = f.den.deriv()
    if np.any([abs(dden(p)) <= tol * max(dden.scale_at(p), 1e-300) for p in poles]):
        return reject("multiple pole")
    residues = np.array([f.num(p) / dden(p) for p in poles])
    # a pole at infinity behaves like a residue of sign opposite to the slope
    signs = np.concatenate([np.sign(residues), [-np.sign(slope)] if slope != 0 else []])
    if np.all(signs < 0):
        sign = 1
    elif np.all(signs > 0):
        sign = -1
    else:
        return DividingVerdict(False, None, find_nonreal_fiber(f), tuple(poles),
                               tuple(residues), "residues of mixed sign")
    return DividingVerdict(True, sign, None, tuple(poles), tuple(residues))
