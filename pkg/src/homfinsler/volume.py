"""Volume coefficients of the two standard Finsler volume forms.

Relative to the Riemannian volume of alpha, both the Busemann-Hausdorff and
the Holmes-Thompson volume forms rescale by a factor f(b) that depends only
on the profile phi, the 1-form length b and the dimension n:

    f_bh(b) = int_0^pi sin^(n-2) t dt / int_0^pi sin^(n-2) t / phi(b cos t)^n dt
    f_ht(b) = int_0^pi sin^(n-2) t * T(b cos t) dt / int_0^pi sin^(n-2) t dt

with the auxiliary weight

    T(s) = phi (phi - s phi')^(n-2) { (phi - s phi') + (b^2 - s^2) phi'' }.

For phi = 1 both factors are exactly 1.  Integrals are evaluated with
fixed-order Gauss-Legendre panels refined by adaptive bisection.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import roots_legendre

from .errors import QuadratureError, ValidatedModeError
from .metrics import PhiFamily

__all__ = [
    "VolumeCoefficients",
    "t_function",
    "volume_coefficient",
    "volume_coefficients",
    "adaptive_gauss_legendre",
]

_MAX_DEPTH = 48


def t_function(phi: PhiFamily, s: float, b: float, n: int) -> float:
    """The Holmes-Thompson integrand weight T(s)."""
    p = phi.phi(s)
    core = p - s * phi.dphi(s)
    return p * core ** (n - 2) * (core + (b * b - s * s) * phi.d2phi(s))


def _panel_rule(nodes: int):
    x, w = roots_legendre(nodes)
    return x, w


def adaptive_gauss_legendre(f, a: float, b: float, abs_tol: float = 1e-10,
                            nodes: int = 64):
    """Integrate f over [a, b]; returns (value, evaluation_count).

    One fixed-order panel per interval; an interval is accepted when
    bisecting it changes the value by less than its share of abs_tol,
    otherwise it is split.  Raises QuadratureError (naming the worst panel)
    when the recursion depth limit is hit, which is how non-integrable
    singularities surface.
    """
    x, w = _panel_rule(nodes)
    evals = 0

    def panel(lo, hi):
        nonlocal evals
        half = 0.5 * (hi - lo)
        mid = 0.5 * (hi + lo)
        pts = mid + half * x
        vals = np.array([f(t) for t in pts])
        evals += len(pts)
        if not np.all(np.isfinite(vals)):
            raise QuadratureError(
                f"integrand not finite inside panel [{lo:.6g}, {hi:.6g}]")
        return half * float(w @ vals)

    def recurse(lo, hi, tol, whole, depth):
        mid = 0.5 * (lo + hi)
        left = panel(lo, mid)
        right = panel(mid, hi)
        if abs(left + right - whole) <= tol:
            return left + right
        if depth >= _MAX_DEPTH:
            raise QuadratureError(
                f"quadrature did not converge; worst panel [{lo:.6g}, {hi:.6g}]")
        return (recurse(lo, mid, 0.5 * tol, left, depth + 1)
                + recurse(mid, hi, 0.5 * tol, right, depth + 1))

    value = recurse(a, b, abs_tol, panel(a, b), 0)
    return value, evals


def _sin_power(t: float, n: int) -> float:
    """sin^(n-2) t, via exp of log for large exponents to avoid underflow."""
    k = n - 2
    if k == 0:
        return 1.0
    st = math.sin(t)
    if st <= 0.0:
        return 0.0
    return math.exp(k * math.log(st))


@dataclass(frozen=True)
class VolumeCoefficients:
    b: float
    n: int
    f_bh: float
    f_ht: float
    nodes_used: int


def volume_coefficient(phi: PhiFamily, b: float, n: int, form: str,
                       mode: str = "formal", abs_tol: float = 1e-10,
                       nodes: int = 64) -> float:
    """Volume rescaling factor f(b) for form "bh" or "ht".

    In validated mode the profile must be positive on [-b, b] (checked via
    the positivity criterion grid); the formal mode attempts the quadrature
    regardless and lets genuine non-integrability surface as
    QuadratureError.
    """
    value, _ = _volume_with_count(phi, b, n, form, mode, abs_tol, nodes)
    return value


def _volume_with_count(phi, b, n, form, mode, abs_tol, nodes):
    if n < 2:
        raise ValueError("dimension n must be >= 2")
    if form not in ("bh", "ht"):
        raise ValueError(f"form must be 'bh' or 'ht', got {form!r}")
    if mode not in ("formal", "validated"):
        raise ValueError(f"mode must be 'formal' or 'validated', got {mode!r}")
    if mode == "validated":
        grid = np.linspace(-b, b, 201)
        bad = [s for s in map(float, grid) if not _positive_at(phi, s)]
        if bad:
            raise ValidatedModeError(
                f"validated mode: phi({phi.name}) not positive at s = {bad[0]:.6g} on [-b, b]")

    sin_ref, c1 = adaptive_gauss_legendre(lambda t: _sin_power(t, n), 0.0, math.pi,
                                          abs_tol=abs_tol, nodes=nodes)
    if form == "bh":
        def integrand(t):
            return _sin_power(t, n) / phi.phi(b * math.cos(t)) ** n
        denom, c2 = adaptive_gauss_legendre(integrand, 0.0, math.pi,
                                            abs_tol=abs_tol, nodes=nodes)
        if denom == 0.0:
            raise QuadratureError("bh denominator integral evaluated to zero")
        return sin_ref / denom, c1 + c2

    def integrand(t):
        return _sin_power(t, n) * t_function(phi, b * math.cos(t), b, n)
    numer, c2 = adaptive_gauss_legendre(integrand, 0.0, math.pi,
                                        abs_tol=abs_tol, nodes=nodes)
    return numer / sin_ref, c1 + c2


def _positive_at(phi, s) -> bool:
    try:
        val = phi.phi(s)
    except ZeroDivisionError:
        return False
    return math.isfinite(val) and val > 0.0


def volume_coefficients(phi: PhiFamily, b: float, n: int, mode: str = "formal",
                        abs_tol: float = 1e-10, nodes: int = 64) -> VolumeCoefficients:
    """Both volume factors in one record."""
    f_bh, n1 = _volume_with_count(phi, b, n, "bh", mode, abs_tol, nodes)
    f_ht, n2 = _volume_with_count(phi, b, n, "ht", mode, abs_tol, nodes)
    return VolumeCoefficients(b=b, n=n, f_bh=f_bh, f_ht=f_ht, nodes_used=n1 + n2)
