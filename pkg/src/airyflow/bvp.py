"""Resolving the integration constants (c, c1, c2) from boundary data.

The closed form has exactly two degrees of freedom, the Riccati constant
c and the ratio c2/c1, so two well-posed modes are offered:

* IVP mode: u1(0) and u1'(0) fix c algebraically and then the ratio.
* BVP mode: u1(0) and u1(L) are enforced by shooting on c; u1'(0) is an
  output, recoverable from c = nu*u1'(0) - u1(0)**2/2.

Imposing all three conditions at once is generically unsatisfiable and
deliberately unsupported.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .airy import airy_eval
from .errors import (
    DegenerateCoefficientsError,
    NoSignChangeError,
    PoleCrossingError,
    PoleError,
)
from .flow import (
    FlowParams,
    SolutionConstants,
    _normalize_pair,
    _require_finite,
    derive_constants,
    exact_u1,
    has_interior_pole,
    map_t,
)

SCAN_POINTS = 256
ENDPOINT_RTOL = 1e-9


@dataclass(frozen=True)
class InitialData:
    """Conditions at s = 0, with an optional far-end target u1(L)."""

    u10: float
    u1dot0: float
    u1L: float | None = None

    def __post_init__(self):
        object.__setattr__(self, "u10", _require_finite("u10", self.u10))
        object.__setattr__(self, "u1dot0", _require_finite("u1dot0", self.u1dot0))
        if self.u1L is not None:
            object.__setattr__(self, "u1L", _require_finite("u1L", self.u1L))


def c_from_initial(u10: float, u1dot0: float, nu: float) -> float:
    """Solve the integrated Riccati equation at s = 0 for c:
    c = nu*u1'(0) - u1(0)**2/2."""
    if not nu > 0.0:
        raise ValueError(f"nu must be positive, got {nu!r}")
    return nu * u1dot0 - 0.5 * u10 * u10


def coefficients_from_u0(
    u10: float, params: FlowParams, consts_with_c: SolutionConstants
) -> tuple[float, float]:
    """Normalized (c1, c2) enforcing u1(0) = u10.

    The condition is one homogeneous linear equation in (c1, c2):
        c1*[-2 nu k Ai'(t0) - u10 Ai(t0)] + c2*[-2 nu k Bi'(t0) - u10 Bi(t0)] = 0
    with k = (-a)**(1/3) and t0 = t(0); the returned pair is the
    orthogonal-complement solution, normalized per SolutionConstants.
    """
    t0 = map_t(0.0, consts_with_c)
    q = airy_eval(t0)
    kappa = (-consts_with_c.a) ** (1.0 / 3.0)
    two_nu_k = 2.0 * params.nu * kappa
    bracket_ai = -two_nu_k * q.ai_prime - u10 * q.ai
    bracket_bi = -two_nu_k * q.bi_prime - u10 * q.bi
    if max(abs(bracket_ai), abs(bracket_bi)) < 1e-300:
        raise DegenerateCoefficientsError(
            "both coefficient brackets vanished; data is not finite-representable"
        )
    return _normalize_pair(-bracket_bi, bracket_ai)


def solve_ivp(data: InitialData, params: FlowParams) -> SolutionConstants:
    """Constants from u1(0) = u10 and u1'(0) = u1dot0 (u1L is ignored).

    The result reproduces both conditions by construction; evaluation at
    the origin is performed once so a degenerate z(0) surfaces here
    rather than later.
    """
    c = c_from_initial(data.u10, data.u1dot0, params.nu)
    partial = derive_constants(params, c)
    c1, c2 = coefficients_from_u0(data.u10, params, partial)
    consts = partial.with_coefficients(c1, c2)
    exact_u1(0.0, params, consts)  # raises PoleError on a degenerate origin
    return consts


@dataclass(frozen=True)
class BvpSolution:
    """Shooting result: selected constants plus the root diagnostics."""

    constants: SolutionConstants
    c: float
    initial_slope: float  # u1'(0) implied by c and u10
    endpoint_residual: float
    roots: tuple[float, ...]  # every root found in the bracket, ascending
    excluded_candidates: int  # scan candidates rejected for interior poles


def default_c_bracket(u10: float, u1L: float, nu: float) -> tuple[float, float]:
    """c scales like a velocity squared, so bracket by the boundary data."""
    v = max(abs(u10), abs(u1L), 1.0)
    half = 10.0 * nu * v * v
    return -half, half


def solve_bvp(
    u10: float,
    u1L: float,
    params: FlowParams,
    c_bracket: tuple[float, float] | None = None,
) -> BvpSolution:
    """Find c such that the solution with u1(0) = u10 reaches u1(L) = u1L.

    The bracket is scanned at SCAN_POINTS candidates; candidates whose z
    vanishes in (0, L) have no usable endpoint value and are excluded
    (counted in the result).  Sign changes of the endpoint residual are
    refined by bisection.  With several roots the one with smallest |c|
    is selected; all of them are reported.  Raises NoSignChangeError when
    the scan sees no sign change and PoleCrossingError when every
    candidate was excluded.  Fully deterministic.
    """
    u10 = _require_finite("u10", u10)
    u1L = _require_finite("u1L", u1L)
    if c_bracket is None:
        c_bracket = default_c_bracket(u10, u1L, params.nu)
    c_lo, c_hi = (float(c_bracket[0]), float(c_bracket[1]))
    if not c_lo < c_hi:
        raise ValueError(f"need c_lo < c_hi, got ({c_lo!r}, {c_hi!r})")
    length = params.length
    res_tol = ENDPOINT_RTOL * (1.0 + abs(u1L))

    def build(c: float) -> SolutionConstants:
        partial = derive_constants(params, c)
        c1, c2 = coefficients_from_u0(u10, params, partial)
        return partial.with_coefficients(c1, c2)

    def residual(c: float) -> float | None:
        """Endpoint mismatch, or None when the candidate has no usable
        endpoint (pole inside (0, L) or at L)."""
        consts = build(c)
        if has_interior_pole(consts, 0.0, length):
            return None
        try:
            return exact_u1(length, params, consts) - u1L
        except PoleError:
            return None

    cs = [c_lo + (c_hi - c_lo) * i / (SCAN_POINTS - 1) for i in range(SCAN_POINTS)]
    residuals = [residual(c) for c in cs]
    excluded = sum(1 for r in residuals if r is None)
    if excluded == SCAN_POINTS:
        raise PoleCrossingError(excluded)

    roots: list[float] = []
    for i in range(SCAN_POINTS - 1):
        r0, r1 = residuals[i], residuals[i + 1]
        if r0 is None or r1 is None:
            continue
        if r0 == 0.0:
            roots.append(cs[i])
            continue
        if (r0 < 0.0) == (r1 < 0.0):
            continue
        root = _bisect_residual(residual, cs[i], cs[i + 1], r0)
        if root is not None:
            roots.append(root)
    if residuals[-1] == 0.0:
        roots.append(cs[-1])

    verified: list[tuple[float, float, SolutionConstants]] = []
    for c in sorted(roots):
        if verified and abs(c - verified[-1][0]) <= 1e-12 * (1.0 + abs(c)):
            continue  # same root seen from an exact-zero scan residual
        consts = build(c)
        if has_interior_pole(consts, 0.0, length):
            continue
        try:
            res = exact_u1(length, params, consts) - u1L
        except PoleError:
            continue
        if abs(res) <= res_tol:
            verified.append((c, res, consts))

    if not verified:
        usable = [r for r in residuals if r is not None]
        raise NoSignChangeError(
            usable[0] if usable else None, usable[-1] if usable else None
        )

    c_sel, res_sel, consts_sel = min(verified, key=lambda item: (abs(item[0]), item[0]))
    return BvpSolution(
        constants=consts_sel,
        c=c_sel,
        initial_slope=(c_sel + 0.5 * u10 * u10) / params.nu,
        endpoint_residual=res_sel,
        roots=tuple(sorted(c for c, _, _ in verified)),
        excluded_candidates=excluded,
    )


def _bisect_residual(residual, lo: float, hi: float, r_lo: float) -> float | None:
    """Bisect a bracketed sign change of the endpoint residual; None when
    an unusable candidate (pole) interrupts the bracket."""
    neg_lo = r_lo < 0.0
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        r_mid = residual(mid)
        if r_mid is None:
            return None
        if r_mid == 0.0:
            return mid
        if (r_mid < 0.0) == neg_lo:
            lo = mid
        else:
            hi = mid
        if hi - lo <= 1e-13 * (1.0 + abs(mid)):
            break
    return 0.5 * (lo + hi)
