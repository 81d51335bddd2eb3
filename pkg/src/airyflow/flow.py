"""Per-streamline flow model and its closed-form velocity profile.

The steady along-streamline momentum balance integrates once to a
Riccati equation

    u1' = u1**2/(2 nu) + ((grad_term - f1) s + c)/nu

whose logarithmic-derivative substitution u1 = -2 nu z'/z turns it into
the Airy equation.  With a = (grad_term - f1)/(2 nu**2) < 0 and
b = c/(2 nu**2) the solution denominator is

    z(s) = c1 Ai(t) + c2 Bi(t),    t(s) = -(a s + b)/(-a)**(2/3)

and the velocity is u1 = -2 nu (-a)**(1/3) z_t / z evaluated along t(s).
(The minus sign comes from the substitution; dropping it breaks the
Riccati identity, as the verification suite demonstrates.)

u1 is scale-free in (c1, c2), so the pair is stored normalized: unit
Euclidean norm, first nonzero component positive.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

from .airy import _combination, airy_eval
from .errors import DegenerateModelError, ModelInvalidError, PoleError

# |z| <= POLE_RTOL * scale counts as a pole, where scale is the local
# envelope |c1|(|Ai| + |Ai'|) + |c2|(|Bi| + |Bi'|).  A relative test, so
# it behaves the same whether the Airy values are huge or tiny; the
# derivative terms keep the envelope finite at the zeros themselves so a
# pure-Ai combination still gets a pole neighborhood around each zero.
POLE_RTOL = 1e-13


def _require_finite(name: str, value: float) -> float:
    value = float(value)
    if not math.isfinite(value):
        raise ValueError(f"{name} must be finite, got {value!r}")
    return value


@dataclass(frozen=True)
class FlowParams:
    """Physical constants along one streamline.

    nu        kinematic viscosity (> 0)
    grad_term streamwise pressure-gradient term per unit density
    f1        constant streamwise body force per unit mass
    length    domain extent: s runs over [0, length]
    """

    nu: float
    grad_term: float
    f1: float
    length: float

    def __post_init__(self):
        for name in ("nu", "grad_term", "f1", "length"):
            object.__setattr__(self, name, _require_finite(name, getattr(self, name)))
        if self.nu <= 0.0:
            raise ValueError(f"nu must be positive, got {self.nu!r}")
        if self.length <= 0.0:
            raise ValueError(f"length must be positive, got {self.length!r}")

    @property
    def forcing_gap(self) -> float:
        """grad_term - f1; must be negative for the Airy solution."""
        return self.grad_term - self.f1

    @property
    def supports_airy_solution(self) -> bool:
        return self.forcing_gap < 0.0


@dataclass(frozen=True)
class SolutionConstants:
    """Derived and free constants of one closed-form solution.

    a and b come from the owning FlowParams and the Riccati constant c;
    (c1, c2) select the Airy combination and may be left unset while the
    boundary data that determine them is still being processed.
    """

    a: float
    b: float
    c: float
    c1: float | None = None
    c2: float | None = None

    def __post_init__(self):
        for name in ("a", "b", "c"):
            object.__setattr__(self, name, _require_finite(name, getattr(self, name)))
        if not self.a < 0.0:
            raise ValueError(f"a must be negative, got {self.a!r}")
        if (self.c1 is None) != (self.c2 is None):
            raise ValueError("c1 and c2 must be set together")
        if self.c1 is not None:
            c1, c2 = _normalize_pair(float(self.c1), float(self.c2))
            object.__setattr__(self, "c1", c1)
            object.__setattr__(self, "c2", c2)

    @property
    def has_coefficients(self) -> bool:
        return self.c1 is not None

    def with_coefficients(self, c1: float, c2: float) -> "SolutionConstants":
        return replace(self, c1=c1, c2=c2)


def _normalize_pair(c1: float, c2: float) -> tuple[float, float]:
    # unit norm, first nonzero component positive
    if not (math.isfinite(c1) and math.isfinite(c2)):
        raise ValueError(f"coefficients must be finite, got ({c1!r}, {c2!r})")
    norm = math.hypot(c1, c2)
    if norm == 0.0:
        raise ValueError("(c1, c2) must not both be zero")
    c1, c2 = c1 / norm, c2 / norm
    lead = c1 if c1 != 0.0 else c2
    if lead < 0.0:
        c1, c2 = -c1, -c2
    return c1, c2


def _require_coefficients(consts: SolutionConstants) -> tuple[float, float]:
    if consts.c1 is None or consts.c2 is None:
        raise ValueError("SolutionConstants has no (c1, c2) yet")
    return consts.c1, consts.c2


def derive_constants(params: FlowParams, c: float) -> SolutionConstants:
    """a and b from the flow parameters and the Riccati constant c.

    Raises ModelInvalidError when a >= 0 (DegenerateModelError for the
    exact a == 0 case), since the Airy form needs a < 0.
    """
    c = _require_finite("c", c)
    two_nu_sq = 2.0 * params.nu * params.nu
    a = params.forcing_gap / two_nu_sq
    if a == 0.0:
        raise DegenerateModelError()
    if a > 0.0:
        raise ModelInvalidError(a)
    return SolutionConstants(a=a, b=c / two_nu_sq, c=c)


def map_t(s: float, consts: SolutionConstants) -> float:
    """Affine map from arclength s to the Airy argument t."""
    return -(consts.a * s + consts.b) / (-consts.a) ** (2.0 / 3.0)


def denominator_z(s: float, consts: SolutionConstants) -> float:
    """z(s) = c1*Ai(t(s)) + c2*Bi(t(s))."""
    c1, c2 = _require_coefficients(consts)
    q = airy_eval(map_t(s, consts))
    return c1 * q.ai + c2 * q.bi


def exact_u1(s: float, params: FlowParams, consts: SolutionConstants) -> float:
    """Closed-form streamwise velocity at arclength s.

    Raises PoleError when z(s) sits inside the relative cancellation
    band POLE_RTOL; the error carries the nearest refined pole when a
    sign change can be bracketed around s.
    """
    c1, c2 = _require_coefficients(consts)
    t = map_t(s, consts)
    q = airy_eval(t)
    z = c1 * q.ai + c2 * q.bi
    scale = (
        abs(c1) * (abs(q.ai) + abs(q.ai_prime))
        + abs(c2) * (abs(q.bi) + abs(q.bi_prime))
        + 1e-300
    )
    if abs(z) <= POLE_RTOL * scale:
        raise PoleError(s, nearest_pole=_nearest_pole(consts, s))
    num = c1 * q.ai_prime + c2 * q.bi_prime
    kappa = (-consts.a) ** (1.0 / 3.0)
    return -2.0 * params.nu * kappa * num / z


def exact_u1_derivative(s: float, params: FlowParams, consts: SolutionConstants) -> float:
    """du1/ds, taken from the integrated Riccati equation itself (exact
    because the closed form satisfies it identically)."""
    u1 = exact_u1(s, params, consts)
    return (
        u1 * u1 / (2.0 * params.nu)
        + (params.forcing_gap * s + consts.c) / params.nu
    )


# ---------------------------------------------------------------------------
# Pole location: zeros of z(s).

def _scan_step(consts: SolutionConstants, t: float) -> float:
    # base grid follows the asymptotic oscillation wavelength; refine by
    # 1/sqrt|t| on the oscillatory side where zeros crowd together
    kappa = (-consts.a) ** (1.0 / 3.0)
    step = min(0.05, 0.25 * math.pi / kappa)
    if t < -1.0:
        step = min(step, 0.25 * math.pi / (kappa * math.sqrt(-t)))
    return step


def _z_fast(consts: SolutionConstants, s: float) -> float:
    c1, c2 = consts.c1, consts.c2
    z, _ = _combination(map_t(s, consts), c1, c2)
    return z


def _sign_change_cells(consts, s_lo: float, s_hi: float):
    """Yield (lo, hi) cells of a forward scan where z changes sign."""
    s = s_lo
    z_prev = _z_fast(consts, s)
    while s < s_hi:
        s_next = min(s + _scan_step(consts, map_t(s, consts)), s_hi)
        z_next = _z_fast(consts, s_next)
        if z_prev == 0.0 or (z_prev < 0.0) != (z_next < 0.0):
            yield s, s_next
        s, z_prev = s_next, z_next


def has_interior_pole(consts: SolutionConstants, s_lo: float, s_hi: float) -> bool:
    """True when the scan grid sees a sign change of z on (s_lo, s_hi)."""
    _require_coefficients(consts)
    for _ in _sign_change_cells(consts, s_lo, s_hi):
        return True
    return False


def _bisect_zero(consts: SolutionConstants, lo: float, hi: float) -> float:
    z_lo = _z_fast(consts, lo)
    if z_lo == 0.0:
        return lo
    neg_lo = z_lo < 0.0
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        z_mid = _z_fast(consts, mid)
        if z_mid == 0.0:
            return mid
        if (z_mid < 0.0) == neg_lo:
            lo = mid
        else:
            hi = mid
        if hi - lo <= 4e-16 * (1.0 + abs(mid)):
            break
    return 0.5 * (lo + hi)


def find_poles(consts: SolutionConstants, s_lo: float, s_hi: float) -> list[float]:
    """All zeros of z in [s_lo, s_hi], refined by bisection, ascending.

    Each zero is located to a few ulps, well inside the requested
    1e-12*(1+|s|) bound, so evaluating exact_u1 at a returned location
    lands in its pole band.
    """
    _require_coefficients(consts)
    s_lo, s_hi = float(s_lo), float(s_hi)
    if not s_lo < s_hi:
        raise ValueError(f"need s_lo < s_hi, got [{s_lo!r}, {s_hi!r}]")
    return [_bisect_zero(consts, lo, hi) for lo, hi in _sign_change_cells(consts, s_lo, s_hi)]


def _nearest_pole(consts: SolutionConstants, s: float) -> float | None:
    width = _scan_step(consts, map_t(s, consts))
    poles = find_poles(consts, s - width, s + width)
    if not poles:
        return None
    return min(poles, key=lambda p: abs(p - s))
