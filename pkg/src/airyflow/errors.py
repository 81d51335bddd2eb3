"""Exception types shared across the package."""

from __future__ import annotations


class FlowDomainError(Exception):
    """Base class for domain errors: the inputs were valid numbers but the
    model or solution is undefined for them (maps to CLI exit code 1)."""


class ModelInvalidError(FlowDomainError):
    """The forcing balance gives a >= 0, where the Airy-based closed form
    has no physical meaning.  Carries the offending value."""

    def __init__(self, a: float, message: str | None = None):
        self.a = a
        super().__init__(message or f"model requires a < 0, got a = {a!r}")


class DegenerateModelError(ModelInvalidError):
    """grad_term == f1 exactly (a = 0): the equation degenerates to a
    different closed form that this package does not implement."""

    def __init__(self, a: float = 0.0):
        super().__init__(a, "degenerate model: grad_term == f1 gives a = 0")


class AiryOverflowError(FlowDomainError, OverflowError):
    """Bi(t) would exceed the double range (t around 105 and beyond)."""

    def __init__(self, t: float):
        self.t = t
        super().__init__(f"Bi overflows double range at t = {t!r}")


class PoleError(FlowDomainError):
    """The denominator z(s) vanishes: the closed-form velocity diverges.

    ``nearest_pole`` is the refined zero location when one could be
    bracketed near the requested point, else None.
    """

    def __init__(self, s: float, nearest_pole: float | None = None):
        self.s = s
        self.nearest_pole = nearest_pole
        where = f" (nearest pole at s = {nearest_pole!r})" if nearest_pole is not None else ""
        super().__init__(f"denominator vanishes near s = {s!r}{where}")


class DegenerateCoefficientsError(FlowDomainError):
    """Both coefficient brackets vanished; cannot happen for finite data
    (the Wronskian forbids it) but guarded against anyway."""


class NoSignChangeError(FlowDomainError):
    """The shooting residual has no sign change over the scanned bracket.
    Carries the residuals observed at the outermost usable candidates."""

    def __init__(self, residual_lo: float | None, residual_hi: float | None):
        self.residual_lo = residual_lo
        self.residual_hi = residual_hi
        super().__init__(
            "no sign change of the endpoint residual over the bracket "
            f"(residuals {residual_lo!r} .. {residual_hi!r})"
        )


class PoleCrossingError(FlowDomainError):
    """Every scanned candidate produced a pole before the far boundary,
    so the endpoint condition is undefined throughout the bracket."""

    def __init__(self, excluded: int):
        self.excluded = excluded
        super().__init__(
            f"all {excluded} scanned candidates hit a pole before the endpoint"
        )


class GridTooCoarseError(ValueError):
    """A finite-difference check needs at least 4 usable interior nodes."""


class GridDomainError(ValueError):
    """The requested grid leaves the solution's x-domain [0, L]."""
