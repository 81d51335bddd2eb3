"""Arbitrary-precision oracles for the test suite.

The Airy oracle sums the Maclaurin series of the two independent
solutions of y'' = t*y in mpmath arbitrary-precision arithmetic, with
working precision scaled to the known cancellation (exp(2*zeta) on the
positive axis, exp(zeta) on the negative), so it is accurate for any
argument the tests use.  It shares no code or branch logic with the
implementation under test: one method, one arithmetic, no asymptotics.
"""

from __future__ import annotations

import math

from mpmath import mp, mpf, sqrt, gamma, workdps


def _required_dps(t: float) -> int:
    x = abs(t)
    zeta = (2.0 / 3.0) * x ** 1.5
    lost = (2.0 if t > 0 else 1.0) * zeta / math.log(10.0)
    return int(lost) + 35


def airy_reference(t: float):
    """(Ai, Bi, Ai', Bi') as mpf values via the arbitrary-precision
    Maclaurin series."""
    with workdps(_required_dps(t)):
        td = mpf(t)
        t3 = td ** 3
        eps = mpf(10) ** (-mp.dps + 5)
        f = uf = mpf(1)
        g = ug = td
        fp = up = td * td / 2
        gp = uq = mpf(1)
        for k in range(20000):
            uf = uf * t3 / ((3 * k + 2) * (3 * k + 3))
            ug = ug * t3 / ((3 * k + 3) * (3 * k + 4))
            uq = uq * t3 / ((3 * k + 1) * (3 * k + 3))
            f += uf
            g += ug
            gp += uq
            if k >= 1:
                up = up * t3 * (k + 1) / (k * (3 * k + 2) * (3 * k + 3))
                fp += up
            scale = max(abs(f), abs(g), abs(fp), abs(gp), mpf(1))
            if max(abs(uf), abs(ug), abs(up), abs(uq)) < eps * scale:
                break
        else:
            raise ArithmeticError(f"oracle series did not converge at t = {t!r}")
        c1 = mpf(3) ** (mpf(-2) / 3) / gamma(mpf(2) / 3)
        c2 = mpf(3) ** (mpf(-1) / 3) / gamma(mpf(1) / 3)
        s3 = sqrt(mpf(3))
        ai = c1 * f - c2 * g
        bi = s3 * (c1 * f + c2 * g)
        aip = c1 * fp - c2 * gp
        bip = s3 * (c1 * fp + c2 * gp)
        return +ai, +bi, +aip, +bip


def airy_rel_err(quartet, t: float) -> float:
    """Worst relative error of an implementation quartet against the
    oracle, skipping components smaller than 1e-300 in magnitude."""
    ref = airy_reference(t)
    got = (quartet.ai, quartet.bi, quartet.ai_prime, quartet.bi_prime)
    worst = 0.0
    with workdps(50):
        for g, r in zip(got, ref):
            if abs(r) <= mpf("1e-300"):
                continue
            worst = max(worst, float(abs((mpf(g) - r) / r)))
    return worst
