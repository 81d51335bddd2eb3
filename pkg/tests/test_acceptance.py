"""Acceptance gate: one test per shipping criterion, each pinned to its
tolerance and runtime budget.

Each test prints one `PASS <criterion> ...` line (visible with -s or in
the captured output); a failed assertion marks the criterion FAIL.
"""

import json
import math
import random
import time
from pathlib import Path

import numpy as np
import pytest

from airyflow import (
    FlowParams,
    GridSpec,
    PoleError,
    SolutionConstants,
    StreamlineFamily,
    airy_eval,
    check_prop1,
    check_prop2_prop3,
    continuity_bracket,
    emit,
    exact_u1,
    find_poles,
    integrate_riccati,
    integrate_second_order,
    parse,
    random_flow_case,
    reconstruct_field,
    solve_bvp,
    solve_ivp,
)
from airyflow.bvp import InitialData

HERE = Path(__file__).parent
INV_PI = 0.31830988618379067154


def _report(name: str, runtime: float, budget: float, detail: str) -> None:
    print(f"PASS {name} runtime={runtime:.2f}s budget={budget:g}s {detail}")


def test_criterion_1_airy_correctness():
    budget = 1.0
    data = json.loads((HERE / "airy_reference.json").read_text())
    points = [
        (
            float(row["t"]),
            float(row["ai"]),
            float(row["bi"]),
            float(row["ai_prime"]),
            float(row["bi_prime"]),
        )
        for row in data["points"]
    ]
    start = time.perf_counter()
    worst = 0.0
    for t, *refs in points:
        q = airy_eval(t)
        for got, ref in zip((q.ai, q.bi, q.ai_prime, q.bi_prime), refs):
            if abs(ref) <= 1e-300:
                continue
            worst = max(worst, abs(got - ref) / abs(ref))
    assert len(points) == 1000
    assert worst <= 1e-10

    worst_w = 0.0
    t = -50.0
    while t <= 50.0:
        q = airy_eval(t)
        worst_w = max(worst_w, abs(q.ai * q.bi_prime - q.ai_prime * q.bi - INV_PI))
        t += 0.25
    assert worst_w <= 1e-10

    elapsed = time.perf_counter() - start
    assert elapsed < budget
    _report(
        "airy_correctness", elapsed, budget,
        f"oracle_rel_err={worst:.3e} (tol 1e-10) wronskian={worst_w:.3e} (tol 1e-10)",
    )


def test_criterion_2_closed_form_validity():
    budget = 5.0
    rng = random.Random(20260809)
    start = time.perf_counter()
    cases = [random_flow_case(rng) for _ in range(50)]
    worst_ric = 0.0
    worst_second = 0.0
    h1, h2 = 1e-5, 1e-4
    for params, _, consts in cases:
        length = params.length
        for i in range(1, 24):
            s = i * length / 24
            um1 = exact_u1(s - h1, params, consts)
            up1 = exact_u1(s + h1, params, consts)
            u0 = exact_u1(s, params, consts)
            fd = (up1 - um1) / (2 * h1)
            rhs = u0 * u0 / (2 * params.nu) + (
                params.forcing_gap * s + consts.c
            ) / params.nu
            worst_ric = max(worst_ric, abs(fd - rhs))

            um2 = exact_u1(s - h2, params, consts)
            up2 = exact_u1(s + h2, params, consts)
            du = (up2 - um2) / (2 * h2)
            ddu = (up2 - 2 * u0 + um2) / (h2 * h2)
            worst_second = max(
                worst_second,
                abs(u0 * du - params.f1 + params.grad_term - params.nu * ddu),
            )
    assert worst_ric <= 1e-6
    assert worst_second <= 1e-4
    elapsed = time.perf_counter() - start
    assert elapsed < budget
    _report(
        "closed_form_validity", elapsed, budget,
        f"riccati_fd={worst_ric:.3e} (tol 1e-6) second_order_fd={worst_second:.3e} (tol 1e-4)",
    )


def test_criterion_3_oracle_equivalence():
    budget = 30.0
    rng = random.Random(31415)
    start = time.perf_counter()
    cases = [random_flow_case(rng) for _ in range(4)]

    worst_exact = 0.0
    for params, data, consts in cases:
        traj = integrate_riccati(params, consts.c, data.u10, params.length, 1e-5)
        idx = np.arange(0, len(traj.s), 250)
        exact = np.array([exact_u1(float(traj.s[i]), params, consts) for i in idx])
        worst_exact = max(worst_exact, float(np.max(np.abs(traj.u1[idx] - exact))))
    assert worst_exact <= 1e-9

    worst_forms = 0.0
    for params, data, consts in cases:
        t1 = integrate_riccati(params, consts.c, data.u10, params.length, 1e-4)
        t2 = integrate_second_order(params, data.u10, data.u1dot0, params.length, 1e-4)
        n = min(len(t1), len(t2))
        worst_forms = max(worst_forms, float(np.max(np.abs(t1.u1[:n] - t2.u1[:n]))))
    assert worst_forms <= 1e-8

    params, data, consts = cases[0]
    errs = []
    for step in (8e-3, 4e-3, 2e-3):
        traj = integrate_riccati(params, consts.c, data.u10, params.length, step)
        exact = np.array([exact_u1(float(s), params, consts) for s in traj.s])
        errs.append(float(np.max(np.abs(traj.u1 - exact))))
    orders = [math.log2(errs[i] / errs[i + 1]) for i in range(2)]
    for order in orders:
        assert abs(order - 4.0) <= 0.3

    elapsed = time.perf_counter() - start
    assert elapsed < budget
    _report(
        "oracle_equivalence", elapsed, budget,
        f"rk4_vs_exact={worst_exact:.3e} (tol 1e-9) forms={worst_forms:.3e} (tol 1e-8) "
        f"orders={[round(o, 2) for o in orders]} (4 +- 0.3)",
    )


def test_criterion_4_bvp_roundtrip():
    budget = 10.0
    rng = random.Random(271828)
    start = time.perf_counter()
    worst_c = 0.0
    worst_slope = 0.0
    for _ in range(25):
        params, data, consts = random_flow_case(rng)
        u1L = exact_u1(params.length, params, consts)
        sol = solve_bvp(data.u10, u1L, params)
        worst_c = max(worst_c, abs(sol.c - consts.c))
        slope = (sol.c + 0.5 * data.u10 * data.u10) / params.nu
        worst_slope = max(worst_slope, abs(slope - data.u1dot0))
    assert worst_c <= 1e-8
    assert worst_slope <= 1e-8
    elapsed = time.perf_counter() - start
    assert elapsed < budget
    _report(
        "bvp_roundtrip", elapsed, budget,
        f"c_recovery={worst_c:.3e} (tol 1e-8) slope_recovery={worst_slope:.3e} (tol 1e-8)",
    )


def test_criterion_5_identity_checks():
    budget = 5.0
    start = time.perf_counter()
    params = FlowParams(nu=1.0, grad_term=-2.0, f1=0.0, length=1.5)
    consts = solve_ivp(InitialData(u10=0.0, u1dot0=-0.5), params)
    family = StreamlineFamily.sinusoidal(0.1, math.pi)
    grid = GridSpec(x_min=0.15, x_max=1.35, y_min=-0.4, y_max=0.4, nx=9, ny=3)
    sampled = reconstruct_field(family, params, consts, grid, pressure=(0.02, -0.05))

    hs = (1e-2, 1e-3, 1e-4)
    p1 = [check_prop1(sampled, h) for h in hs]
    p2 = [check_prop2_prop3(sampled, h)[0] for h in hs]
    assert p1[1] <= 1e-4
    assert p2[1] <= 1e-4

    # order of decay; the 1e-4 point of the second-derivative stencil is
    # skipped because its eps*|u|/h^2 rounding floor (~1e-7) swamps the
    # O(h^2) truncation term there
    slopes = [
        math.log10(p1[0] / p1[1]),
        math.log10(p1[1] / p1[2]),
        math.log10(p2[0] / p2[1]),
    ]
    for slope in slopes:
        assert abs(slope - 2.0) <= 0.3

    worst_bracket = max(
        abs(continuity_bracket(StreamlineFamily.straight(m), y0, s))
        for m in (0.0, 1.0, -2.5)
        for y0 in (-1.0, 0.0, 3.0)
        for s in (0.0, 0.4, 1.2)
    )
    assert worst_bracket == 0.0

    elapsed = time.perf_counter() - start
    assert elapsed < budget
    _report(
        "identity_checks", elapsed, budget,
        f"prop1(1e-3)={p1[1]:.3e} prop2(1e-3)={p2[1]:.3e} (tol 1e-4) "
        f"slopes={[round(sl, 2) for sl in slopes]} (2 +- 0.3) continuity={worst_bracket:g}",
    )


def test_criterion_6_pole_handling():
    budget = 2.0
    start = time.perf_counter()
    params = FlowParams(nu=1.0, grad_term=-2.0, f1=0.0, length=6.0)
    # t(s) = s - 6: three Ai zeros swept for s in [0, 6)
    consts = SolutionConstants(a=-1.0, b=6.0, c=12.0, c1=1.0, c2=0.0)
    poles = find_poles(consts, 0.0, 6.0)
    assert len(poles) == 3

    # each pole sits just before the blow-up truncation of an RK4 run
    # started midway between the previous pole and it; restarting at
    # s_start shifts the integrator clock, so fold gap*s_start into c
    step = 1e-4
    starts = [0.0] + [0.5 * (a + b) for a, b in zip(poles, poles[1:])]
    for s_start, pole in zip(starts, poles):
        c_shifted = consts.c + params.forcing_gap * s_start
        traj = integrate_riccati(
            params, c_shifted, exact_u1(s_start, params, consts), 6.0 - s_start, step
        )
        assert traj.truncated_at_pole
        trunc = s_start + traj.truncation_location
        assert 0.0 <= trunc - pole <= 10 * step

    # a pole error in a neighborhood of each pole
    for pole in poles:
        with pytest.raises(PoleError):
            exact_u1(pole, params, consts)

    # no false poles where z keeps one sign
    assert find_poles(consts, 6.5, 30.0) == []
    assert exact_u1(8.0, params, consts)  # evaluable, no pole band hit

    elapsed = time.perf_counter() - start
    assert elapsed < budget
    _report(
        "pole_handling", elapsed, budget,
        f"poles={[round(p, 6) for p in poles]} all inside one truncation interval",
    )


def test_criterion_7_serialization():
    budget = 1.0
    start = time.perf_counter()
    params = FlowParams(nu=1.0, grad_term=-2.0, f1=0.0, length=2.2)
    consts = SolutionConstants(a=-1.0, b=4.0, c=8.0, c1=1.0, c2=0.0)
    pole = find_poles(consts, 0.0, 2.2)[0]
    dx = 0.02
    grid = GridSpec(
        x_min=pole - 24 * dx,
        x_max=pole + 25 * dx,
        y_min=-1.0,
        y_max=1.0,
        nx=50,
        ny=50,
    )
    sampled = reconstruct_field(
        StreamlineFamily.sinusoidal(0.15, 2.0), params, consts, grid
    )
    n_invalid = sum(1 for sm in sampled.samples if not sm.valid)
    assert n_invalid == 50  # the pole column, every row

    for fmt in ("csv", "json"):
        blob = emit(sampled, fmt)
        blob2 = emit(parse(blob, fmt), fmt)
        assert blob == blob2, f"{fmt} round-trip not byte-identical"

    elapsed = time.perf_counter() - start
    assert elapsed < budget
    _report(
        "serialization", elapsed, budget,
        f"grid=50x50 invalid_samples={n_invalid} csv+json byte-identical",
    )
