"""Command-line surface: evaluation, solving, verification, field export.

Subcommands
-----------
airy    print Ai, Bi, Ai', Bi' at one argument
ivp     solve for the constants from u1(0), u1'(0); report u1(L) and poles
bvp     recover the Riccati constant by shooting on u1(L)
field   reconstruct a sampled 2D field from a key=value config file
verify  run the numerical oracle suite and print a pass/fail report

Exit codes: 0 success, 1 domain errors (a >= 0, poles, no usable root,
failed verification), 2 usage/config errors.  All floating-point output
uses 17 significant digits, so identical invocations print identical
bytes; --seed only affects the randomized cases inside `verify`.
"""

from __future__ import annotations

import argparse
import math
import sys
from dataclasses import dataclass
from pathlib import Path

from . import field as field_mod
from .bvp import InitialData, solve_bvp, solve_ivp
from .errors import FlowDomainError, PoleError
from .flow import FlowParams, exact_u1, exact_u1_derivative, find_poles
from .airy import airy_eval
from .verify import run_verification

USAGE_EXIT = 2
DOMAIN_EXIT = 1


def _fmt(x: float) -> str:
    return format(x, ".17g")


@dataclass
class RunConfig:
    """A validated invocation: mode plus whichever inputs it needs."""

    mode: str
    t: float | None = None
    params: FlowParams | None = None
    data: InitialData | None = None
    u1L: float | None = None
    c_bracket: tuple[float, float] | None = None
    family: field_mod.StreamlineFamily | None = None
    grid: field_mod.GridSpec | None = None
    output: Path | None = None
    fmt: str = "csv"
    pressure: tuple[float, float] | None = None
    gnuplot: Path | None = None
    emit_path: Path | None = None
    emit_samples: int = 101
    seed: int = 0


def _finite(value: float, name: str) -> float:
    value = float(value)
    if not math.isfinite(value):
        raise ValueError(f"{name} must be finite, got {value!r}")
    return value


def _params_from_args(args) -> FlowParams:
    return FlowParams(
        nu=_finite(args.nu, "--nu"),
        grad_term=_finite(args.grad_term, "--grad-term"),
        f1=_finite(args.f1, "--f1"),
        length=_finite(args.L, "--L"),
    )


# ---------------------------------------------------------------------------
# field config file: flat `key = value` lines, '#' comments, unknown keys
# are errors.

_REQUIRED_FIELD_KEYS = (
    "nu", "grad_term", "f1", "length", "u10", "u1dot0", "family",
    "x_min", "x_max", "y_min", "y_max", "nx", "ny", "output", "format",
)
_OPTIONAL_FIELD_KEYS = (
    "slope", "amplitude", "wavenumber", "coeffs",
    "pressure_q0", "pressure_qdot", "gnuplot_script",
)


def parse_field_config(text: str) -> dict[str, str]:
    entries: dict[str, str] = {}
    known = set(_REQUIRED_FIELD_KEYS) | set(_OPTIONAL_FIELD_KEYS)
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ValueError(f"line {lineno}: expected 'key = value', got {raw!r}")
        key, _, value = line.partition("=")
        key = key.strip()
        value = value.strip()
        if key not in known:
            raise ValueError(f"line {lineno}: unknown key {key!r}")
        if key in entries:
            raise ValueError(f"line {lineno}: duplicate key {key!r}")
        entries[key] = value
    missing = [k for k in _REQUIRED_FIELD_KEYS if k not in entries]
    if missing:
        raise ValueError(f"missing required keys: {', '.join(missing)}")
    return entries


def _family_from_config(entries: dict[str, str]) -> field_mod.StreamlineFamily:
    kind = entries["family"]
    if kind == "straight":
        return field_mod.StreamlineFamily.straight(_finite(float(entries["slope"]), "slope"))
    if kind == "sinusoidal":
        return field_mod.StreamlineFamily.sinusoidal(
            _finite(float(entries["amplitude"]), "amplitude"),
            _finite(float(entries["wavenumber"]), "wavenumber"),
        )
    if kind == "polynomial":
        coeffs = [_finite(float(tok), "coeffs") for tok in entries["coeffs"].split(",")]
        return field_mod.StreamlineFamily.polynomial(coeffs)
    raise ValueError(f"family must be straight|sinusoidal|polynomial, got {kind!r}")


def config_from_file(path: Path) -> RunConfig:
    entries = parse_field_config(path.read_text())
    params = FlowParams(
        nu=_finite(float(entries["nu"]), "nu"),
        grad_term=_finite(float(entries["grad_term"]), "grad_term"),
        f1=_finite(float(entries["f1"]), "f1"),
        length=_finite(float(entries["length"]), "length"),
    )
    data = InitialData(
        u10=_finite(float(entries["u10"]), "u10"),
        u1dot0=_finite(float(entries["u1dot0"]), "u1dot0"),
    )
    grid = field_mod.GridSpec(
        x_min=_finite(float(entries["x_min"]), "x_min"),
        x_max=_finite(float(entries["x_max"]), "x_max"),
        y_min=_finite(float(entries["y_min"]), "y_min"),
        y_max=_finite(float(entries["y_max"]), "y_max"),
        nx=int(entries["nx"]),
        ny=int(entries["ny"]),
    )
    fmt = entries["format"]
    if fmt not in ("csv", "json"):
        raise ValueError(f"format must be csv or json, got {fmt!r}")
    pressure = None
    if ("pressure_q0" in entries) != ("pressure_qdot" in entries):
        raise ValueError("pressure_q0 and pressure_qdot must be given together")
    if "pressure_q0" in entries:
        pressure = (
            _finite(float(entries["pressure_q0"]), "pressure_q0"),
            _finite(float(entries["pressure_qdot"]), "pressure_qdot"),
        )
    return RunConfig(
        mode="field",
        params=params,
        data=data,
        family=_family_from_config(entries),
        grid=grid,
        output=Path(entries["output"]),
        fmt=fmt,
        pressure=pressure,
        gnuplot=Path(entries["gnuplot_script"]) if "gnuplot_script" in entries else None,
    )


# ---------------------------------------------------------------------------
# subcommand drivers

def _run_airy(cfg: RunConfig) -> int:
    q = airy_eval(cfg.t)
    print(f"t        = {_fmt(q.t)}")
    print(f"Ai(t)    = {_fmt(q.ai)}")
    print(f"Bi(t)    = {_fmt(q.bi)}")
    print(f"Ai'(t)   = {_fmt(q.ai_prime)}")
    print(f"Bi'(t)   = {_fmt(q.bi_prime)}")
    return 0


def _run_ivp(cfg: RunConfig) -> int:
    params, data = cfg.params, cfg.data
    consts = solve_ivp(data, params)
    print(f"a      = {_fmt(consts.a)}")
    print(f"b      = {_fmt(consts.b)}")
    print(f"c      = {_fmt(consts.c)}")
    print(f"c1     = {_fmt(consts.c1)}")
    print(f"c2     = {_fmt(consts.c2)}")
    print(f"u1(0)  = {_fmt(exact_u1(0.0, params, consts))}")
    print(f"u1'(0) = {_fmt(exact_u1_derivative(0.0, params, consts))}")
    try:
        print(f"u1(L)  = {_fmt(exact_u1(params.length, params, consts))}")
    except PoleError:
        print("u1(L)  = undefined (pole at L)")
    poles = find_poles(consts, 0.0, params.length)
    if poles:
        print("poles  = " + " ".join(_fmt(p) for p in poles))
    else:
        print("poles  = none")
    if cfg.emit_path is not None:
        _emit_profile(cfg.emit_path, params, consts, cfg.emit_samples)
        print(f"profile written to {cfg.emit_path}")
    return 0


def _emit_profile(path: Path, params: FlowParams, consts, n: int) -> None:
    lines = ["s,u1"]
    for i in range(n):
        s = params.length * i / (n - 1)
        try:
            lines.append(f"{_fmt(s)},{_fmt(exact_u1(s, params, consts))}")
        except PoleError:
            lines.append(f"{_fmt(s)},")
    path.write_text("\n".join(lines) + "\n")


def _run_bvp(cfg: RunConfig) -> int:
    params = cfg.params
    sol = solve_bvp(cfg.data.u10, cfg.u1L, params, cfg.c_bracket)
    print(f"c       = {_fmt(sol.c)}")
    print(f"u1'(0)  = {_fmt(sol.initial_slope)}")
    print(f"residual= {_fmt(sol.endpoint_residual)}")
    print(f"c1      = {_fmt(sol.constants.c1)}")
    print(f"c2      = {_fmt(sol.constants.c2)}")
    print("roots   = " + " ".join(_fmt(r) for r in sol.roots))
    print(f"excluded_candidates = {sol.excluded_candidates}")
    return 0


def _run_field(cfg: RunConfig) -> int:
    consts = solve_ivp(cfg.data, cfg.params)
    sampled = field_mod.reconstruct_field(
        cfg.family, cfg.params, consts, cfg.grid, pressure=cfg.pressure
    )
    blob = field_mod.emit(sampled, cfg.fmt)
    cfg.output.write_bytes(blob)
    n_invalid = sum(1 for sm in sampled.samples if not sm.valid)
    print(f"wrote {cfg.output} ({len(sampled.samples)} samples, {n_invalid} at poles)")
    if cfg.gnuplot is not None:
        cfg.gnuplot.write_text(field_mod.gnuplot_script(str(cfg.output)))
        print(f"wrote {cfg.gnuplot}")
    return 0


def _run_verify(cfg: RunConfig) -> int:
    report = run_verification(seed=cfg.seed)
    for line in report.format_lines():
        print(line)
    if report.all_passed:
        print("all checks passed")
        return 0
    print("verification FAILED", file=sys.stderr)
    return DOMAIN_EXIT


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="airyflow",
        description="Closed-form Airy-function velocity profiles along streamlines.",
    )
    sub = parser.add_subparsers(dest="mode", required=True)

    p_airy = sub.add_parser("airy", help="evaluate Ai, Bi, Ai', Bi'")
    p_airy.add_argument("--t", type=float, required=True)

    def add_flow_args(p):
        p.add_argument("--nu", type=float, required=True)
        p.add_argument("--grad-term", dest="grad_term", type=float, required=True)
        p.add_argument("--f1", type=float, required=True)
        p.add_argument("--L", type=float, required=True)
        p.add_argument("--u10", type=float, required=True)

    p_ivp = sub.add_parser("ivp", help="constants from u1(0), u1'(0)")
    add_flow_args(p_ivp)
    p_ivp.add_argument("--u1dot0", type=float, required=True)
    p_ivp.add_argument("--emit", type=Path, default=None, metavar="PATH")
    p_ivp.add_argument("--samples", type=int, default=101)

    p_bvp = sub.add_parser("bvp", help="shoot on c for u1(L)")
    add_flow_args(p_bvp)
    p_bvp.add_argument("--u1L", type=float, required=True)
    p_bvp.add_argument("--c-min", dest="c_min", type=float, default=None)
    p_bvp.add_argument("--c-max", dest="c_max", type=float, default=None)

    p_field = sub.add_parser("field", help="reconstruct and emit a sampled field")
    p_field.add_argument("--config", type=Path, required=True)

    p_verify = sub.add_parser("verify", help="run the oracle suite")
    p_verify.add_argument("--seed", type=int, default=0)

    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    if args.mode == "airy":
        return RunConfig(mode="airy", t=_finite(args.t, "--t"))
    if args.mode == "ivp":
        return RunConfig(
            mode="ivp",
            params=_params_from_args(args),
            data=InitialData(u10=_finite(args.u10, "--u10"),
                             u1dot0=_finite(args.u1dot0, "--u1dot0")),
            emit_path=args.emit,
            emit_samples=args.samples,
        )
    if args.mode == "bvp":
        if (args.c_min is None) != (args.c_max is None):
            raise ValueError("--c-min and --c-max must be given together")
        bracket = None
        if args.c_min is not None:
            bracket = (_finite(args.c_min, "--c-min"), _finite(args.c_max, "--c-max"))
        return RunConfig(
            mode="bvp",
            params=_params_from_args(args),
            data=InitialData(u10=_finite(args.u10, "--u10"), u1dot0=0.0),
            u1L=_finite(args.u1L, "--u1L"),
            c_bracket=bracket,
        )
    if args.mode == "field":
        return config_from_file(args.config)
    if args.mode == "verify":
        return RunConfig(mode="verify", seed=args.seed)
    raise ValueError(f"unknown mode {args.mode!r}")


_DRIVERS = {
    "airy": _run_airy,
    "ivp": _run_ivp,
    "bvp": _run_bvp,
    "field": _run_field,
    "verify": _run_verify,
}


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse exits 2 on usage errors
        return exc.code if isinstance(exc.code, int) else USAGE_EXIT
    try:
        cfg = config_from_args(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_EXIT
    try:
        return _DRIVERS[cfg.mode](cfg)
    except FlowDomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return DOMAIN_EXIT
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_EXIT


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
