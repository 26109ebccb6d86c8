"""Command-line front end.

Subcommands: eval (single evaluation by any method), sweep (cross-method
grid to CSV/JSON), laplace (integral-relation residuals), order (growth
order estimate), probe (recurrence search for n!^alpha).

Exit codes: 0 success, 2 usage or domain error, 3 Plana sector violation.
Scaled output is the source of truth: a value is printed as
(mantissa_re, mantissa_im, log_scale), with a decimal rendering only when
it fits in a double.
"""

from __future__ import annotations

import argparse
import cmath
import json
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from .asymptotics import classify_sector, eval_asymptotic, in_sector
from .core import DomainError, Params, QuadratureError, UsageError, rel_diff
from .holonomy import probe_grid
from .laplace import laplace_residual
from .plana import SectorError, eval_plana, plana_convergence_margin
from .series import eval_series, peak_index

__all__ = ["main", "build_parser"]

_AUTO_SERIES_LIMIT = 1e4


def _parse_z(text: str) -> complex:
    """Accept 're,im' or 'mod@argdeg'."""
    try:
        if "@" in text:
            mod_s, arg_s = text.split("@", 1)
            return float(mod_s) * cmath.exp(1j * math.radians(float(arg_s)))
        re_s, im_s = text.split(",", 1)
        return complex(float(re_s), float(im_s))
    except (ValueError, TypeError):
        raise UsageError(f"cannot parse complex value {text!r}; "
                         "use 're,im' or 'mod@argdeg'") from None


def _parse_float_list(text: str, what: str) -> list[float]:
    items = [s for s in text.split(",") if s.strip()]
    if not items:
        raise UsageError(f"empty {what} list")
    try:
        return [float(s) for s in items]
    except ValueError:
        raise UsageError(f"cannot parse {what} list {text!r}") from None


def _fmt(x: float) -> str:
    return f"{x:.17g}"


def _print_result(res, z):
    v = res.value
    print(f"method        {res.method.value}")
    print(f"z             {_fmt(z.real)} {_fmt(z.imag)}")
    print(f"mantissa_re   {_fmt(v.mantissa.real)}")
    print(f"mantissa_im   {_fmt(v.mantissa.imag)}")
    print(f"log_scale     {_fmt(v.log_scale)}")
    try:
        dec = v.to_complex()
        print(f"decimal       {_fmt(dec.real)} {_fmt(dec.imag)}")
    except OverflowError:
        print("decimal       (not representable in double precision)")
    print(f"work          {res.work}")
    print(f"err_estimate  {_fmt(res.err_estimate)}")


def _cmd_eval(args) -> int:
    params = Params(args.a, args.b, args.alpha)
    z = _parse_z(args.z)
    method = args.method
    if method == "auto":
        if peak_index(params, z) <= _AUTO_SERIES_LIMIT:
            method = "series"
        else:
            method = "asymptotic"
            if not in_sector(params, z):
                print("warning: z outside the proven asymptotic sector",
                      file=sys.stderr)
    if method == "series":
        res = eval_series(params, z, args.tol)
    elif method == "plana":
        res = eval_plana(params, z, args.tol)
    else:
        res = eval_asymptotic(params, z)
    _print_result(res, z)
    return 0


def _sweep_row(params, mod, arg, tol):
    z = mod * cmath.exp(1j * arg)
    rs = eval_series(params, z, tol)
    ra = eval_asymptotic(params, z)
    margin = plana_convergence_margin(params, z)
    row = {
        "a": params.a, "b": params.b, "alpha": params.alpha,
        "mod": mod, "arg": arg, "z_re": z.real, "z_im": z.imag,
        "series_mantissa_re": rs.value.mantissa.real,
        "series_mantissa_im": rs.value.mantissa.imag,
        "series_log_scale": rs.value.log_scale,
        "asym_mantissa_re": ra.value.mantissa.real,
        "asym_mantissa_im": ra.value.mantissa.imag,
        "asym_log_scale": ra.value.log_scale,
        "plana_mantissa_re": None,
        "plana_mantissa_im": None,
        "plana_log_scale": None,
        "dev_series_asym": rel_diff(ra.value, rs.value),
        "dev_series_plana": None,
        "in_sector": in_sector(params, z),
        "plana_margin": margin,
    }
    if margin > 0.1:
        try:
            rp = eval_plana(params, z, tol)
            row["plana_mantissa_re"] = rp.value.mantissa.real
            row["plana_mantissa_im"] = rp.value.mantissa.imag
            row["plana_log_scale"] = rp.value.log_scale
            row["dev_series_plana"] = rel_diff(rp.value, rs.value)
        except (SectorError, QuadratureError):
            pass
    return row


_SWEEP_COLUMNS = [
    "a", "b", "alpha", "mod", "arg", "z_re", "z_im",
    "series_mantissa_re", "series_mantissa_im", "series_log_scale",
    "asym_mantissa_re", "asym_mantissa_im", "asym_log_scale",
    "plana_mantissa_re", "plana_mantissa_im", "plana_log_scale",
    "dev_series_asym", "dev_series_plana", "in_sector", "plana_margin",
]


def _cell(v) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    return _fmt(v)


def _max_workers() -> int:
    env = os.environ.get("MLX_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            raise UsageError(f"MLX_THREADS must be an integer, got {env!r}")
    return min(8, os.cpu_count() or 1)


def _cmd_sweep(args) -> int:
    params = Params(args.a, args.b, args.alpha)
    mods = _parse_float_list(args.mods, "modulus")
    arg_grid = _parse_float_list(args.args, "argument")
    for g in arg_grid:
        if not (-math.pi < g <= math.pi):
            raise UsageError(f"arg {g} outside (-pi, pi]")
    grid = [(m, g) for m in mods for g in arg_grid]
    with ThreadPoolExecutor(max_workers=_max_workers()) as pool:
        rows = list(pool.map(
            lambda mg: _sweep_row(params, mg[0], mg[1], args.tol), grid))
    try:
        with open(args.out, "w", encoding="utf-8") as fh:
            if args.format == "csv":
                fh.write(",".join(_SWEEP_COLUMNS) + "\n")
                for row in rows:
                    fh.write(",".join(_cell(row[c]) for c in _SWEEP_COLUMNS) + "\n")
            else:
                json.dump(rows, fh, indent=1)
                fh.write("\n")
    except OSError as exc:
        print(f"error: cannot write {args.out}: {exc}", file=sys.stderr)
        return 2
    print(f"wrote {len(rows)} rows to {args.out}")
    return 0


def _cmd_laplace(args) -> int:
    zs = _parse_float_list(args.z, "z")
    for z in zs:
        r = laplace_residual(args.alpha, z, args.tol)
        print(f"{_fmt(args.alpha)} {_fmt(z)} {_fmt(r)}")
    return 0


def _cmd_order(args) -> int:
    params = Params(args.a, args.b, args.alpha)
    radii = _parse_float_list(args.radii, "radius")
    if len(radii) < 2:
        raise UsageError("order: need at least 2 radii")
    if any(r <= 1.0 for r in radii):
        raise UsageError("order: all radii must exceed 1")
    slope, ref = order_estimate(params, radii)
    print(f"slope      {_fmt(slope)}")
    print(f"reference  {_fmt(ref)}")
    return 0


def order_estimate(params: Params, radii) -> tuple[float, float]:
    """Least-squares slope of ln ln F(r) against ln r, plus 1/(a alpha)."""
    xs, ys = [], []
    for r in radii:
        v = eval_series(params, float(r), 1e-12)
        log_f = v.value.abs_log()
        if log_f <= 0.0:
            raise DomainError(f"order: F({r}) <= 1, cannot take ln ln")
        xs.append(math.log(r))
        ys.append(math.log(log_f))
    if len(set(xs)) < 2:
        raise DomainError("order: degenerate fit (repeated radii)")
    slope = float(np.polyfit(xs, ys, 1)[0])
    return slope, 1.0 / (params.a * params.alpha)


def _cmd_probe(args) -> int:
    outcomes = probe_grid(args.alpha, args.max_order, args.max_degree)
    for out in outcomes:
        h = out.hypothesis
        status = "found" if out.candidate is not None else "empty"
        line = (f"order={h.order} degree={h.degree} {status} "
                f"sigma_ratio={_fmt(out.sigma_ratio)}")
        if out.candidate is not None:
            coeffs = " ".join(_fmt(c) for c in out.candidate.coeffs.reshape(-1))
            line += f" coeffs={coeffs}"
        print(line)
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="mlfun",
        description="Evaluate sum_n z^n / Gamma(a n + b)^alpha by "
                    "cross-checking methods")
    sub = ap.add_subparsers(dest="command", required=True)

    def add_params(p):
        p.add_argument("--a", type=float, required=True)
        p.add_argument("--b", type=float, required=True)
        p.add_argument("--alpha", type=float, required=True)

    p = sub.add_parser("eval", help="evaluate at a single point")
    add_params(p)
    p.add_argument("--z", required=True, help="'re,im' or 'mod@argdeg'")
    p.add_argument("--method", choices=["series", "plana", "asymptotic", "auto"],
                   default="auto")
    p.add_argument("--tol", type=float, default=1e-10)
    p.set_defaults(func=_cmd_eval)

    p = sub.add_parser("sweep", help="cross-method grid over |z| and arg z")
    add_params(p)
    p.add_argument("--mods", required=True, help="comma-separated |z| values")
    p.add_argument("--args", required=True,
                   help="comma-separated arg values in (-pi, pi], radians")
    p.add_argument("--tol", type=float, default=1e-10)
    p.add_argument("--out", required=True)
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.set_defaults(func=_cmd_sweep)

    p = sub.add_parser("laplace", help="integral-relation residuals")
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--z", required=True, help="comma-separated positive reals")
    p.add_argument("--tol", type=float, default=1e-9)
    p.set_defaults(func=_cmd_laplace)

    p = sub.add_parser("order", help="estimate the order of growth")
    add_params(p)
    p.add_argument("--radii", required=True, help="comma-separated radii > 1")
    p.set_defaults(func=_cmd_order)

    p = sub.add_parser("probe", help="recurrence search for n!^alpha")
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--max-order", type=int, default=2)
    p.add_argument("--max-degree", type=int, default=2)
    p.set_defaults(func=_cmd_probe)

    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
        return args.func(args)
    except SectorError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (DomainError, UsageError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
