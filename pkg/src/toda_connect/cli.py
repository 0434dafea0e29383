"""Command-line front end: ``toda-connect <command> [--flag value ...]``.

Every command writes JSON (CSV for ``sweep``) to stdout.  Exit codes:
0 all checks passed, 1 a check failed, 2 usage or domain error.
"""
from __future__ import annotations

import argparse
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from . import asymfit, connection, monodromy, ode, parametrix
from .algebra import identity, residual
from .errors import TodaError

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
IDENTITY_TOL = 1e-10
JUMP_TOL = 1e-5


class UsageError(Exception):
    pass


def _fmt_float(v: float) -> str:
    if not math.isfinite(v):
        raise ValueError("non-finite number in JSON payload")
    return f"{v:.17g}"


def to_json(obj, indent: int = 2, _level: int = 0) -> str:
    """JSON with every float written to 17 significant digits."""
    pad = " " * (indent * (_level + 1))
    end = " " * (indent * _level)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f'{pad}"{k}": {to_json(v, indent, _level + 1)}' for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        return "[" + ", ".join(to_json(v, indent, _level + 1) for v in obj) + "]"
    if isinstance(obj, bool):
        return "true" if obj else "false"
    if obj is None:
        return "null"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return _fmt_float(float(obj))
    if isinstance(obj, complex):
        return to_json({"re": obj.real, "im": obj.imag}, indent, _level)
    if isinstance(obj, str):
        return '"' + obj.replace("\\", "\\\\").replace('"', '\\"') + '"'
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def _workers() -> int:
    cap = os.environ.get("TODA_CONNECT_THREADS")
    n = os.cpu_count() or 1
    if cap:
        try:
            n = max(1, min(n, int(cap)))
        except ValueError:
            pass
    return n


def _pmap(fn, items):
    items = list(items)
    workers = min(_workers(), len(items)) or 1
    if workers == 1:
        return [fn(i) for i in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))


def _phase_or_undefined(value: float, defined: bool):
    return value if defined else "undefined"


def cmd_forward(args) -> tuple[int, dict]:
    res = connection.forward(args.gamma, args.rho)
    inf = res.infinity
    kit = {
        g.variant.value: {"g1": g.g1, "g2": g.g2, "g3": g.g3, "s": g.s} for g in res.kitaev
    }
    return EXIT_OK, {
        "gamma": args.gamma,
        "rho": args.rho,
        "q_r": res.q,
        "s_r": res.mono.s,
        "y_r": res.mono.y,
        "a_r": res.params.a_r,
        "b": res.params.b,
        "x_exponent": inf.x_exponent,
        "alpha": _phase_or_undefined(inf.alpha, inf.phase_defined),
        "sigma": inf.sigma,
        "psi": _phase_or_undefined(inf.psi, inf.phase_defined),
        "kitaev_g": kit,
    }


def cmd_inverse(args) -> tuple[int, dict]:
    m = monodromy.MonodromyData(args.s, args.y)
    z = connection.zero_from_sy(m)
    back = connection.sy_from_zero(z)
    rt = max(abs(back.s - m.s), abs(back.y - m.y))
    return EXIT_OK, {"s_r": m.s, "y_r": m.y, "gamma": z.gamma, "rho": z.rho, "roundtrip_residual": rt}


def _identity_trial(item):
    s, y, corrupt = item
    m = monodromy.MonodromyData(s, y)
    p = monodromy.params_from_sy(m)
    out = dict(monodromy.identity_suite(p, _corrupt=corrupt).residuals)
    out["ldr_reconstruction"] = max(
        residual(f.product(), t) for f, t in zip(monodromy.ldr_decompose(p), monodromy.ldr_targets(p))
    )
    z = connection.zero_from_sy(m)
    out["e1_factorization"] = monodromy.e1_factorization_residual(p, z.gamma, connection.q_from_zero(z))
    kit = [connection.kitaev_g(p, v).residuals() for v in connection.KitaevVariant]
    out["kitaev_constraints"] = max(max(r) for r in kit)
    out["jump_residual"] = parametrix.jump_residual(p, 16)
    return out


def cmd_identities(args) -> tuple[int, dict]:
    if args.trials < 1:
        raise UsageError("--trials must be at least 1")
    rng = np.random.default_rng(args.seed)
    s = rng.uniform(-2.9, 0.9, args.trials)
    y = rng.uniform(-3.0, 3.0, args.trials)
    corrupt = args.inject_corruption
    results = _pmap(_identity_trial, [(float(a), float(b), corrupt) for a, b in zip(s, y)])
    worst = {k: max(r[k] for r in results) for k in results[0]}
    ok = all(v <= (JUMP_TOL if k == "jump_residual" else IDENTITY_TOL) for k, v in worst.items())
    payload = {"trials": args.trials, "seed": args.seed, "max_residual": worst, "pass": ok}
    return (EXIT_OK if ok else EXIT_FAIL), payload


def cmd_verify(args) -> tuple[int, dict]:
    lo, hi = connection.GAMMA_SAFE
    if not lo <= args.gamma <= hi:
        raise UsageError(f"--gamma must lie in [{lo}, {hi}]")
    if not args.x_max >= 100.0:
        raise UsageError("--x-max must be at least 100")
    z = connection.AsymptoticZero(args.gamma, args.rho)
    cfg = ode.IntegratorConfig(x_max=args.x_max, rtol=args.rtol)
    traj = ode.integrate_radial_toda(z, cfg)
    if args.out_csv:
        ode.write_trajectory_csv(traj, args.out_csv)
    fit = asymfit.fit_sigma_psi(traj, (cfg.dense_from, cfg.x_max))
    report = asymfit.compare_fit_prediction(fit, connection.infinity_from_zero(z)).as_dict()
    for key in ("psi_fit", "psi_pred", "delta_psi"):
        if report[key] is None:
            report[key] = "undefined"
    payload = {"gamma": args.gamma, "rho": args.rho, "x_max": args.x_max, **report}
    return (EXIT_OK if report["pass"] else EXIT_FAIL), payload


def _parse_list(tokens: list[str], name: str) -> list[float]:
    text = ",".join(tokens)
    try:
        vals = [float(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise UsageError(f"malformed {name} list {text!r}") from None
    if not vals or not all(math.isfinite(v) for v in vals):
        raise UsageError(f"malformed {name} list {text!r}")
    return vals


def _sweep_row(item) -> str:
    g, r = item
    z = connection.AsymptoticZero(g, r)
    m = connection.sy_from_zero(z)
    inf = connection.infinity_from_zero(z)
    psi = f"{inf.psi:.17g}" if inf.phase_defined else "NA"
    return ",".join(
        [f"{g:.17g}", f"{r:.17g}", f"{m.s:.17g}", f"{m.y:.17g}", f"{inf.sigma:.17g}", psi, f"{inf.x_exponent:.17g}"]
    )


def cmd_sweep(args) -> tuple[int, str]:
    gammas = _parse_list(args.gammas, "--gammas")
    rhos = _parse_list(args.rhos, "--rhos")
    for g in gammas:
        if not -0.5 < g < 1.0:
            raise UsageError(f"gamma {g!r} outside (-1/2, 1)")
    rows = _pmap(_sweep_row, [(g, r) for g in gammas for r in rhos])
    return EXIT_OK, "\n".join(["gamma,rho,s_r,y_r,sigma,psi,X", *rows]) + "\n"


def cmd_parametrix(args) -> tuple[int, dict]:
    if args.samples_per_arc < 3:
        raise UsageError("--samples-per-arc must be at least 3")
    p = monodromy.params_from_sy(monodromy.MonodromyData(args.s, args.y))
    y0 = float(np.abs(parametrix.global_parametrix(0.0, p) - identity()).max())
    y_inf = float(np.abs(parametrix.global_parametrix(1e8, p) - identity()).max())
    jump = parametrix.jump_residual(p, args.samples_per_arc)
    ok = y0 <= 1e-12 and y_inf <= 1e-7 and jump <= JUMP_TOL
    payload = {
        "s_r": args.s,
        "y_r": args.y,
        "a_r": p.a_r,
        "d_diagonals": [list(d) for d in monodromy.d_diagonals(p.a_r)],
        "y_at_zero_residual": y0,
        "y_at_1e8_residual": y_inf,
        "jump_residual": jump,
        "samples_per_arc": args.samples_per_arc,
    }
    if args.zeta_re is not None or args.zeta_im is not None:
        zeta = complex(args.zeta_re or 0.0, args.zeta_im or 0.0)
        payload["zeta"] = zeta
        payload["y_diagonal"] = [complex(v) for v in np.diag(parametrix.global_parametrix(zeta, p))]
    payload["pass"] = ok
    return (EXIT_OK if ok else EXIT_FAIL), payload


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="toda-connect",
        description="Connection formulae for the radial Toda equation",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("forward", help="(gamma, rho) -> monodromy data and (sigma, psi)")
    p.add_argument("--gamma", type=float, required=True)
    p.add_argument("--rho", type=float, required=True)
    p.set_defaults(func=cmd_forward)

    p = sub.add_parser("inverse", help="(s, y) -> (gamma, rho)")
    p.add_argument("--s", type=float, required=True)
    p.add_argument("--y", type=float, required=True)
    p.set_defaults(func=cmd_inverse)

    p = sub.add_parser("identities", help="randomized identity and factorization checks")
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--inject-corruption", type=float, default=1.0, help=argparse.SUPPRESS)
    p.set_defaults(func=cmd_identities)

    p = sub.add_parser("verify", help="integrate the ODE and compare the fitted tail")
    p.add_argument("--gamma", type=float, required=True)
    p.add_argument("--rho", type=float, required=True)
    p.add_argument("--x-max", type=float, default=200.0)
    p.add_argument("--rtol", type=float, default=1e-10)
    p.add_argument("--out-csv", default=None)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("sweep", help="CSV table of the forward map over a grid")
    p.add_argument("--gammas", nargs="+", required=True, help="gamma values, comma or space separated")
    p.add_argument("--rhos", nargs="+", required=True, help="rho values, comma or space separated")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("parametrix", help="global parametrix normalization and jump checks")
    p.add_argument("--s", type=float, required=True)
    p.add_argument("--y", type=float, required=True)
    p.add_argument("--samples-per-arc", type=int, default=16)
    p.add_argument("--zeta-re", type=float, default=None)
    p.add_argument("--zeta-im", type=float, default=None)
    p.set_defaults(func=cmd_parametrix)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        code, payload = args.func(args)
    except (UsageError, TodaError) as exc:
        sys.stdout.write(to_json({"error": type(exc).__name__, "message": str(exc)}) + "\n")
        return EXIT_USAGE
    if isinstance(payload, str):
        sys.stdout.write(payload)
    else:
        sys.stdout.write(to_json(payload) + "\n")
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
