"""Batch front-end: epsilon-profiles, energy classification scans, and
stratum gradients, emitted as CSV (and SVG for profiles).

Configuration is a plain-text `key = value` file; every key can be
overridden with a `--key value` flag.  Exit codes: 0 success, 2 config
parse failure, 3 numerical failure, 4 wrong stratum.
"""

from __future__ import annotations

import argparse
import math
import sys
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from .cocycle import schrodinger
from .errors import CocycleLabError, WrongStratum
from .hyperbolic import potential_gradient
from .lyapunov import TWO_PI, lyapunov_irrational
from .oracles import GOLDEN
from .spectral import scan
from .torusfn import load_potential

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NUMERICAL = 3
EXIT_STRATUM = 4

_DEFAULTS = {
    "alpha": "golden",
    "theta": "0",
    "eps_min": "0",
    "eps_max": "0.3",
    "n_pts": "13",
    "E_pts": "41",
    "M": "256",
    "N": "2048",
    "q_max": "3000",
    "j": "1",
    "K": "4",
    "eps": "0.1",
    "threads": "1",
    "csv": "out.csv",
    "svg": "",
}


def _fmt(x: float) -> str:
    return "%.17g" % x


def parse_config(path) -> dict:
    cfg = {}
    with open(path) as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValueError(f"{path}:{lineno}: expected `key = value`")
            key, value = line.split("=", 1)
            cfg[key.strip()] = value.strip()
    return cfg


def resolve_alpha(text: str) -> float:
    if text.strip().lower() == "golden":
        return GOLDEN
    return float(text)


def _load_settings(args: argparse.Namespace, required=()) -> dict:
    cfg = dict(_DEFAULTS)
    if args.config:
        cfg.update(parse_config(args.config))
    for key, value in vars(args).items():
        if key in ("config", "func") or value is None:
            continue
        cfg[key] = str(value)
    for key in required:
        if key not in cfg or not cfg[key]:
            raise ValueError(f"missing required setting `{key}`")
    return cfg


def _add_common(sp: argparse.ArgumentParser) -> None:
    sp.add_argument("--config", help="key = value settings file")
    sp.add_argument("--potential", help="potential modes file (k re im per line)")
    sp.add_argument("--alpha", help="frequency, a decimal or `golden`")
    sp.add_argument("--M", type=int, help="phase-grid size")
    sp.add_argument("--q_max", type=int, help="largest convergent denominator")
    sp.add_argument("--threads", type=int, help="sweep worker threads")
    sp.add_argument("--csv", help="output CSV path")


def _ordered_map(fn, items, threads: int):
    if threads <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, items))


def cmd_profile(args) -> int:
    cfg = _load_settings(args, required=("potential", "E", "csv"))
    v = load_potential(cfg["potential"])
    alpha = resolve_alpha(cfg["alpha"])
    E = float(cfg["E"])
    M = int(cfg["M"])
    q_max = int(cfg["q_max"])
    eps_grid = np.linspace(float(cfg["eps_min"]), float(cfg["eps_max"]), int(cfg["n_pts"]))
    c = schrodinger(v, E, alpha=alpha)
    L = _ordered_map(
        lambda e: lyapunov_irrational(c, eps=float(e), q_max=q_max, M=M),
        eps_grid,
        int(cfg["threads"]),
    )
    L = np.asarray(L)
    slopes = np.gradient(L, eps_grid) / TWO_PI
    with open(cfg["csv"], "w") as fh:
        fh.write("eps,L,slope\n")
        for e, l, s in zip(eps_grid, L, slopes):
            fh.write(f"{_fmt(e)},{_fmt(l)},{_fmt(s)}\n")
    if cfg["svg"]:
        _profile_svg(cfg["svg"], eps_grid, L)
    return EXIT_OK


def _profile_svg(path, eps_grid, L) -> None:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    matplotlib.rcParams["svg.hashsalt"] = "cocyclelab"
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.plot(eps_grid, L, "o-", color="C0", label="L(eps)")
    # integer-slope guides through the left endpoint
    for k in range(0, 4):
        ax.plot(
            eps_grid,
            L[0] + TWO_PI * k * (eps_grid - eps_grid[0]),
            "--",
            lw=0.7,
            color="gray",
        )
    ax.set_xlabel("eps")
    ax.set_ylabel("L")
    ax.legend()
    fig.savefig(path, format="svg", metadata={"Date": None})
    plt.close(fig)


def cmd_classify(args) -> int:
    cfg = _load_settings(args, required=("potential", "E_min", "E_max", "csv"))
    v = load_potential(cfg["potential"])
    alpha = resolve_alpha(cfg["alpha"])
    E_grid = np.linspace(float(cfg["E_min"]), float(cfg["E_max"]), int(cfg["E_pts"]))
    threads = int(cfg["threads"])
    q_max = int(cfg["q_max"])
    M = int(cfg["M"])
    # classification per energy is independent; rows are assembled in
    # input order, so the CSV is identical for any thread count
    chunks = _ordered_map(
        lambda E: scan(v, alpha, [E], q_max=q_max, M=M),
        E_grid,
        threads,
    )
    rows = [r for chunk in chunks for r in chunk]
    with open(cfg["csv"], "w") as fh:
        fh.write("E,L,omega,defect,class,stratumL_fit_residual\n")
        for r in rows:
            resid = "nan" if math.isnan(r.stratum_fit_residual) else _fmt(r.stratum_fit_residual)
            fh.write(
                f"{_fmt(r.E)},{_fmt(r.L)},{r.omega},{_fmt(r.defect)},"
                f"{r.tag.value},{resid}\n"
            )
    return EXIT_OK


def cmd_gradient(args) -> int:
    cfg = _load_settings(args, required=("potential", "E", "csv"))
    v = load_potential(cfg["potential"])
    alpha = resolve_alpha(cfg["alpha"])
    c = schrodinger(v, float(cfg["E"]), alpha=alpha)
    grad = potential_gradient(
        c,
        int(cfg["j"]),
        float(cfg["eps"]),
        int(cfg["K"]),
        q_max=int(cfg["q_max"]),
        M=int(cfg["M"]),
    )
    with open(cfg["csv"], "w") as fh:
        fh.write("k,d_cos,d_sin\n")
        for k, dcos, dsin in grad.modes:
            fh.write(f"{k},{_fmt(dcos)},{_fmt(dsin)}\n")
        fh.write(f"witness,{_fmt(grad.witness)},\n")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cocyclelab", description=__doc__, conflict_handler="resolve"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("profile", help="L(eps) profile with fitted slopes")
    _add_common(p)
    p.add_argument("--E", type=float, help="energy")
    p.add_argument("--eps_min", type=float)
    p.add_argument("--eps_max", type=float)
    p.add_argument("--n_pts", type=int)
    p.add_argument("--svg", help="output SVG path")
    p.set_defaults(func=cmd_profile)

    p = sub.add_parser("classify", help="energy classification scan")
    _add_common(p)
    p.add_argument("--E_min", type=float)
    p.add_argument("--E_max", type=float)
    p.add_argument("--E_pts", type=int)
    p.add_argument("--N", type=int, help="truncation size for spectra")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("gradient", help="stratified-exponent gradient modes")
    _add_common(p)
    p.add_argument("--E", type=float, help="energy")
    p.add_argument("--j", type=int, help="stratum acceleration")
    p.add_argument("--eps", type=float, help="strip height for the splitting")
    p.add_argument("--K", type=int, help="highest Fourier mode tested")
    p.set_defaults(func=cmd_gradient)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_CONFIG if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except WrongStratum as exc:
        print(f"wrong stratum: {exc}", file=sys.stderr)
        return EXIT_STRATUM
    except (OSError, ValueError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (CocycleLabError, ArithmeticError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL


if __name__ == "__main__":
    sys.exit(main())
