"""Command line front end.

Exit codes: 0 success, 1 verification failure, 2 domain or pole error.
Default option values can be supplied as a JSON object in the file named by
``STEINSAHI_CONFIG`` (or ``--config``); keys are option names such as
``"mmax"`` or ``"format"``.
"""
from __future__ import annotations

import argparse
import json
import math
import os
import sys

import numpy as np

from ._backend import backend_name
from .blowup import decompose_lj
from .gamma import PoleError
from .kernel import CoefficientTable, KernelParams, PositivityClass, classify_positivity
from . import su11 as su11_mod
from .verify import SUITES, run_all

EXIT_OK, EXIT_FAIL, EXIT_DOMAIN = 0, 1, 2

SVG_COLORS = {
    PositivityClass.PositiveDefinite: "#2b8cbe",
    PositivityClass.NegativeDefinite: "#e34a33",
    PositivityClass.Indefinite: "#f0f0f0",
    PositivityClass.SemiDefinite: "#fdbb84",
    PositivityClass.OnIntegerLocus: "#bdbdbd",
}


def _number(text: str):
    z = complex(text.replace(" ", ""))
    return z.real if z.imag == 0 else z


def _emit(text: str, path: str | None):
    if path and path != "-":
        with open(path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _half_offset_grid(lo: float, hi: float, step: float) -> np.ndarray:
    count = int(math.floor((hi - lo) / step + 1e-9))
    return lo + step * (np.arange(count) + 0.5)


# ---------------------------------------------------------------------------


def cmd_expand(args) -> int:
    params = KernelParams(args.n, args.sigma, args.tau)
    table = CoefficientTable.build(params, args.mmax)
    text = table.to_json() + "\n" if args.format == "json" else table.to_tsv()
    _emit(text, args.out)
    return EXIT_OK


def posmap_grid(n: int, sigma_range, tau_range, step: float):
    sig = _half_offset_grid(*sigma_range, step)
    tau = _half_offset_grid(*tau_range, step)
    cells = [[classify_positivity(KernelParams(n, float(s), float(t))) for s in sig] for t in tau]
    return sig, tau, cells


def render_svg(sig, tau, cells, step: float, px: int = 12) -> str:
    w, h = len(sig) * px, len(tau) * px
    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" '
           f'viewBox="0 0 {w} {h}">']
    for i, row in enumerate(cells):
        y = h - (i + 1) * px  # tau increases upwards
        for j, cls in enumerate(row):
            out.append(f'<rect x="{j * px}" y="{y}" width="{px}" height="{px}" '
                       f'fill="{SVG_COLORS[cls]}"><title>sigma={sig[j]:.4f} tau={tau[i]:.4f} '
                       f'{cls.value}</title></rect>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def cmd_posmap(args) -> int:
    n = args.n
    srange = args.sigma_range or [-n - 3.0, 2.0]
    trange = args.tau_range or [-5.0, 5.0]
    sig, tau, cells = posmap_grid(n, srange, trange, args.step)
    if args.format == "svg":
        text = render_svg(sig, tau, cells, args.step)
    else:
        lines = ["sigma\ttau\tclass"]
        for i, row in enumerate(cells):
            for j, cls in enumerate(row):
                lines.append(f"{sig[j]:.6g}\t{tau[i]:.6g}\t{cls.value}")
        text = "\n".join(lines) + "\n"
    _emit(text, args.out)
    return EXIT_OK


def _sign_label(values) -> str:
    signs = {(v > 0) - (v < 0) for v in values} - {0}
    if not signs:
        return "0"
    if len(signs) > 1:
        return "mixed"
    return "+" if signs == {1} else "-"


def cmd_blowup(args) -> int:
    n, alpha = args.n, args.alpha
    if not 0 <= alpha <= n - 1:
        raise ValueError(f"alpha must lie in [0, {n - 1}]")
    pieces = decompose_lj(n, alpha, args.mmax)
    classes = pieces[0].classes
    tail = sorted(m for m, c in classes.items() if c.is_tail)
    if args.format == "json":
        doc = {"schema": 1, "n": n, "alpha": alpha, "cutoff": args.mmax, "pieces": [],
               "tail": [list(m.labels) for m in tail]}
        for j, piece in enumerate(pieces):
            support = {m: v for m, v in sorted(piece.exact.items()) if v != 0}
            doc["pieces"].append({
                "j": j, "class": f"Z({j})", "sign": _sign_label(support.values()),
                "entries": [{"m": list(m.labels), "value": str(v), "re": float(v), "im": 0.0,
                             "class": str(classes[m])} for m, v in support.items()],
            })
        text = json.dumps(doc, indent=1) + "\n"
    else:
        head = "\t".join([f"m_{i + 1}" for i in range(n)] + ["re", "im", "exact", "class"])
        lines = []
        for j, piece in enumerate(pieces):
            support = {m: v for m, v in sorted(piece.exact.items()) if v != 0}
            lines.append(f"# L_{j}\tZ({j})\tsign {_sign_label(support.values())}\t{len(support)} entries")
            lines.append(head)
            for m, v in support.items():
                lines.append("\t".join([str(x) for x in m.labels]
                                       + [repr(float(v)), "0.0", str(v), str(classes[m])]))
        lines.append(f"# Tail\t{len(tail)} signatures\tall coefficients 0")
        text = "\n".join(lines) + "\n"
    _emit(text, args.out)
    return EXIT_OK


def cmd_verify(args) -> int:
    names = args.suite or ["all"]
    for name in names:
        if name != "all" and name not in SUITES:
            raise ValueError(f"unknown suite {name!r}")
    report = run_all(names, seed=args.seed, quick=args.quick, n=args.n)
    report["backend"] = backend_name()
    _emit(json.dumps(report, indent=1) + "\n", args.out)
    return EXIT_OK if report["passed"] else EXIT_FAIL


def cmd_su11(args) -> int:
    params = su11_mod.Su11Params(args.p, args.q)
    labels = sorted(c.value for c in su11_mod.classify_su11(params))
    lines = [f"p\t{args.p}", f"q\t{args.q}", "classes\t" + ",".join(labels)]
    if isinstance(args.p, float) and isinstance(args.q, float):
        res = su11_mod.intertwining_residual(params, args.K)
        for target, r in res.items():
            lines.append(f"intertwining_residual[T_{{{target}}}]\t{r:.3e}")
        lines.append(f"duality_residual\t{su11_mod.duality_residual(params, args.K):.3e}")
        if args.p + args.q < 1.5:
            lines.append(f"asymptotic_exponent\t{su11_mod.asymptotic_exponent(params):.6f}"
                         f"\t(expected {1 - args.p - args.q:.6f})")
    _emit("\n".join(lines) + "\n", args.out)
    return EXIT_OK


# ---------------------------------------------------------------------------


def _load_config(path: str | None) -> dict:
    path = path or os.environ.get("STEINSAHI_CONFIG")
    if not path:
        return {}
    with open(path) as fh:
        cfg = json.load(fh)
    if not isinstance(cfg, dict):
        raise ValueError("config file must hold a JSON object")
    if "mmax" in cfg and int(cfg["mmax"]) < 1:
        raise ValueError("cutoff mmax must be >= 1")
    return cfg


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="steinsahi", description=__doc__.split("\n")[0])
    ap.add_argument("--config", help="JSON file with default option values")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("expand", help="coefficient table of l_{sigma|tau}")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--sigma", type=_number, required=True)
    p.add_argument("--tau", type=_number, required=True)
    p.add_argument("--mmax", type=int, default=3)
    p.add_argument("--format", choices=["tsv", "json"], default="tsv")
    p.add_argument("--out")
    p.set_defaults(func=cmd_expand)

    p = sub.add_parser("posmap", help="positivity classification on a grid")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--sigma-range", type=float, nargs=2, metavar=("LO", "HI"))
    p.add_argument("--tau-range", type=float, nargs=2, metavar=("LO", "HI"))
    p.add_argument("--step", type=float, default=0.25)
    p.add_argument("--format", choices=["tsv", "svg"], default="tsv")
    p.add_argument("--out")
    p.set_defaults(func=cmd_posmap)

    p = sub.add_parser("blowup", help="pieces L_j of the blow-up at (-n+alpha, 0)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--alpha", type=int, required=True)
    p.add_argument("--mmax", type=int, default=3)
    p.add_argument("--format", choices=["tsv", "json"], default="tsv")
    p.add_argument("--out")
    p.set_defaults(func=cmd_blowup)

    p = sub.add_parser("verify", help="run invariant suites, JSON report")
    p.add_argument("--suite", action="append", choices=["all", *SUITES])
    p.add_argument("--n", type=int)
    p.add_argument("--quick", action="store_true")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("su11", help="rank-one classification and residuals")
    p.add_argument("--p", type=_number, required=True)
    p.add_argument("--q", type=_number, required=True)
    p.add_argument("--K", type=int, default=100)
    p.add_argument("--out")
    p.set_defaults(func=cmd_su11)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    pre, _ = ap.parse_known_args(argv)
    try:
        cfg = _load_config(pre.config)
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    if cfg:
        for action in ap._subparsers._group_actions[0].choices.values():
            known = {a.dest for a in action._actions}
            action.set_defaults(**{k.replace("-", "_"): v for k, v in cfg.items()
                                   if k.replace("-", "_") in known})
    args = ap.parse_args(argv)
    if getattr(args, "mmax", 1) < 1:
        print("error: cutoff mmax must be >= 1", file=sys.stderr)
        return EXIT_DOMAIN
    try:
        return args.func(args)
    except PoleError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
