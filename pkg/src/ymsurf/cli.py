"""Command-line front-end: ``ymsurf {spectrum,verify,area,cluster}``.

Exit codes: 0 pass, 1 invariant failure, 2 usage error, 3 model or domain error.
Flags override values from ``--config`` (a JSON object with the same keys).
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import io
import json
import sys

import numpy as np

from . import clustering as cl
from . import geometry as geo
from . import spectrum as sp
from .suites import SUITES, run_suite

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_DOMAIN = 0, 1, 2, 3

DEFAULTS = {
    "algebra": "su2",
    "count": 12,
    "C_hat": 2.0,
    "eps_low": 1.0,
    "eps_high": 1.0,
    "format": "csv",
    "seed": 42,
    "tol_scale": 1.0,
}


class UsageError(Exception):
    pass


def config_hash(cfg: dict) -> str:
    blob = json.dumps({k: v for k, v in cfg.items() if k != "out"}, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode()).hexdigest()


def resolve_config(args: argparse.Namespace, keys) -> dict:
    """Defaults, then the config file, then explicit flags."""
    cfg = {k: DEFAULTS[k] for k in keys if k in DEFAULTS}
    if getattr(args, "config", None):
        try:
            with open(args.config, encoding="utf-8") as fh:
                loaded = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise UsageError(f"cannot read config file: {exc}") from exc
        if not isinstance(loaded, dict):
            raise UsageError("config file must hold a JSON object")
        for k, v in loaded.items():
            k = k.replace("-", "_")
            if k in keys:
                cfg[k] = v
    for k in keys:
        v = getattr(args, k, None)
        if v is not None:
            cfg[k] = v
    return cfg


def emit(text: str, out: str | None):
    if out:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------- spectrum


def cmd_spectrum(args) -> int:
    cfg = resolve_config(args, ["algebra", "count", "C_hat", "eps_low", "eps_high", "format", "seed"])
    if cfg["algebra"] not in ("su2", "su3", "u1"):
        raise UsageError(f"unknown algebra {cfg['algebra']!r}")
    if int(cfg["count"]) < 1:
        raise UsageError("--count must be at least 1")
    if float(cfg["C_hat"]) <= 1:
        raise UsageError("--C-hat must exceed 1")
    if not 0 < float(cfg["eps_low"]) <= float(cfg["eps_high"]):
        raise UsageError("need 0 < --eps-low <= --eps-high")
    if cfg["format"] not in ("csv", "json"):
        raise UsageError("--format must be csv or json")
    h = config_hash(cfg)
    try:
        model = sp.EpsilonModel(float(cfg["eps_low"]), float(cfg["eps_high"]))
        table = sp.spectrum_table(cfg["algebra"], int(cfg["count"]), float(cfg["C_hat"]), model)
    except sp.SpectrumError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    if cfg["format"] == "json":
        doc = table.to_dict()
        doc["config_hash"] = h
        text = json.dumps(doc, indent=2, ensure_ascii=False) + "\n"
    else:
        text = table.to_csv()
    emit(text, args.out)
    summary = sys.stdout if args.out else sys.stderr
    print(f"config {h}", file=summary)
    print(f"m0 = {table.m0!r}", file=summary)
    print("ratio = " + " ".join(f"{e.ratio:.12g}" for e in table.entries), file=summary)
    return EXIT_OK


# ---------------------------------------------------------------- verify


def cmd_verify(args) -> int:
    cfg = resolve_config(args, ["seed", "tol_scale"])
    cfg["suite"] = args.suite
    if float(cfg["tol_scale"]) <= 0:
        raise UsageError("--tol-scale must be positive")
    checks = run_suite(args.suite, int(cfg["seed"]), float(cfg["tol_scale"]))
    failed = sum(not c.passed for c in checks)
    lines = [f"ymsurf verify suite={args.suite} seed={cfg['seed']} tol_scale={float(cfg['tol_scale'])!r}",
             f"config {config_hash(cfg)}"]
    lines += [c.line() for c in checks]
    lines.append(f"{len(checks)} checks, {failed} failed")
    emit("\n".join(lines) + "\n", args.out)
    return EXIT_FAIL if failed else EXIT_OK


# ---------------------------------------------------------------- area


def cmd_area(args) -> int:
    try:
        if args.surface == "-":
            data = json.load(sys.stdin)
        else:
            with open(args.surface, encoding="utf-8") as fh:
                data = json.load(fh)
        S = geo.RectSurface.from_dict(data)
    except (OSError, json.JSONDecodeError, KeyError, TypeError) as exc:
        raise UsageError(f"cannot read surface: {exc}") from exc
    except geo.GeometryError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    kind = geo.classify_surface(S)
    if kind == "degenerate":
        print("error: degenerate surface", file=sys.stderr)
        return EXIT_DOMAIN
    rho = geo.rho_acute_integral(S)
    doc = {"type": kind, "area": geo.area(S), "rho_acute": {"re": rho["complex"].real, "im": rho["complex"].imag},
           "rho_acute_abs": rho["abs"]}
    emit(json.dumps(doc, indent=2) + "\n", args.out)
    return EXIT_OK


# ---------------------------------------------------------------- cluster


def _clusters(layout) -> tuple:
    if not isinstance(layout, dict) or "A" not in layout or "B" not in layout:
        raise UsageError("cluster file needs keys A and B")
    out = []
    for key in ("A", "B"):
        facs = layout[key]
        if not facs:
            raise UsageError(f"cluster {key} is empty")
        try:
            out.append([cl.GaussianFactor(tuple(f["center"]), float(f["width"]), complex(f.get("weight", 1.0)))
                        for f in facs])
        except (KeyError, TypeError, cl.ClusterError) as exc:
            raise UsageError(f"bad cluster factor: {exc}") from exc
    return tuple(out)


DEFAULT_CLUSTERS = {"A": [{"center": [0.0, 0.0], "width": 0.4}, {"center": [0.1, 0.0], "width": 0.6}],
                    "B": [{"center": [0.2, -0.1], "width": 0.3}]}


def cmd_cluster(args) -> int:
    cfg = resolve_config(args, ["seed"])
    cfg.update({"m0": args.m0, "eps": args.eps, "range": list(args.range), "samples": args.samples,
                "synthetic": args.synthetic})
    lo, hi = args.range
    if lo <= args.eps or hi <= lo:
        raise UsageError("range must satisfy eps < start < stop")
    if args.m0 <= 0 or args.samples < 8:
        raise UsageError("need m0 > 0 and at least 8 samples")
    if args.clusters:
        try:
            with open(args.clusters, encoding="utf-8") as fh:
                layout = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise UsageError(f"cannot read cluster file: {exc}") from exc
    else:
        layout = DEFAULT_CLUSTERS
    A, B = _clusters(layout)
    cfg["clusters"] = layout
    ds = np.linspace(lo, hi, args.samples)
    try:
        C = cl.yukawa_cluster_bound(A, B, args.m0, args.eps)
    except cl.ClusterError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    bound = C * np.exp(-args.m0 * ds) / (ds - args.eps)
    if args.synthetic:
        vals = 0.5 * bound
    else:
        vals = np.array([cl.yukawa_cluster_kernel(A, B, (d, 0.0), args.m0) for d in ds])
    fit = cl.decay_fit(ds, vals, args.eps)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\r\n")
    w.writerow(["a_plus", "h12", "bound"])
    for d, v, b in zip(ds, vals, bound):
        w.writerow([repr(float(d)), repr(float(v)), repr(float(b))])
    buf.write(f"# fit rate={fit.rate!r} amplitude={fit.amplitude!r} samples={fit.samples}\r\n")
    buf.write(f"# config {config_hash(cfg)}\r\n")
    emit(buf.getvalue(), args.out)
    return EXIT_OK if np.all(vals <= bound) else EXIT_FAIL


# ---------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="JSON file of default settings; flags win")
    common.add_argument("--seed", type=int)
    common.add_argument("--out", help="output file (default stdout)")

    p = argparse.ArgumentParser(prog="ymsurf", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("spectrum", parents=[common], help="mass-gap and momentum table")
    s.add_argument("--algebra")
    s.add_argument("--count", type=int)
    s.add_argument("--C-hat", dest="C_hat", type=float)
    s.add_argument("--eps-low", dest="eps_low", type=float)
    s.add_argument("--eps-high", dest="eps_high", type=float)
    s.add_argument("--format")
    s.set_defaults(func=cmd_spectrum)

    v = sub.add_parser("verify", parents=[common], help="run seeded invariant suites")
    v.add_argument("suite", choices=list(SUITES) + ["all"])
    v.add_argument("--tol-scale", dest="tol_scale", type=float)
    v.set_defaults(func=cmd_verify)

    a = sub.add_parser("area", parents=[common], help="area and surface-measure integral of a rectangle")
    a.add_argument("surface", help="surface JSON file, or - for stdin")
    a.set_defaults(func=cmd_area)

    c = sub.add_parser("cluster", parents=[common], help="decay samples of the cluster kernel")
    c.add_argument("--m0", type=float, default=1.0)
    c.add_argument("--eps", type=float, default=1.0)
    c.add_argument("--range", nargs=2, type=float, default=(10.0, 30.0), metavar=("START", "STOP"))
    c.add_argument("--samples", type=int, default=41)
    c.add_argument("--clusters", help="JSON {A: [...], B: [...]} of Gaussian factors")
    c.add_argument("--synthetic", action="store_true", help="sample the bound shape itself")
    c.set_defaults(func=cmd_cluster)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_OK
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
