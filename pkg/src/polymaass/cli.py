"""Command-line entry point: eval, taylor, ctable, dims, verify.

Data goes to stdout (or --out), diagnostics to stderr. Exit codes:
0 success, 1 verification failure, 2 usage or domain error.

Config files hold one `key = value` pair per line; `#` starts a comment.
Keys are RunConfig field names, plus `tolerance.<identity> = <value>`.
"""
from __future__ import annotations

import argparse
import json
import math
import os
import sys
from dataclasses import dataclass, field, fields

import numpy as np

from . import connection as cn
from . import diffops as do
from . import eisenstein as es
from . import structure as st
from . import taylorbasis as tb
from .errors import PolymaassError

CONFIG_ENV = "POLYMAASS_CONFIG"
GRIDS = {"default": do.DEFAULT_GRID, "dense": do.DENSE_GRID}


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class RunConfig:
    fourier_terms: int = es.DEFAULT_TERMS
    lattice_cutoff: int = es.DEFAULT_CUTOFF
    contour_nodes: int = 64
    contour_radius: float = 0.375
    fd_step: float = 0.01
    tolerance_overrides: dict = field(default_factory=dict)

    def __post_init__(self):
        for f in fields(self):
            if f.name == "tolerance_overrides":
                continue
            if not getattr(self, f.name) > 0:
                raise UsageError(f"{f.name} must be positive")
        if self.contour_nodes % 2:
            raise UsageError("contour_nodes must be even")
        for name, tol in self.tolerance_overrides.items():
            if name not in do.REGISTRY:
                raise UsageError(f"unknown identity in tolerance override: {name}")
            if not tol > 0:
                raise UsageError(f"tolerance for {name} must be positive")

    @property
    def contour(self):
        return tb.ContourSpec(self.contour_radius, self.contour_nodes)

    @property
    def stencil(self):
        return do.Stencil(self.fd_step)


_NUMERIC = {"fourier_terms": int, "lattice_cutoff": int, "contour_nodes": int,
            "contour_radius": float, "fd_step": float}


def parse_config_text(text):
    """Flat key = value pairs to a dict of RunConfig overrides."""
    out, tols = {}, {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"config line {lineno}: expected key = value")
        key, value = (part.strip() for part in line.split("=", 1))
        try:
            if key.startswith("tolerance."):
                tols[key[len("tolerance."):]] = float(value)
            elif key in _NUMERIC:
                out[key] = _NUMERIC[key](value)
            else:
                raise UsageError(f"config line {lineno}: unknown key {key}")
        except ValueError:
            raise UsageError(f"config line {lineno}: bad value {value!r}") from None
    if tols:
        out["tolerance_overrides"] = tols
    return out


def load_config(args):
    """Defaults, then config file (--config or env), then flags."""
    values = {}
    path = getattr(args, "config", None) or os.environ.get(CONFIG_ENV)
    if path:
        try:
            with open(path) as fh:
                values.update(parse_config_text(fh.read()))
        except OSError as exc:
            raise UsageError(f"cannot read config {path}: {exc}") from None
    for key in _NUMERIC:
        flag = getattr(args, key, None)
        if flag is not None:
            values[key] = flag
    tols = dict(values.get("tolerance_overrides", {}))
    for item in getattr(args, "tolerance", None) or []:
        name, _, value = item.partition("=")
        try:
            tols[name] = float(value)
        except ValueError:
            raise UsageError(f"bad --tolerance {item!r}, expected identity=value") from None
    values["tolerance_overrides"] = tols
    return RunConfig(**values)


# ---------------------------------------------------------------- output

def _fmt(x):
    x = float(x)
    if not math.isfinite(x):
        return "null"
    text = format(x, ".17g")
    if text in ("-0", "0"):
        return "0.0" if text == "0" else "-0.0"
    return text


def to_json(obj):
    """Deterministic JSON with 17 significant digits and complex as {re, im}."""
    if obj is None or isinstance(obj, (bool, np.bool_)):
        return {None: "null", True: "true", False: "false"}[None if obj is None else bool(obj)]
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return _fmt(obj)
    if isinstance(obj, (complex, np.complexfloating)):
        return to_json({"re": obj.real, "im": obj.imag})
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, dict):
        return "{" + ", ".join(f"{to_json(str(k))}: {to_json(v)}" for k, v in obj.items()) + "}"
    if isinstance(obj, (list, tuple)):
        return "[" + ", ".join(to_json(v) for v in obj) + "]"
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def _emit(text, out):
    if not text.endswith("\n"):
        text += "\n"
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _pair(text, name):
    try:
        a, b = (float(v) for v in text.split(","))
    except ValueError:
        raise UsageError(f"{name} must be 're,im' or 'x,y', got {text!r}") from None
    return a, b


def _point(text):
    x, y = _pair(text, "--z")
    if not y > 0:
        raise UsageError("--z must lie in the upper half-plane")
    return es.UpperHalfPoint(x, y)


# ---------------------------------------------------------------- commands

def _lattice_level(k, s, raw, completion):
    if completion is es.Completion.RAW:
        return raw
    val = raw * complex(es.completion_factor(k, s))
    if completion is es.Completion.DOUBLY_COMPLETED:
        val *= complex(es.double_factor(k, s))
    return val


def cmd_eval(args, cfg):
    k = args.weight
    p = _point(args.z)
    s = complex(*_pair(args.s, "--s"))
    completion = es.Completion(args.completion)
    paths = {}
    if args.path in ("fourier", "both"):
        paths["fourier"] = es.eval_eisenstein(k, p, s, completion, cfg.fourier_terms)
    if args.path in ("lattice", "both"):
        raw, tail = es.eval_lattice_sum(k, p, s, cfg.lattice_cutoff)
        paths["lattice"] = _lattice_level(k, s, raw, completion)
    value = paths.get("fourier", paths.get("lattice"))
    result = {
        "weight": k,
        "z": {"x": p.x, "y": p.y},
        "s": s,
        "completion": completion.value,
        "value": value,
        "paths": paths,
    }
    if "fourier" in paths:
        result["tail_bound"] = es.fourier_tail_bound(k, p, s, cfg.fourier_terms, completion)
    else:
        result["tail_bound"] = tail
    if args.path == "both":
        result["discrepancy"] = abs(paths["lattice"] - paths["fourier"]) / max(abs(paths["fourier"]), 1e-300)
    return to_json(result), 0


def cmd_taylor(args, cfg):
    k, n = args.weight, args.order
    family = tb.Family(args.family)
    req = tb.TaylorCoefficientRequest(k, n, _point(args.z), cfg.contour, family,
                                      cn.Boundary(args.boundary), cfg.fourier_terms)
    value = tb.taylor_coefficient(req)
    name = tb.coefficient_name(k, n)
    if family is not tb.Family.PLAIN:
        name = name.replace("_{", "~_{", 1)
    result = {
        "name": name,
        "weight": k,
        "order": n,
        "family": family.value,
        "value": value,
        "contour": {"radius": cfg.contour_radius, "nodes": cfg.contour_nodes},
    }
    return to_json(result), 0


def cmd_ctable(args, cfg):
    table = cn.solve_table(args.weight, cn.Boundary(args.boundary), args.nmax)
    return cn.table_to_csv(table), 0


def cmd_dims(args, cfg):
    if args.kmin > args.kmax:
        raise UsageError("--kmin must not exceed --kmax")
    rows = st.dims_table(args.kmin, args.kmax, args.max_depth)
    return st.dims_to_csv(rows), 0


def cmd_verify(args, cfg):
    if args.only is not None and args.only not in do.REGISTRY:
        raise UsageError(f"unknown identity {args.only}; known: {', '.join(sorted(do.REGISTRY))}")
    reports = do.verify_all(args.only, GRIDS[args.grid], cfg.tolerance_overrides,
                            cfg.stencil, cfg.fourier_terms, cfg.contour)
    payload = []
    for r in reports:
        d = r.to_dict()
        d["max_residual"] = r.max_residual
        payload.append(d)
    code = 0 if all(r.passed for r in reports) else 1
    failed = [r.identity for r in reports if not r.passed]
    if failed:
        print(f"failed: {', '.join(sorted(set(failed)))}", file=sys.stderr)
    return to_json(payload), code


# ---------------------------------------------------------------- parser

def _common(parser):
    parser.add_argument("--config", help=f"key = value config file (or ${CONFIG_ENV})")
    parser.add_argument("--out", help="write output to this file instead of stdout")
    parser.add_argument("--fourier-terms", dest="fourier_terms", type=int)
    parser.add_argument("--lattice-cutoff", dest="lattice_cutoff", type=int)
    parser.add_argument("--contour-nodes", dest="contour_nodes", type=int)
    parser.add_argument("--contour-radius", dest="contour_radius", type=float)
    parser.add_argument("--fd-step", dest="fd_step", type=float)
    parser.add_argument("--tolerance", action="append", metavar="IDENTITY=VALUE")


def build_parser():
    parser = argparse.ArgumentParser(prog="polymaass", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", help="evaluate an Eisenstein series")
    _common(p)
    p.add_argument("--weight", type=int, required=True)
    p.add_argument("--z", required=True, help="x,y")
    p.add_argument("--s", required=True, help="re,im")
    p.add_argument("--completion", choices=[c.value for c in es.Completion], default="hathat")
    p.add_argument("--path", choices=["fourier", "lattice", "both"], default="fourier")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("taylor", help="s-Taylor coefficient at s = 0")
    _common(p)
    p.add_argument("--weight", type=int, required=True)
    p.add_argument("--order", type=int, required=True)
    p.add_argument("--z", required=True, help="x,y")
    p.add_argument("--family", choices=[f.value for f in tb.Family], default="plain")
    p.add_argument("--boundary", choices=["zero", "binomial"], default="binomial")
    p.set_defaults(func=cmd_taylor)

    p = sub.add_parser("ctable", help="exact connection coefficient table as CSV")
    _common(p)
    p.add_argument("--weight", type=int, required=True)
    p.add_argument("--boundary", choices=["zero", "binomial"], default="zero")
    p.add_argument("--nmax", type=int, default=7)
    p.set_defaults(func=cmd_ctable)

    p = sub.add_parser("dims", help="dimension table as CSV")
    _common(p)
    p.add_argument("--kmin", type=int, default=0)
    p.add_argument("--kmax", type=int, default=26)
    p.add_argument("--max-depth", dest="max_depth", type=int, default=8,
                   help="largest twice_depth")
    p.set_defaults(func=cmd_dims)

    p = sub.add_parser("verify", help="run the identity registry")
    _common(p)
    p.add_argument("--only", help="run a single identity")
    p.add_argument("--grid", choices=sorted(GRIDS), default="default")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = load_config(args)
        text, code = args.func(args, cfg)
    except (UsageError, PolymaassError, ValueError, KeyError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"polymaass {args.command}: {type(exc).__name__}: {msg}", file=sys.stderr)
        return 2
    _emit(text, args.out)
    return code


if __name__ == "__main__":
    sys.exit(main())
