"""Command-line front end.

Exit codes: 0 success (or an explicitly vacuous check), 1 a check failed,
2 bad input or configuration, 3 internal assertion failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from .diagram import (
    DiagramError, TwistSite, catalog_by_name, crossing_signs, parse_pd, replace_sites,
)
from .khovanov import FLAVORS, Theory, khovanov_homology, stable_homology, stable_index
from .kauffman import euler_characteristic, jones
from . import twiststruct as ts

EXIT_OK, EXIT_CHECK, EXIT_CONFIG, EXIT_INTERNAL = 0, 1, 2, 3

FAMILY_CHECKS = ("splitting", "stab", "ladders", "s", "nonvanishing", "pair")


class ConfigError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    flavor: str = "unreduced"
    n: int = 2
    pmax: int = 3
    window: tuple[int, int] | None = None
    fmt: str = "json"
    threads: int = 1
    catalog: str | None = None


def _window(text):
    try:
        a, b = (int(x) for x in text.split(","))
    except ValueError:
        raise ConfigError("window must be two integers A,B, got %r" % text)
    if a > b:
        raise ConfigError("empty window [%d,%d]" % (a, b))
    return a, b


def _site(text):
    try:
        a, b = (int(x) for x in text.split(","))
    except ValueError:
        raise ConfigError("site must be two edge labels A,B, got %r" % text)
    return TwistSite((a, b))


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--flavor", choices=FLAVORS, default=None)
    common.add_argument("--n", type=int, default=2, help="sl(n) rank; only 2 is computed")
    common.add_argument("--format", dest="fmt", choices=("json", "table"), default="json")
    common.add_argument("--threads", type=int, default=1)
    common.add_argument("--catalog", default=None, help="catalog JSON (default: $TWISTKH_CATALOG)")
    common.add_argument("--seed-check", action="store_true", help=argparse.SUPPRESS)

    p = argparse.ArgumentParser(prog="twistkh", description="Khovanov homology of twist families")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("compute", parents=[common], help="homology of one knot")
    src = c.add_mutually_exclusive_group(required=True)
    src.add_argument("--knot")
    src.add_argument("--pd")

    f = sub.add_parser("family", parents=[common], help="verify a twist-family theorem")
    fsrc = f.add_mutually_exclusive_group(required=True)
    fsrc.add_argument("--base")
    fsrc.add_argument("--pd")
    f.add_argument("--site", help="edge pair A,B (default: the base's first site)")
    f.add_argument("check", choices=FAMILY_CHECKS)
    f.add_argument("--pmax", type=int, default=3)
    f.add_argument("--rows", type=int, default=3, help="ladder rows")
    f.add_argument("--other", help="second family base for the pair check")
    f.add_argument("--expand", action="store_true", help="also compute from expanded diagrams")

    s = sub.add_parser("stable", parents=[common], help="windowed homology of infinite twisting")
    ssrc = s.add_mutually_exclusive_group(required=True)
    ssrc.add_argument("--base")
    ssrc.add_argument("--pd")
    s.add_argument("--site")
    s.add_argument("--window", required=True)
    return p


def _resolve(args, name_attr):
    name = getattr(args, name_attr, None)
    if name is not None:
        cat = catalog_by_name(args.catalog)
        if name not in cat:
            raise ConfigError("unknown knot %r (catalog has %d entries)" % (name, len(cat)))
        d = cat[name]
    else:
        d = parse_pd(args.pd, name="pd")
    if getattr(args, "site", None):
        d = replace_sites(d, (_site(args.site),))
    return d


def _config(args) -> RunConfig:
    if args.n != 2:
        raise ConfigError("only n = 2 is implemented (got n = %d)" % args.n)
    if args.threads < 1:
        raise ConfigError("--threads must be positive")
    default = "reduced" if args.command == "family" else "unreduced"
    cfg = RunConfig(args.command, args.flavor or default, args.n, getattr(args, "pmax", 3),
                    None, args.fmt, args.threads, args.catalog)
    if cfg.pmax < 1:
        raise ConfigError("--pmax must be at least 1")
    if args.command == "stable":
        cfg.window = _window(args.window)
    return cfg


def cmd_compute(args, cfg):
    d = _resolve(args, "knot")
    h = khovanov_homology(d, Theory(cfg.flavor))
    out = h.to_json_obj()
    ok = True
    if args.seed_check:
        chi = euler_characteristic(khovanov_homology(d, "unreduced"))
        ok = chi == jones(d)
        out["seed_check"] = {"pass": ok, "jones": _poly(jones(d)), "euler": _poly(chi)}
    return out, (EXIT_OK if ok else EXIT_CHECK)


def _poly(p):
    return {str(k): v for k, v in sorted(p.items())}


def _prefetch(fam, ps, threads, flavors=None):
    if threads <= 1:
        return
    jobs = [(p, fl) for p in ps for fl in (flavors or [fam.flavor])]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        list(pool.map(lambda j: fam.homology(j[0], j[1]), jobs))


def cmd_family(args, cfg):
    base = _resolve(args, "base")
    fam = ts.TwistFamily(base, None, cfg.flavor)
    check = args.check
    _prefetch(fam, range(0, cfg.pmax + 1), cfg.threads)
    if check == "splitting":
        rep = ts.verify_splitting(fam, cfg.pmax, expand=args.expand)
    elif check == "stab":
        rows = [ts.verify_stab_ranges(fam, i, i + 1) for i in range(1, cfg.pmax + 1)]
        rep = {"check": "stab", "family": fam.describe(), "rows": rows,
               "pass": all(r["pass"] for r in rows)}
    elif check == "ladders":
        if args.rows < 2:
            raise ConfigError("--rows must be at least 2")
        rep = ts.verify_ladders(fam, args.rows)
    elif check == "s":
        rep = ts.check_sn_constancy(fam, cfg.pmax)
    elif check == "nonvanishing":
        rep = ts.check_nonvanishing(fam, cfg.pmax)
    else:
        if not args.other:
            raise ConfigError("the pair check needs --other")
        other = catalog_by_name(args.catalog).get(args.other)
        if other is None:
            raise ConfigError("unknown knot %r" % args.other)
        rep = ts.isomorphic_pair_check(fam, ts.TwistFamily(other, None, cfg.flavor), cfg.pmax,
                                       expand=args.expand)
    return rep, (EXIT_CHECK if rep.get("pass") is False else EXIT_OK)


def cmd_stable(args, cfg):
    d = _resolve(args, "base")
    if not d.sites:
        raise ConfigError("diagram has no twist site; pass --site")
    lo, hi = cfg.window
    i = stable_index(d, hi)
    h = stable_homology(d, d.sites[0], Theory(cfg.flavor), (lo, hi))
    out = {"window": [lo, hi], "i": i,
           "certified_through": 2 * i - crossing_signs(d)[1] - 2,
           "homology": h.to_json_obj()}
    return out, EXIT_OK


def render_table(obj) -> str:
    """Human view derived from the JSON report."""
    if "groups" in obj or "homology" in obj:
        hom = obj.get("homology", obj)
        groups = hom["groups"]
        lines = []
        if "window" in obj:
            lines.append("window %s  i = %d" % (obj["window"], obj["i"]))
        if not groups:
            return "\n".join(lines + ["(zero)"])
        hs = sorted({g["h"] for g in groups})
        qs = sorted({g["q"] for g in groups}, reverse=True)
        cell = {(g["h"], g["q"]): str(g["free"] or "") + "".join("+T%d" % k for k in g["torsion"])
                for g in groups}
        w = max(4, max(len(v) for v in cell.values()) + 1)
        lines.append("q\\h".rjust(5) + "".join(str(h).rjust(w) for h in hs))
        for q in qs:
            lines.append(str(q).rjust(5) + "".join(cell.get((h, q), ".").rjust(w) for h in hs))
        lines.append("poincare: " + hom["poincare"])
        return "\n".join(lines)
    return "\n".join("%s: %s" % (k, json.dumps(v, sort_keys=True)) for k, v in obj.items())


def main(argv=None) -> int:
    parser = build_parser()
    argv = list(sys.argv[1:] if argv is None else argv)
    # let "--window -2,2" through although the value starts with a dash
    for k in range(len(argv) - 1):
        if argv[k] == "--window":
            argv[k:k + 2] = ["--window=" + argv[k + 1]]
            break
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_CONFIG
    try:
        cfg = _config(args)
        run = {"compute": cmd_compute, "family": cmd_family, "stable": cmd_stable}[args.command]
        out, code = run(args, cfg)
    except (ConfigError, DiagramError, ValueError, OSError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_CONFIG
    except AssertionError as exc:
        print("internal error: %s" % exc, file=sys.stderr)
        return EXIT_INTERNAL
    if cfg.fmt == "json":
        print(json.dumps(out, sort_keys=True, indent=1))
    else:
        print(render_table(out))
    return code


if __name__ == "__main__":
    sys.exit(main())
