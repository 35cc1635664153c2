"""Command-line driver.

Exit codes: 0 all checks pass, 1 a check failed, 2 input error,
3 a resource cap was hit.  Negative mathematical findings (for example a
Mackey algebra that is not self-injective) are successful runs.
"""
from __future__ import annotations

import argparse
import sys

from . import checks
from .algebra import GF, ZZ
from .burncat import mackey_dimension_oracle
from .config import FORMATS, RunConfig
from .fdalg.battery import BatteryConfig
from .grpcore import (GroupInputError, ResourceCapError, build_group, is_prime,
                      is_square_free, prime_factors)
from .report import PLUMBING, ReportDocument, timed

EXIT_PASS, EXIT_FAIL, EXIT_INPUT, EXIT_CAP = 0, 1, 2, 3

COMMANDS = {
    "group": ("info",),
    "burnside": ("table", "present"),
    "gustafson": (None,),
    "mackey": ("dim", "compose"),
    "check": ("self-injective", "gorenstein", "rees"),
    "reproduce": ("paper",),
}


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="mackeyalg",
                                 description="Burnside rings, Mackey algebras and their checks")
    ap.add_argument("command", choices=sorted(COMMANDS))
    ap.add_argument("sub", nargs="?", default=None)
    ap.add_argument("--group", help="cyclic:n, klein, sym:n, dihedral:n or a JSON table")
    ap.add_argument("--mod", type=int, default=None, help="work over F_p")
    ap.add_argument("--format", choices=FORMATS, default="text")
    ap.add_argument("--cap", type=int, default=None, help="maximal group order")
    ap.add_argument("--degree", type=int, default=None)
    ap.add_argument("--no-timestamps", action="store_true")
    ap.add_argument("--manifest", default=None, help="reference values (JSON)")
    ap.add_argument("--config", default=None, help="RunConfig as JSON")
    return ap


def _ring(p):
    if p is None:
        return ZZ
    if not is_prime(p):
        raise GroupInputError(f"--mod must be a prime, got {p}")
    return GF(p)


def _need_group(args):
    if not args.group:
        cmd = f"{args.command} {args.sub or ''}".strip()
        raise GroupInputError(f"'{cmd}' needs --group")
    return args.group


def _primes(G, p):
    return [p] if p else sorted(prime_factors(G.order))


def run(argv=None, out=None) -> int:
    out = out or sys.stdout
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as e:
        return EXIT_PASS if e.code == 0 else EXIT_INPUT
    try:
        cfg = RunConfig.from_file(args.config) if args.config else RunConfig()
        if args.cap is not None:
            cfg.order_cap = args.cap
        if args.degree is not None:
            cfg.degree = args.degree
        cfg.output = args.format
        cfg.timestamps = not args.no_timestamps
        cfg.manifest = args.manifest or cfg.manifest
        RunConfig(**cfg.to_json())          # re-validate after overrides
        subs = COMMANDS[args.command]
        if args.sub not in subs:
            raise GroupInputError(f"'{args.command}' expects one of "
                                  f"{[s for s in subs if s]}, got {args.sub!r}")
        doc = dispatch(args, cfg)
    except ResourceCapError as e:
        print(f"resource cap: {e}", file=sys.stderr)
        return EXIT_CAP
    except (GroupInputError, ValueError, OSError) as e:
        print(f"input error: {e}", file=sys.stderr)
        return EXIT_INPUT
    out.write(doc.dumps(cfg.timestamps) if cfg.output == "json"
              else doc.render_text(cfg.timestamps))
    return EXIT_PASS if doc.status == "pass" else EXIT_FAIL


def dispatch(args, cfg: RunConfig) -> ReportDocument:
    name = f"{args.command} {args.sub}" if args.sub else args.command
    if args.command == "reproduce":
        manifest = checks.load_manifest(cfg.manifest)
        doc = ReportDocument(name)
        for entry in manifest["checks"]:
            doc.records.append(checks.run_entry(entry, cfg.order_cap, cfg.resolution_cap))
        return doc

    spec = _need_group(args)
    anchor = checks.load_manifest().get("command_anchors", {}).get(name, PLUMBING)
    G = build_group(spec, cap=cfg.order_cap)
    R = _ring(args.mod)
    doc = ReportDocument(name, spec)
    add = doc.records.append
    if name == "group info":
        add(timed("group-info", PLUMBING, lambda: checks.group_info(G)))
    elif name == "burnside table":
        add(timed("burnside-table", PLUMBING, lambda: checks.burnside_table(G, R)))
    elif name == "burnside present":
        add(timed("burnside-presentation", PLUMBING, lambda: checks.burnside_present(G, R)))
    elif name == "gustafson":
        # only square-free orders over Z carry an expectation
        exp = {"unimodular": True} if R is ZZ and is_square_free(G.order) else None
        add(timed("gustafson-form", anchor, lambda: checks.gustafson_report(G, R), exp,
                  "theory" if exp else "none"))
    elif name == "mackey dim":
        add(timed("mackey-dimension", PLUMBING, lambda: checks.mackey_dim(G, cfg.order_cap),
                  {"dim": mackey_dimension_oracle(G)}, "oracle"))
    elif name == "mackey compose":
        p = args.mod or min(prime_factors(G.order) or [2])
        add(timed("mackey-composites", PLUMBING,
                  lambda: checks.mackey_compose(G, R, p, cfg.order_cap)))
    elif name == "check self-injective":
        for p in _primes(G, args.mod):
            # self-injective iff the p-Sylow subgroups have order 1 or p
            add(timed(f"self-injective-mod-{p}", anchor,
                      lambda p=p: checks.self_injective_report(G, p, cfg.order_cap),
                      {"self_injective": G.order % (p * p) != 0}, "theory"))
    elif name == "check gorenstein":
        bcfg = BatteryConfig(primes=[args.mod] if args.mod else None,
                             order_cap=cfg.order_cap, resolution_cap=cfg.resolution_cap)
        key = "all_vanish" if is_square_free(G.order) else "all_obstructed"
        add(timed("gorenstein-battery", anchor,
                  lambda: checks.battery_report(G, cfg.degree, bcfg), {key: True}, "theory"))
    elif name == "check rees":
        degrees = list(range(1, max(cfg.degree, 1) + 1))
        for p in _primes(G, args.mod):
            add(timed(f"reduction-mod-{p}", anchor,
                      lambda p=p: checks.rees_report(G, p, degrees, cfg.resolution_cap),
                      {str(i): {"equal": True} for i in degrees}, "theory"))
    return doc


def main(argv=None) -> None:
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
