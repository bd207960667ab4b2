"""Command-line driver: ``baxref verify | chain | spectrum`` emitting JSON reports.

Exit codes: 0 all checks pass, 1 some check fails, 2 configuration error.
"""

from __future__ import annotations

import argparse
import sys
import time
from typing import Optional, Sequence

from .chain import HAMILTONIAN_KINDS, BoundaryUnavailable, ChainError, ChainModel, hamiltonian, make_left, make_right, spectrum
from .checks import Check
from .reflection import BoundaryError
from .rep import REGISTRY, build_named, resolve_a
from .report import Report
from .scalars import parse_scalar
from .suites import SUITES, chain_checks, run_suite, thread_count

__all__ = ["main", "build_parser", "ConfigError"]

LEFT_NAMES = ("trivial", "rational", "evaluation", "poly", "small", "prop2", "bmw2", "bmw4")
RIGHT_NAMES = ("trivial", "conjugated")


class ConfigError(ValueError):
    """Invalid run configuration (exit code 2)."""


def _common(p: argparse.ArgumentParser, samples: int) -> None:
    p.add_argument("--rep", default="gl2", choices=sorted(REGISTRY), help="representation (default gl2)")
    p.add_argument("--q", default="2", help="deformation parameter q, a scalar string (default 2)")
    p.add_argument("--a", default="q", help="baxterization parameter choice: q or -1/q (default q)")
    p.add_argument("--seed", type=int, action="append", dest="seed_list",
                   help="random seed; repeat for a seed grid (default 1)")
    p.add_argument("--seeds", default=None, help="comma-separated seed list (alternative to --seed)")
    p.add_argument("--samples", type=int, default=samples, help=f"sample points per seed (default {samples})")
    p.add_argument("--output", "-o", default=None, help="write the JSON report here instead of stdout")
    p.add_argument("--no-timing", action="store_true", help="omit wall-clock timing from the report")


def _chain_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--sites", type=int, default=2, help="chain sites n-1 (default 2)")
    p.add_argument("--left", default="trivial",
                   help="left boundary: " + " | ".join(LEFT_NAMES) + " (optionally name:xi=VALUE)")
    p.add_argument("--right", default="trivial", choices=RIGHT_NAMES, help="right boundary")
    p.add_argument("--xi", default=None, help="left boundary xi (scalar string)")
    p.add_argument("--xi2", default=None, help="right boundary xi (scalar string)")
    p.add_argument("--zeta", default="1", help="zeta of the 'small' boundary (default 1)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="baxref", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="run a verification suite")
    v.add_argument("--suite", default="all", choices=(*SUITES, "all"))
    _common(v, samples=5)
    v.add_argument("--xi", default=None, help="boundary xi for the re suite; 'wrong' = negative control")
    v.add_argument("--xi2", default=None, help="right-boundary xi for the conjugated-re suite")

    c = sub.add_parser("chain", help="build an open chain and check commuting families and Hamiltonians")
    _common(c, samples=3)
    _chain_args(c)
    c.add_argument("--kind", default=None, choices=HAMILTONIAN_KINDS, help="restrict to one Hamiltonian kind")

    s = sub.add_parser("spectrum", help="exact characteristic polynomial of a chain Hamiltonian")
    _common(s, samples=3)
    _chain_args(s)
    s.add_argument("--kind", default=None, choices=HAMILTONIAN_KINDS,
                   help="Hamiltonian kind (default H1 for Hecke, H5 for BMW)")
    return parser


# --------------------------------------------------------------------------
# configuration
# --------------------------------------------------------------------------

def _scalar(text: Optional[str], what: str):
    if text is None:
        return None
    try:
        return parse_scalar(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise ConfigError(f"{what}: cannot parse {text!r}: {exc}") from exc


def _seeds(args) -> list[int]:
    seeds = list(args.seed_list or [])
    if args.seeds:
        try:
            seeds += [int(s) for s in args.seeds.split(",") if s.strip()]
        except ValueError as exc:
            raise ConfigError(f"--seeds: {exc}") from exc
    return seeds or [1]


def _config(args) -> dict:
    if args.samples < 1:
        raise ConfigError("--samples must be >= 1")
    q = _scalar(args.q, "--q")
    try:
        _, a_choice = resolve_a(q, args.a)
        rep = build_named(args.rep, q, a_choice)
    except (ValueError, ArithmeticError) as exc:
        raise ConfigError(str(exc)) from exc
    cfg = {
        "command": args.command,
        "rep": args.rep,
        "q": q,
        "a_choice": a_choice,
        "seeds": _seeds(args),
        "sample_count": args.samples,
        "_rep": rep,
    }
    if args.command == "verify":
        cfg["suite"] = args.suite
        cfg["xi"] = args.xi if args.xi in (None, "wrong") else _scalar(args.xi, "--xi")
        cfg["xi2"] = _scalar(args.xi2, "--xi2")
        if cfg["xi"] == "wrong" and not rep.is_bmw:
            raise ConfigError("--xi wrong is a Prop. 2 (BMW) negative control; Prop. 1 holds for every xi")
        return cfg
    if args.sites < 1:
        raise ConfigError("--sites must be >= 1")
    left, _, opt = args.left.partition(":")
    if left not in LEFT_NAMES:
        raise ConfigError(f"--left must be one of {LEFT_NAMES}")
    xi = args.xi
    if opt:
        key, _, val = opt.partition("=")
        if key != "xi" or not val:
            raise ConfigError(f"--left option {opt!r}: expected xi=VALUE")
        xi = val
    cfg.update(
        sites=args.sites,
        left_boundary=left,
        right_boundary=args.right,
        xi=_scalar(xi, "--xi"),
        xi2=_scalar(args.xi2, "--xi2"),
        zeta=_scalar(args.zeta, "--zeta"),
        kind=args.kind,
    )
    return cfg


def _public(cfg: dict) -> dict:
    return {k: v for k, v in cfg.items() if not k.startswith("_")}


def _build_chain(cfg: dict) -> ChainModel:
    rep = cfg["_rep"]
    left = make_left(rep, cfg["left_boundary"], cfg["xi"], zeta=cfg["zeta"])
    right = make_right(rep, cfg["right_boundary"], cfg["xi2"])
    return ChainModel(rep, cfg["sites"], left, right)


# --------------------------------------------------------------------------
# commands
# --------------------------------------------------------------------------

def cmd_verify(cfg: dict) -> Report:
    rep = cfg["_rep"]
    report = Report("verify", _public(cfg))
    report.results["representation"] = rep.to_json()
    suites = SUITES if cfg["suite"] == "all" else (cfg["suite"],)
    for name in suites:
        t0 = time.perf_counter()
        try:
            checks = run_suite(name, rep, cfg["seeds"], cfg["sample_count"], xi=cfg["xi"], xi2=cfg["xi2"])
        except (BoundaryError, ChainError) as exc:
            report.error(name.replace("-", "_"), str(exc), rep=rep.name, suite=name)
            continue
        report.add(checks, time.perf_counter() - t0, name)
    return report


def _chain_report(command: str, cfg: dict) -> tuple[Report, Optional[ChainModel]]:
    report = Report(command, _public(cfg))
    rep = cfg["_rep"]
    report.results["representation"] = rep.to_json()
    try:
        chain = _build_chain(cfg)
    except BoundaryUnavailable as exc:
        report.add(Check("chain_build", False, "boundary availability", {"rep": rep.name,
                         "left": cfg["left_boundary"]}, status="skipped", note=str(exc)))
        return report, None
    except (ChainError, BoundaryError, ArithmeticError) as exc:
        report.error("chain_build", str(exc), rep=rep.name, left=cfg["left_boundary"], right=cfg["right_boundary"])
        return report, None
    report.results["chain"] = chain.to_json()
    return report, chain


def cmd_chain(cfg: dict) -> Report:
    report, chain = _chain_report("chain", cfg)
    if chain is None:
        return report
    t0 = time.perf_counter()
    kinds = [cfg["kind"]] if cfg["kind"] else None
    report.add(chain_checks(chain, cfg["seeds"], cfg["sample_count"], kinds, explicit_kind=bool(kinds)),
               time.perf_counter() - t0, "chain")
    return report


def cmd_spectrum(cfg: dict) -> Report:
    report, chain = _chain_report("spectrum", cfg)
    if chain is None:
        return report
    kind = cfg["kind"] or ("H5" if chain.rep.is_bmw else "H1")
    anchor = "Hamiltonian spectrum (exact characteristic polynomial)"
    t0 = time.perf_counter()
    try:
        H = hamiltonian(chain, kind)
    except ChainError as exc:
        report.error("spectrum", str(exc), rep=chain.rep.name, kind=kind)
        return report
    spec = spectrum(H)
    report.results["spectrum"] = {"kind": kind, "dim": H.dim, **spec}
    mult = sum(r["multiplicity"] for r in spec["rational_roots"]) + len(spec["approx_roots"])
    ok = mult == H.dim and len(spec["char_poly"]) == H.dim + 1
    report.add(Check("spectrum", ok, anchor, {"rep": chain.rep.name, "kind": kind, "sites": chain.sites},
                     None if ok else {"error": f"root count {mult} != dim {H.dim}"}),
               time.perf_counter() - t0, "spectrum")
    return report


COMMANDS = {"verify": cmd_verify, "chain": cmd_chain, "spectrum": cmd_spectrum}


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)  # argparse exits with code 2 on usage errors
    try:
        cfg = _config(args)
        report = COMMANDS[args.command](cfg)
    except ConfigError as exc:
        parser.print_usage(sys.stderr)
        print(f"baxref: error: {exc}", file=sys.stderr)
        return 2
    if args.no_timing:
        report.timing = {}
    else:
        report.timing["threads"] = thread_count()
    text = report.dumps()
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return report.exit_code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
