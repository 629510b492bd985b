"""Command-line entry point: ``csqbc {analyze,fig1,fig2,fair,montecarlo}``."""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
import tempfile
from dataclasses import asdict

from .bounds import fair_optimize, figure1_scan, figure2_scan
from .errors import CSQBCError, UnknownProtocol
from .protocol import BUILTINS, analyze, builtin_protocol, load_protocol_file
from .simulate import monte_carlo

EXIT_USAGE = 2


class CliError(Exception):
    pass


def fmt(x: float) -> str:
    """12 significant digits, locale independent."""
    s = f"{x:.12g}"
    return "0" if s == "-0" else s


def _round(obj):
    if isinstance(obj, float):
        return float(fmt(obj)) if math.isfinite(obj) else None
    if isinstance(obj, dict):
        return {k: _round(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_round(v) for v in obj]
    return obj


def dumps(obj) -> str:
    return json.dumps(_round(obj), sort_keys=True)


def resolve_protocol(ref: str, zeta: float | None = None):
    if ref in BUILTINS:
        return builtin_protocol(ref, zeta)
    if not os.path.exists(ref) and not ref.endswith(".json"):
        raise UnknownProtocol(f"unknown protocol {ref!r} (not a built-in name or an existing file)")
    spec = load_protocol_file(ref)
    return spec if zeta is None else spec.with_zeta(zeta)


def atomic_write(path: str, text: str) -> None:
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".csqbc-", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def to_csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([fmt(v) for v in row])
    return buf.getvalue()


def _emit(text: str, out: str | None) -> None:
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        try:
            atomic_write(out, text)
        except OSError as exc:
            raise CliError(f"cannot write {out}: {exc.strerror or exc}") from exc


def cmd_analyze(args) -> None:
    report = analyze(resolve_protocol(args.protocol, args.zeta))
    labels = [
        ("trace distance D", report.d),
        ("fidelity F", report.f),
        ("decode reliability (1+D)/2", report.reliability),
        ("Bob pass probability P_B", report.p_b),
        ("Alice pass probability P_A", report.p_a),
        ("zeta", report.zeta),
        ("effective P_A*", report.p_a_star),
        ("effective P_B*", report.p_b_star),
    ]
    for label, value in labels:
        print(f"{label:<30} {fmt(value)}")
    print(dumps(asdict(report)))


def cmd_fig1(args) -> None:
    _emit(to_csv(("alpha", "p_b", "i_m"), figure1_scan(args.step)), args.out)


def cmd_fig2(args) -> None:
    _emit(to_csv(("d", "zeta", "bound"), figure2_scan(args.step)), args.out)


def cmd_fair(args) -> None:
    opt = fair_optimize(args.tolerance)
    print(dumps({"alpha": opt.alpha_star, "zeta": opt.zeta_star, "p_star": opt.p_star,
                 "sqrt_alpha": math.sqrt(opt.alpha_star)}))


def cmd_montecarlo(args) -> None:
    protocol = resolve_protocol(args.protocol, args.zeta)
    stats = monte_carlo(protocol, args.alice, args.bob, args.trials, args.seed,
                        workers=args.workers, bob_check=args.bob_check)
    payload = stats.to_dict()
    payload.update(protocol=protocol.name, zeta=protocol.zeta, alice=args.alice, bob=args.bob)
    _emit(dumps(payload) + "\n", args.out)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="csqbc",
        description="Cheating bounds and simulation for cheat-sensitive quantum bit commitment.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="closed-form cheating probabilities of a protocol")
    p.add_argument("--protocol", required=True, help="built-in name or protocol JSON file")
    p.add_argument("--zeta", type=float, help="override the protocol's check probability")
    p.set_defaults(func=cmd_analyze)

    for name, func, what in (("fig1", cmd_fig1, "P_B and I_m versus alpha"),
                             ("fig2", cmd_fig2, "combined lower bound over (D, zeta)")):
        p = sub.add_parser(name, help=f"CSV table of {what}")
        p.add_argument("--step", type=float, default=0.01)
        p.add_argument("--out", help="output CSV path (default: standard output)")
        p.set_defaults(func=func)

    p = sub.add_parser("fair", help="optimal fair protocol parameters")
    p.add_argument("--tolerance", type=float, default=1e-6)
    p.set_defaults(func=cmd_fair)

    p = sub.add_parser("montecarlo", help="seeded Monte Carlo protocol runs")
    p.add_argument("--protocol", required=True)
    p.add_argument("--alice", choices=("honest", "cheat"), default="honest")
    p.add_argument("--bob", choices=("honest", "cheat"), default="honest")
    p.add_argument("--trials", type=int, default=100_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--zeta", type=float)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--bob-check", choices=("projective", "decode"), default="projective")
    p.add_argument("--out", help="write JSON here instead of standard output")
    p.set_defaults(func=cmd_montecarlo)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        args.func(args)
    except (CSQBCError, CliError, ValueError) as exc:
        print(f"csqbc {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return 0


if __name__ == "__main__":
    sys.exit(main())
