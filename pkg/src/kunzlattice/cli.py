"""Command line front end.

    kunzlattice <command> [semigroup] [--order preceq|subseteq] [--format dot|json]
                [--input FILE] [--max-genus N] [--checks LIST]
"""

from __future__ import annotations

import argparse
import sys

from .analysis import CHECKS, quark_report, reconstruct, reports_json, verify_suite
from .errors import KunzError
from .poset import AbstractPoset, enumerate_ideals, export_hasse, ideal_poset
from .semigroup import NumericalSemigroup

COMMANDS = ("analyze", "ideals", "hasse", "quarks", "reconstruct", "verify")
NEEDS_SEMIGROUP = {"analyze", "ideals", "hasse", "quarks"}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="kunzlattice",
        description="Normalized ideals of numerical semigroups in Kunz coordinates.",
    )
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("semigroup", nargs="?", help='comma-separated generators, e.g. "3,13,17"')
    p.add_argument("--order", choices=("preceq", "subseteq"), default="preceq")
    p.add_argument("--format", choices=("dot", "json"), default=None)
    p.add_argument("--input", metavar="FILE", help="poset JSON for reconstruct ('-' for stdin)")
    p.add_argument("--max-genus", type=int, default=12)
    p.add_argument("--checks", default=None, help="comma-separated check names (default: all)")
    p.add_argument("--workers", type=int, default=1)
    return p


def _join(xs) -> str:
    return ",".join(str(x) for x in sorted(xs))


def cmd_analyze(S: NumericalSemigroup) -> list[str]:
    lines = [
        f"semigroup: {S}",
        f"generators: {S.generator_string()}",
        f"multiplicity: {S.multiplicity}",
        f"kunz: {S.kunz}",
        f"genus: {S.genus}",
        f"frobenius: {S.frobenius}",
    ]
    if S.is_full():
        lines += ["pseudo-frobenius: ", "special-gaps: ", "type: 0", "classification: none"]
    else:
        pf = S.pseudo_frobenius()
        lines += [
            f"pseudo-frobenius: {_join(pf)}",
            f"special-gaps: {_join(S.special_gaps())}",
            f"type: {len(pf)}",
            f"classification: {S.classify()}",
        ]
    return lines


def cmd_ideals(S: NumericalSemigroup) -> list[str]:
    P = enumerate_ideals(S)
    return [f"ideals: {len(P)}"] + [str(I.kunz) for I in P.ideals]


def run(argv: list[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command in NEEDS_SEMIGROUP and not args.semigroup:
        parser.error(f"{args.command} needs a semigroup, e.g. 3,13,17")
    if args.command == "reconstruct" and not args.input:
        parser.error("reconstruct needs --input FILE")
    if args.max_genus < 0:
        parser.error("--max-genus must be non-negative")
    try:
        S = None
        if args.semigroup:
            try:
                S = NumericalSemigroup.parse(args.semigroup)
            except KunzError:
                raise
            except ValueError:
                parser.error(f"cannot parse generators {args.semigroup!r}")
        if args.command == "analyze":
            text = "\n".join(cmd_analyze(S)) + "\n"
        elif args.command == "ideals":
            text = "\n".join(cmd_ideals(S)) + "\n"
        elif args.command == "hasse":
            text = export_hasse(ideal_poset(S), order=args.order, format=args.format or "dot")
            if not text.endswith("\n"):
                text += "\n"
        elif args.command == "quarks":
            text = "\n".join(quark_report(S).lines()) + "\n"
        elif args.command == "reconstruct":
            if args.input == "-":
                raw = sys.stdin.read()
            else:
                with open(args.input, encoding="utf-8") as fh:
                    raw = fh.read()
            res = reconstruct(AbstractPoset.from_json(raw))
            text = res.recovered.generator_string() + "\n"
        else:
            checks = args.checks.split(",") if args.checks else list(CHECKS)
            reports = verify_suite(args.max_genus, checks, workers=args.workers)
            if args.format == "json":
                text = reports_json(reports) + "\n"
            else:
                text = "".join(
                    f"{r.check}: {'pass' if r.passed else 'FAIL'} "
                    f"(instances {r.instances}, failures {len(r.failures)})\n"
                    + "".join(f"  {f['semigroup']}: {f['detail']}\n" for f in r.failures[:5])
                    for r in reports
                )
            out.write(text)
            return 0 if all(r.passed for r in reports) else 1
    except (KunzError, KeyError, ValueError, OSError) as exc:
        name = type(exc).__name__
        print(f"error: {name}: {exc}", file=sys.stderr)
        return 1
    out.write(text)
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
