"""Command line: maxpattern {gen,lang,pstar,check-sturmian,witness,reproduce}."""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional, Sequence

from . import acceptance, catalog, rotation, witnesses
from .complexity import SearchBounds, check_pattern_sturmian, default_workers, pstar, render_table
from .seqcore import SequenceRangeError, Window, tau_language
from .specio import SpecError, write_bits
from .toeplitz import ToeplitzSpecError, UnfilledPositionError

EXIT_OK, EXIT_USAGE, EXIT_CRITERION = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _add_source(p: argparse.ArgumentParser) -> None:
    p.add_argument("--spec", help="spec JSON file or builtin:<name>")
    p.add_argument("--prefix-file", help=".bits file read as a finite prefix")


def _add_bounds(p: argparse.ArgumentParser, n_default: int = 5) -> None:
    p.add_argument("--n", type=int, default=n_default, help="largest window size")
    p.add_argument("--diameter", type=int, default=64, help="window diameter cap D")
    p.add_argument("--shifts", type=int, default=20_000, help="shift bound S")
    p.add_argument("--budget", type=int, default=100_000, help="node budget per n")
    p.add_argument("--workers", type=int, default=None, help="processes (default: all cores)")


def _add_format(p: argparse.ArgumentParser) -> None:
    p.add_argument("--format", choices=("table", "structured"), default="table")


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="maxpattern", description="Maximal pattern complexity toolkit.")
    ap.add_argument("--seed", type=int, default=0)
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    g = sub.add_parser("gen", help="write a bit prefix")
    _add_source(g)
    g.add_argument("--length", type=int, required=True)
    g.add_argument("--out", help="output path (default: stdout)")

    lang = sub.add_parser("lang", help="tau-language of one window")
    _add_source(lang)
    lang.add_argument("--window", required=True, help="comma-separated offsets, e.g. 0,2,5")
    lang.add_argument("--shifts", type=int, default=20_000)
    _add_format(lang)

    ps = sub.add_parser("pstar", help="lower bounds for p*(n)")
    _add_source(ps)
    _add_bounds(ps)
    ps.add_argument("--no-prune", action="store_true")
    _add_format(ps)

    ck = sub.add_parser("check-sturmian", help="refute or support p*(n) = 2n")
    _add_source(ck)
    _add_bounds(ck)
    _add_format(ck)

    w = sub.add_parser("witness", help="constructive witnesses")
    w.add_argument("kind", choices=("doubling", "long-blocks", "gap-window", "nonrecurrence"))
    _add_source(w)
    w.add_argument("--horizon", type=int, default=None)
    w.add_argument("--n", type=int, default=5, help="doubling steps k_max")
    w.add_argument("--block", type=int, default=1, help="doubling: block length N of the sliding code")
    w.add_argument("--y-language", default=None, help="doubling: comma-separated N-words (default: 0^N)")
    _add_format(w)

    rp = sub.add_parser("reproduce", help="run the acceptance suite")
    rp.add_argument("--criteria", default=None, help="comma-separated criterion numbers")
    _add_format(rp)
    return ap


def _emit(args, structured: dict, table: str) -> None:
    if args.format == "structured":
        print(json.dumps(structured, indent=2, sort_keys=True, default=str))
    else:
        print(table)


def _bounds(args) -> SearchBounds:
    try:
        return SearchBounds(args.n, args.diameter, args.shifts, args.budget)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _workers(args) -> int:
    return args.workers if args.workers is not None else default_workers()


def cmd_gen(args) -> int:
    if args.length < 1:
        raise UsageError("--length must be positive")
    x, spec, desc = catalog.resolve(args.spec, args.prefix_file)
    bits = x.word(0, args.length)
    header = dict(desc)
    if spec is not None and hasattr(spec, "to_dict"):
        try:
            header["spec"] = spec.to_dict()
        except (ValueError, TypeError):
            pass
    header["kind"] = x.kind
    header["length"] = args.length
    depth = getattr(spec, "periods", None)
    if depth is not None:
        header["depth_consumed"] = depth.levels_below(args.length)
    if args.out:
        write_bits(args.out, bits, header)
    else:
        for k, v in header.items():
            print(f"# {k}: {json.dumps(v, sort_keys=True)}")
        print(bits)
    return EXIT_OK


def _parse_window(text: str) -> Window:
    try:
        return Window.of(int(t) for t in text.split(",") if t.strip())
    except ValueError as exc:
        raise UsageError(f"bad window {text!r}: {exc}") from exc


def cmd_lang(args) -> int:
    x, _, _ = catalog.resolve(args.spec, args.prefix_file)
    tau = _parse_window(args.window)
    rep = tau_language(x, tau, args.shifts)
    body = [(p.bits, str(p.witness_shift)) for p in rep.patterns]
    table = render_table(("pattern", "first shift"), body) + f"\n{rep.count} patterns over shifts 0..{args.shifts}, saturated={rep.saturated}"
    _emit(args, rep.to_dict(), table)
    return EXIT_OK


def cmd_pstar(args) -> int:
    x, _, _ = catalog.resolve(args.spec, args.prefix_file)
    cert = pstar(x, _bounds(args), prune=not args.no_prune, workers=_workers(args))
    _emit(args, cert.to_dict(), cert.table())
    return EXIT_OK


def cmd_check(args) -> int:
    x, _, _ = catalog.resolve(args.spec, args.prefix_file)
    chk = check_pattern_sturmian(x, _bounds(args), workers=_workers(args))
    lines = [f"verdict: {chk.verdict}" + (" (within bounds)" if chk.verdict == "consistent" else "")]
    if chk.verdict == "refuted":
        lines.append(f"n = {chk.refuting_n}, window {chk.refuting_window}, {chk.refuting_count} patterns > {2 * chk.refuting_n}")
    if chk.eventually_periodic:
        lines.append("note: input looks eventually periodic")
    lines.append(chk.certificate.table())
    _emit(args, {**chk.to_dict(), "certificate": chk.certificate.to_dict()}, "\n".join(lines))
    return EXIT_OK


def cmd_witness(args) -> int:
    x, spec, _ = catalog.resolve(args.spec, args.prefix_file)
    h = args.horizon
    if args.kind == "doubling":
        N = args.block
        ylang = args.y_language.split(",") if args.y_language else ["0" * N]
        xp = witnesses.minimality_defect_code(x, ylang, N)
        tr = witnesses.doubling_lower_bound(xp, args.n, h or 4_000_000)
        body = [
            (str(s.k), str(s.window.size), str(s.window.diameter), str(s.count), str(s.bound), str(s.K))
            for s in tr.steps
        ]
        table = render_table(("k", "|tau|", "diam", "count", "(k+2)2^(k-1)", "K"), body)
        table += f"\ncertified through k = {tr.certified_through()}" + (f"; {tr.failure}" if tr.failure else "")
        _emit(args, tr.to_dict(), table)
        return EXIT_OK
    if args.kind == "nonrecurrence":
        if not isinstance(spec, rotation.RotationCodingSpec):
            raise UsageError("nonrecurrence witness needs a rotation spec")
        res = rotation.nonrecurrence_witness(spec, h or 100_000, x)
    elif args.kind == "long-blocks":
        res = witnesses.long_blocks_witness(x, h or 100_000)
    else:
        res = witnesses.gap_window_witness(x, h or 100_000)
    if res is None:
        _emit(args, {"witness": None}, "no witness within horizon")
        return EXIT_OK
    d = res.to_dict()
    _emit(args, d, "\n".join(f"{k}: {v}" for k, v in d.items()))
    return EXIT_OK


def cmd_reproduce(args) -> int:
    nums = [int(t) for t in args.criteria.split(",")] if args.criteria else None
    results = []
    for n in nums or [c[0] for c in acceptance.CRITERIA]:
        r = acceptance.run_criterion(n, args.seed)
        results.append(r)
        if args.format == "table":
            print(r.line(), flush=True)
    if args.format == "structured":
        print(json.dumps([r.to_dict() for r in results], indent=2))
    else:
        print(f"{sum(r.ok for r in results)}/{len(results)} criteria passed")
    return EXIT_OK if all(r.ok for r in results) else EXIT_CRITERION


COMMANDS = {
    "gen": cmd_gen,
    "lang": cmd_lang,
    "pstar": cmd_pstar,
    "check-sturmian": cmd_check,
    "witness": cmd_witness,
    "reproduce": cmd_reproduce,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except (UsageError, SpecError, ToeplitzSpecError, UnfilledPositionError, SequenceRangeError, ValueError, OSError) as exc:
        print(f"maxpattern: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
