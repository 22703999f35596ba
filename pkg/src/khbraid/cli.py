"""Command-line interface: ``khbraid <command> "<n>: <letters>" [flags]``.

Exit status: 0 success, 2 parse error, 3 crossing cap exceeded,
4 internal consistency failure.
"""

from __future__ import annotations

import argparse
import logging
import sys
from typing import Callable, Iterable, Optional

from . import report
from .basepoints import module_structure
from .braid import BraidWord, mirror, parse_braid
from .cube import DEFAULT_MAX_CROSSINGS, build_complex
from .errors import BraidParseError, CapExceededError, ConsistencyError
from .homology import betti_table, graded_euler_characteristic
from .oracles import kauffman_state_sum
from .transverse import (_psi_nonzero, admissible_component_counts, certify,
                         max_fibered_euler_char)

log = logging.getLogger("khbraid")

EXIT_OK, EXIT_PARSE, EXIT_CAP, EXIT_CONSISTENCY = 0, 2, 3, 4


class Output:
    def __init__(self, args: argparse.Namespace):
        self.json = args.json
        self.quiet = args.quiet

    def emit(self, doc: dict, text: str) -> None:
        if self.json:
            print(report.dumps(doc))
        elif not self.quiet:
            print(text)


def _plot_path(args: argparse.Namespace, w: BraidWord, index: int, batch: bool) -> Optional[str]:
    if not getattr(args, "plot", None):
        return None
    if not batch:
        return args.plot
    stem, dot, ext = args.plot.rpartition(".")
    return f"{stem}_{index}.{ext}" if dot else f"{args.plot}_{index}"


def _save_plot(path: Optional[str], table, psi=None) -> None:
    if path is None:
        return
    from .plotting import plot_betti_table

    plot_betti_table(table, path, psi=psi)
    log.info("wrote %s", path)


def cmd_kh(w: BraidWord, args, out: Output, plot: Optional[str]) -> None:
    t = betti_table(build_complex(w, args.max_crossings))
    doc = report.base_document(w)
    doc["betti"] = report.betti_rows(t)
    text = f"Kh({w})  total dimension {t.total_dim}\n{report.format_table(t)}"
    out.emit(doc, text)
    _save_plot(plot, t)


def cmd_module(w: BraidWord, args, out: Output, plot: Optional[str]) -> None:
    c = build_complex(w, args.max_crossings)
    t = betti_table(c)
    ms = module_structure(t, c)
    doc = report.base_document(w)
    doc["betti"] = report.betti_rows(t)
    doc["module"] = report.module_json(ms, with_actions=True)
    lines = [f"Kh({w})  total dimension {t.total_dim}", report.format_table(t)]
    for idx, action in enumerate(ms.actions, start=1):
        ranks = {bd: _rank(m) for bd, m in action.items()}
        nonzero = {bd: r for bd, r in ranks.items() if r}
        lines.append(f"x_{idx}: rank by source bidegree {nonzero or '{}'}")
    lines.append(f"x_i^2 = 0: {ms.squares_vanish}   x_i x_j = x_j x_i: {ms.commute}")
    lines.append(f"free of rank one over A_{ms.n}: {ms.free_rank_one}")
    if ms.witness:
        lines.append(f"witness: generator {ms.witness[1]} at bidegree {ms.witness[0]}")
    out.emit(doc, "\n".join(lines))
    _save_plot(plot, t)


def _rank(m) -> int:
    from .f2 import rank

    return rank(m)


def cmd_psi(w: BraidWord, args, out: Output, plot: Optional[str]) -> None:
    c = build_complex(w, args.max_crossings)
    t = betti_table(c)
    bd = (0, w.exponent_sum - w.n_strands)
    nonzero = _psi_nonzero(c, t)
    doc = report.base_document(w)
    doc["psi"] = report.psi_json(bd, nonzero)
    lines = [f"psi({w}) at (i, j) = {bd}: {'nonzero' if nonzero else 'zero'}"]
    if args.mirror:
        m = mirror(w)
        mc = build_complex(m, args.max_crossings)
        mbd = (0, m.exponent_sum - m.n_strands)
        mnz = _psi_nonzero(mc, betti_table(mc))
        doc["psi"]["mirror"] = report.psi_json(mbd, mnz)
        lines.append(f"psi({m}) at (i, j) = {mbd}: {'nonzero' if mnz else 'zero'}")
    out.emit(doc, "\n".join(lines))
    _save_plot(plot, t, psi=bd)


def cmd_certify(w: BraidWord, args, out: Output, plot: Optional[str]) -> None:
    r = certify(w, args.max_crossings)
    doc = report.certify_document(r)
    stages = doc["stages"]
    lines = [f"certify {w}"]
    lines += [f"  {k:<20}{v}" for k, v in stages.items()]
    lines.append(f"  psi bidegree        {r.psi_bidegree}")
    if r.witness:
        lines.append(f"  witness             generator {r.witness[1]} at {r.witness[0]}")
    lines.append(f"verdict: {r.verdict.value}")
    if r.verdict.value == "CONSISTENT_WITH_TRIVIAL":
        lines.append("  (both veering conditions hold; only the identity braid is both)")
    out.emit(doc, "\n".join(lines))
    if r.table is not None:
        _save_plot(plot, r.table, psi=r.psi_bidegree)


def cmd_jones(w: BraidWord, args, out: Output, plot: Optional[str]) -> None:
    t = betti_table(build_complex(w, args.max_crossings))
    euler = graded_euler_characteristic(t)
    state_sum = kauffman_state_sum(w, args.max_crossings)
    doc = report.base_document(w)
    doc["betti"] = report.betti_rows(t)
    doc["jones"] = {
        "state_sum": report.poly_json(state_sum),
        "euler_characteristic": report.poly_json(euler),
        "agree": state_sum == euler,
    }
    out.emit(doc, report.jones_text(state_sum, euler))
    _save_plot(plot, t)
    if state_sum != euler:
        raise ConsistencyError("graded Euler characteristic differs from the state sum")


WORD_COMMANDS: dict[str, Callable] = {
    "kh": cmd_kh,
    "module": cmd_module,
    "psi": cmd_psi,
    "certify": cmd_certify,
    "jones": cmd_jones,
}


def _words(arg: str, stdin: Iterable[str]) -> Iterable[str]:
    if arg != "-":
        yield arg
        return
    for line in stdin:
        line = line.strip()
        if line and not line.startswith("#"):
            yield line


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit one JSON document per word")
    common.add_argument("--max-crossings", type=int, default=DEFAULT_MAX_CROSSINGS,
                        metavar="C", help="refuse diagrams with more crossings (default %(default)s)")
    common.add_argument("--quiet", action="store_true", help="suppress human-readable output")

    parser = argparse.ArgumentParser(
        prog="khbraid",
        description="Khovanov homology over F2 of braid closures, with the basepoint "
                    "module action and the transverse class psi.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    helps = {
        "kh": "Betti table of Kh",
        "module": "basepoint action matrices and the free-rank-one test",
        "psi": "bidegree and nonvanishing of the transverse class",
        "certify": "run the trivial-braid certification pipeline",
        "jones": "compare the graded Euler characteristic with the state sum",
    }
    for name, text in helps.items():
        p = sub.add_parser(name, parents=[common], help=text)
        p.add_argument("word", help='braid word such as "3: 1 -2 1", or - to read lines from stdin')
        p.add_argument("--plot", metavar="FILE", help="also save a Betti-table figure")
        if name == "psi":
            p.add_argument("--mirror", action="store_true", help="also evaluate the mirror braid")
    p = sub.add_parser("fibered", parents=[common], help="component counts and max Euler characteristic")
    p.add_argument("--n", type=int, required=True, metavar="K")
    return parser


def run(argv: Optional[list[str]] = None, stdin: Iterable[str] = sys.stdin) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.WARNING if args.quiet else logging.INFO,
                        format="%(name)s: %(message)s")
    out = Output(args)

    if args.command == "fibered":
        if args.n < 1:
            print("khbraid: --n must be >= 1", file=sys.stderr)
            return EXIT_PARSE
        ells = sorted(admissible_component_counts(args.n))
        chi = max_fibered_euler_char(args.n)
        doc = {"n": args.n, "admissible_components": ells, "max_euler_characteristic": chi}
        out.emit(doc, f"L_{args.n} = {{{', '.join(map(str, ells))}}}; max chi = {chi}")
        return EXIT_OK

    handler = WORD_COMMANDS[args.command]
    batch = args.word == "-"
    status = EXIT_OK
    for index, text in enumerate(_words(args.word, stdin)):
        try:
            w = parse_braid(text)
            handler(w, args, out, _plot_path(args, w, index, batch))
        except BraidParseError as exc:
            print(f"khbraid: parse error: {exc}", file=sys.stderr)
            status = max(status, EXIT_PARSE)
        except CapExceededError as exc:
            print(f"khbraid: {exc}", file=sys.stderr)
            status = max(status, EXIT_CAP)
        except ConsistencyError as exc:
            print(f"khbraid: internal consistency failure: {exc}", file=sys.stderr)
            return EXIT_CONSISTENCY
    return status


def main() -> None:
    sys.exit(run())
