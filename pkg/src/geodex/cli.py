"""Command-line driver: ``geodex moore|check|search|construct``.

Exit codes: 0 success, 1 a property check failed, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import logging
import sys
import time
from pathlib import Path
from typing import Sequence, TextIO

from geodex import io
from geodex.analysis import lemma_suite, outlier_report
from geodex.constructions import amalgamate, complete_digraph, directed_cycle, vertex_split
from geodex.digraph import Digraph, degrees, geodecity_witness, moore_bound, regularity
from geodex.errors import GeodexError
from geodex.search.engine import DiregularFilter, SearchSpec, enumerate_digraphs

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        raise _UsageError(f"{self.format_usage()}{self.prog}: error: {message}")


class _UsageError(Exception):
    pass


def _fmt_set(s) -> str:
    return "{" + ", ".join(map(str, sorted(s))) + "}"


def _csv_ints(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def check_report(g: Digraph, d: int, k: int, excess_expected: int | None = None) -> tuple[str, bool]:
    """Render the text report for ``check``; the flag is True when every check passed."""
    lines = []
    ok = True
    out, inn = degrees(g)
    eps = g.n - moore_bound(d, k)
    reg = regularity(g, d)
    lines.append(f"order: {g.n}")
    lines.append(f"parameters: d={d} k={k} moore_bound={moore_bound(d, k)}")
    lines.append("out-degrees: " + " ".join(map(str, out)))
    lines.append("in-degrees: " + " ".join(map(str, inn)))
    lines.append("in-degree sequence: " + " ".join(map(str, reg.in_degree_sequence)))
    lines.append(f"out-regular: {'yes' if reg.out_regular else 'no'}")
    lines.append(f"diregular: {'yes' if reg.diregular else 'no'}")
    if min(out) < d:
        lines.append(f"minimum out-degree: {min(out)} < {d} FAIL")
        ok = False
    lines.append(f"excess: {eps}")
    if excess_expected is not None and excess_expected != eps:
        lines.append(f"expected excess {excess_expected}: FAIL")
        ok = False
    w = geodecity_witness(g, k)
    if w is not None:
        lines.append(f"{k}-geodetic: no")
        lines.append(f"  witness {w.source} -> {w.target}")
        lines.append("  walk a: " + " ".join(map(str, w.walk_a)))
        lines.append("  walk b: " + " ".join(map(str, w.walk_b)))
        return "\n".join(lines) + "\n", False
    lines.append(f"{k}-geodetic: yes")
    rep = outlier_report(g, d, k)
    lines.append("S: " + _fmt_set(rep.s_set))
    lines.append("S': " + _fmt_set(rep.s_prime_set))
    lines.append("outlier sets:")
    for u, o in enumerate(rep.outliers):
        lines.append(f"  O({u}) = {_fmt_set(o)}")
    lines.append("omega census:")
    for key, count in rep.omega_census.items():
        lines.append(f"  {_fmt_set(key)}: {count}")
    lines.append("lemmas:")
    if min(out) < d:
        lines.append("  (skipped: minimum out-degree below d)")
        return "\n".join(lines) + "\n", ok
    for v in lemma_suite(g, d, k):
        if v.holds and not v.hypotheses_hold:
            status = "holds (hypotheses not met)"
        else:
            status = "holds" if v.holds else "FAILS"
        extra = ""
        if v.witness is not None:
            extra = " witness " + " ".join(f"{a}={b}" for a, b in v.witness.items())
        lines.append(f"  {v.lemma_id.value}: {status}{extra}")
        ok = ok and v.holds
    return "\n".join(lines) + "\n", ok


def _build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="geodex", description="k-geodetic digraphs near the directed Moore bound")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    m = sub.add_parser("moore", help="print the Moore bound M(d,k)")
    m.add_argument("--d", type=int, required=True)
    m.add_argument("--k", type=int, required=True)

    c = sub.add_parser("check", help="analyse a digraph file")
    c.add_argument("file")
    c.add_argument("--d", type=int, required=True)
    c.add_argument("--k", type=int, required=True)
    c.add_argument("--excess", type=int)

    s = sub.add_parser("search", help="enumerate (d,k,+eps)-digraphs up to isomorphism")
    s.add_argument("--d", type=int, required=True)
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--excess", type=int, required=True)
    s.add_argument("--in-degree-seq", type=_csv_ints)
    s.add_argument("--filter", choices=[f.value for f in DiregularFilter], default="all")
    s.add_argument("--count-only", action="store_true")
    s.add_argument("--max-results", type=int)
    s.add_argument("--out", type=Path)
    s.add_argument("--threads", type=int, default=1)

    con = sub.add_parser("construct", help="build or transform digraphs")
    csub = con.add_subparsers(dest="kind", required=True, parser_class=_Parser)
    for name in ("complete", "cycle"):
        q = csub.add_parser(name)
        q.add_argument("m", type=int)
    sp = csub.add_parser("split")
    sp.add_argument("file")
    sp.add_argument("--vertex", type=int, required=True)
    sp.add_argument("--r", type=int, required=True)
    sp.add_argument("--redirect", type=_csv_ints)
    am = csub.add_parser("amalgamate")
    am.add_argument("file")
    am.add_argument("--u1", type=int, required=True)
    am.add_argument("--u2", type=int, required=True)
    return p


def _cmd_search(args, stdout: TextIO) -> int:
    spec = SearchSpec(
        args.d,
        args.k,
        args.excess,
        in_degree_sequence=tuple(args.in_degree_seq) if args.in_degree_seq else None,
        diregular_filter=DiregularFilter(args.filter),
        count_only=args.count_only and args.out is None,
        max_results=args.max_results,
    )
    start = time.perf_counter()
    res = enumerate_digraphs(spec, workers=args.threads)
    logging.getLogger("geodex").info(
        "search finished in %.2fs, %d nodes", time.perf_counter() - start, res.nodes
    )
    if args.out is not None:
        args.out.mkdir(parents=True, exist_ok=True)
        for g, form in zip(res.digraphs, res.forms):
            io.write(g, args.out / f"{form.hex()}.gdx")
    if args.count_only or args.out is not None:
        stdout.write(f"{res.count}\n")
        return EXIT_OK
    for i, (g, form) in enumerate(zip(res.digraphs, res.forms)):
        stdout.write(f"# class {i} canonical {form.hex()}\n")
        stdout.write(io.render(g))
    stdout.write(f"# count {res.count} all_diregular {'yes' if res.all_diregular else 'no'}\n")
    return EXIT_OK


def _cmd_construct(args, stdout: TextIO) -> int:
    if args.kind == "complete":
        g = complete_digraph(args.m)
    elif args.kind == "cycle":
        g = directed_cycle(args.m)
    elif args.kind == "split":
        g = vertex_split(io.read(args.file), args.vertex, args.r, args.redirect)
    else:
        g, mapping = amalgamate(io.read(args.file), args.u1, args.u2)
        stdout.write("# mapping " + " ".join(f"{a}:{b}" for a, b in enumerate(mapping)) + "\n")
    stdout.write(io.render(g))
    return EXIT_OK


def run_cli(argv: Sequence[str] | None = None, stdout: TextIO | None = None,
            stderr: TextIO | None = None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        args = _build_parser().parse_args(argv)
    except _UsageError as exc:
        stderr.write(f"{exc}\n")
        return EXIT_USAGE
    except SystemExit as exc:  # --help
        return EXIT_OK if exc.code in (0, None) else EXIT_USAGE
    if args.verbose:
        logging.basicConfig(level=logging.INFO, stream=stderr)
    try:
        if args.command == "moore":
            stdout.write(f"{moore_bound(args.d, args.k)}\n")
            return EXIT_OK
        if args.command == "check":
            text, ok = check_report(io.read(args.file), args.d, args.k, args.excess)
            stdout.write(text)
            return EXIT_OK if ok else EXIT_FAIL
        if args.command == "search":
            return _cmd_search(args, stdout)
        return _cmd_construct(args, stdout)
    except (GeodexError, OSError) as exc:
        stderr.write(f"geodex: error: {exc}\n")
        return EXIT_USAGE


def main() -> None:
    sys.exit(run_cli())


if __name__ == "__main__":
    main()
