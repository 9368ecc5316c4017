"""Command-line front end: ``edr <command> [options] <files...>``.

Exit status: 0 success, 1 negative answer (not isomorphic, no solution,
verification failed), 2 bad input, 3 internal error.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
import traceback

from .errors import CapabilityError, InvariantError, ParseError
from .fpmod import (
    ChainComplex,
    Presentation,
    cokermx,
    decompose,
    homology,
    kermx,
    mxrank,
    solve_xm_eq_b,
)
from .matrix import Matrix
from .rings import ring_from_tag
from .smith import STRATEGIES, SmithResult, default_strategy, smith, verify_smith

EXIT_OK, EXIT_NO, EXIT_INPUT, EXIT_INTERNAL = 0, 1, 2, 3
FULL_LIMIT = 10

_TOKEN = re.compile(r"\[[^\]]*\]|\S+")


# -- matrix files -------------------------------------------------------------------------

def _content_lines(text):
    """Yield (line number, line) for lines that are neither blank nor comments."""
    for no, line in enumerate(text.splitlines(), start=1):
        s = line.strip()
        if s and not s.startswith("#"):
            yield no, line


def parse_matrix(text: str) -> Matrix:
    """Parse ``ring <tag>`` / ``<m> <n>`` / m rows of n tokens."""
    lines = _content_lines(text)
    try:
        no, line = next(lines)
    except StopIteration:
        raise ParseError("empty matrix file") from None
    head = line.split()
    if len(head) != 2 or head[0] != "ring":
        raise ParseError("expected 'ring <tag>'", no, 1)
    try:
        ring = ring_from_tag(head[1])
    except ParseError as exc:
        raise ParseError(str(exc), no, line.index(head[1]) + 1) from None
    try:
        no, line = next(lines)
    except StopIteration:
        raise ParseError("missing dimension line", no + 1, 1) from None
    dims = line.split()
    if len(dims) != 2 or not all(d.isdigit() for d in dims):
        raise ParseError("expected '<m> <n>' with nonnegative integers", no, 1)
    m, n = int(dims[0]), int(dims[1])
    rows = []
    if n > 0:
        for i in range(m):
            try:
                no, line = next(lines)
            except StopIteration:
                raise ParseError(f"expected {m} rows, found {i}", no + 1, 1) from None
            toks = list(_TOKEN.finditer(line))
            if len(toks) != n:
                col = toks[n].start() + 1 if len(toks) > n else len(line.rstrip()) + 1
                raise ParseError(f"expected {n} entries, found {len(toks)}", no, col)
            row = []
            for t in toks:
                try:
                    row.append(ring.parse(t.group()))
                except (ParseError, ValueError) as exc:
                    msg = str(exc) if isinstance(exc, ParseError) else f"bad entry {t.group()!r}"
                    raise ParseError(msg, no, t.start() + 1) from None
            rows.append(row)
    else:
        rows = [[] for _ in range(m)]
    extra = next(lines, None)
    if extra is not None:
        raise ParseError("unexpected content after the last row", extra[0], 1)
    return Matrix.from_rows(ring, rows, n)


def format_matrix(m: Matrix) -> str:
    fmt = m.ring.format
    out = [f"ring {m.ring.tag}", f"{m.nrows} {m.ncols}"]
    if m.ncols:
        out += [" ".join(fmt(x) for x in row) for row in m.rows()]
    return "\n".join(out) + "\n"


def matrix_to_json(m: Matrix):
    return {"m": m.nrows, "n": m.ncols, "entries": [m.ring.to_json(x) for x in m.entries]}


def matrix_from_json(ring, obj, what="matrix") -> Matrix:
    try:
        m, n, entries = obj["m"], obj["n"], obj["entries"]
    except (KeyError, TypeError):
        raise ParseError(f"{what} needs keys 'm', 'n' and 'entries'") from None
    if not (isinstance(m, int) and isinstance(n, int) and m >= 0 and n >= 0):
        raise ParseError(f"{what}: dimensions must be nonnegative integers")
    if not isinstance(entries, list) or len(entries) != m * n:
        raise ParseError(f"{what}: expected {m * n} entries")
    try:
        vals = [ring.from_json(x) for x in entries]
    except ValueError as exc:
        raise ParseError(f"{what}: {exc}") from None
    return Matrix(ring, m, n, vals)


def _load_json(text):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.lineno, exc.colno) from None


def parse_complex(text: str) -> ChainComplex:
    obj = _load_json(text)
    if not isinstance(obj, dict) or "ring" not in obj or "boundaries" not in obj:
        raise ParseError("complex file needs keys 'ring' and 'boundaries'")
    ring = ring_from_tag(str(obj["ring"]))
    if not isinstance(obj["boundaries"], list):
        raise ParseError("'boundaries' must be a list")
    mats = [matrix_from_json(ring, b, f"boundary {k}")
            for k, b in enumerate(obj["boundaries"], start=1)]
    try:
        return ChainComplex(ring, mats)
    except ValueError as exc:
        raise ParseError(f"invalid complex: {exc}") from None


def format_complex(c: ChainComplex) -> str:
    return json.dumps({"ring": c.ring.tag,
                       "boundaries": [matrix_to_json(b) for b in c.boundaries]}, indent=1) + "\n"


def _read(path):
    try:
        if path == "-":
            return sys.stdin.read()
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from None


def _read_matrix(path):
    text = _read(path)
    try:
        return parse_matrix(text)
    except ParseError as exc:
        raise ParseError(f"{path}: {exc}") from None


# -- output helpers -----------------------------------------------------------------------

def _fmt_list(ring, xs):
    return "[" + ", ".join(ring.format(x) for x in xs) + "]"


def _block(m: Matrix, indent="  "):
    if m.nrows == 0 or m.ncols == 0:
        return [f"{indent}({m.nrows}x{m.ncols})"]
    cells = [[m.ring.format(x) for x in row] for row in m.rows()]
    width = max(len(c) for row in cells for c in row)
    return [indent + " ".join(c.rjust(width) for c in row) for row in cells]


def _emit(args, text_lines, payload):
    if args.json:
        print(json.dumps(payload, sort_keys=True))
    else:
        for line in text_lines:
            print(line)


# -- commands -----------------------------------------------------------------------------

def cmd_smith(args):
    for path in args.files:
        m = _read_matrix(path)
        strategy = args.strategy or default_strategy(m.ring)
        r = smith(m, strategy)
        report = verify_smith(m, r)
        if not report.ok:
            raise InvariantError(f"{path}: Smith result failed {', '.join(report.failures())}")
        show = args.full or max(m.shape) <= FULL_LIMIT
        lines = []
        if len(args.files) > 1:
            lines.append(f"== {path}")
        lines.append(f"d: {_fmt_list(m.ring, r.d)}")
        payload = {"ring": m.ring.tag, "strategy": strategy,
                   "d": [m.ring.to_json(x) for x in r.d]}
        if show:
            lines += ["P:"] + _block(r.P) + ["Q:"] + _block(r.Q)
            payload["P"] = matrix_to_json(r.P)
            payload["Q"] = matrix_to_json(r.Q)
        else:
            lines.append("P, Q: suppressed above 10x10 (use --full)")
        _emit(args, lines, payload)
    return EXIT_OK


def cmd_verify(args):
    m = _read_matrix(args.matrix)
    obj = _load_json(_read(args.result))
    ring = m.ring
    if not isinstance(obj, dict) or not {"d", "P", "Q"} <= obj.keys():
        raise ParseError(f"{args.result}: result needs keys 'd', 'P' and 'Q' (run smith --json --full)")
    if "ring" in obj and obj["ring"] != ring.tag:
        raise ParseError(f"{args.result}: ring {obj['ring']!r} does not match {ring.tag!r}")
    try:
        d = tuple(ring.from_json(x) for x in obj["d"])
    except (ValueError, TypeError) as exc:
        raise ParseError(f"{args.result}: bad invariant factor: {exc}") from None
    r = SmithResult(matrix_from_json(ring, obj["P"], "P"), d, matrix_from_json(ring, obj["Q"], "Q"))
    report = verify_smith(m, r)
    clauses = {c: bool(getattr(report, c)) for c in report.CLAUSES}
    lines = [f"{c}: {'ok' if v else 'FAIL'}" for c, v in clauses.items()]
    lines.append("verified" if report.ok else "not verified")
    _emit(args, lines, {"ok": report.ok, "clauses": clauses})
    return EXIT_OK if report.ok else EXIT_NO


def cmd_rank(args):
    for path in args.files:
        m = _read_matrix(path)
        r = mxrank(m, args.strategy)
        prefix = f"{path}: " if len(args.files) > 1 else ""
        _emit(args, [f"{prefix}rank: {r}"], {"rank": r})
    return EXIT_OK


def _matrix_command(args, fn, key):
    for path in args.files:
        out = fn(_read_matrix(path), args.strategy)
        _emit(args, format_matrix(out).splitlines(), {key: matrix_to_json(out)})
    return EXIT_OK


def cmd_kernel(args):
    return _matrix_command(args, kermx, "kernel")


def cmd_cokernel(args):
    return _matrix_command(args, cokermx, "cokernel")


def cmd_solve(args):
    m, b = _read_matrix(args.matrix), _read_matrix(args.rhs)
    if m.ring != b.ring:
        raise ParseError("M and B are over different rings")
    if m.ncols != b.ncols:
        raise ParseError(f"M has {m.ncols} columns but B has {b.ncols}")
    x = solve_xm_eq_b(m, b, args.strategy)
    if x is None:
        _emit(args, ["no solution"], {"solvable": False})
        return EXIT_NO
    _emit(args, format_matrix(x).splitlines(), {"solvable": True, "X": matrix_to_json(x)})
    return EXIT_OK


def cmd_iso(args):
    a, b = _read_matrix(args.first), _read_matrix(args.second)
    if a.ring != b.ring:
        raise ParseError("presentations are over different rings")
    da = decompose(Presentation(a), args.strategy)
    db = decompose(Presentation(b), args.strategy)
    same = da == db
    text = f"isomorphic: {da}" if same else f"not isomorphic: {da} vs {db}"
    _emit(args, [text], {"isomorphic": same, "first": da.to_json(), "second": db.to_json()})
    return EXIT_OK if same else EXIT_NO


def cmd_homology(args):
    text = _read(args.file)
    try:
        c = parse_complex(text)
    except ParseError as exc:
        raise ParseError(f"{args.file}: {exc}") from None
    if args.degree is not None and args.degree < 0:
        raise ParseError("degree must be nonnegative")
    degrees = range(c.top + 1) if args.degree is None else [args.degree]
    hs = [(k, homology(c, k, args.strategy)) for k in degrees]
    _emit(args, [f"H{k}: {h}" for k, h in hs], {f"H{k}": h.to_json() for k, h in hs})
    return EXIT_OK


# -- argument parsing -----------------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"edr: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_INPUT)


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--strategy", choices=STRATEGIES,
                        help="Smith algorithm (default: euclidean when available, else kaplansky)")
    common.add_argument("--json", action="store_true", help="machine-readable output")

    p = _Parser(prog="edr", description="Exact linear algebra over elementary divisor rings.")
    p.add_argument("--selftest", action="store_true",
                   help="run the built-in property checks (seed from EDR_SEED)")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)

    s = sub.add_parser("smith", parents=[common], help="Smith normal form with transition matrices")
    s.add_argument("--full", action="store_true", help="print P and Q even above 10x10")
    s.add_argument("files", nargs="+")
    s.set_defaults(func=cmd_smith)

    s = sub.add_parser("verify", parents=[common], help="re-check a stored Smith result")
    s.add_argument("matrix")
    s.add_argument("result", help="JSON written by 'smith --json'")
    s.set_defaults(func=cmd_verify)

    for name, func, hlp in (("rank", cmd_rank, "number of nonzero invariant factors"),
                            ("kernel", cmd_kernel, "matrix whose rows span {x : xM = 0}"),
                            ("cokernel", cmd_cokernel, "matrix whose columns span {y : My = 0}")):
        s = sub.add_parser(name, parents=[common], help=hlp)
        s.add_argument("files", nargs="+")
        s.set_defaults(func=func)

    s = sub.add_parser("solve", parents=[common], help="solve X M = B")
    s.add_argument("matrix")
    s.add_argument("rhs")
    s.set_defaults(func=cmd_solve)

    s = sub.add_parser("iso", parents=[common], help="decide isomorphism of presented modules")
    s.add_argument("first")
    s.add_argument("second")
    s.set_defaults(func=cmd_iso)

    s = sub.add_parser("homology", parents=[common], help="homology of a chain complex")
    g = s.add_mutually_exclusive_group()
    g.add_argument("--all", action="store_true", help="every degree (the default)")
    g.add_argument("--degree", type=int)
    s.add_argument("file")
    s.set_defaults(func=cmd_homology)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.selftest:
        from .selftest import run_selftest
        seed = os.environ.get("EDR_SEED")
        try:
            seed = int(seed) if seed else None
        except ValueError:
            print(f"edr: error: EDR_SEED must be an integer, got {seed!r}", file=sys.stderr)
            return EXIT_INPUT
        return EXIT_OK if run_selftest(seed) else EXIT_INTERNAL
    if args.command is None:
        parser.print_usage(sys.stderr)
        print("edr: error: a command is required", file=sys.stderr)
        return EXIT_INPUT
    try:
        return args.func(args)
    except (ParseError, CapabilityError) as exc:
        print(f"edr: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except InvariantError as exc:
        print(f"edr: internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except Exception as exc:  # anything else is a bug
        print(f"edr: internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        traceback.print_exc(file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
