"""Command-line interface: solve problems, sweep N, check golden tables.

Commands
--------
``solve``
    One row per truncation order N with a column per requested method;
    missing roots render as ``--``.
``table``
    Recompute one of the stored golden reference tables and report a
    per-cell pass/fail at one unit in each cell's last printed digit.
``exact``
    Print a benchmark eigenvalue from the high-precision oracle.
``convert``
    Nondimensionalize a problem file and print the scaled image.

Exit status: 0 all requested values produced; 1 usage or runtime error;
2 some cells had no root in the bracket (rendered ``--``); 3 golden-table
mismatch.

Numbers are computed at a working accuracy of at least 25 significant
digits and rounded (half-even) only at render time; CSV and markdown
renderings of one run contain identical numeric strings.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from decimal import ROUND_HALF_EVEN, Decimal, localcontext
from fractions import Fraction

from . import goldens
from .estimates import (
    METHOD_A1,
    METHOD_A2,
    METHOD_A3,
    METHOD_EXACT,
    METHOD_RR,
    DEFAULT_SELECTION,
    RootSelection,
)
from .model import PotentialSpec, load_problem, nondimensionalize, require_unit_interval
from .oracle import exact_box, exact_linear
from .poly import Rational, format_rational
from .rayleigh_ritz import solve_rr
from .rootfind import mpf_to_rational
from .series import solve_a1
from .variational import solve_a2, solve_a3

N_MIN, N_MAX = 3, 64
DIGITS_MIN, DIGITS_MAX = 6, 40
DEFAULT_DIGITS = 10
WORKING_DIGITS = 25

METHOD_ORDER = (METHOD_A1, METHOD_A2, METHOD_A3, METHOD_RR, METHOD_EXACT)
FORMATS = ("md", "csv", "json")


class UsageError(Exception):
    """Invalid flag value or combination; maps to exit status 1."""


class _Parser(argparse.ArgumentParser):
    """argparse variant whose usage failures exit with status 1, not 2."""

    def error(self, message: str) -> None:  # noqa: D102 - argparse override
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


@dataclass(frozen=True)
class RunConfig:
    """Fully parsed configuration of one ``solve`` run."""

    methods: tuple[str, ...]
    potential: PotentialSpec
    n_values: tuple[int, ...]
    state: int = 0
    bracket: tuple[Rational, Rational] | None = None
    digits: int = DEFAULT_DIGITS
    format: str = "md"
    selection: RootSelection = field(default=DEFAULT_SELECTION)
    serial: bool = False

    def __post_init__(self) -> None:
        for n in self.n_values:
            if not N_MIN <= n <= N_MAX:
                raise UsageError(f"N={n} outside [{N_MIN}, {N_MAX}]")
        if not DIGITS_MIN <= self.digits <= DIGITS_MAX:
            raise UsageError(f"--digits {self.digits} outside [{DIGITS_MIN}, {DIGITS_MAX}]")
        if self.format not in FORMATS:
            raise UsageError(f"unknown format {self.format!r}")
        unknown = set(self.methods) - set(METHOD_ORDER)
        if unknown:
            raise UsageError(f"unknown methods: {', '.join(sorted(unknown))}")


# ---------------------------------------------------------------------------
# flag parsing helpers


def parse_rational_flag(text: str, flag: str) -> Rational:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"{flag} expects a rational number, got {text!r}: {exc}") from None


def parse_n_values(text: str) -> tuple[int, ...]:
    """Parse an N specification: ``7``, ``4..13``, or ``4,6,8``."""
    text = text.strip()
    try:
        if ".." in text:
            lo_s, hi_s = text.split("..", 1)
            lo, hi = int(lo_s), int(hi_s)
            if lo > hi:
                raise UsageError(f"--n range {text!r} is empty")
            values = tuple(range(lo, hi + 1))
        else:
            values = tuple(int(part) for part in text.split(","))
    except ValueError:
        raise UsageError(f"--n expects an integer, a..b, or a comma list, got {text!r}") from None
    if not values:
        raise UsageError("--n produced no values")
    return values


def parse_bracket_flag(text: str) -> tuple[Rational, Rational]:
    parts = text.split(",")
    if len(parts) != 2:
        raise UsageError(f"--bracket expects lo,hi, got {text!r}")
    lo = parse_rational_flag(parts[0], "--bracket")
    hi = parse_rational_flag(parts[1], "--bracket")
    if not lo < hi:
        raise UsageError(f"--bracket needs lo < hi, got {text!r}")
    return lo, hi


def parse_methods_flag(text: str) -> tuple[str, ...]:
    requested = {part.strip().upper() for part in text.split(",") if part.strip()}
    if not requested:
        raise UsageError("--methods is empty")
    unknown = requested - set(METHOD_ORDER)
    if unknown:
        choices = ", ".join(m.lower() for m in METHOD_ORDER)
        raise UsageError(
            f"unknown methods: {', '.join(sorted(unknown)).lower()} (choose from {choices})"
        )
    return tuple(m for m in METHOD_ORDER if m in requested)


def resolve_potential(args: argparse.Namespace) -> PotentialSpec:
    if getattr(args, "potential", None):
        problem = load_problem(args.potential)
        return require_unit_interval(nondimensionalize(problem))
    lam = parse_rational_flag(args.lam, "--lambda")
    return PotentialSpec.linear(lam)


# ---------------------------------------------------------------------------
# rendering


def format_significant(value: Rational, digits: int) -> str:
    """Render an exact rational at ``digits`` significant digits, half-even."""
    with localcontext() as ctx:
        ctx.prec = digits
        ctx.rounding = ROUND_HALF_EVEN
        quotient = Decimal(value.numerator) / Decimal(value.denominator)
    return format(quotient, "f")


def format_fixed(value: Rational, decimals: int) -> str:
    """Render an exact rational with a fixed decimal count, half-even."""
    with localcontext() as ctx:
        ctx.prec = 50
        ctx.rounding = ROUND_HALF_EVEN
        quotient = Decimal(value.numerator) / Decimal(value.denominator)
        exponent = Decimal(1).scaleb(-decimals)
        return format(quotient.quantize(exponent), "f")


def render_markdown(headers: list[str], rows: list[list[str]]) -> str:
    lines = [
        "| " + " | ".join(headers) + " |",
        "|" + "|".join("---" for _ in headers) + "|",
    ]
    lines.extend("| " + " | ".join(row) + " |" for row in rows)
    return "\n".join(lines)


def render_csv(headers: list[str], rows: list[list[str]]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(headers)
    writer.writerows(rows)
    return buffer.getvalue().rstrip("\n")


def render_table(fmt: str, headers: list[str], rows: list[list[str]], meta: dict) -> str:
    if fmt == "md":
        return render_markdown(headers, rows)
    if fmt == "csv":
        return render_csv(headers, rows)
    payload = dict(meta)
    payload["columns"] = headers

    def json_cell(header: str, cell: str):
        if cell == goldens.NO_ROOT:
            return None
        if header == "N":
            return int(cell)
        return cell

    payload["rows"] = [
        {header: json_cell(header, cell) for header, cell in zip(headers, row)}
        for row in rows
    ]
    return json.dumps(payload, indent=2)


def emit(text: str, out_path: str | None) -> None:
    if out_path:
        with open(out_path, "w", encoding="utf-8") as handle:
            handle.write(text + "\n")
        print(f"wrote {out_path}", file=sys.stderr)
    else:
        print(text)


# ---------------------------------------------------------------------------
# solve


def method_columns(methods: tuple[str, ...]) -> list[str]:
    columns = []
    for method in methods:
        if method == METHOD_A1:
            columns.append("eps(A1)")
        elif method == METHOD_A2:
            columns.extend(["eps(A2)", "W(A2)"])
        elif method == METHOD_A3:
            columns.append("eps(A3)")
        elif method == METHOD_RR:
            columns.append("eps(RR)")
        elif method == METHOD_EXACT:
            columns.append("eps(exact)")
    return columns


def _exact_eigenvalue(potential: PotentialSpec, state: int, digits: int) -> Rational:
    from .oracle import DEFAULT_DIGITS as ORACLE_DIGITS  # local alias, keeps one source

    working = max(ORACLE_DIGITS, digits + 5)
    if potential.kind == "zero":
        value = exact_box(state, digits=working)
    elif potential.kind == "linear":
        value = exact_linear(potential.lam, state, digits=working)
    else:
        raise UsageError("the exact benchmark only covers flat and linear potentials")
    return mpf_to_rational(value)


def compute_cells(cfg: RunConfig, n: int) -> dict[str, Rational | None]:
    """All requested numbers for one truncation order N."""
    tol = Fraction(1, 10 ** max(WORKING_DIGITS + 1, cfg.digits + 3))
    cells: dict[str, Rational | None] = {}
    for method in cfg.methods:
        if method == METHOD_A1:
            est = solve_a1(cfg.potential, n, cfg.bracket, cfg.state, cfg.selection, tol)
            cells["eps(A1)"] = None if est is None else est.eps_rational()
        elif method == METHOD_A2:
            est = solve_a2(cfg.potential, n, cfg.bracket, cfg.state, cfg.selection, tol)
            cells["eps(A2)"] = None if est is None else est.eps_rational()
            cells["W(A2)"] = None if est is None else est.w_exact
        elif method == METHOD_A3:
            est = solve_a3(cfg.potential, n, cfg.bracket, cfg.state, cfg.selection, tol)
            cells["eps(A3)"] = None if est is None else est.eps_rational()
        elif method == METHOD_RR:
            est = solve_rr(cfg.potential, n, cfg.bracket, cfg.state, tol)
            cells["eps(RR)"] = None if est is None else est.eps_rational()
        elif method == METHOD_EXACT:
            cells["eps(exact)"] = _exact_eigenvalue(cfg.potential, cfg.state, cfg.digits)
    return cells


def compute_rows(cfg: RunConfig) -> list[dict[str, Rational | None]]:
    """One cell mapping per N, in order; rows run in parallel by default."""
    if cfg.serial or len(cfg.n_values) == 1:
        return [compute_cells(cfg, n) for n in cfg.n_values]
    with ThreadPoolExecutor(max_workers=min(8, len(cfg.n_values))) as pool:
        return list(pool.map(lambda n: compute_cells(cfg, n), cfg.n_values))


def cmd_solve(args: argparse.Namespace) -> int:
    cfg = RunConfig(
        methods=parse_methods_flag(args.methods),
        potential=resolve_potential(args),
        n_values=parse_n_values(args.n),
        state=args.state,
        bracket=parse_bracket_flag(args.bracket) if args.bracket else None,
        digits=args.digits,
        format=args.format,
        selection=RootSelection.parse(args.select),
        serial=args.serial,
    )
    columns = method_columns(cfg.methods)
    rows_raw = compute_rows(cfg)
    headers = ["N", *columns]
    rows = []
    missing = False
    for n, cells in zip(cfg.n_values, rows_raw):
        row = [str(n)]
        for column in columns:
            value = cells[column]
            if value is None:
                missing = True
                row.append(goldens.NO_ROOT)
            else:
                row.append(format_significant(value, cfg.digits))
        rows.append(row)
    meta = {
        "command": "solve",
        "potential": cfg.potential.describe(),
        "state": cfg.state,
        "digits": cfg.digits,
    }
    emit(render_table(cfg.format, headers, rows, meta), args.out)
    return 2 if missing else 0


# ---------------------------------------------------------------------------
# table


def cmd_table(args: argparse.Namespace) -> int:
    table = goldens.TABLES.get(args.id)
    if table is None:
        raise UsageError(f"no golden table {args.id}; choose from 1..4")

    def row_cells(n: int) -> list[Rational | None]:
        values: list[Rational | None] = []
        for column in table.columns:
            cfg = RunConfig(
                methods=(column.method,),
                potential=PotentialSpec.linear(column.lam),
                n_values=(n,),
                serial=True,
            )
            cells = compute_cells(cfg, n)
            key = "W(A2)" if column.quantity == "w" else f"eps({column.method})"
            values.append(cells[key])
        return values

    if args.serial:
        computed = [row_cells(n) for n in table.n_values]
    else:
        with ThreadPoolExecutor(max_workers=min(8, len(table.n_values))) as pool:
            computed = list(pool.map(row_cells, table.n_values))

    headers = ["N", "column", "golden", "computed", "status"]
    rows = []
    failures = 0
    for i, n in enumerate(table.n_values):
        for j, column in enumerate(table.columns):
            golden = table.cells[i][j]
            value = computed[i][j]
            ok = goldens.cell_matches(golden, value)
            failures += 0 if ok else 1
            if value is None:
                shown = goldens.NO_ROOT
            elif golden == goldens.NO_ROOT:
                shown = format_significant(value, 12)
            else:
                shown = format_fixed(value, _decimals_of(golden))
            rows.append([str(n), column.label, golden, shown, "ok" if ok else "FAIL"])
    total = len(table.n_values) * len(table.columns)
    summary = f"table {table.table_id}: {total - failures}/{total} cells match"
    meta = {"command": "table", "table": table.table_id, "title": table.title, "summary": summary}
    body = render_table(args.format, headers, rows, meta)
    if args.format != "json":
        body = f"{body}\n{summary}"
    emit(body, args.out)
    return 3 if failures else 0


def _decimals_of(golden: str) -> int:
    parts = golden.split(".")
    return len(parts[1]) if len(parts) == 2 else 0


# ---------------------------------------------------------------------------
# exact / convert


def cmd_exact(args: argparse.Namespace) -> int:
    if not DIGITS_MIN <= args.digits <= DIGITS_MAX:
        raise UsageError(f"--digits {args.digits} outside [{DIGITS_MIN}, {DIGITS_MAX}]")
    lam = parse_rational_flag(args.lam, "--lambda")
    potential = PotentialSpec.linear(lam)
    value = _exact_eigenvalue(potential, args.state, args.digits)
    print(format_significant(value, args.digits))
    return 0


def cmd_convert(args: argparse.Namespace) -> int:
    problem = load_problem(args.path)
    scaled = nondimensionalize(problem)
    info = {
        "command": "convert",
        "length": format_rational(problem.length),
        "energy_scale": format_rational(scaled.energy_scale),
        "q_interval": [format_rational(scaled.q1), format_rational(scaled.q2)],
        "potential_coeffs": list(scaled.potential.v.coeff_strings()),
        "unit_interval_ready": scaled.q1 == 0,
    }
    if args.format == "json":
        emit(json.dumps(info, indent=2), args.out)
        return 0
    lines = [
        f"box length L = {info['length']}",
        f"energy scale 2mL^2/hbar^2 = {info['energy_scale']} (eps = scale * E)",
        f"scaled interval q in [{info['q_interval'][0]}, {info['q_interval'][1]}]",
        f"scaled potential v(q) = {scaled.potential.v}",
        f"unit-interval solvers applicable: {'yes' if info['unit_interval_ready'] else 'no'}",
    ]
    emit("\n".join(lines), args.out)
    return 0


# ---------------------------------------------------------------------------
# entry point


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="boxeig", description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command", required=True)

    solve = sub.add_parser("solve", help="estimate eigenvalues across truncation orders")
    group = solve.add_mutually_exclusive_group()
    group.add_argument("--lambda", dest="lam", default="0", help="linear-ramp coupling (rational)")
    group.add_argument("--potential", help="problem file to nondimensionalize and solve")
    solve.add_argument("--methods", default="a1,a2,a3", help="comma list from a1,a2,a3,rr,exact")
    solve.add_argument("--n", default="4..13", help="orders: one integer, a..b, or a comma list")
    solve.add_argument("--state", type=int, default=0, help="eigenstate index (0 = ground)")
    solve.add_argument("--bracket", help="root search interval lo,hi (rationals)")
    solve.add_argument("--digits", type=int, default=DEFAULT_DIGITS, help="significant digits to print")
    solve.add_argument("--format", choices=FORMATS, default="md")
    solve.add_argument("--select", default="default", help="root policy: default|smallest|nearest:<x>|min-w")
    solve.add_argument("--serial", action="store_true", help="compute rows sequentially")
    solve.add_argument("--out", help="write the rendered table to a file")
    solve.set_defaults(func=cmd_solve)

    table = sub.add_parser("table", help="recompute a stored golden table and diff per cell")
    table.add_argument("id", type=int, help="golden table id (1-4)")
    table.add_argument("--format", choices=FORMATS, default="md")
    table.add_argument("--serial", action="store_true", help="compute rows sequentially")
    table.add_argument("--out", help="write the diff report to a file")
    table.set_defaults(func=cmd_table)

    exact = sub.add_parser("exact", help="print a benchmark eigenvalue from the oracle")
    exact.add_argument("--lambda", dest="lam", default="0", help="linear-ramp coupling (rational)")
    exact.add_argument("--state", type=int, default=0)
    exact.add_argument("--digits", type=int, default=20)
    exact.set_defaults(func=cmd_exact)

    convert = sub.add_parser("convert", help="nondimensionalize a problem file")
    convert.add_argument("path", help="problem file")
    convert.add_argument("--format", choices=("md", "json"), default="md")
    convert.add_argument("--out", help="write the report to a file")
    convert.set_defaults(func=cmd_convert)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"boxeig: error: {exc}", file=sys.stderr)
        return 1
    except (OSError, ValueError, NotImplementedError) as exc:
        print(f"boxeig: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
