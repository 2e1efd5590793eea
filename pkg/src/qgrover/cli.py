"""``qgrover`` command line.

Subcommands::

    qgrover run FILE [--input V1,V2,...] [--entry NAME]
    qgrover search BIL
    qgrover table [I1,I2,...] [--reference]
    qgrover probe N BIL K

Shared flags: ``--seed``, ``--max-qubits``, ``--max-rounds``, ``--json``.
The historical invocation ``qcl -i -b32 SimulasiGrover.qcl`` corresponds to
``qgrover run SimulasiGrover.qcl --max-qubits 30 --input <target>``.

Exit codes: 0 ok, 1 unreadable file, 2 lex/parse error, 3 runtime error,
4 capacity error, 5 domain error, 6 round limit.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass

from . import grover
from .errors import (
    CapacityError,
    DomainError,
    LexError,
    ParseError,
    QCLError,
    QGroverError,
    RoundLimitError,
)
from .qcl import Interpreter, default_entry, parse
from .reference import KNOWN_ITERATION_DEVIATIONS, REFERENCE_INPUTS
from .statevec import MAX_QUBITS, new_machine

EXIT_OK = 0
EXIT_IO = 1
EXIT_PARSE = 2
EXIT_RUNTIME = 3
EXIT_CAPACITY = 4
EXIT_DOMAIN = 5
EXIT_ROUND_LIMIT = 6

TABLE_HEADERS = ("Input", "Qubits", "Iterations", "List of Measured Number", "Total Iterations")


@dataclass(frozen=True)
class CliConfig:
    seed: int = 0
    max_qubits: int = MAX_QUBITS
    output_format: str = "text"
    max_rounds: int = grover.DEFAULT_MAX_ROUNDS

    def __post_init__(self):
        if not 1 <= self.max_qubits <= MAX_QUBITS:
            raise CapacityError(f"--max-qubits must be in [1, {MAX_QUBITS}]")
        if self.seed < 0:
            raise DomainError("--seed must be non-negative")
        if self.max_rounds < 1:
            raise DomainError("--max-rounds must be >= 1")

    @property
    def json(self) -> bool:
        return self.output_format == "json"


def exit_code(exc: BaseException) -> int:
    if isinstance(exc, (LexError, ParseError)):
        return EXIT_PARSE
    if isinstance(exc, CapacityError):
        return EXIT_CAPACITY
    if isinstance(exc, DomainError):
        return EXIT_DOMAIN
    if isinstance(exc, RoundLimitError):
        return EXIT_ROUND_LIMIT
    if isinstance(exc, OSError):
        return EXIT_IO
    return EXIT_RUNTIME


def _error_line(exc: BaseException, where: str | None = None) -> str:
    prefix = f"{where}:" if where else ""
    if isinstance(exc, QCLError) and exc.line is not None:
        prefix += f"{exc.line}:{exc.column}:"
    if prefix:
        prefix += " "
    text = exc.message if isinstance(exc, QCLError) else str(exc)
    return f"{prefix}{type(exc).__name__}: {text}"


def _dump(obj) -> str:
    return json.dumps(obj, ensure_ascii=False)


def parse_int_list(text: str) -> list[int]:
    """``"10,30, 175"`` -> ``[10, 30, 175]``; empty text gives ``[]``."""
    items = [t.strip() for t in text.split(",")] if text and text.strip() else []
    try:
        return [int(t) for t in items]
    except ValueError:
        raise DomainError(f"expected comma-separated integers, got {text!r}") from None


# -- commands ----------------------------------------------------------------


def cmd_run(path: str, config: CliConfig, input_feed=(), entry: str | None = None,
            check_norm: bool = False, out=sys.stdout, err=sys.stderr) -> int:
    try:
        with open(path, encoding="utf-8") as fh:
            source = fh.read()
    except OSError as exc:
        print(f"{path}: cannot read file: {exc.strerror or exc}", file=err)
        return EXIT_IO
    echo = None if config.json else (lambda line: print(line, file=out))
    interp = None
    try:
        program = parse(source)
        interp = Interpreter(
            program,
            new_machine(config.max_qubits, config.seed),
            input_feed,
            until_limit=config.max_rounds,
            echo=echo,
            check_norm=check_norm,
        )
        interp.run(entry or default_entry(program))
        status = EXIT_OK
    except QGroverError as exc:
        print(_error_line(exc, path), file=err)
        status = exit_code(exc)
    if config.json:
        payload = {
            "output": interp.output if interp else [],
            "measured": [v for _, v in interp.measurements] if interp else [],
            "status": status,
        }
        print(_dump(payload), file=out)
    return status


def cmd_search(bil: int, config: CliConfig, out=sys.stdout, err=sys.stderr) -> int:
    try:
        report = grover.search(bil, seed=config.seed, max_rounds=config.max_rounds,
                               max_qubits=config.max_qubits)
    except QGroverError as exc:
        print(_error_line(exc), file=err)
        return exit_code(exc)
    if config.json:
        print(_dump(report.to_dict()), file=out)
    else:
        d = report.to_dict()
        print(f"Input: {d['input']}", file=out)
        print(f"Qubits: {d['qubits']}", file=out)
        print(f"Iterations: {d['iterations']}", file=out)
        print(f"List of Measured Number: {' - '.join(map(str, d['measured']))}", file=out)
        print(f"Rounds: {d['rounds']}", file=out)
        print(f"Total Iterations: {d['total_iterations']}", file=out)
    return EXIT_OK


def table_rows(inputs, config: CliConfig):
    """Yield ``(input, report_or_None, error_or_None)`` in input order."""
    for bil in inputs:
        try:
            report = grover.search(bil, seed=config.seed, max_rounds=config.max_rounds,
                                   max_qubits=config.max_qubits)
        except QGroverError as exc:
            yield bil, None, exc
        else:
            yield bil, report, None


def _render_table(rows: list[tuple], notes: list[str]) -> str:
    widths = [max(len(r[i]) for r in rows) for i in range(len(TABLE_HEADERS))]
    lines = []
    for n, row in enumerate(rows):
        lines.append(" | ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip())
        if n == 0:
            lines.append("-+-".join("-" * w for w in widths))
    lines.extend(notes)
    return "\n".join(lines)


def cmd_table(inputs, config: CliConfig, out=sys.stdout, err=sys.stderr) -> int:
    status = EXIT_OK
    records, cells, notes = [], [TABLE_HEADERS], []
    for bil, report, exc in table_rows(inputs, config):
        if exc is not None:
            print(_error_line(exc, f"input {bil}"), file=err)
            status = status or exit_code(exc)
            records.append({"input": bil, "error": type(exc).__name__, "message": str(exc)})
            cells.append((str(bil), "-", "-", f"error: {type(exc).__name__}", "-"))
            continue
        d = report.to_dict()
        records.append(d)
        iters = str(d["iterations"])
        if bil in KNOWN_ITERATION_DEVIATIONS:
            iters += "*"
            notes.append(
                f"* {bil}: reference table reports {KNOWN_ITERATION_DEVIATIONS[bil]} "
                f"iterations; ceil(pi/8*sqrt(2^{d['qubits']})) = {d['iterations']}"
            )
        cells.append((str(bil), str(d["qubits"]), iters,
                      " - ".join(map(str, d["measured"])), str(d["total_iterations"])))
    if config.json:
        print(_dump({"rows": records, "notes": notes}), file=out)
    else:
        print(_render_table(cells, notes), file=out)
    return status


def cmd_probe(n: int, bil: int, k: int, config: CliConfig, out=sys.stdout, err=sys.stderr) -> int:
    try:
        if n + 1 > config.max_qubits:
            raise CapacityError(f"probe needs {n + 1} qubits, budget is {config.max_qubits}")
        result = grover.probe(n, bil, k, new_machine(config.max_qubits, config.seed))
    except QGroverError as exc:
        print(_error_line(exc), file=err)
        return exit_code(exc)
    if config.json:
        print(_dump({"n": n, "bil": bil, "k": k, "analytic_p": result.analytic_p,
                     "simulated_p": result.simulated_p, "delta": result.delta}), file=out)
    else:
        print(f"n={n} bil={bil} k={k}", file=out)
        print(f"analytic_p:  {result.analytic_p:.12f}", file=out)
        print(f"simulated_p: {result.simulated_p:.12f}", file=out)
        print(f"delta:       {result.delta:.6e}", file=out)
    return EXIT_OK


# -- argument parsing --------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="RNG seed (default 0)")
    common.add_argument("--max-qubits", type=int, default=MAX_QUBITS,
                        help=f"qubit budget, at most {MAX_QUBITS}")
    common.add_argument("--max-rounds", type=int, default=grover.DEFAULT_MAX_ROUNDS,
                        help="guard for repeat-until loops")
    common.add_argument("--json", action="store_true", help="machine-readable output")

    parser = argparse.ArgumentParser(prog="qgrover", description=__doc__.split("\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("run", parents=[common], help="execute a QCL-subset program")
    p.add_argument("file")
    p.add_argument("--input", default="", help="comma-separated integers for `input`")
    p.add_argument("--entry", help="procedure to run (default: last uncalled no-arg procedure)")
    p.add_argument("--check-norm", action="store_true",
                   help="assert normalization after every statement")

    p = sub.add_parser("search", parents=[common], help="run a native Grover search")
    p.add_argument("bil", type=int)

    p = sub.add_parser("table", parents=[common], help="reproduce the results table")
    p.add_argument("inputs", nargs="?", default="", help="comma-separated targets")
    p.add_argument("--reference", action="store_true",
                   help="use the ten reference inputs " + ",".join(map(str, REFERENCE_INPUTS)))

    p = sub.add_parser("probe", parents=[common], help="compare simulated and analytic success")
    p.add_argument("n", type=int)
    p.add_argument("bil", type=int)
    p.add_argument("k", type=int)
    return parser


def main(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    args = build_parser().parse_args(argv)
    try:
        config = CliConfig(args.seed, args.max_qubits, "json" if args.json else "text",
                           args.max_rounds)
        if args.command == "run":
            return cmd_run(args.file, config, parse_int_list(args.input), args.entry,
                           args.check_norm, out, err)
        if args.command == "search":
            return cmd_search(args.bil, config, out, err)
        if args.command == "table":
            inputs = list(REFERENCE_INPUTS) if args.reference else []
            inputs += parse_int_list(args.inputs)
            return cmd_table(inputs, config, out, err)
        return cmd_probe(args.n, args.bil, args.k, config, out, err)
    except QGroverError as exc:
        print(_error_line(exc), file=err)
        return exit_code(exc)


if __name__ == "__main__":
    raise SystemExit(main())
