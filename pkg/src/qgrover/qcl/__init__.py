"""Lexer, parser and interpreter for the QCL subset used by the Grover listing."""

from importlib import resources

from .ast import Program
from .interpreter import ExecutionResult, GateRecord, Interpreter, default_entry, interpret
from .lexer import Token, tokenize
from .parser import format_program, parse, parse_program


def load_program_source(name: str = "simulasi_grover.qcl") -> str:
    return resources.files(__package__).joinpath("programs", name).read_text(encoding="utf-8")


LISTING = load_program_source()

__all__ = [
    "ExecutionResult", "GateRecord", "Interpreter", "LISTING", "Program", "Token",
    "default_entry", "format_program", "interpret", "load_program_source", "parse",
    "parse_program", "tokenize",
]
