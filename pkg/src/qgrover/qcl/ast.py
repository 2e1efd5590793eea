"""AST node types for the QCL subset.

Source positions are kept for diagnostics but excluded from equality, so two
parses of equivalent source compare equal.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Union


def _pos():
    return field(default=(0, 0), compare=False, repr=False)


# -- expressions ---------------------------------------------------------


@dataclass
class IntLit:
    value: int
    pos: tuple = _pos()


@dataclass
class StrLit:
    value: str
    pos: tuple = _pos()


@dataclass
class Var:
    name: str
    pos: tuple = _pos()


@dataclass
class Index:
    base: "Expr"
    index: "Expr"
    pos: tuple = _pos()


@dataclass
class Width:
    """``#reg``: number of qubits in a register."""

    operand: "Expr"
    pos: tuple = _pos()


@dataclass
class Unary:
    op: str  # "not", "!", "-"
    operand: "Expr"
    pos: tuple = _pos()


@dataclass
class Binary:
    op: str  # + - * / ^ ==
    left: "Expr"
    right: "Expr"
    pos: tuple = _pos()


@dataclass
class FuncCall:
    name: str
    args: list
    pos: tuple = _pos()


Expr = Union[IntLit, StrLit, Var, Index, Width, Unary, Binary, FuncCall]


# -- statements ----------------------------------------------------------


@dataclass
class Block:
    body: list
    pos: tuple = _pos()


@dataclass
class VarDecl:
    type: str  # int | qureg | quvoid
    name: str
    size: Optional[Expr] = None  # register width
    init: Optional[Expr] = None  # int initializer
    pos: tuple = _pos()


@dataclass
class Assign:
    name: str
    value: Expr
    pos: tuple = _pos()


@dataclass
class For:
    var: str
    start: Expr
    stop: Expr
    body: Block
    pos: tuple = _pos()


@dataclass
class If:
    cond: Expr
    then: Block
    orelse: Optional[Union[Block, "If"]] = None
    pos: tuple = _pos()


@dataclass
class Until:
    body: Block
    cond: Expr
    pos: tuple = _pos()


@dataclass
class Call:
    name: str
    args: list
    inverted: bool = False
    pos: tuple = _pos()


@dataclass
class Input:
    prompt: Optional[str]
    var: str
    pos: tuple = _pos()


@dataclass
class Print:
    args: list
    pos: tuple = _pos()


@dataclass
class Measure:
    reg: Expr
    var: Optional[str] = None
    pos: tuple = _pos()


@dataclass
class Reset:
    pos: tuple = _pos()


Stmt = Union[Block, VarDecl, Assign, For, If, Until, Call, Input, Print, Measure, Reset]


@dataclass
class Param:
    type: str
    name: str


@dataclass
class ProcDef:
    name: str
    params: list
    body: Block
    pos: tuple = _pos()


@dataclass
class Program:
    procedures: list

    def procedure(self, name: str) -> ProcDef:
        for p in self.procedures:
            if p.name == name:
                return p
        raise KeyError(name)

    @property
    def names(self) -> list:
        return [p.name for p in self.procedures]
