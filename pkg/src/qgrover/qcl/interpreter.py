"""Tree-walking evaluator for the QCL subset.

Values are Python ``int``/``float``/``bool``/``str`` for classical data and
:class:`~qgrover.statevec.Register` for quantum registers. Gate builtins
(``H``, ``Not``, ``CNot``, ``CPhase``) dispatch to the machine unless a
trace is being recorded.

Adjoint calls (``!name(...)``) on user procedures forward-evaluate the body
with gate application suspended, record every primitive gate, then replay
the record reversed with each gate inverted. Classical control flow inside
an invertible procedure can only depend on classical values, so the recorded
sequence is exactly the procedure's unitary.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from typing import Callable, Iterable, Optional

from . import ast as A
from ..errors import (
    EmptyInputFeed,
    NonUnitaryInverse,
    NumericalError,
    QCLRuntimeError,
    RoundLimit,
    TypeMismatch,
    UnboundName,
    UnsupportedFeature,
)
from ..statevec import STATE_TOL, Machine, Register, new_machine

DEFAULT_UNTIL_LIMIT = 1000

GATES = ("H", "Not", "CNot", "CPhase")


@dataclass(frozen=True)
class GateRecord:
    gate: str
    registers: tuple  # tuple of tuples of machine qubit indices
    angle: Optional[float] = None

    def inverse(self) -> "GateRecord":
        if self.gate == "CPhase":
            return GateRecord(self.gate, self.registers, -self.angle)
        return self


@dataclass
class ExecutionResult:
    output: list
    status: int = 0
    measurements: list = field(default_factory=list)

    @property
    def text(self) -> str:
        return "".join(line + "\n" for line in self.output)


def _fmt(value) -> str:
    if isinstance(value, bool):
        return "1" if value else "0"
    if isinstance(value, float):
        return repr(value)
    if isinstance(value, Register):
        return "|" + ",".join(map(str, value.indices)) + ">"
    return str(value)


def _log(x, base=None):
    if base is None:
        return math.log(x)
    if base == 2:
        return math.log2(x)  # exact on powers of two
    return math.log(x) / math.log(base)


def _bit(n, i):
    return bool((int(n) >> int(i)) & 1)


FUNCTIONS: dict[str, Callable] = {
    "floor": lambda x: math.floor(x),
    "ceil": lambda x: math.ceil(x),
    "sqrt": lambda x: math.sqrt(x),
    "log": _log,
    "bit": _bit,
    "abs": abs,
}

CONSTANTS = {"pi": math.pi}


class _Scope:
    __slots__ = ("vars", "types")

    def __init__(self):
        self.vars = {}
        self.types = {}


class Interpreter:
    """Executes a parsed :class:`~qgrover.qcl.ast.Program` on a machine.

    ``output`` accumulates printed lines (also forwarded to ``echo`` when
    given) and ``measurements`` records every ``(register indices, value)``
    pair produced by ``measure``. With ``check_norm`` the machine's
    normalization is asserted after every statement.
    """

    def __init__(self, program: A.Program, machine: Machine | None = None,
                 inputs: Iterable[int] = (), *, until_limit: int = DEFAULT_UNTIL_LIMIT,
                 echo: Callable[[str], None] | None = None, check_norm: bool = False):
        self.program = program
        self.machine = machine if machine is not None else new_machine()
        self.inputs = deque(inputs)
        self.until_limit = until_limit
        self.echo = echo
        self.check_norm = check_norm
        self.output: list[str] = []
        self.measurements: list[tuple] = []
        self.procs = {p.name: p for p in program.procedures}
        self.scopes: list[_Scope] = []
        self.call_stack: list[str] = []
        self.trace: list[GateRecord] | None = None

    @property
    def trace_mode(self) -> bool:
        return self.trace is not None

    # -- entry -----------------------------------------------------------------

    def run(self, entry: str) -> ExecutionResult:
        proc = self.procs.get(entry)
        if proc is None:
            raise UnboundName(f"no procedure named {entry!r}")
        if proc.params:
            raise TypeMismatch(f"entry procedure {entry!r} must take no arguments")
        self._invoke(proc, [], proc.pos)
        return ExecutionResult(self.output, 0, self.measurements)

    # -- scopes ----------------------------------------------------------------

    def _lookup(self, name, pos):
        for scope in reversed(self.scopes):
            if name in scope.vars:
                return scope.vars[name]
        if name in CONSTANTS:
            return CONSTANTS[name]
        raise UnboundName(f"name {name!r} is not defined", *pos)

    def _scope_of(self, name, pos) -> _Scope:
        for scope in reversed(self.scopes):
            if name in scope.vars:
                return scope
        raise UnboundName(f"name {name!r} is not defined", *pos)

    def _declare(self, name, type_, value):
        self.scopes[-1].vars[name] = value
        self.scopes[-1].types[name] = type_

    def _assign(self, name, value, pos):
        scope = self._scope_of(name, pos)
        if scope.types[name] != "int":
            raise TypeMismatch(f"cannot assign to {scope.types[name]} {name!r}", *pos)
        scope.vars[name] = self._as_int(value, pos, f"value assigned to {name!r}")

    @staticmethod
    def _as_int(value, pos, what="value"):
        if isinstance(value, bool):
            return int(value)
        if isinstance(value, int):
            return value
        if isinstance(value, float) and value.is_integer():
            return int(value)
        raise TypeMismatch(f"{what} must be an integer, got {_fmt(value)}", *pos)

    @staticmethod
    def _as_reg(value, pos, what="argument"):
        if not isinstance(value, Register):
            raise TypeMismatch(f"{what} must be a quantum register", *pos)
        return value

    # -- statements --------------------------------------------------------------

    def _exec_block(self, block: A.Block):
        self.scopes.append(_Scope())
        try:
            for stmt in block.body:
                self._exec(stmt)
        finally:
            self.scopes.pop()

    def _exec(self, s):
        method = getattr(self, "_exec_" + type(s).__name__)
        method(s)
        if self.check_norm and not self.trace_mode:
            dev = self.machine.norm_deviation()
            if dev > STATE_TOL:
                raise NumericalError(f"normalization drifted by {dev:.3e} at {s.pos}")

    def _exec_Block(self, s: A.Block):
        self._exec_block(s)

    def _exec_VarDecl(self, s: A.VarDecl):
        if s.type == "int":
            value = 0 if s.init is None else self._as_int(self._eval(s.init), s.pos)
            self._declare(s.name, "int", value)
            return
        if self.trace_mode:
            raise NonUnitaryInverse("register allocation inside an inverted call", *s.pos)
        width = self._as_int(self._eval(s.size), s.pos, "register width") if s.size else 1
        if width < 0:
            raise TypeMismatch(f"negative register width {width}", *s.pos)
        self._declare(s.name, s.type, self.machine.allocate(width))

    def _exec_Assign(self, s: A.Assign):
        self._assign(s.name, self._eval(s.value), s.pos)

    def _exec_For(self, s: A.For):
        start = self._as_int(self._eval(s.start), s.pos, "for bound")
        stop = self._as_int(self._eval(s.stop), s.pos, "for bound")
        try:
            self._scope_of(s.var, s.pos)
        except UnboundName:
            self._declare(s.var, "int", start)
        for i in range(start, stop + 1):
            self._assign(s.var, i, s.pos)
            self._exec_block(s.body)

    def _exec_If(self, s: A.If):
        if self._truth(self._eval(s.cond), s.pos):
            self._exec_block(s.then)
        elif isinstance(s.orelse, A.If):
            self._exec(s.orelse)
        elif s.orelse is not None:
            self._exec_block(s.orelse)

    def _exec_Until(self, s: A.Until):
        rounds = 0
        while True:
            rounds += 1
            if rounds > self.until_limit:
                raise RoundLimit(f"until-loop exceeded {self.until_limit} rounds", *s.pos)
            self.scopes.append(_Scope())
            try:
                for stmt in s.body.body:
                    self._exec(stmt)
                done = self._truth(self._eval(s.cond), s.pos)
            finally:
                self.scopes.pop()
            if done:
                return

    def _exec_Input(self, s: A.Input):
        if self.trace_mode:
            raise NonUnitaryInverse("input inside an inverted call", *s.pos)
        scope = self._scope_of(s.var, s.pos)
        if not self.inputs:
            raise EmptyInputFeed(f"input for {s.var!r} requested but the feed is empty", *s.pos)
        value = self.inputs.popleft()
        self._assign(s.var, value, s.pos)
        if s.prompt is not None:
            self._write(f"{s.prompt} {_fmt(scope.vars[s.var])}")

    def _exec_Print(self, s: A.Print):
        if self.trace_mode:
            raise NonUnitaryInverse("print inside an inverted call", *s.pos)
        self._write(" ".join(_fmt(self._eval(a)) for a in s.args))

    def _exec_Measure(self, s: A.Measure):
        if self.trace_mode:
            raise NonUnitaryInverse("measure inside an inverted call", *s.pos)
        reg = self._as_reg(self._eval(s.reg), s.pos, "measure operand")
        if s.var is not None:
            self._scope_of(s.var, s.pos)
        outcome = self.machine.measure(reg)
        self.measurements.append((reg.indices, outcome.value))
        if s.var is not None:
            self._assign(s.var, outcome.value, s.pos)

    def _exec_Reset(self, s: A.Reset):
        if self.trace_mode:
            raise NonUnitaryInverse("reset inside an inverted call", *s.pos)
        self.machine.reset()

    def _exec_Call(self, s: A.Call):
        args = [self._eval(a) for a in s.args]
        if s.name in GATES:
            record = self._gate_record(s.name, args, s.pos)
            self._emit(record.inverse() if s.inverted else record)
            return
        proc = self.procs.get(s.name)
        if proc is None:
            raise UnboundName(f"procedure {s.name!r} is not defined", *s.pos)
        if not s.inverted:
            self._invoke(proc, args, s.pos)
            return
        self.invert_call(proc, args, s.pos)

    # -- procedures and gates ------------------------------------------------------

    def _invoke(self, proc: A.ProcDef, args, pos):
        if proc.name in self.call_stack:
            raise UnsupportedFeature(f"recursive call to {proc.name!r}", *pos)
        if len(args) != len(proc.params):
            raise TypeMismatch(
                f"{proc.name} expects {len(proc.params)} arguments, got {len(args)}", *pos
            )
        frame = _Scope()
        for param, value in zip(proc.params, args):
            if param.type == "int":
                value = self._as_int(value, pos, f"argument {param.name!r}")
            else:
                value = self._as_reg(value, pos, f"argument {param.name!r}")
            frame.vars[param.name] = value
            frame.types[param.name] = param.type
        saved, self.scopes = self.scopes, [frame]
        self.call_stack.append(proc.name)
        try:
            self._exec_block(proc.body)
        finally:
            self.call_stack.pop()
            self.scopes = saved

    def invert_call(self, proc: A.ProcDef, args, pos):
        """Apply the adjoint of ``proc(args)`` by reversed, inverted gate replay."""
        outer, self.trace = self.trace, []
        try:
            self._invoke(proc, args, pos)
            recorded = self.trace
        finally:
            self.trace = outer
        for record in reversed(recorded):
            self._emit(record.inverse())

    def _gate_record(self, name, args, pos) -> GateRecord:
        if name in ("H", "Not"):
            if len(args) != 1:
                raise TypeMismatch(f"{name} takes one register", *pos)
            return GateRecord(name, (self._as_reg(args[0], pos).indices,))
        if name == "CNot":
            if len(args) != 2:
                raise TypeMismatch("CNot takes a target and a control register", *pos)
            t = self._as_reg(args[0], pos, "CNot target")
            c = self._as_reg(args[1], pos, "CNot controls")
            return GateRecord(name, (t.indices, c.indices))
        if len(args) != 2:
            raise TypeMismatch("CPhase takes an angle and a register", *pos)
        angle = args[0]
        if isinstance(angle, (Register, str)):
            raise TypeMismatch("CPhase angle must be a number", *pos)
        return GateRecord(name, (self._as_reg(args[1], pos).indices,), float(angle))

    def _emit(self, g: GateRecord):
        if self.trace is not None:
            self.trace.append(g)
            return
        regs = [Register(r) for r in g.registers]
        m = self.machine
        if g.gate == "H":
            m.apply_hadamard(regs[0])
        elif g.gate == "Not":
            m.apply_not(regs[0])
        elif g.gate == "CNot":
            m.apply_cnot(regs[0], regs[1])
        else:
            m.apply_cphase(g.angle, regs[0])

    # -- expressions -------------------------------------------------------------

    def _truth(self, value, pos) -> bool:
        if isinstance(value, (Register, str)):
            raise TypeMismatch("condition must be numeric", *pos)
        return bool(value)

    def _eval(self, e):
        if isinstance(e, A.IntLit):
            return e.value
        if isinstance(e, A.StrLit):
            return e.value
        if isinstance(e, A.Var):
            return self._lookup(e.name, e.pos)
        if isinstance(e, A.Index):
            reg = self._as_reg(self._eval(e.base), e.pos, "indexed value")
            i = self._as_int(self._eval(e.index), e.pos, "register index")
            if not 0 <= i < len(reg):
                raise TypeMismatch(f"index {i} outside register of width {len(reg)}", *e.pos)
            return reg[i]
        if isinstance(e, A.Width):
            return len(self._as_reg(self._eval(e.operand), e.pos, "operand of #"))
        if isinstance(e, A.Unary):
            v = self._eval(e.operand)
            if isinstance(v, (Register, str)):
                raise TypeMismatch(f"bad operand for {e.op!r}", *e.pos)
            return -v if e.op == "-" else (not v)
        if isinstance(e, A.Binary):
            return self._binary(e.op, self._eval(e.left), self._eval(e.right), e.pos)
        if isinstance(e, A.FuncCall):
            fn = FUNCTIONS.get(e.name)
            if fn is None:
                raise UnboundName(f"function {e.name!r} is not defined", *e.pos)
            args = [self._eval(a) for a in e.args]
            if any(isinstance(a, (Register, str)) for a in args):
                raise TypeMismatch(f"{e.name} takes numeric arguments", *e.pos)
            try:
                return fn(*args)
            except (TypeError, ValueError, OverflowError, ZeroDivisionError) as exc:
                raise TypeMismatch(f"{e.name}: {exc}", *e.pos) from None
        raise QCLRuntimeError(f"cannot evaluate {type(e).__name__}")

    def _binary(self, op, a, b, pos):
        if op == "==":
            return a == b
        if isinstance(a, (Register, str)) or isinstance(b, (Register, str)):
            raise TypeMismatch(f"bad operands for {op!r}", *pos)
        try:
            if op == "+":
                return a + b
            if op == "-":
                return a - b
            if op == "*":
                return a * b
            if op == "/":
                return a / b
            if op == "^":
                if isinstance(a, int) and isinstance(b, int) and b >= 0:
                    return int(a) ** int(b)
                return float(a) ** float(b)
        except (ZeroDivisionError, OverflowError) as exc:
            raise TypeMismatch(f"{op}: {exc}", *pos) from None
        raise QCLRuntimeError(f"unknown operator {op!r}", *pos)

    def _write(self, line: str):
        self.output.append(line)
        if self.echo is not None:
            self.echo(line)


def interpret(program: A.Program, entry: str, machine: Machine | None = None,
              input_feed: Iterable[int] = (), **kwargs) -> ExecutionResult:
    return Interpreter(program, machine, input_feed, **kwargs).run(entry)


def default_entry(program: A.Program) -> str:
    """Last zero-argument procedure that no other procedure calls."""
    called = set()

    def walk(node):
        if isinstance(node, A.Call):
            called.add(node.name)
        for value in vars(node).values() if hasattr(node, "__dict__") else ():
            if isinstance(value, list):
                for item in value:
                    walk(item)
            elif hasattr(value, "__dict__"):
                walk(value)

    for p in program.procedures:
        walk(p.body)
    candidates = [p.name for p in program.procedures if not p.params and p.name not in called]
    if not candidates:
        candidates = [p.name for p in program.procedures if not p.params]
    if not candidates:
        raise UnboundName("program has no zero-argument procedure to run")
    return candidates[-1]
