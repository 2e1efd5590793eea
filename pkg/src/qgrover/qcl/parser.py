"""Recursive-descent parser and pretty-printer for the QCL subset.

Grammar (EBNF, see docs/grammar.md for the annotated version)::

    program   := procdef+ EOF
    procdef   := "procedure" IDENT "(" [params] ")" block
    params    := param { "," param }
    param     := [type] IDENT          (an untyped param repeats the previous type)
    type      := "int" | "qureg" | "quvoid"
    block     := "{" { stmt } "}"
    stmt      := type IDENT [ "[" expr "]" ] [ "=" expr ] ";"
               | "for" IDENT "=" expr "to" expr block
               | "if" expr block [ "else" ( block | if ) ]
               | block [ "until" expr ";" ]
               | "input" [ STRING "," ] IDENT ";"
               | "print" [ expr { "," expr } ] ";"
               | "measure" expr [ "," IDENT ] ";"
               | "reset" ";"
               | [ "!" ] IDENT "(" [ args ] ")" ";"
               | IDENT "=" expr ";"
    expr      := "not" expr | equality
    equality  := additive { "==" additive }
    additive  := term { ("+" | "-") term }
    term      := unary { ("*" | "/") unary }
    unary     := ("-" | "!" | "#") unary | power
    power     := postfix [ "^" unary ]
    postfix   := primary { "[" expr "]" }
    primary   := INT | STRING | IDENT [ "(" [ args ] ")" ] | "(" expr ")"
"""

from __future__ import annotations

from . import ast as A
from .lexer import EOF, IDENT, INT, KEYWORD, OP, PUNCT, STRING, Token, tokenize
from ..errors import ParseError

TYPES = ("int", "qureg", "quvoid")


class Parser:
    def __init__(self, tokens: list[Token]):
        self.tokens = tokens
        self.i = 0

    # -- token helpers ---------------------------------------------------

    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def peek(self, offset=1) -> Token:
        j = min(self.i + offset, len(self.tokens) - 1)
        return self.tokens[j]

    def advance(self) -> Token:
        t = self.tok
        if t.kind != EOF:
            self.i += 1
        return t

    def at(self, kind, text=None) -> bool:
        return self.tok.is_(kind, text)

    def at_sym(self, text) -> bool:
        return self.tok.kind in (OP, PUNCT) and self.tok.text == text

    def accept_sym(self, text):
        if self.at_sym(text):
            return self.advance()
        return None

    def error(self, *expected):
        t = self.tok
        raise ParseError(f"unexpected {t}", t.line, t.column, expected)

    def expect_sym(self, text) -> Token:
        if not self.at_sym(text):
            self.error(repr(text))
        return self.advance()

    def expect_kw(self, text) -> Token:
        if not self.at(KEYWORD, text):
            self.error(repr(text))
        return self.advance()

    def expect_ident(self) -> Token:
        if not self.at(IDENT):
            self.error("identifier")
        return self.advance()

    @staticmethod
    def _pos(t: Token):
        return (t.line, t.column)

    # -- program structure -------------------------------------------------

    def parse_program(self) -> A.Program:
        procs = []
        while not self.at(EOF):
            if not self.at(KEYWORD, "procedure"):
                self.error("'procedure'")
            procs.append(self.parse_procdef())
        if not procs:
            self.error("'procedure'")
        seen = set()
        for p in procs:
            if p.name in seen:
                raise ParseError(f"procedure {p.name!r} defined twice", *p.pos)
            seen.add(p.name)
        return A.Program(procs)

    def parse_procdef(self) -> A.ProcDef:
        start = self.expect_kw("procedure")
        name = self.expect_ident().text
        self.expect_sym("(")
        params = []
        if not self.at_sym(")"):
            ptype = None
            while True:
                if self.tok.kind == KEYWORD and self.tok.text in TYPES:
                    ptype = self.advance().text
                elif ptype is None:
                    self.error(*map(repr, TYPES))
                params.append(A.Param(ptype, self.expect_ident().text))
                if not self.accept_sym(","):
                    break
        self.expect_sym(")")
        return A.ProcDef(name, params, self.parse_block(), pos=self._pos(start))

    def parse_block(self) -> A.Block:
        start = self.expect_sym("{")
        body = []
        while not self.at_sym("}"):
            if self.at(EOF):
                self.error("'}'")
            body.append(self.parse_stmt())
        self.advance()
        return A.Block(body, pos=self._pos(start))

    # -- statements ----------------------------------------------------------

    def parse_stmt(self):
        t = self.tok
        pos = self._pos(t)
        if t.kind == KEYWORD:
            if t.text in TYPES:
                return self.parse_decl()
            if t.text == "for":
                return self.parse_for()
            if t.text == "if":
                return self.parse_if()
            if t.text == "input":
                self.advance()
                prompt = None
                if self.at(STRING):
                    prompt = self.advance().text
                    self.expect_sym(",")
                var = self.expect_ident().text
                self.expect_sym(";")
                return A.Input(prompt, var, pos=pos)
            if t.text == "print":
                self.advance()
                args = []
                if not self.at_sym(";"):
                    args = self.parse_args()
                self.expect_sym(";")
                return A.Print(args, pos=pos)
            if t.text == "measure":
                self.advance()
                reg = self.parse_expr()
                var = None
                if self.accept_sym(","):
                    var = self.expect_ident().text
                self.expect_sym(";")
                return A.Measure(reg, var, pos=pos)
            if t.text == "reset":
                self.advance()
                self.expect_sym(";")
                return A.Reset(pos=pos)
            self.error("statement")
        if self.at_sym("{"):
            block = self.parse_block()
            if self.at(KEYWORD, "until"):
                self.advance()
                cond = self.parse_expr()
                self.expect_sym(";")
                return A.Until(block, cond, pos=pos)
            return block
        if self.at_sym("!"):
            self.advance()
            call = self.parse_call_stmt()
            call.inverted = True
            call.pos = pos
            return call
        if t.kind == IDENT:
            if self.peek().kind == OP and self.peek().text == "=":
                name = self.advance().text
                self.advance()
                value = self.parse_expr()
                self.expect_sym(";")
                return A.Assign(name, value, pos=pos)
            return self.parse_call_stmt()
        self.error("statement")

    def parse_call_stmt(self) -> A.Call:
        name = self.expect_ident()
        self.expect_sym("(")
        args = [] if self.at_sym(")") else self.parse_args()
        self.expect_sym(")")
        self.expect_sym(";")
        return A.Call(name.text, args, pos=self._pos(name))

    def parse_decl(self) -> A.VarDecl:
        t = self.advance()
        name = self.expect_ident().text
        size = init = None
        if self.accept_sym("["):
            size = self.parse_expr()
            self.expect_sym("]")
        if self.accept_sym("="):
            init = self.parse_expr()
        self.expect_sym(";")
        if t.text == "int" and size is not None:
            raise ParseError("int arrays are not supported", t.line, t.column)
        if t.text != "int" and init is not None:
            raise ParseError("quantum registers cannot be initialized", t.line, t.column)
        if t.text == "qureg" and size is None:
            raise ParseError("qureg declaration needs a width", t.line, t.column, ["'['"])
        return A.VarDecl(t.text, name, size, init, pos=self._pos(t))

    def parse_for(self) -> A.For:
        t = self.expect_kw("for")
        var = self.expect_ident().text
        self.expect_sym("=")
        start = self.parse_expr()
        self.expect_kw("to")
        stop = self.parse_expr()
        return A.For(var, start, stop, self.parse_block(), pos=self._pos(t))

    def parse_if(self) -> A.If:
        t = self.expect_kw("if")
        cond = self.parse_expr()
        then = self.parse_block()
        orelse = None
        if self.at(KEYWORD, "else"):
            self.advance()
            if self.at(KEYWORD, "if"):
                orelse = self.parse_if()
            else:
                orelse = self.parse_block()
        return A.If(cond, then, orelse, pos=self._pos(t))

    # -- expressions -----------------------------------------------------------

    def parse_args(self) -> list:
        args = [self.parse_expr()]
        while self.accept_sym(","):
            args.append(self.parse_expr())
        return args

    def parse_expr(self):
        if self.at(KEYWORD, "not"):
            t = self.advance()
            return A.Unary("not", self.parse_expr(), pos=self._pos(t))
        return self.parse_equality()

    def parse_equality(self):
        left = self.parse_additive()
        while self.at_sym("=="):
            t = self.advance()
            left = A.Binary("==", left, self.parse_additive(), pos=self._pos(t))
        return left

    def parse_additive(self):
        left = self.parse_term()
        while self.at_sym("+") or self.at_sym("-"):
            t = self.advance()
            left = A.Binary(t.text, left, self.parse_term(), pos=self._pos(t))
        return left

    def parse_term(self):
        left = self.parse_unary()
        while self.at_sym("*") or self.at_sym("/"):
            t = self.advance()
            left = A.Binary(t.text, left, self.parse_unary(), pos=self._pos(t))
        return left

    def parse_unary(self):
        if self.at_sym("-") or self.at_sym("!"):
            t = self.advance()
            return A.Unary(t.text, self.parse_unary(), pos=self._pos(t))
        if self.at_sym("#"):
            t = self.advance()
            return A.Width(self.parse_unary(), pos=self._pos(t))
        return self.parse_power()

    def parse_power(self):
        base = self.parse_postfix()
        if self.at_sym("^"):
            t = self.advance()
            return A.Binary("^", base, self.parse_unary(), pos=self._pos(t))
        return base

    def parse_postfix(self):
        expr = self.parse_primary()
        while self.at_sym("["):
            t = self.advance()
            idx = self.parse_expr()
            self.expect_sym("]")
            expr = A.Index(expr, idx, pos=self._pos(t))
        return expr

    def parse_primary(self):
        t = self.tok
        pos = self._pos(t)
        if t.kind == INT:
            self.advance()
            return A.IntLit(int(t.text), pos=pos)
        if t.kind == STRING:
            self.advance()
            return A.StrLit(t.text, pos=pos)
        if t.kind == IDENT:
            self.advance()
            if self.accept_sym("("):
                args = [] if self.at_sym(")") else self.parse_args()
                self.expect_sym(")")
                return A.FuncCall(t.text, args, pos=pos)
            return A.Var(t.text, pos=pos)
        if self.accept_sym("("):
            expr = self.parse_expr()
            self.expect_sym(")")
            return expr
        self.error("expression")


def parse_program(tokens) -> A.Program:
    """Parse a token list (or raw source text) into a :class:`Program`."""
    if isinstance(tokens, str):
        tokens = tokenize(tokens)
    return Parser(list(tokens)).parse_program()


def parse(source: str) -> A.Program:
    return parse_program(tokenize(source))


# -- pretty printer ------------------------------------------------------------


def _quote(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"').replace("\n", "\\n") + '"'


def format_expr(e) -> str:
    def sub(x):
        s = format_expr(x)
        return f"({s})" if isinstance(x, (A.Binary, A.Unary, A.Width)) else s

    if isinstance(e, A.IntLit):
        return str(e.value)
    if isinstance(e, A.StrLit):
        return _quote(e.value)
    if isinstance(e, A.Var):
        return e.name
    if isinstance(e, A.Index):
        return f"{sub(e.base)}[{format_expr(e.index)}]"
    if isinstance(e, A.Width):
        return f"#{sub(e.operand)}"
    if isinstance(e, A.Unary):
        return f"not {sub(e.operand)}" if e.op == "not" else f"{e.op}{sub(e.operand)}"
    if isinstance(e, A.Binary):
        return f"{sub(e.left)} {e.op} {sub(e.right)}"
    if isinstance(e, A.FuncCall):
        return f"{e.name}({', '.join(map(format_expr, e.args))})"
    raise TypeError(f"not an expression: {e!r}")


def _format_block(block: A.Block, depth: int) -> list[str]:
    lines = ["{"]
    for s in block.body:
        lines.extend(_format_stmt(s, depth + 1))
    lines.append("    " * depth + "}")
    return lines


def _join_block(head: str, block: A.Block, depth: int, tail: str = "") -> list[str]:
    lines = _format_block(block, depth)
    lines[0] = "    " * depth + (head + " " if head else "") + lines[0]
    lines[-1] += tail
    return lines


def _format_stmt(s, depth: int) -> list[str]:
    ind = "    " * depth
    if isinstance(s, A.VarDecl):
        out = f"{s.type} {s.name}"
        if s.size is not None:
            out += f"[{format_expr(s.size)}]"
        if s.init is not None:
            out += f" = {format_expr(s.init)}"
        return [ind + out + ";"]
    if isinstance(s, A.Assign):
        return [f"{ind}{s.name} = {format_expr(s.value)};"]
    if isinstance(s, A.For):
        head = f"for {s.var} = {format_expr(s.start)} to {format_expr(s.stop)}"
        return _join_block(head, s.body, depth)
    if isinstance(s, A.If):
        lines = _join_block(f"if {format_expr(s.cond)}", s.then, depth)
        if isinstance(s.orelse, A.If):
            nested = _format_stmt(s.orelse, depth)
            lines[-1] += " else " + nested[0].lstrip()
            lines.extend(nested[1:])
        elif s.orelse is not None:
            rest = _format_block(s.orelse, depth)
            lines[-1] += " else " + rest[0]
            lines.extend(rest[1:])
        return lines
    if isinstance(s, A.Until):
        return _join_block("", s.body, depth, f" until {format_expr(s.cond)};")
    if isinstance(s, A.Block):
        return _join_block("", s, depth)
    if isinstance(s, A.Call):
        bang = "!" if s.inverted else ""
        return [f"{ind}{bang}{s.name}({', '.join(map(format_expr, s.args))});"]
    if isinstance(s, A.Input):
        prompt = f"{_quote(s.prompt)}, " if s.prompt is not None else ""
        return [f"{ind}input {prompt}{s.var};"]
    if isinstance(s, A.Print):
        args = ", ".join(map(format_expr, s.args))
        return [f"{ind}print {args};" if args else f"{ind}print;"]
    if isinstance(s, A.Measure):
        var = f", {s.var}" if s.var else ""
        return [f"{ind}measure {format_expr(s.reg)}{var};"]
    if isinstance(s, A.Reset):
        return [f"{ind}reset;"]
    raise TypeError(f"not a statement: {s!r}")


def format_program(program: A.Program) -> str:
    """Render ``program`` back to canonical source text."""
    chunks = []
    for p in program.procedures:
        params = ", ".join(f"{q.type} {q.name}" for q in p.params)
        chunks.append("\n".join(_join_block(f"procedure {p.name}({params})", p.body, 0)))
    return "\n\n".join(chunks) + "\n"
