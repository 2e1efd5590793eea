"""Tokenizer for the QCL subset."""

from __future__ import annotations

import re
from dataclasses import dataclass

from ..errors import LexError

KEYWORDS = frozenset({
    "procedure", "int", "qureg", "quvoid", "for", "to", "if", "else", "until",
    "input", "print", "measure", "reset", "not",
})

IDENT = "identifier"
INT = "integer"
STRING = "string"
KEYWORD = "keyword"
OP = "operator"
PUNCT = "punctuation"
EOF = "eof"

OPERATORS = ("==", "=", "+", "-", "*", "/", "^", "!", "#")
PUNCTUATION = (",", ";", "(", ")", "{", "}", "[", "]")

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>[ \t\r\f\v]+)
  | (?P<nl>\n)
  | (?P<comment>//[^\n]*)
  | (?P<int>\d+)
  | (?P<name>[A-Za-z_][A-Za-z_0-9]*)
  | (?P<string>"(?:[^"\\\n]|\\.)*")
  | (?P<op>==|[=+\-*/^!\#])
  | (?P<punct>[,;(){}\[\]])
    """,
    re.VERBOSE,
)


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    line: int
    column: int

    def is_(self, kind, text=None):
        return self.kind == kind and (text is None or self.text == text)

    def __str__(self):
        return "end of input" if self.kind == EOF else repr(self.text)


def _unescape(body):
    return re.sub(r"\\(.)", lambda m: {"n": "\n", "t": "\t"}.get(m.group(1), m.group(1)), body)


def tokenize(source: str) -> list[Token]:
    """Split ``source`` into tokens, dropping whitespace and ``//`` comments.

    The returned list always ends with a single ``eof`` token. String tokens
    carry the decoded contents (quotes removed) in ``text``.
    """
    tokens: list[Token] = []
    pos, line, line_start = 0, 1, 0
    n = len(source)
    while pos < n:
        m = _TOKEN_RE.match(source, pos)
        col = pos - line_start + 1
        if m is None:
            if source[pos] == '"':
                raise LexError("unterminated string literal", line, col)
            raise LexError(f"illegal character {source[pos]!r}", line, col)
        kind = m.lastgroup
        text = m.group()
        if kind == "nl":
            line += 1
            line_start = m.end()
        elif kind == "int":
            tokens.append(Token(INT, text, line, col))
        elif kind == "name":
            tokens.append(Token(KEYWORD if text in KEYWORDS else IDENT, text, line, col))
        elif kind == "string":
            tokens.append(Token(STRING, _unescape(text[1:-1]), line, col))
        elif kind == "op":
            tokens.append(Token(OP, text, line, col))
        elif kind == "punct":
            tokens.append(Token(PUNCT, text, line, col))
        pos = m.end()
    tokens.append(Token(EOF, "", line, pos - line_start + 1))
    return tokens
