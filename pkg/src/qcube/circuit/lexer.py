"""Tokenizer for ``.cq`` circuit files."""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from ..errors import QCubeError

KEYWORDS = {"mode", "full", "classical", "prepare", "mix", "rot", "measure", "as"}
FACES = {"U", "D", "L", "R", "F", "B"}
AXES = {"x", "y", "z"}

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>[ \t\r]+)
  | (?P<comment>\#[^\n]*)
  | (?P<newline>\n)
  | (?P<rat>[-−]?\d+(?:/\d+)?)
  | (?P<word>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<colon>:)
  | (?P<comma>,)
  | (?P<semi>;)
    """,
    re.VERBOSE,
)


class LexError(QCubeError):
    def __init__(self, msg: str, line: int, col: int):
        super().__init__(f"{line}:{col}: {msg}")
        self.line, self.col = line, col


@dataclass(frozen=True)
class Token:
    kind: str  # KW FACE AXIS IDENT RAT COLON COMMA NEWLINE EOF
    text: str
    line: int
    col: int
    value: object = None

    def __repr__(self):
        return f"{self.kind}({self.text!r})@{self.line}:{self.col}"


def tokenize(text: str) -> list[Token]:
    """Split source into tokens; ``;`` is an alternative statement separator."""
    out: list[Token] = []
    pos, line, line_start = 0, 1, 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        col = pos - line_start + 1
        if m is None:
            raise LexError(f"illegal character {text[pos]!r}", line, col)
        kind, s = m.lastgroup, m.group()
        if kind == "newline" or kind == "semi":
            out.append(Token("NEWLINE", s, line, col))
            if kind == "newline":
                line, line_start = line + 1, m.end()
        elif kind == "rat":
            out.append(Token("RAT", s, line, col, Fraction(s.replace("−", "-"))))
        elif kind == "word":
            if s in KEYWORDS:
                out.append(Token("KW", s, line, col))
            elif s in FACES:
                out.append(Token("FACE", s, line, col))
            elif s in AXES:
                out.append(Token("AXIS", s, line, col))
            else:
                out.append(Token("IDENT", s, line, col))
        elif kind == "colon":
            out.append(Token("COLON", s, line, col))
        elif kind == "comma":
            out.append(Token("COMMA", s, line, col))
        pos = m.end()
    return out
