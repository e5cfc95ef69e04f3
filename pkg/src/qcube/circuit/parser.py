"""Recursive-descent parser and pretty-printer for ``.cq`` circuits.

Grammar::

    circuit := header? prep stmt*
    header  := "mode" ("full" | "classical")
    prep    := "prepare" FACE | "mix" FACE ":" RAT ("," FACE ":" RAT)*
    stmt    := "rot" AXIS ANGLE | "measure" AXIS ("as" IDENT)?

Statements are separated by newlines or ``;``.  ANGLE is one of
+-90, +-180, +-270 degrees.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Union

from ..epistemic import Face
from ..errors import QCubeError
from .lexer import Token, tokenize

QUARTER_TURN_ANGLES = {90: 1, 180: 2, 270: 3, -90: -1, -180: -2, -270: -3}


class ParseError(QCubeError):
    def __init__(self, msg: str, line: int = 0, col: int = 0):
        super().__init__(f"{line}:{col}: {msg}")
        self.line, self.col = line, col


class WeightsNotNormalized(ParseError):
    pass


class AngleNotQuarterTurn(ParseError):
    pass


class ClassicalModeViolation(ParseError):
    pass


class MissingPreparation(ParseError):
    pass


@dataclass(frozen=True)
class Prepare:
    face: Face
    line: int = field(default=0, compare=False)


@dataclass(frozen=True)
class Mix:
    weights: tuple[tuple[Face, Fraction], ...]
    line: int = field(default=0, compare=False)


@dataclass(frozen=True)
class Rot:
    axis: str
    quarter_turns: int
    line: int = field(default=0, compare=False)

    @property
    def degrees(self) -> int:
        return 90 * self.quarter_turns


@dataclass(frozen=True)
class Measure:
    axis: str
    tag: str | None = None
    line: int = field(default=0, compare=False)


Stmt = Union[Prepare, Mix, Rot, Measure]


@dataclass(frozen=True)
class Circuit:
    mode: str
    statements: tuple[Stmt, ...]

    @property
    def preparation(self) -> Prepare | Mix:
        return self.statements[0]

    @property
    def body(self) -> tuple[Stmt, ...]:
        return self.statements[1:]

    @property
    def measurements(self) -> tuple[Measure, ...]:
        return tuple(s for s in self.statements if isinstance(s, Measure))


class _Parser:
    def __init__(self, tokens: list[Token]):
        self.toks = tokens
        self.i = 0

    def peek(self) -> Token | None:
        return self.toks[self.i] if self.i < len(self.toks) else None

    def _where(self) -> tuple[int, int]:
        t = self.peek()
        if t is not None:
            return t.line, t.col
        if self.toks:
            last = self.toks[-1]
            return last.line, last.col + len(last.text)
        return 1, 1

    def fail(self, msg: str, cls=ParseError, tok: Token | None = None):
        line, col = (tok.line, tok.col) if tok else self._where()
        raise cls(msg, line, col)

    def take(self, kind: str, text: str | None = None) -> Token:
        t = self.peek()
        if t is None or t.kind != kind or (text is not None and t.text != text):
            want = repr(text) if text else kind
            got = "end of input" if t is None else repr(t.text)
            self.fail(f"expected {want}, got {got}")
        self.i += 1
        return t

    def at(self, kind: str, text: str | None = None) -> bool:
        t = self.peek()
        return t is not None and t.kind == kind and (text is None or t.text == text)

    def skip_newlines(self):
        while self.at("NEWLINE"):
            self.i += 1

    def end_of_statement(self):
        if self.peek() is not None:
            self.take("NEWLINE")

    def circuit(self) -> Circuit:
        self.skip_newlines()
        mode = "full"
        if self.at("KW", "mode"):
            self.i += 1
            t = self.peek()
            if t is None or t.kind != "KW" or t.text not in ("full", "classical"):
                self.fail("mode must be 'full' or 'classical'")
            mode = t.text
            self.i += 1
            self.end_of_statement()
        stmts: list[Stmt] = []
        self.skip_newlines()
        while self.peek() is not None:
            stmts.append(self.statement(mode, first=not stmts))
            self.end_of_statement()
            self.skip_newlines()
        if not stmts:
            self.fail("circuit has no preparation", MissingPreparation)
        return Circuit(mode, tuple(stmts))

    def statement(self, mode: str, first: bool) -> Stmt:
        t = self.peek()
        if t.kind != "KW" or t.text not in ("prepare", "mix", "rot", "measure"):
            self.fail(f"unexpected {t.text!r}")
        is_prep = t.text in ("prepare", "mix")
        if first and not is_prep:
            self.fail("circuit must start with 'prepare' or 'mix'", MissingPreparation)
        if is_prep and not first:
            self.fail("only one preparation is allowed and it must come first")
        self.i += 1
        if t.text == "prepare":
            face = self.face(mode)
            return Prepare(face, line=t.line)
        if t.text == "mix":
            return self.mix(mode, t)
        if t.text == "rot":
            if mode == "classical":
                self.fail("rotations are not available in classical mode", ClassicalModeViolation, t)
            axis = self.take("AXIS").text
            ang = self.peek()
            if ang is None or ang.kind != "RAT":
                self.fail("expected a rotation angle in degrees")
            self.i += 1
            if ang.value not in QUARTER_TURN_ANGLES:
                self.fail(f"angle {ang.text} is not a quarter turn (+-90, +-180, +-270)", AngleNotQuarterTurn, ang)
            return Rot(axis, QUARTER_TURN_ANGLES[int(ang.value)], line=t.line)
        axis_tok = self.take("AXIS")
        if mode == "classical" and axis_tok.text != "z":
            self.fail("classical mode only measures along z", ClassicalModeViolation, axis_tok)
        tag = None
        if self.at("KW", "as"):
            self.i += 1
            tt = self.peek()
            if tt is None or tt.kind not in ("IDENT", "FACE", "AXIS"):
                self.fail("expected a tag name after 'as'")
            self.i += 1
            tag = tt.text
        return Measure(axis_tok.text, tag, line=t.line)

    def face(self, mode: str) -> Face:
        t = self.take("FACE")
        if mode == "classical" and t.text not in ("U", "D"):
            self.fail("classical mode only prepares U or D", ClassicalModeViolation, t)
        return Face[t.text]

    def mix(self, mode: str, kw: Token) -> Mix:
        weights = []
        while True:
            face = self.face(mode)
            self.take("COLON")
            w = self.take("RAT")
            if w.value < 0:
                self.fail(f"negative weight {w.text}", WeightsNotNormalized, w)
            weights.append((face, w.value))
            if not self.at("COMMA"):
                break
            self.i += 1
        total = sum(w for _, w in weights)
        if total != 1:
            self.fail(f"mix weights sum to {total}, not 1", WeightsNotNormalized, kw)
        return Mix(tuple(weights), line=kw.line)


def parse(tokens: list[Token] | str) -> Circuit:
    if isinstance(tokens, str):
        tokens = tokenize(tokens)
    return _Parser(tokens).circuit()


def format_stmt(s: Stmt) -> str:
    if isinstance(s, Prepare):
        return f"prepare {s.face.name}"
    if isinstance(s, Mix):
        return "mix " + ", ".join(f"{f.name}:{w}" for f, w in s.weights)
    if isinstance(s, Rot):
        return f"rot {s.axis} {s.degrees}"
    return f"measure {s.axis}" + (f" as {s.tag}" if s.tag else "")


def format_circuit(c: Circuit) -> str:
    lines = [] if c.mode == "full" else [f"mode {c.mode}"]
    lines += [format_stmt(s) for s in c.statements]
    return "\n".join(lines) + "\n"
