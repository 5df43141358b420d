"""Text format for ground formulas and programs.

Grammar (UTF-8, `%` starts a line comment):

    program  := { formula "." }
    formula  := impl
    impl     := disj [ "->" impl ]          right associative
    disj     := conj { "|" conj }
    conj     := unary { "&" unary }
    unary    := "not" unary | primary
    primary  := "top" | "bot" | atom | "(" formula ")"
              | "And" "{" [ formula { ";" formula } ] "}"
              | "Or"  "{" [ formula { ";" formula } ] "}"
    atom     := ident [ "(" ident { "," ident } ")" ]

`&`/`|` chains collapse into one set-valued node, `not f` into `f -> bot`.
A program denotes the conjunction of its formulas.
"""

from __future__ import annotations

from dataclasses import dataclass

from .formula import (
    KEYWORDS,
    Atom,
    AtomRef,
    BOT,
    Conj,
    Disj,
    Formula,
    Impl,
    TOP,
)


class ParseError(ValueError):
    def __init__(self, message: str, line: int, col: int):
        super().__init__(f"{line}:{col}: {message}")
        self.line = line
        self.col = col


@dataclass(frozen=True)
class _Token:
    kind: str  # "ident", a punctuation string, or "eof"
    text: str
    line: int
    col: int


_PUNCT = ("->", "&", "|", "(", ")", "{", "}", ";", ",", ".", "=")


def _tokenize(text: str) -> list[_Token]:
    toks: list[_Token] = []
    line, col = 1, 1
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch == "\n":
            line += 1
            col = 1
            i += 1
            continue
        if ch in " \t\r":
            i += 1
            col += 1
            continue
        if ch == "%":
            while i < n and text[i] != "\n":
                i += 1
            continue
        if ch.isalpha() or ch == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            toks.append(_Token("ident", text[i:j], line, col))
            col += j - i
            i = j
            continue
        for p in _PUNCT:
            if text.startswith(p, i):
                toks.append(_Token(p, p, line, col))
                i += len(p)
                col += len(p)
                break
        else:
            raise ParseError(f"unexpected character {ch!r}", line, col)
    toks.append(_Token("eof", "", line, col))
    return toks


class _Parser:
    def __init__(self, text: str):
        self.toks = _tokenize(text)
        self.pos = 0

    def peek(self) -> _Token:
        return self.toks[self.pos]

    def next(self) -> _Token:
        t = self.toks[self.pos]
        self.pos += 1
        return t

    def expect(self, kind: str) -> _Token:
        t = self.peek()
        if t.kind != kind:
            raise ParseError(f"expected {kind!r}, found {t.text or 'end of input'!r}", t.line, t.col)
        return self.next()

    def fail(self, message: str):
        t = self.peek()
        raise ParseError(message, t.line, t.col)

    def formula(self) -> Formula:
        lhs = self.disj()
        if self.peek().kind == "->":
            self.next()
            return Impl(lhs, self.formula())
        return lhs

    def disj(self) -> Formula:
        parts = [self.conj()]
        while self.peek().kind == "|":
            self.next()
            parts.append(self.conj())
        return parts[0] if len(parts) == 1 else Disj(tuple(parts))

    def conj(self) -> Formula:
        parts = [self.unary()]
        while self.peek().kind == "&":
            self.next()
            parts.append(self.unary())
        return parts[0] if len(parts) == 1 else Conj(tuple(parts))

    def unary(self) -> Formula:
        t = self.peek()
        if t.kind == "ident" and t.text == "not":
            self.next()
            return Impl(self.unary(), BOT)
        return self.primary()

    def primary(self) -> Formula:
        t = self.peek()
        if t.kind == "(":
            self.next()
            f = self.formula()
            self.expect(")")
            return f
        if t.kind != "ident":
            self.fail(f"expected a formula, found {t.text or 'end of input'!r}")
        if t.text == "top":
            self.next()
            return TOP
        if t.text == "bot":
            self.next()
            return BOT
        if t.text in ("And", "Or"):
            self.next()
            self.expect("{")
            items: list[Formula] = []
            if self.peek().kind != "}":
                items.append(self.formula())
                while self.peek().kind == ";":
                    self.next()
                    items.append(self.formula())
            self.expect("}")
            return Conj(tuple(items)) if t.text == "And" else Disj(tuple(items))
        if t.text == "not":
            self.fail("'not' is a connective, not an atom")
        return AtomRef(self.atom())

    def atom(self) -> Atom:
        t = self.expect("ident")
        if t.text in KEYWORDS:
            raise ParseError(f"{t.text!r} is reserved and cannot name an atom", t.line, t.col)
        args: list[str] = []
        if self.peek().kind == "(":
            self.next()
            args.append(self.expect("ident").text)
            while self.peek().kind == ",":
                self.next()
                args.append(self.expect("ident").text)
            self.expect(")")
        return Atom(t.text, tuple(args))

    def at_eof(self) -> bool:
        return self.peek().kind == "eof"


def parse_formula(text: str) -> Formula:
    """Parse a single formula; the whole input must be consumed."""
    p = _Parser(text)
    f = p.formula()
    if not p.at_eof():
        p.fail("trailing input after formula")
    return f


def parse_program(text: str) -> list[Formula]:
    """Parse a sequence of '.'-terminated formulas."""
    p = _Parser(text)
    out: list[Formula] = []
    while not p.at_eof():
        out.append(p.formula())
        p.expect(".")
    return out


def parse_atom(text: str) -> Atom:
    p = _Parser(text)
    a = p.atom()
    if not p.at_eof():
        p.fail("trailing input after atom")
    return a


def parse_atom_list(text: str) -> list[Atom]:
    """Comma-separated atoms; commas inside argument lists do not split."""
    p = _Parser(text.strip())
    out = [p.atom()]
    while p.peek().kind == ",":
        p.next()
        out.append(p.atom())
    if not p.at_eof():
        p.fail("trailing input after atom list")
    return out


def parse_interpretation(text: str) -> frozenset[Atom]:
    """Parse the `{a,b,c}` rendering of an interpretation."""
    p = _Parser(text.strip())
    p.expect("{")
    atoms: list[Atom] = []
    if p.peek().kind != "}":
        atoms.append(p.atom())
        while p.peek().kind == ",":
            p.next()
            atoms.append(p.atom())
    p.expect("}")
    if not p.at_eof():
        p.fail("trailing input after interpretation")
    return frozenset(atoms)
