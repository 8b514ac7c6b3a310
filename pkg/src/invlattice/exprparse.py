"""Parser for integer Laurent-style polynomials in named exponentials.

Grammar (whitespace-insensitive)::

    expr   := term (('+' | '-') term)*
    term   := unary ('*'? unary)*          juxtaposition multiplies
    unary  := ('+' | '-') unary | power
    power  := atom ('^' INT)?
    atom   := INT | IDENT | '(' expr ')'
    IDENT  := [a-z][0-9]*

The result is a polynomial in the symbols: a dict from monomials (sorted
tuples of ``(symbol, exponent)``) to integer coefficients.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Mapping, Sequence

Monomial = tuple[tuple[str, int], ...]
Polynomial = dict[Monomial, int]

_TOKEN = re.compile(r"\s*(?:(\d+)|([a-z][0-9]*)|(.))")


class ExprSyntaxError(ValueError):
    def __init__(self, message: str, position: int) -> None:
        super().__init__(f"{message} at position {position}")
        self.position = position


class UnknownSymbolError(KeyError):
    pass


@dataclass(frozen=True)
class Token:
    kind: str  # "int", "ident", "op", "end"
    text: str
    pos: int


def tokenize(text: str) -> list[Token]:
    out = []
    pos = 0
    while pos < len(text):
        if text[pos].isspace():
            pos += 1
            continue
        m = _TOKEN.match(text, pos)
        start = m.start(m.lastindex)
        if m.group(1):
            out.append(Token("int", m.group(1), start))
        elif m.group(2):
            out.append(Token("ident", m.group(2), start))
        else:
            ch = m.group(3)
            if ch not in "+-*^()":
                raise ExprSyntaxError(f"unexpected character {ch!r}", start)
            out.append(Token("op", ch, start))
        pos = m.end()
    out.append(Token("end", "", len(text)))
    return out


def _mono_mul(a: Monomial, b: Monomial) -> Monomial:
    d = dict(a)
    for s, e in b:
        d[s] = d.get(s, 0) + e
    return tuple(sorted((s, e) for s, e in d.items() if e))


def poly_add(p: Polynomial, q: Polynomial, sign: int = 1) -> Polynomial:
    out = dict(p)
    for m, c in q.items():
        out[m] = out.get(m, 0) + sign * c
        if not out[m]:
            del out[m]
    return out


def poly_mul(p: Polynomial, q: Polynomial) -> Polynomial:
    out: Polynomial = {}
    for m1, c1 in p.items():
        for m2, c2 in q.items():
            m = _mono_mul(m1, m2)
            out[m] = out.get(m, 0) + c1 * c2
            if not out[m]:
                del out[m]
    return out


class _Parser:
    def __init__(self, text: str) -> None:
        self.tokens = tokenize(text)
        self.i = 0

    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def take(self) -> Token:
        t = self.tokens[self.i]
        self.i += 1
        return t

    def expect(self, text: str) -> None:
        if self.tok.text != text or self.tok.kind != "op":
            raise ExprSyntaxError(f"expected {text!r}", self.tok.pos)
        self.i += 1

    def parse(self) -> Polynomial:
        if self.tok.kind == "end":
            raise ExprSyntaxError("empty expression", 0)
        p = self.expr()
        if self.tok.kind != "end":
            raise ExprSyntaxError(f"unexpected {self.tok.text!r}", self.tok.pos)
        return p

    def expr(self) -> Polynomial:
        p = self.term()
        while self.tok.kind == "op" and self.tok.text in "+-":
            sign = 1 if self.take().text == "+" else -1
            p = poly_add(p, self.term(), sign)
        return p

    def _starts_factor(self) -> bool:
        t = self.tok
        return t.kind in ("int", "ident") or (t.kind == "op" and t.text == "(")

    def term(self) -> Polynomial:
        p = self.unary()
        while True:
            if self.tok.kind == "op" and self.tok.text == "*":
                self.take()
                p = poly_mul(p, self.unary())
            elif self._starts_factor():
                p = poly_mul(p, self.power())
            else:
                return p

    def unary(self) -> Polynomial:
        if self.tok.kind == "op" and self.tok.text in "+-":
            sign = 1 if self.take().text == "+" else -1
            return {m: sign * c for m, c in self.unary().items()}
        return self.power()

    def power(self) -> Polynomial:
        base = self.atom()
        if self.tok.kind == "op" and self.tok.text == "^":
            self.take()
            t = self.take()
            if t.kind != "int":
                raise ExprSyntaxError("exponent must be a non-negative integer", t.pos)
            out: Polynomial = {(): 1}
            for _ in range(int(t.text)):
                out = poly_mul(out, base)
            return out
        return base

    def atom(self) -> Polynomial:
        t = self.tok
        if t.kind == "int":
            self.take()
            v = int(t.text)
            return {(): v} if v else {}
        if t.kind == "ident":
            self.take()
            return {((t.text, 1),): 1}
        if t.kind == "op" and t.text == "(":
            self.take()
            p = self.expr()
            self.expect(")")
            return p
        what = "end of input" if t.kind == "end" else repr(t.text)
        raise ExprSyntaxError(f"unexpected {what}", t.pos)


def parse_polynomial(text: str) -> Polynomial:
    return _Parser(text).parse()


def symbols_of(poly: Polynomial) -> set[str]:
    return {s for m in poly for s, _ in m}


def check_symbols(poly: Polynomial, symbols: Mapping[str, Sequence[int]]) -> None:
    missing = sorted(symbols_of(poly) - set(symbols))
    if missing:
        raise UnknownSymbolError(f"unknown symbol(s): {', '.join(missing)}")


def laurent_terms(poly: Polynomial, symbols: Mapping[str, Sequence[int]]
                  ) -> list[tuple[int, tuple[int, ...]]]:
    """Collapse each monomial to its exponent weight: a list of (coefficient, weight)."""
    check_symbols(poly, symbols)
    if not symbols:
        n = 0
    else:
        n = len(next(iter(symbols.values())))
    acc: dict[tuple[int, ...], int] = {}
    for mono, c in poly.items():
        w = [0] * n
        for s, e in mono:
            for i, x in enumerate(symbols[s]):
                w[i] += e * x
        key = tuple(w)
        acc[key] = acc.get(key, 0) + c
    return sorted((c, w) for w, c in acc.items() if c)
