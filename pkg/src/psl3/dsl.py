"""A small language for linear identities between shifted characters.

Grammar::

    expr     := ['-'] term (('+' | '-') term)*
    term     := [monomial '*'] chi
    monomial := factor ('*' factor)*
    factor   := ('x1' | 'x2' | 'q') ['^' int]
    chi      := 'chi' '(' nat ';' nat ',' nat ',' nat ')' '(' arg ',' arg ')'
    arg      := ('x1' | 'x2') ['*' 'q' ['^' int]]

``chi(k;k0,k1,k2)(x1*q^a, x2*q^b)`` is chi'_{W(k0 L0 + k1 L1 + k2 L2)} with
x1 -> x1 q^a and x2 -> x2 q^b. Example::

    chi(1;1,0,0)(x1*q^1,x2) - chi(1;0,1,0)(x1,x2)
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Callable

from .characters import UnsupportedFamily, char_of_weight
from .qseries import Envelope, Series, required_q_order, sum_series
from .rootdata import AffineHW


class DSLSyntaxError(ValueError):
    def __init__(self, message: str, offset: int, text: str = ""):
        super().__init__(f"{message} at offset {offset}")
        self.offset = offset
        self.text = text


@dataclass(frozen=True)
class Arg:
    var: str  # "x1" or "x2"
    qpow: int = 0


@dataclass(frozen=True)
class Term:
    sign: int
    weight: tuple[int, int, int]
    args: tuple[Arg, Arg]
    x1: int = 0
    x2: int = 0
    q: int = 0

    @property
    def level(self) -> int:
        return sum(self.weight)


@dataclass(frozen=True)
class IdentityExpr:
    terms: tuple[Term, ...]


_TOKEN = re.compile(r"\s*(?:(?P<name>chi|x1|x2|q)|(?P<num>\d+)|(?P<sym>[-+*^();,]))")


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens: list[tuple[str, str, int]] = []
        pos = 0
        while True:
            match = _TOKEN.match(text, pos)
            if match is None:
                rest = len(text) - len(text[pos:].lstrip())
                if rest >= len(text):
                    break
                raise DSLSyntaxError(f"unexpected character {text[rest]!r}", rest, text)
            kind = match.lastgroup
            start = match.start(kind)
            self.tokens.append((kind, match.group(kind), start))
            pos = match.end()
        self.i = 0

    def peek(self, value: str | None = None) -> bool:
        if self.i >= len(self.tokens):
            return False
        return value is None or self.tokens[self.i][1] == value

    def offset(self) -> int:
        return self.tokens[self.i][2] if self.i < len(self.tokens) else len(self.text)

    def fail(self, expected: str):
        found = repr(self.tokens[self.i][1]) if self.i < len(self.tokens) else "end of input"
        raise DSLSyntaxError(f"expected {expected}, found {found}", self.offset(), self.text)

    def expect(self, value: str) -> int:
        if not self.peek(value):
            self.fail(repr(value))
        self.i += 1
        return self.tokens[self.i - 1][2]

    def nat(self) -> int:
        if self.i < len(self.tokens) and self.tokens[self.i][0] == "num":
            self.i += 1
            return int(self.tokens[self.i - 1][1])
        self.fail("a natural number")

    def integer(self) -> int:
        sign = 1
        if self.peek("-") or self.peek("+"):
            sign = -1 if self.tokens[self.i][1] == "-" else 1
            self.i += 1
        return sign * self.nat()

    def power(self) -> int:
        if self.peek("^"):
            self.i += 1
            return self.integer()
        return 1

    def parse(self) -> IdentityExpr:
        terms = []
        sign = 1
        if self.peek("-"):
            self.i += 1
            sign = -1
        terms.append(self.term(sign))
        while self.peek("+") or self.peek("-"):
            sign = 1 if self.tokens[self.i][1] == "+" else -1
            self.i += 1
            terms.append(self.term(sign))
        if self.i < len(self.tokens):
            self.fail("'+', '-' or end of input")
        return IdentityExpr(tuple(terms))

    def term(self, sign: int) -> Term:
        exps = {"x1": 0, "x2": 0, "q": 0}
        while not self.peek("chi"):
            if not (self.peek("x1") or self.peek("x2") or self.peek("q")):
                self.fail("'chi' or a monomial factor")
            name = self.tokens[self.i][1]
            self.i += 1
            exps[name] += self.power()
            self.expect("*")
        self.expect("chi")
        self.expect("(")
        at = self.offset()
        k = self.nat()
        self.expect(";")
        k0 = self.nat()
        self.expect(",")
        k1 = self.nat()
        self.expect(",")
        k2 = self.nat()
        self.expect(")")
        if k != k0 + k1 + k2 or k < 1:
            raise DSLSyntaxError(f"level {k} does not match {k0}+{k1}+{k2}", at, self.text)
        self.expect("(")
        first = self.arg()
        self.expect(",")
        at = self.offset()
        second = self.arg()
        self.expect(")")
        if first.var == second.var:
            raise DSLSyntaxError("both arguments use the same variable", at, self.text)
        return Term(sign, (k0, k1, k2), (first, second), exps["x1"], exps["x2"], exps["q"])

    def arg(self) -> Arg:
        if not (self.peek("x1") or self.peek("x2")):
            self.fail("'x1' or 'x2'")
        var = self.tokens[self.i][1]
        self.i += 1
        qpow = 0
        if self.peek("*"):
            self.i += 1
            self.expect("q")
            qpow = self.power()
        return Arg(var, qpow)


def parse_identity(text: str) -> IdentityExpr:
    return _Parser(text).parse()


def _fmt_arg(a: Arg) -> str:
    return a.var if a.qpow == 0 else f"{a.var}*q^{a.qpow}"


def pretty(expr: IdentityExpr) -> str:
    out = []
    for n, t in enumerate(expr.terms):
        if n == 0:
            out.append("-" if t.sign < 0 else "")
        else:
            out.append(" - " if t.sign < 0 else " + ")
        mono = [f"{v}^{e}" for v, e in (("x1", t.x1), ("x2", t.x2), ("q", t.q)) if e]
        k0, k1, k2 = t.weight
        chi = f"chi({t.level};{k0},{k1},{k2})({_fmt_arg(t.args[0])},{_fmt_arg(t.args[1])})"
        out.append("*".join(mono + [chi]))
    return "".join(out)


CharacterSource = Callable[[AffineHW, int, int], Series]


def eval_term(t: Term, shift: tuple[int, int], max_charge: int, s_max: int,
              characters: CharacterSource | None = None) -> Series:
    """One term, multiplied by x1**shift[0] * x2**shift[1], exact on (max_charge, s_max)."""
    characters = characters or char_of_weight
    d1, d2, ds = t.x1 + shift[0], t.x2 + shift[1], t.q
    # a1, a2 shift chi's own first and second variable; a swapped argument list
    # means chi(x2 q^a1, x1 q^a2), i.e. shift first and rename afterwards.
    a1, a2 = t.args[0].qpow, t.args[1].qpow
    c_in = max(0, max_charge - d1 - d2)
    down = max(0, -a1, -a2)
    s_in = max(0, required_q_order(s_max - ds, down, c_in))
    series = characters(AffineHW(*t.weight), c_in, s_in).subst_q_shift(a1, a2)
    if t.args[0].var == "x2":
        series = series.swap_charges()
    series = series.scale_monomial(d1, d2, ds)
    return series.truncate(max_charge, s_max).scale(t.sign)


def normalising_shift(expr: IdentityExpr) -> tuple[int, int]:
    """Powers of x1, x2 that clear every negative exponent in the monomials."""
    return (max(0, -min(t.x1 for t in expr.terms)), max(0, -min(t.x2 for t in expr.terms)))


def eval_identity(expr: IdentityExpr, max_charge: int, s_max: int,
                  characters: CharacterSource | None = None) -> Series:
    """Value of the expression times the normalising monomial, exact on the window."""
    shift = normalising_shift(expr)
    for t in expr.terms:
        if all(t.weight):
            raise UnsupportedFamily(f"chi{t.weight} has all three coefficients positive")
    parts = [eval_term(t, shift, max_charge, s_max, characters) for t in expr.terms]
    env = parts[0].envelope
    for p in parts[1:]:
        env = env.meet(p.envelope)
    return sum_series(parts, Envelope(env.max_charge, env.s_min, env.s_max))
