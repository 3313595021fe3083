"""Symmetric function expressions for the ``phi`` command.

Grammar::

    expr   := term (('+' | '-') term)*
    term   := factor (('*' | '/') factor)*
    factor := '-' factor | atom ('^' '-'? INT)?
    atom   := INT | 'q1' | 'q2' | NAME '[' ARG ']' | '(' expr ')'

``NAME`` is one of ``ebar hbar pbar sbar rbar`` (barred) or ``h p s ribbon``
(modified).  ``ARG`` is a degree, a partition (``2,1`` or ``21``) or a sign
sequence (``+-`` or ``+,-``).
"""
from __future__ import annotations

import re

from . import symfunc as sf
from .arith import RatFunc
from .errors import ParseError

__all__ = ["parse_symfunc", "NAMES"]

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z][A-Za-z0-9]*)|(\[[^\]]*\])|(.))")


def _degree(arg):
    if not arg.isdigit():
        raise ValueError(f"expected a degree, got {arg!r}")
    return int(arg)


def _partition(arg):
    if "," in arg:
        parts = [int(x) for x in arg.split(",") if x.strip()]
    else:
        if not arg.isdigit():
            raise ValueError(f"expected a partition, got {arg!r}")
        parts = [int(c) for c in arg]
    if any(p <= 0 for p in parts) or parts != sorted(parts, reverse=True):
        raise ValueError(f"{arg!r} is not a partition")
    return tuple(parts)


def _signs(arg):
    signs = arg.replace(",", "").replace(" ", "")
    if any(c not in "+-" for c in signs):
        raise ValueError(f"expected a sign sequence, got {arg!r}")
    return signs


NAMES = {
    "ebar": (_degree, sf.ebar),
    "hbar": (_degree, sf.hbar),
    "pbar": (_degree, sf.pbar),
    "h": (_degree, sf.h),
    "p": (_degree, sf.p),
    "sbar": (_partition, sf.sbar),
    "s": (_partition, sf.schur),
    "rbar": (_signs, lambda e: sf.ribbon(e, "barred")),
    "ribbon": (_signs, lambda e: sf.ribbon(e, "modified")),
}


def _tokenize(text):
    out = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m.group(0).strip() == "":
            break
        start = m.start(m.lastindex)
        kind = ("int", "name", "arg", "op")[m.lastindex - 1]
        out.append((kind, m.group(m.lastindex), start))
        pos = m.end()
    out.append(("end", "", len(text)))
    return out


class _Parser:
    def __init__(self, text):
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def expect_op(self, op):
        kind, val, pos = self.take()
        if kind != "op" or val != op:
            raise ParseError(f"expected {op!r}, found {val or 'end of input'!r}", pos)

    def parse(self):
        value = self.expr()
        kind, val, pos = self.peek()
        if kind != "end":
            raise ParseError(f"unexpected {val!r}", pos)
        return value

    def expr(self):
        value = self.term()
        while self.peek()[:2] in (("op", "+"), ("op", "-")):
            op = self.take()[1]
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self):
        value = self.factor()
        while self.peek()[:2] in (("op", "*"), ("op", "/")):
            _, op, pos = self.take()
            rhs = self.factor()
            if op == "*":
                value = value * rhs
            else:
                try:
                    value = value / rhs
                except (ValueError, ZeroDivisionError) as exc:
                    raise ParseError(str(exc), pos) from None
        return value

    def factor(self):
        if self.peek()[:2] == ("op", "-"):
            self.take()
            return -self.factor()
        base = self.atom()
        if self.peek()[:2] == ("op", "^"):
            _, _, pos = self.take()
            sign = 1
            if self.peek()[:2] == ("op", "-"):
                self.take()
                sign = -1
            kind, val, epos = self.take()
            if kind != "int":
                raise ParseError("expected an integer exponent", epos)
            k = sign * int(val)
            if k < 0:
                if set(base.terms) - {()}:
                    raise ParseError("negative powers need a scalar base", pos)
                c = base.terms.get(())
                if c is None:
                    raise ParseError("zero to a negative power", pos)
                return sf.SymFuncExpr.scalar(c ** k)
            return base**k
        return base

    def atom(self):
        kind, val, pos = self.take()
        if kind == "int":
            return sf.SymFuncExpr.scalar(int(val))
        if kind == "op" and val == "(":
            value = self.expr()
            self.expect_op(")")
            return value
        if kind == "name":
            if val in ("q1", "q2"):
                return sf.SymFuncExpr.scalar(RatFunc.var(sf.QVARS, val))
            if val not in NAMES:
                raise ParseError(f"unknown name {val!r}", pos)
            akind, arg, apos = self.take()
            if akind != "arg":
                raise ParseError(f"{val} needs a bracketed argument", apos)
            convert, build = NAMES[val]
            try:
                return build(convert(arg[1:-1].strip()))
            except ValueError as exc:
                raise ParseError(str(exc), apos) from None
        raise ParseError(f"unexpected {val or 'end of input'!r}", pos)


def parse_symfunc(text: str) -> sf.SymFuncExpr:
    """Parse ``text`` into a :class:`SymFuncExpr`; raises :class:`ParseError`."""
    return _Parser(text).parse()
