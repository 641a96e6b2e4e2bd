"""Line-oriented ideal files.

    # comment
    field Fp 32003        (or: field Q)
    vars x y z
    gen x^2 + 3*y*z
    gen (x - y)^2

Coefficients are integers; over Q a coefficient may be divided by a
nonzero constant (``3/2*x``) so every ideal prints to a parseable file.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .algebra import DEFAULT_FIELD, FieldSpec, IdealSpec, Polynomial


class IdealFileError(ValueError):
    def __init__(self, msg: str, line: int | None = None, col: int | None = None):
        self.line, self.col, self.msg = line, col, msg
        where = ""
        if line is not None:
            where = f"line {line}" + (f", col {col}" if col is not None else "") + ": "
        super().__init__(where + msg)


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(\S))")


@dataclass
class _Tok:
    kind: str  # int | name | op | end
    text: str
    col: int


def _tokenize(s: str, line: int, col0: int) -> list[_Tok]:
    out = []
    pos = 0
    while pos < len(s):
        m = _TOKEN.match(s, pos)
        if m is None or m.end() == pos:
            break
        c = col0 + m.start(m.lastindex)
        if m.group(1):
            out.append(_Tok("int", m.group(1), c))
        elif m.group(2):
            out.append(_Tok("name", m.group(2), c))
        else:
            ch = m.group(3)
            if ch not in "+-*/^()":
                raise IdealFileError(f"unexpected character {ch!r}", line, c)
            out.append(_Tok("op", ch, c))
        pos = m.end()
    out.append(_Tok("end", "", col0 + len(s)))
    return out


class _Parser:
    def __init__(self, toks, field: FieldSpec, names, line: int):
        self.toks = toks
        self.i = 0
        self.F = field
        self.n = len(names)
        self.var = {v: k for k, v in enumerate(names)}
        self.line = line

    def peek(self) -> _Tok:
        return self.toks[self.i]

    def take(self) -> _Tok:
        t = self.toks[self.i]
        self.i += 1
        return t

    def err(self, msg, tok=None):
        tok = tok or self.peek()
        return IdealFileError(msg, self.line, tok.col)

    def parse(self) -> Polynomial:
        p = self.expr()
        if self.peek().kind != "end":
            raise self.err(f"unexpected {self.peek().text!r}")
        return p

    def expr(self):
        p = self.term()
        while self.peek().text in ("+", "-") and self.peek().kind == "op":
            op = self.take().text
            q = self.term()
            p = p + q if op == "+" else p - q
        return p

    def term(self):
        p = self.unary()
        while self.peek().kind == "op" and self.peek().text in ("*", "/"):
            op = self.take()
            q = self.unary()
            if op.text == "*":
                p = p * q
            else:
                if q.is_zero():
                    raise self.err("division by zero", op)
                if any(sum(m) for m in q.terms):
                    raise self.err("only division by a constant is allowed", op)
                p = p.scale(self.F.inv(next(iter(q.terms.values()))))
        return p

    def unary(self):
        t = self.peek()
        if t.kind == "op" and t.text in "+-":
            self.take()
            p = self.unary()
            return -p if t.text == "-" else p
        return self.power()

    def power(self):
        p = self.atom()
        if self.peek().kind == "op" and self.peek().text == "^":
            self.take()
            t = self.take()
            if t.kind != "int":
                raise self.err("exponent must be a positive integer", t)
            k = int(t.text)
            if k < 1:
                raise self.err("exponent must be a positive integer", t)
            p = p**k
        return p

    def atom(self):
        t = self.take()
        if t.kind == "int":
            return Polynomial.constant(self.F, self.n, int(t.text))
        if t.kind == "name":
            if t.text not in self.var:
                raise self.err(f"unknown variable {t.text!r}", t)
            return Polynomial.variable(self.F, self.n, self.var[t.text])
        if t.kind == "op" and t.text == "(":
            p = self.expr()
            c = self.take()
            if c.text != ")":
                raise self.err("expected ')'", c)
            return p
        raise self.err("expected a number, variable or '('" if t.kind != "end" else "unexpected end of expression", t)


def parse_polynomial(text: str, field: FieldSpec, names, line: int = 1, col0: int = 1) -> Polynomial:
    return _Parser(_tokenize(text, line, col0), field, names, line).parse()


def parse_ideal_file(text: str) -> IdealSpec:
    field = None
    names = None
    gens: list[Polynomial] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0]
        stripped = body.strip()
        if not stripped:
            continue
        key, _, rest = stripped.partition(" ")
        rest_col = body.index(stripped) + len(key) + 2
        rest = rest.strip()
        if key == "field":
            if field is not None:
                raise IdealFileError("field given twice", lineno)
            if gens:
                raise IdealFileError("field must come before the generators", lineno)
            parts = rest.split()
            if parts == ["Q"]:
                field = FieldSpec.rationals()
            elif len(parts) == 2 and parts[0] == "Fp" and parts[1].isdigit():
                try:
                    field = FieldSpec.prime(int(parts[1]))
                except ValueError as exc:
                    raise IdealFileError(str(exc), lineno) from None
            else:
                raise IdealFileError("expected 'field Fp <p>' or 'field Q'", lineno)
        elif key == "vars":
            if names is not None:
                raise IdealFileError("vars given twice", lineno)
            vs = rest.split()
            if not vs:
                raise IdealFileError("vars needs at least one name", lineno)
            for v in vs:
                if not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", v):
                    raise IdealFileError(f"bad variable name {v!r}", lineno)
            dup = sorted({v for v in vs if vs.count(v) > 1})
            if dup:
                raise IdealFileError(f"duplicate variable {dup[0]!r}", lineno)
            names = tuple(vs)
        elif key == "gen":
            if names is None:
                raise IdealFileError("'vars' must come before the first 'gen'", lineno)
            if not rest:
                raise IdealFileError("empty generator", lineno)
            F = field or DEFAULT_FIELD
            field = F
            col = raw.index(rest, rest_col - 1) + 1 if rest in raw else rest_col
            g = parse_polynomial(rest, F, names, lineno, col)
            if g.is_zero():
                raise IdealFileError(f"generator {rest!r} is zero", lineno)
            if not g.is_homogeneous:
                degs = "{" + ", ".join(str(e) for e in sorted(g.term_degrees())) + "}"
                raise IdealFileError(f"generator {rest!r} is not homogeneous: term degrees {degs}", lineno)
            gens.append(g)
        else:
            raise IdealFileError(f"unknown directive {key!r} (expected field, vars or gen)", lineno, 1)
    if names is None:
        raise IdealFileError("missing 'vars' line")
    if not gens:
        raise IdealFileError("no generators")
    return IdealSpec(field or DEFAULT_FIELD, names, tuple(gens))


def format_ideal_file(I: IdealSpec) -> str:
    lines = [f"field {'Q' if not I.field.is_prime else f'Fp {I.field.p}'}", "vars " + " ".join(I.variables)]
    lines += ["gen " + g.to_string(I.variables) for g in I.generators]
    return "\n".join(lines) + "\n"
