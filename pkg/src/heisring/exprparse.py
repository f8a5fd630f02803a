"""Small expression language for user-defined profile curves.

Grammar (whitespace insignificant, ``#`` comments to end of line):

    statement := "param" NAME "=" expr | NAME "=" expr
               | "domain" "=" "(" expr "," expr ")"
    expr      := term (("+" | "-") term)*
    term      := unary (("*" | "/") unary)*
    unary     := "-" unary | power
    power     := atom ("^" unary)?          # right associative, const exponent
    atom      := NUMBER | NAME | "(" expr ")" | FUNC "(" expr ")"

Known functions: sin cos tan sqrt exp log abs atan. The constant ``pi`` and
declared parameter names are in scope; ``s`` is the curve parameter.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass

from . import autodiff as ad


class ParseError(ValueError):
    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} (at position {pos})")
        self.pos = pos


_TOKEN_RE = re.compile(
    r"\s*(?:(?P<num>\d+\.?\d*(?:[eE][+-]?\d+)?|\.\d+(?:[eE][+-]?\d+)?)"
    r"|(?P<name>[A-Za-z_][A-Za-z_0-9]*)"
    r"|(?P<op>[-+*/^(),=]))"
)


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    pos: int


def tokenize(text: str) -> list[Token]:
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos].isspace():
            pos += 1
            continue
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", pos)
        kind = m.lastgroup
        tokens.append(Token(kind, m.group(kind), m.start(kind)))
        pos = m.end()
    return tokens


# -- AST ----------------------------------------------------------------------


@dataclass(frozen=True)
class Num:
    value: float


@dataclass(frozen=True)
class Var:
    name: str
    pos: int


@dataclass(frozen=True)
class Unary:
    op: str
    arg: object


@dataclass(frozen=True)
class Binary:
    op: str
    left: object
    right: object


@dataclass(frozen=True)
class Call:
    func: str
    arg: object
    pos: int


class _Parser:
    def __init__(self, tokens: list[Token], end: int):
        self.tokens = tokens
        self.i = 0
        self.end = end

    def peek(self) -> Token | None:
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def next(self) -> Token:
        tok = self.peek()
        if tok is None:
            raise ParseError("unexpected end of expression", self.end)
        self.i += 1
        return tok

    def expect(self, text: str) -> Token:
        tok = self.next()
        if tok.text != text:
            raise ParseError(f"expected {text!r}, found {tok.text!r}", tok.pos)
        return tok

    def parse_expr(self):
        node = self.parse_term()
        while (tok := self.peek()) is not None and tok.text in "+-":
            self.next()
            node = Binary(tok.text, node, self.parse_term())
        return node

    def parse_term(self):
        node = self.parse_unary()
        while (tok := self.peek()) is not None and tok.text in "*/":
            self.next()
            node = Binary(tok.text, node, self.parse_unary())
        return node

    def parse_unary(self):
        tok = self.peek()
        if tok is not None and tok.text == "-":
            self.next()
            return Unary("-", self.parse_unary())
        return self.parse_power()

    def parse_power(self):
        base = self.parse_atom()
        tok = self.peek()
        if tok is not None and tok.text == "^":
            self.next()
            return Binary("^", base, self.parse_unary())
        return base

    def parse_atom(self):
        tok = self.next()
        if tok.kind == "num":
            return Num(float(tok.text))
        if tok.kind == "name":
            nxt = self.peek()
            if nxt is not None and nxt.text == "(":
                if tok.text not in ad.FUNCTIONS:
                    raise ParseError(f"unknown function {tok.text!r}", tok.pos)
                self.next()
                arg = self.parse_expr()
                self.expect(")")
                return Call(tok.text, arg, tok.pos)
            return Var(tok.text, tok.pos)
        if tok.text == "(":
            node = self.parse_expr()
            self.expect(")")
            return node
        raise ParseError(f"unexpected token {tok.text!r}", tok.pos)


def parse_expression(text: str):
    tokens = tokenize(text)
    parser = _Parser(tokens, len(text))
    node = parser.parse_expr()
    if parser.peek() is not None:
        tok = parser.peek()
        raise ParseError(f"trailing input {tok.text!r}", tok.pos)
    return node


# -- evaluation ---------------------------------------------------------------


def depends_on(node, name: str) -> bool:
    if isinstance(node, Var):
        return node.name == name
    if isinstance(node, Unary):
        return depends_on(node.arg, name)
    if isinstance(node, Binary):
        return depends_on(node.left, name) or depends_on(node.right, name)
    if isinstance(node, Call):
        return depends_on(node.arg, name)
    return False


def evaluate(node, env: dict):
    """Evaluate an AST; env maps names to Dual2 or floats."""
    if isinstance(node, Num):
        return node.value
    if isinstance(node, Var):
        try:
            return env[node.name]
        except KeyError:
            raise ParseError(f"unknown identifier {node.name!r}", node.pos) from None
    if isinstance(node, Unary):
        return -evaluate(node.arg, env)
    if isinstance(node, Call):
        arg = evaluate(node.arg, env)
        fn = ad.FUNCTIONS[node.func]
        if isinstance(arg, ad.Dual2):
            return fn(arg)
        return fn(ad.Dual2(arg)).val
    if isinstance(node, Binary):
        if node.op == "^":
            if depends_on(node.right, "s"):
                raise ParseError("exponent must not depend on s", 0)
            p = evaluate(node.right, dict(env, s=0.0))
            if isinstance(p, ad.Dual2):
                p = p.val
            base = evaluate(node.left, env)
            if isinstance(base, ad.Dual2):
                return base.pow_const(float(p))
            return base ** float(p)
        left = evaluate(node.left, env)
        right = evaluate(node.right, env)
        if node.op == "+":
            return left + right
        if node.op == "-":
            return left - right
        if node.op == "*":
            return left * right
        return left / right
    raise TypeError(f"bad AST node {node!r}")


def strip_comments(text: str) -> str:
    return "\n".join(line.split("#", 1)[0] for line in text.splitlines())


_DOMAIN_RE = re.compile(r"^\s*\(\s*(.*?)\s*,\s*(.*?)\s*\)\s*$", re.S)


def parse_profile_source(text: str):
    """Parse a profile definition file.

    Returns (f_ast, g_ast, (lo, hi), params). Raises ParseError on syntax
    errors, missing statements or a malformed domain.
    """
    params: dict[str, float] = {"pi": math.pi}
    f_ast = g_ast = None
    domain = None
    for raw in strip_comments(text).replace(";", "\n").splitlines():
        line = raw.strip()
        if not line:
            continue
        if line.startswith("param "):
            head, _, rhs = line[6:].partition("=")
            name = head.strip()
            if not name.isidentifier() or not rhs.strip():
                raise ParseError(f"bad param statement {line!r}", 0)
            value = evaluate(parse_expression(rhs), dict(params))
            params[name] = float(value)
            continue
        head, eq, rhs = line.partition("=")
        name = head.strip()
        if not eq or not rhs.strip():
            raise ParseError(f"bad statement {line!r}", 0)
        if name == "domain":
            m = _DOMAIN_RE.match(rhs)
            if m is None:
                raise ParseError(f"domain must be of the form (lo, hi): {rhs!r}", 0)
            lo = float(evaluate(parse_expression(m.group(1)), dict(params)))
            hi = float(evaluate(parse_expression(m.group(2)), dict(params)))
            if not lo < hi:
                raise ParseError(f"empty domain ({lo}, {hi})", 0)
            domain = (lo, hi)
        elif name == "f":
            f_ast = parse_expression(rhs)
        elif name == "g":
            g_ast = parse_expression(rhs)
        else:
            raise ParseError(f"unknown statement {name!r}", 0)
    if f_ast is None or g_ast is None or domain is None:
        missing = [n for n, v in (("f", f_ast), ("g", g_ast), ("domain", domain)) if v is None]
        raise ParseError(f"missing statements: {', '.join(missing)}", 0)
    return f_ast, g_ast, domain, params
