"""A small arithmetic language for coefficient functions of one variable ``x``.

Grammar::

    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/') unary)*
    unary  := '-' unary | power
    power  := atom ('^' unary)?
    atom   := number | ident | ident '(' expr ')' | '(' expr ')'

``^`` is right-associative and binds tighter than unary minus, so ``-2^2``
is ``-4`` and ``2^3^2`` is ``512``.  There is no implicit multiplication.
Identifiers other than ``x`` and the function names are named constants;
``pi`` is pre-bound.

>>> evaluate(parse("(C-2-x^2*(1+x))/(1+x)^3"), 0.0, {"C": 0.0})
-2.0
"""

from dataclasses import dataclass
import math
import re

import numpy as np

__all__ = [
    "ExprError",
    "ExprSyntaxError",
    "ExprEvalError",
    "Num",
    "Var",
    "Const",
    "Neg",
    "BinOp",
    "Call",
    "parse",
    "evaluate",
    "to_source",
    "constants_used",
    "bind",
    "FUNCTIONS",
]

FUNCTIONS = {
    "sin": np.sin,
    "cos": np.cos,
    "tan": np.tan,
    "exp": np.exp,
    "log": np.log,
    "sqrt": np.sqrt,
    "abs": np.abs,
}

BUILTIN_CONSTANTS = {"pi": math.pi}


class ExprError(ValueError):
    pass


class ExprSyntaxError(ExprError):
    def __init__(self, message, source, offset):
        self.source = source
        self.offset = offset
        super().__init__(f"{message} at offset {offset}: {source!r}")


class ExprEvalError(ExprError):
    def __init__(self, message, x=None):
        self.x = x
        super().__init__(message if x is None else f"{message} at x={x!r}")


@dataclass(frozen=True)
class Num:
    value: float


@dataclass(frozen=True)
class Var:
    pass


@dataclass(frozen=True)
class Const:
    name: str


@dataclass(frozen=True)
class Neg:
    operand: object


@dataclass(frozen=True)
class BinOp:
    op: str
    left: object
    right: object


@dataclass(frozen=True)
class Call:
    func: str
    arg: object


_TOKEN = re.compile(
    r"\s*(?:(?P<num>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)|(?P<ident>[A-Za-z_]\w*)|(?P<op>[-+*/^()]))"
)


def _tokenize(source):
    tokens = []
    pos = 0
    while pos < len(source):
        if source[pos:].strip() == "":
            break
        m = _TOKEN.match(source, pos)
        if m is None:
            bad = len(source) - len(source[pos:].lstrip())
            raise ExprSyntaxError(f"unexpected character {source[bad]!r}", source, bad)
        kind = m.lastgroup
        tokens.append((kind, m.group(kind), m.start(kind)))
        pos = m.end()
    tokens.append(("end", "", len(source)))
    return tokens


class _Parser:
    def __init__(self, source):
        self.source = source
        self.tokens = _tokenize(source)
        self.i = 0

    @property
    def tok(self):
        return self.tokens[self.i]

    def error(self, expected):
        kind, text, offset = self.tok
        found = "end of input" if kind == "end" else repr(text)
        raise ExprSyntaxError(f"expected {expected}, found {found}", self.source, offset)

    def accept(self, text):
        if self.tok[0] == "op" and self.tok[1] == text:
            self.i += 1
            return True
        return False

    def expect(self, text):
        if not self.accept(text):
            self.error(repr(text))

    def expr(self):
        node = self.term()
        while self.tok[0] == "op" and self.tok[1] in "+-":
            op = self.tok[1]
            self.i += 1
            node = BinOp(op, node, self.term())
        return node

    def term(self):
        node = self.unary()
        while self.tok[0] == "op" and self.tok[1] in "*/":
            op = self.tok[1]
            self.i += 1
            node = BinOp(op, node, self.unary())
        return node

    def unary(self):
        if self.accept("-"):
            return Neg(self.unary())
        return self.power()

    def power(self):
        base = self.atom()
        if self.accept("^"):
            return BinOp("^", base, self.unary())
        return base

    def atom(self):
        kind, text, offset = self.tok
        if kind == "num":
            self.i += 1
            return Num(float(text))
        if kind == "ident":
            self.i += 1
            if self.accept("("):
                if text not in FUNCTIONS:
                    raise ExprSyntaxError(f"unknown function {text!r}", self.source, offset)
                arg = self.expr()
                self.expect(")")
                return Call(text, arg)
            if text in FUNCTIONS:
                self.error(f"'(' after function name {text!r}")
            return Var() if text == "x" else Const(text)
        if self.accept("("):
            node = self.expr()
            self.expect(")")
            return node
        self.error("a number, identifier or '('")


def parse(source):
    """Parse `source` into an expression tree."""
    if not source or not source.strip():
        raise ExprSyntaxError("empty expression", source or "", 0)
    p = _Parser(source)
    node = p.expr()
    if p.tok[0] != "end":
        p.error("an operator or end of input")
    return node


def constants_used(node):
    if isinstance(node, Const):
        return {node.name}
    if isinstance(node, Neg):
        return constants_used(node.operand)
    if isinstance(node, BinOp):
        return constants_used(node.left) | constants_used(node.right)
    if isinstance(node, Call):
        return constants_used(node.arg)
    return set()


def _eval(node, x, env):
    if isinstance(node, Num):
        return node.value
    if isinstance(node, Var):
        return x
    if isinstance(node, Const):
        return env[node.name]
    if isinstance(node, Neg):
        return -_eval(node.operand, x, env)
    if isinstance(node, Call):
        return FUNCTIONS[node.func](_eval(node.arg, x, env))
    a = _eval(node.left, x, env)
    b = _eval(node.right, x, env)
    if node.op == "+":
        return a + b
    if node.op == "-":
        return a - b
    if node.op == "*":
        return a * b
    if node.op == "/":
        return np.divide(a, b)
    return np.power(a, b)


def evaluate(node, x, constants=None):
    """Evaluate `node` at `x` (a float or numpy array).

    Raises `ExprEvalError` for unbound constants and for any non-finite
    result (division by zero, log of a non-positive number, ...).
    """
    env = dict(BUILTIN_CONSTANTS)
    env.update(constants or {})
    missing = constants_used(node) - env.keys()
    if missing:
        raise ExprEvalError(f"unbound constant(s): {', '.join(sorted(missing))}")
    xa = np.asarray(x, dtype=float)
    with np.errstate(all="ignore"):
        out = np.asarray(_eval(node, xa, env), dtype=float)
        out = np.broadcast_to(out, xa.shape).copy() if out.shape != xa.shape else out
    bad = ~np.isfinite(out)
    if np.any(bad):
        where = float(xa) if xa.ndim == 0 else float(xa[np.argmax(bad)])
        raise ExprEvalError("non-finite result", where)
    return float(out) if xa.ndim == 0 else out


def bind(node, constants=None):
    """Return a callable ``f(x)`` evaluating `node` with fixed constants."""
    if isinstance(node, str):
        node = parse(node)
    constants = dict(constants or {})

    def f(x):
        return evaluate(node, x, constants)

    f.expr = node
    return f


_PREC = {"+": 1, "-": 1, "*": 2, "/": 2}


def to_source(node):
    """Canonical, fully parenthesised text that re-parses to the same tree."""
    if isinstance(node, Num):
        return repr(node.value)
    if isinstance(node, Var):
        return "x"
    if isinstance(node, Const):
        return node.name
    if isinstance(node, Neg):
        return f"(-{to_source(node.operand)})"
    if isinstance(node, Call):
        return f"{node.func}({to_source(node.arg)})"
    return f"({to_source(node.left)} {node.op} {to_source(node.right)})"
