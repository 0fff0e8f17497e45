"""Expression evaluation over the correlated-number field.

Conventional precedence with ``*`` and ``/`` as the field product and
quotient, ``^`` as the power (integer exponents use the polar angle
multiple, real exponents the principal logarithm) and the functions
``exp``, ``log``, ``sqrt``, ``conj``, ``norm``, ``polar`` and ``psi_mul``.
``A`` is bound to the pure fuzzy unit unless the caller rebinds it.
``polar(z)`` packs ``(modulus, argument)`` into the component slots so it
can be displayed like any other value.
"""

from __future__ import annotations

import re

from ..analytic import exp_rfa, log_rfa, pow_real
from ..core import LcNumber, norm_phi, nth_root, pow_int, to_polar
from ..dynamics import cross_product_psi

__all__ = ["ExprError", "UnboundVariableError", "eval_expression"]


class ExprError(ValueError):
    """Malformed or unevaluable expression; ``position`` is the offset."""

    def __init__(self, message: str, position: int):
        self.position = position
        super().__init__(f"{message} (at offset {position})")


class UnboundVariableError(ExprError):
    pass


_TOKEN = re.compile(
    r"\s*(?:(?P<num>(?:\d+(?:\.\d*)?|\.\d+)(?:[eE][+-]?\d+)?)"
    r"|(?P<name>[A-Za-z_]\w*)"
    r"|(?P<op>[-+*/^(),]))"
)


def _tokenize(text: str):
    text = text.replace("−", "-")
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            stripped = text[pos:].lstrip()
            if not stripped:
                break
            raise ExprError(f"unexpected character {stripped[0]!r}", len(text) - len(stripped))
        if m.lastgroup == "num":
            tokens.append(("num", float(m.group("num")), m.start("num")))
        elif m.lastgroup == "name":
            tokens.append(("name", m.group("name"), m.start("name")))
        else:
            tokens.append(("op", m.group("op"), m.start("op")))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    """Recursive descent over the token list, producing nested tuples."""

    def __init__(self, tokens):
        self.tokens = tokens
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect_op(self, symbol: str):
        kind, value, pos = self.take()
        if kind != "op" or value != symbol:
            raise ExprError(f"expected {symbol!r}", pos)

    def parse(self):
        node = self.expr()
        kind, _, pos = self.peek()
        if kind != "end":
            raise ExprError("unexpected trailing input", pos)
        return node

    def expr(self):
        node = self.term()
        while True:
            kind, value, pos = self.peek()
            if kind == "op" and value in "+-":
                self.take()
                node = ("bin", value, node, self.term(), pos)
            else:
                return node

    def term(self):
        node = self.unary()
        while True:
            kind, value, pos = self.peek()
            if kind == "op" and value in "*/":
                self.take()
                node = ("bin", value, node, self.unary(), pos)
            else:
                return node

    def unary(self):
        kind, value, pos = self.peek()
        if kind == "op" and value in "+-":
            self.take()
            node = self.unary()
            return ("neg", node) if value == "-" else node
        return self.power()

    def power(self):
        node = self.atom()
        kind, value, pos = self.peek()
        if kind == "op" and value == "^":
            self.take()
            return ("bin", "^", node, self.unary(), pos)
        return node

    def atom(self):
        kind, value, pos = self.take()
        if kind == "num":
            return ("num", value)
        if kind == "name":
            nxt_kind, nxt_value, _ = self.peek()
            if nxt_kind == "op" and nxt_value == "(":
                self.take()
                args = []
                if not self._at_op(")"):
                    args.append(self.expr())
                    while self._at_op(","):
                        self.take()
                        args.append(self.expr())
                self.expect_op(")")
                return ("call", value, args, pos)
            return ("var", value, pos)
        if kind == "op" and value == "(":
            node = self.expr()
            self.expect_op(")")
            return node
        raise ExprError("expected a value", pos)

    def _at_op(self, symbol: str) -> bool:
        kind, value, _ = self.peek()
        return kind == "op" and value == symbol


def _call(name: str, args, pos: int, a1: float) -> LcNumber:
    def arity(n):
        if len(args) != n:
            raise ExprError(f"{name} takes {n} argument(s), got {len(args)}", pos)

    if name == "exp":
        arity(1)
        return exp_rfa(args[0])
    if name == "log":
        if len(args) == 1:
            return log_rfa(args[0], 0)
        if len(args) == 2:
            branch = args[1]
            if branch.fu != 0.0 or branch.re != int(branch.re):
                raise ExprError("log branch must be a crisp integer", pos)
            return log_rfa(args[0], int(branch.re))
        raise ExprError(f"log takes 1 or 2 arguments, got {len(args)}", pos)
    if name == "sqrt":
        arity(1)
        return nth_root(args[0], 2, 0)
    if name == "conj":
        arity(1)
        return args[0].conjugate()
    if name == "norm":
        arity(1)
        return LcNumber(norm_phi(args[0]), 0.0)
    if name == "polar":
        arity(1)
        p = to_polar(args[0])
        return LcNumber(p.modulus, p.argument)
    if name == "psi_mul":
        arity(2)
        return cross_product_psi(args[0], args[1], a1)
    raise ExprError(f"unknown function {name!r}", pos)


def _eval(node, env, a1: float) -> LcNumber:
    tag = node[0]
    if tag == "num":
        return LcNumber(node[1], 0.0)
    if tag == "var":
        _, name, pos = node
        if name not in env:
            raise UnboundVariableError(f"unbound variable {name!r}", pos)
        return env[name]
    if tag == "neg":
        return -_eval(node[1], env, a1)
    if tag == "call":
        _, name, raw_args, pos = node
        return _call(name, [_eval(a, env, a1) for a in raw_args], pos, a1)
    _, op, left, right, pos = node
    lhs = _eval(left, env, a1)
    rhs = _eval(right, env, a1)
    if op == "+":
        return lhs + rhs
    if op == "-":
        return lhs - rhs
    if op == "*":
        return lhs * rhs
    if op == "/":
        return lhs / rhs
    if rhs.fu != 0.0:
        raise ExprError("exponent must be crisp", pos)
    if rhs.re == int(rhs.re):
        return pow_int(lhs, int(rhs.re))
    return pow_real(lhs, rhs.re)


def eval_expression(expr: str, bindings=None, a1: float = 0.0) -> LcNumber:
    """Evaluate ``expr`` with ``A`` and any caller bindings in scope.

    ``a1`` is the basis 1-level used by ``psi_mul``.
    """
    env = {"A": LcNumber(0.0, 1.0)}
    if bindings:
        env.update(bindings)
    ast = _Parser(_tokenize(expr)).parse()
    return _eval(ast, env, a1)
