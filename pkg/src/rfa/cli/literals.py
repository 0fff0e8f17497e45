"""Textual fuzzy literals.

Two shapes: basis numbers written ``tri(a;b;d)`` / ``trap(a;b;c;d)`` and
elements written ``r``, ``r + q*A`` or ``r - q*A``.  Whitespace is free,
scientific notation is accepted, and the unicode minus sign is treated as
``-``.  Parse errors carry the character offset of the first offending
position.
"""

from __future__ import annotations

import re

from ..core import BasisNumber, LcNumber

__all__ = ["LiteralError", "parse_fuzzy_literal", "print_literal"]

_REAL = re.compile(r"[+-]?(?:\d+(?:\.\d*)?|\.\d+)(?:[eE][+-]?\d+)?")
_WS = re.compile(r"\s*")


class LiteralError(ValueError):
    """Malformed fuzzy literal; ``position`` is the character offset."""

    def __init__(self, message: str, position: int):
        self.position = position
        super().__init__(f"{message} (at offset {position})")


class _Scanner:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def skip_ws(self) -> None:
        self.pos = _WS.match(self.text, self.pos).end()

    def peek(self) -> str:
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, literal: str) -> None:
        self.skip_ws()
        if not self.text.startswith(literal, self.pos):
            raise LiteralError(f"expected {literal!r}", self.pos)
        self.pos += len(literal)

    def real(self) -> float:
        self.skip_ws()
        m = _REAL.match(self.text, self.pos)
        if m is None:
            raise LiteralError("expected a real number", self.pos)
        self.pos = m.end()
        return float(m.group())

    def end(self) -> None:
        self.skip_ws()
        if self.pos != len(self.text):
            raise LiteralError("unexpected trailing input", self.pos)


def parse_fuzzy_literal(text: str):
    """Parse a literal into a BasisNumber or an LcNumber."""
    cleaned = text.replace("−", "-")
    sc = _Scanner(cleaned)
    sc.skip_ws()
    if cleaned.startswith("tri", sc.pos) or cleaned.startswith("trap", sc.pos):
        kind = "trap" if cleaned.startswith("trap", sc.pos) else "tri"
        start = sc.pos
        sc.pos += len(kind)
        sc.expect("(")
        values = [sc.real()]
        for _ in range(2 if kind == "tri" else 3):
            sc.expect(";")
            values.append(sc.real())
        sc.expect(")")
        sc.end()
        try:
            if kind == "tri":
                return BasisNumber.triangular(*values)
            return BasisNumber.trapezoidal(*values)
        except ValueError as exc:
            raise LiteralError(str(exc), start) from exc
    re_part = sc.real()
    sc.skip_ws()
    if sc.peek() in ("+", "-"):
        sign = -1.0 if sc.peek() == "-" else 1.0
        sc.pos += 1
        fu_part = sign * sc.real()
        sc.expect("*")
        sc.expect("A")
        sc.end()
        return LcNumber(re_part, fu_part)
    sc.end()
    return LcNumber(re_part, 0.0)


def print_literal(value) -> str:
    """Canonical text form; parsing it back reproduces the value."""
    if isinstance(value, BasisNumber):
        if value.kind == "triangular":
            a, b, d = value.points
            return f"tri({a!r};{b!r};{d!r})"
        if value.kind == "trapezoidal":
            a, b, c, d = value.points
            return f"trap({a!r};{b!r};{c!r};{d!r})"
        raise ValueError("tabulated bases have no literal form")
    if isinstance(value, LcNumber):
        if value.fu == 0.0:
            return repr(value.re)
        if value.fu < 0.0:
            return f"{value.re!r} - {-value.fu!r}*A"
        return f"{value.re!r} + {value.fu!r}*A"
    raise TypeError(f"no literal form for {value!r}")
