"""Element literal syntax shared by every ring construction.

A literal is an integer, a bracketed list ``[a,b,...]``, a tuple ``(a,b,...)``
or a coefficient list ``poly[c0,c1,...]``; items nest arbitrarily.
"""
from __future__ import annotations

from dataclasses import dataclass

__all__ = ["Poly", "LiteralError", "parse_literal", "format_literal"]


class LiteralError(ValueError):
    pass


@dataclass(frozen=True)
class Poly:
    coeffs: tuple

    def __init__(self, coeffs):
        object.__setattr__(self, "coeffs", tuple(coeffs))


def format_literal(obj) -> str:
    if isinstance(obj, bool):
        raise LiteralError("booleans are not element literals")
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, Poly):
        return "poly[" + ",".join(format_literal(c) for c in obj.coeffs) + "]"
    if isinstance(obj, list):
        return "[" + ",".join(format_literal(c) for c in obj) + "]"
    if isinstance(obj, tuple):
        return "(" + ",".join(format_literal(c) for c in obj) + ")"
    raise LiteralError(f"cannot format {obj!r}")


def parse_literal(text: str):
    """Parse literal text into nested ints / lists / tuples / Poly."""
    pos = 0
    n = len(text)

    def skip():
        nonlocal pos
        while pos < n and text[pos].isspace():
            pos += 1

    def item():
        nonlocal pos
        skip()
        if pos >= n:
            raise LiteralError(f"unexpected end of literal {text!r}")
        ch = text[pos]
        if text.startswith("poly", pos):
            pos += 4
            skip()
            if pos >= n or text[pos] != "[":
                raise LiteralError(f"expected '[' after poly at {pos} in {text!r}")
            return Poly(seq("[", "]"))
        if ch == "[":
            return seq("[", "]")
        if ch == "(":
            return tuple(seq("(", ")"))
        start = pos
        if ch in "+-":
            pos += 1
        while pos < n and text[pos].isdigit():
            pos += 1
        digits = text[start:pos]
        if digits in ("", "+", "-"):
            raise LiteralError(f"unexpected character {ch!r} at {start} in {text!r}")
        return int(digits)

    def seq(open_, close):
        nonlocal pos
        pos += 1  # opening bracket
        out = []
        skip()
        if pos < n and text[pos] == close:
            pos += 1
            return out
        while True:
            out.append(item())
            skip()
            if pos >= n:
                raise LiteralError(f"unterminated {open_!r} in {text!r}")
            if text[pos] == ",":
                pos += 1
                continue
            if text[pos] == close:
                pos += 1
                return out
            raise LiteralError(f"unexpected {text[pos]!r} at {pos} in {text!r}")

    obj = item()
    skip()
    if pos != n:
        raise LiteralError(f"trailing input at {pos} in {text!r}")
    return obj
