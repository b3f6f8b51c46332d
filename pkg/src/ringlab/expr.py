"""Ring expressions: descriptor AST, parser and canonical rendering.

Grammar (ASCII, whitespace-insensitive except around the infix ``x``)::

    ring := "Z" nat | "GF(" nat ")" | "M" nat "(" ring ")" | "T" nat "(" ring ")"
          | ring " x " ring | "prod(" ring {"," ring} ")"
          | "trunc(" ring "," nat ")" | "trivext(" ring ["," nat] ")"
          | "morita0(" ring "," nat "," nat ")"
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Union

__all__ = [
    "ZMod",
    "GaloisField",
    "Matrix",
    "Triangular",
    "Product",
    "Truncated",
    "TrivialExt",
    "MoritaZero",
    "RingDescriptor",
    "RingSyntaxError",
    "parse_ring_expr",
    "render",
    "descriptor_order",
]


class RingSyntaxError(ValueError):
    """Raised for malformed ring expressions or out-of-range parameters."""

    def __init__(self, message: str, text: str = "", pos: int | None = None):
        self.text = text
        self.pos = pos
        where = f" at position {pos}" if pos is not None else ""
        super().__init__(f"{message}{where}" + (f": {text!r}" if text else ""))


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


def prime_power(q: int) -> tuple[int, int] | None:
    """Return (p, k) with q = p**k for a prime p, or None."""
    if q < 2:
        return None
    p = 2
    while q % p:
        p += 1
    k, r = 0, q
    while r % p == 0:
        r //= p
        k += 1
    return (p, k) if r == 1 else None


@dataclass(frozen=True)
class ZMod:
    n: int

    def __post_init__(self):
        if self.n < 2:
            raise RingSyntaxError(f"Z{self.n}: modulus must be >= 2")


@dataclass(frozen=True)
class GaloisField:
    q: int

    def __post_init__(self):
        if prime_power(self.q) is None:
            raise RingSyntaxError(f"GF({self.q}): size must be a prime power")


@dataclass(frozen=True)
class Matrix:
    k: int
    inner: "RingDescriptor"

    def __post_init__(self):
        if self.k < 1:
            raise RingSyntaxError(f"M{self.k}: size must be >= 1")


@dataclass(frozen=True)
class Triangular:
    k: int
    inner: "RingDescriptor"

    def __post_init__(self):
        if self.k < 1:
            raise RingSyntaxError(f"T{self.k}: size must be >= 1")


@dataclass(frozen=True)
class Product:
    factors: tuple["RingDescriptor", ...]

    def __post_init__(self):
        object.__setattr__(self, "factors", tuple(self.factors))
        if len(self.factors) < 2:
            raise RingSyntaxError("a product needs at least two factors")


@dataclass(frozen=True)
class Truncated:
    inner: "RingDescriptor"
    n: int

    def __post_init__(self):
        if self.n < 2:
            raise RingSyntaxError(f"trunc(..., {self.n}): truncation degree must be >= 2")


@dataclass(frozen=True)
class TrivialExt:
    inner: "RingDescriptor"
    m: int = 1

    def __post_init__(self):
        if self.m < 1:
            raise RingSyntaxError(f"trivext(..., {self.m}): module rank must be >= 1")


@dataclass(frozen=True)
class MoritaZero:
    inner: "RingDescriptor"
    m: int
    n: int

    def __post_init__(self):
        if self.m < 0 or self.n < 0:
            raise RingSyntaxError("morita0 module ranks must be >= 0")


RingDescriptor = Union[ZMod, GaloisField, Matrix, Triangular, Product, Truncated, TrivialExt, MoritaZero]


def render(d: RingDescriptor) -> str:
    """Canonical text form; ``parse_ring_expr(render(d)) == d``."""
    if isinstance(d, ZMod):
        return f"Z{d.n}"
    if isinstance(d, GaloisField):
        return f"GF({d.q})"
    if isinstance(d, Matrix):
        return f"M{d.k}({render(d.inner)})"
    if isinstance(d, Triangular):
        return f"T{d.k}({render(d.inner)})"
    if isinstance(d, Product):
        # nested products cannot be written infix without flattening
        if any(isinstance(f, Product) for f in d.factors):
            return "prod(" + ",".join(render(f) for f in d.factors) + ")"
        return " x ".join(render(f) for f in d.factors)
    if isinstance(d, Truncated):
        return f"trunc({render(d.inner)},{d.n})"
    if isinstance(d, TrivialExt):
        return f"trivext({render(d.inner)},{d.m})"
    if isinstance(d, MoritaZero):
        return f"morita0({render(d.inner)},{d.m},{d.n})"
    raise TypeError(f"not a ring descriptor: {d!r}")


def descriptor_order(d: RingDescriptor) -> int:
    """Cardinality of the ring a descriptor denotes (no realization needed)."""
    if isinstance(d, ZMod):
        return d.n
    if isinstance(d, GaloisField):
        return d.q
    if isinstance(d, Matrix):
        return descriptor_order(d.inner) ** (d.k * d.k)
    if isinstance(d, Triangular):
        return descriptor_order(d.inner) ** (d.k * (d.k + 1) // 2)
    if isinstance(d, Product):
        out = 1
        for f in d.factors:
            out *= descriptor_order(f)
        return out
    if isinstance(d, Truncated):
        return descriptor_order(d.inner) ** d.n
    if isinstance(d, TrivialExt):
        return descriptor_order(d.inner) ** (d.m + 1)
    if isinstance(d, MoritaZero):
        return descriptor_order(d.inner) ** (2 + d.m + d.n)
    raise TypeError(f"not a ring descriptor: {d!r}")


_KEYWORDS = ("morita0", "trivext", "trunc", "prod", "GF", "Z", "M", "T", "x")
_NUM = re.compile(r"\d+")


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks: list[tuple[str, str, int]] = []
        pos = 0
        while pos < len(text):
            ch = text[pos]
            if ch.isspace():
                pos += 1
            elif ch in "(),":
                self.toks.append(("sym", ch, pos))
                pos += 1
            elif m := _NUM.match(text, pos):
                self.toks.append(("num", m.group(), pos))
                pos = m.end()
            else:
                for kw in _KEYWORDS:
                    if text.startswith(kw, pos):
                        self.toks.append(("word", kw, pos))
                        pos += len(kw)
                        break
                else:
                    raise RingSyntaxError("unexpected character", text, pos)
        self.i = 0

    def peek(self) -> tuple[str, str, int] | None:
        return self.toks[self.i] if self.i < len(self.toks) else None

    def take(self, kind: str | None = None, value: str | None = None) -> tuple[str, str, int]:
        tok = self.peek()
        if tok is None:
            raise RingSyntaxError("unexpected end of expression", self.text, len(self.text))
        if (kind and tok[0] != kind) or (value is not None and tok[1] != value):
            want = value or kind
            raise RingSyntaxError(f"expected {want!r}, found {tok[1]!r}", self.text, tok[2])
        self.i += 1
        return tok

    def nat(self) -> int:
        return int(self.take("num")[1])

    def ring(self) -> RingDescriptor:
        factors = [self.atom()]
        while (tok := self.peek()) is not None and tok[:2] == ("word", "x"):
            self.i += 1
            factors.append(self.atom())
        return factors[0] if len(factors) == 1 else Product(tuple(factors))

    def atom(self) -> RingDescriptor:
        kind, word, pos = self.take("word")
        try:
            if word == "Z":
                return ZMod(self.nat())
            if word in ("M", "T"):
                k = self.nat()
                self.take("sym", "(")
                inner = self.ring()
                self.take("sym", ")")
                return Matrix(k, inner) if word == "M" else Triangular(k, inner)
            self.take("sym", "(")
            if word == "GF":
                d: RingDescriptor = GaloisField(self.nat())
            elif word == "prod":
                fs = [self.ring()]
                while self.peek() is not None and self.peek()[1] == ",":
                    self.i += 1
                    fs.append(self.ring())
                d = Product(tuple(fs))
            elif word == "trunc":
                inner = self.ring()
                self.take("sym", ",")
                d = Truncated(inner, self.nat())
            elif word == "trivext":
                inner = self.ring()
                m = 1
                if self.peek() is not None and self.peek()[1] == ",":
                    self.i += 1
                    m = self.nat()
                d = TrivialExt(inner, m)
            elif word == "morita0":
                inner = self.ring()
                self.take("sym", ",")
                m = self.nat()
                self.take("sym", ",")
                d = MoritaZero(inner, m, self.nat())
            else:
                raise RingSyntaxError(f"unknown constructor {word!r}", self.text, pos)
            self.take("sym", ")")
            return d
        except RingSyntaxError as exc:
            if exc.pos is None:
                raise RingSyntaxError(str(exc), self.text, pos) from None
            raise


def parse_ring_expr(text: str) -> RingDescriptor:
    """Parse a ring expression such as ``"M2(Z4)"`` or ``"Z3 x Z3"``."""
    p = _Parser(text)
    if not p.toks:
        raise RingSyntaxError("empty expression", text, 0)
    d = p.ring()
    if p.peek() is not None:
        tok = p.peek()
        raise RingSyntaxError(f"trailing input {tok[1]!r}", text, tok[2])
    return d
