"""Univariate polynomials with real coefficients in ascending degree order.

Parsing accepts sums of terms such as ``3/8 - 15/4*x^2 + 35/8*x^4``; rational
literals are evaluated in floating point.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np


class PolynomialSyntaxError(ValueError):
    """Malformed polynomial text. ``pos`` is the 0-based offending column."""

    def __init__(self, message: str, text: str, pos: int):
        super().__init__(f"{message} at position {pos}: {text!r}")
        self.text = text
        self.pos = pos


def _trim(coeffs: Iterable[float]) -> tuple[float, ...]:
    out = [float(c) for c in coeffs]
    while len(out) > 1 and out[-1] == 0.0:
        out.pop()
    if not out:
        out = [0.0]
    # -0.0 would break exact round trips through format/parse
    return tuple(0.0 if c == 0.0 else c for c in out)


@dataclass(frozen=True)
class Polynomial:
    """Immutable polynomial; ``coeffs[k]`` multiplies ``x**k``."""

    coeffs: tuple[float, ...]

    def __init__(self, coeffs: Iterable[float] = (0.0,)):
        trimmed = _trim(coeffs)
        if not all(np.isfinite(trimmed)):
            raise ValueError(f"non-finite coefficient in {trimmed}")
        object.__setattr__(self, "coeffs", trimmed)

    # -- basic queries -----------------------------------------------------

    @property
    def degree(self) -> int:
        # the zero polynomial has degree 0 by convention
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return self.coeffs == (0.0,)

    def __call__(self, x):
        """Horner evaluation; works on scalars and numpy arrays."""
        acc = self.coeffs[-1] if np.isscalar(x) else np.full_like(np.asarray(x, dtype=float), self.coeffs[-1])
        for c in reversed(self.coeffs[:-1]):
            acc = acc * x + c
        return acc

    def __len__(self) -> int:
        return len(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs)

    # -- calculus ----------------------------------------------------------

    def derivative(self) -> Polynomial:
        return Polynomial([k * c for k, c in enumerate(self.coeffs)][1:] or [0.0])

    def antiderivative(self, c0: float = 0.0) -> Polynomial:
        """Antiderivative whose value at 0 is ``c0``."""
        return Polynomial([c0] + [c / (k + 1) for k, c in enumerate(self.coeffs)])

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other: Polynomial) -> Polynomial:
        if not isinstance(other, Polynomial):
            return NotImplemented
        n = max(len(self), len(other))
        a = self.coeffs + (0.0,) * (n - len(self))
        b = other.coeffs + (0.0,) * (n - len(other))
        return Polynomial(x + y for x, y in zip(a, b))

    def __neg__(self) -> Polynomial:
        return self.scale(-1.0)

    def __sub__(self, other: Polynomial) -> Polynomial:
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self + (-other)

    def scale(self, s: float) -> Polynomial:
        return Polynomial(s * c for c in self.coeffs)

    def __mul__(self, s: float) -> Polynomial:
        if isinstance(s, Polynomial):
            return NotImplemented
        return self.scale(float(s))

    __rmul__ = __mul__

    # -- text / JSON -------------------------------------------------------

    @classmethod
    def parse(cls, text: str) -> Polynomial:
        return parse(text)

    def __str__(self) -> str:
        return format_poly(self)

    def to_json(self) -> dict:
        return {"coeffs": list(self.coeffs)}

    @classmethod
    def from_json(cls, obj: dict | Sequence[float]) -> Polynomial:
        if isinstance(obj, dict):
            obj = obj["coeffs"]
        return cls(obj)


X = Polynomial([0.0, 1.0])


_TOKEN = re.compile(
    r"""\s*(?:
        (?P<num>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)
      | (?P<var>x)
      | (?P<pow>\^|\*\*)
      | (?P<op>[-+*/])
    )""",
    re.VERBOSE,
)


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    text_end = len(text.rstrip())
    while pos < text_end:
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            start = pos + (len(text[pos:]) - len(text[pos:].lstrip()))
            raise PolynomialSyntaxError("unexpected character", text, start)
        kind = m.lastgroup
        tokens.append((kind, m.group(kind), m.start(kind)))
        pos = m.end()
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self, *kinds_or_values):
        if self.i >= len(self.tokens):
            return None
        tok = self.tokens[self.i]
        if not kinds_or_values or tok[0] in kinds_or_values or tok[1] in kinds_or_values:
            return tok
        return None

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def fail(self, message: str):
        pos = self.tokens[self.i][2] if self.i < len(self.tokens) else len(self.text)
        raise PolynomialSyntaxError(message, self.text, pos)

    def number(self) -> float:
        if not self.peek("num"):
            self.fail("expected a number")
        value = float(self.take()[1])
        if self.peek("/"):
            self.take()
            if not self.peek("num"):
                self.fail("expected a denominator")
            den = float(self.take()[1])
            if den == 0.0:
                self.i -= 1
                self.fail("zero denominator")
            value /= den
        return value

    def exponent(self) -> int:
        if not self.peek("pow"):
            return 1
        self.take()
        if self.peek("-"):
            self.fail("negative exponent")
        tok = self.peek("num")
        if tok is None:
            self.fail("expected an integer exponent")
        if not tok[1].isdigit():
            self.fail("non-integer exponent")
        self.take()
        return int(tok[1])

    def term(self) -> tuple[int, float]:
        coeff = 1.0
        if self.peek("num"):
            coeff = self.number()
            if not self.peek("*"):
                return 0, coeff
            self.take()
            if not self.peek("var"):
                self.fail("expected 'x'")
        if not self.peek("var"):
            self.fail("expected a term")
        self.take()
        return self.exponent(), coeff

    def polynomial(self) -> Polynomial:
        if not self.tokens:
            raise PolynomialSyntaxError("empty polynomial", self.text, 0)
        acc: dict[int, float] = {}
        sign = 1.0
        if self.peek("+", "-"):
            sign = -1.0 if self.take()[1] == "-" else 1.0
        while True:
            k, c = self.term()
            acc[k] = acc.get(k, 0.0) + sign * c
            if self.i == len(self.tokens):
                break
            if not self.peek("+", "-"):
                self.fail("expected '+' or '-'")
            sign = -1.0 if self.take()[1] == "-" else 1.0
        coeffs = [0.0] * (max(acc) + 1)
        for k, c in acc.items():
            coeffs[k] = c
        return Polynomial(coeffs)


def parse(text: str) -> Polynomial:
    """Parse ``"0.7*x + 0.32*x^2"``-style text into a :class:`Polynomial`."""
    return _Parser(text).polynomial()


def format_poly(p: Polynomial) -> str:
    """Ascending-degree text form; ``parse(format_poly(p)) == p`` exactly."""
    parts = []
    for k, c in enumerate(p.coeffs):
        if c == 0.0 and not p.is_zero():
            continue
        mag = abs(c)
        if k == 0:
            body = repr(mag)
        else:
            mono = "x" if k == 1 else f"x^{k}"
            body = mono if mag == 1.0 else f"{mag!r}*{mono}"
        if not parts:
            parts.append(("-" if c < 0 else "") + body)
        else:
            parts.append(("- " if c < 0 else "+ ") + body)
    return " ".join(parts)
