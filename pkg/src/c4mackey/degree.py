"""Degrees in the representation ring RO(C4) and RO(C2).

An RO(C4) degree is ``a + n*sigma + m*lambda`` where ``sigma`` is the sign
representation and ``lambda`` the two-dimensional rotation by a quarter turn.
``rho = 1 + sigma + lambda`` is the regular representation.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterator, Tuple

__all__ = ["RODegree", "C2Degree", "parse_degree", "window"]

_TERM = re.compile(r"\s*([+-])?\s*(\d+)?\s*\*?\s*(sigma|lambda|rho|σ|λ|ρ|s|l|r)?\s*")
_ALIASES = {"sigma": "s", "σ": "s", "s": "s", "lambda": "l", "λ": "l", "l": "l", "rho": "r", "ρ": "r", "r": "r"}


@dataclass(frozen=True, order=True)
class RODegree:
    """``a + n*sigma + m*lambda``; componentwise addition."""

    a: int = 0
    n: int = 0
    m: int = 0

    def __add__(self, other: "RODegree") -> "RODegree":
        return RODegree(self.a + other.a, self.n + other.n, self.m + other.m)

    def __sub__(self, other: "RODegree") -> "RODegree":
        return RODegree(self.a - other.a, self.n - other.n, self.m - other.m)

    def __neg__(self) -> "RODegree":
        return RODegree(-self.a, -self.n, -self.m)

    def __mul__(self, k: int) -> "RODegree":
        return RODegree(self.a * k, self.n * k, self.m * k)

    __rmul__ = __mul__

    @property
    def dim(self) -> int:
        """Underlying topological dimension ``a + n + 2m``."""
        return self.a + self.n + 2 * self.m

    @property
    def is_actual(self) -> bool:
        return self.a >= 0 and self.n >= 0 and self.m >= 0

    def to_c2(self) -> "C2Degree":
        """Restriction to C2: sigma becomes trivial, lambda becomes 2*sigma_2."""
        return C2Degree(self.a + self.n, 2 * self.m)

    def as_tuple(self) -> Tuple[int, int, int]:
        return (self.a, self.n, self.m)

    def format(self, unicode: bool = True) -> str:
        names = ("σ", "λ") if unicode else ("sigma", "lambda")
        parts = []
        for coeff, name in ((self.a, ""), (self.n, names[0]), (self.m, names[1])):
            if coeff == 0:
                continue
            sign = "-" if coeff < 0 else "+"
            mag = abs(coeff)
            body = str(mag) if not name else (name if mag == 1 else f"{mag}{name}")
            parts.append((sign, body))
        if not parts:
            return "0"
        out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            out += sign + body
        return out

    def __str__(self) -> str:
        return self.format(unicode=True)

    @classmethod
    def parse(cls, text: str) -> "RODegree":
        return parse_degree(text)


SIGMA = RODegree(0, 1, 0)
LAMBDA = RODegree(0, 0, 1)
RHO = RODegree(1, 1, 1)
ONE = RODegree(1, 0, 0)


@dataclass(frozen=True, order=True)
class C2Degree:
    """``a + s*sigma_2`` in RO(C2)."""

    a: int = 0
    s: int = 0

    def __add__(self, other: "C2Degree") -> "C2Degree":
        return C2Degree(self.a + other.a, self.s + other.s)

    def __neg__(self) -> "C2Degree":
        return C2Degree(-self.a, -self.s)

    def __sub__(self, other: "C2Degree") -> "C2Degree":
        return self + (-other)


def parse_degree(text: str) -> RODegree:
    """Parse strings such as ``-2+2sigma``, ``rho``, ``3-σ-λ`` or ``1+2*lambda``.

    Raises ``ValueError`` with the failing position on malformed input.
    """
    src = text.strip()
    if not src:
        raise ValueError("empty degree")
    a = n = m = 0
    pos = 0
    first = True
    while pos < len(src):
        mt = _TERM.match(src, pos)
        if mt is None or mt.end() == pos:
            raise ValueError(f"cannot parse degree {text!r} at position {pos}")
        sign, num, sym = mt.groups()
        if sign is None and not first:
            raise ValueError(f"missing sign in degree {text!r} at position {pos}")
        if num is None and sym is None:
            raise ValueError(f"empty term in degree {text!r} at position {pos}")
        k = int(num) if num is not None else 1
        if sign == "-":
            k = -k
        key = _ALIASES[sym] if sym else None
        if key is None:
            a += k
        elif key == "s":
            n += k
        elif key == "l":
            m += k
        else:
            a, n, m = a + k, n + k, m + k
        pos = mt.end()
        first = False
    return RODegree(a, n, m)


def window(amax: int, nmax: int, mmax: int) -> Iterator[RODegree]:
    """All degrees with ``|a| <= amax``, ``|n| <= nmax``, ``|m| <= mmax``."""
    for n in range(-nmax, nmax + 1):
        for m in range(-mmax, mmax + 1):
            for a in range(-amax, amax + 1):
                yield RODegree(a, n, m)
