"""Symbolic arithmetic in the RO(C4)-graded Green functor of a point.

Every basis element of every level is a single monomial with integer
exponents, and a product of monomials is the monomial with summed exponents
if that monomial belongs to the level's basis, and zero otherwise.  Quotients
such as ``u_lambda/u_sigma^3`` or ``theta/(a_sigma u_sigma^2)`` are the
monomials with negative exponents, so cancellation ``z * (y/(xz)) = y/x``
holds by construction.

Exponent conventions (``t`` counts the torsion generator, at most once):

* top ``(t, as, us, al, ul)`` for ``theta^t a_s^as u_s^us a_l^al u_l^ul``;
* mid ``(p, x, y, t)`` for ``ubar_s^p a^x u^y vtheta^t`` where ``a``, ``u``
  and ``vtheta`` are the C2 classes of ``sigma_2`` restricted along
  ``lambda -> 2 sigma_2``: ``bal = a^2``, ``bul = u^2``, ``sq = a u``, ``v = vtheta``;
* bot ``(p, q)`` for ``ubarbar_s^p ubarbar_l^q``;
* C2 top ``(x, y, t)`` for ``a2^x u2^y th2^t`` and C2 bot ``(y,)`` for ``bu2^y``.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Dict, FrozenSet, Iterable, Iterator, List, Optional, Sequence, Tuple, Union

from .degree import C2Degree, RODegree
from .gf2 import GF2Matrix, solve

__all__ = [
    "Level",
    "LEVELS",
    "GreenElement",
    "GreenError",
    "NotInRing",
    "OutsideClosure",
    "ParseError",
    "parse",
    "mul",
    "res",
    "tr",
    "weyl",
    "degree_of",
    "basis",
    "element",
    "localize",
    "CornerElement",
    "bockstein",
    "named",
    "point_mackey",
    "basis_monos",
    "divide",
]

Mono = Tuple[int, ...]


class GreenError(ValueError):
    """Base class for symbolic arithmetic errors."""


class NotInRing(GreenError):
    """A monomial violates the index constraints of its level."""


class OutsideClosure(GreenError):
    """A transfer is not determined by the stated formulas and Frobenius."""


class ParseError(GreenError):
    """Syntax error in an expression, with the offending position."""

    def __init__(self, msg: str, pos: int) -> None:
        super().__init__(f"{msg} at position {pos}")
        self.pos = pos


# ---------------------------------------------------------------------------
# membership and degrees


def _in_top(e: Mono) -> bool:
    t, a_s, u_s, a_l, u_l = e
    if t == 0:
        if a_s < 0 or u_l < 0:
            return False
        if u_l >= 1:
            return a_s <= 1 and a_l >= 0
        return u_s >= 0 and (a_l >= 0 or a_s >= 2)
    if t != 1:
        return False
    if u_l == 0 and a_s <= 0 and u_s <= 0:
        return True
    if a_s in (1, 2) and a_l <= -1:
        if u_l == 0:
            return u_s <= 0
        return u_l <= -1
    return False


def _deg_top(e: Mono) -> RODegree:
    t, a_s, u_s, a_l, u_l = e
    return RODegree(u_s + 2 * u_l - 2 * t, -a_s - u_s + 2 * t, -a_l - u_l)


def _in_mid(e: Mono) -> bool:
    p, x, y, t = e
    if (x + y) % 2:
        return False
    if t == 0:
        return x >= 0 and y >= 0
    return t == 1 and x <= 0 and y <= 0


def _deg_mid(e: Mono) -> RODegree:
    p, x, y, t = e
    return RODegree(p + y - 2 * t, -p, t - (x + y) // 2)


def _in_bot(e: Mono) -> bool:
    return True


def _deg_bot(e: Mono) -> RODegree:
    p, q = e
    return RODegree(p + 2 * q, -p, -q)


def _in_c2top(e: Mono) -> bool:
    x, y, t = e
    if t == 0:
        return x >= 0 and y >= 0
    return t == 1 and x <= 0 and y <= 0


def _deg_c2top(e: Mono) -> C2Degree:
    x, y, t = e
    return C2Degree(y - 2 * t, -x - y + 2 * t)


def _deg_c2bot(e: Mono) -> C2Degree:
    (y,) = e
    return C2Degree(y, -y)


# ---------------------------------------------------------------------------
# printing


def _pw(tok: str, e: int) -> str:
    return tok if e == 1 else f"{tok}^{e}"


def _join(num: List[Tuple[str, int]], den: List[Tuple[str, int]], head: str = "") -> str:
    n = [_pw(t, e) for t, e in num if e > 0]
    d = [_pw(t, e) for t, e in den if e > 0]
    if head:
        n.insert(0, head)
    s = "*".join(n) if n else "1"
    if not d:
        return s
    if len(d) == 1:
        return f"{s}/{d[0]}"
    return f"{s}/({'*'.join(d)})"


def _split(pairs: List[Tuple[str, int]]) -> Tuple[List[Tuple[str, int]], List[Tuple[str, int]]]:
    return [(t, e) for t, e in pairs if e > 0], [(t, -e) for t, e in pairs if e < 0]


def _fmt_top(e: Mono) -> str:
    t, a_s, u_s, a_l, u_l = e
    if t == 0:
        num, den = _split([("as", a_s), ("us", u_s), ("al", a_l), ("ul", u_l)])
        return _join(num, den)
    if a_s == 2 and a_l <= -1 and u_l <= 0:
        # x[n,m] / al^i, possibly times a positive power of us
        n = max(-u_s, 0)
        num, den = _split([("us", u_s + n), ("al", a_l + 1)])
        return _join(num, den, head=f"x[{n},{1 - u_l}]")
    if a_s == 1 and u_l == 0:
        # x[n,1] / (as * al^j)
        return _join([], [("as", 1), ("al", -1 - a_l)], head=f"x[{-u_s},1]")
    if a_s == 1:
        num, den = _split([("us", u_s - 1), ("al", a_l + 1), ("ul", u_l + 1)])
        return _join(num, den, head="s")
    num, den = _split([("as", a_s), ("us", u_s), ("al", a_l)])
    return _join(num, den, head="th")


def _fmt_mid(e: Mono) -> str:
    p, x, y, t = e
    if t == 0:
        if x % 2:
            pairs = [("sq", 1), ("bal", (x - 1) // 2), ("bul", (y - 1) // 2), ("bus", p)]
        else:
            pairs = [("bal", x // 2), ("bul", y // 2), ("bus", p)]
        num, den = _split(pairs)
        return _join(num, den)
    if x % 2:
        pairs = [("bus", p), ("sq", -1), ("bal", (x + 1) // 2), ("bul", (y + 1) // 2)]
    else:
        pairs = [("bus", p), ("bal", x // 2), ("bul", y // 2)]
    num, den = _split(pairs)
    return _join(num, den, head="v")


def _fmt_bot(e: Mono) -> str:
    num, den = _split([("bbs", e[0]), ("bbl", e[1])])
    return _join(num, den)


def _fmt_c2top(e: Mono) -> str:
    x, y, t = e
    num, den = _split([("a2", x), ("u2", y)])
    return _join(num, den, head="th2" if t else "")


def _fmt_c2bot(e: Mono) -> str:
    num, den = _split([("bu2", e[0])])
    return _join(num, den)


# ---------------------------------------------------------------------------
# levels


@dataclass(frozen=True)
class Level:
    name: str
    width: int
    atoms: Dict[str, Mono]
    member: Callable[[Mono], bool]
    degree: Callable[[Mono], Union[RODegree, C2Degree]]
    fmt: Callable[[Mono], str]

    def __hash__(self) -> int:
        return hash(self.name)

    def __eq__(self, other) -> bool:
        return isinstance(other, Level) and other.name == self.name

    @property
    def one(self) -> Mono:
        return (0,) * self.width


TOP = Level(
    "top",
    5,
    {
        "as": (0, 1, 0, 0, 0),
        "us": (0, 0, 1, 0, 0),
        "al": (0, 0, 0, 1, 0),
        "ul": (0, 0, 0, 0, 1),
        "th": (1, 0, 0, 0, 0),
        "s": (1, 1, 1, -1, -1),
    },
    _in_top,
    _deg_top,
    _fmt_top,
)
MID = Level(
    "mid",
    4,
    {
        "bus": (1, 0, 0, 0),
        "bal": (0, 2, 0, 0),
        "bul": (0, 0, 2, 0),
        "sq": (0, 1, 1, 0),
        "v": (0, 0, 0, 1),
    },
    _in_mid,
    _deg_mid,
    _fmt_mid,
)
BOT = Level("bot", 2, {"bbs": (1, 0), "bbl": (0, 1)}, _in_bot, _deg_bot, _fmt_bot)
C2TOP = Level("c2top", 3, {"a2": (1, 0, 0), "u2": (0, 1, 0), "th2": (0, 0, 1)}, _in_c2top, _deg_c2top, _fmt_c2top)
C2BOT = Level("c2bot", 1, {"bu2": (1,)}, _in_bot, _deg_c2bot, _fmt_c2bot)

LEVELS: Dict[str, Level] = {lv.name: lv for lv in (TOP, MID, BOT, C2TOP, C2BOT)}
_TOKEN_LEVEL = {tok: lv for lv in LEVELS.values() for tok in lv.atoms}


def _x_atom(n: int, m: int) -> Mono:
    if m < 1:
        raise NotInRing(f"x[{n},{m}] needs m >= 1")
    return (1, 2, -n, -1, -(m - 1))


def _add(a: Mono, b: Mono) -> Mono:
    return tuple(x + y for x, y in zip(a, b))


def _sub(a: Mono, b: Mono) -> Mono:
    return tuple(x - y for x, y in zip(a, b))


def _scale(a: Mono, k: int) -> Mono:
    return tuple(x * k for x in a)


# ---------------------------------------------------------------------------
# elements


@dataclass(frozen=True)
class GreenElement:
    """An F2-linear combination of basis monomials of one level."""

    level: Level
    monos: FrozenSet[Mono]

    @classmethod
    def zero(cls, level: Union[str, Level] = "top") -> "GreenElement":
        lv = LEVELS[level] if isinstance(level, str) else level
        return cls(lv, frozenset())

    @classmethod
    def mono(cls, level: Union[str, Level], e: Sequence[int]) -> "GreenElement":
        lv = LEVELS[level] if isinstance(level, str) else level
        e = tuple(int(v) for v in e)
        if len(e) != lv.width:
            raise ValueError(f"{lv.name} monomials have {lv.width} exponents")
        if not lv.member(e):
            raise NotInRing(f"{lv.fmt(e)} is not in the {lv.name} level")
        return cls(lv, frozenset([e]))

    def is_zero(self) -> bool:
        return not self.monos

    def __bool__(self) -> bool:
        return bool(self.monos)

    def __add__(self, other: "GreenElement") -> "GreenElement":
        _same_level(self, other)
        return GreenElement(self.level, self.monos ^ other.monos)

    __sub__ = __add__

    def __mul__(self, other: "GreenElement") -> "GreenElement":
        return mul(self, other)

    def sorted_monos(self) -> List[Mono]:
        return sorted(self.monos)

    def degree(self):
        return degree_of(self)

    def __str__(self) -> str:
        if not self.monos:
            return "0"
        return " + ".join(self.level.fmt(e) for e in self.sorted_monos())

    def __repr__(self) -> str:
        return f"GreenElement({self.level.name}: {self})"


def _same_level(x: GreenElement, y: GreenElement) -> None:
    if x.level != y.level:
        raise GreenError(f"level mismatch: {x.level.name} vs {y.level.name}")


def element(level: Union[str, Level], monos: Iterable[Sequence[int]]) -> GreenElement:
    out = GreenElement.zero(level)
    for e in monos:
        out = out + GreenElement.mono(level, e)
    return out


def _mono_mul(lv: Level, a: Mono, b: Mono) -> Optional[Mono]:
    c = _add(a, b)
    return c if lv.member(c) else None


def mul(x: GreenElement, y: GreenElement) -> GreenElement:
    """Product: add exponents, keep the result if it is a basis monomial."""
    _same_level(x, y)
    acc: set = set()
    for a in x.monos:
        for b in y.monos:
            c = _mono_mul(x.level, a, b)
            if c is not None:
                acc ^= {c}
    return GreenElement(x.level, frozenset(acc))


def divide(x: GreenElement, e: Mono) -> GreenElement:
    """``x / m`` for a formal monomial ``m``; every quotient must lie in the level."""
    acc: set = set()
    for a in x.monos:
        c = _sub(a, e)
        if not x.level.member(c):
            raise NotInRing(f"{x.level.fmt(a)} is not divisible by the given monomial")
        acc ^= {c}
    return GreenElement(x.level, frozenset(acc))


def degree_of(x: GreenElement):
    """The common degree of the monomials of a nonzero element."""
    if not x.monos:
        raise GreenError("the zero element has no degree")
    degs = {x.level.degree(e) for e in x.monos}
    if len(degs) != 1:
        raise GreenError("element mixes degrees")
    return degs.pop()


# ---------------------------------------------------------------------------
# parsing

_TOKEN_RE = re.compile(r"\s*(?:(x\[\s*-?\d+\s*,\s*-?\d+\s*\])|([A-Za-z][A-Za-z0-9]*)|(\d+)|(\^)|([*/+()])|(-))")


def _tokenize(text: str) -> List[Tuple[str, str, int]]:
    toks = []
    pos = 0
    while pos < len(text):
        if text[pos].isspace():
            pos += 1
            continue
        m = _TOKEN_RE.match(text, pos)
        if m is None or m.end() == pos:
            raise ParseError(f"unexpected character {text[pos]!r}", pos)
        start = m.start(m.lastindex)
        kind = ("x", "name", "int", "^", "op", "-")[m.lastindex - 1]
        toks.append((kind, m.group(m.lastindex), start))
        pos = m.end()
    toks.append(("end", "", len(text)))
    return toks


class _Parser:
    def __init__(self, text: str, level: Optional[Level]) -> None:
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0
        self.level = level
        names = [v for k, v, _ in self.toks if k == "name"]
        if any(k == "x" for k, _, _ in self.toks):
            names.append("as")
        for nm in names:
            if nm not in _TOKEN_LEVEL:
                pos = next(p for k, v, p in self.toks if v == nm)
                raise ParseError(f"unknown symbol {nm!r}", pos)
        lvls = {_TOKEN_LEVEL[nm] for nm in names}
        if level is not None:
            lvls.add(level)
        if len(lvls) > 1:
            raise ParseError("expression mixes levels " + ", ".join(sorted(l.name for l in lvls)), 0)
        self.level = lvls.pop() if lvls else TOP

    def peek(self) -> Tuple[str, str, int]:
        return self.toks[self.i]

    def take(self, kind: Optional[str] = None, value: Optional[str] = None) -> Tuple[str, str, int]:
        tok = self.toks[self.i]
        if (kind and tok[0] != kind) or (value and tok[1] != value):
            want = value or kind
            raise ParseError(f"expected {want!r}, found {tok[1] or 'end of input'!r}", tok[2])
        self.i += 1
        return tok

    def parse(self) -> GreenElement:
        out = self.expr()
        if self.peek()[0] != "end":
            raise ParseError(f"unexpected {self.peek()[1]!r}", self.peek()[2])
        return out

    def expr(self) -> GreenElement:
        out = self.term()
        while self.peek()[1] == "+":
            self.take()
            out = out + self.term()
        return out

    def exponent(self) -> int:
        if self.peek()[0] != "^":
            return 1
        self.take("^")
        paren = self.peek()[1] == "("
        if paren:
            self.take("op", "(")
        sign = 1
        if self.peek()[0] == "-":
            self.take("-")
            sign = -1
        val = int(self.take("int")[1]) * sign
        if paren:
            self.take("op", ")")
        return val

    def atom_mono(self) -> Mono:
        kind, val, pos = self.peek()
        if kind == "x":
            self.take()
            n, m = (int(v) for v in val[2:-1].split(","))
            return _x_atom(n, m)
        if kind == "name":
            self.take()
            return self.level.atoms[val]
        raise ParseError(f"expected a symbol, found {val or 'end of input'!r}", pos)

    def formal(self) -> Mono:
        """A denominator: a product of symbol powers, no membership check."""
        if self.peek()[1] == "(":
            self.take("op", "(")
            e = self.formal_product()
            self.take("op", ")")
            return _scale(e, self.exponent())
        kind, val, pos = self.peek()
        if kind == "int" and val == "1":
            self.take()
            return self.level.one
        base = self.atom_mono()
        return _scale(base, self.exponent())

    def formal_product(self) -> Mono:
        e = self.formal()
        while self.peek()[1] in ("*", "/"):
            op = self.take()[1]
            f = self.formal()
            e = _add(e, f) if op == "*" else _sub(e, f)
        return e

    def factor(self) -> Tuple[str, Union[GreenElement, Mono]]:
        """Return ('elem', element) or ('div', monomial) for negative powers."""
        kind, val, pos = self.peek()
        if val == "(":
            self.take()
            inner = self.expr()
            self.take("op", ")")
            k = self.exponent()
            if k < 0:
                raise ParseError("negative power of a parenthesized expression", pos)
            out = GreenElement.mono(self.level, self.level.one)
            for _ in range(k):
                out = mul(out, inner)
            return "elem", out
        if kind == "int":
            self.take()
            if val not in ("0", "1"):
                raise ParseError("only the constants 0 and 1 are allowed", pos)
            return "elem", (GreenElement.zero(self.level) if val == "0" else GreenElement.mono(self.level, self.level.one))
        base = self.atom_mono()
        k = self.exponent()
        e = _scale(base, k)
        if k < 0:
            return "div", _scale(e, -1)
        if not self.level.member(e):
            return "elem", GreenElement.zero(self.level)
        return "elem", GreenElement(self.level, frozenset([e]))

    def term(self) -> GreenElement:
        one = GreenElement.mono(self.level, self.level.one)
        kind, val = self.factor()
        out = mul(one, val) if kind == "elem" else divide(one, val)
        while self.peek()[1] in ("*", "/"):
            op = self.take()[1]
            if op == "*":
                kind, val = self.factor()
                out = mul(out, val) if kind == "elem" else divide(out, val)
            else:
                out = divide(out, self.formal())
        return out


def parse(text: str, level: Optional[str] = None) -> GreenElement:
    """Parse an expression into canonical form.

    Products are evaluated left to right and each product is reduced
    immediately, so ``(th*as)/al`` and ``th*as/al`` are ``0`` while
    ``th/al*as`` is not.  Division requires every quotient to be a basis
    monomial and raises :class:`NotInRing` otherwise.
    """
    return _Parser(text, LEVELS[level] if level else None).parse()


def named(text: str, level: Optional[str] = None) -> GreenElement:
    return parse(text, level)


# ---------------------------------------------------------------------------
# basis enumeration


@lru_cache(maxsize=None)
def _basis_top(d: RODegree) -> Tuple[Mono, ...]:
    A, N, M = d.a, d.n, d.m
    out = []
    for t in (0, 1):
        deltas = {0}
        for alpha in (0, 1, 2):
            if (alpha + N + A) % 2 == 0:
                deltas.add((alpha + N + A) // 2)
        for delta in sorted(deltas):
            beta = A - 2 * delta + 2 * t
            alpha = -N - beta + 2 * t
            gamma = -M - delta
            e = (t, alpha, beta, gamma, delta)
            if _in_top(e):
                out.append(e)
    return tuple(sorted(set(out)))


@lru_cache(maxsize=None)
def _basis_mid(d: RODegree) -> Tuple[Mono, ...]:
    out = []
    p = -d.n
    for t in (0, 1):
        y = d.a - p + 2 * t
        x = 2 * t - 2 * d.m - y
        e = (p, x, y, t)
        if _in_mid(e):
            out.append(e)
    return tuple(sorted(out))


def _basis_bot(d: RODegree) -> Tuple[Mono, ...]:
    p, q = -d.n, -d.m
    return ((p, q),) if d.a == p + 2 * q else ()


def _basis_c2top(d: C2Degree) -> Tuple[Mono, ...]:
    out = []
    for t in (0, 1):
        y = d.a + 2 * t
        x = -d.s - y + 2 * t
        if _in_c2top((x, y, t)):
            out.append((x, y, t))
    return tuple(out)


def _basis_c2bot(d: C2Degree) -> Tuple[Mono, ...]:
    return ((d.a,),) if d.a == -d.s else ()


def basis(level: str, d) -> List[GreenElement]:
    """Basis monomials of ``level`` in degree ``d``."""
    fn = {"top": _basis_top, "mid": _basis_mid, "bot": _basis_bot, "c2top": _basis_c2top, "c2bot": _basis_c2bot}[level]
    lv = LEVELS[level]
    return [GreenElement(lv, frozenset([e])) for e in fn(d)]


def basis_monos(level: str, d) -> Tuple[Mono, ...]:
    fn = {"top": _basis_top, "mid": _basis_mid, "bot": _basis_bot, "c2top": _basis_c2top, "c2bot": _basis_c2bot}[level]
    return tuple(fn(d))


# ---------------------------------------------------------------------------
# restriction


def _res_top_mono(e: Mono) -> Optional[Mono]:
    t, a_s, u_s, a_l, u_l = e
    if t == 0:
        if a_s == 0:
            return (u_s, 2 * a_l, 2 * u_l, 0)
        if a_s == 2 and a_l <= -1:
            # a_s^2 u_s^b / a_l^i  ->  ubar_s^(b+2) v / bal^(i-1)
            return (u_s + 2, 2 * (a_l + 1), 0, 1)
        return None
    if a_s == 1 and u_l <= -1:
        # quotients of s restrict to quotients of v/sq
        return (u_s - 1, 2 * a_l + 1, 2 * u_l + 1, 1)
    return None


def _res_mid_mono(e: Mono) -> Optional[Mono]:
    p, x, y, t = e
    if t == 0 and x == 0:
        return (p, y // 2)
    return None


def _res_c2_mono(e: Mono) -> Optional[Mono]:
    x, y, t = e
    if t == 0 and x == 0:
        return (y,)
    return None


_RES = {"top": ("mid", _res_top_mono), "mid": ("bot", _res_mid_mono), "c2top": ("c2bot", _res_c2_mono)}


def res(x: GreenElement) -> GreenElement:
    """Restriction one level down (a ring homomorphism)."""
    if x.level.name not in _RES:
        raise GreenError(f"no restriction out of the {x.level.name} level")
    target, fn = _RES[x.level.name]
    acc: set = set()
    for e in x.monos:
        r = fn(e)
        if r is not None:
            acc ^= {r}
    return GreenElement(LEVELS[target], frozenset(acc))


def weyl(x: GreenElement) -> GreenElement:
    """The Weyl action; it fixes every basis monomial of every level."""
    return x


# ---------------------------------------------------------------------------
# transfer

_UP = {"mid": "top", "bot": "mid", "c2bot": "c2top"}


def _seeds(level: str) -> Dict[Mono, GreenElement]:
    if level == "mid":
        return {
            (0, 0, 0, 0): GreenElement.zero("top"),
            (-2, 0, 0, 0): parse("th"),
            (0, 0, 0, 1): parse("x[0,1]"),
            (0, 1, 1, 0): parse("as*ul/us"),
        }
    if level == "bot":
        return {(0, 0): GreenElement.zero("mid"), (0, -1): parse("v")}
    return {(0,): GreenElement.zero("c2top"), (-2,): parse("th2")}


def _basis_of(level: str, d) -> Tuple[Mono, ...]:
    return basis_monos(level, d)


def _frobenius(level: str, e: Mono) -> Optional[GreenElement]:
    """Transfer via ``Tr(res(c) g) = c Tr(g)`` for a seed ``g``, or None."""
    lv = LEVELS[level]
    up = _UP[level]
    resfn = _RES[up][1]
    for g, trg in _seeds(level).items():
        if e == g:
            return trg
        q = _sub(e, g)
        if not lv.member(q):
            continue
        d = lv.degree(q)
        for c in _basis_of(up, d):
            if resfn(c) == q:
                return mul(GreenElement(LEVELS[up], frozenset([c])), trg)
    return None


def _multipliers(up: str) -> List[Mono]:
    lv = LEVELS[up]
    gens = [tok for tok in lv.atoms if tok not in ("th", "s", "th2")]
    out = []
    for k in range(1, 5):
        for tok in gens:
            out.append(_scale(lv.atoms[tok], k))
    for t1 in gens:
        for t2 in gens:
            if t1 < t2:
                out.append(_add(lv.atoms[t1], lv.atoms[t2]))
    return [m for m in out if lv.member(m)]


@lru_cache(maxsize=None)
def _tr_mono(level: str, e: Mono) -> GreenElement:
    lv = LEVELS[level]
    up = _UP[level]
    ulv = LEVELS[up]
    d = lv.degree(e)
    targets = _basis_of(up, d)
    if not targets:
        return GreenElement.zero(up)
    direct = _frobenius(level, e)
    if direct is not None:
        return direct
    # Division: for multipliers c with a computable transfer of res(c) * e,
    # collect the linear constraints c * Tr(e) = Tr(res(c) * e) and solve.
    resfn = _RES[up][1]
    rows: List[int] = []
    rhs: List[int] = []
    for c in _multipliers(up):
        rc = resfn(c)
        prod = None if rc is None else _mono_mul(lv, rc, e)
        known = GreenElement.zero(up) if prod is None else _frobenius(level, prod)
        if known is None:
            continue
        image_basis = {}
        for j, b in enumerate(targets):
            cb = _mono_mul(ulv, c, b)
            if cb is not None:
                image_basis.setdefault(cb, 0)
                image_basis[cb] |= 1 << j
        for mono in known.monos:
            if mono not in image_basis:
                image_basis[mono] = 0
        for mono, row in image_basis.items():
            rows.append(row)
            rhs.append(1 if mono in known.monos else 0)
    if rows:
        M = GF2Matrix(len(rows), len(targets), tuple(rows))
        b = sum(bit << i for i, bit in enumerate(rhs))
        sol = solve(M, b)
        if sol is not None:
            from .gf2 import rank

            if rank(M) == len(targets):
                return GreenElement(ulv, frozenset(targets[j] for j in range(len(targets)) if (sol >> j) & 1))
    raise OutsideClosure(f"transfer of {lv.fmt(e)} is not determined by the stated formulas")


def tr(x: GreenElement) -> GreenElement:
    """Transfer one level up (additive)."""
    if x.level.name not in _UP:
        raise GreenError(f"no transfer out of the {x.level.name} level")
    out = GreenElement.zero(_UP[x.level.name])
    for e in x.monos:
        out = out + _tr_mono(x.level.name, e)
    return out


# ---------------------------------------------------------------------------
# Tate corners


@dataclass(frozen=True)
class CornerElement:
    """Element of a Tate corner ring, as exponents ``(as, us, al, ul)``.

    ``h``: ``k[as, us^+-, al, ul^+-]/as^2``; ``tilde``: the top level with
    ``al`` inverted; ``t``: ``k[as, us^+-, al^+-, ul^+-]/as^2``.
    """

    corner: str
    monos: FrozenSet[Tuple[int, ...]]

    def __mul__(self, other: "CornerElement") -> "CornerElement":
        if self.corner != other.corner:
            raise GreenError("corner mismatch")
        acc: set = set()
        for a in self.monos:
            for b in other.monos:
                c = _add(a, b)
                if _in_corner(self.corner, c):
                    acc ^= {c}
        return CornerElement(self.corner, frozenset(acc))

    def __add__(self, other: "CornerElement") -> "CornerElement":
        return CornerElement(self.corner, self.monos ^ other.monos)

    def is_zero(self) -> bool:
        return not self.monos

    def __str__(self) -> str:
        if not self.monos:
            return "0"
        if self.corner == "tilde":
            return " + ".join(_fmt_top(e) for e in sorted(self.monos))
        return " + ".join(_fmt_top((0,) + e) for e in sorted(self.monos))


def _in_corner(corner: str, e: Tuple[int, ...]) -> bool:
    if corner == "tilde":
        # a_lambda-localization of the top level: some a_l-multiple is a basis monomial
        t, a_s, u_s, a_l, u_l = e
        if t == 0:
            return _in_top((0, a_s, u_s, max(a_l, 0) + 64, u_l))
        return u_l == 0 and a_s <= 0 and u_s <= 0
    a_s, u_s, a_l, u_l = e
    if a_s not in (0, 1):
        return False
    return corner == "t" or a_l >= 0


def localize(x: GreenElement, corner: str) -> CornerElement:
    """Image of a top-level element in a Tate corner (``h``, ``tilde`` or ``t``)."""
    if x.level.name != "top":
        raise GreenError("localization is defined on the top level")
    if corner not in ("h", "tilde", "t"):
        raise GreenError(f"unknown corner {corner!r}")
    acc: set = set()
    for e in x.monos:
        t, a_s, u_s, a_l, u_l = e
        if corner == "tilde":
            # a_lambda-torsion (the x- and s-families) dies
            if t == 0 or (u_l == 0 and a_s <= 0 and u_s <= 0):
                acc ^= {e}
            continue
        if t == 1:
            continue
        img = (a_s, u_s, a_l, u_l)
        if _in_corner(corner, img):
            acc ^= {img}
    return CornerElement(corner, frozenset(acc))


def corner_element(corner: str, monos: Iterable[Sequence[int]]) -> CornerElement:
    acc: set = set()
    for e in monos:
        e = tuple(e)
        if _in_corner(corner, e):
            acc ^= {e}
    return CornerElement(corner, frozenset(acc))


# ---------------------------------------------------------------------------
# Bockstein


def bockstein(x: GreenElement) -> GreenElement:
    """The derivation with ``beta(u_s) = a_s`` and ``beta(a_s) = beta(a_l) = beta(u_l) = 0``.

    Defined on the theta-free part of the top level.
    """
    if x.level.name != "top":
        raise GreenError("the Bockstein is defined on the top level")
    acc: set = set()
    for e in x.monos:
        t, a_s, u_s, a_l, u_l = e
        if t:
            raise GreenError(f"Bockstein is not defined on {_fmt_top(e)}")
        if u_s % 2 == 0:
            continue
        img = (0, a_s + 1, u_s - 1, a_l, u_l)
        if _in_top(img):
            acc ^= {img}
    return GreenElement(TOP, frozenset(acc))


# ---------------------------------------------------------------------------
# per-degree Mackey functor


def _map_matrix(src: Sequence[Mono], tgt: Sequence[Mono], fn: Callable[[GreenElement], GreenElement], src_level: str) -> GF2Matrix:
    index = {e: i for i, e in enumerate(tgt)}
    cols = []
    for e in src:
        img = fn(GreenElement(LEVELS[src_level], frozenset([e])))
        v = 0
        for f in img.monos:
            v |= 1 << index[f]
        cols.append(v)
    if not cols:
        return GF2Matrix.zeros(len(tgt), 0)
    return GF2Matrix.from_columns(cols, len(tgt))


def point_mackey(d: RODegree):
    """The Mackey functor ``k_d`` of a point assembled from the symbolic bases."""
    from .mackey import MackeyF2

    top, mid, bot = (basis_monos(l, d) for l in ("top", "mid", "bot"))
    return MackeyF2.build(
        len(top),
        len(mid),
        len(bot),
        res42=_map_matrix(top, mid, res, "top"),
        tr24=_map_matrix(mid, top, tr, "mid"),
        res21=_map_matrix(mid, bot, res, "mid"),
        tr12=_map_matrix(bot, mid, tr, "bot"),
    )
