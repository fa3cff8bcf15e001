"""Expected RO(C4)-graded homology of a point, as named Mackey functors.

``k_{a + n sigma + m lambda}(S^0) = k_a(S^{-n sigma - m lambda})``, so every
degree is answered by one of four families of representation spheres,
chosen by the signs of ``(-n, -m)``:

* ``S^{N sigma + M lambda}`` with ``N, M >= 0`` (positive family),
* ``S^{-N sigma - M lambda}`` with ``N, M >= 0`` not both zero (negative family),
* ``S^{M lambda - N sigma}`` with ``N, M > 0``,
* ``S^{N sigma - M lambda}`` with ``N, M > 0``.

Each row below lists the generator of one summand as ``top|mid|bot`` in the
expression grammar of :mod:`c4mackey.green`; ``0`` marks a zero level.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Dict, Iterator, List, Optional, Tuple

from .degree import C2Degree, RODegree
from .mackey import TAGS

__all__ = [
    "Piece",
    "PointAnswer",
    "FAMILIES",
    "expected_point",
    "expected_tags",
    "expected_dims",
    "family_answer",
    "family_for",
    "expected_point_c2",
    "TAG_DIMS",
]

TAG_DIMS: Dict[str, Tuple[int, int, int]] = {
    "k": (1, 1, 1),
    "k_minus": (0, 1, 1),
    "box_k": (1, 0, 0),
    "bar_box_k": (0, 1, 0),
    "L": (1, 1, 1),
    "pstar_L": (1, 1, 1),
    "Q": (1, 1, 0),
    "Q_sharp": (1, 1, 0),
    "L_sharp": (1, 1, 1),
    "k_minus_flat": (0, 1, 1),
}


@dataclass(frozen=True)
class Piece:
    """One named summand and its generator label ``top|mid|bot``."""

    tag: str
    label: str

    @property
    def levels(self) -> Tuple[str, str, str]:
        parts = self.label.split("|")
        if len(parts) != 3:
            raise ValueError(f"malformed label {self.label!r}")
        return tuple(p.strip() for p in parts)  # type: ignore[return-value]


PointAnswer = Tuple[Piece, ...]


def _pow(tok: str, e: int) -> str:
    if e == 0:
        return ""
    if e == 1:
        return tok
    return f"{tok}^{e}" if e > 0 else f"{tok}^({e})"


def _mono(*factors: Tuple[str, int]) -> str:
    parts = [_pow(t, e) for t, e in factors]
    parts = [p for p in parts if p]
    return "*".join(parts) if parts else "1"


def _frac(num: str, *den: Tuple[str, int]) -> str:
    d = _mono(*den)
    if d == "1":
        return num
    return f"{num}/({d})"


def _label(top: str, mid: str, bot: str) -> str:
    return f"{top}|{mid}|{bot}"


Row = Tuple[int, str, str]  # (degree *, tag, label)


def _positive(n: int, m: int) -> Iterator[Row]:
    """Rows of k_*(S^{n sigma + m lambda})."""
    yield n + 2 * m, "k", _label(
        _mono(("us", n), ("ul", m)), _mono(("bus", n), ("bul", m)), _mono(("bbs", n), ("bbl", m))
    )
    for i in range(0, m):
        yield n + 2 * i, "Q_sharp", _label(
            _mono(("us", n), ("al", m - i), ("ul", i)), _mono(("bus", n), ("bal", m - i), ("bul", i)), "0"
        )
    for i in range(1, m + 1):
        if n > 0:
            top = _mono(("as", 1), ("us", n - 1), ("al", m - i), ("ul", i))
        else:
            top = _frac(_mono(("as", 1), ("al", m - i), ("ul", i)), ("us", 1))
        mid = _mono(("bus", n), ("bal", m - i), ("bul", i - 1), ("sq", 1))
        yield n + 2 * i - 1, "Q", _label(top, mid, "0")
    for i in range(0, n):
        yield i, "box_k", _label(_mono(("as", n - i), ("us", i), ("al", m)), "0", "0")


def _negative(n: int, m: int) -> Iterator[Row]:
    """Rows of k_*(S^{-n sigma - m lambda}), n and m not both zero."""
    if m != 0:
        yield -n - 2 * m, "L", _label(
            f"x[{n},{m}]",
            _frac("v", ("bus", n), ("bul", m - 1)),
            _mono(("bbs", -n), ("bbl", -m)),
        )
    if m == 0 and n >= 2:
        yield -n, "pstar_L", _label(_frac("th", ("us", n - 2)), _mono(("bus", -n)), _mono(("bbs", -n)))
    if m == 0 and n == 1:
        yield -1, "k_minus", _label("0", "bus^(-1)", "bbs^(-1)")
    for i in range(2, m + 1):
        yield -n - 2 * m + 2 * i - 3, "Q_sharp", _label(
            _frac("s", ("us", n), ("al", i - 2), ("ul", m - i)),
            _frac("v/sq", ("bus", n), ("bal", i - 2), ("bul", m - i)),
            "0",
        )
    for i in range(1, m):
        yield -n - 2 * i, "Q", _label(
            _frac("x[0,1]", ("us", n), ("al", m - i), ("ul", i - 1)),
            _frac("v", ("bus", n), ("bal", m - i), ("bul", i - 1)),
            "0",
        )
    if m != 0:
        for i in range(0, n):
            yield -i - 2, "box_k", _label(_frac("x[0,1]", ("as", n - i), ("us", i), ("al", m - 1)), "0", "0")
    else:
        for i in range(2, n):
            yield -i, "box_k", _label(_frac("th", ("as", n - i), ("us", i - 2)), "0", "0")


def _lambda_minus_sigma(n: int, m: int) -> Iterator[Row]:
    """Rows of k_*(S^{m lambda - n sigma}), n, m > 0."""
    yield 2 * m - n, "k", _label(
        _frac(_mono(("ul", m)), ("us", n)), _mono(("bus", -n), ("bul", m)), _mono(("bbs", -n), ("bbl", m))
    )
    for i in range(1, m):
        yield 2 * m - n - 2 * i, "Q_sharp", _label(
            _frac(_mono(("al", i), ("ul", m - i)), ("us", n)), _mono(("bus", -n), ("bal", i), ("bul", m - i)), "0"
        )
    for i in range(0, m):
        yield 2 * m - n - 2 * i - 1, "Q", _label(
            _frac(_mono(("as", 1), ("al", i), ("ul", m - i)), ("us", n + 1)),
            _mono(("bus", -n), ("bal", i), ("bul", m - i - 1), ("sq", 1)),
            "0",
        )
    for i in range(2, n):
        yield -i, "box_k", _label(_frac(_mono(("th", 1), ("al", m)), ("as", n - i), ("us", i - 2)), "0", "0")
    if n >= 2:
        yield -n, "Q", _label(
            _frac(_mono(("th", 1), ("al", m)), ("us", n - 2)), _mono(("bus", -n), ("bal", m)), "0"
        )
    if n == 1:
        yield -1, "bar_box_k", _label("0", _mono(("bus", -1), ("bal", m)), "0")


def _sigma_minus_lambda(n: int, m: int) -> Iterator[Row]:
    """Rows of k_*(S^{n sigma - m lambda}), n, m > 0."""
    if n >= 2 and m >= 2:
        yield n - 2, "Q_sharp", _label(
            _frac(_mono(("as", 2), ("us", n - 2)), ("al", m)), _frac(_mono(("v", 1), ("bus", n)), ("bal", m - 1)), "0"
        )
    if n == 1 and m >= 2:
        yield -1, "bar_box_k", _label("0", _frac("v*bus", ("bal", m - 1)), "0")
    for i in range(2, m):
        yield n - 2 * m + 2 * i - 2, "Q", _label(
            _frac(_mono(("x[0,2]", 1), ("us", n)), ("al", i - 1), ("ul", m - i - 1)),
            _frac(_mono(("v", 1), ("bus", n)), ("bal", i - 1), ("bul", m - i)),
            "0",
        )
    for i in range(2, m + 1):
        yield n - 2 * m + 2 * i - 3, "Q_sharp", _label(
            _frac(_mono(("s", 1), ("us", n)), ("al", i - 2), ("ul", m - i)),
            _frac(_mono(("v/sq", 1), ("bus", n)), ("bal", i - 2), ("bul", m - i)),
            "0",
        )
    if m >= 2:
        yield n - 2 * m, "L", _label(
            _frac(_mono(("x[0,2]", 1), ("us", n)), ("ul", m - 2)),
            _frac(_mono(("v", 1), ("bus", n)), ("bul", m - 1)),
            _mono(("bbs", n), ("bbl", -m)),
        )
    if n > 1 and m == 1:
        yield n - 2, "L_sharp", _label(
            _frac(_mono(("as", 2), ("us", n - 2)), ("al", 1)), _mono(("v", 1), ("bus", n)), _mono(("bbs", n), ("bbl", -1))
        )
    if n == 1 and m == 1:
        yield -1, "k_minus_flat", _label("0", "v*bus", "bbs*bbl^(-1)")
    for i in range(3, n + 1):
        yield n - i, "box_k", _label(_frac(_mono(("as", i), ("us", n - i)), ("al", m)), "0", "0")


FAMILIES: Dict[str, Callable[[int, int], Iterator[Row]]] = {
    "positive": _positive,
    "negative": _negative,
    "lambda_minus_sigma": _lambda_minus_sigma,
    "sigma_minus_lambda": _sigma_minus_lambda,
}


def family_for(N: int, M: int) -> Tuple[str, int, int]:
    """The family describing ``S^{N sigma + M lambda}`` and its ``(n, m)`` parameters."""
    if N >= 0 and M >= 0:
        return "positive", N, M
    if N <= 0 and M <= 0:
        return "negative", -N, -M
    if M > 0:
        return "lambda_minus_sigma", -N, M
    return "sigma_minus_lambda", N, -M


def family_answer(family: str, n: int, m: int, star: int) -> PointAnswer:
    """Evaluate one family's rows at ``k_star``, ignoring its range preconditions."""
    return tuple(Piece(tag, label) for d, tag, label in FAMILIES[family](n, m) if d == star)


def expected_point(star: RODegree) -> PointAnswer:
    """Named summands of ``k_star`` of a point, with generator labels."""
    family, n, m = family_for(-star.n, -star.m)
    return family_answer(family, n, m, star.a)


_TAG_ORDER = {t: i for i, t in enumerate(TAGS)}


def expected_tags(star: RODegree) -> List[str]:
    """Expected summand tags, sorted in catalog order."""
    return sorted((p.tag for p in expected_point(star)), key=_TAG_ORDER.__getitem__)


def expected_dims(star: RODegree) -> Tuple[int, int, int]:
    t = m = b = 0
    for p in expected_point(star):
        dt, dm, db = TAG_DIMS[p.tag]
        t, m, b = t + dt, m + dm, b + db
    return (t, m, b)


def expected_point_c2(star2) -> Tuple[int, str]:
    """Dimension and generator of ``k^{C2}`` in degree ``a + s sigma_2``.

    The ring is ``k[a2, u2]`` plus the tower ``th2/(a2^i u2^j)``, with
    ``|a2| = -sigma_2``, ``|u2| = 1 - sigma_2`` and ``|th2| = -2 + 2 sigma_2``.
    """
    if isinstance(star2, C2Degree):
        a, s = star2.a, star2.s
    else:
        a, s = star2
    y, x = a, -s - a
    if x >= 0 and y >= 0:
        return 1, _mono(("a2", x), ("u2", y))
    j = -2 - a
    i = s - 2 - j
    if i >= 0 and j >= 0:
        return 1, _frac("th2", ("a2", i), ("u2", j))
    return 0, ""
