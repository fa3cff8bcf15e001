"""Mackey functors for C4 (and C2) over F2.

A C4 Mackey functor is stored as three vector spaces (levels C4/C4, C4/C2,
C4/e, called top, mid and bot) together with the restriction, transfer and
Weyl-action matrices between them.  Matrix shapes follow the usual
"target x source" convention, so ``res42`` is ``mid_dim x top_dim``.
"""
from __future__ import annotations

import itertools
import json
from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

from .degree import RODegree, parse_degree
from .gf2 import GF2Matrix, kernel_basis, rank

__all__ = [
    "RODegree",
    "parse_degree",
    "MackeyF2",
    "C2MackeyF2",
    "ShapeError",
    "TAGS",
    "TAG_DISPLAY",
    "catalog",
    "validate",
    "direct_sum",
    "direct_sum_all",
    "restrict_to_C2",
    "fingerprint",
    "decompose",
    "is_isomorphic",
    "UNIDENTIFIED",
]

UNIDENTIFIED = "unidentified"


class ShapeError(ValueError):
    """A structure matrix has the wrong shape for the stated level dims."""


def _Z(r: int, c: int) -> GF2Matrix:
    return GF2Matrix.zeros(r, c)


def _I(n: int) -> GF2Matrix:
    return GF2Matrix.identity(n)


@dataclass(frozen=True)
class MackeyF2:
    """A C4 Mackey functor with finite-dimensional levels over F2."""

    top_dim: int
    mid_dim: int
    bot_dim: int
    res42: GF2Matrix
    tr24: GF2Matrix
    res21: GF2Matrix
    tr12: GF2Matrix
    weyl_mid: GF2Matrix
    weyl_bot: GF2Matrix

    @classmethod
    def zero(cls) -> "MackeyF2":
        return cls.build(0, 0, 0)

    @classmethod
    def build(
        cls,
        top_dim: int,
        mid_dim: int,
        bot_dim: int,
        res42=None,
        tr24=None,
        res21=None,
        tr12=None,
        weyl_mid=None,
        weyl_bot=None,
    ) -> "MackeyF2":
        """Construct from dims and optional dense matrices (defaults: zero maps, trivial Weyl)."""

        def conv(m, r, c, default):
            if m is None:
                return default
            if isinstance(m, GF2Matrix):
                return m
            if r == 0 or c == 0:
                return _Z(r, c)
            return GF2Matrix.from_dense(m, c)

        return cls(
            top_dim,
            mid_dim,
            bot_dim,
            conv(res42, mid_dim, top_dim, _Z(mid_dim, top_dim)),
            conv(tr24, top_dim, mid_dim, _Z(top_dim, mid_dim)),
            conv(res21, bot_dim, mid_dim, _Z(bot_dim, mid_dim)),
            conv(tr12, mid_dim, bot_dim, _Z(mid_dim, bot_dim)),
            conv(weyl_mid, mid_dim, mid_dim, _I(mid_dim)),
            conv(weyl_bot, bot_dim, bot_dim, _I(bot_dim)),
        )

    @property
    def dims(self) -> Tuple[int, int, int]:
        return (self.top_dim, self.mid_dim, self.bot_dim)

    def is_zero(self) -> bool:
        return self.dims == (0, 0, 0)

    def check_shapes(self) -> None:
        t, m, b = self.dims
        expected = {
            "res42": (m, t),
            "tr24": (t, m),
            "res21": (b, m),
            "tr12": (m, b),
            "weyl_mid": (m, m),
            "weyl_bot": (b, b),
        }
        for name, shape in expected.items():
            got = getattr(self, name).shape
            if got != shape:
                raise ShapeError(f"{name} has shape {got}, expected {shape}")

    # serialization ------------------------------------------------------
    def to_dict(self) -> dict:
        return {
            "top_dim": self.top_dim,
            "mid_dim": self.mid_dim,
            "bot_dim": self.bot_dim,
            "res42": self.res42.to_dense(),
            "res21": self.res21.to_dense(),
            "tr24": self.tr24.to_dense(),
            "tr12": self.tr12.to_dense(),
            "weyl_mid": self.weyl_mid.to_dense(),
            "weyl_bot": self.weyl_bot.to_dense(),
        }

    @classmethod
    def from_dict(cls, data: dict) -> "MackeyF2":
        return cls.build(
            data["top_dim"],
            data["mid_dim"],
            data["bot_dim"],
            data["res42"],
            data["tr24"],
            data["res21"],
            data["tr12"],
            data["weyl_mid"],
            data["weyl_bot"],
        )

    def to_json(self, tags: Optional[Sequence[str]] = None) -> str:
        d = self.to_dict()
        if tags is not None:
            d["tags"] = list(tags)
        return json.dumps(d)


@dataclass(frozen=True)
class C2MackeyF2:
    """A C2 Mackey functor: top and bottom levels, res, tr and the Weyl involution."""

    top_dim: int
    bot_dim: int
    res: GF2Matrix
    tr: GF2Matrix
    weyl_bot: GF2Matrix

    @classmethod
    def build(cls, top_dim: int, bot_dim: int, res=None, tr=None, weyl_bot=None) -> "C2MackeyF2":
        def conv(m, r, c, default):
            if m is None:
                return default
            if isinstance(m, GF2Matrix):
                return m
            return GF2Matrix.from_dense(m, c) if r and c else _Z(r, c)

        return cls(
            top_dim,
            bot_dim,
            conv(res, bot_dim, top_dim, _Z(bot_dim, top_dim)),
            conv(tr, top_dim, bot_dim, _Z(top_dim, bot_dim)),
            conv(weyl_bot, bot_dim, bot_dim, _I(bot_dim)),
        )

    def validate(self) -> List[str]:
        for name, shape in (
            ("res", (self.bot_dim, self.top_dim)),
            ("tr", (self.top_dim, self.bot_dim)),
            ("weyl_bot", (self.bot_dim, self.bot_dim)),
        ):
            if getattr(self, name).shape != shape:
                raise ShapeError(f"{name} has shape {getattr(self, name).shape}, expected {shape}")
        bad = []
        if not self.weyl_bot.power(2).is_identity():
            bad.append("weyl_bot^2 = id")
        if self.res @ self.tr != _I(self.bot_dim) + self.weyl_bot:
            bad.append("res o tr = 1 + weyl_bot")
        if self.weyl_bot @ self.res != self.res:
            bad.append("weyl_bot fixes the image of res")
        if self.tr @ self.weyl_bot != self.tr:
            bad.append("tr o weyl_bot = tr")
        return bad


# ---------------------------------------------------------------------------
# axioms


def validate(M: MackeyF2) -> List[str]:
    """Return the list of violated axioms (empty means valid).

    Raises :class:`ShapeError` when matrix shapes do not match the dims.
    """
    M.check_shapes()
    t, m, b = M.dims
    bad = []
    if not M.weyl_mid.power(2).is_identity():
        bad.append("weyl_mid^2 = id")
    if not M.weyl_bot.power(4).is_identity():
        bad.append("weyl_bot^4 = id")
    if M.res42 @ M.tr24 != _I(m) + M.weyl_mid:
        bad.append("res42 o tr24 = 1 + weyl_mid")
    if M.res21 @ M.tr12 != _I(b) + M.weyl_bot.power(2):
        bad.append("res21 o tr12 = 1 + weyl_bot^2")
    if M.res21 @ M.weyl_mid != M.weyl_bot @ M.res21:
        bad.append("res21 o weyl_mid = weyl_bot o res21")
    if M.tr12 @ M.weyl_bot != M.weyl_mid @ M.tr12:
        bad.append("tr12 o weyl_bot = weyl_mid o tr12")
    if M.weyl_mid @ M.res42 != M.res42:
        bad.append("weyl_mid fixes the image of res42")
    if M.tr24 @ M.weyl_mid != M.tr24:
        bad.append("tr24 o weyl_mid = tr24")
    return bad


# ---------------------------------------------------------------------------
# the named catalog

TAGS: Tuple[str, ...] = (
    "k",
    "k_minus",
    "box_k",
    "bar_box_k",
    "L",
    "pstar_L",
    "Q",
    "Q_sharp",
    "L_sharp",
    "k_minus_flat",
)

TAG_DISPLAY: Dict[str, str] = {
    "k": "k",
    "k_minus": "k_-",
    "box_k": "<k>",
    "bar_box_k": "bar<k>",
    "L": "L",
    "pstar_L": "p*L",
    "Q": "Q",
    "Q_sharp": "Q#",
    "L_sharp": "L#",
    "k_minus_flat": "k_-^b",
}

# dims (top, mid, bot) and the scalar entries of res42, tr24, res21, tr12;
# None marks a map whose source or target is zero.  Weyl actions are trivial.
_CATALOG_DATA = {
    "k": ((1, 1, 1), 1, 0, 1, 0),
    "k_minus": ((0, 1, 1), None, None, 1, 0),
    "box_k": ((1, 0, 0), None, None, None, None),
    "bar_box_k": ((0, 1, 0), None, None, None, None),
    "L": ((1, 1, 1), 0, 1, 0, 1),
    "pstar_L": ((1, 1, 1), 0, 1, 1, 0),
    "Q": ((1, 1, 0), 0, 1, None, None),
    "Q_sharp": ((1, 1, 0), 1, 0, None, None),
    "L_sharp": ((1, 1, 1), 1, 0, 0, 1),
    "k_minus_flat": ((0, 1, 1), None, None, 0, 1),
}


@lru_cache(maxsize=None)
def catalog(tag: str) -> MackeyF2:
    """The named Mackey functor ``tag`` (one of :data:`TAGS`)."""
    if tag not in _CATALOG_DATA:
        raise KeyError(f"unknown Mackey functor tag {tag!r}")
    (t, m, b), r42, t24, r21, t12 = _CATALOG_DATA[tag]

    def one(x, r, c):
        return None if x is None else [[x]] if r and c else None

    return MackeyF2.build(t, m, b, one(r42, m, t), one(t24, t, m), one(r21, b, m), one(t12, m, b))


def direct_sum(M: MackeyF2, N: MackeyF2) -> MackeyF2:
    """Block-diagonal direct sum."""
    return MackeyF2(
        M.top_dim + N.top_dim,
        M.mid_dim + N.mid_dim,
        M.bot_dim + N.bot_dim,
        M.res42.block_diag(N.res42),
        M.tr24.block_diag(N.tr24),
        M.res21.block_diag(N.res21),
        M.tr12.block_diag(N.tr12),
        M.weyl_mid.block_diag(N.weyl_mid),
        M.weyl_bot.block_diag(N.weyl_bot),
    )


def direct_sum_all(parts: Iterable[MackeyF2]) -> MackeyF2:
    out = MackeyF2.zero()
    for p in parts:
        out = direct_sum(out, p)
    return out


def sum_of_tags(tags: Iterable[str]) -> MackeyF2:
    return direct_sum_all(catalog(t) for t in tags)


def restrict_to_C2(M: MackeyF2) -> C2MackeyF2:
    """Forget the top level; the C2 Weyl action is the square of the C4 one."""
    return C2MackeyF2(M.mid_dim, M.bot_dim, M.res21, M.tr12, M.weyl_bot.power(2))


# ---------------------------------------------------------------------------
# identification


def _fixed_dim(W: GF2Matrix) -> int:
    n = W.nrows
    return n - rank(W + _I(n))


def _vstack(A: GF2Matrix, B: GF2Matrix) -> GF2Matrix:
    return GF2Matrix(A.nrows + B.nrows, A.ncols, A.rows + B.rows)


def fingerprint(M: MackeyF2) -> Tuple[int, ...]:
    """Additive isomorphism invariant used for identification.

    Level dims, ranks of the four structure maps, dims of the Weyl-fixed
    subspaces, ranks of the composites top <-> bot, and ranks of the maps out
    of and into the middle level taken jointly.  Every entry is additive under
    direct sums, and the catalog fingerprints are linearly independent, so a
    direct sum of catalog functors is determined by its fingerprint.
    """
    out_mid = _vstack(M.tr24, M.res21)  # mid -> top + bot
    in_mid = _vstack(M.res42.T, M.tr12.T).T  # top + bot -> mid
    return (
        M.top_dim,
        M.mid_dim,
        M.bot_dim,
        rank(M.res42),
        rank(M.res21),
        rank(M.tr24),
        rank(M.tr12),
        _fixed_dim(M.weyl_mid),
        _fixed_dim(M.weyl_bot),
        rank(M.tr24 @ M.tr12),
        rank(M.res21 @ M.res42),
        rank(out_mid),
        rank(in_mid),
        rank(out_mid @ M.res42),
        rank(out_mid @ M.tr12),
        rank(M.res21 @ M.tr12),
        rank(M.res42 @ M.tr24),
        rank(M.tr12 @ M.res21),
    )


@lru_cache(maxsize=None)
def _tag_fingerprints() -> Tuple[Tuple[str, Tuple[int, ...]], ...]:
    return tuple((t, fingerprint(catalog(t))) for t in TAGS)


def _sub(fp: Tuple[int, ...], g: Tuple[int, ...]) -> Optional[Tuple[int, ...]]:
    out = tuple(a - b for a, b in zip(fp, g))
    return out if min(out) >= 0 else None


def decompose_fingerprint(fp: Tuple[int, ...]) -> Optional[List[str]]:
    """Find a multiset of catalog tags whose fingerprints sum to ``fp``.

    Depth-first peeling over the tags in catalog order with non-decreasing
    tag index, so the first solution found is canonical.
    """
    table = _tag_fingerprints()

    @lru_cache(maxsize=None)
    def go(rest: Tuple[int, ...], start: int) -> Optional[Tuple[str, ...]]:
        if not any(rest):
            return ()
        for idx in range(start, len(table)):
            tag, g = table[idx]
            nxt = _sub(rest, g)
            if nxt is None:
                continue
            sol = go(nxt, idx)
            if sol is not None:
                return (tag,) + sol
        return None

    sol = go(tuple(fp), 0)
    return None if sol is None else list(sol)


def decompose(M: MackeyF2) -> Union[List[str], str]:
    """Multiset of catalog tags (sorted in catalog order) or ``"unidentified"``."""
    if validate(M):
        return UNIDENTIFIED
    sol = decompose_fingerprint(fingerprint(M))
    return UNIDENTIFIED if sol is None else sol


def _invertibles(n: int) -> List[GF2Matrix]:
    out = []
    for rows in itertools.product(range(1 << n), repeat=n):
        m = GF2Matrix(n, n, tuple(rows))
        if rank(m) == n:
            out.append(m)
    return out


@lru_cache(maxsize=None)
def _invertibles_cached(n: int) -> Tuple[GF2Matrix, ...]:
    return tuple(_invertibles(n))


def _inverse(A: GF2Matrix) -> GF2Matrix:
    n = A.nrows
    from .gf2 import solve

    cols = [solve(A, 1 << j) for j in range(n)]
    return GF2Matrix.from_columns(cols, n)


def is_isomorphic(M: MackeyF2, N: MackeyF2) -> bool:
    """Decide whether ``M`` and ``N`` are isomorphic.

    Exhaustive search over level-wise basis changes when every level has
    dimension at most 3; otherwise equality of fingerprints together with a
    successful catalog decomposition is accepted.
    """
    if fingerprint(M) != fingerprint(N):
        return False
    if max(M.dims) > 3:
        return decompose(M) != UNIDENTIFIED and decompose(M) == decompose(N)
    t, m, b = M.dims
    for Fb in _invertibles_cached(b):
        Fb_inv = _inverse(Fb)
        if Fb @ M.weyl_bot @ Fb_inv != N.weyl_bot:
            continue
        for Fm in _invertibles_cached(m):
            Fm_inv = _inverse(Fm)
            if Fm @ M.weyl_mid @ Fm_inv != N.weyl_mid:
                continue
            if Fb @ M.res21 @ Fm_inv != N.res21 or Fm @ M.tr12 @ Fb_inv != N.tr12:
                continue
            for Ft in _invertibles_cached(t):
                Ft_inv = _inverse(Ft)
                if Fm @ M.res42 @ Ft_inv == N.res42 and Ft @ M.tr24 @ Fm_inv == N.tr24:
                    return True
    return False
