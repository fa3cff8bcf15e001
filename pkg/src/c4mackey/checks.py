"""Verification suites shared by the command line and the test-suite.

Each suite returns plain data (lists of failures, or rows with a ``match``
flag) so callers decide how to report it.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from .cellchain import homology, sphere_complex
from .degree import RODegree, window
from .green import (
    LEVELS,
    GreenElement,
    OutsideClosure,
    basis_monos,
    mul,
    parse,
    res,
    tr,
)
from .mackey import TAGS, MackeyF2, catalog, decompose, direct_sum_all, validate
from .point_catalog import expected_dims, expected_point, expected_tags

__all__ = [
    "point_homology",
    "point_row",
    "point_golden",
    "mackey_suite",
    "green_suite",
    "trres_table",
    "monomial_window",
]


# ---------------------------------------------------------------------------
# the homology of a point


def point_homology(star: RODegree) -> MackeyF2:
    """``k_star`` of a point as ``k_a(S^{-n sigma - m lambda})`` from the cellular engine."""
    return homology(sphere_complex(RODegree(0, -star.n, -star.m)), star.a)


def point_row(star: RODegree) -> Dict[str, object]:
    M = point_homology(star)
    got = decompose(M)
    want = expected_tags(star)
    return {
        "degree": str(star),
        "engine": got if isinstance(got, str) else list(got),
        "catalog": want,
        "labels": [p.label for p in expected_point(star)],
        "dims": list(M.dims),
        "match": got == want,
    }


def point_golden(degrees: Iterable[RODegree]) -> List[Dict[str, object]]:
    """Engine versus catalog rows, one per degree."""
    return [point_row(d) for d in degrees]


# ---------------------------------------------------------------------------
# Mackey axioms


def mackey_suite(seed: int = 0, trials: int = 1000, max_terms: int = 4) -> List[str]:
    """Validate every catalog functor and ``trials`` random direct sums.

    A random sum must also decompose back into its own summands.
    """
    failures: List[str] = []
    for tag in TAGS:
        for msg in validate(catalog(tag)):
            failures.append(f"{tag}: {msg}")
    rng = random.Random(seed)
    order = {t: i for i, t in enumerate(TAGS)}
    for k in range(trials):
        tags = sorted((rng.choice(TAGS) for _ in range(rng.randint(1, max_terms))), key=order.__getitem__)
        M = direct_sum_all(catalog(t) for t in tags)
        errs = validate(M)
        if errs:
            failures.append(f"trial {k} {'+'.join(tags)}: {errs[0]}")
            continue
        got = decompose(M)
        if got != tags:
            failures.append(f"trial {k} {'+'.join(tags)}: decomposed as {got}")
    return failures


# ---------------------------------------------------------------------------
# the Green ring


def monomial_window(level: str, bound: int = 4) -> List[Tuple[int, ...]]:
    """Basis monomials of ``level`` with every exponent in ``[-bound, bound]``."""
    lv = LEVELS[level]
    r = range(-bound, bound + 1)
    if level == "top":
        cands = itertools.product((0, 1), r, r, r, r)
    elif level == "mid":
        cands = itertools.product(r, r, r, (0, 1))
    else:
        cands = itertools.product(r, r)
    return [e for e in cands if lv.member(e)]


def _associativity_failures(level: str, monos: Sequence[Tuple[int, ...]]) -> int:
    """Count triples with ``(xy)z != x(yz)`` among ``monos``.

    Monomial products are sums of exponents kept when the sum is a basis
    monomial, so both sides are either zero or the same monomial; the check
    compares which side vanishes, vectorised over ``(y, z)``.
    """
    lv = LEVELS[level]
    X = np.array(monos, dtype=np.int64)
    lo = 3 * np.minimum(X.min(axis=0), 0)
    span = 3 * np.maximum(X.max(axis=0), 0) - lo + 1
    strides = np.cumprod(np.concatenate(([1], span[:-1])))
    # membership over the box holding every sum of at most three monomials
    box = np.zeros(int(np.prod(span)), dtype=bool)
    for idx in itertools.product(*(range(int(s)) for s in span)):
        if lv.member(tuple(int(i + l) for i, l in zip(idx, lo))):
            box[int(np.dot(idx, strides))] = True
    K = (X - lo) @ strides
    base = int(lo @ strides)
    pair = box[K[:, None] + K[None, :] + base]
    bad = 0
    for i in range(len(monos)):
        xy = box[K[i] + K + base]
        xyz = box[K[i] + K[:, None] + K[None, :] + 2 * base]
        bad += int(np.count_nonzero(xyz & (xy[:, None] ^ pair)))
    return bad


def _element(level: str, e: Tuple[int, ...]) -> GreenElement:
    return GreenElement(LEVELS[level], frozenset([e]))


def green_suite(bound: int = 4, degree_window: Tuple[int, int, int] = (6, 3, 3)) -> Dict[str, List[str]]:
    """Named ring identities on the exponent window; failures per identity."""
    out: Dict[str, List[str]] = {}
    out["gold relation"] = [] if not parse("as^2*ul") else ["as^2*ul != 0"]
    th = parse("th")
    out["theta squared"] = [] if not mul(th, th) else ["th*th != 0"]
    fails = []
    for i in range(bound + 1):
        for j in range(bound + 1):
            x = parse(f"ul/us^{i}")
            y = parse(f"as^2/al^{j}") if j else parse("as^2")
            if mul(x, y):
                fails.append(f"(ul/us^{i})(as^2/al^{j}) != 0")
    out["ul/us^i times as^2/al^j"] = fails

    top = monomial_window("top", bound)
    fails = []
    polys = [e for e in top if e[0] == 0 and min(e) >= 0]
    for f in top:
        for z in polys:
            q = tuple(a - b for a, b in zip(f, z))
            if LEVELS["top"].member(q) and mul(_element("top", z), _element("top", q)) != _element("top", f):
                fails.append(f"{LEVELS['top'].fmt(z)} * {LEVELS['top'].fmt(q)}")
    out["cancellation"] = fails

    fails = []
    mids = monomial_window("mid", bound)
    for a in top:
        A = _element("top", a)
        for b in mids:
            B = _element("mid", b)
            try:
                lhs = tr(mul(res(A), B))
                rhs = mul(A, tr(B))
            except OutsideClosure:
                continue
            if lhs != rhs:
                fails.append(f"{A} / {B}")
    out["frobenius"] = fails

    out["associativity"] = [
        f"{lv}: {n} triples" for lv in ("top", "mid", "bot") if (n := _associativity_failures(lv, monomial_window(lv, bound)))
    ]

    fails = []
    for star in window(*degree_window):
        got = tuple(len(basis_monos(l, star)) for l in ("top", "mid", "bot"))
        if got != expected_dims(star):
            fails.append(f"{star}: {got} vs {expected_dims(star)}")
    out["degree counts"] = fails
    return out


# ---------------------------------------------------------------------------
# transfers and restrictions


@dataclass(frozen=True)
class FormulaRow:
    name: str
    got: str
    want: str

    @property
    def ok(self) -> bool:
        return self.got == self.want


def trres_table(n_max: int = 3, m_max: int = 3) -> List[FormulaRow]:
    """The stated transfer and restriction formulas, evaluated symbolically."""
    rows = [
        FormulaRow("Tr(bus^-2) = th", str(tr(parse("bus^-2", "mid"))), str(parse("th"))),
    ]
    for n in range(n_max + 1):
        for m in range(1, m_max + 1):
            src = parse(f"bbs^{-n}*bbl^{-m}", "bot")
            rows.append(FormulaRow(f"Tr(Tr(1/(bbs^{n}*bbl^{m}))) = x[{n},{m}]", str(tr(tr(src))), str(parse(f"x[{n},{m}]"))))
    rows += [
        FormulaRow("Tr(v) = x[0,1]", str(tr(parse("v", "mid"))), str(parse("x[0,1]"))),
        FormulaRow("Tr(sq) = as*ul/us", str(tr(parse("sq", "mid"))), str(parse("as*ul/us"))),
        FormulaRow("Res(s) = v/sq", str(res(parse("s"))), str(parse("v/sq", "mid"))),
        FormulaRow("Res(as^2/al) = v*bus^2", str(res(parse("as^2/al"))), str(parse("v*bus^2", "mid"))),
    ]
    return rows
