"""The C4-equivariant classifying space of Sigma_2 with F2 coefficients.

``B_{C4} Sigma_2`` is ``RP^infinity`` with the C4 action induced by the
regular representation.  This module provides

* the filtration by representation-sphere cells and its E1 page,
* a cellular chain complex computed from scratch (a free resolution over the
  family of graph subgroups of ``C4 x Sigma_2``, divided by ``Sigma_2``),
* the direct cohomology Mackey functor in any RO(C4) degree,
* an independent dimension oracle read off from the E-infinity page,
* the presentation of the cohomology ring and its consistency checks.

Cohomological degrees are :class:`~c4mackey.degree.RODegree` values ``V``;
``k^V`` of a point is ``k_{-V}``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

from .cellchain import ChainComplex, PermModule, dualize, homology, smash, sphere_complex
from .degree import C2Degree, RODegree
from .gf2 import GF2Matrix, Quotient, _Echelon, _low, rank
from .green import LEVELS, GreenElement, Level, _res_top_mono, basis_monos, localize, parse, res
from .point_catalog import expected_point_c2
from .mackey import MackeyF2, decompose, validate

__all__ = [
    "CellSpec",
    "cell_spec",
    "row_rep",
    "build_complex",
    "resolution_cells",
    "guard_band",
    "cohomology_skeleton",
    "cohomology_at",
    "E1Entry",
    "e1_entry",
    "E1Table",
    "e1_page",
    "d1_matrices",
    "e2_dims",
    "E2Table",
    "d1_apply",
    "OracleUnstable",
    "d2_count",
    "e2_totals",
    "d2_total",
    "oracle_dims",
    "FIGURES",
    "figure_degree",
    "Anchor",
    "E1_ANCHORS",
    "check_anchor",
    "Term",
    "Relation",
    "BC4Presentation",
    "presentation",
    "printed_middle_relations",
    "localization_image",
    "e_rho_image",
    "h_bockstein",
    "bockstein_epsilons",
    "C2_DICTIONARY",
    "quotient_generator_checks",
    "c2_presentation_dims",
    "middle_oracle",
    "bottom_oracle",
    "Ingredient",
    "nonflat_ingredients",
    "mackey_spot_degrees",
    "verify_degree",
    "verify_window",
]

# ---------------------------------------------------------------------------
# the filtration by representation-sphere cells

RHO = RODegree(1, 1, 1)


@dataclass(frozen=True)
class CellSpec:
    """One filtration quotient ``(C4/H)_+ smash S^V``."""

    filtration: int
    orbit: str
    rep: RODegree

    def __str__(self) -> str:
        body = f"S^{{{self.rep}}}"
        return body if self.orbit == "C4" else f"Sigma^{{{self.rep}}} C4/{self.orbit}_+"


def row_rep(s: int) -> Tuple[str, RODegree]:
    """Orbit and representation of the filtration-``s`` cell."""
    j, r = divmod(s, 4)
    base = RHO * j
    return (
        ("C4", base),
        ("C4", base + RODegree(0, 1, 0)),
        ("C2", base + RODegree(0, 0, 1)),
        ("C2", base + RODegree(1, 0, 1)),
    )[r]


def cell_spec(F: int) -> List[CellSpec]:
    """The cells of filtrations ``0..F``, one per filtration."""
    if F < 0:
        raise ValueError("the maximal filtration must be nonnegative")
    return [CellSpec(s, *row_rep(s)) for s in range(F + 1)]


# ---------------------------------------------------------------------------
# a free resolution over the family of graph subgroups

# elements of C4 x Sigma_2 are pairs (i mod 4, t mod 2)
_G = tuple((i, t) for t in range(2) for i in range(4))


def _mul(x: Tuple[int, int], y: Tuple[int, int]) -> Tuple[int, int]:
    return ((x[0] + y[0]) % 4, (x[1] + y[1]) % 2)


def _generated(*gens: Tuple[int, int]) -> frozenset:
    out = {(0, 0)}
    frontier = list(out)
    while frontier:
        x = frontier.pop()
        for g in gens:
            y = _mul(x, g)
            if y not in out:
                out.add(y)
                frontier.append(y)
    return frozenset(out)


#: the graph subgroups, each listed before its subgroups
FAMILY: Dict[str, frozenset] = {
    "C4": _generated((1, 0)),
    "Delta": _generated((1, 1)),
    "Delta'": _generated((2, 1)),
    "C2": _generated((2, 0)),
    "e": _generated(),
}

#: image of each graph subgroup in C4, i.e. the orbit type of its cell in the quotient
QUOTIENT_ORBIT = {"C4": "C4", "Delta": "C4", "Delta'": "C2", "C2": "C2", "e": "e"}


@dataclass
class _Orbit:
    """One equivariant cell ``G/H``: its coset representatives and base boundary."""

    subgroup: str
    cosets: List[Tuple[int, int]]
    coset_of: Dict[Tuple[int, int], int]
    start: int


def _cosets(H: frozenset) -> Tuple[List[Tuple[int, int]], Dict[Tuple[int, int], int]]:
    reps: List[Tuple[int, int]] = []
    index: Dict[Tuple[int, int], int] = {}
    for x in _G:
        if x in index:
            continue
        for h in H:
            index[_mul(x, h)] = len(reps)
        reps.append(x)
    return reps, index


@dataclass
class _Degree:
    orbits: List[_Orbit] = field(default_factory=list)
    size: int = 0
    boundary: List[int] = field(default_factory=list)  # one column per basis cell
    owners: List[Tuple[_Orbit, int]] = field(default_factory=list)

    def add(self, name: str, base: int, lower: Optional["_Degree"]) -> None:
        reps, index = _cosets(FAMILY[name])
        orb = _Orbit(name, reps, index, self.size)
        self.orbits.append(orb)
        self.size += len(reps)
        self.owners.extend((orb, c) for c in range(len(reps)))
        for x in reps:
            self.boundary.append(lower.translate(base, x) if lower is not None else 0)

    def translate(self, chain: int, x: Tuple[int, int]) -> int:
        """Apply the group element ``x`` to a chain."""
        out = 0
        while chain:
            b = _low(chain)
            chain &= chain - 1
            orb, c = self.owners[b]
            out |= 1 << (orb.start + orb.coset_of[_mul(x, orb.cosets[c])])
        return out

    def fixed_cells(self, H: frozenset) -> List[int]:
        """Indices of the basis cells fixed by ``H`` (those ``xK`` with ``H`` inside ``K``)."""
        out = []
        for orb in self.orbits:
            if H <= FAMILY[orb.subgroup]:
                out.extend(range(orb.start, orb.start + len(orb.cosets)))
        return out

    def action(self, x: Tuple[int, int]) -> Tuple[int, ...]:
        return tuple(orb.start + orb.coset_of[_mul(x, orb.cosets[c])] for orb, c in self.owners)


def _restrict(vec: int, cells: Sequence[int]) -> int:
    return sum(1 << k for k, c in enumerate(cells) if vec >> c & 1)


def _expand(vec: int, cells: Sequence[int]) -> int:
    out = 0
    while vec:
        k = _low(vec)
        vec &= vec - 1
        out |= 1 << cells[k]
    return out


def _reduced_homology_reps(degs: List[_Degree], n: int, H: frozenset) -> List[int]:
    """Cycle representatives of a basis of the reduced ``H_n`` of the ``H``-fixed subcomplex."""
    if n == -1:
        return [] if degs[0].fixed_cells(H) else [0]
    cur = degs[n].fixed_cells(H)
    below = degs[n - 1].fixed_cells(H) if n > 0 else []
    cols = [_restrict(degs[n].boundary[c], below) if n > 0 else 1 for c in cur]
    ech = _Echelon()
    cycles = []
    for j, col in enumerate(cols):
        rest, tag = ech.reduce(col, 1 << j)
        if rest:
            ech.insert(rest, tag)
        else:
            cycles.append(tag)
    up = degs[n + 1].fixed_cells(H) if n + 1 < len(degs) else []
    bounds = [_restrict(degs[n + 1].boundary[c], cur) for c in up]
    q = Quotient(cycles, bounds)
    return [_expand(z, cur) for z in q.reps]


class _Resolution:
    """A model for the universal ``C4 x Sigma_2``-space of the graph family, built on demand.

    Degree by degree, and for each graph subgroup ``H`` from the largest down,
    cells ``G/H`` are attached one orbit at a time along representatives of the
    reduced homology of the ``H``-fixed subcomplex until it vanishes.  The cells
    of degree ``n`` never change once degree ``n + 1`` has been started, so
    every skeleton is a truncation of a larger one.
    """

    def __init__(self) -> None:
        self.degs: List[_Degree] = [_Degree()]
        self.done = -2  # highest n whose reduced homology has been killed

    def extend(self, top: int) -> None:
        while self.done < top - 1:
            n = self.done + 1
            while len(self.degs) < n + 2:
                self.degs.append(_Degree())
            for name, H in FAMILY.items():
                # one orbit at a time: the translates of a killed class die with it
                while True:
                    reps = _reduced_homology_reps(self.degs, n, H)
                    if not reps:
                        break
                    self.degs[n + 1].add(name, reps[0], self.degs[n] if n >= 0 else None)
            self.done = n


_RESOLUTION = _Resolution()


def _resolution(top: int) -> List[_Degree]:
    _RESOLUTION.extend(top)
    return _RESOLUTION.degs[: top + 1]


def resolution_cells(top: int) -> List[Dict[str, int]]:
    """Number of ``G/H`` cells per degree of the resolution, for inspection."""
    out = []
    for d in _resolution(top):
        counts: Dict[str, int] = {}
        for orb in d.orbits:
            counts[orb.subgroup] = counts.get(orb.subgroup, 0) + 1
        out.append(counts)
    return out


@lru_cache(maxsize=None)
def _quotient_degree(d: int) -> Tuple[PermModule, Tuple[int, ...], Tuple[int, ...]]:
    """Degree ``d`` of the quotient by ``Sigma_2``: module, boundary, class of each cell."""
    deg = _resolution(d)[d]
    act_g, act_t = deg.action((1, 0)), deg.action((0, 1))
    cls = [-1] * deg.size
    count = 0
    for i in range(deg.size):
        if cls[i] < 0:
            cls[i] = cls[act_t[i]] = count
            count += 1
    act = [0] * count
    for i in range(deg.size):
        act[cls[i]] = cls[act_g[i]]
    prev = _quotient_degree(d - 1)[2] if d > 0 else ()
    cols = [0] * count
    seen = [False] * count
    for i in range(deg.size):
        if seen[cls[i]]:
            continue
        seen[cls[i]] = True
        v, col = 0, deg.boundary[i]
        while col:
            b = _low(col)
            col &= col - 1
            v ^= 1 << prev[b]
        cols[cls[i]] = v
    return PermModule(count, tuple(act)), tuple(cols), tuple(cls)


@lru_cache(maxsize=16)
def build_complex(F: int) -> ChainComplex:
    """Cellular C4-chains of the ``F``-skeleton of ``B_{C4} Sigma_2``.

    The ``Sigma_2``-coinvariants of the resolution: every cell of
    ``(C4 x Sigma_2)/H`` becomes a cell of ``C4/pi(H)``.
    """
    if F < 0:
        raise ValueError("F must be nonnegative")
    modules: Dict[int, PermModule] = {}
    bounds: Dict[int, Tuple[int, ...]] = {}
    for d in range(F + 1):
        modules[d], bounds[d], _ = _quotient_degree(d)
    return ChainComplex(modules, bounds)


def guard_band(star: RODegree) -> int:
    """Smallest skeleton trusted for ``star``."""
    return 4 * (max(abs(star.a), abs(star.n), 2 * abs(star.m)) + 4)


@lru_cache(maxsize=8)
def _dual_complex(F: int) -> ChainComplex:
    return dualize(build_complex(F))


def cohomology_skeleton(star: RODegree, F: int) -> MackeyF2:
    """``k^star`` of the ``F``-skeleton, as a Mackey functor."""
    W = RODegree(0, star.n, star.m)
    d = -star.a
    C = smash(_dual_complex(F), sphere_complex(W), degrees=(d - 1, d + 1))
    return homology(C, d)


def cohomology_at(star: RODegree, F: Optional[int] = None) -> Tuple[MackeyF2, bool]:
    """``k^star(B_{C4} Sigma_{2+})`` from the ``F``-skeleton, with a stability flag.

    The flag is true when the ``F`` and ``F - 4`` skeleta give the same level
    dimensions.
    """
    if F is None:
        F = guard_band(star)
    M = cohomology_skeleton(star, F)
    if F < 4:
        return M, False
    P = cohomology_skeleton(star, F - 4)
    return M, M.dims == P.dims


# ---------------------------------------------------------------------------
# the E1 page and d1


@dataclass(frozen=True)
class E1Entry:
    """The E1 term at cohomological degree ``star`` and filtration ``s``.

    ``top``, ``mid`` and ``bot`` hold the point-ring coefficients of the
    filtration generator.  On the C4/C2 rows the top coefficients live in the
    middle level of a point and the lower levels are doubled (one copy at the
    generator ``x`` and one at ``gx``).
    """

    star: RODegree
    s: int
    point_degree: RODegree
    top: Tuple[Tuple[int, ...], ...]
    mid: Tuple[Tuple[int, ...], ...]
    bot: Tuple[Tuple[int, ...], ...]

    @property
    def doubled(self) -> bool:
        return self.s % 4 >= 2

    @property
    def top_level(self) -> str:
        return "mid" if self.doubled else "top"

    @property
    def dims(self) -> Tuple[int, int, int]:
        k = 2 if self.doubled else 1
        return (len(self.top), k * len(self.mid), k * len(self.bot))

    def labels(self) -> Tuple[str, str, str]:
        """Level labels ``top``, ``mid``, ``bot``; doubled levels carry a ``k^2`` marker."""
        out = [_label(LEVELS[self.top_level], self.top, False)]
        out.append(_label(LEVELS["mid"], self.mid, self.doubled))
        out.append(_label(LEVELS["bot"], self.bot, self.doubled))
        return tuple(out)  # type: ignore[return-value]

    def label(self) -> str:
        return "|".join(self.labels())


def _label(level: Level, monos: Sequence[Tuple[int, ...]], doubled: bool) -> str:
    if not monos:
        return ""
    body = ", ".join(level.fmt(e) for e in monos)
    return f"{body} k^2" if doubled else body


@lru_cache(maxsize=None)
def e1_entry(star: RODegree, s: int) -> E1Entry:
    """The E1 term ``k^star`` of the filtration-``s`` cell."""
    orbit, rep = row_rep(s)
    D = rep - star
    if orbit == "C4":
        top, mid, bot = (basis_monos(l, D) for l in ("top", "mid", "bot"))
    else:
        top, mid, bot = basis_monos("mid", D), basis_monos("mid", D), basis_monos("bot", D)
    return E1Entry(star, s, D, top, mid, bot)


class E1Table(Dict[Tuple[RODegree, int], E1Entry]):
    """E1 entries keyed by ``(star, s)``."""

    def get_entry(self, star: RODegree, s: int) -> E1Entry:
        key = (star, s)
        return self[key] if key in self else e1_entry(star, s)

    def render(self, base: RODegree = RODegree(), fmt: str = "text") -> str:
        """Three grids (one per level) with ``x`` the integer shift of ``base`` and ``y = s``."""
        xs = sorted({k[0].a - base.a for k in self if k[0] - RODegree(k[0].a - base.a) == base})
        ss = sorted({k[1] for k in self})
        blocks = []
        for li, name in enumerate(("top", "mid", "bot")):
            rows = []
            for s in reversed(ss):
                cells = []
                for x in xs:
                    e = self.get((base + RODegree(x), s))
                    cells.append(e.labels()[li] if e is not None else "")
                rows.append((s, cells))
            blocks.append(_render_grid(name, base, xs, rows, fmt))
        return "\n".join(blocks)


def _render_grid(name: str, base: RODegree, xs: List[int], rows, fmt: str) -> str:
    if fmt == "tex":
        out = [f"% {name} level, degrees {base} + x", "\\begin{tikzpicture}[scale=1.6]"]
        for s, cells in rows:
            for x, c in zip(xs, cells):
                if c:
                    tex = c.replace("k^2", "k^{2}").replace("*", " ")
                    out.append(f"  \\node at ({x},{s}) {{\\tiny ${tex}$}};")
        out.append("\\end{tikzpicture}")
        return "\n".join(out)
    width = max([len(c) for _, cells in rows for c in cells] + [3])
    out = [f"[{name}] degrees {base} + x"]
    out.append("s\\x ".rjust(5) + " ".join(str(x).center(width) for x in xs))
    for s, cells in rows:
        out.append(f"{s:>4} " + " ".join(c.center(width) if c else ".".center(width) for c in cells))
    return "\n".join(out)


def e1_page(window: Iterable[RODegree], F: int) -> E1Table:
    """E1 entries for every degree of ``window`` and filtration ``0..F``."""
    table = E1Table()
    for star in window:
        for s in range(F + 1):
            table[(star, s)] = e1_entry(star, s)
    return table


# the degree-(-1 + lambda - sigma) class v * ubar_sigma in the middle level of a point
_V_BUS = (1, 0, 0, 1)


def _mid_times(e: Tuple[int, ...], f: Tuple[int, ...]) -> Optional[Tuple[int, ...]]:
    c = tuple(x + y for x, y in zip(e, f))
    return c if LEVELS["mid"].member(c) else None


def _d1_level(src: E1Entry, tgt: E1Entry, level: int) -> GF2Matrix:
    """Matrix of d1 on one level, columns indexed by the source basis."""
    r = src.s % 4
    if level == 0:
        srcb, tgtb = src.top, tgt.top
    else:
        srcb = src.mid if level == 1 else src.bot
        tgtb = tgt.mid if level == 1 else tgt.bot
    ns = len(srcb) * (2 if src.doubled and level else 1)
    nt = len(tgtb) * (2 if tgt.doubled and level else 1)
    cols = [0] * ns
    index = {e: i for i, e in enumerate(tgtb)}
    if r == 1 and level < 2:
        # the class e^{j rho + sigma} goes to v ubar_sigma e^{j rho + lambda} (x + gx)
        for i, e in enumerate(srcb):
            base = _res_top_mono(e) if level == 0 else e
            img = _mid_times(base, _V_BUS) if base is not None else None
            if img is None:
                continue
            k = index[img]
            cols[i] = 1 << k if level == 0 else (1 << k) | (1 << (k + len(tgtb)))
    elif r == 2 and level > 0:
        # x and gx both go to x + gx
        half = len(srcb)
        for i, e in enumerate(srcb):
            k = index[e]
            v = (1 << k) | (1 << (k + len(tgtb)))
            cols[i] = cols[i + half] = v
    return GF2Matrix.from_columns(cols, nt) if ns else GF2Matrix.zeros(nt, 0)


def d1_matrices(star: RODegree, s: int) -> Tuple[GF2Matrix, GF2Matrix, GF2Matrix]:
    """d1 out of ``(star, s)`` into ``(star + 1, s + 1)``, per level."""
    src, tgt = e1_entry(star, s), e1_entry(star + RODegree(1), s + 1)
    return tuple(_d1_level(src, tgt, l) for l in range(3))  # type: ignore[return-value]


@lru_cache(maxsize=None)
def e2_dims(star: RODegree, s: int) -> Tuple[int, int, int]:
    """Levelwise dimension of E2 at ``(star, s)``."""
    dims = e1_entry(star, s).dims
    out = d1_matrices(star, s)
    inc = d1_matrices(star - RODegree(1), s - 1) if s > 0 else None
    res = []
    for l in range(3):
        d = dims[l] - rank(out[l])
        if inc is not None:
            d -= rank(inc[l])
        res.append(d)
    return tuple(res)  # type: ignore[return-value]


class E2Table(Dict[Tuple[RODegree, int], Tuple[int, int, int]]):
    """E2 dimensions keyed by ``(star, s)``."""

    def totals(self, star: RODegree) -> Tuple[int, int, int]:
        out = [0, 0, 0]
        for (d, _), dims in self.items():
            if d == star:
                for l in range(3):
                    out[l] += dims[l]
        return tuple(out)  # type: ignore[return-value]


def d1_apply(table: E1Table) -> E2Table:
    """E2 = ker d1 / im d1 at every entry of ``table``."""
    return E2Table({key: e2_dims(*key) for key in table})


# ---------------------------------------------------------------------------
# the E-infinity dimension oracle


class OracleUnstable(RuntimeError):
    """Raised when the E-infinity count depends on the filtration cutoff."""


def d2_count(star: RODegree, s: int) -> int:
    """Top-level classes at ``(star, s)`` killed by the d2 from row 4j+1 to row 4j+3.

    Sources are ``a_sigma u_sigma^i e^{j rho + sigma}``; targets are
    ``v ubar_sigma^{i+2} e^{j rho + lambda + 1}``.
    """
    e = e1_entry(star, s)
    if s % 4 == 1:
        return sum(1 for m in e.top if m[0] == 0 and m[1] == 1 and m[3] == 0 and m[4] == 0 and m[2] >= 0)
    if s % 4 == 3:
        return sum(1 for m in e.top if m[1:] == (0, 0, 1) and m[0] >= 2)
    return 0


def _einf_total(star: RODegree, S: int) -> Tuple[int, int, int]:
    t = m = b = 0
    for s in range(S):
        dt, dm, db = e2_dims(star, s)
        t += dt - d2_count(star, s)
        m += dm
        b += db
    return (t, m, b)


def e2_totals(star: RODegree, S: Optional[int] = None) -> Tuple[int, int, int]:
    """E2 dimensions summed over filtrations ``0..S-1``."""
    S = guard_band(star) if S is None else S
    out = [0, 0, 0]
    for s in range(S):
        for l, d in enumerate(e2_dims(star, s)):
            out[l] += d
    return tuple(out)  # type: ignore[return-value]


def d2_total(star: RODegree, S: Optional[int] = None) -> int:
    S = guard_band(star) if S is None else S
    return sum(d2_count(star, s) for s in range(S))


def oracle_dims(star: RODegree, cutoff: Optional[int] = None) -> Tuple[int, int, int]:
    """Levelwise dimensions of ``k^star`` read off from the E-infinity page.

    Counts filtrations below ``cutoff`` (a multiple of 4, the guard band by
    default) and raises :class:`OracleUnstable` if four more rows change it.
    """
    S = guard_band(star) if cutoff is None else cutoff
    if S % 4:
        raise ValueError("the cutoff must be a multiple of 4")
    here, more = _einf_total(star, S), _einf_total(star, S + 4)
    if here != more:
        raise OracleUnstable(f"unstable at cutoff {S} for degree {star}: {here} vs {more}")
    return here


# ---------------------------------------------------------------------------
# printed E1 entries
#
# Figures are indexed by a base degree; the point at ``(x, y)`` is the degree
# ``base + (x - shift)`` at filtration ``y``.

FIGURES: Dict[str, Tuple[RODegree, int]] = {
    "integer": (RODegree(), 0),
    "sigma": (RODegree(0, 1, 0), 1),
    "lambda": (RODegree(0, 0, 1), 2),
    "rho": (RHO, 4),
    "2sigma": (RODegree(0, 2, 0), 2),
}


def figure_degree(figure: str, x: int) -> RODegree:
    base, shift = FIGURES[figure]
    return base + RODegree(x - shift)


@dataclass(frozen=True)
class Anchor:
    """A printed E1 entry: figure, coordinates, level and generator (``""`` for empty)."""

    figure: str
    x: int
    y: int
    level: str
    expected: str
    doubled: bool = False


E1_ANCHORS: Tuple[Anchor, ...] = (
    Anchor("integer", 5, 5, "top", "x[0,1]/us^2"),
    Anchor("integer", 5, 5, "mid", "v/bus^2"),
    Anchor("integer", 5, 5, "bot", "bbs^-2*bbl^-1"),
    Anchor("integer", 2, 2, "top", "v"),
    Anchor("integer", 2, 2, "mid", "v", doubled=True),
    Anchor("integer", 2, 2, "bot", "bbl^-1", doubled=True),
    Anchor("integer", 3, 4, "top", "x[0,1]/as"),
    Anchor("integer", 3, 5, "top", "th/al"),
    Anchor("integer", 4, 4, "top", "x[0,1]/us"),
    Anchor("integer", 1, 1, "top", ""),
    Anchor("integer", 1, 1, "mid", "bus^-1"),
    Anchor("integer", 1, 1, "bot", "bbs^-1"),
    Anchor("integer", 6, 6, "top", "v/(bul*bus)"),
    Anchor("integer", 4, 6, "top", "v/(bal*bus)"),
    Anchor("integer", 5, 6, "top", "v/(sq*bus)"),
    Anchor("sigma", 4, 4, "top", "x[0,1]"),
    Anchor("lambda", 5, 5, "top", "th"),
    Anchor("lambda", 1, 0, "top", "as*ul/us"),
    Anchor("rho", 0, 0, "top", "us*ul"),
    Anchor("rho", 6, 6, "top", "v"),
    Anchor("2sigma", 2, 0, "top", "as^2"),
)


def check_anchor(anchor: Anchor) -> Tuple[bool, str]:
    """Compare one printed entry with :func:`e1_entry`; returns ``(ok, computed label)``."""
    e = e1_entry(figure_degree(anchor.figure, anchor.x), anchor.y)
    li = ("top", "mid", "bot").index(anchor.level)
    monos = (e.top, e.mid, e.bot)[li]
    level = e.top_level if li == 0 else anchor.level
    got = _label(LEVELS[level], monos, li > 0 and e.doubled)
    if not anchor.expected:
        return not monos, got
    want = parse(anchor.expected, level)
    ok = frozenset(monos) == want.monos and (li == 0 or e.doubled == anchor.doubled)
    return ok, got


# ---------------------------------------------------------------------------
# the ring presentation

SIGMA = RODegree(0, 1, 0)
LAMBDA = RODegree(0, 0, 1)
ONE = RODegree(1, 0, 0)
_U_SIGMA_INV = ONE - SIGMA  # cohomological degree of 1/u_sigma


def _gen_degree(name: str, i: int) -> RODegree:
    """Cohomological degree of a generator; ``i`` is the power of ``u_sigma`` divided out."""
    base = {
        "e^a": SIGMA + LAMBDA,
        "e^u": SIGMA + LAMBDA - 2 * ONE,
        "e^l": LAMBDA,
        "e^r": RHO,
        # middle level
        "E^a": SIGMA + LAMBDA,
        "E^u": SIGMA + LAMBDA - 2 * ONE,
        "E^l": LAMBDA,
        "E^r": RHO,
        "E^au": SIGMA + LAMBDA - ONE,
        "E^q": LAMBDA + ONE,
        "E'": LAMBDA + ONE,
        "E~a": SIGMA + LAMBDA,
        # bottom level
        "B^u": SIGMA + LAMBDA - 2 * ONE,
    }[name]
    return base + _U_SIGMA_INV * i


Gen = Tuple[str, int]


@dataclass(frozen=True)
class Term:
    """``coeff * gens``: a formal point-ring monomial of ``level`` times generators.

    A coefficient outside the ring makes the term zero; its formal degree is
    still well defined and is included in the homogeneity check.
    """

    level: str
    coeff: Tuple[int, ...]
    gens: Tuple[Gen, ...] = ()

    @property
    def vanishes(self) -> bool:
        return not LEVELS[self.level].member(self.coeff)

    def degree(self) -> RODegree:
        d = -LEVELS[self.level].degree(self.coeff)
        for g in self.gens:
            d = d + _gen_degree(*g)
        return d

    def __str__(self) -> str:
        c = LEVELS[self.level].fmt(self.coeff) if not self.vanishes else f"[{self.coeff}]"
        gens = "*".join(name if i == 0 else f"{name}/us^{i}" for name, i in self.gens)
        if not gens:
            return c
        return gens if c == "1" else f"({c})*{gens}"


@dataclass(frozen=True)
class Relation:
    """``sum(lhs) = sum(rhs)`` at indices ``i, j``."""

    name: str
    kind: str
    lhs: Tuple[Term, ...]
    rhs: Tuple[Term, ...]
    i: int = 0
    j: int = 0

    def degrees(self) -> List[RODegree]:
        return [t.degree() for t in self.lhs + self.rhs]

    def is_homogeneous(self) -> bool:
        return len(set(self.degrees())) <= 1

    def __str__(self) -> str:
        side = lambda ts: " + ".join(str(t) for t in ts) if ts else "0"
        return f"{self.name}[i={self.i},j={self.j}]: {side(self.lhs)} = {side(self.rhs)}"


def _T(coeff: Tuple[int, ...], *gens: Gen) -> Term:
    return Term("top", coeff, tuple(gens))


def _top_relations(i: int, j: int) -> List[Relation]:
    EA, ER = ("e^a", 0), ("e^r", 0)
    eu = lambda k: ("e^u", k)
    el = lambda k: ("e^l", k)
    mod = "module"
    mult = "multiplicative"
    return [
        Relation("a_s^2 kills e^u", mod, (_T((0, 2, 0, -j, 0), eu(i)),), (), i, j),
        Relation(
            "a_s^2 on e^l",
            mod,
            (_T((1, 1, 2 - i, -j, 0), EA), _T((1, 1, 2 - i, 1 - j, -1), eu(0))),
            (_T((0, 2, 0, -j, 0), el(i)),),
            i,
            j,
        ),
        Relation("e^u e^u", mult, (_T((0, 0, 0, 0, 0), eu(i), eu(j)),), (_T((0, 0, 2 - i - j, 0, 1), el(0)),), i, j),
        Relation(
            "e^l e^u",
            mult,
            (_T((0, 0, 0, 0, 0), el(i), eu(j)),),
            (_T((0, 0, -i - j, 0, 1), EA), _T((0, 0, 0, 1, 0), eu(i + j))),
            i,
            j,
        ),
        Relation(
            "e^a e^u",
            mult,
            (_T((0, 0, 0, 0, 0), EA, eu(i)),),
            (_T((0, 0, 1 - i, 0, 1), ER), _T((0, 1, -i, 0, 1), EA)),
            i,
            0,
        ),
        Relation(
            "e^l e^l",
            mult,
            (_T((0, 0, 0, 0, 0), el(i), el(j)),),
            (
                _T((0, 0, -i - j - 1, 0, 1), ER),
                _T((0, 1, -i - j - 2, 0, 1), EA),
                _T((0, 0, 0, 1, 0), el(i + j)),
            ),
            i,
            j,
        ),
        Relation(
            "e^a e^l",
            mult,
            (_T((0, 0, 0, 0, 0), EA, el(i)),),
            (_T((0, 0, 0, 0, 0), eu(i + 1), ER), _T((0, 1, -i - 1, 0, 1), ER)),
            i,
            0,
        ),
        Relation(
            "e^a e^a",
            mult,
            (_T((0, 0, 0, 0, 0), EA, EA),),
            (
                _T((0, 0, 1, 0, 0), el(0), ER),
                _T((0, 1, 0, 0, 0), eu(1), ER),
                _T((0, 0, 1, 1, 0), ER),
                _T((0, 1, 0, 1, 0), EA),
            ),
            0,
            0,
        ),
    ]


_BAR = {"e^a": "E^a", "e^u": "E^u", "e^l": "E^l", "e^r": "E^r"}


def _restrict_term(t: Term) -> Optional[Term]:
    """Image of a top-level term under restriction to the middle level, or None if it vanishes."""
    if t.vanishes:
        return None
    c = _res_top_mono(t.coeff)
    if c is None:
        return None
    shift = sum(i for _, i in t.gens)
    c = (c[0] - shift,) + tuple(c[1:])
    return Term("mid", c, tuple((_BAR[n], 0) for n, _ in t.gens))


def _mid_relations(i: int, j: int) -> List[Relation]:
    out = []
    for r in _top_relations(i, j):
        lhs = tuple(x for x in map(_restrict_term, r.lhs) if x is not None)
        rhs = tuple(x for x in map(_restrict_term, r.rhs) if x is not None)
        out.append(Relation("res " + r.name, "middle", lhs, rhs, r.i, r.j))
    return out


def _M(coeff: Tuple[int, ...], *gens: Gen) -> Term:
    return Term("mid", coeff, tuple(gens))


def printed_middle_relations(i: int) -> List[Relation]:
    """The simplified middle-level relations in their displayed form.

    The module relation on ``E^l`` holds only for ``i = 0``; for ``i >= 1`` the
    restriction of the top relation gives ``(v/bal^i) E^l = (v/(ubar_s sq bal^(i-1))) E^u``
    instead (see :func:`_mid_relations`).
    """
    E = lambda n: (n, 0)
    rels = [
        Relation("v/bal^i kills E^u", "printed", (_M((0, -2 * i, 0, 1), E("E^u")),), (), i),
        Relation("E^u E^u", "printed", (_M((0, 0, 0, 0), E("E^u"), E("E^u")),), (_M((2, 0, 2, 0), E("E^l")),)),
        Relation(
            "E^l E^u",
            "printed",
            (_M((0, 0, 0, 0), E("E^l"), E("E^u")),),
            (_M((0, 0, 2, 0), E("E^a")), _M((0, 2, 0, 0), E("E^u"))),
        ),
        Relation("E^a E^u", "printed", (_M((0, 0, 0, 0), E("E^a"), E("E^u")),), (_M((1, 0, 2, 0), E("E^r")),)),
        Relation(
            "E^l E^l",
            "printed",
            (_M((0, 0, 0, 0), E("E^l"), E("E^l")),),
            (_M((-1, 0, 2, 0), E("E^r")), _M((0, 2, 0, 0), E("E^l"))),
        ),
        Relation(
            "E^a E^l", "printed", (_M((0, 0, 0, 0), E("E^a"), E("E^l")),), (_M((-1, 0, 0, 0), E("E^u"), E("E^r")),)
        ),
        Relation(
            "E^a E^a",
            "printed",
            (_M((0, 0, 0, 0), E("E^a"), E("E^a")),),
            (_M((1, 0, 0, 0), E("E^l"), E("E^r")), _M((1, 2, 0, 0), E("E^r"))),
        ),
    ]
    if i == 0:
        rels.insert(1, Relation("v kills E^l", "printed", (_M((0, 0, 0, 1), E("E^l")),), ()))
    return rels


def _mackey_relations(i: int) -> List[Relation]:
    """Transfers into the top level and the exotic restriction, as middle-level identities.

    Each transfer is stored as the pair (middle source, top target); the
    homogeneity check compares their degrees.
    """
    return [
        Relation(
            "Tr(E^au/ubar_s^i) = a_s e^u/u_s^(i+1)",
            "transfer",
            (_M((-i, 0, 0, 0), ("E^au", 0)),),
            (_T((0, 1, 0, 0, 0), ("e^u", i + 1)),),
            i,
        ),
        Relation(
            "Tr(E^q/ubar_s^i) = a_s e^l/u_s^(i+1)",
            "transfer",
            (_M((-i, 0, 0, 0), ("E^q", 0)),),
            (_T((0, 1, 0, 0, 0), ("e^l", i + 1)),),
            i,
        ),
        Relation(
            "Res(e^a) = E~a + ubar_s E'",
            "exotic",
            (_M((0, 0, 0, 0), ("E^a", 0)),),
            (_M((0, 0, 0, 0), ("E~a", 0)), _M((1, 0, 0, 0), ("E'", 0))),
        ),
    ]


def _bottom_relations() -> List[Relation]:
    """Restrictions of the top generators to the bottom level, in terms of ``B^u = Res(e^u)``."""
    B = lambda c, k: Term("bot", c, (("B^u", 0),) * k)
    return [
        Relation("Res e^u", "bottom", (B((0, 0), 1),), (B((0, 0), 1),)),
        Relation("Res e^l", "bottom", (Term("bot", (0, 0), (("e^l", 0),)),), (B((-2, -1), 2),)),
        Relation("Res e^a", "bottom", (Term("bot", (0, 0), (("e^a", 0),)),), (B((-2, -2), 3),)),
        Relation("Res e^r", "bottom", (Term("bot", (0, 0), (("e^r", 0),)),), (B((-3, -3), 4),)),
    ]


# ---- the homotopy fixed point ring k[a_s, u_s^+-, a_l, u_l^+-, w]/a_s^2
#
# monomials are (as, us, al, ul, w) with as in {0, 1} and al, w >= 0

HMono = Tuple[int, int, int, int, int]


def _h_ok(e: HMono) -> bool:
    return e[0] in (0, 1) and e[2] >= 0 and e[4] >= 0


def _h(*monos: HMono) -> FrozenSet[HMono]:
    return frozenset(m for m in monos if _h_ok(m))


def _h_mul(x: FrozenSet[HMono], y: FrozenSet[HMono]) -> FrozenSet[HMono]:
    acc: set = set()
    for a in x:
        for b in y:
            c = tuple(p + q for p, q in zip(a, b))
            if _h_ok(c):
                acc ^= {c}
    return frozenset(acc)


def _h_add(*xs: FrozenSet[HMono]) -> FrozenSet[HMono]:
    acc: set = set()
    for x in xs:
        acc ^= set(x)
    return frozenset(acc)


def e_rho_image(eps4: int = 1, eps5: int = 1) -> FrozenSet[HMono]:
    """``u_s u_l w^4 + eps4 a_s u_l w^3 + u_s a_l w^2 + eps5 a_s a_l w``."""
    terms = [(0, 1, 0, 1, 4), (0, 1, 1, 0, 2)]
    if eps4:
        terms.append((1, 0, 0, 1, 3))
    if eps5:
        terms.append((1, 0, 1, 0, 1))
    return _h(*terms)


def localization_image(gen: Gen) -> FrozenSet[HMono]:
    """Image of a top generator in the homotopy fixed point ring."""
    name, i = gen
    if name == "e^u":
        return _h((0, 1 - i, 0, 1, 1))
    if name == "e^l":
        return _h((0, -i, 0, 1, 2))
    if name == "e^a":
        return _h((0, 1, 0, 1, 3), (0, 1, 1, 0, 1))
    if name == "e^r":
        return e_rho_image()
    raise KeyError(name)


def _h_term(t: Term) -> FrozenSet[HMono]:
    if t.vanishes:
        return frozenset()
    c = localize(GreenElement(LEVELS["top"], frozenset([t.coeff])), "h")
    out = frozenset((a, b, c_, d, 0) for a, b, c_, d in c.monos)
    for g in t.gens:
        out = _h_mul(out, localization_image(g))
    return out


def _h_side(ts: Sequence[Term]) -> FrozenSet[HMono]:
    return _h_add(*(_h_term(t) for t in ts))


def h_bockstein(x: FrozenSet[HMono]) -> FrozenSet[HMono]:
    """The derivation with ``beta(u_s) = a_s``, ``beta(w) = w^2`` and zero on ``a_s, a_l, u_l``."""
    acc: set = set()
    for a_s, u_s, a_l, u_l, w in x:
        if u_s % 2:
            acc ^= set(_h((a_s + 1, u_s - 1, a_l, u_l, w)))
        if w % 2:
            acc ^= set(_h((a_s, u_s, a_l, u_l, w + 1)))
    return frozenset(acc)


def bockstein_epsilons() -> List[Tuple[int, int]]:
    """All ``(eps4, eps5)`` for which the ``e^r`` image is a Bockstein cycle."""
    return [(e4, e5) for e4 in (0, 1) for e5 in (0, 1) if not h_bockstein(e_rho_image(e4, e5))]


# ---- the C2 model k^*_{C2}[ubar_s^+-][c, b]/(c^2 = a c + u b) of the middle level
#
# monomials are (p, x, y, t, i, j) for ubar_s^p a^x u^y theta^t c^i b^j with i in {0, 1}

CMono = Tuple[int, int, int, int, int, int]


def _c2_coeff_ok(x: int, y: int, t: int) -> bool:
    if t == 0:
        return x >= 0 and y >= 0
    return t == 1 and x <= 0 and y <= 0


def _c_reduce(e: Tuple[int, ...]) -> FrozenSet[CMono]:
    p, x, y, t, i, j = e
    if not _c2_coeff_ok(x, y, t):
        return frozenset()
    if i <= 1:
        return frozenset([(p, x, y, t, i, j)])
    # c^2 = a c + u b
    return frozenset(
        set(_c_reduce((p, x + 1, y, t, i - 1, j))) ^ set(_c_reduce((p, x, y + 1, t, i - 2, j + 1)))
    )


def _c_mul(X: FrozenSet[CMono], Y: FrozenSet[CMono]) -> FrozenSet[CMono]:
    acc: set = set()
    for a in X:
        for b in Y:
            acc ^= set(_c_reduce(tuple(p + q for p, q in zip(a, b))))
    return frozenset(acc)


def _c(*monos: CMono) -> FrozenSet[CMono]:
    acc: set = set()
    for m in monos:
        acc ^= set(_c_reduce(m))
    return frozenset(acc)


#: images of the middle generators; ``ab`` and ``cb`` are the classes of ``a_{sigma_2} b`` and ``c b``
C2_DICTIONARY: Dict[str, FrozenSet[CMono]] = {
    "E^a": _c((1, 1, 0, 0, 0, 1), (1, 0, 0, 0, 1, 1)),
    "E^u": _c((1, 0, 1, 0, 1, 0)),
    "E^l": _c((0, 0, 0, 0, 2, 0)),
    "E^r": _c((1, 0, 0, 0, 0, 2)),
    "E^au": _c((1, 1, 0, 0, 1, 0)),
    "E^q": _c((0, 1, 0, 0, 0, 1)),
    "E'": _c((0, 0, 0, 0, 1, 1)),
    "E~a": _c((1, 1, 0, 0, 0, 1)),
}


def _mid_coeff(m: Tuple[int, ...]) -> FrozenSet[CMono]:
    p, x, y, t = m
    return _c((p, x, y, t, 0, 0))


def _c_term(t: Term) -> FrozenSet[CMono]:
    if t.vanishes:
        return frozenset()
    out = _mid_coeff(t.coeff)
    for g, _ in t.gens:
        out = _c_mul(out, C2_DICTIONARY[g])
    return out


def _c_side(ts: Sequence[Term]) -> FrozenSet[CMono]:
    acc: set = set()
    for t in ts:
        acc ^= set(_c_term(t))
    return frozenset(acc)


def quotient_generator_checks() -> Dict[str, bool]:
    """The two quotient generators are honest quotients in the C2 model.

    ``sqrt(abar ubar) E^u = ubar_l E^au`` and
    ``abar ubar_s^-1 E^u + sqrt(abar ubar) E^l = ubar_l E^q``; also
    ``E' = E^q + ubar_s^-1 E^a`` and the exotic restriction ``E^a = E~a + ubar_s E'``.
    """
    sq, bul, bal = _mid_coeff((0, 1, 1, 0)), _mid_coeff((0, 0, 2, 0)), _mid_coeff((0, 2, 0, 0))
    D = C2_DICTIONARY
    first = _c_mul(sq, D["E^u"]) == _c_mul(bul, D["E^au"])
    lhs = set(_c_mul(_c_mul(bal, _mid_coeff((-1, 0, 0, 0))), D["E^u"])) ^ set(_c_mul(sq, D["E^l"]))
    second = lhs == set(_c_mul(bul, D["E^q"]))
    # E' differs from the second quotient by ubar_s^-1 E^a
    shifted = set(D["E'"]) == set(D["E^q"]) ^ set(_c_mul(_mid_coeff((-1, 0, 0, 0)), D["E^a"]))
    exotic = set(D["E^a"]) == set(D["E~a"]) ^ set(_c_mul(_mid_coeff((1, 0, 0, 0)), D["E'"]))
    return {"E^au": first, "E^q": second, "E'": shifted, "exotic": exotic}


# ---- the bottom level k[ubarbar_s^+-, u^+-][w], with ubarbar_l = u^2


def _bottom_images() -> Dict[str, Tuple[int, int, int]]:
    """Images of the restricted generators: ``(p, y, w)`` for ``ubarbar_s^p u^y w^w``."""
    # c -> u w, b -> u w^2, a and theta -> 0
    return {"B^u": (1, 2, 1), "e^l": (0, 2, 2), "e^a": (1, 2, 3), "e^r": (1, 2, 4)}


def _bottom_side(ts: Sequence[Term]) -> Tuple[int, int, int]:
    (t,) = ts
    img = _bottom_images()
    p, y, w = t.coeff[0], 2 * t.coeff[1], 0
    for g, _ in t.gens:
        dp, dy, dw = img[g]
        p, y, w = p + dp, y + dy, w + dw
    return (p, y, w)


@dataclass(frozen=True)
class BC4Presentation:
    """Generators, relations and Mackey data of the cohomology ring, with their checks."""

    top_generators: Tuple[str, ...] = ("e^a", "e^u/u_s^i", "e^l/u_s^i", "e^r")
    middle_generators: Tuple[str, ...] = ("E^a", "E^u", "E^l", "E^r", "E^au", "E^q")
    bottom_generators: Tuple[str, ...] = ("B^u",)
    localization: Tuple[Tuple[str, str], ...] = (
        ("e^u", "u_s u_l w"),
        ("e^l", "u_l w^2"),
        ("e^a", "u_s u_l w^3 + u_s a_l w"),
        ("e^r", "u_s u_l w^4 + a_s u_l w^3 + u_s a_l w^2 + a_s a_l w"),
    )

    @staticmethod
    def generator_degree(name: str, i: int = 0) -> RODegree:
        return _gen_degree(name, i)

    def relations(self, bound: int = 4) -> List[Relation]:
        """All relations with indices ``0 <= i, j <= bound``."""
        out: List[Relation] = []
        seen = set()
        for i in range(bound + 1):
            for j in range(bound + 1):
                extra = printed_middle_relations(i) if j == 0 else []
                for r in _top_relations(i, j) + _mid_relations(i, j) + extra:
                    key = (r.name, r.i, r.j)
                    if key not in seen:
                        seen.add(key)
                        out.append(r)
            out.extend(_mackey_relations(i)[:2])
        out.append(_mackey_relations(0)[2])
        out.extend(_bottom_relations())
        return out

    def find(self, name: str, i: int = 0, j: int = 0) -> Relation:
        for r in self.relations(max(i, j, 1)):
            if r.name == name and r.i == i and r.j == j:
                return r
        raise KeyError(name)

    def homogeneity_failures(self, bound: int = 4) -> List[Relation]:
        return [r for r in self.relations(bound) if not r.is_homogeneous()]

    def localization_failures(self, bound: int = 4) -> List[Relation]:
        """Top relations whose two sides have different images in the homotopy fixed points."""
        return [
            r
            for r in self.relations(bound)
            if r.kind in ("module", "multiplicative") and _h_side(r.lhs) != _h_side(r.rhs)
        ]

    def middle_failures(self, bound: int = 4) -> List[Relation]:
        """Restricted relations that fail in the C2 model of the middle level."""
        rels = [r for r in self.relations(bound) if r.kind in ("middle", "printed", "exotic")]
        return [r for r in rels if _c_side(r.lhs) != _c_side(r.rhs)]

    def bottom_failures(self) -> List[Relation]:
        return [r for r in _bottom_relations() if _bottom_side(r.lhs) != _bottom_side(r.rhs)]

    def bockstein_epsilons(self) -> List[Tuple[int, int]]:
        return bockstein_epsilons()

    def report(self, bound: int = 4) -> Dict[str, object]:
        q = quotient_generator_checks()
        eps = self.bockstein_epsilons()
        beta_eu = h_bockstein(localization_image(("e^u", 1))) == localization_image(("e^l", 0))
        out = {
            "relations": len(self.relations(bound)),
            "inhomogeneous": [str(r) for r in self.homogeneity_failures(bound)],
            "localization_failures": [str(r) for r in self.localization_failures(bound)],
            "middle_failures": [str(r) for r in self.middle_failures(bound)],
            "bottom_failures": [str(r) for r in self.bottom_failures()],
            "quotient_generators": q,
            "bockstein_epsilons": eps,
            "bockstein_e^u/u_s": beta_eu,
        }
        out["ok"] = (
            not out["inhomogeneous"]
            and not out["localization_failures"]
            and not out["middle_failures"]
            and not out["bottom_failures"]
            and all(q.values())
            and eps == [(1, 1)]
            and beta_eu
        )
        return out


def presentation() -> BC4Presentation:
    return BC4Presentation()


# ---------------------------------------------------------------------------
# the C2 model as a dimension oracle for the middle level


def c2_presentation_dims(star2) -> int:
    """Dimension of the C2 model ``k^*_{C2}{b^j, c b^j}`` in cohomological degree ``star2``.

    ``c`` has degree ``sigma_2`` and ``b`` has degree ``rho_2 = 1 + sigma_2``.
    """
    a, s = (star2.a, star2.s) if isinstance(star2, C2Degree) else star2
    total = 0
    for j in range(max(abs(a), abs(s)) + 3):
        for shift in (0, 1):
            # k^{V}_{C2} of a point is k_{-V}
            total += expected_point_c2((-(a - j), -(s - j - shift)))[0]
    return total


def middle_oracle(star: RODegree) -> int:
    """Middle-level dimension through ``a + n sigma + m lambda -> (a + n) + 2m sigma_2``."""
    return c2_presentation_dims(star.to_c2())


def bottom_oracle(star: RODegree) -> int:
    """``H^{|star|}(RP^infinity)``."""
    return 1 if star.dim >= 0 else 0


# ---------------------------------------------------------------------------
# ingredients of the non-flatness argument


@dataclass(frozen=True)
class Ingredient:
    name: str
    ok: bool
    detail: str


def nonflat_ingredients(window: int = 6) -> List[Ingredient]:
    """The three computational facts behind the non-flatness of the middle level.

    (a) ``Res(a_s^2/a_l) = v ubar_s^2``;
    (b) ``v`` annihilates ``a b``, ``u b``, ``a c`` and ``u c`` in the C2 model;
    (c) the only monomials ``r`` of the middle point ring (exponents bounded by
        ``window``) with ``r m = c b`` for a module monomial ``m`` are powers of
        ``ubar_s``.
    """
    out = []
    got = res(parse("as^2/al"))
    want = parse("v*bus^2", "mid")
    out.append(Ingredient("res(as^2/al) = v*bus^2", got.monos == want.monos, str(got)))

    v = _c((0, 0, 0, 1, 0, 0))
    products = {
        "ab": _c((0, 1, 0, 0, 0, 1)),
        "ub": _c((0, 0, 1, 0, 0, 1)),
        "ac": _c((0, 1, 0, 0, 1, 0)),
        "uc": _c((0, 0, 1, 0, 1, 0)),
    }
    killed = {k: not _c_mul(v, x) for k, x in products.items()}
    survives = bool(_c_mul(v, _c((0, 0, 0, 0, 1, 1))))
    out.append(
        Ingredient(
            "v kills ab, ub, ac, uc",
            all(killed.values()) and survives,
            ", ".join(f"v*{k}={'0' if z else 'nonzero'}" for k, z in killed.items()) + f"; v*cb {'nonzero' if survives else '0'}",
        )
    )

    target = _c((0, 0, 0, 0, 1, 1))
    rng = range(-window, window + 1)
    solutions = []
    coeffs = [(p, x, y, t) for p in rng for x in rng for y in rng for t in (0, 1) if _c2_coeff_ok(x, y, t)]
    module = [
        (p, x, y, t, i, j) for (p, x, y, t) in coeffs for i in (0, 1) for j in range(window + 1)
    ]
    by_cb: Dict[Tuple[int, int], List[Tuple[int, ...]]] = {}
    for m in module:
        by_cb.setdefault((m[4], m[5]), []).append(m)
    # r carries no c or b, so r m has the c and b exponents of m
    candidates = {m[:4]: m for m in by_cb.get((1, 1), [])}
    for r in coeffs:
        need = tuple(-e for e in r[:3]) + (-r[3],)
        m = candidates.get(need)
        if m is not None and _c_mul(_c(tuple(r) + (0, 0)), _c(m)) == target:
            solutions.append(r)
    bad = [r for r in solutions if r[1:] != (0, 0, 0)]
    out.append(
        Ingredient(
            "cb is divisible only by ubar_s powers",
            not bad and len(solutions) == len(rng),
            f"{len(solutions)} divisors, all ubar_s^p" if not bad else f"other divisors: {bad[:5]}",
        )
    )
    return out


# ---------------------------------------------------------------------------
# window verification


def _weyl_trivial(M: MackeyF2) -> bool:
    I = lambda n: GF2Matrix.identity(n)
    return M.weyl_mid == I(M.mid_dim) and M.weyl_bot == I(M.bot_dim)


def mackey_spot_degrees(window: Iterable[RODegree]) -> Dict[RODegree, str]:
    """Degrees where a transfer or exotic restriction is predicted to be nonzero."""
    wanted: Dict[RODegree, str] = {}
    for i in range(0, 4):
        shift = _U_SIGMA_INV * i
        wanted[SIGMA + LAMBDA - ONE + shift] = "tr"
        wanted[LAMBDA + ONE + shift] = "tr"
    wanted[SIGMA + LAMBDA] = "res"
    wanted[RHO + SIGMA + LAMBDA] = "res"
    ws = set(window)
    return {d: k for d, k in wanted.items() if d in ws}


def verify_degree(star: RODegree, F: Optional[int] = None, spot: Optional[str] = None) -> Dict[str, object]:
    """Engine versus oracles at one degree."""
    M, stable = cohomology_at(star, F)
    row: Dict[str, object] = {
        "degree": str(star),
        "abc": list(star.as_tuple()),
        "engine": list(M.dims),
        "stable": stable,
        "tags": decompose(M) if stable else [],
    }
    try:
        oracle = oracle_dims(star)
        row["oracle"] = list(oracle)
    except OracleUnstable as err:
        oracle = None
        row["oracle"] = None
        row["oracle_error"] = str(err)
    e2 = e2_totals(star)
    row["e2"] = list(e2)
    row["d2"] = d2_total(star)
    row["middle_c2"] = middle_oracle(star)
    row["bottom_rp"] = bottom_oracle(star)
    checks = {
        "oracle": oracle is not None and tuple(M.dims) == tuple(oracle),
        "e2_middle_bottom": (e2[1], e2[2]) == (M.mid_dim, M.bot_dim),
        "e2_top_drop": e2[0] - M.top_dim == row["d2"],
        "middle_c2": M.mid_dim == row["middle_c2"],
        "bottom_rp": M.bot_dim == row["bottom_rp"],
        "weyl_trivial": _weyl_trivial(M),
        "mackey_axioms": not validate(M),
    }
    if spot == "tr":
        checks["transfer_nonzero"] = rank(M.tr24) > 0
    elif spot == "res":
        checks["restriction_nonzero"] = rank(M.res42) > 0
    row["checks"] = checks
    row["match"] = all(checks.values())
    return row


def _verify_task(args: Tuple[Tuple[int, int, int], Optional[int], Optional[str]]) -> Dict[str, object]:
    abc, F, spot = args
    return verify_degree(RODegree(*abc), F, spot)


def verify_window(window: Iterable[RODegree], F: Optional[int] = None, jobs: int = 1) -> Dict[str, object]:
    """Compare the engine with every oracle across ``window``.

    ``F`` overrides the guard-banded skeleton.  With ``jobs > 1`` the degrees
    are distributed over worker processes; rows are ordered by degree either way.
    """
    degrees = sorted(set(window), key=lambda d: (d.n, d.m, d.a))
    spots = mackey_spot_degrees(degrees)
    tasks = [(d.as_tuple(), F, spots.get(d)) for d in degrees]
    if jobs > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=jobs) as pool:
            rows = list(pool.map(_verify_task, tasks, chunksize=4))
    else:
        rows = [_verify_task(t) for t in tasks]
    stable = [r for r in rows if r["stable"]]
    mismatches = [r["degree"] for r in stable if not r["match"]]
    return {
        "degrees": len(rows),
        "stable": len(stable),
        "unstable": [r["degree"] for r in rows if not r["stable"]],
        "mismatches": mismatches,
        "ok": not mismatches,
        "rows": rows,
    }
