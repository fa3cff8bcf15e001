"""Equivariant cellular chain complexes and their Mackey-functor homology.

A complex is stored at the bottom level: in each degree a finite F2 basis
(the cells ``g^i x``) permuted by the generator ``g`` of C4, and boundary
maps that commute with that permutation.  Such a degree is the free Mackey
module on the orbits of the permutation; its value at level ``C4/K`` is the
span of the ``K``-orbit sums, restriction is the inclusion of fixed points,
transfer is the relative norm and the Weyl action is ``g``.  Homology of the
fixed-point subcomplex at each level, with the induced maps, is the Mackey
functor homology.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

import numpy as np

from .degree import RODegree
from .gf2 import GF2Matrix, Quotient, _Echelon, _low
from .mackey import MackeyF2

__all__ = [
    "ORBITS",
    "LEVELS",
    "PermModule",
    "ChainComplex",
    "HomologyData",
    "CellComplexSpec",
    "FreeMackeyModule",
    "orbit_product",
    "orbit_module",
    "free_module",
    "sphere_complex",
    "sigma_sphere",
    "lambda_sphere",
    "point_complex",
    "smash",
    "dualize",
    "shift",
    "truncate",
    "minimize",
    "homology",
    "homology_data",
]

#: orbit types named by their stabilizer, C4/H
ORBITS = ("C4", "C2", "e")
#: Mackey levels, top to bottom, with the power of ``g`` generating each subgroup
LEVELS = ("top", "mid", "bot")
_LEVEL_POWER = {"top": 1, "mid": 2, "bot": 4}
_ORBIT_SIZE = {"C4": 1, "C2": 2, "e": 4}


def _iter_bits(v: int):
    while v:
        yield _low(v)
        v &= v - 1


def _apply(cols: Sequence[int], v: int) -> int:
    acc = 0
    while v:
        acc ^= cols[_low(v)]
        v &= v - 1
    return acc


@dataclass(frozen=True)
class PermModule:
    """A permutation F2[C4]-module: ``size`` basis vectors permuted by ``act``."""

    size: int
    act: Tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.act) != self.size or sorted(self.act) != list(range(self.size)):
            raise ValueError("act must be a permutation of the basis")
        a = self.act
        if any(a[a[a[a[i]]]] != i for i in range(self.size)):
            raise ValueError("the generator must act with order dividing 4")

    @classmethod
    def from_orbits(cls, orbits: Sequence[str]) -> "PermModule":
        act: List[int] = []
        for o in orbits:
            k = _ORBIT_SIZE[o]
            base = len(act)
            act.extend(base + (i + 1) % k for i in range(k))
        return cls(len(act), tuple(act))

    def g_power(self, i: int, p: int) -> int:
        for _ in range(p % 4):
            i = self.act[i]
        return i

    @property
    def _levels(self) -> "_LevelData":
        return _level_data(self)

    def orbit_types(self) -> List[str]:
        """Orbit types of the cells, ordered by smallest basis index."""
        return [{1: "C4", 2: "C2", 4: "e"}[len(o)] for o in self._levels.orbits["top"]]

    def level_dim(self, level: str) -> int:
        return len(self._levels.orbits[level])


@dataclass
class _LevelData:
    orbits: Dict[str, List[Tuple[int, ...]]]
    orbit_of: Dict[str, List[int]]
    reps: Dict[str, np.ndarray]
    maps: Dict[str, List[int]]


@lru_cache(maxsize=4096)
def _level_data(M: PermModule) -> _LevelData:
    orbits: Dict[str, List[Tuple[int, ...]]] = {}
    orbit_of: Dict[str, List[int]] = {}
    for lvl, p in _LEVEL_POWER.items():
        seen = [-1] * M.size
        obs: List[Tuple[int, ...]] = []
        for i in range(M.size):
            if seen[i] >= 0:
                continue
            orb = sorted({M.g_power(i, p * k) for k in range(4)})
            for j in orb:
                seen[j] = len(obs)
            obs.append(tuple(orb))
        orbits[lvl] = obs
        orbit_of[lvl] = seen
    reps = {lvl: np.array([o[0] for o in obs], dtype=np.int64) for lvl, obs in orbits.items()}
    maps: Dict[str, List[int]] = {}
    # restriction: an orbit sum is the sum of the smaller orbit sums inside it
    for name, hi, lo in (("res42", "top", "mid"), ("res21", "mid", "bot")):
        maps[name] = [
            sum({1 << orbit_of[lo][b] for b in o}) for o in orbits[hi]
        ]
    # transfer: relative norm over an index-two subgroup
    for name, lo, hi in (("tr24", "mid", "top"), ("tr12", "bot", "mid")):
        cols = []
        for o in orbits[lo]:
            big = orbit_of[hi][o[0]]
            coeff = (2 * len(o) // len(orbits[hi][big])) & 1
            cols.append((1 << big) if coeff else 0)
        maps[name] = cols
    maps["weyl_mid"] = [1 << orbit_of["mid"][M.act[o[0]]] for o in orbits["mid"]]
    maps["weyl_bot"] = [1 << M.act[i] for i in range(M.size)]
    return _LevelData(orbits, orbit_of, reps, maps)


def _compress(vectors: List[int], width: int, reps: np.ndarray) -> List[int]:
    """Read off the bits at positions ``reps`` from each vector."""
    if not vectors:
        return []
    if len(reps) == width:
        return list(vectors)
    if len(reps) == 0:
        return [0] * len(vectors)
    arr = GF2Matrix(len(vectors), width, tuple(vectors)).to_numpy()
    return list(GF2Matrix.from_numpy(arr[:, reps]).rows)


class ChainComplex:
    """A bounded chain complex of permutation F2[C4]-modules.

    ``modules[d]`` is the degree-``d`` module and ``boundaries[d]`` lists, for
    each basis vector of degree ``d``, its boundary as a bitset over the basis
    of degree ``d - 1``.  ``degree_offset`` records the representation sphere
    (or other shift) the complex computes.
    """

    def __init__(
        self,
        modules: Mapping[int, PermModule],
        boundaries: Mapping[int, Sequence[int]],
        degree_offset: RODegree = RODegree(),
        check: bool = True,
    ) -> None:
        self.modules: Dict[int, PermModule] = {d: m for d, m in modules.items() if m.size}
        self.boundaries: Dict[int, Tuple[int, ...]] = {}
        for d, m in self.modules.items():
            cols = tuple(boundaries.get(d, ()))
            if not cols:
                cols = (0,) * m.size
            if len(cols) != m.size:
                raise ValueError(f"boundary in degree {d} has {len(cols)} columns, expected {m.size}")
            self.boundaries[d] = cols
        self.degree_offset = degree_offset
        self._fixed_cache: Dict[Tuple[int, str], List[int]] = {}
        self._hom_cache: Dict[Tuple[int, str], Tuple[Quotient, List[int]]] = {}
        if check:
            self.check()

    # basic data ---------------------------------------------------------
    def module(self, d: int) -> PermModule:
        return self.modules.get(d, PermModule(0, ()))

    def size(self, d: int) -> int:
        return self.module(d).size

    @property
    def degrees(self) -> List[int]:
        return sorted(self.modules)

    def cells(self, d: int) -> List[str]:
        return self.module(d).orbit_types()

    def boundary(self, d: int) -> Tuple[int, ...]:
        return self.boundaries.get(d, (0,) * self.size(d))

    def check(self) -> None:
        """Verify equivariance of every boundary and ``d o d = 0``."""
        for d, cols in self.boundaries.items():
            src, tgt = self.module(d), self.module(d - 1)
            if tgt.size == 0:
                if any(cols):
                    raise ValueError(f"nonzero boundary into empty degree {d - 1}")
                continue
            for i, c in enumerate(cols):
                if c >> tgt.size:
                    raise ValueError(f"boundary in degree {d} leaves the target basis")
                gc = 0
                for b in _iter_bits(c):
                    gc |= 1 << tgt.act[b]
                if gc != cols[src.act[i]]:
                    raise ValueError(f"boundary in degree {d} is not equivariant")
            lower = self.boundary(d - 1)
            for c in cols:
                if _apply(lower, c):
                    raise ValueError(f"boundary squares to zero fails in degree {d}")

    def total_size(self) -> int:
        return sum(m.size for m in self.modules.values())

    def level_dims(self, d: int) -> Tuple[int, int, int]:
        m = self.module(d)
        return tuple(m.level_dim(lvl) for lvl in LEVELS)  # type: ignore[return-value]

    # fixed-point subcomplex -------------------------------------------
    def fixed_boundary(self, d: int, level: str) -> List[int]:
        """Boundary of the level subcomplex in degree ``d``, in orbit-sum coordinates."""
        key = (d, level)
        if key not in self._fixed_cache:
            src, tgt = self.module(d), self.module(d - 1)
            cols = self.boundary(d)
            if src.size == 0:
                out: List[int] = []
            elif tgt.size == 0:
                out = [0] * src.level_dim(level)
            else:
                images = []
                for orb in src._levels.orbits[level]:
                    v = 0
                    for b in orb:
                        v ^= cols[b]
                    images.append(v)
                out = _compress(images, tgt.size, tgt._levels.reps[level])
            self._fixed_cache[key] = out
        return self._fixed_cache[key]

    def level_homology(self, d: int, level: str) -> Tuple[Quotient, List[int]]:
        """(quotient cycles/boundaries, cycle basis) at one level."""
        key = (d, level)
        if key not in self._hom_cache:
            cols = self.fixed_boundary(d, level)
            ech = _Echelon()
            cycles = []
            for j, c in enumerate(cols):
                rest, tag = ech.reduce(c, 1 << j)
                if rest:
                    ech.insert(rest, tag)
                else:
                    cycles.append(tag)
            bounds = self.fixed_boundary(d + 1, level)
            self._hom_cache[key] = (Quotient(cycles, bounds), cycles)
        return self._hom_cache[key]

    def chain_map(self, d: int, name: str) -> List[int]:
        return self.module(d)._levels.maps[name]

    def __repr__(self) -> str:
        body = ", ".join(f"{d}: {self.cells(d)}" for d in self.degrees)
        return f"ChainComplex({{{body}}}, offset={self.degree_offset})"


_MAP_LEVELS = {
    "res42": ("top", "mid"),
    "tr24": ("mid", "top"),
    "res21": ("mid", "bot"),
    "tr12": ("bot", "mid"),
    "weyl_mid": ("mid", "mid"),
    "weyl_bot": ("bot", "bot"),
}


@dataclass(frozen=True)
class HomologyData:
    """Homology in one degree together with chosen cycle representatives."""

    functor: MackeyF2
    reps: Dict[str, Tuple[int, ...]]


def homology_data(C: ChainComplex, d: int) -> HomologyData:
    quots = {lvl: C.level_homology(d, lvl)[0] for lvl in LEVELS}
    mats = {}
    for name, (src, tgt) in _MAP_LEVELS.items():
        qs, qt = quots[src], quots[tgt]
        cmap = C.chain_map(d, name) if C.size(d) else []
        cols = [qt.coords(_apply(cmap, z)) for z in qs.reps]
        mats[name] = GF2Matrix.from_columns(cols, qt.dim) if cols else GF2Matrix.zeros(qt.dim, 0)
    M = MackeyF2(
        quots["top"].dim,
        quots["mid"].dim,
        quots["bot"].dim,
        mats["res42"],
        mats["tr24"],
        mats["res21"],
        mats["tr12"],
        mats["weyl_mid"],
        mats["weyl_bot"],
    )
    return HomologyData(M, {lvl: q.reps for lvl, q in quots.items()})


def homology(C: ChainComplex, d: int) -> MackeyF2:
    """The homology Mackey functor of ``C`` in degree ``d``."""
    return homology_data(C, d).functor


def homology_dims(C: ChainComplex, d: int) -> Tuple[int, int, int]:
    """Level dimensions of the homology in degree ``d`` (no structure maps)."""
    return tuple(C.level_homology(d, lvl)[0].dim for lvl in LEVELS)  # type: ignore[return-value]


# ---------------------------------------------------------------------------
# orbits and free modules


def orbit_product(H: str, K: str) -> List[str]:
    """Orbit decomposition of ``C4/H x C4/K`` with the diagonal action."""
    A = PermModule.from_orbits([H])
    B = PermModule.from_orbits([K])
    act = tuple(A.act[i] * B.size + B.act[j] for i in range(A.size) for j in range(B.size))
    prod = PermModule(A.size * B.size, act)
    order = {o: i for i, o in enumerate(ORBITS)}
    return sorted(prod.orbit_types(), key=order.__getitem__)


def orbit_module(orbit: str) -> PermModule:
    return PermModule.from_orbits([orbit])


@dataclass(frozen=True)
class FreeMackeyModule:
    """A direct sum of free Mackey modules on orbits ``C4/H``."""

    cells: Tuple[str, ...]

    def perm_module(self) -> PermModule:
        return PermModule.from_orbits(self.cells)

    def realize(self) -> MackeyF2:
        C = ChainComplex({0: self.perm_module()}, {})
        return homology(C, 0)


def free_module(orbit: str) -> MackeyF2:
    """The free Mackey module on ``C4/H`` as a Mackey functor."""
    return FreeMackeyModule((orbit,)).realize()


@dataclass(frozen=True)
class CellComplexSpec:
    """A filtered cell structure: (filtration, orbit, representation) per cell."""

    cells: Tuple[Tuple[int, str, RODegree], ...]

    def __post_init__(self) -> None:
        filt = [c[0] for c in self.cells]
        if filt != sorted(set(filt)) or len(filt) != len(set(filt)):
            raise ValueError("filtrations must strictly increase")
        for _, orbit, rep in self.cells:
            if orbit not in ORBITS:
                raise ValueError(f"unknown orbit {orbit!r}")
            if not rep.is_actual:
                raise ValueError("cell representations must be actual")


# ---------------------------------------------------------------------------
# elementary complexes


def point_complex() -> ChainComplex:
    """S^0: one fixed cell in degree 0."""
    return ChainComplex({0: orbit_module("C4")}, {0: (0,)})


def sigma_sphere(n: int) -> ChainComplex:
    """A minimal cell structure on ``S^{n sigma}``, ``n >= 0``.

    One fixed 0-cell and one ``C4/C2``-cell ``x_i`` in each dimension
    ``1..n`` with ``d x_1 = pt`` and ``d x_i = (1 + g) x_{i-1}``.
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    modules = {0: orbit_module("C4")}
    bounds: Dict[int, Tuple[int, ...]] = {0: (0,)}
    for i in range(1, n + 1):
        modules[i] = orbit_module("C2")
        if i == 1:
            bounds[i] = (1, 1)
        else:
            bounds[i] = (0b11, 0b11)
    return ChainComplex(modules, bounds, RODegree(0, n, 0))


def lambda_sphere(m: int) -> ChainComplex:
    """A minimal cell structure on ``S^{m lambda}``, ``m >= 0``.

    One fixed 0-cell and a free cell ``e_j`` in each dimension ``1..2m`` with
    ``d e_1 = pt``, ``d e_{2i} = (1 + g) e_{2i-1}`` and
    ``d e_{2i+1} = (1 + g + g^2 + g^3) e_{2i}``.
    """
    if m < 0:
        raise ValueError("m must be non-negative")
    modules = {0: orbit_module("C4")}
    bounds: Dict[int, Tuple[int, ...]] = {0: (0,)}
    for j in range(1, 2 * m + 1):
        modules[j] = orbit_module("e")
        if j == 1:
            bounds[j] = (1, 1, 1, 1)
        elif j % 2 == 0:
            # (1 + g) g^i e = g^i e + g^{i+1} e
            bounds[j] = tuple((1 << i) | (1 << ((i + 1) % 4)) for i in range(4))
        else:
            bounds[j] = (0b1111,) * 4
    return ChainComplex(modules, bounds, RODegree(0, 0, m))


def shift(C: ChainComplex, a: int) -> ChainComplex:
    """Suspension by the trivial representation ``a`` (degree shift)."""
    return ChainComplex(
        {d + a: m for d, m in C.modules.items()},
        {d + a: b for d, b in C.boundaries.items()},
        C.degree_offset + RODegree(a, 0, 0),
        check=False,
    )


def smash(C: ChainComplex, D: ChainComplex, degrees: Optional[Tuple[int, int]] = None) -> ChainComplex:
    """Tensor product of cellular chains with the diagonal C4 action.

    With ``degrees = (lo, hi)`` only total degrees ``lo..hi`` are built and the
    boundary out of degree ``lo`` is dropped, so homology in ``lo + 1 .. hi - 1``
    is exact.
    """
    modules: Dict[int, PermModule] = {}
    bounds: Dict[int, Tuple[int, ...]] = {}
    blocks: Dict[int, List[Tuple[int, int, int]]] = {}
    offset: Dict[Tuple[int, int], int] = {}
    for p in C.degrees:
        for q in D.degrees:
            n = p + q
            if degrees is not None and not degrees[0] <= n <= degrees[1]:
                continue
            blocks.setdefault(n, [])
            start = sum(C.size(pp) * D.size(qq) for pp, qq, _ in blocks[n])
            offset[(p, q)] = start
            blocks[n].append((p, q, start))
    for n, blist in blocks.items():
        act: List[int] = []
        cols: List[int] = []
        for p, q, start in blist:
            A, B = C.module(p), D.module(q)
            sB = B.size
            dA, dB = C.boundary(p), D.boundary(q)
            offA = offset.get((p - 1, q))
            offB = offset.get((p, q - 1))
            sB_low = D.size(q - 1)
            for i in range(A.size):
                for j in range(sB):
                    act.append(start + A.act[i] * sB + B.act[j])
                    v = 0
                    if offA is not None:
                        for ii in _iter_bits(dA[i]):
                            v |= 1 << (offA + ii * sB + j)
                    if offB is not None and dB[j]:
                        v ^= dB[j] << (offB + i * sB_low)
                    cols.append(v)
        modules[n] = PermModule(len(act), tuple(act))
        bounds[n] = tuple(cols)
    return ChainComplex(modules, bounds, C.degree_offset + D.degree_offset, check=False)


def dualize(C: ChainComplex) -> ChainComplex:
    """The cochain complex, regraded homologically: degree ``d`` becomes ``-d``.

    Permutation modules are self-dual, so every degree keeps its action and
    boundaries are transposed.
    """
    modules = {-d: m for d, m in C.modules.items()}
    bounds: Dict[int, Tuple[int, ...]] = {}
    for d, m in C.modules.items():
        # the new boundary out of degree -(d - 1) is the transpose of the old d_d
        lower = C.module(d - 1)
        if lower.size == 0:
            continue
        mat = GF2Matrix.from_columns(C.boundary(d), lower.size)
        bounds[-(d - 1)] = mat.rows
    return ChainComplex(modules, bounds, -C.degree_offset, check=False)


def truncate(C: ChainComplex, d_min: int, d_max: int) -> ChainComplex:
    """Keep degrees ``d_min - 1 .. d_max + 1``; homology in ``[d_min, d_max]`` is unchanged."""
    if d_min > d_max:
        raise ValueError("d_min must not exceed d_max")
    keep = [d for d in C.degrees if d_min - 1 <= d <= d_max + 1]
    modules = {d: C.module(d) for d in keep}
    bounds = {d: (C.boundary(d) if d >= d_min else (0,) * C.size(d)) for d in keep}
    return ChainComplex(modules, bounds, C.degree_offset, check=False)


@lru_cache(maxsize=256)
def _positive_sphere(n: int, m: int) -> ChainComplex:
    if n == 0:
        return lambda_sphere(m)
    if m == 0:
        return sigma_sphere(n)
    return smash(sigma_sphere(n), lambda_sphere(m))


@lru_cache(maxsize=512)
def sphere_complex(V: RODegree) -> ChainComplex:
    """A finite complex whose homology in degree ``d`` is ``k_d(S^V)``."""
    pos = _positive_sphere(max(V.n, 0), max(V.m, 0))
    neg_n, neg_m = max(-V.n, 0), max(-V.m, 0)
    C = pos
    if neg_n or neg_m:
        neg = dualize(_positive_sphere(neg_n, neg_m))
        C = neg if (V.n <= 0 and V.m <= 0) else smash(pos, neg)
    C = shift(C, V.a) if V.a else C
    return ChainComplex(C.modules, C.boundaries, V, check=False)


def _g_cycle(M: PermModule, b: int) -> List[int]:
    cyc = [b]
    while M.act[cyc[-1]] != b:
        cyc.append(M.act[cyc[-1]])
    return cyc


def minimize(C: ChainComplex) -> ChainComplex:
    """Cancel pairs of equal orbits joined by an invertible boundary coefficient.

    If a cell orbit ``x`` in degree ``d`` hits an orbit ``y`` of the same type
    in degree ``d - 1`` with a coefficient of odd augmentation (a unit of the
    local ring ``F2[C4/K]``), Gaussian elimination removes both equivariantly.
    The result is C4-chain homotopy equivalent to ``C``, so every level of its
    homology is unchanged.
    """
    degs = C.degrees
    mods = {d: C.module(d) for d in degs}
    bnd: Dict[int, Dict[int, int]] = {d: dict(enumerate(C.boundary(d))) for d in degs}
    orbits: Dict[int, List[List[int]]] = {}
    for d in degs:
        seen = set()
        obs = []
        for b in range(mods[d].size):
            if b not in seen:
                cyc = _g_cycle(mods[d], b)
                seen.update(cyc)
                obs.append(cyc)
        orbits[d] = obs
    alive: Dict[int, set] = {d: set(range(mods[d].size)) for d in degs}

    def try_cancel(d: int) -> bool:
        if d - 1 not in orbits:
            return False
        lower = {b: cyc for cyc in orbits[d - 1] if cyc[0] in alive[d - 1] for b in cyc}
        for xo in orbits[d]:
            if xo[0] not in alive[d]:
                continue
            col = bnd[d][xo[0]]
            v = col
            while v:
                b = _low(v)
                v &= v - 1
                yo = lower[b]
                if len(yo) != len(xo):
                    continue
                ymask = sum(1 << c for c in yo)
                if bin(col & ymask).count("1") % 2 == 0:
                    continue
                _cancel(d, xo, yo, ymask)
                return True
        return False

    def _cancel(d: int, xo: List[int], yo: List[int], ymask: int) -> None:
        k = len(xo)
        xcols = [bnd[d][x] for x in xo]
        images = {}
        for sub in range(1, 1 << k):
            acc = 0
            for j in range(k):
                if sub >> j & 1:
                    acc ^= xcols[j]
            images.setdefault(acc & ymask, acc)
        xset = set(xo)
        for r in list(alive[d]):
            if r in xset:
                continue
            p = bnd[d][r] & ymask
            if p:
                bnd[d][r] ^= images[p]
        for x in xo:
            alive[d].discard(x)
        for y in yo:
            alive[d - 1].discard(y)
        if d + 1 in bnd:
            xm = sum(1 << x for x in xo)
            for w in alive[d + 1]:
                bnd[d + 1][w] &= ~xm

    changed = True
    while changed:
        changed = False
        for d in sorted(degs, reverse=True):
            while try_cancel(d):
                changed = True

    modules: Dict[int, PermModule] = {}
    bounds: Dict[int, Tuple[int, ...]] = {}
    index: Dict[int, Dict[int, int]] = {}
    for d in degs:
        keep = sorted(alive[d])
        index[d] = {b: i for i, b in enumerate(keep)}
        modules[d] = PermModule(len(keep), tuple(index[d][mods[d].act[b]] for b in keep))
    for d in degs:
        cols = []
        low_index = index.get(d - 1, {})
        for b in sorted(alive[d]):
            v, out = bnd[d][b], 0
            while v:
                c = _low(v)
                v &= v - 1
                out |= 1 << low_index[c]
            cols.append(out)
        bounds[d] = tuple(cols)
    return ChainComplex(modules, bounds, C.degree_offset, check=False)
