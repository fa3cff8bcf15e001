"""Linear algebra over the two-element field.

Vectors are Python ints used as bitsets: bit ``j`` holds coordinate ``j``.
A :class:`GF2Matrix` stores one such int per row, so XOR of two rows is a
single big-int operation.  Elimination always pivots on the lowest set bit
(the leftmost column), which makes every returned basis deterministic.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, List, Optional, Sequence, Tuple

import numpy as np

__all__ = [
    "GF2Matrix",
    "Quotient",
    "bits_to_int",
    "int_to_bits",
    "rank",
    "kernel_basis",
    "image_basis",
    "solve",
    "quotient_map",
    "span_basis",
]


def bits_to_int(bits: Sequence[int]) -> int:
    """Pack a 0/1 sequence into an int (entry ``j`` becomes bit ``j``)."""
    out = 0
    for j, b in enumerate(bits):
        if b & 1:
            out |= 1 << j
    return out


def int_to_bits(value: int, length: int) -> Tuple[int, ...]:
    """Unpack the low ``length`` bits of ``value`` into a tuple of 0/1."""
    return tuple((value >> j) & 1 for j in range(length))


def _low(v: int) -> int:
    return (v & -v).bit_length() - 1


def _as_int(v, length: Optional[int] = None) -> int:
    if isinstance(v, (int, np.integer)):
        return int(v)
    return bits_to_int(v)


@dataclass(frozen=True)
class GF2Matrix:
    """An immutable ``nrows x ncols`` matrix over F2 with bit-packed rows."""

    nrows: int
    ncols: int
    rows: Tuple[int, ...] = field(default=())

    def __post_init__(self) -> None:
        if self.nrows < 0 or self.ncols < 0:
            raise ValueError("matrix dimensions must be non-negative")
        if not self.rows:
            object.__setattr__(self, "rows", (0,) * self.nrows)
        elif len(self.rows) != self.nrows:
            raise ValueError(f"expected {self.nrows} rows, got {len(self.rows)}")
        mask = (1 << self.ncols) - 1
        for r in self.rows:
            if r & ~mask:
                raise ValueError("row has bits outside the column range")

    # construction -------------------------------------------------------
    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "GF2Matrix":
        return cls(nrows, ncols, (0,) * nrows)

    @classmethod
    def identity(cls, n: int) -> "GF2Matrix":
        return cls(n, n, tuple(1 << i for i in range(n)))

    @classmethod
    def from_dense(cls, entries: Sequence[Sequence[int]], ncols: Optional[int] = None) -> "GF2Matrix":
        entries = [list(r) for r in entries]
        if ncols is None:
            ncols = len(entries[0]) if entries else 0
        for r in entries:
            if len(r) != ncols:
                raise ValueError("ragged dense matrix")
        return cls(len(entries), ncols, tuple(bits_to_int(r) for r in entries))

    @classmethod
    def from_columns(cls, columns: Sequence[int], nrows: int) -> "GF2Matrix":
        """Build a matrix whose column ``j`` is the bitset ``columns[j]``."""
        return cls(len(columns), nrows, tuple(int(c) for c in columns)).transpose()

    # views --------------------------------------------------------------
    @property
    def shape(self) -> Tuple[int, int]:
        return (self.nrows, self.ncols)

    def to_dense(self) -> List[List[int]]:
        return [list(int_to_bits(r, self.ncols)) for r in self.rows]

    def to_numpy(self) -> np.ndarray:
        if self.nrows == 0 or self.ncols == 0:
            return np.zeros((self.nrows, self.ncols), dtype=np.uint8)
        nbytes = (self.ncols + 7) // 8
        buf = b"".join(r.to_bytes(nbytes, "little") for r in self.rows)
        arr = np.frombuffer(buf, dtype=np.uint8).reshape(self.nrows, nbytes)
        return np.unpackbits(arr, axis=1, bitorder="little")[:, : self.ncols]

    @classmethod
    def from_numpy(cls, arr: np.ndarray) -> "GF2Matrix":
        arr = np.asarray(arr, dtype=np.uint8) & 1
        nrows, ncols = arr.shape
        if nrows == 0 or ncols == 0:
            return cls.zeros(nrows, ncols)
        packed = np.packbits(arr, axis=1, bitorder="little")
        return cls(nrows, ncols, tuple(int.from_bytes(row.tobytes(), "little") for row in packed))

    def columns(self) -> Tuple[int, ...]:
        """Column bitsets (bit ``i`` of column ``j`` is entry ``(i, j)``)."""
        return self.transpose().rows

    def __getitem__(self, idx: Tuple[int, int]) -> int:
        i, j = idx
        return (self.rows[i] >> j) & 1

    # arithmetic ---------------------------------------------------------
    def transpose(self) -> "GF2Matrix":
        if self.nrows <= 64 and self.ncols <= 64:
            cols = [0] * self.ncols
            for i, r in enumerate(self.rows):
                while r:
                    j = _low(r)
                    cols[j] |= 1 << i
                    r &= r - 1
            return GF2Matrix(self.ncols, self.nrows, tuple(cols))
        return GF2Matrix.from_numpy(self.to_numpy().T.copy())

    @property
    def T(self) -> "GF2Matrix":
        return self.transpose()

    def __add__(self, other: "GF2Matrix") -> "GF2Matrix":
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} + {other.shape}")
        return GF2Matrix(self.nrows, self.ncols, tuple(a ^ b for a, b in zip(self.rows, other.rows)))

    __sub__ = __add__

    def __matmul__(self, other: "GF2Matrix") -> "GF2Matrix":
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        brows = other.rows
        out = []
        for r in self.rows:
            acc = 0
            while r:
                j = _low(r)
                acc ^= brows[j]
                r &= r - 1
            out.append(acc)
        return GF2Matrix(self.nrows, other.ncols, tuple(out))

    def apply(self, v) -> int:
        """Matrix-vector product with ``v`` given as a bitset or 0/1 sequence."""
        x = _as_int(v)
        out = 0
        for i, r in enumerate(self.rows):
            if bin(r & x).count("1") & 1:
                out |= 1 << i
        return out

    def is_zero(self) -> bool:
        return not any(self.rows)

    def is_identity(self) -> bool:
        return self.nrows == self.ncols and all(r == 1 << i for i, r in enumerate(self.rows))

    def power(self, k: int) -> "GF2Matrix":
        if self.nrows != self.ncols:
            raise ValueError("power of a non-square matrix")
        out = GF2Matrix.identity(self.nrows)
        for _ in range(k):
            out = out @ self
        return out

    def block_diag(self, other: "GF2Matrix") -> "GF2Matrix":
        rows = list(self.rows) + [r << self.ncols for r in other.rows]
        return GF2Matrix(self.nrows + other.nrows, self.ncols + other.ncols, tuple(rows))

    def __repr__(self) -> str:
        return f"GF2Matrix({self.nrows}x{self.ncols}, {self.to_dense()})"


# ---------------------------------------------------------------------------
# elimination kernels


class _Echelon:
    """Incremental echelon basis keyed by lowest set bit.

    Each stored vector may carry a ``tag`` bitset recording which inserted
    vectors it is a combination of; this is what ``solve`` and the quotient
    coordinates are built from.
    """

    __slots__ = ("piv", "tags")

    def __init__(self) -> None:
        self.piv: dict = {}
        self.tags: dict = {}

    def reduce(self, v: int, tag: int = 0) -> Tuple[int, int]:
        piv, tags = self.piv, self.tags
        while v:
            c = _low(v)
            p = piv.get(c)
            if p is None:
                break
            v ^= p
            tag ^= tags[c]
        return v, tag

    def insert(self, v: int, tag: int = 0) -> bool:
        v, tag = self.reduce(v, tag)
        if not v:
            return False
        c = _low(v)
        self.piv[c] = v
        self.tags[c] = tag
        return True

    def full_reduce(self, v: int, tag: int = 0) -> Tuple[int, int]:
        """Clear every pivot column from ``v`` (not only the lowest bits)."""
        piv, tags = self.piv, self.tags
        for c in sorted(piv):
            if (v >> c) & 1:
                v ^= piv[c]
                tag ^= tags[c]
        return v, tag

    def __len__(self) -> int:
        return len(self.piv)


def span_basis(vectors: Iterable[int]) -> List[int]:
    """Reduced echelon basis of the span, sorted by pivot column."""
    ech = _Echelon()
    for v in vectors:
        ech.insert(int(v))
    return _rref_rows(ech.piv)


def _rref_rows(piv: dict) -> List[int]:
    cols = sorted(piv)
    rows = dict(piv)
    for c in reversed(cols):
        pc = rows[c]
        for d in cols:
            if d >= c:
                break
            if (rows[d] >> c) & 1:
                rows[d] ^= pc
    return [rows[c] for c in cols]


def rank(M: GF2Matrix) -> int:
    """Rank of ``M`` over F2."""
    ech = _Echelon()
    for r in M.rows:
        ech.insert(r)
    return len(ech)


def kernel_basis(M: GF2Matrix) -> List[int]:
    """Basis (as bitsets of length ``M.ncols``) of ``{v : Mv = 0}``.

    One vector per free column, in increasing column order.
    """
    ech = _Echelon()
    for r in M.rows:
        ech.insert(r)
    rows = _rref_rows(ech.piv)
    pivots = sorted(ech.piv)
    pivset = set(pivots)
    out = []
    for f in range(M.ncols):
        if f in pivset:
            continue
        v = 1 << f
        for c, r in zip(pivots, rows):
            if (r >> f) & 1:
                v |= 1 << c
        out.append(v)
    return out


def image_basis(M: GF2Matrix) -> List[int]:
    """Reduced basis (bitsets of length ``M.nrows``) of the column space."""
    return span_basis(M.columns())


def solve(M: GF2Matrix, b) -> Optional[int]:
    """Return some ``x`` with ``Mx = b`` (as a bitset), or ``None``."""
    target = _as_int(b)
    if target >> M.nrows:
        raise ValueError("right-hand side longer than the row count")
    ech = _Echelon()
    for j, col in enumerate(M.columns()):
        ech.insert(col, 1 << j)
    rest, x = ech.reduce(target)
    if rest:
        return None
    return x


class Quotient:
    """The quotient ``V / W`` of two nested subspaces of a common ambient space.

    ``coords(v)`` returns the coordinates (bitset of length ``dim``) of the
    class of ``v`` in the fixed basis ``reps``.  Raises ``ValueError`` when
    ``v`` is not in ``V``.
    """

    def __init__(self, V_basis: Iterable[int], W_basis: Iterable[int]) -> None:
        self._ech = _Echelon()
        for w in W_basis:
            self._ech.insert(int(w))
        self.sub_dim = len(self._ech)
        reps: List[int] = []
        v_dim = self.sub_dim
        for v in V_basis:
            v = int(v)
            if self._ech.insert(v, 1 << len(reps)):
                reps.append(v)
                v_dim += 1
        self.reps: Tuple[int, ...] = tuple(reps)
        self.dim = len(reps)

    def coords(self, v: int) -> int:
        rest, tag = self._ech.reduce(int(v))
        if rest:
            raise ValueError("vector is not in the ambient subspace V")
        return tag

    def contains(self, v: int) -> bool:
        rest, _ = self._ech.reduce(int(v))
        return rest == 0


def quotient_map(V_basis: Sequence, W_basis: Sequence, ambient_dim: Optional[int] = None) -> Tuple[GF2Matrix, int]:
    """Projection ``ambient -> V/W`` as a matrix, plus ``dim V/W``.

    The projection restricted to ``V`` is surjective with kernel exactly
    ``W``; off ``V`` it is extended by zero on a fixed complement.  Raises
    ``ValueError`` if ``W`` is not contained in ``V``.
    """
    V = [_as_int(v) for v in V_basis]
    W = [_as_int(w) for w in W_basis]
    if ambient_dim is None:
        lengths = [len(v) for v in list(V_basis) + list(W_basis) if not isinstance(v, (int, np.integer))]
        ambient_dim = max(lengths + [max([x.bit_length() for x in V + W] + [0])])
    vech = _Echelon()
    for v in V:
        vech.insert(v)
    for w in W:
        if vech.reduce(w)[0]:
            raise ValueError("W is not contained in V")
    q = Quotient(V, W)
    # Complete W + reps to a basis of the ambient space with unit vectors, then
    # read off the rep-coordinates of every unit vector.
    full = _Echelon()
    for w in W:
        full.insert(w)
    for k, r in enumerate(q.reps):
        full.insert(r, 1 << k)
    for j in range(ambient_dim):
        full.insert(1 << j, 0)
    cols = []
    for j in range(ambient_dim):
        rest, tag = full.reduce(1 << j)
        assert rest == 0
        cols.append(tag)
    return GF2Matrix.from_columns(cols, q.dim), q.dim
