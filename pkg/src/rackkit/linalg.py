"""Sparse exact linear algebra over the rationals.

Vectors and matrices store nonzero Fraction entries only.  Row reduction,
kernels and subspace arithmetic are exact; dual numbers are rejected
because Q[eps]/(eps^2) is not a field.  Ambient dimensions at desk scale
(<= RACKKIT_MAX_DIM) keep everything small enough for dense-ish loops.
"""

from __future__ import annotations

import os
from fractions import Fraction

from .errors import ResourceLimitError
from .scalars import DualScalar, ZERO

DEFAULT_MAX_DIM = 64


def max_dim() -> int:
    return int(os.environ.get("RACKKIT_MAX_DIM", DEFAULT_MAX_DIM))


def guard_ambient(dim_total: int, context: str = "") -> None:
    cap = max_dim() ** 2
    if dim_total > cap:
        where = f" in {context}" if context else ""
        raise ResourceLimitError(
            f"ambient dimension {dim_total}{where} exceeds budget {cap} "
            "(raise RACKKIT_MAX_DIM to override)"
        )


def _reject_dual(value):
    if isinstance(value, DualScalar):
        raise TypeError("dual numbers are not a field; rank/kernel need rationals")


class SparseVec:
    """Vector with nonzero entries indexed by position."""

    __slots__ = ("dim", "entries")

    def __init__(self, dim: int, entries=None):
        self.dim = dim
        self.entries = {}
        if entries:
            for i, v in dict(entries).items():
                if not 0 <= i < dim:
                    raise ValueError(f"index {i} out of range for dimension {dim}")
                if v:
                    self.entries[i] = Fraction(v) if not isinstance(v, Fraction) else v

    @classmethod
    def from_pairs(cls, dim: int, pairs):
        """Build from (index, value) pairs; indices must strictly increase."""
        prev = -1
        entries = {}
        for i, v in pairs:
            if i <= prev:
                raise ValueError("indices must be strictly increasing")
            if not v:
                raise ValueError("explicit zero entry")
            prev = i
            entries[i] = v
        return cls(dim, entries)

    @classmethod
    def unit(cls, dim: int, i: int):
        return cls(dim, {i: Fraction(1)})

    def items(self):
        return sorted(self.entries.items())

    def get(self, i):
        return self.entries.get(i, ZERO)

    def add(self, other: "SparseVec") -> "SparseVec":
        if self.dim != other.dim:
            raise ValueError("dimension mismatch")
        out = dict(self.entries)
        for i, v in other.entries.items():
            w = out.get(i, ZERO) + v
            if w:
                out[i] = w
            else:
                out.pop(i, None)
        return SparseVec(self.dim, out)

    def scale(self, c) -> "SparseVec":
        if not c:
            return SparseVec(self.dim)
        return SparseVec(self.dim, {i: c * v for i, v in self.entries.items()})

    def sub(self, other: "SparseVec") -> "SparseVec":
        return self.add(other.scale(Fraction(-1)))

    def is_zero(self) -> bool:
        return not self.entries

    def __eq__(self, other):
        return (
            isinstance(other, SparseVec)
            and self.dim == other.dim
            and self.entries == other.entries
        )

    def __hash__(self):
        return hash((self.dim, tuple(self.items())))

    def __repr__(self):
        return f"SparseVec({self.dim}, {dict(self.items())})"


class SparseMat:
    """Matrix as a map: column j holds the image of the j-th basis vector."""

    __slots__ = ("nrows", "ncols", "rows")

    def __init__(self, nrows: int, ncols: int, rows=None):
        self.nrows = nrows
        self.ncols = ncols
        self.rows = {}
        if rows:
            for i, row in rows.items():
                clean = {j: v for j, v in row.items() if v}
                if clean:
                    self.rows[i] = clean

    @classmethod
    def from_entries(cls, nrows, ncols, triples):
        rows: dict[int, dict[int, Fraction]] = {}
        for i, j, v in triples:
            if not 0 <= i < nrows or not 0 <= j < ncols:
                raise ValueError("entry out of range")
            if v:
                rows.setdefault(i, {})[j] = rows.get(i, {}).get(j, ZERO) + v
        return cls(nrows, ncols, rows)

    @classmethod
    def from_columns(cls, dim, vectors):
        rows: dict[int, dict[int, Fraction]] = {}
        for j, vec in enumerate(vectors):
            if vec.dim != dim:
                raise ValueError("dimension mismatch")
            for i, v in vec.entries.items():
                rows.setdefault(i, {})[j] = v
        return cls(dim, len(vectors), rows)

    @classmethod
    def identity(cls, n):
        return cls(n, n, {i: {i: Fraction(1)} for i in range(n)})

    def entry(self, i, j):
        return self.rows.get(i, {}).get(j, ZERO)

    def column(self, j) -> SparseVec:
        return SparseVec(
            self.nrows, {i: row[j] for i, row in self.rows.items() if j in row}
        )

    def columns(self):
        return [self.column(j) for j in range(self.ncols)]

    def transpose(self) -> "SparseMat":
        rows: dict[int, dict[int, Fraction]] = {}
        for i, row in self.rows.items():
            for j, v in row.items():
                rows.setdefault(j, {})[i] = v
        return SparseMat(self.ncols, self.nrows, rows)

    def mul(self, other: "SparseMat") -> "SparseMat":
        if self.ncols != other.nrows:
            raise ValueError("shape mismatch")
        rows: dict[int, dict[int, Fraction]] = {}
        for i, row in self.rows.items():
            acc: dict[int, Fraction] = {}
            for k, v in row.items():
                orow = other.rows.get(k)
                if not orow:
                    continue
                for j, w in orow.items():
                    acc[j] = acc.get(j, ZERO) + v * w
            rows[i] = acc
        return SparseMat(self.nrows, other.ncols, rows)

    def apply(self, vec: SparseVec) -> SparseVec:
        if vec.dim != self.ncols:
            raise ValueError("dimension mismatch")
        out: dict[int, Fraction] = {}
        for i, row in self.rows.items():
            s = ZERO
            for j, v in row.items():
                if j in vec.entries:
                    s += v * vec.entries[j]
            if s:
                out[i] = s
        return SparseVec(self.nrows, out)

    def add(self, other: "SparseMat") -> "SparseMat":
        if (self.nrows, self.ncols) != (other.nrows, other.ncols):
            raise ValueError("shape mismatch")
        rows = {i: dict(r) for i, r in self.rows.items()}
        for i, r in other.rows.items():
            tgt = rows.setdefault(i, {})
            for j, v in r.items():
                w = tgt.get(j, ZERO) + v
                if w:
                    tgt[j] = w
                else:
                    tgt.pop(j, None)
        return SparseMat(self.nrows, self.ncols, rows)

    def scale(self, c) -> "SparseMat":
        return SparseMat(
            self.nrows,
            self.ncols,
            {i: {j: c * v for j, v in r.items()} for i, r in self.rows.items()},
        )

    def kron(self, other: "SparseMat") -> "SparseMat":
        """Kronecker product, consistent with row-major tensor indexing."""
        rows: dict[int, dict[int, Fraction]] = {}
        for i1, r1 in self.rows.items():
            for i2, r2 in other.rows.items():
                out = rows.setdefault(i1 * other.nrows + i2, {})
                for j1, v1 in r1.items():
                    for j2, v2 in r2.items():
                        out[j1 * other.ncols + j2] = v1 * v2
        return SparseMat(self.nrows * other.nrows, self.ncols * other.ncols, rows)

    def is_zero(self) -> bool:
        return not self.rows

    def __eq__(self, other):
        return (
            isinstance(other, SparseMat)
            and (self.nrows, self.ncols) == (other.nrows, other.ncols)
            and self.rows == other.rows
        )

    def __repr__(self):
        return f"SparseMat({self.nrows}x{self.ncols}, nnz={sum(len(r) for r in self.rows.values())})"


def rref(m: SparseMat):
    """Reduced row echelon form.  Returns (reduced, pivot columns, rank)."""
    for row in m.rows.values():
        for v in row.values():
            _reject_dual(v)
    work = [dict(m.rows[i]) for i in sorted(m.rows)]
    pivots: list[int] = []
    reduced: list[dict[int, Fraction]] = []
    for col in range(m.ncols):
        hit = None
        for idx, row in enumerate(work):
            if row.get(col):
                hit = idx
                break
        if hit is None:
            continue
        row = work.pop(hit)
        inv = 1 / row[col]
        row = {j: inv * v for j, v in row.items()}
        for other in work:
            c = other.get(col)
            if c:
                for j, v in row.items():
                    w = other.get(j, ZERO) - c * v
                    if w:
                        other[j] = w
                    else:
                        other.pop(j, None)
        work = [r for r in work if r]
        for other in reduced:
            c = other.get(col)
            if c:
                for j, v in row.items():
                    w = other.get(j, ZERO) - c * v
                    if w:
                        other[j] = w
                    else:
                        other.pop(j, None)
        reduced.append(row)
        pivots.append(col)
    out = SparseMat(m.nrows, m.ncols, dict(enumerate(reduced)))
    return out, tuple(pivots), len(pivots)


def kernel_basis(m: SparseMat) -> list[SparseVec]:
    """Basis of the null space {x : m x = 0}."""
    red, pivots, _ = rref(m)
    pivot_set = set(pivots)
    pivot_row = {col: r for r, col in enumerate(pivots)}
    basis = []
    for free in range(m.ncols):
        if free in pivot_set:
            continue
        entries = {free: Fraction(1)}
        for col, r in pivot_row.items():
            v = red.rows.get(r, {}).get(free, ZERO)
            if v:
                entries[col] = -v
        basis.append(SparseVec(m.ncols, entries))
    return basis


def image_basis(m: SparseMat) -> list[SparseVec]:
    """Basis of the column span: the columns at the pivot positions."""
    _, pivots, _ = rref(m)
    return [m.column(j) for j in pivots]


class Span:
    """Subspace of Q^dim kept as reduced echelon rows."""

    def __init__(self, dim: int, vectors=()):
        self.ambient = dim
        self._rows: list[dict[int, Fraction]] = []
        self._pivots: list[int] = []
        for v in vectors:
            self.insert(v)

    def insert(self, vec: SparseVec) -> bool:
        """Add a vector; returns True if the dimension grew."""
        if vec.dim != self.ambient:
            raise ValueError("dimension mismatch between ambient spaces")
        row = dict(vec.entries)
        for v in row.values():
            _reject_dual(v)
        row = self._reduce_row(row)
        if not row:
            return False
        lead = min(row)
        inv = 1 / row[lead]
        row = {j: inv * v for j, v in row.items()}
        # keep earlier rows fully reduced against the new pivot
        for other in self._rows:
            c = other.get(lead)
            if c:
                for j, v in row.items():
                    w = other.get(j, ZERO) - c * v
                    if w:
                        other[j] = w
                    else:
                        other.pop(j, None)
        pos = 0
        while pos < len(self._pivots) and self._pivots[pos] < lead:
            pos += 1
        self._rows.insert(pos, row)
        self._pivots.insert(pos, lead)
        return True

    def _reduce_row(self, row: dict[int, Fraction]) -> dict[int, Fraction]:
        for pivot, prow in zip(self._pivots, self._rows):
            c = row.get(pivot)
            if c:
                for j, v in prow.items():
                    w = row.get(j, ZERO) - c * v
                    if w:
                        row[j] = w
                    else:
                        row.pop(j, None)
        return row

    @property
    def dim(self) -> int:
        return len(self._rows)

    def contains(self, vec: SparseVec) -> bool:
        if vec.dim != self.ambient:
            raise ValueError("dimension mismatch between ambient spaces")
        return not self._reduce_row(dict(vec.entries))

    def basis(self) -> list[SparseVec]:
        return [SparseVec(self.ambient, row) for row in self._rows]

    def sum_with(self, other: "Span") -> "Span":
        if other.ambient != self.ambient:
            raise ValueError("dimension mismatch between ambient spaces")
        out = Span(self.ambient, self.basis())
        for v in other.basis():
            out.insert(v)
        return out

    def intersect(self, other: "Span") -> "Span":
        """Intersection via the kernel of the concatenated generators."""
        if other.ambient != self.ambient:
            raise ValueError("dimension mismatch between ambient spaces")
        a, b = self.basis(), other.basis()
        if not a or not b:
            return Span(self.ambient)
        m = SparseMat.from_columns(self.ambient, a + b)
        out = Span(self.ambient)
        for k in kernel_basis(m):
            acc = SparseVec(self.ambient)
            for j, vec in enumerate(a):
                c = k.get(j)
                if c:
                    acc = acc.add(vec.scale(c))
            out.insert(acc)
        return out

    def __eq__(self, other):
        return (
            isinstance(other, Span)
            and self.ambient == other.ambient
            and self._rows == other._rows
        )


def solve_coordinates(columns, target: SparseVec):
    """Solve sum_j x_j * columns[j] = target; None when inconsistent."""
    dim = target.dim
    aug = SparseMat.from_columns(dim, list(columns) + [target])
    red, pivots, _ = rref(aug)
    k = len(columns)
    if k in pivots:
        return None
    coords = [ZERO] * k
    for r, col in enumerate(pivots):
        coords[col] = red.rows.get(r, {}).get(k, ZERO)
    return coords
