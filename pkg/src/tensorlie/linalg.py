"""Exact linear algebra over QQ and GF(p).

Everything reduces to one kernel, :class:`Echelon`, which keeps a sparse
reduced row-echelon basis and absorbs rows one at a time.  Because the basis
is kept fully reduced, pivot rows only carry entries in free columns, so a
constraint system with many more rows than unknowns (the usual shape of
identity systems) can be streamed through it without ever being stored.

Rows handed to the kernel are dicts ``{column: raw value}`` where raw values
are Fractions for QQ and residues in ``[0, p)`` for GF(p).
"""

from __future__ import annotations

from collections import defaultdict
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

from tensorlie.errors import AmbientMismatch, RowWidthMismatch
from tensorlie.exactfield import QQ, Field, field_of


class Echelon:
    """Incrementally maintained sparse RREF over one field."""

    def __init__(self, field: Field, ncols: int):
        self.field = field
        self.ncols = ncols
        self.p = field.p
        self.pivots: dict[int, dict] = {}
        # free column -> pivot columns whose rows have an entry there
        self._where: dict[int, set] = defaultdict(set)

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def reduce(self, row: dict) -> dict:
        """Return ``row`` reduced against the current basis (new dict)."""
        r = dict(row)
        pivots = self.pivots
        hits = [c for c in r if c in pivots]
        p = self.p
        if p is None:
            for c in hits:
                f = r.pop(c)
                for k, v in pivots[c].items():
                    if k == c:
                        continue
                    nv = r.get(k, 0) - f * v
                    if nv:
                        r[k] = nv
                    else:
                        r.pop(k, None)
        else:
            for c in hits:
                f = r.pop(c)
                for k, v in pivots[c].items():
                    if k == c:
                        continue
                    nv = (r.get(k, 0) - f * v) % p
                    if nv:
                        r[k] = nv
                    else:
                        r.pop(k, None)
        return r

    def add(self, row: dict) -> bool:
        """Absorb a row; return True iff the rank grew."""
        r = self.reduce(row)
        if not r:
            return False
        p = self.p
        c0 = min(r)
        lead = r[c0]
        if p is None:
            if lead != 1:
                inv = 1 / Fraction(lead)
                r = {k: v * inv for k, v in r.items()}
        else:
            if lead != 1:
                inv = pow(lead, -1, p)
                r = {k: (v * inv) % p for k, v in r.items()}
        # clear the new pivot column from existing pivot rows
        where = self._where
        for q in list(where.pop(c0, ())):
            qrow = self.pivots[q]
            f = qrow.pop(c0)
            for k, v in r.items():
                if k == c0:
                    continue
                if p is None:
                    nv = qrow.get(k, 0) - f * v
                else:
                    nv = (qrow.get(k, 0) - f * v) % p
                if nv:
                    if k not in qrow:
                        where[k].add(q)
                    qrow[k] = nv
                elif k in qrow:
                    del qrow[k]
                    s = where.get(k)
                    if s is not None:
                        s.discard(q)
                        if not s:
                            del where[k]
        self.pivots[c0] = r
        for k in r:
            if k != c0:
                where[k].add(c0)
        return True

    def add_rows(self, rows: Iterable[dict]) -> None:
        for row in rows:
            self.add(row)

    def contains(self, row: dict) -> bool:
        return not self.reduce(row)

    def rows(self) -> list[dict]:
        """Pivot rows in increasing pivot order (the canonical RREF)."""
        return [self.pivots[c] for c in sorted(self.pivots)]

    def free_columns(self) -> list[int]:
        return [c for c in range(self.ncols) if c not in self.pivots]

    def null_vectors(self) -> list[dict]:
        """Kernel vectors ``e_f - sum_c R[c][f] e_c``, one per free column."""
        p = self.p
        out = []
        for f in self.free_columns():
            v = {f: 1 if p is not None else Fraction(1)}
            for c in self._where.get(f, ()):
                val = self.pivots[c][f]
                v[c] = (-val) % p if p is not None else -val
            out.append(v)
        return out


def _raw_row(field: Field, row, ncols: int | None = None) -> dict:
    """Convert a dense sequence or sparse dict of scalars into a raw row."""
    raw = field.raw
    conv = field
    if isinstance(row, dict):
        out = {}
        for k, v in row.items():
            if ncols is not None and not 0 <= k < ncols:
                raise RowWidthMismatch(f"column {k} outside width {ncols}")
            r = raw(conv(v))
            if r:
                out[k] = r
        return out
    if ncols is not None and len(row) != ncols:
        raise RowWidthMismatch(f"row of width {len(row)} where {ncols} expected")
    return {k: raw(conv(v)) for k, v in enumerate(row) if v}


class Matrix:
    """Dense matrix of field scalars."""

    def __init__(self, field: Field, rows: Sequence[Sequence], ncols: int | None = None):
        self.field = field
        self.data = [[field(v) for v in row] for row in rows]
        self.nrows = len(self.data)
        if ncols is None:
            ncols = len(self.data[0]) if self.data else 0
        self.ncols = ncols
        for row in self.data:
            if len(row) != ncols:
                raise RowWidthMismatch("ragged matrix")

    @classmethod
    def zeros(cls, field: Field, nrows: int, ncols: int) -> "Matrix":
        z = field.zero
        m = cls.__new__(cls)
        m.field, m.nrows, m.ncols = field, nrows, ncols
        m.data = [[z] * ncols for _ in range(nrows)]
        return m

    @classmethod
    def identity(cls, field: Field, n: int) -> "Matrix":
        m = cls.zeros(field, n, n)
        for i in range(n):
            m.data[i][i] = field.one
        return m

    @classmethod
    def from_sparse_rows(cls, field: Field, rows: Iterable[dict], ncols: int) -> "Matrix":
        m = cls.zeros(field, 0, ncols)
        z = field.zero
        for row in rows:
            dense = [z] * ncols
            for k, v in row.items():
                if not 0 <= k < ncols:
                    raise RowWidthMismatch(f"column {k} outside width {ncols}")
                dense[k] = field(v)
            m.data.append(dense)
        m.nrows = len(m.data)
        return m

    def sparse_rows(self) -> Iterator[dict]:
        raw = self.field.raw
        for row in self.data:
            yield {k: raw(v) for k, v in enumerate(row) if v}

    def __getitem__(self, ij):
        i, j = ij
        return self.data[i][j]

    def __eq__(self, other):
        return (
            isinstance(other, Matrix)
            and self.field is other.field
            and (self.nrows, self.ncols) == (other.nrows, other.ncols)
            and self.data == other.data
        )

    def __repr__(self):
        return f"Matrix({self.nrows}x{self.ncols} over {self.field!r})"

    def tolist(self) -> list[list]:
        return [list(r) for r in self.data]

    def transpose(self) -> "Matrix":
        return Matrix(self.field, [list(c) for c in zip(*self.data)] if self.nrows else [], self.nrows)

    def __matmul__(self, other):
        if isinstance(other, Matrix):
            if self.ncols != other.nrows:
                raise AmbientMismatch("inner dimensions differ")
            cols = list(zip(*other.data)) if other.nrows else [()] * other.ncols
            z = self.field.zero
            return Matrix(
                self.field,
                [[sum((a * b for a, b in zip(row, col) if a and b), z) for col in cols] for row in self.data],
                other.ncols,
            )
        return self.apply(other)

    def apply(self, vec: Sequence) -> list:
        if len(vec) != self.ncols:
            raise AmbientMismatch("vector length differs from column count")
        z = self.field.zero
        return [sum((a * b for a, b in zip(row, vec) if a and b), z) for row in self.data]

    def rank(self) -> int:
        e = Echelon(self.field, self.ncols)
        e.add_rows(self.sparse_rows())
        return e.rank


def rref(m: Matrix) -> tuple[Matrix, int]:
    """Unique reduced row-echelon form of ``m`` and its rank."""
    e = Echelon(m.field, m.ncols)
    e.add_rows(m.sparse_rows())
    rows = e.rows()
    wrap = m.field.wrap
    out = Matrix.zeros(m.field, m.nrows, m.ncols)
    for i, row in enumerate(rows):
        for k, v in row.items():
            out.data[i][k] = wrap(v)
    return out, e.rank


class SubspaceBasis:
    """A subspace of ``field^ambient_dim`` held by its canonical RREF basis."""

    __slots__ = ("field", "ambient_dim", "_rows", "_vectors", "_echelon")

    def __init__(self, field: Field, ambient_dim: int, raw_rows: Iterable[dict] = ()):
        e = Echelon(field, ambient_dim)
        e.add_rows(raw_rows)
        self.field = field
        self.ambient_dim = ambient_dim
        self._echelon = e
        self._rows = e.rows()
        self._vectors = None

    @classmethod
    def span(cls, field: Field, ambient_dim: int, vectors: Iterable) -> "SubspaceBasis":
        """Span of dense sequences or sparse dicts of scalars."""
        return cls(field, ambient_dim, (_raw_row(field, v, ambient_dim) for v in vectors))

    @classmethod
    def zero(cls, field: Field, ambient_dim: int) -> "SubspaceBasis":
        return cls(field, ambient_dim)

    @classmethod
    def full(cls, field: Field, ambient_dim: int) -> "SubspaceBasis":
        one = field.raw(field.one)
        return cls(field, ambient_dim, ({i: one} for i in range(ambient_dim)))

    @property
    def dim(self) -> int:
        return len(self._rows)

    @property
    def raw_rows(self) -> list[dict]:
        return self._rows

    @property
    def pivots(self) -> list[int]:
        return [min(r) for r in self._rows]

    def sparse_vectors(self) -> list[dict]:
        wrap = self.field.wrap
        return [{k: wrap(v) for k, v in r.items()} for r in self._rows]

    @property
    def vectors(self) -> list[tuple]:
        if self._vectors is None:
            z = self.field.zero
            wrap = self.field.wrap
            out = []
            for r in self._rows:
                v = [z] * self.ambient_dim
                for k, val in r.items():
                    v[k] = wrap(val)
                out.append(tuple(v))
            self._vectors = out
        return self._vectors

    def __len__(self):
        return self.dim

    def __repr__(self):
        return f"SubspaceBasis(dim={self.dim}, ambient={self.ambient_dim}, field={self.field!r})"

    def __eq__(self, other):
        return (
            isinstance(other, SubspaceBasis)
            and self.field is other.field
            and self.ambient_dim == other.ambient_dim
            and self._rows == other._rows
        )

    def _check(self, other: "SubspaceBasis"):
        if self.ambient_dim != other.ambient_dim or self.field is not other.field:
            raise AmbientMismatch(
                f"ambient {self.ambient_dim}/{self.field!r} vs {other.ambient_dim}/{other.field!r}"
            )

    def contains_vector(self, vec) -> bool:
        return self._echelon.contains(_raw_row(self.field, vec, self.ambient_dim))

    def contains(self, other: "SubspaceBasis") -> bool:
        self._check(other)
        return all(self._echelon.contains(r) for r in other._rows)

    def __contains__(self, vec) -> bool:
        return self.contains_vector(vec)

    def sum(self, other: "SubspaceBasis") -> "SubspaceBasis":
        self._check(other)
        return SubspaceBasis(self.field, self.ambient_dim, list(self._rows) + list(other._rows))

    __add__ = sum

    def annihilator(self) -> "SubspaceBasis":
        """Vectors orthogonal (dot product) to the whole subspace."""
        return SubspaceBasis(self.field, self.ambient_dim, self._echelon.null_vectors())

    def intersect(self, other: "SubspaceBasis") -> "SubspaceBasis":
        self._check(other)
        if self.dim == 0 or other.dim == 0:
            return SubspaceBasis.zero(self.field, self.ambient_dim)
        # coefficients c with sum c_i u_i orthogonal to ann(other)
        ann = other.annihilator()._rows
        p = self.field.p
        e = Echelon(self.field, self.dim)
        for w in ann:
            row = {}
            for i, u in enumerate(self._rows):
                s = 0
                if len(u) < len(w):
                    for k, v in u.items():
                        wv = w.get(k)
                        if wv:
                            s += v * wv
                else:
                    for k, v in w.items():
                        uv = u.get(k)
                        if uv:
                            s += v * uv
                if p is not None:
                    s %= p
                if s:
                    row[i] = s
            if row:
                e.add(row)
        combos = e.null_vectors()
        out = []
        for c in combos:
            acc: dict = {}
            for i, ci in c.items():
                for k, v in self._rows[i].items():
                    nv = acc.get(k, 0) + ci * v
                    if p is not None:
                        nv %= p
                    if nv:
                        acc[k] = nv
                    else:
                        acc.pop(k, None)
            out.append(acc)
        return SubspaceBasis(self.field, self.ambient_dim, out)

    __and__ = intersect

    def quotient_dim(self, other: "SubspaceBasis") -> int:
        """``dim self - dim(self ∩ other)``."""
        return self.dim - self.intersect(other).dim

    def reduce_modulo(self, other: "SubspaceBasis") -> "SubspaceBasis":
        """Canonical representatives of ``self`` modulo ``other``.

        Each basis vector is reduced against the RREF of ``other`` (so it
        vanishes on the pivot columns of ``other``) and the nonzero results are
        put in RREF.  The output has dimension ``quotient_dim(other)``.
        """
        self._check(other)
        reduced = [other._echelon.reduce(r) for r in self._rows]
        return SubspaceBasis(self.field, self.ambient_dim, [r for r in reduced if r])

    def to_json(self) -> list[list[str]]:
        fmt = self.field.format
        return [[fmt(x) for x in v] for v in self.vectors]

    @classmethod
    def from_json(cls, field: Field, ambient_dim: int, data) -> "SubspaceBasis":
        return cls.span(field, ambient_dim, [[field.parse(str(x)) for x in v] for v in data])


def nullspace(m: Matrix) -> SubspaceBasis:
    e = Echelon(m.field, m.ncols)
    e.add_rows(m.sparse_rows())
    return SubspaceBasis(m.field, m.ncols, e.null_vectors())


def subspace_ops(a: SubspaceBasis, b: SubspaceBasis, op: str):
    """Dispatch for ``sum``, ``intersect``, ``contains`` and ``quotient_dim``."""
    a._check(b)
    if op == "sum":
        return a.sum(b)
    if op == "intersect":
        return a.intersect(b)
    if op == "contains":
        return a.contains(b)
    if op == "quotient_dim":
        return a.quotient_dim(b)
    raise ValueError(f"unknown subspace operation {op!r}")


def streaming_nullspace(row_source: Iterable, cols: int, field: Field | None = None) -> SubspaceBasis:
    """Nullspace of the matrix whose rows are produced by ``row_source``.

    Rows may be dense sequences or sparse ``{column: scalar}`` dicts.  Only the
    current echelon basis is retained, never the rows themselves.
    """
    e: Echelon | None = Echelon(field, cols) if field is not None else None
    for row in row_source:
        if e is None:
            vals = row.values() if isinstance(row, dict) else row
            nz = next((v for v in vals if v), None)
            if nz is None:
                if isinstance(row, dict):
                    if any(not 0 <= k < cols for k in row):
                        raise RowWidthMismatch(f"column outside width {cols}")
                elif len(row) != cols:
                    raise RowWidthMismatch(f"row of width {len(row)} where {cols} expected")
                continue
            field = field_of(nz)
            e = Echelon(field, cols)
        e.add(_raw_row(field, row, cols))
    if e is None:
        field = field or QQ
        e = Echelon(field, cols)
    return SubspaceBasis(field, cols, e.null_vectors())


def solve_rows(field: Field, ncols: int, raw_rows: Iterable[dict]) -> SubspaceBasis:
    """Nullspace of a system given directly as raw sparse rows."""
    e = Echelon(field, ncols)
    for r in raw_rows:
        if r:
            e.add(r)
    return SubspaceBasis(field, ncols, e.null_vectors())


def rank_of_rows(field: Field, ncols: int, raw_rows: Iterable[dict]) -> int:
    e = Echelon(field, ncols)
    for r in raw_rows:
        if r:
            e.add(r)
    return e.rank
