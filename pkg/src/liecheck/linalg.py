"""Exact sparse linear algebra over the rationals.

Vectors are sparse ``dict[int, Fraction]`` maps from coordinate index to a
nonzero value.  Matrices are stored row-wise as lists of such maps.  Every
routine here is exact; no floating point is involved.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Sequence

SparseVec = dict[int, Fraction]


def clean(vec: Mapping[int, Fraction | int]) -> SparseVec:
    """Drop zero entries and coerce values to Fraction."""
    return {i: Fraction(v) for i, v in vec.items() if v != 0}


def add_scaled(target: SparseVec, source: Mapping[int, Fraction], scale: Fraction) -> None:
    """In-place ``target += scale * source``, removing entries that cancel."""
    if scale == 0:
        return
    for i, v in source.items():
        new = target.get(i, 0) + scale * v
        if new == 0:
            target.pop(i, None)
        else:
            target[i] = new


def vec_to_key(vec: Mapping[int, Fraction]) -> tuple[tuple[int, Fraction], ...]:
    """Canonical hashable form of a sparse vector."""
    return tuple(sorted((i, v) for i, v in vec.items() if v != 0))


def _reduce(vec: SparseVec, rows: Sequence[SparseVec], pivots: Sequence[int]) -> SparseVec:
    """Reduce ``vec`` against RREF rows (each row has a 1 at its pivot)."""
    out = dict(vec)
    for row, p in zip(rows, pivots):
        c = out.get(p)
        if c:
            add_scaled(out, row, -c)
    return out


class Echelon:
    """Incrementally maintained reduced row-echelon basis of a subspace."""

    def __init__(self) -> None:
        self.rows: list[SparseVec] = []
        self.pivots: list[int] = []

    def reduce(self, vec: Mapping[int, Fraction]) -> SparseVec:
        return _reduce(dict(vec), self.rows, self.pivots)

    def add(self, vec: Mapping[int, Fraction]) -> bool:
        """Insert ``vec``; return True when it enlarged the span."""
        r = self.reduce(vec)
        if not r:
            return False
        p = min(r)
        inv = 1 / r[p]
        r = {i: v * inv for i, v in r.items()}
        for row in self.rows:
            c = row.get(p)
            if c:
                add_scaled(row, r, -c)
        self.rows.append(r)
        self.pivots.append(p)
        return True

    def contains(self, vec: Mapping[int, Fraction]) -> bool:
        return not self.reduce(vec)

    def canonical(self) -> tuple[tuple[tuple[int, Fraction], ...], ...]:
        order = sorted(range(len(self.pivots)), key=lambda k: self.pivots[k])
        return tuple(vec_to_key(self.rows[k]) for k in order)


class Subspace:
    """A subspace of ``Q^n`` held in canonical reduced row-echelon form.

    Two subspaces of the same ambient space are equal exactly when their
    canonical row tuples are equal.
    """

    __slots__ = ("n", "rows", "_ech")

    def __init__(self, n: int, vectors: Iterable[Mapping[int, Fraction]] = ()) -> None:
        ech = Echelon()
        for v in vectors:
            ech.add(v)
        self.n = n
        self.rows = ech.canonical()
        self._ech = ech

    @classmethod
    def full(cls, n: int) -> "Subspace":
        return cls(n, ({i: Fraction(1)} for i in range(n)))

    @property
    def dim(self) -> int:
        return len(self.rows)

    def basis(self) -> list[SparseVec]:
        return [dict(r) for r in self.rows]

    def contains(self, vec: Mapping[int, Fraction]) -> bool:
        return self._ech.contains(vec)

    def contains_subspace(self, other: "Subspace") -> bool:
        return all(self.contains(dict(r)) for r in other.rows)

    def __add__(self, other: "Subspace") -> "Subspace":
        self._check(other)
        return Subspace(self.n, [dict(r) for r in self.rows] + [dict(r) for r in other.rows])

    def intersection(self, other: "Subspace") -> "Subspace":
        """Intersection via the kernel of ``[A | -B]`` for stacked bases."""
        self._check(other)
        a, b = self.basis(), other.basis()
        if not a or not b:
            return Subspace(self.n)
        # Solve sum_i x_i a_i = sum_j y_j b_j; unknowns x then y.
        eqs: dict[int, SparseVec] = {}
        for k, v in enumerate(a):
            for i, c in v.items():
                eqs.setdefault(i, {})[k] = c
        off = len(a)
        for k, v in enumerate(b):
            for i, c in v.items():
                eqs.setdefault(i, {})[off + k] = -c
        sols = kernel(list(eqs.values()), off + len(b))
        out = []
        for s in sols:
            w: SparseVec = {}
            for k in range(off):
                if k in s:
                    add_scaled(w, a[k], s[k])
            out.append(w)
        return Subspace(self.n, out)

    def _check(self, other: "Subspace") -> None:
        if self.n != other.n:
            raise ValueError("subspaces live in different ambient spaces")

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Subspace) and self.n == other.n and self.rows == other.rows

    def __hash__(self) -> int:
        return hash((self.n, self.rows))

    def __repr__(self) -> str:
        return f"Subspace(n={self.n}, dim={self.dim})"


def kernel(rows: Sequence[Mapping[int, Fraction]], ncols: int) -> list[SparseVec]:
    """Basis of ``{x : row . x = 0 for every row}`` in ``Q^ncols``."""
    ech = Echelon()
    for r in rows:
        ech.add(r)
    pivots = set(ech.pivots)
    free = [j for j in range(ncols) if j not in pivots]
    basis = []
    for f in free:
        x: SparseVec = {f: Fraction(1)}
        for row, p in zip(ech.rows, ech.pivots):
            c = row.get(f)
            if c:
                x[p] = -c
        basis.append(x)
    return basis


class RatMatrix:
    """Sparse square-or-rectangular rational matrix stored by rows."""

    __slots__ = ("nrows", "ncols", "rows")

    def __init__(self, nrows: int, ncols: int, rows: Sequence[Mapping[int, Fraction]] | None = None) -> None:
        self.nrows = nrows
        self.ncols = ncols
        if rows is None:
            self.rows: list[SparseVec] = [{} for _ in range(nrows)]
        else:
            if len(rows) != nrows:
                raise ValueError("row count mismatch")
            self.rows = [clean(r) for r in rows]

    @classmethod
    def from_dense(cls, data: Sequence[Sequence[Fraction | int]]) -> "RatMatrix":
        nrows = len(data)
        ncols = len(data[0]) if nrows else 0
        return cls(nrows, ncols, [{j: Fraction(v) for j, v in enumerate(row) if v != 0} for row in data])

    @classmethod
    def from_columns(cls, ncols_vecs: Sequence[Mapping[int, Fraction]], nrows: int) -> "RatMatrix":
        m = cls(nrows, len(ncols_vecs))
        for j, col in enumerate(ncols_vecs):
            for i, v in col.items():
                if v != 0:
                    m.rows[i][j] = Fraction(v)
        return m

    @classmethod
    def identity(cls, n: int) -> "RatMatrix":
        return cls(n, n, [{i: Fraction(1)} for i in range(n)])

    def to_dense(self) -> list[list[Fraction]]:
        out = []
        for r in self.rows:
            row = [Fraction(0)] * self.ncols
            for j, v in r.items():
                row[j] = v
            out.append(row)
        return out

    def column(self, j: int) -> SparseVec:
        return {i: r[j] for i, r in enumerate(self.rows) if j in r}

    def columns(self) -> list[SparseVec]:
        cols: list[SparseVec] = [{} for _ in range(self.ncols)]
        for i, r in enumerate(self.rows):
            for j, v in r.items():
                cols[j][i] = v
        return cols

    def is_zero(self) -> bool:
        return not any(self.rows)

    def nnz(self) -> int:
        return sum(len(r) for r in self.rows)

    def apply(self, vec: Mapping[int, Fraction]) -> SparseVec:
        out: SparseVec = {}
        for i, r in enumerate(self.rows):
            s = sum((v * vec[j] for j, v in r.items() if j in vec), Fraction(0))
            if s != 0:
                out[i] = s
        return out

    def __matmul__(self, other: "RatMatrix") -> "RatMatrix":
        if self.ncols != other.nrows:
            raise ValueError("shape mismatch")
        out = RatMatrix(self.nrows, other.ncols)
        for i, r in enumerate(self.rows):
            acc: SparseVec = {}
            for k, v in r.items():
                add_scaled(acc, other.rows[k], v)
            out.rows[i] = acc
        return out

    def __add__(self, other: "RatMatrix") -> "RatMatrix":
        return self._combine(other, Fraction(1))

    def __sub__(self, other: "RatMatrix") -> "RatMatrix":
        return self._combine(other, Fraction(-1))

    def _combine(self, other: "RatMatrix", sign: Fraction) -> "RatMatrix":
        if (self.nrows, self.ncols) != (other.nrows, other.ncols):
            raise ValueError("shape mismatch")
        out = RatMatrix(self.nrows, self.ncols)
        for i in range(self.nrows):
            acc = dict(self.rows[i])
            add_scaled(acc, other.rows[i], sign)
            out.rows[i] = acc
        return out

    def scale(self, c: Fraction | int) -> "RatMatrix":
        c = Fraction(c)
        if c == 0:
            return RatMatrix(self.nrows, self.ncols)
        return RatMatrix(self.nrows, self.ncols, [{j: v * c for j, v in r.items()} for r in self.rows])

    def shift(self, lam: Fraction | int) -> "RatMatrix":
        """Return ``self - lam * I``."""
        return self - RatMatrix.identity(self.nrows).scale(lam)

    def rank(self) -> int:
        ech = Echelon()
        for r in self.rows:
            ech.add(r)
        return len(ech.rows)

    def kernel(self) -> list[SparseVec]:
        return kernel(self.rows, self.ncols)

    def column_space(self) -> Subspace:
        return Subspace(self.nrows, self.columns())

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, RatMatrix)
            and (self.nrows, self.ncols) == (other.nrows, other.ncols)
            and all(vec_to_key(a) == vec_to_key(b) for a, b in zip(self.rows, other.rows))
        )

    def __repr__(self) -> str:
        return f"RatMatrix({self.nrows}x{self.ncols}, nnz={self.nnz()})"


def solve_dense(a: Sequence[Sequence], b: Sequence) -> list:
    """Solve ``a x = b`` exactly by Gauss-Jordan elimination.

    Entries may be any exact field type supporting ``+ - * /`` and
    comparison with zero (Fraction or the Gaussian rationals of
    :mod:`liecheck.model_rep`).  Raises ValueError for singular systems.
    """
    n = len(a)
    m = [list(row) + [b[i]] for i, row in enumerate(a)]
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col] != 0), None)
        if piv is None:
            raise ValueError("singular system")
        m[col], m[piv] = m[piv], m[col]
        inv = 1 / m[col][col]
        m[col] = [v * inv for v in m[col]]
        for r in range(n):
            if r != col and m[r][col] != 0:
                f = m[r][col]
                m[r] = [x - f * y for x, y in zip(m[r], m[col])]
    return [m[i][n] for i in range(n)]
