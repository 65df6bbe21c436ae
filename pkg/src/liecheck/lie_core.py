"""Split simple Lie algebras over Q in L-coordinates.

Roots are written in the orthonormal coordinates ``L_1, ..., L_N`` used by
the constructions in :mod:`liecheck.constructions`:

* ``A_n``: ``L_i - L_j`` in ``N = n + 1`` coordinates.
* ``B_n``: ``+-L_i +- L_j`` and ``+-L_i``.
* ``C_n``: ``+-L_i +- L_j`` and ``+-2L_i``.
* ``D_n``: ``+-L_i +- L_j``.
* ``E_8``: ``+-L_i +- L_j`` and ``1/2 sum (-1)^{n_i} L_i`` with an even number
  of minus signs.
* ``E_7``: the ``E_8`` roots orthogonal to ``L_7 + L_8``.
* ``E_6``: the ``E_8`` roots orthogonal to ``L_7 + L_8`` and ``L_6 + L_8``.
* ``F_4``: ``+-L_i +- L_j``, ``+-L_i`` and ``1/2(+-L_1 +- L_2 +- L_3 +- L_4)``.
* ``G_2``: ``+-(L_i - L_j)`` and ``+-(2L_i - L_j - L_k)`` in 3 coordinates.

A root is positive when its first nonzero coordinate is positive.  Simple
roots are the positive roots that are not a sum of two positive roots.

Structure constants come from the extraspecial-pair algorithm.  Positive
roots are totally ordered by height, then lexicographically by their
simple-root coordinates.  For every non-simple positive root ``xi`` the
extraspecial pair ``(alpha, beta)`` has ``alpha`` minimal with ``xi - alpha``
positive, and ``N_{alpha,beta} = p + 1 > 0`` where ``p`` is maximal with
``beta - p alpha`` a root.  All other constants follow from the Chevalley
relations ``N_{-r,-s} = -N_{r,s}``, ``[e_r, e_{-r}] = h_r`` (the coroot), and
the standard three- and four-root identities.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Mapping, Sequence

from .linalg import Echelon, RatMatrix, SparseVec, Subspace, add_scaled, clean, kernel, vec_to_key

Coords = tuple[Fraction, ...]

SUPPORTED_RANKS: dict[str, tuple[int, int]] = {
    "A": (1, 8),
    "B": (2, 8),
    "C": (2, 8),
    "D": (2, 8),
    "E": (6, 8),
    "F": (4, 4),
    "G": (2, 2),
}

HALF = Fraction(1, 2)


class LieError(ValueError):
    """Raised on invalid input to a Lie-theoretic operation."""


def _f(xs: Iterable[int | Fraction]) -> Coords:
    return tuple(Fraction(x) for x in xs)


def dot(x: Sequence[Fraction], y: Sequence[Fraction]) -> Fraction:
    return sum((a * b for a, b in zip(x, y)), Fraction(0))


def vadd(x: Sequence[Fraction], y: Sequence[Fraction]) -> Coords:
    return tuple(a + b for a, b in zip(x, y))


def vsub(x: Sequence[Fraction], y: Sequence[Fraction]) -> Coords:
    return tuple(a - b for a, b in zip(x, y))


def vneg(x: Sequence[Fraction]) -> Coords:
    return tuple(-a for a in x)


def vscale(c: Fraction | int, x: Sequence[Fraction]) -> Coords:
    return tuple(c * a for a in x)


def pairing(beta: Sequence[Fraction], alpha: Sequence[Fraction]) -> Fraction:
    """Cartan pairing ``<beta, alpha^vee> = 2 (beta, alpha) / (alpha, alpha)``."""
    return 2 * dot(beta, alpha) / dot(alpha, alpha)


def L(n: int, *terms: tuple[int, int | Fraction]) -> Coords:
    """Build ``sum c * L_i`` from ``(i, c)`` pairs (1-based indices)."""
    v = [Fraction(0)] * n
    for i, c in terms:
        v[i - 1] += Fraction(c)
    return tuple(v)


def format_coords(coords: Sequence[Fraction]) -> str:
    """Human-readable ``L``-expression, e.g. ``L1-L2`` or ``1/2(L1-L2+L3+L4)``."""
    nz = [(i + 1, c) for i, c in enumerate(coords) if c != 0]
    if not nz:
        return "0"
    if all(abs(c) == HALF for _, c in nz):
        inner = "".join(("+" if c > 0 else "-") + f"L{i}" for i, c in nz)
        return "1/2(" + inner.lstrip("+") + ")"
    parts = []
    for i, c in nz:
        sign = "+" if c > 0 else "-"
        mag = abs(c)
        coef = "" if mag == 1 else str(mag)
        parts.append(f"{sign}{coef}L{i}")
    return "".join(parts).lstrip("+")


@dataclass(frozen=True, order=True)
class Root:
    """A root in L-coordinates with its length class."""

    coords: Coords
    length_class: str = field(default="long", compare=False)

    def __post_init__(self) -> None:
        if all(c == 0 for c in self.coords):
            raise LieError("a root must be nonzero")

    @property
    def norm2(self) -> Fraction:
        return dot(self.coords, self.coords)

    def __neg__(self) -> "Root":
        return Root(vneg(self.coords), self.length_class)

    def __str__(self) -> str:
        return format_coords(self.coords)


def _raw_roots(lie_type: str, rank: int) -> tuple[int, list[Coords]]:
    """Return ``(ambient_dim, roots)`` for a validated type and rank."""
    out: list[Coords] = []

    def pm_pairs(n: int, upto: int) -> None:
        for i in range(upto):
            for j in range(i + 1, upto):
                for si in (1, -1):
                    for sj in (1, -1):
                        v = [0] * n
                        v[i], v[j] = si, sj
                        out.append(_f(v))

    if lie_type == "A":
        n = rank + 1
        for i in range(n):
            for j in range(n):
                if i != j:
                    out.append(L(n, (i + 1, 1), (j + 1, -1)))
        return n, out
    if lie_type in ("B", "C", "D"):
        n = rank
        pm_pairs(n, n)
        if lie_type != "D":
            c = 1 if lie_type == "B" else 2
            for i in range(n):
                out.append(L(n, (i + 1, c)))
                out.append(L(n, (i + 1, -c)))
        return n, out
    if lie_type == "F":
        n = 4
        pm_pairs(n, n)
        for i in range(n):
            out.append(L(n, (i + 1, 1)))
            out.append(L(n, (i + 1, -1)))
        for signs in itertools.product((1, -1), repeat=4):
            out.append(tuple(HALF * s for s in signs))
        return n, out
    if lie_type == "G":
        n = 3
        for i in range(3):
            for j in range(3):
                if i != j:
                    out.append(L(n, (i + 1, 1), (j + 1, -1)))
            t = [-1, -1, -1]
            t[i] = 2
            out.append(_f(t))
            out.append(_f(-x for x in t))
        return n, out
    if lie_type == "E":
        n = 8
        e8: list[Coords] = []
        for i in range(8):
            for j in range(i + 1, 8):
                for si in (1, -1):
                    for sj in (1, -1):
                        v = [0] * 8
                        v[i], v[j] = si, sj
                        e8.append(_f(v))
        for signs in itertools.product((1, -1), repeat=8):
            if sum(1 for s in signs if s < 0) % 2 == 0:
                e8.append(tuple(HALF * s for s in signs))
        if rank == 8:
            return n, e8
        constraints = [L(8, (7, 1), (8, 1))]
        if rank == 6:
            constraints.append(L(8, (6, 1), (8, 1)))
        return n, [r for r in e8 if all(dot(r, c) == 0 for c in constraints)]
    raise LieError(f"unsupported Lie type {lie_type!r}")


def normalize_type(lie_type: str, rank: int | None = None) -> tuple[str, int]:
    """Accept ``("E", 8)``, ``("E8", None)`` or ``("E8", 8)`` style input."""
    t = str(lie_type).strip().upper()
    if len(t) > 1:
        letter, rest = t[0], t[1:]
        if not rest.isdigit():
            raise LieError(f"cannot parse Lie type {lie_type!r}")
        r = int(rest)
        if rank is not None and int(rank) != r:
            raise LieError(f"type {lie_type!r} conflicts with rank {rank}")
        t, rank = letter, r
    if rank is None:
        raise LieError("rank is required")
    rank = int(rank)
    if t not in SUPPORTED_RANKS:
        raise LieError(f"unsupported Lie type {lie_type!r}; expected one of {sorted(SUPPORTED_RANKS)}")
    lo, hi = SUPPORTED_RANKS[t]
    if not lo <= rank <= hi:
        raise LieError(f"rank {rank} unsupported for type {t} (supported: {lo}..{hi})")
    return t, rank


@dataclass(frozen=True)
class RootSystem:
    """An irreducible reduced root system in L-coordinates."""

    lie_type: str
    rank: int
    ambient_dim: int
    roots: tuple[Root, ...]
    simple_roots: tuple[Root, ...]

    @property
    def tag(self) -> str:
        return f"{self.lie_type}{self.rank}"

    @cached_property
    def coord_set(self) -> frozenset[Coords]:
        return frozenset(r.coords for r in self.roots)

    def is_root(self, coords: Sequence[Fraction]) -> bool:
        return tuple(coords) in self.coord_set

    def root(self, coords: Sequence[Fraction | int]) -> Root:
        c = _f(coords)
        if c not in self.coord_set:
            raise LieError(f"{format_coords(c)} is not a root of {self.tag}")
        return self._by_coords[c]

    @cached_property
    def _by_coords(self) -> dict[Coords, Root]:
        return {r.coords: r for r in self.roots}

    def is_positive(self, coords: Sequence[Fraction]) -> bool:
        for c in coords:
            if c != 0:
                return c > 0
        return False

    @cached_property
    def positive_roots(self) -> tuple[Root, ...]:
        return tuple(r for r in self.roots if self.is_positive(r.coords))

    @cached_property
    def _simple_solver(self) -> tuple[list[int], list[list[Fraction]]]:
        """Columns and inverse matrix to express vectors in simple-root coordinates."""
        simple = [list(r.coords) for r in self.simple_roots]
        r, n = len(simple), self.ambient_dim
        # Choose r independent ambient columns of the r x n matrix.
        cols: list[int] = []
        for j in range(n):
            trial = cols + [j]
            sub = [[simple[i][c] for c in trial] for i in range(r)]
            if _rank_dense(sub) == len(trial):
                cols = trial
            if len(cols) == r:
                break
        m = [[simple[i][c] for i in range(r)] for c in cols]  # m[c][i]
        return cols, _invert_dense(m)

    def simple_coords(self, coords: Sequence[Fraction]) -> tuple[Fraction, ...]:
        """Coefficients of ``coords`` in the simple-root basis."""
        cols, inv = self._simple_solver
        rhs = [coords[c] for c in cols]
        sol = tuple(sum((inv[i][k] * rhs[k] for k in range(len(rhs))), Fraction(0)) for i in range(len(rhs)))
        back = [sum((sol[i] * self.simple_roots[i].coords[j] for i in range(len(sol))), Fraction(0)) for j in range(self.ambient_dim)]
        if tuple(back) != tuple(coords):
            raise LieError(f"{format_coords(coords)} is not in the span of the simple roots")
        return sol

    def height(self, coords: Sequence[Fraction]) -> Fraction:
        return sum(self.simple_coords(coords), Fraction(0))

    def reflect(self, alpha: Sequence[Fraction], beta: Sequence[Fraction]) -> Coords:
        """``s_alpha(beta) = beta - <beta, alpha^vee> alpha``."""
        return vsub(beta, vscale(pairing(beta, alpha), alpha))

    def to_json(self) -> dict:
        return {
            "type": self.lie_type,
            "rank": self.rank,
            "ambient_dim": self.ambient_dim,
            "simple_roots": [[str(c) for c in r.coords] for r in self.simple_roots],
            "roots": [[str(c) for c in r.coords] for r in sorted(self.roots)],
        }


def _rank_dense(m: list[list[Fraction]]) -> int:
    rows = [{j: v for j, v in enumerate(r) if v != 0} for r in m]
    return RatMatrix(len(rows), len(m[0]) if m else 0, rows).rank()


def _invert_dense(m: list[list[Fraction]]) -> list[list[Fraction]]:
    n = len(m)
    a = [list(row) + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(m)]
    for col in range(n):
        piv = next(r for r in range(col, n) if a[r][col] != 0)
        a[col], a[piv] = a[piv], a[col]
        inv = 1 / a[col][col]
        a[col] = [v * inv for v in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return [row[n:] for row in a]


def build_root_system(lie_type: str, rank: int | None = None) -> RootSystem:
    """Construct the root system of a split simple Lie algebra."""
    t, r = normalize_type(lie_type, rank)
    ambient, raw = _raw_roots(t, r)
    raw = sorted(set(raw))
    max_norm = max(dot(x, x) for x in raw)
    roots = tuple(Root(x, "long" if dot(x, x) == max_norm else "short") for x in raw)
    pos = [x for x in roots if next(c for c in x.coords if c != 0) > 0]
    pos_set = {x.coords for x in pos}
    simple = []
    for x in pos:
        if not any(vsub(x.coords, y.coords) in pos_set for y in pos if y.coords != x.coords):
            simple.append(x)
    simple.sort(key=lambda x: tuple(-c for c in x.coords))
    if len(simple) != r:
        raise LieError(f"internal error: found {len(simple)} simple roots for {t}{r}")
    return RootSystem(t, r, ambient, roots, tuple(simple))


class LieAlgebra:
    """Chevalley basis of the split simple Lie algebra of a root system.

    Basis order: positive roots (by height, then simple coordinates),
    negative roots in the matching order, then the simple coroots
    ``H_1, ..., H_r``.
    """

    def __init__(self, rs: RootSystem) -> None:
        self.root_system = rs
        r = rs.rank
        self._scoords: dict[Coords, tuple[Fraction, ...]] = {x.coords: rs.simple_coords(x.coords) for x in rs.roots}
        key = lambda x: (sum(self._scoords[x.coords]), self._scoords[x.coords])
        pos = sorted(rs.positive_roots, key=key)
        self.positive: tuple[Root, ...] = tuple(pos)
        self.root_order: tuple[Root, ...] = tuple(pos) + tuple(-x for x in pos)
        self.index: dict[Coords, int] = {x.coords: i for i, x in enumerate(self.root_order)}
        self.n_roots = len(self.root_order)
        self.rank = r
        self.dim = self.n_roots + r
        self._rank_in_order = {x.coords: i for i, x in enumerate(pos)}
        self._norm = {x.coords: dot(x.coords, x.coords) for x in rs.roots}
        self._N: dict[tuple[Coords, Coords], int] = {}
        self._extraspecial: dict[Coords, tuple[Coords, Coords]] = {}
        self._compute_extraspecial()
        self._table: dict[tuple[int, int], SparseVec] = {}
        self._ad_cache: dict[int, RatMatrix] = {}

    # ------------------------------------------------------------------ roots
    @property
    def tag(self) -> str:
        return self.root_system.tag

    def is_root(self, coords: Sequence[Fraction]) -> bool:
        return tuple(coords) in self._norm

    def _p(self, alpha: Coords, beta: Coords) -> int:
        """Largest ``p`` with ``beta - p*alpha`` a root."""
        p = 0
        cur = vsub(beta, alpha)
        while self.is_root(cur):
            p += 1
            cur = vsub(cur, alpha)
        return p

    def _compute_extraspecial(self) -> None:
        pos = self.positive
        for xi in pos:
            for a in pos:
                d = vsub(xi.coords, a.coords)
                if self.is_root(d) and self.root_system.is_positive(d):
                    self._extraspecial[xi.coords] = (a.coords, d)
                    break

    def _less(self, r: Coords, s: Coords) -> bool:
        return self._rank_in_order[r] < self._rank_in_order[s]

    def structure_constant(self, r: Sequence[Fraction], s: Sequence[Fraction]) -> int:
        """``N_{r,s}`` with ``[e_r, e_s] = N_{r,s} e_{r+s}`` (0 if ``r+s`` is not a root)."""
        return self._n(tuple(r), tuple(s))

    def _n(self, r: Coords, s: Coords) -> int:
        key = (r, s)
        if key in self._N:
            return self._N[key]
        val = self._n_compute(r, s)
        self._N[key] = val
        return val

    def _n_compute(self, r: Coords, s: Coords) -> int:
        t_sum = vadd(r, s)
        if not self.is_root(t_sum):
            return 0
        pos = self.root_system.is_positive
        rp, sp = pos(r), pos(s)
        if rp and sp:
            if self._less(s, r):
                return -self._n(s, r)
            alpha, beta = self._extraspecial[t_sum]
            n_ab = self._p(alpha, beta) + 1
            if (r, s) == (alpha, beta):
                return n_ab
            # Four-root identity on (r, s, -alpha, -beta) with N_{-a,-b} = -N_{a,b}.
            total = Fraction(0)
            na, nb = vneg(alpha), vneg(beta)
            sa = vsub(s, alpha)
            if self.is_root(sa):
                total += Fraction(self._n(s, na) * self._n(r, nb), self._norm[sa])
            ra = vsub(r, alpha)
            if self.is_root(ra):
                total += Fraction(self._n(na, r) * self._n(s, nb), self._norm[ra])
            val = self._norm[t_sum] * total / n_ab
            if val.denominator != 1:
                raise LieError("internal error: non-integral structure constant")
            return int(val)
        if not rp and not sp:
            return -self._n(vneg(r), vneg(s))
        # Mixed signs: r + s + t = 0 gives N_{r,s}/(t,t) = N_{s,t}/(r,r) = N_{t,r}/(s,s).
        t = vneg(t_sum)
        tt = self._norm[t]
        if pos(t):
            if rp:  # r, t positive
                val = Fraction(tt, self._norm[s]) * self._n(t, r)
            else:  # s, t positive
                val = Fraction(tt, self._norm[r]) * self._n(s, t)
        else:
            if rp:  # s, t negative
                val = Fraction(tt, self._norm[r]) * self._n(s, t)
            else:  # r, t negative
                val = Fraction(tt, self._norm[s]) * self._n(t, r)
        if val.denominator != 1:
            raise LieError("internal error: non-integral structure constant")
        return int(val)

    # ----------------------------------------------------------- basis data
    def coroot_vector(self, coords: Sequence[Fraction]) -> SparseVec:
        """Coordinates of ``h_r`` (the coroot of ``r``) over ``H_1..H_rank``."""
        c = tuple(coords)
        nr = self._norm[c]
        out: SparseVec = {}
        for i, a in enumerate(self.root_system.simple_roots):
            # r^vee = sum_i k_i alpha_i^vee with k_i = k'_i (alpha_i, alpha_i) / (r, r).
            k = self._scoords[c][i] * self._norm[a.coords] / nr
            if k != 0:
                out[self.n_roots + i] = k
        return out

    def cartan_pairing(self, beta: Sequence[Fraction], i: int) -> Fraction:
        """``<beta, alpha_i^vee>`` for the ``i``-th simple root."""
        return pairing(tuple(beta), self.root_system.simple_roots[i].coords)

    def basis_bracket(self, i: int, j: int) -> SparseVec:
        """Bracket of basis vectors ``b_i`` and ``b_j`` as a sparse vector."""
        key = (i, j)
        hit = self._table.get(key)
        if hit is not None:
            return hit
        nr = self.n_roots
        out: SparseVec = {}
        if i < nr and j < nr:
            r, s = self.root_order[i].coords, self.root_order[j].coords
            t = vadd(r, s)
            if all(x == 0 for x in t):
                out = self.coroot_vector(r)
            elif self.is_root(t):
                n = self._n(r, s)
                if n:
                    out = {self.index[t]: Fraction(n)}
        elif i >= nr and j >= nr:
            out = {}
        elif i >= nr:
            s = self.root_order[j].coords
            c = self.cartan_pairing(s, i - nr)
            if c:
                out = {j: c}
        else:
            r = self.root_order[i].coords
            c = self.cartan_pairing(r, j - nr)
            if c:
                out = {i: -c}
        self._table[key] = out
        return out

    def basis_label(self, i: int) -> str:
        if i < self.n_roots:
            return "u[" + format_coords(self.root_order[i].coords) + "]"
        return f"H{i - self.n_roots + 1}"

    # --------------------------------------------------------------- elements
    def element(self, coeffs: Mapping[int, Fraction | int]) -> "Element":
        return Element(self, vec_to_key(clean(coeffs)))

    def zero(self) -> "Element":
        return Element(self, ())

    def basis_element(self, i: int) -> "Element":
        return self.element({i: 1})

    def root_vector(self, coords: Sequence[Fraction | int] | Root) -> "Element":
        c = coords.coords if isinstance(coords, Root) else _f(coords)
        if c not in self.index:
            raise LieError(f"{format_coords(c)} is not a root of {self.tag}")
        return self.basis_element(self.index[c])

    def coroot(self, coords: Sequence[Fraction | int] | Root) -> "Element":
        c = coords.coords if isinstance(coords, Root) else _f(coords)
        if c not in self.index:
            raise LieError(f"{format_coords(c)} is not a root of {self.tag}")
        return self.element(self.coroot_vector(c))

    def cartan(self) -> list["Element"]:
        return [self.basis_element(self.n_roots + i) for i in range(self.rank)]

    def root_of_index(self, i: int) -> Root:
        return self.root_order[i]

    def to_json(self) -> dict:
        """Canonical form: sorted roots and integer structure-constant triples."""
        triples = []
        for r in self.root_order:
            for s in self.root_order:
                n = self._n(r.coords, s.coords)
                if n:
                    triples.append([[str(c) for c in r.coords], [str(c) for c in s.coords], n])
        triples.sort()
        return {"root_system": self.root_system.to_json(), "dim": self.dim, "structure_constants": triples}

    def to_canonical_json(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, separators=(",", ":"))

    def __repr__(self) -> str:
        return f"LieAlgebra({self.tag}, dim={self.dim})"


@dataclass(frozen=True)
class Element:
    """An exact element of a Chevalley-basis Lie algebra."""

    algebra: LieAlgebra = field(repr=False, compare=False, hash=False)
    coeffs: tuple[tuple[int, Fraction], ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "_alg_id", id(self.algebra))

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Element) and self.algebra is other.algebra and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash((id(self.algebra), self.coeffs))

    @property
    def vec(self) -> SparseVec:
        return dict(self.coeffs)

    def is_zero(self) -> bool:
        return not self.coeffs

    def _same(self, other: "Element") -> None:
        if not isinstance(other, Element) or self.algebra is not other.algebra:
            raise LieError("elements belong to different algebras")

    def __add__(self, other: "Element") -> "Element":
        self._same(other)
        v = self.vec
        add_scaled(v, other.vec, Fraction(1))
        return self.algebra.element(v)

    def __sub__(self, other: "Element") -> "Element":
        self._same(other)
        v = self.vec
        add_scaled(v, other.vec, Fraction(-1))
        return self.algebra.element(v)

    def __neg__(self) -> "Element":
        return self.algebra.element({i: -c for i, c in self.coeffs})

    def __mul__(self, c: Fraction | int) -> "Element":
        return self.algebra.element({i: v * c for i, v in self.coeffs})

    __rmul__ = __mul__

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for i, c in self.coeffs:
            lab = self.algebra.basis_label(i)
            parts.append(lab if c == 1 else f"({c})*{lab}")
        return " + ".join(parts)


def chevalley_basis(rs: RootSystem) -> LieAlgebra:
    """Build the Chevalley basis and structure constants of ``rs``."""
    return LieAlgebra(rs)


_ALGEBRAS: dict[tuple[str, int], LieAlgebra] = {}


def algebra(lie_type: str, rank: int | None = None) -> LieAlgebra:
    """Cached ``chevalley_basis(build_root_system(lie_type, rank))``."""
    key = normalize_type(lie_type, rank)
    if key not in _ALGEBRAS:
        _ALGEBRAS[key] = chevalley_basis(build_root_system(*key))
    return _ALGEBRAS[key]


def bracket(x: Element, y: Element) -> Element:
    """Exact Lie bracket ``[x, y]``."""
    x._same(y)
    alg = x.algebra
    out: SparseVec = {}
    for i, a in x.coeffs:
        for j, b in y.coeffs:
            add_scaled(out, alg.basis_bracket(i, j), a * b)
    return alg.element(out)


def _ad_basis(alg: LieAlgebra, i: int) -> RatMatrix:
    m = alg._ad_cache.get(i)
    if m is None:
        cols = [alg.basis_bracket(i, j) for j in range(alg.dim)]
        m = RatMatrix.from_columns(cols, alg.dim)
        alg._ad_cache[i] = m
    return m


def ad_matrix(x: Element) -> RatMatrix:
    """Matrix of ``y -> [x, y]``; column ``j`` holds the coordinates of ``[x, b_j]``."""
    alg = x.algebra
    out = RatMatrix(alg.dim, alg.dim)
    for i, c in x.coeffs:
        m = _ad_basis(alg, i)
        for r, row in enumerate(m.rows):
            if row:
                add_scaled(out.rows[r], row, c)
    return out


def ad_equations(x: Element) -> list[SparseVec]:
    """Rows of ``ad_matrix(x)``, the linear equations of ``[x, y] = 0``."""
    return [r for r in ad_matrix(x).rows if r]


def subspace_of(alg: LieAlgebra, elements: Iterable[Element]) -> Subspace:
    return Subspace(alg.dim, (e.vec for e in elements))


def image_of_ad(u: Element) -> Subspace:
    """Column space of ``ad_matrix(u)`` in canonical form."""
    alg = u.algebra
    vecs = []
    for j in range(alg.dim):
        v: SparseVec = {}
        for i, c in u.coeffs:
            add_scaled(v, alg.basis_bracket(i, j), c)
        if v:
            vecs.append(v)
    return Subspace(alg.dim, vecs)


def centralizer(gens: Sequence[Element]) -> Subspace:
    """``{y : [g, y] = 0 for every g in gens}``."""
    gens = list(gens)
    if not gens:
        raise LieError("centralizer needs a nonempty generator list")
    alg = gens[0].algebra
    rows: list[SparseVec] = []
    for g in gens:
        g._same(gens[0])
        rows.extend(ad_equations(g))
    return Subspace(alg.dim, kernel(rows, alg.dim))


def is_nilpotent(m: RatMatrix, max_power: int | None = None) -> tuple[bool, int]:
    """Return ``(nilpotent, index)`` where ``index`` is the least ``k`` with ``m^k = 0``."""
    limit = max_power if max_power is not None else m.nrows
    p = m
    for k in range(1, limit + 1):
        if p.is_zero():
            return True, k
        p = p @ m
    return p.is_zero(), limit + 1


def eigenspace_decomposition(x: Element) -> dict[Fraction, Subspace]:
    """Eigenspaces of ``ad_x`` keyed by rational eigenvalue.

    Cartan elements are read off directly.  For other elements the
    characteristic polynomial is factored over Q; a non-semisimple ``ad_x``
    is rejected with the size of an offending Jordan block.
    """
    alg = x.algebra
    n = alg.dim
    if all(i >= alg.n_roots for i, _ in x.coeffs):
        groups: dict[Fraction, list[SparseVec]] = {}
        for j, r in enumerate(alg.root_order):
            ev = sum((c * alg.cartan_pairing(r.coords, i - alg.n_roots) for i, c in x.coeffs), Fraction(0))
            groups.setdefault(ev, []).append({j: Fraction(1)})
        groups.setdefault(Fraction(0), []).extend({alg.n_roots + i: Fraction(1)} for i in range(alg.rank))
        return {ev: Subspace(n, vs) for ev, vs in sorted(groups.items())}
    m = ad_matrix(x)
    import sympy

    dense = sympy.Matrix(m.to_dense())
    lam = sympy.Symbol("lam")
    poly = sympy.Poly(dense.charpoly(lam).as_expr(), lam)
    roots = sympy.roots(poly, filter=None)
    out: dict[Fraction, Subspace] = {}
    total = 0
    for rt, mult in sorted(roots.items(), key=lambda kv: str(kv[0])):
        if not rt.is_rational:
            raise LieError(f"ad_x has a non-rational eigenvalue {rt}; not diagonalizable over Q")
        ev = Fraction(int(rt.p), int(rt.q))
        shifted = m.shift(ev)
        space = Subspace(n, shifted.kernel())
        if space.dim < mult:
            raise LieError(
                f"ad_x is not semisimple: eigenvalue {ev} has a Jordan block of size {_block_size(shifted)}"
            )
        out[ev] = space
        total += space.dim
    if total != n:
        raise LieError("ad_x is not diagonalizable over Q")
    return dict(sorted(out.items()))


def _block_size(shifted: RatMatrix) -> int:
    """Largest Jordan block size of a nilpotent-on-its-generalized-eigenspace shift."""
    n = shifted.nrows
    prev = n - shifted.rank()
    p = shifted
    k = 1
    while k < n:
        p = p @ shifted
        cur = n - p.rank()
        if cur == prev:
            return k
        prev, k = cur, k + 1
    return k


def sl2_triple_for_root(alg: LieAlgebra, phi: Sequence[Fraction | int] | Root) -> tuple[Element, Element, Element]:
    """``(X, U, V) = (h_phi, u_phi, u_{-phi})`` with ``[X,U]=2U``, ``[X,V]=-2V``, ``[U,V]=X``."""
    c = phi.coords if isinstance(phi, Root) else _f(phi)
    u = alg.root_vector(c)
    v = alg.root_vector(vneg(c))
    return bracket(u, v), u, v


@dataclass(frozen=True)
class JordanData:
    """Jordan chains of a nilpotent matrix.

    ``chains[k]`` lists ``[N^{m-1} v, ..., N v, v]``, so with the columns of
    ``change_of_basis`` ordered chain by chain, ``N P = P J`` where ``J`` has
    ones on the superdiagonal within each block.
    """

    chains: tuple[tuple[SparseVec, ...], ...]
    block_sizes: tuple[int, ...]
    change_of_basis: RatMatrix

    def jordan_matrix(self) -> RatMatrix:
        n = sum(self.block_sizes)
        j = RatMatrix(n, n)
        pos = 0
        for m in self.block_sizes:
            for k in range(m - 1):
                j.rows[pos + k][pos + k + 1] = Fraction(1)
            pos += m
        return j


def jordan_chains(n_mat: RatMatrix) -> JordanData:
    """Organize a basis into Jordan chains for nilpotent ``n_mat``."""
    n = n_mat.nrows
    if n_mat.ncols != n:
        raise LieError("jordan_chains needs a square matrix")
    ok, index = is_nilpotent(n_mat)
    if not ok:
        raise LieError("jordan_chains needs a nilpotent matrix")
    # Kernels of N^k, k = 0..index-1 (N^index = 0 so K_index is everything).
    kernels: list[Subspace] = [Subspace(n)]
    p = RatMatrix.identity(n)
    for _ in range(1, index):
        p = p @ n_mat
        kernels.append(Subspace(n, p.kernel()))
    kernels.append(Subspace.full(n))
    chains: list[list[SparseVec]] = []
    for k in range(index, 0, -1):
        spanning = [dict(r) for r in kernels[k - 1].rows]
        for ch in chains:
            # Vector of this chain sitting at level k.
            spanning.append(ch[k - 1])
        ech = Echelon()
        for v in spanning:
            ech.add(v)
        for cand in kernels[k].basis():
            if ech.add(cand):
                chain = [cand]
                for _ in range(k - 1):
                    chain.append(n_mat.apply(chain[-1]))
                chain.reverse()
                chains.append(chain)
    chains.sort(key=lambda c: -len(c))
    cols = [v for ch in chains for v in ch]
    pmat = RatMatrix.from_columns(cols, n)
    return JordanData(tuple(tuple(c) for c in chains), tuple(len(c) for c in chains), pmat)
