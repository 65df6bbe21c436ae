"""Named objects built on top of a Chevalley basis.

* ``uv_sets``: the nine ``U^eps`` / ``V^eps`` families of root vectors
  (eigenvalue 1 or 2, resp. -1 or -2, for ``ad_X``).
* ``split_uv_sets``: the subfamilies commuting with ``u_{+-(L3-L4)}`` and with
  ``u_{+-(L5-L6)}``.
* ``abelian_basis``: the abelian unipotent bases ``D``.
* ``base_sl2``: the base triple ``(X, U, V)``, ``Theta = U - V``, the
  centralizer ``g1_perp`` of ``U`` and ``V``, and ``E0``.
* ``chain_config``: generator chains ``(Q_1, ..., Q_n)`` for the smoothing
  lemma together with the target algebra ``Lie(Q)``.

Index conventions.  Set-builder indices such as ``i odd, j even`` range over
all ambient coordinates ``1..N``.  Candidate vectors that are not roots of the
algebra are dropped, which is how the ``E_6``/``E_7`` index ranges and the
half-spin sign patterns are resolved.

Two readings of the ``U``/``V`` index ranges are available.  The default
(``literal=False``) uses ``j >= 3`` for slots 4 and 5 of types B, D, E, F and
``j >= 2`` for ``U^2``, ``V^1``, ``V^2`` of type C.  With ``literal=True`` the
printed ranges ``j != 3`` / ``j != 2`` are used verbatim with ``j`` running
over every coordinate; the verifier reports that reading separately because
it places eigenvalue-0 (and, for C, eigenvalue-2) vectors in eigenvalue-1
families.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .lie_core import (
    HALF,
    Coords,
    Element,
    LieAlgebra,
    LieError,
    bracket,
    centralizer,
    format_coords,
    sl2_triple_for_root,
)
from .linalg import Subspace

Q0 = 9


def _vec(n: int, terms: Iterable[tuple[int, Fraction | int]]) -> Coords:
    v = [Fraction(0)] * n
    for i, c in terms:
        v[i - 1] += Fraction(c)
    return tuple(v)


def _roots_only(alg: LieAlgebra, cands: Iterable[Coords]) -> tuple[Coords, ...]:
    """Keep candidates that are roots, deduplicated, in first-seen order."""
    seen: dict[Coords, None] = {}
    for c in cands:
        if alg.is_root(c) and c not in seen:
            seen[c] = None
    return tuple(seen)


@dataclass(frozen=True)
class UVFamily:
    """The ``U^eps`` and ``V^eps`` root-vector families, ``eps = 1..9``."""

    type_tag: str
    u_roots: tuple[tuple[Coords, ...], ...]
    v_roots: tuple[tuple[Coords, ...], ...]
    algebra: LieAlgebra
    literal: bool = False

    def u_set(self, eps: int) -> list[Element]:
        return [self.algebra.root_vector(c) for c in self.u_roots[eps - 1]]

    def v_set(self, eps: int) -> list[Element]:
        return [self.algebra.root_vector(c) for c in self.v_roots[eps - 1]]

    @property
    def u_sets(self) -> list[list[Element]]:
        return [self.u_set(e) for e in range(1, Q0 + 1)]

    @property
    def v_sets(self) -> list[list[Element]]:
        return [self.v_set(e) for e in range(1, Q0 + 1)]

    def to_json(self) -> dict:
        return {
            "type": self.type_tag,
            "literal": self.literal,
            "U": {str(e + 1): [format_coords(c) for c in s] for e, s in enumerate(self.u_roots)},
            "V": {str(e + 1): [format_coords(c) for c in s] for e, s in enumerate(self.v_roots)},
        }


@dataclass(frozen=True)
class SplitUVFamily:
    """Per-slot subfamilies commuting with ``u_{+-(L3-L4)}`` (c1) and ``u_{+-(L5-L6)}`` (c2)."""

    base: UVFamily
    c1_u: tuple[tuple[Coords, ...], ...]
    c1_v: tuple[tuple[Coords, ...], ...]
    c2_u: tuple[tuple[Coords, ...], ...]
    c2_v: tuple[tuple[Coords, ...], ...]

    def to_json(self) -> dict:
        def dump(sets: tuple[tuple[Coords, ...], ...]) -> dict:
            return {str(e + 1): [format_coords(c) for c in s] for e, s in enumerate(sets)}

        return {"U1": dump(self.c1_u), "U2": dump(self.c2_u), "V1": dump(self.c1_v), "V2": dump(self.c2_v)}


@dataclass(frozen=True)
class AbelianBasis:
    """A basis ``D`` of root vectors with the cardinality claimed for it."""

    type_tag: str
    roots: tuple[Coords, ...]
    elements: tuple[Element, ...]
    claimed_cardinality: int
    formula: str

    def to_json(self) -> dict:
        return {
            "type": self.type_tag,
            "claimed_cardinality": self.claimed_cardinality,
            "formula": self.formula,
            "roots": [format_coords(c) for c in self.roots],
        }


@dataclass(frozen=True)
class BaseSL2Data:
    """Base ``sl_2`` triple and its companions."""

    X: Element
    U: Element
    V: Element
    g1_perp: Subspace
    theta: Element
    e0: tuple[Element, ...]
    phi: Coords


@dataclass(frozen=True)
class ChainFactor:
    label: str
    generators: tuple[Element, ...]
    span: Subspace


@dataclass(frozen=True)
class ChainConfig:
    """An ordered chain ``(Q_1, ..., Q_n)`` plus the algebra ``Lie(Q)`` it should sum to."""

    name: str
    factors: tuple[ChainFactor, ...]
    target: Subspace
    target_label: str


# --------------------------------------------------------------------- U / V


def _check_coordinates(alg: LieAlgebra, needed: int) -> None:
    n = alg.root_system.ambient_dim
    if needed > n:
        raise LieError(f"{alg.tag} has no coordinate L{n + 1} required by the U/V families")


def _uv_roots(alg: LieAlgebra, literal: bool) -> tuple[list[tuple[Coords, ...]], list[tuple[Coords, ...]]]:
    t = alg.root_system.lie_type
    n = alg.root_system.ambient_dim
    if t == "G":
        raise LieError("the U/V families are not defined for G2")
    _check_coordinates(alg, 8 if t == "E" else 2)
    J = range(1, n + 1)
    u: list[list[Coords]] = [[] for _ in range(Q0)]
    v: list[list[Coords]] = [[] for _ in range(Q0)]

    def put(target: list[list[Coords]], eps: int, cands: Iterable[Coords]) -> None:
        target[eps - 1] = list(_roots_only(alg, cands))

    if t == "C":
        u2_range = [j for j in J if j != 2] if literal else [j for j in J if j >= 2]
        put(u, 1, (_vec(n, [(1, 1), (j, -1)]) for j in J if j >= 2))
        put(u, 2, (_vec(n, [(1, 1), (j, 1)]) for j in u2_range))
        put(u, 3, [_vec(n, [(1, 2)])])
        put(v, 1, (_vec(n, [(1, -1), (j, 1)]) for j in u2_range))
        put(v, 2, (_vec(n, [(1, -1), (j, -1)]) for j in u2_range))
        put(v, 3, [_vec(n, [(1, -2)])])
    else:
        put(u, 1, (_vec(n, [(1, 1), (j, -1)]) for j in J if j >= 3))
        put(u, 2, (_vec(n, [(j, 1), (2, -1)]) for j in J if j >= 3))
        put(u, 3, [_vec(n, [(1, 1), (2, -1)])])
        put(v, 1, (_vec(n, [(j, 1), (1, -1)]) for j in J if j >= 3))
        put(v, 2, (_vec(n, [(2, 1), (j, -1)]) for j in J if j >= 3))
        put(v, 3, [_vec(n, [(2, 1), (1, -1)])])
    if t in ("B", "D", "E", "F"):
        ne3 = [j for j in J if j != 3] if literal else [j for j in J if j >= 3]
        ne2 = [j for j in J if j != 2] if literal else [j for j in J if j >= 3]
        put(u, 4, (_vec(n, [(1, 1), (j, 1)]) for j in ne3))
        put(u, 5, (_vec(n, [(2, -1), (j, -1)]) for j in ne3))
        put(v, 4, (_vec(n, [(j, -1), (1, -1)]) for j in ne2))
        put(v, 5, (_vec(n, [(j, 1), (2, 1)]) for j in ne2))
    if t in ("B", "F"):
        put(u, 6, [_vec(n, [(1, 1)])])
        put(u, 7, [_vec(n, [(2, -1)])])
        put(v, 6, [_vec(n, [(1, -1)])])
        put(v, 7, [_vec(n, [(2, 1)])])
    if t == "F":
        for s3 in (1, -1):
            u[7].append(_vec(4, [(1, HALF), (2, -HALF), (3, s3 * HALF), (4, HALF)]))
            u[8].append(_vec(4, [(1, HALF), (2, -HALF), (3, s3 * HALF), (4, -HALF)]))
            v[7].append(_vec(4, [(1, -HALF), (2, HALF), (3, s3 * HALF), (4, HALF)]))
            v[8].append(_vec(4, [(1, -HALF), (2, HALF), (3, s3 * HALF), (4, -HALF)]))
        for lst in (u, v):
            for k in (7, 8):
                lst[k] = list(_roots_only(alg, lst[k]))
    if t == "E":

        def half_set(s8: int, s1: int, s2: int) -> list[Coords]:
            out = []
            for signs in itertools.product((1, -1), repeat=5):
                terms = [(8, s8 * HALF), (1, s1 * HALF), (2, s2 * HALF)]
                terms += [(i, s * HALF) for i, s in zip(range(3, 8), signs)]
                out.append(_vec(8, terms))
            return out

        put(u, 6, half_set(1, 1, -1))
        put(u, 7, half_set(-1, 1, -1))
        put(v, 6, half_set(1, -1, 1))
        put(v, 7, half_set(-1, -1, 1))
    return [tuple(s) for s in u], [tuple(s) for s in v]


def uv_sets(alg: LieAlgebra, literal: bool = False) -> UVFamily:
    """Materialize the ``U^eps`` / ``V^eps`` families of ``alg``."""
    u, v = _uv_roots(alg, literal)
    return UVFamily(alg.tag, tuple(u), tuple(v), alg, literal)


def _commutes_with_pair(alg: LieAlgebra, c: Coords, pair: Coords) -> bool:
    x = alg.root_vector(c)
    neg = tuple(-a for a in pair)
    return bracket(x, alg.root_vector(pair)).is_zero() and bracket(x, alg.root_vector(neg)).is_zero()


def _pair_roots(alg: LieAlgebra) -> tuple[Coords, Coords]:
    n = alg.root_system.ambient_dim
    if n < 6:
        raise LieError(f"{alg.tag} lacks the coordinates L5, L6 needed for the split families")
    p1 = _vec(n, [(3, 1), (4, -1)])
    p2 = _vec(n, [(5, 1), (6, -1)])
    for p in (p1, p2):
        if not alg.is_root(p):
            raise LieError(f"{format_coords(p)} is not a root of {alg.tag}; the split families need it")
    return p1, p2


def split_uv_sets(alg: LieAlgebra, base: UVFamily | None = None) -> SplitUVFamily:
    """Subfamilies commuting with ``u_{+-(L3-L4)}`` resp. ``u_{+-(L5-L6)}``."""
    base = base or uv_sets(alg)
    p1, p2 = _pair_roots(alg)

    def filt(sets: tuple[tuple[Coords, ...], ...], pair: Coords) -> tuple[tuple[Coords, ...], ...]:
        return tuple(tuple(c for c in s if _commutes_with_pair(alg, c, pair)) for s in sets)

    return SplitUVFamily(base, filt(base.u_roots, p1), filt(base.v_roots, p1), filt(base.u_roots, p2), filt(base.v_roots, p2))


# --------------------------------------------------------------------- D


def _odd(n: int) -> list[int]:
    return [i for i in range(1, n + 1) if i % 2 == 1]


def _even(n: int) -> list[int]:
    return [i for i in range(1, n + 1) if i % 2 == 0]


def _bcd_family(n: int) -> list[Coords]:
    """``u_{L_i-L_j}, u_{-L_k-L_l}, u_{L_m+L_p}`` with ``i,m,p`` odd and ``j,k,l`` even."""
    out = []
    for i in _odd(n):
        for j in _even(n):
            out.append(_vec(n, [(i, 1), (j, -1)]))
    for k in _even(n):
        for l in _even(n):
            out.append(_vec(n, [(k, -1), (l, -1)]))
    for m in _odd(n):
        for p in _odd(n):
            out.append(_vec(n, [(m, 1), (p, 1)]))
    return out


def _abelian_roots(alg: LieAlgebra) -> tuple[list[Coords], int, str]:
    rs = alg.root_system
    t, r, n = rs.lie_type, rs.rank, rs.ambient_dim
    if t == "A" and r >= 4:
        cands = [_vec(n, [(i, 1), (j, -1)]) for i in _odd(n) for j in _even(n)]
        return cands, (r + 1) ** 2 // 4, "floor((n+1)^2/4)"
    if t == "B" and r == 3:
        cands = [_vec(3, [(1, 1)]), _vec(3, [(1, 1), (2, -1)]), _vec(3, [(1, 1), (3, -1)]),
                 _vec(3, [(1, 1), (2, 1)]), _vec(3, [(1, 1), (3, 1)])]
        return cands, 5, "5"
    if t == "B" and r >= 5:
        return [_vec(n, [(1, 1)])] + _bcd_family(n), r * (r - 1) // 2 + 1, "n(n-1)/2+1"
    if t == "C" and r >= 3:
        cands = [_vec(n, [(t_, 2)]) for t_ in _odd(n)] + [_vec(n, [(l, -2)]) for l in _even(n)]
        return cands + _bcd_family(n), r * (r + 1) // 2, "n(n+1)/2"
    if t == "D" and r >= 5:
        return _bcd_family(n), r * (r - 1) // 2, "n(n-1)/2"
    if t == "F":
        cands = [_vec(4, [(1, 1)])] + _bcd_family(4)
        cands.append(_vec(4, [(1, HALF), (2, -HALF), (3, HALF), (4, -HALF)]))
        cands.append(_vec(4, [(1, HALF), (2, HALF), (3, HALF), (4, -HALF)]))
        return cands, 9, "9"
    if t == "E":
        cands: list[Coords] = []
        if r == 6:
            for signs in itertools.product((0, 1), repeat=4):
                if sum(signs) % 2 == 0:
                    terms = [(8, HALF), (7, -HALF), (6, -HALF), (1, HALF)]
                    terms += [(i, HALF * (-1) ** s) for i, s in zip(range(2, 6), signs)]
                    cands.append(_vec(8, terms))
            top = 5
        elif r == 7:
            for signs in itertools.product((0, 1), repeat=5):
                if sum(signs) % 2 == 1:
                    terms = [(8, HALF), (7, -HALF), (1, HALF)]
                    terms += [(i, HALF * (-1) ** s) for i, s in zip(range(2, 7), signs)]
                    cands.append(_vec(8, terms))
            top = 6
        else:
            for signs in itertools.product((0, 1), repeat=7):
                if sum(signs) in (0, 2):
                    terms = [(1, HALF)] + [(i, HALF * (-1) ** s) for i, s in zip(range(2, 9), signs)]
                    cands.append(_vec(8, terms))
            top = 8
        for j in range(2, top + 1):
            cands.append(_vec(8, [(1, 1), (j, 1)]))
            cands.append(_vec(8, [(1, 1), (j, -1)]))
        if r == 7:
            cands.append(_vec(8, [(8, 1), (7, -1)]))
        return cands, {6: 16, 7: 27, 8: 36}[r], str({6: 16, 7: 27, 8: 36}[r])
    raise LieError(
        f"no abelian basis D is listed for {alg.tag} "
        "(listed: A n>=4, B n>=5, B3, C n>=3, D n>=5, E6, E7, E8, F4)"
    )


def abelian_basis(alg: LieAlgebra) -> AbelianBasis:
    """Enumerate the basis ``D`` of ``alg`` with its claimed cardinality."""
    cands, claimed, formula = _abelian_roots(alg)
    roots = _roots_only(alg, cands)
    return AbelianBasis(alg.tag, roots, tuple(alg.root_vector(c) for c in roots), claimed, formula)


def abelian_basis_from_roots(alg: LieAlgebra, roots: Sequence[Sequence[Fraction | int]], claimed: int | None = None) -> AbelianBasis:
    """Build an ad hoc basis (used for fixtures and counterexamples)."""
    rs = tuple(tuple(Fraction(x) for x in c) for c in roots)
    return AbelianBasis(alg.tag, rs, tuple(alg.root_vector(c) for c in rs), len(rs) if claimed is None else claimed, "fixture")


# --------------------------------------------------------------------- sl2


def base_root(alg: LieAlgebra) -> Coords:
    n = alg.root_system.ambient_dim
    if alg.root_system.lie_type == "C":
        return _vec(n, [(1, 2)])
    return _vec(n, [(1, 1), (2, -1)])


def base_sl2(alg: LieAlgebra, require_e0: bool = True) -> BaseSL2Data:
    """Base triple at ``L1-L2`` (``2L1`` for type C) with ``g1_perp`` and ``E0``."""
    if alg.root_system.lie_type == "G":
        raise LieError("the base sl2 data is not defined for G2")
    phi = base_root(alg)
    X, U, V = sl2_triple_for_root(alg, phi)
    perp = centralizer([U, V])
    try:
        p1, p2 = _pair_roots(alg)
        e0 = (alg.root_vector(p1), alg.root_vector(p2))
    except LieError:
        if require_e0:
            raise
        e0 = ()
    return BaseSL2Data(X, U, V, perp, U - V, e0, phi)


# --------------------------------------------------------------------- chains

CHAIN_NAMES = ("uv_step1", "uv_step2", "split_step1", "split_step2")


def _factor(label: str, gens: Sequence[Element], n: int) -> ChainFactor:
    return ChainFactor(label, tuple(gens), Subspace(n, (g.vec for g in gens)))


def chain_config(
    alg: LieAlgebra,
    which: str,
    order: Sequence[int] | None = None,
    literal: bool = False,
) -> ChainConfig:
    """Generator chain for the smoothing lemma.

    ``uv_step1``: ``Q_1 = Lie(S_1) = span{X, U} + g1_perp`` followed by the
    nonempty ``V^eps``; the target is ``Lie(S)``, modelled as the span of
    ``Lie(S_1)`` and every ``V^eps``.
    ``uv_step2``: ``Q_1 = Lie(S)`` followed by the nonempty ``U^eps``; the
    target is the whole algebra.
    ``split_*``: the same with each family replaced by its two split
    subfamilies, interleaved.
    """
    if which not in CHAIN_NAMES:
        raise LieError(f"unknown chain {which!r}; expected one of {CHAIN_NAMES}")
    order = list(order) if order is not None else list(range(1, Q0 + 1))
    if sorted(order) != list(range(1, Q0 + 1)):
        raise LieError("the slot order must be a permutation of 1..9")
    n = alg.dim
    base = base_sl2(alg, require_e0=False)
    fam = uv_sets(alg, literal=literal)
    s1_vecs = [base.X.vec, base.U.vec] + base.g1_perp.basis()
    lie_s1 = Subspace(n, s1_vecs)
    v_all = [e for eps in range(1, Q0 + 1) for e in fam.v_set(eps)]
    lie_s = Subspace(n, s1_vecs + [e.vec for e in v_all])
    full = Subspace.full(n)

    def basis_elems(space: Subspace) -> list[Element]:
        return [alg.element(v) for v in space.basis()]

    factors: list[ChainFactor] = []
    if which.endswith("step1"):
        factors.append(ChainFactor("Lie(S1)", tuple(basis_elems(lie_s1)), lie_s1))
        target, target_label = lie_s, "Lie(S)"
        letter = "V"
    else:
        factors.append(ChainFactor("Lie(S)", tuple(basis_elems(lie_s)), lie_s))
        target, target_label = full, "g"
        letter = "U"
    if which.startswith("uv_"):
        for eps in order:
            gens = fam.v_set(eps) if letter == "V" else fam.u_set(eps)
            if gens:
                factors.append(_factor(f"{letter}^{eps}", gens, n))
    else:
        split = split_uv_sets(alg, fam)
        s1 = split.c1_v if letter == "V" else split.c1_u
        s2 = split.c2_v if letter == "V" else split.c2_u
        for eps in order:
            for idx, sets in ((1, s1), (2, s2)):
                gens = [alg.root_vector(c) for c in sets[eps - 1]]
                if gens:
                    factors.append(_factor(f"{letter}_{idx}^{eps}", gens, n))
    return ChainConfig(which, tuple(factors), target, target_label)


def chain_from_sets(alg: LieAlgebra, sets: Sequence[Sequence[Element]], target: Subspace | None = None) -> ChainConfig:
    """Ad hoc chain from explicit generator sets; target defaults to their joint span."""
    n = alg.dim
    factors = tuple(_factor(f"Q{i + 1}", s, n) for i, s in enumerate(sets))
    if target is None:
        target = Subspace(n, (g.vec for f in factors for g in f.generators))
    return ChainConfig("custom", factors, target, "span")


def family_eigenvalues(X: Element, elements: Sequence[Element]) -> list[Fraction | None]:
    """Eigenvalue of each element under ``ad_X`` (None when it is not an eigenvector)."""
    out: list[Fraction | None] = []
    for e in elements:
        b = bracket(X, e)
        ev: Fraction | None = None
        if b.is_zero():
            ev = Fraction(0)
        else:
            ratios = {bi: c for bi, c in b.coeffs}
            ev_keys = dict(e.coeffs)
            if set(ratios) == set(ev_keys):
                vals = {ratios[k] / ev_keys[k] for k in ev_keys}
                if len(vals) == 1:
                    ev = vals.pop()
        out.append(ev)
    return out

