"""Atomic-measure model of the unitary representation calculus.

A representation of ``R^m`` is modelled by finitely many characters, each
carrying an amplitude and an optional ``sl_2`` label.  Functional calculus
``pi_u(f)`` multiplies amplitudes by ``f(chi)``; Lie algebra directions act
by ``i chi_j``.  Exact Gaussian rational amplitudes are kept exact whenever
the operation allows it, and otherwise amplitudes become Python complex
numbers.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Mapping, Sequence, Union

from .lie_core import LieError, ad_matrix, algebra, jordan_chains
from .linalg import RatMatrix, solve_dense


class ModelError(ValueError):
    """Rejected model input."""


# ------------------------------------------------------------ Gaussian Q


@dataclass(frozen=True)
class GaussianRational:
    """Exact complex number ``re + im*i`` with rational parts."""

    re: Fraction = Fraction(0)
    im: Fraction = Fraction(0)

    def __post_init__(self) -> None:
        object.__setattr__(self, "re", Fraction(self.re))
        object.__setattr__(self, "im", Fraction(self.im))

    @classmethod
    def coerce(cls, x: Any) -> "GaussianRational":
        if isinstance(x, GaussianRational):
            return x
        if isinstance(x, (int, Fraction)):
            return cls(Fraction(x))
        raise TypeError(f"cannot coerce {type(x).__name__} to GaussianRational")

    def __add__(self, o: Any) -> Any:
        if isinstance(o, (float, complex)):
            return complex(self) + o
        o = GaussianRational.coerce(o)
        return GaussianRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self) -> "GaussianRational":
        return GaussianRational(-self.re, -self.im)

    def __sub__(self, o: Any) -> Any:
        return self + (-o)

    def __rsub__(self, o: Any) -> Any:
        return (-self) + o

    def __mul__(self, o: Any) -> Any:
        if isinstance(o, (float, complex)):
            return complex(self) * o
        o = GaussianRational.coerce(o)
        return GaussianRational(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    def abs2(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def __truediv__(self, o: Any) -> Any:
        if isinstance(o, (float, complex)):
            return complex(self) / o
        o = GaussianRational.coerce(o)
        d = o.abs2()
        if d == 0:
            raise ZeroDivisionError("division by zero Gaussian rational")
        num = self * o.conjugate()
        return GaussianRational(num.re / d, num.im / d)

    def __rtruediv__(self, o: Any) -> Any:
        if isinstance(o, (float, complex)):
            return o / complex(self)
        return GaussianRational.coerce(o) / self

    def __eq__(self, o: object) -> bool:
        if isinstance(o, GaussianRational):
            return self.re == o.re and self.im == o.im
        if isinstance(o, (int, Fraction)):
            return self.im == 0 and self.re == o
        if isinstance(o, (float, complex)):
            return complex(self) == o
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.re, self.im))

    def __complex__(self) -> complex:
        return complex(float(self.re), float(self.im))

    def __abs__(self) -> float:
        return math.sqrt(self.abs2())

    def __str__(self) -> str:
        if self.im == 0:
            return str(self.re)
        if self.re == 0:
            return f"{self.im}i"
        sign = "+" if self.im > 0 else "-"
        return f"{self.re}{sign}{abs(self.im)}i"


Scalar = Union[GaussianRational, complex, float, int, Fraction]
I_UNIT = GaussianRational(0, 1)


def _abs2(z: Scalar) -> float:
    if isinstance(z, GaussianRational):
        return float(z.abs2())
    return abs(complex(z)) ** 2


def parse_scalar(x: Any) -> Scalar:
    """Parse a JSON amplitude: number, ``[re, im]`` or a string like ``"1/2+3/4i"``.

    Integers, rational strings and integer pairs become exact Gaussian
    rationals; floats become complex numbers.
    """
    if isinstance(x, bool):
        raise ModelError("booleans are not amplitudes")
    if isinstance(x, (int, Fraction)):
        return GaussianRational(Fraction(x))
    if isinstance(x, float):
        return complex(x)
    if isinstance(x, (list, tuple)) and len(x) == 2:
        re, im = x
        if isinstance(re, (int, str)) and isinstance(im, (int, str)):
            return GaussianRational(Fraction(re), Fraction(im))
        return complex(float(re), float(im))
    if isinstance(x, str):
        s = x.replace(" ", "")
        if s.endswith("i"):
            body = s[:-1]
            cut = max(body.rfind("+"), body.rfind("-"))
            if cut <= 0:
                return GaussianRational(0, Fraction(body or "1") if body not in ("+", "-") else Fraction(f"{body}1"))
            re, im = body[:cut], body[cut:]
            im = im + "1" if im in ("+", "-") else im
            return GaussianRational(Fraction(re), Fraction(im))
        return GaussianRational(Fraction(s))
    raise ModelError(f"cannot parse amplitude {x!r}")


def scalar_to_json(z: Scalar) -> Any:
    if isinstance(z, GaussianRational):
        return str(z)
    c = complex(z)
    return [c.real, c.imag]


# ------------------------------------------------------------- labels


SL2_KINDS = ("imaginary", "complementary", "discrete", "trivial")


@dataclass(frozen=True)
class Sl2Label:
    """Parameter ``nu`` of the ``sl_2`` irreducible a component lives in."""

    kind: str
    nu: Fraction = Fraction(0)

    def __post_init__(self) -> None:
        if self.kind not in SL2_KINDS:
            raise ModelError(f"unknown sl2 label kind {self.kind!r}")
        object.__setattr__(self, "nu", Fraction(self.nu))
        if self.kind == "complementary" and not 0 < self.nu < 1:
            raise ModelError("complementary series needs 0 < nu < 1")
        if self.kind == "discrete" and self.nu.denominator != 1:
            raise ModelError("discrete series needs integer nu")
        if self.kind == "trivial" and self.nu != 0:
            raise ModelError("the trivial label has nu = 0")

    def is_high_discrete(self, l: int) -> bool:
        return self.kind == "discrete" and abs(self.nu) >= l

    def to_json(self) -> dict:
        return {"kind": self.kind, "nu": str(self.nu)}


# -------------------------------------------------------- atomic vectors


@dataclass(frozen=True)
class Component:
    character: tuple[float, ...]
    amplitude: Scalar
    label: Sl2Label | None = None

    def norm_char2(self) -> float:
        return float(sum(Fraction(c) * Fraction(c) if isinstance(c, (int, Fraction)) else c * c for c in self.character))


@dataclass(frozen=True)
class AtomicRep:
    """A vector in a direct integral over finitely many characters of ``R^m``."""

    m: int
    components: tuple[Component, ...]

    def __post_init__(self) -> None:
        if self.m < 1:
            raise ModelError("m must be positive")
        object.__setattr__(self, "components", tuple(self.components))
        seen = set()
        for c in self.components:
            if len(c.character) != self.m:
                raise ModelError(f"character {c.character} does not have {self.m} entries")
            if c.character in seen:
                raise ModelError(f"repeated character {c.character}")
            seen.add(c.character)

    @classmethod
    def build(cls, m: int, entries: Sequence[tuple[Sequence[float], Scalar] | tuple[Sequence[float], Scalar, Sl2Label | None]]) -> "AtomicRep":
        comps = []
        for e in entries:
            chi, amp = tuple(e[0]), e[1]
            label = e[2] if len(e) > 2 else None
            comps.append(Component(chi, amp, label))
        return cls(m, tuple(comps))

    def with_amplitudes(self, amps: Sequence[Scalar]) -> "AtomicRep":
        if len(amps) != len(self.components):
            raise ModelError("amplitude count mismatch")
        return AtomicRep(self.m, tuple(Component(c.character, a, c.label) for c, a in zip(self.components, amps)))

    @property
    def amplitudes(self) -> list[Scalar]:
        return [c.amplitude for c in self.components]

    def sobolev_norm(self, s: float = 0) -> float:
        """``sqrt(sum (1+|chi|^2)^s |amp|^2)``."""
        return math.sqrt(sum((1 + c.norm_char2()) ** s * _abs2(c.amplitude) for c in self.components))

    def norm(self) -> float:
        return self.sobolev_norm(0)

    def __sub__(self, other: "AtomicRep") -> "AtomicRep":
        self._same_support(other)
        return self.with_amplitudes([a - b for a, b in zip(self.amplitudes, other.amplitudes)])

    def __add__(self, other: "AtomicRep") -> "AtomicRep":
        self._same_support(other)
        return self.with_amplitudes([a + b for a, b in zip(self.amplitudes, other.amplitudes)])

    def _same_support(self, other: "AtomicRep") -> None:
        if [c.character for c in self.components] != [c.character for c in other.components]:
            raise ModelError("vectors live on different character lists")

    def max_abs_diff(self, other: "AtomicRep") -> float:
        self._same_support(other)
        return max((math.sqrt(_abs2(a - b)) for a, b in zip(self.amplitudes, other.amplitudes)), default=0.0)

    def to_json(self) -> dict:
        return {
            "m": self.m,
            "components": [
                {
                    "character": list(c.character),
                    "amplitude": scalar_to_json(c.amplitude),
                    **({"label": c.label.to_json()} if c.label else {}),
                }
                for c in self.components
            ],
        }


# ------------------------------------------------------------- bumps


def _psi(x: float) -> float:
    return math.exp(-1.0 / x) if x > 0 else 0.0


def smooth_step(x: float) -> float:
    """Standard ``C^infinity`` step: 0 for ``x <= 0``, 1 for ``x >= 1``."""
    if x <= 0:
        return 0.0
    if x >= 1:
        return 1.0
    p, q = _psi(x), _psi(1 - x)
    return p / (p + q)


@dataclass(frozen=True)
class BumpFunction:
    """Radial bump on ``R^m``: 1 on ``|t| <= a``, 0 on ``|t| >= b``, smooth in between.

    The flat regions return the exact integers 1 and 0 so exact amplitudes
    stay exact there.
    """

    a: float
    b: float
    m: int = 1

    def __post_init__(self) -> None:
        if not 0 < self.a < self.b:
            raise ModelError(f"need 0 < a < b, got a={self.a}, b={self.b}")
        if self.m < 1:
            raise ModelError("m must be positive")

    def profile(self, r: float) -> float | int:
        if r <= self.a:
            return 1
        if r >= self.b:
            return 0
        return 1.0 - smooth_step((r - self.a) / (self.b - self.a))

    def __call__(self, t: Sequence[float]) -> float | int:
        if len(t) != self.m:
            raise ModelError(f"bump expects {self.m} coordinates, got {len(t)}")
        r2 = sum(float(x) * float(x) for x in t)
        if r2 <= float(self.a) ** 2:
            return 1
        if r2 >= float(self.b) ** 2:
            return 0
        return self.profile(math.sqrt(r2))

    def sup(self) -> float:
        return 1.0

    def derivative_bounds(self, k_max: int = 3, samples: int = 2000) -> list[float]:
        """Sup of ``|d^k/dr^k profile|`` for ``k = 0..k_max`` estimated on a uniform grid.

        Finite differences of step ``h`` on the transition interval; these
        numbers feed model constants and are reported, not certified.
        """
        a, b = float(self.a), float(self.b)
        h = (b - a) / samples
        xs = [a - 2 * h + i * h for i in range(samples + 5)]
        vals = [float(self.profile(x)) for x in xs]
        out = [max(abs(v) for v in vals)]
        cur = vals
        for _ in range(k_max):
            cur = [(cur[i + 1] - cur[i]) / h for i in range(len(cur) - 1)]
            out.append(max(abs(v) for v in cur))
        return out

    def to_json(self) -> dict:
        return {"a": self.a, "b": self.b, "m": self.m}


def dag_scale(a: float, f: BumpFunction) -> BumpFunction:
    """Dilation ``(a dag f)(t) = f(t/a)``: an ``(a*a_f, a*b_f)``-related bump."""
    if not a > 0:
        raise ModelError(f"dilation factor must be positive, got {a}")
    if isinstance(a, Fraction) or isinstance(f.a, Fraction):
        return BumpFunction(Fraction(a) * Fraction(f.a), Fraction(a) * Fraction(f.b), f.m)
    return BumpFunction(a * f.a, a * f.b, f.m)


Func = Callable[[Sequence[float]], Scalar]


def apply_pi(f: Func, xi: AtomicRep) -> AtomicRep:
    """``pi_u(f) xi``: multiply each amplitude by ``f(chi)``."""
    if isinstance(f, BumpFunction) and f.m != xi.m:
        raise ModelError(f"bump dimension {f.m} does not match vector dimension {xi.m}")
    return xi.with_amplitudes([_mul(f(c.character), c.amplitude) for c in xi.components])


def _mul(x: Scalar, y: Scalar) -> Scalar:
    if isinstance(x, int) and not isinstance(x, bool):
        if x == 1:
            return y
        if x == 0:
            return GaussianRational(0) if isinstance(y, GaussianRational) else 0j
    return x * y


def pointwise_product(f1: Func, f2: Func) -> Func:
    def prod(t: Sequence[float]) -> Scalar:
        return _mul(f1(t), f2(t))

    return prod


def _monomial(k: Sequence[int], t: Sequence[float]) -> complex:
    out = 1 + 0j
    for kj, tj in zip(k, t):
        out *= (1j * float(tj)) ** kj
    return out


def derivative_action(k: Sequence[int], f: Func, xi: AtomicRep) -> tuple[AtomicRep, float]:
    """Compare ``u_1^{k_1}...u_m^{k_m} (pi(f) xi)`` with ``pi(f_k) xi``.

    The left side applies ``pi(f)`` and then each ``u_j`` as multiplication
    by ``i chi_j``; the right side multiplies by ``f_k(t) = f(t) prod (i t_j)^{k_j}``.
    Returns the left side and the largest relative amplitude residual.
    """
    if len(k) != xi.m or any(kj < 0 for kj in k):
        raise ModelError("multi-index must have m nonnegative entries")
    lhs = apply_pi(f, xi)
    amps = list(lhs.amplitudes)
    for j, kj in enumerate(k):
        for _ in range(kj):
            amps = [_mul(1j * float(c.character[j]), a) if float(c.character[j]) else 0j for c, a in zip(xi.components, amps)]
    lhs = lhs.with_amplitudes(amps)
    if not any(k):
        rhs = apply_pi(f, xi)
    else:
        rhs = apply_pi(lambda t: f(t) * _monomial(k, t), xi)
    res = 0.0
    for a, b in zip(lhs.amplitudes, rhs.amplitudes):
        scale = max(math.sqrt(_abs2(a)), math.sqrt(_abs2(b)), 1e-300)
        res = max(res, math.sqrt(_abs2(a - b)) / scale if (_abs2(a) or _abs2(b)) else 0.0)
    return lhs, res


@dataclass(frozen=True)
class TailBound:
    lhs: float
    rhs: float

    @property
    def ratio(self) -> float:
        return self.lhs / self.rhs if self.rhs else (0.0 if self.lhs == 0 else math.inf)

    def holds(self, constant: float = 1.0) -> bool:
        return self.lhs <= constant * self.rhs * (1 + 1e-12)

    def to_json(self) -> dict:
        return {"lhs": self.lhs, "rhs": self.rhs, "ratio": self.ratio}


def tail_bound_check(xi: AtomicRep, f: BumpFunction, c: float, s: int) -> TailBound:
    """``lhs = |xi - pi(c dag f) xi|`` against ``rhs = (c a)^{-s} |xi|_{S,s}``."""
    if not c > 1:
        raise ModelError("tail bound needs c > 1")
    if s < 0:
        raise ModelError("tail bound needs s >= 0")
    lhs = (xi - apply_pi(dag_scale(c, f), xi)).norm()
    rhs = (float(c) * float(f.a)) ** (-s) * xi.sobolev_norm(s)
    return TailBound(lhs, rhs)


def smoothing_constant(f: BumpFunction, l: float) -> float:
    """``sup_{|t| <= b_f} (1+|t|^2)^{l/2}``: bounds ``|pi(a dag f) xi|_{S,l} / (a^l |xi|)`` for ``a >= 1``."""
    return (1 + float(f.b) ** 2) ** (l / 2)


def is_small_vector(xi: AtomicRep, a: float, b: float) -> bool:
    """``(a, b)``-small on the atomic model: every nonzero component has ``|chi| <= a``.

    ``pi(f) xi = xi`` for every ``(a, b)``-related ``f`` exactly when this
    holds, since for ``|chi| > a`` some ``(a, b)``-related bump is below 1 at
    ``chi``.
    """
    if not 0 < a < b:
        raise ModelError("need 0 < a < b")
    return all(_abs2(c.amplitude) == 0 or c.norm_char2() <= float(a) ** 2 for c in xi.components)


# --------------------------------------------------- sl2 projections


def _require_labels(xi: AtomicRep) -> None:
    for c in xi.components:
        if c.label is None:
            raise ModelError(f"component at {c.character} has no sl2 label")


def _zero_like(z: Scalar) -> Scalar:
    return GaussianRational(0) if isinstance(z, GaussianRational) else 0j


def proj_Dl(l: int, xi: AtomicRep) -> AtomicRep:
    """Keep discrete-series components with ``|nu| >= l``; zero the rest."""
    _require_labels(xi)
    return xi.with_amplitudes([c.amplitude if c.label.is_high_discrete(l) else _zero_like(c.amplitude) for c in xi.components])


ObstructionTable = Union[Mapping[int, Scalar], Mapping[tuple, Scalar], Callable[[Component], Scalar]]


def obstruction_Dl(l: int, xi: AtomicRep, table: ObstructionTable) -> AtomicRep:
    """Apply per-component stand-ins for ``D_nu`` off the high discrete series.

    ``table`` maps a component index or character tuple to a scalar (the
    one-dimensional linear map), or is a callable on the component.
    """
    _require_labels(xi)
    amps = []
    for idx, c in enumerate(xi.components):
        if c.label.is_high_discrete(l):
            amps.append(_zero_like(c.amplitude))
            continue
        if callable(table):
            t = table(c)
        elif idx in table:
            t = table[idx]
        elif c.character in table:
            t = table[c.character]
        else:
            raise ModelError(f"obstruction table has no entry for component {idx} at {c.character}")
        amps.append(_mul(t, c.amplitude) if not isinstance(t, GaussianRational) else t * c.amplitude)
    return xi.with_amplitudes(amps)


def split_decompose(l: int, xi: AtomicRep) -> tuple[AtomicRep, AtomicRep]:
    """``xi = xi0 + xi1`` with ``xi0 = proj_Dl(l, xi)``."""
    x0 = proj_Dl(l, xi)
    return x0, xi - x0


# ------------------------------------------------------ extended vectors


@dataclass(frozen=True)
class ExtendedVector:
    """``dim``-tuple of vectors over one shared character list.

    ``coords[i][c]`` is the amplitude of coordinate ``i`` at component ``c``.
    """

    characters: tuple[tuple[float, ...], ...]
    coords: tuple[tuple[Scalar, ...], ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "characters", tuple(tuple(c) for c in self.characters))
        object.__setattr__(self, "coords", tuple(tuple(r) for r in self.coords))
        k = len(self.characters)
        if len(set(self.characters)) != k:
            raise ModelError("characters must be distinct")
        for r in self.coords:
            if len(r) != k:
                raise ModelError("every coordinate must have one amplitude per character")

    @property
    def dim(self) -> int:
        return len(self.coords)

    @property
    def n_components(self) -> int:
        return len(self.characters)

    def coordinate(self, i: int, m: int | None = None) -> AtomicRep:
        mm = m if m is not None else (len(self.characters[0]) if self.characters else 1)
        return AtomicRep(mm, tuple(Component(ch, a) for ch, a in zip(self.characters, self.coords[i])))

    def max_abs_diff(self, other: "ExtendedVector") -> float:
        return max(
            (math.sqrt(_abs2(a - b)) for r1, r2 in zip(self.coords, other.coords) for a, b in zip(r1, r2)),
            default=0.0,
        )

    def norm(self) -> float:
        return math.sqrt(sum(_abs2(a) for r in self.coords for a in r))

    def to_json(self) -> dict:
        return {
            "characters": [list(c) for c in self.characters],
            "coords": [[scalar_to_json(a) for a in r] for r in self.coords],
        }


def apply_u_plus_ad(base_action: Sequence[Scalar], ad_u: RatMatrix, v: ExtendedVector) -> ExtendedVector:
    """``(u + ad_u) v`` where ``u`` acts on component ``c`` by ``base_action[c]``."""
    _check_shapes(base_action, ad_u, v)
    rows = []
    for i in range(v.dim):
        row = []
        for c in range(v.n_components):
            acc = base_action[c] * v.coords[i][c]
            for j, nij in ad_u.rows[i].items():
                acc = acc + nij * v.coords[j][c]
            row.append(acc)
        rows.append(row)
    return ExtendedVector(v.characters, rows)


def _check_shapes(base_action: Sequence[Scalar], ad_u: RatMatrix, v: ExtendedVector) -> None:
    if ad_u.nrows != ad_u.ncols or ad_u.nrows != v.dim:
        raise ModelError(f"ad_u is {ad_u.nrows}x{ad_u.ncols} but the vector has {v.dim} coordinates")
    if len(base_action) != v.n_components:
        raise ModelError(f"{len(base_action)} base scalars for {v.n_components} components")


def _is_exact(z: Scalar) -> bool:
    return isinstance(z, (GaussianRational, int, Fraction)) and not isinstance(z, bool)


def jordan_backsub_solve(
    base_action: Sequence[Scalar], ad_u: RatMatrix, omega: ExtendedVector, refine: int = 2
) -> ExtendedVector:
    """Solve ``(u + ad_u) v = omega`` by back-substitution along Jordan chains.

    In a Jordan basis of the nilpotent ``ad_u`` each block reads
    ``u y_m = w_m`` and ``u y_k + y_{k+1} = w_k``; the last chain coordinate
    is solved first and substituted upward.  Exact inputs give the exact
    solution.  With floating-point inputs the change of basis can be badly
    conditioned, so up to ``refine`` rounds of iterative refinement are
    applied against the residual of the original system.
    """
    _check_shapes(base_action, ad_u, omega)
    for c, s in enumerate(base_action):
        if s == 0:
            raise ModelError(f"base action vanishes on component {c} at character {omega.characters[c]}")
    try:
        jd = jordan_chains(ad_u)
    except LieError as exc:
        raise ModelError(str(exc)) from exc
    n = omega.dim
    p_dense = jd.change_of_basis.to_dense()
    p_inv_cols = [solve_dense(p_dense, [Fraction(int(i == j)) for i in range(n)]) for j in range(n)]
    p_inv = [[p_inv_cols[j][i] for j in range(n)] for i in range(n)]

    def solve(rhs: ExtendedVector) -> list[list[Scalar]]:
        out_rows: list[list[Scalar]] = [[None] * rhs.n_components for _ in range(n)]  # type: ignore[list-item]
        for c in range(rhs.n_components):
            u = base_action[c]
            w_col = [rhs.coords[i][c] for i in range(n)]
            w = [_dot(p_inv[i], w_col) for i in range(n)]
            y: list[Scalar] = [None] * n  # type: ignore[list-item]
            pos = 0
            for size in jd.block_sizes:
                last = pos + size - 1
                y[last] = w[last] / u
                for k in range(last - 1, pos - 1, -1):
                    y[k] = (w[k] - y[k + 1]) / u
                pos += size
            for i in range(n):
                out_rows[i][c] = _dot(p_dense[i], y)
        return out_rows

    v = ExtendedVector(omega.characters, solve(omega))
    exact = all(_is_exact(s) for s in base_action) and all(_is_exact(a) for r in omega.coords for a in r)
    if exact:
        return v
    for _ in range(refine):
        lhs = apply_u_plus_ad(base_action, ad_u, v)
        r = ExtendedVector(omega.characters, [[a - b for a, b in zip(ro, rl)] for ro, rl in zip(omega.coords, lhs.coords)])
        if r.norm() == 0:
            break
        corr = solve(r)
        v = ExtendedVector(omega.characters, [[a + b for a, b in zip(rv, rc)] for rv, rc in zip(v.coords, corr)])
    return v


def _dot(row: Sequence[Fraction], vec: Sequence[Scalar]) -> Scalar:
    acc: Scalar = vec[0] * 0 if vec else 0
    for a, b in zip(row, vec):
        if a != 0:
            acc = acc + a * b
    return acc


def dense_solve(base_action: Sequence[Scalar], ad_u: RatMatrix, omega: ExtendedVector) -> ExtendedVector:
    """Oracle: assemble the full ``(dim*K)^2`` system and solve it by Gauss-Jordan."""
    _check_shapes(base_action, ad_u, omega)
    n, k = omega.dim, omega.n_components
    size = n * k
    zero = omega.coords[0][0] * 0 if n and k else 0
    a = [[zero] * size for _ in range(size)]
    b = [zero] * size
    for i in range(n):
        for c in range(k):
            r = i * k + c
            a[r][r] = a[r][r] + base_action[c]
            for j, nij in ad_u.rows[i].items():
                a[r][j * k + c] = a[r][j * k + c] + nij
            b[r] = omega.coords[i][c]
    x = solve_dense(a, b)
    return ExtendedVector(omega.characters, [[x[i * k + c] for c in range(k)] for i in range(n)])


def relative_residual(base_action: Sequence[Scalar], ad_u: RatMatrix, v: ExtendedVector, omega: ExtendedVector) -> float:
    lhs = apply_u_plus_ad(base_action, ad_u, v)
    den = omega.norm() or 1.0
    return lhs.max_abs_diff(omega) / den


# ----------------------------------------------------------- generators


def random_atomic(rng: random.Random, m: int, n_components: int, char_range: float = 50.0, labeled: bool = False) -> AtomicRep:
    """Random atomic vector with distinct float characters and complex amplitudes."""
    comps = []
    seen = set()
    while len(comps) < n_components:
        chi = tuple(round(rng.uniform(-char_range, char_range), 6) for _ in range(m))
        if chi in seen:
            continue
        seen.add(chi)
        amp = complex(rng.gauss(0, 1), rng.gauss(0, 1))
        label = random_label(rng) if labeled else None
        comps.append(Component(chi, amp, label))
    return AtomicRep(m, tuple(comps))


def random_label(rng: random.Random, max_nu: int = 12) -> Sl2Label:
    kind = rng.choice(SL2_KINDS)
    if kind == "complementary":
        return Sl2Label(kind, Fraction(rng.randint(1, 99), 100))
    if kind == "discrete":
        return Sl2Label(kind, rng.choice([-1, 1]) * rng.randint(1, max_nu))
    if kind == "imaginary":
        return Sl2Label(kind, Fraction(rng.randint(-50, 50), 10))
    return Sl2Label("trivial")


def root_ad_matrix(lie_type: str, rank: int, root: Sequence[int | Fraction]) -> RatMatrix:
    """``ad`` of a root vector, a convenient nilpotent ``ad_u``."""
    alg = algebra(lie_type, rank)
    return ad_matrix(alg.root_vector(root))


# -------------------------------------------------------------- scenarios


def _parse_label(d: Mapping[str, Any] | None) -> Sl2Label | None:
    if d is None:
        return None
    return Sl2Label(d["kind"], Fraction(str(d.get("nu", 0))))


def _parse_bump(d: Mapping[str, Any], m: int) -> BumpFunction:
    return BumpFunction(float(d.get("a", 1)), float(d.get("b", 2)), int(d.get("m", m)))


def parse_atomic(d: Mapping[str, Any]) -> AtomicRep:
    m = int(d["m"])
    comps = []
    for c in d["components"]:
        chi = tuple(float(x) for x in c["character"])
        comps.append(Component(chi, parse_scalar(c.get("amplitude", 1)), _parse_label(c.get("label"))))
    return AtomicRep(m, tuple(comps))


@dataclass
class ScenarioResult:
    steps: list[dict] = field(default_factory=list)
    ok: bool = True

    def to_json(self) -> dict:
        return {"ok": self.ok, "steps": self.steps}


def run_scenario(spec: Mapping[str, Any]) -> ScenarioResult:
    """Replay a JSON model scenario.

    ``spec`` holds an atomic vector (``m``, ``components``) and a list of
    ``operations``; each operation acts on the original vector and emits one
    step record.  Supported ops: ``apply_pi``, ``derivative``, ``tail_bound``,
    ``is_small``, ``proj_Dl``, ``obstruction_Dl``, ``split`` and ``backsub``.
    """
    xi = parse_atomic(spec)
    out = ScenarioResult()
    for idx, op in enumerate(spec.get("operations", [])):
        kind = op.get("op")
        rec: dict[str, Any] = {"index": idx, "op": kind}
        if kind == "apply_pi":
            f = _parse_bump(op.get("bump", {}), xi.m)
            if "dilate" in op:
                f = dag_scale(float(op["dilate"]), f)
            rec["result"] = apply_pi(f, xi).to_json()
        elif kind == "derivative":
            f = _parse_bump(op.get("bump", {}), xi.m)
            res, resid = derivative_action([int(x) for x in op["k"]], f, xi)
            rec["result"] = res.to_json()
            rec["residual"] = resid
            rec["ok"] = resid <= 1e-12
        elif kind == "tail_bound":
            f = _parse_bump(op.get("bump", {}), xi.m)
            tb = tail_bound_check(xi, f, float(op["c"]), int(op["s"]))
            rec.update(tb.to_json())
            rec["ok"] = tb.holds(float(op.get("constant", 1)))
        elif kind == "is_small":
            rec["result"] = is_small_vector(xi, float(op["a"]), float(op["b"]))
        elif kind == "proj_Dl":
            rec["result"] = proj_Dl(int(op["l"]), xi).to_json()
        elif kind == "obstruction_Dl":
            table = {int(k): parse_scalar(v) for k, v in op["table"].items()}
            rec["result"] = obstruction_Dl(int(op["l"]), xi, table).to_json()
        elif kind == "split":
            x0, x1 = split_decompose(int(op["l"]), xi)
            rec["result"] = {"xi0": x0.to_json(), "xi1": x1.to_json()}
        elif kind == "backsub":
            ad = root_ad_matrix(op["type"], int(op["rank"]), [Fraction(str(x)) for x in op["root"]])
            base = [parse_scalar(s) for s in op["base_action"]]
            chars = [c.character for c in xi.components]
            omega = ExtendedVector(chars, [[parse_scalar(a) for a in row] for row in op["omega"]])
            v = jordan_backsub_solve(base, ad, omega)
            resid = relative_residual(base, ad, v, omega)
            rec["result"] = v.to_json()
            rec["residual"] = resid
            rec["ok"] = resid <= 1e-10
        else:
            raise ModelError(f"unknown scenario operation {kind!r}")
        if rec.get("ok") is False:
            out.ok = False
        out.steps.append(rec)
    return out
