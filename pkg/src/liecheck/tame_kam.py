"""Derivative-loss bookkeeping and the KAM iteration schedule.

* :func:`constant_chain` evaluates the loss constants ``sigma .. varrho``.
* :func:`ledger_replay` replays the loss accounting of the splitting proofs
  as compositions of tame operators and reports slack or overdraft.
* :func:`audit_schedule` checks every exponent inequality the convergence
  argument needs, in exact rationals.
* :func:`simulate_iteration` iterates the worst-case norm recurrences in
  log space.
* :func:`torus_smoothing` and :func:`interpolation_check` exercise the
  smoothing operator and interpolation inequalities on torus Fourier series.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Iterable, Mapping, Sequence

Q0 = 9
EPS_EXPONENT = Fraction(11, 6)


class KamError(ValueError):
    """Rejected schedule or chain parameters."""


def _q(x: Any) -> Fraction:
    if isinstance(x, float):
        return Fraction(x).limit_denominator(10**12)
    return Fraction(x)


def _fmt(x: Fraction) -> str:
    return str(x)


# ---------------------------------------------------------------- TameOp


@dataclass(frozen=True)
class TameOp:
    """An estimate ``|out|_t <= C |in|_{t + loss}``."""

    name: str
    loss: Fraction
    const_class: frozenset[str] = frozenset({"t"})

    def __post_init__(self) -> None:
        object.__setattr__(self, "loss", _q(self.loss))
        object.__setattr__(self, "const_class", frozenset(self.const_class))
        if self.loss < 0:
            raise KamError(f"negative loss for {self.name}")

    def then(self, other: "TameOp") -> "TameOp":
        """Sequential composition: losses add."""
        return TameOp(f"{self.name} ; {other.name}", self.loss + other.loss, self.const_class | other.const_class)

    def parallel(self, other: "TameOp") -> "TameOp":
        """Combination of independent branches: the larger loss wins."""
        return TameOp(f"max({self.name}, {other.name})", max(self.loss, other.loss), self.const_class | other.const_class)

    def to_json(self) -> dict:
        return {"name": self.name, "loss": _fmt(self.loss), "const_class": sorted(self.const_class)}


def sl2_coboundary_op() -> TameOp:
    return TameOp("sl2 coboundary", Fraction(3, 2), {"t", "u0"})


def high_discrete_op(l: Fraction) -> TameOp:
    return TameOp("projection-compatible solution", 2 + _q(l) / 2, {"t", "l"})


def twisted_coboundary_op() -> TameOp:
    return TameOp("twisted coboundary", Fraction(5, 2), {"t"})


def jordan_system_op(dim_g: Fraction) -> TameOp:
    return TameOp("Jordan-block system", Fraction(5, 2) * _q(dim_g), {"t"})


def low_discrete_level_op(l: Fraction) -> TameOp:
    return TameOp("low-spectrum level", 6 + _q(l) / 2, {"t", "l"})


def low_discrete_block_op(l: Fraction, sigma: Fraction) -> TameOp:
    return TameOp("low-spectrum block", (6 + _q(l) / 2) * _q(sigma), {"t", "l"})


def high_discrete_block_op(sigma: Fraction) -> TameOp:
    return TameOp("high-spectrum block", _q(sigma) + Fraction(3, 2), {"t"})


# --------------------------------------------------------- ConstantChain


@dataclass(frozen=True)
class ConstantChain:
    dim_g: Fraction
    beta: Fraction
    lam: Fraction
    lam1: Fraction
    q0: int
    sigma: Fraction
    sigma0: Fraction
    sigma1: Fraction
    sigma2: Fraction
    varrho: Fraction

    def to_json(self) -> dict:
        return {
            "dim_g": _fmt(self.dim_g),
            "beta": _fmt(self.beta),
            "lambda": _fmt(self.lam),
            "lambda1": _fmt(self.lam1),
            "q0": self.q0,
            "sigma": _fmt(self.sigma),
            "sigma0": _fmt(self.sigma0),
            "sigma1": _fmt(self.sigma1),
            "sigma2": _fmt(self.sigma2),
            "varrho": _fmt(self.varrho),
        }


def constant_chain(dim_g: Any, beta: Any = 0, lam: Any = 0, lam1: Any = 0, q0: int = Q0) -> ConstantChain:
    """Evaluate the loss constants exactly.

    ``sigma = 3/2 dim_g``, ``sigma0 = (7 + sigma) sigma``,
    ``sigma1 = (q0 + 1) sigma0``, ``sigma2 = sigma1 + q0 sigma0`` and
    ``varrho = max((2 q0 + 1) sigma0 + 1 + 2 beta, lam beta + lam1 + 1 + 2 beta)``.
    """
    d, b, la, la1 = _q(dim_g), _q(beta), _q(lam), _q(lam1)
    if d < 1:
        raise KamError("dim_g must be at least 1")
    if min(b, la, la1) < 0:
        raise KamError("beta, lambda and lambda1 must be nonnegative")
    if q0 < 1:
        raise KamError("q0 must be positive")
    sigma = Fraction(3, 2) * d
    sigma0 = (7 + sigma) * sigma
    sigma1 = (q0 + 1) * sigma0
    sigma2 = sigma1 + q0 * sigma0
    varrho = max((2 * q0 + 1) * sigma0 + 1 + 2 * b, la * b + la1 + 1 + 2 * b)
    return ConstantChain(d, b, la, la1, q0, sigma, sigma0, sigma1, sigma2, varrho)


# ------------------------------------------------------------ ledger


@dataclass(frozen=True)
class LedgerStep:
    step: str
    op: TameOp
    cumulative: Fraction
    claimed: Fraction | None = None

    @property
    def overdraft(self) -> Fraction:
        if self.claimed is None:
            return Fraction(0)
        return max(Fraction(0), self.cumulative - self.claimed)

    def to_json(self) -> dict:
        out = {"step": self.step, "op": self.op.to_json(), "cumulative": _fmt(self.cumulative)}
        if self.claimed is not None:
            out["claimed"] = _fmt(self.claimed)
            out["overdraft"] = _fmt(self.overdraft)
        return out


@dataclass
class LedgerReport:
    proof: str
    steps: list[LedgerStep]
    final_loss: Fraction
    budget: Fraction
    notes: list[str] = field(default_factory=list)

    @property
    def slack(self) -> Fraction:
        return self.budget - self.final_loss

    @property
    def overdraft(self) -> Fraction:
        step_over = max((s.overdraft for s in self.steps), default=Fraction(0))
        return max(step_over, -self.slack, Fraction(0))

    @property
    def ok(self) -> bool:
        return self.overdraft == 0

    def to_json(self) -> dict:
        return {
            "proof": self.proof,
            "steps": [s.to_json() for s in self.steps],
            "final_loss": _fmt(self.final_loss),
            "budget": _fmt(self.budget),
            "slack": _fmt(self.slack),
            "overdraft": _fmt(self.overdraft),
            "ok": self.ok,
            "notes": list(self.notes),
        }


LEDGER_PROOFS = ("spectral_split", "jordan_block", "global_one_direction", "global_two_directions")


class _Ledger:
    def __init__(self) -> None:
        self.steps: list[LedgerStep] = []

    def add(self, step: str, op: TameOp, start: Fraction, claimed: Fraction | None = None) -> Fraction:
        cum = start + op.loss
        self.steps.append(LedgerStep(step, op, cum, claimed))
        return cum


def ledger_replay(
    proof: str,
    chain: ConstantChain | None = None,
    l: Any = None,
    block_size: int | None = None,
) -> LedgerReport:
    """Replay a proof's loss accounting as tame-operator compositions.

    ``spectral_split``: the spectral split followed by the high- and low-spectrum
    solutions, with ``l = 2 sigma + 2``; the claim is a total loss of
    ``sigma0``.
    ``jordan_block``: the level-by-level back substitution over one Jordan block of
    size ``block_size`` (default ``dim_g``); the claim is ``(6 + l/2) sigma``.
    ``global_one_direction`` / ``global_two_directions``: the global splitting with one resp.
    two commuting directions; the budget is ``varrho``.
    """
    if proof not in LEDGER_PROOFS:
        raise KamError(f"unknown proof {proof!r}; expected one of {LEDGER_PROOFS}")
    c = chain or constant_chain(2, 1, 2, 3)
    led = _Ledger()
    notes: list[str] = []
    zero = Fraction(0)
    if proof == "spectral_split":
        lval = 2 * c.sigma + 2 if l is None else _q(l)
        split = TameOp("spectral split", 1, {"t"})
        s = led.add("spectral split of the data", split, zero)
        hi = led.add("high-spectrum branch", high_discrete_block_op(c.sigma), s, c.sigma0)
        core = low_discrete_block_op(lval, c.sigma)
        core_only = led.add("low-spectrum core estimate", core, zero, c.sigma0)
        lo = led.add("low-spectrum branch after split", core, s, c.sigma0)
        final = max(hi, lo)
        if lval < 2 * c.sigma + 3:
            notes.append(
                f"high-spectrum solution is stated for l >= 2 sigma + 3 = {_fmt(2 * c.sigma + 3)} but l = {_fmt(lval)}; "
                f"its proof only uses sigma <= l/2 + 3/2, which {'holds' if c.sigma <= lval / 2 + Fraction(3, 2) else 'fails'}"
            )
        if core_only == c.sigma0 and lo > c.sigma0:
            notes.append(f"the split costs one derivative that the claimed total sigma0 = {_fmt(c.sigma0)} does not include")
        return LedgerReport(proof, led.steps, final, c.sigma0, notes)
    if proof == "jordan_block":
        lval = zero if l is None else _q(l)
        m = int(c.dim_g) if block_size is None else block_size
        if m < 1:
            raise KamError("block size must be positive")
        level = low_discrete_level_op(lval)
        cum = zero
        for k in range(1, m + 1):
            cum = led.add(f"chain level {k}", level, cum)
        claimed = (6 + lval / 2) * c.sigma
        notes.append(f"block size {m}; blocks are bounded by dim_g = {_fmt(c.dim_g)}")
        return LedgerReport(proof, led.steps, cum, claimed, notes)
    two_beta = TameOp("Sobolev embedding on both sides", 2 * c.beta, {"beta"})
    one = TameOp("interpolation shift", 1, {"t", "s"})
    lam_op = TameOp("spectral-gap regularity", c.lam * c.beta + c.lam1, {"lambda", "lambda1", "beta"})
    if proof == "global_one_direction":
        s = led.add("base-triple splitting", TameOp("splitting proposition", c.sigma0, {"t"}), zero, c.sigma0)
        s = led.add("remainder along the extra direction", one, s)
        main = led.add("embedding", two_beta, s)
        alt = led.add("regularity branch", lam_op, zero)
        alt = led.add("regularity branch embedding", one.then(two_beta), alt)
        final = max(main, alt)
        return LedgerReport(proof, led.steps, final, c.varrho, notes)
    # global_two_directions
    s = led.add("base-triple splitting", TameOp("splitting proposition", c.sigma0, {"t"}), zero, c.sigma0)
    s = led.add("first pair remainder", TameOp("splitting proposition", c.sigma0, {"t"}), s, 2 * c.sigma0)
    step = TameOp("one slot of the chain", c.sigma0, {"t"})
    for j in range(1, c.q0):
        s = led.add(f"descending slot {j}", step, s, 2 * c.sigma0 + j * c.sigma0)
    if s != c.sigma1:
        notes.append(f"descending pass ends at {_fmt(s)}, expected sigma1 = {_fmt(c.sigma1)}")
    for j in range(0, c.q0):
        s = led.add(f"second pass slot {j}", step, s, c.sigma1 + (j + 1) * c.sigma0)
    if s != c.sigma2:
        notes.append(f"second pass ends at {_fmt(s)}, expected sigma2 = {_fmt(c.sigma2)}")
    s = led.add("remainder along the extra directions", one, s)
    main = led.add("embedding", two_beta, s)
    alt = led.add("regularity branch", lam_op, zero)
    alt = led.add("regularity branch embedding", one.then(two_beta), alt)
    pair_loss = Fraction(5) * c.dim_g + 2
    notes.append(
        f"paired-direction remainder loses 5 dim_g + 2 = {_fmt(pair_loss)}, "
        f"{'within' if pair_loss <= c.sigma0 else 'exceeding'} sigma0 = {_fmt(c.sigma0)}"
    )
    final = max(main, alt)
    return LedgerReport(proof, led.steps, final, c.varrho, notes)


# -------------------------------------------------------------- audit


@dataclass(frozen=True)
class Inequality:
    name: str
    lhs: Fraction
    rhs: Fraction

    @property
    def margin(self) -> Fraction:
        return self.rhs - self.lhs

    @property
    def holds(self) -> bool:
        return self.lhs < self.rhs

    def to_json(self) -> dict:
        return {"name": self.name, "lhs": _fmt(self.lhs), "rhs": _fmt(self.rhs), "margin": _fmt(self.margin), "holds": self.holds}


@dataclass
class AuditReport:
    varrho: Fraction
    l0: int
    a: Fraction
    b: Fraction
    inequalities: list[Inequality]
    stated_threshold: Fraction
    repaired_threshold: Fraction

    @property
    def ok(self) -> bool:
        return all(i.holds for i in self.inequalities)

    @property
    def failures(self) -> list[str]:
        return [i.name for i in self.inequalities if not i.holds]

    def get(self, name: str) -> Inequality:
        for i in self.inequalities:
            if i.name == name:
                return i
        raise KeyError(name)

    def to_json(self) -> dict:
        return {
            "varrho": _fmt(self.varrho),
            "l0": self.l0,
            "a": _fmt(self.a),
            "b": _fmt(self.b),
            "inequalities": [i.to_json() for i in self.inequalities],
            "threshold_stated": f"l0 > {_fmt(self.stated_threshold)}",
            "threshold_repaired": f"l0 > {_fmt(self.repaired_threshold)}",
            "meets_stated_threshold": self.l0 > self.stated_threshold,
            "meets_repaired_threshold": self.l0 > self.repaired_threshold,
            "ok": self.ok,
            "failures": self.failures,
        }


def _varrho_of(chain: ConstantChain | Any) -> Fraction:
    return chain.varrho if isinstance(chain, ConstantChain) else _q(chain)


def audit_schedule(chain: ConstantChain | Any, l0: int) -> AuditReport:
    """Exact check of the schedule inequalities for ``a = (varrho+1)/l0``, ``b = varrho/(l0-varrho)``.

    The stated admissibility ``l0 > 120(varrho+1)`` gives ``a < 1/120`` but
    not ``b < a``, which needs ``l0 > varrho(varrho+1)``; both thresholds
    are reported.
    """
    rho = _varrho_of(chain)
    if isinstance(l0, bool) or int(l0) != l0:
        raise KamError("l0 must be an integer")
    l0 = int(l0)
    if l0 <= rho:
        raise KamError(f"l0 = {l0} must exceed varrho = {_fmt(rho)}")
    a = (rho + 1) / l0
    b = rho / (l0 - rho)
    F = Fraction
    ineqs = [
        Inequality("a < 1/120", a, F(1, 120)),
        Inequality("b < a", b, a),
        Inequality("1 - 6a > 5/6", F(5, 6), 1 - 6 * a),
        Inequality("2 - 20a > 11/6", F(11, 6), 2 - 20 * a),
        Inequality("3 - 6a > 2 - 20a", 2 - 20 * a, 3 - 6 * a),
        Inequality("(2-4a)(1-b) - 5b > 11/6", F(11, 6), (2 - 4 * a) * (1 - b) - 5 * b),
        Inequality("2 - 11a > 11/6", F(11, 6), 2 - 11 * a),
        Inequality("(2-4a)(1-b) - 5b > 2 - 11a", 2 - 11 * a, (2 - 4 * a) * (1 - b) - 5 * b),
        Inequality("-5 - 6a > -11/2", F(-11, 2), -5 - 6 * a),
    ]
    stated = 120 * (rho + 1)
    repaired = max(stated, rho * (rho + 1))
    return AuditReport(rho, l0, a, b, ineqs, stated, repaired)


# ---------------------------------------------------------- simulation


def _lse(*xs: float) -> float:
    m = max(xs)
    if m == -math.inf:
        return -math.inf
    return m + math.log(sum(math.exp(x - m) for x in xs))


@dataclass(frozen=True)
class KamState:
    n: int
    log_eps: float
    log_t: float
    log_c0: float
    log_cl: float

    @property
    def c0_ok(self) -> bool:
        return self.log_c0 <= self.log_eps + 1e-9 * max(1.0, abs(self.log_eps))

    @property
    def cl_ok(self) -> bool:
        return self.log_cl <= -3 * self.log_eps + 1e-9 * max(1.0, abs(self.log_eps))

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "log_eps": self.log_eps,
            "log_t": self.log_t,
            "log_c0": self.log_c0,
            "log_cl": self.log_cl,
            "c0_ok": self.c0_ok,
            "cl_ok": self.cl_ok,
        }


@dataclass
class Trajectory:
    varrho: Fraction
    l0: int
    constant: float
    states: list[KamState]
    first_violation: int | None
    degenerate: bool = False

    @property
    def ok(self) -> bool:
        return self.first_violation is None

    def to_json(self) -> dict:
        return {
            "varrho": _fmt(self.varrho),
            "l0": self.l0,
            "constant": self.constant,
            "degenerate": self.degenerate,
            "first_violation": self.first_violation,
            "ok": self.ok,
            "states": [s.to_json() for s in self.states],
        }


def simulate_iteration(
    chain: ConstantChain | Any,
    l0: int,
    eps0: float,
    constant: float = 1.0,
    n_steps: int = 50,
    c_bar: float = 1.0,
) -> Trajectory:
    """Iterate the worst-case norm recurrences of one KAM step in log space.

    State: ``c0 = |p|_{C^0}``, ``cl = |p|_{C^l0}`` and ``t = eps^{-6/l0}``.
    Intermediate norms come from interpolation,
    ``log|p|_r = log C + (1 - r/l0) log c0 + (r/l0) log cl``; maxima over a
    range of ``k`` of ``t^k |p|_{r-k}`` are log-linear in ``k`` and so sit
    at an endpoint.  The new ``C^0`` norm is bounded by

    ``C max_k{t^k |p|_{l0-k}}^theta (c0 |p|_{varrho+1} + t^{varrho+1-l0} cl)^{1-theta}
    + C t^{2(1+varrho)} |p|_{1+varrho}^2 + C t^{varrho+1-l0} cl``

    with ``theta = varrho/(l0 - varrho)``, and the new ``C^{l0}`` norm by
    ``C(t^varrho cl + 1) + C max_{varrho<=k<=l0+varrho}{t^k |p|_{l0+varrho-k}}``.
    Each step checks ``c0 <= eps_{n+1}`` and ``cl <= eps_{n+1}^{-3}``.
    """
    rep = audit_schedule(chain, l0)
    if not rep.ok:
        raise KamError(f"schedule audit fails ({', '.join(rep.failures)}); refusing to simulate")
    if not 0 <= eps0 < c_bar:
        raise KamError(f"eps0 must lie in [0, {c_bar})")
    if constant <= 0:
        raise KamError("the model constant must be positive")
    rho = float(rep.varrho)
    L = float(l0)
    if eps0 == 0:
        states = [KamState(n, -math.inf, 0.0, -math.inf, -math.inf) for n in range(n_steps + 1)]
        return Trajectory(rep.varrho, l0, constant, states, None, degenerate=True)
    lc = math.log(constant)
    theta = rho / (L - rho)
    ratio = float(EPS_EXPONENT)
    log_eps = math.log(eps0)
    lc0, lcl = log_eps, -3 * log_eps
    states = [KamState(0, log_eps, -6 * log_eps / L, lc0, lcl)]
    first = None if states[0].c0_ok and states[0].cl_ok else 0
    for n in range(n_steps):
        lt = -6 * log_eps / L

        def norm(r: float, lc0: float = lc0, lcl: float = lcl) -> float:
            return lc + (1 - r / L) * lc0 + (r / L) * lcl

        a_term = max(k * lt + norm(L - k) for k in (0.0, L - rho + 1))
        b_term = _lse(lc0 + norm(rho + 1), (rho + 1 - L) * lt + lcl)
        t1 = lc + theta * a_term + (1 - theta) * b_term
        t2 = lc + 2 * (1 + rho) * lt + 2 * norm(1 + rho)
        t3 = lc + (rho + 1 - L) * lt + lcl
        new_c0 = _lse(t1, t2, t3)
        g1 = lc + _lse(rho * lt + lcl, 0.0)
        g2 = lc + max(k * lt + norm(L + rho - k) for k in (rho, L + rho))
        new_cl = _lse(g1, g2)
        log_eps = ratio * log_eps
        lc0, lcl = new_c0, new_cl
        st = KamState(n + 1, log_eps, -6 * log_eps / L, lc0, lcl)
        states.append(st)
        if first is None and not (st.c0_ok and st.cl_ok):
            first = n + 1
    return Trajectory(rep.varrho, l0, constant, states, first)


# -------------------------------------------------------------- torus


@dataclass(frozen=True)
class TorusField:
    """Real trigonometric polynomial on ``T^d`` with modes ``|k|_inf <= K``.

    ``coeffs`` maps integer frequency tuples to complex coefficients and is
    closed under ``k -> -k`` with conjugate values.
    """

    d: int
    K: int
    coeffs: Mapping[tuple[int, ...], complex]

    def __post_init__(self) -> None:
        for k, v in self.coeffs.items():
            if len(k) != self.d or max((abs(x) for x in k), default=0) > self.K:
                raise KamError(f"mode {k} outside the d={self.d}, K={self.K} box")
            neg = tuple(-x for x in k)
            w = self.coeffs.get(neg)
            if w is None or abs(w - complex(v).conjugate()) > 1e-12 * max(1.0, abs(v)):
                raise KamError(f"coefficients are not conjugate symmetric at {k}")

    @classmethod
    def random(cls, rng: random.Random, d: int, K: int, decay: float = 0.0) -> "TorusField":
        coeffs: dict[tuple[int, ...], complex] = {}
        grid = _box(d, K)
        for k in grid:
            if k in coeffs:
                continue
            neg = tuple(-x for x in k)
            scale = (1 + sum(x * x for x in k)) ** (-decay / 2)
            if k == neg:
                v = complex(rng.gauss(0, 1) * scale, 0)
            else:
                v = complex(rng.gauss(0, 1), rng.gauss(0, 1)) * scale
            coeffs[k] = v
            coeffs[neg] = v.conjugate()
        return cls(d, K, coeffs)

    @classmethod
    def single_mode(cls, d: int, k: Sequence[int], amp: float = 1.0) -> "TorusField":
        kk = tuple(k)
        neg = tuple(-x for x in kk)
        K = max((abs(x) for x in kk), default=0)
        coeffs = {kk: complex(amp)}
        coeffs[neg] = complex(amp)
        return cls(d, K, coeffs)

    def norm(self, s: float) -> float:
        """Surrogate ``C^s`` norm ``sum (1+|k|^2)^{s/2} |c_k|``."""
        return sum((1 + sum(x * x for x in k)) ** (s / 2) * abs(v) for k, v in self.coeffs.items())

    def l2_norm(self, s: float) -> float:
        return math.sqrt(sum((1 + sum(x * x for x in k)) ** s * abs(v) ** 2 for k, v in self.coeffs.items()))

    def cutoff(self, t: float, keep_low: bool = True) -> "TorusField":
        """Sharp Fourier cutoff at Euclidean radius ``t`` (low part or high part)."""
        out = {k: v for k, v in self.coeffs.items() if (math.sqrt(sum(x * x for x in k)) <= t) == keep_low}
        return TorusField(self.d, self.K, out)


def _box(d: int, K: int) -> list[tuple[int, ...]]:
    pts: list[tuple[int, ...]] = [()]
    for _ in range(d):
        pts = [p + (x,) for p in pts for x in range(-K, K + 1)]
    return pts


@dataclass(frozen=True)
class SmoothingBounds:
    t: float
    s: float
    s_prime: float
    low_lhs: float
    low_rhs: float
    high_lhs: float
    high_rhs: float

    @property
    def low_constant(self) -> float:
        return self.low_lhs / self.low_rhs if self.low_rhs else 0.0

    @property
    def high_constant(self) -> float:
        return self.high_lhs / self.high_rhs if self.high_rhs else 0.0

    def to_json(self) -> dict:
        return {
            "t": self.t,
            "s": self.s,
            "s_prime": self.s_prime,
            "low": {"lhs": self.low_lhs, "rhs_without_C": self.low_rhs, "constant": self.low_constant},
            "high": {"lhs": self.high_lhs, "rhs_without_C": self.high_rhs, "constant": self.high_constant},
        }


def torus_smoothing(t: float, Y: TorusField, s: float, s_prime: float) -> tuple[TorusField, SmoothingBounds]:
    """Smooth ``Y`` at scale ``t`` and evaluate both smoothing bounds.

    ``|s_t Y|_{s+s'} <= C t^{s'} |Y|_s`` and
    ``|(I - s_t) Y|_{s-s'} <= C t^{-s'} |Y|_s``; the returned bounds carry
    both sides without ``C`` so the empirical constant is their ratio.
    """
    if not t > 1:
        raise KamError("smoothing needs t > 1")
    if not s >= s_prime >= 0:
        raise KamError("need s >= s' >= 0")
    low = Y.cutoff(t, keep_low=True)
    high = Y.cutoff(t, keep_low=False)
    ny = Y.norm(s)
    b = SmoothingBounds(
        t, s, s_prime,
        low.norm(s + s_prime), t**s_prime * ny,
        high.norm(s - s_prime), t ** (-s_prime) * ny,
    )
    return low, b


@dataclass
class SmoothingSweep:
    bounds: list[SmoothingBounds]
    s_max: float

    @property
    def global_constant(self) -> float:
        return max((max(b.low_constant, b.high_constant) for b in self.bounds), default=0.0)

    @property
    def allowed(self) -> float:
        return 2.0**self.s_max

    @property
    def ok(self) -> bool:
        return self.global_constant <= self.allowed

    def to_json(self) -> dict:
        return {
            "s_max": self.s_max,
            "global_constant": self.global_constant,
            "allowed": self.allowed,
            "ok": self.ok,
            "grid": [b.to_json() for b in self.bounds],
        }


DEFAULT_T_GRID = (2.0, 4.0, 8.0, 16.0)


def smoothing_sweep(
    fields: Iterable[TorusField],
    s_values: Sequence[int] = (0, 1, 2, 3, 4),
    t_values: Sequence[float] = DEFAULT_T_GRID,
) -> SmoothingSweep:
    """Evaluate both bounds over the ``(s, s', t)`` grid for every field."""
    out = []
    for Y in fields:
        for s in s_values:
            for sp in range(0, s + 1):
                for t in t_values:
                    out.append(torus_smoothing(t, Y, s, sp)[1])
    return SmoothingSweep(out, float(max(s_values)))


@dataclass(frozen=True)
class InterpolationResult:
    lhs: float
    rhs: float
    ok: bool

    @property
    def ratio(self) -> float:
        return self.lhs / self.rhs if self.rhs else 0.0


def interpolation_check(norm0: float, norm_t: float, norm_s: float, t: float, s: float, constant: float = 1.0) -> InterpolationResult:
    """``|v|_t <= C |v|_0^{1-t/s} |v|_s^{t/s}`` for ``0 <= t <= s``."""
    if not 0 <= t <= s:
        raise KamError("need 0 <= t <= s")
    th = t / s if s else 0.0
    rhs = constant * norm0 ** (1 - th) * norm_s**th
    return InterpolationResult(norm_t, rhs, norm_t <= rhs * (1 + 1e-12) + 1e-300)


def interpolation_check_field(Y: TorusField, t: float, s: float, constant: float = 1.0, l2: bool = False) -> InterpolationResult:
    """Interpolation between the surrogate norms of ``Y`` (weighted l1, or weighted l2 when ``l2``)."""
    n = Y.l2_norm if l2 else Y.norm
    return interpolation_check(n(0), n(t), n(s), t, s, constant)
