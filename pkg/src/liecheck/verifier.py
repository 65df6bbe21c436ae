"""Machine checks over the constructed objects, collected into reports.

Every check returns a :class:`CheckResult` with status ``pass``, ``fail`` or
``flagged``.  ``flagged`` marks informational findings: claims outside the
index ranges the constructions are stated for, alternative readings of a
definition, or searches run on types where no claim is made.
"""

from __future__ import annotations

import hashlib
import json
import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Iterable, Sequence

from .constructions import (
    Q0,
    AbelianBasis,
    ChainConfig,
    UVFamily,
    abelian_basis,
    base_sl2,
    chain_config,
    family_eigenvalues,
    split_uv_sets,
    uv_sets,
)
from .lie_core import (
    Coords,
    Element,
    LieAlgebra,
    LieError,
    ad_matrix,
    algebra,
    bracket,
    centralizer,
    eigenspace_decomposition,
    format_coords,
    image_of_ad,
    is_nilpotent,
    subspace_of,
)
from .linalg import Subspace

PASS, FAIL, FLAGGED = "pass", "fail", "flagged"


@dataclass
class CheckResult:
    check_id: str
    claim_ref: str
    status: str
    details: str = ""
    witness: Any = None
    elapsed_ms: float = 0.0

    def __post_init__(self) -> None:
        if self.status not in (PASS, FAIL, FLAGGED):
            raise ValueError(f"bad status {self.status!r}")
        if self.status != PASS and not self.details:
            raise ValueError("failed or flagged results need details")

    @property
    def passed(self) -> bool:
        return self.status == PASS

    def to_json(self, timings: bool = False) -> dict:
        out: dict[str, Any] = {
            "check_id": self.check_id,
            "claim_ref": self.claim_ref,
            "status": self.status,
            "details": self.details,
        }
        if self.witness is not None:
            out["witness"] = self.witness
        if timings:
            out["elapsed_ms"] = round(self.elapsed_ms, 3)
        return out


@dataclass
class Report:
    type_tag: str
    rank: int
    results: list[CheckResult] = field(default_factory=list)
    seed: int = 0

    def __post_init__(self) -> None:
        self.results.sort(key=lambda r: r.check_id)

    @property
    def summary(self) -> dict[str, int]:
        counts = {PASS: 0, FAIL: 0, FLAGGED: 0}
        for r in self.results:
            counts[r.status] += 1
        return counts

    @property
    def exit_code(self) -> int:
        s = self.summary
        if s[FAIL]:
            return 1
        if s[FLAGGED]:
            return 2
        return 0

    def payload(self) -> dict:
        return {
            "type": self.type_tag,
            "rank": self.rank,
            "seed": self.seed,
            "results": [r.to_json(timings=False) for r in self.results],
            "summary": self.summary,
        }

    def to_json(self, timings: bool = False) -> dict:
        body = self.payload()
        digest = hashlib.sha256(json.dumps(body, sort_keys=True, separators=(",", ":")).encode()).hexdigest()
        if timings:
            body["results"] = [r.to_json(timings=True) for r in self.results]
        body["payload_sha256"] = digest
        return body

    def to_text(self) -> str:
        lines = [f"report {self.type_tag} (seed {self.seed})"]
        for r in self.results:
            lines.append(f"  [{r.status.upper():7}] {r.check_id}: {r.details}")
        s = self.summary
        lines.append(f"summary: pass={s[PASS]} fail={s[FAIL]} flagged={s[FLAGGED]}")
        return "\n".join(lines)


def _timed(fn: Callable[[], CheckResult]) -> CheckResult:
    t0 = time.perf_counter()
    res = fn()
    res.elapsed_ms = (time.perf_counter() - t0) * 1000.0
    return res


def _label(c: Sequence[Fraction]) -> str:
    return format_coords(c)


def _root_of(e: Element) -> str:
    if len(e.coeffs) == 1 and e.coeffs[0][0] < e.algebra.n_roots:
        return _label(e.algebra.root_order[e.coeffs[0][0]].coords)
    return str(e)


# ----------------------------------------------------------------- D checks


def check_cardinalities(basis: AbelianBasis) -> CheckResult:
    """``|D|`` equals the claimed formula value and the roots are distinct."""
    n = len(basis.roots)
    distinct = len(set(basis.roots)) == n
    ok = distinct and n == basis.claimed_cardinality
    det = f"|D| = {n}, claimed {basis.claimed_cardinality} ({basis.formula})"
    if not distinct:
        det += "; duplicate roots"
    return CheckResult("cardinality", "D-cardinality", PASS if ok else FAIL, det)


def check_abelian(basis: AbelianBasis) -> CheckResult:
    """All pairwise brackets of ``D`` vanish exactly."""
    els = basis.elements
    for a in range(len(els)):
        for b in range(a + 1, len(els)):
            if not bracket(els[a], els[b]).is_zero():
                w = [_label(basis.roots[a]), _label(basis.roots[b])]
                return CheckResult("abelian", "D-abelian", FAIL, f"[u_{w[0]}, u_{w[1]}] != 0", witness=w)
    return CheckResult("abelian", "D-abelian", PASS, f"{len(els) * (len(els) - 1) // 2} brackets vanish")


def check_nilpotent(basis: AbelianBasis) -> CheckResult:
    """Every element of ``D`` is ad-nilpotent."""
    worst = 0
    for r, e in zip(basis.roots, basis.elements):
        ok, idx = is_nilpotent(ad_matrix(e), max_power=8)
        if not ok:
            return CheckResult("nilpotent", "D-unipotent", FAIL, f"ad(u_{_label(r)}) is not nilpotent", witness=_label(r))
        worst = max(worst, idx)
    return CheckResult("nilpotent", "D-unipotent", PASS, f"all ad-nilpotent, maximal index {worst}")


def check_maximal(basis: AbelianBasis) -> CheckResult:
    """Maximality surrogate: the centralizer of ``span(D)`` equals ``span(D)``.

    A larger abelian subalgebra containing ``D`` would lie in this
    centralizer, so equality certifies maximality among abelian subalgebras.
    On failure the witness is a centralizer basis vector outside the span.
    """
    if not basis.elements:
        return CheckResult("maximal", "D-maximal", FAIL, "empty basis")
    alg = basis.elements[0].algebra
    span = subspace_of(alg, basis.elements)
    cen = centralizer(list(basis.elements))
    if cen == span:
        return CheckResult("maximal", "D-maximal", PASS, f"centralizer of span(D) has dimension {cen.dim} = |D|")
    for v in cen.basis():
        if not span.contains(v):
            w = str(alg.element(v))
            return CheckResult(
                "maximal", "D-maximal", FAIL,
                f"centralizer dimension {cen.dim} exceeds span dimension {span.dim}", witness=w,
            )
    return CheckResult("maximal", "D-maximal", FAIL, "span(D) is not contained in its centralizer")


# ------------------------------------------------------------ eigenvalues


def check_eigenvalue_membership(family: UVFamily, X: Element, check_id: str = "eigenvalues") -> CheckResult:
    """Each nonempty ``U^eps`` lies in one ad_X eigenspace with eigenvalue 1 or 2; ``V^eps`` in -1 or -2."""
    problems = []
    table: dict[str, str] = {}
    for letter, allowed, roots in (("U", {1, 2}, family.u_roots), ("V", {-1, -2}, family.v_roots)):
        for eps in range(1, Q0 + 1):
            rs = roots[eps - 1]
            if not rs:
                continue
            els = [family.algebra.root_vector(c) for c in rs]
            evs = family_eigenvalues(X, els)
            distinct = sorted({e for e in evs if e is not None})
            table[f"{letter}{eps}"] = ",".join(str(e) for e in distinct) if None not in evs else "non-eigen"
            if None in evs or len(distinct) != 1 or distinct[0] not in allowed:
                bad = [_label(c) + f":{ev}" for c, ev in zip(rs, evs) if ev is None or ev not in allowed]
                shown = ", ".join(str(e) for e in distinct)
                problems.append(f"{letter}^{eps} eigenvalues {{{shown}}} outliers {bad}")
    if problems:
        return CheckResult(check_id, "UV-eigenvalues", FAIL, "; ".join(problems), witness=table)
    return CheckResult(check_id, "UV-eigenvalues", PASS, "every family sits in one allowed eigenspace", witness=table)


def check_zero_eigenspace(alg: LieAlgebra) -> CheckResult:
    """Root vectors killed by ``ad_X`` lie in ``g1_perp``, as does the Cartan part orthogonal to the base root.

    The full split Cartan contains ``X`` itself and ``[X, U] = 2U``, so only
    the kernel of the base root inside the Cartan can lie in ``g1_perp``;
    that part is what is checked, and the details say so.
    """
    base = base_sl2(alg, require_e0=False)
    spaces = eigenspace_decomposition(base.X)
    evs = sorted(spaces)
    bad = []
    for j, r in enumerate(alg.root_order):
        v = {j: Fraction(1)}
        if spaces[Fraction(0)].contains(v) and not base.g1_perp.contains(v):
            bad.append(_label(r.coords))
    cartan = Subspace(alg.dim, (h.vec for h in alg.cartan()))
    inter = cartan.intersection(base.g1_perp)
    x_in = base.g1_perp.contains(base.X.vec)
    allowed = {Fraction(k) for k in (-2, -1, 0, 1, 2)}
    ev_ok = set(evs) <= allowed
    det = (
        f"eigenvalues {{{', '.join(str(e) for e in evs)}}}; g1_perp dimension {base.g1_perp.dim}; "
        f"Cartan meets g1_perp in dimension {inter.dim} of {alg.rank} (X in g1_perp: {x_in})"
    )
    if bad or not ev_ok or inter.dim != alg.rank - 1:
        return CheckResult("zero_eigenspace", "adX-decomposition", FAIL, det + f"; outside g1_perp: {bad}", witness=bad or None)
    return CheckResult("zero_eigenspace", "adX-decomposition", PASS, det)


# ----------------------------------------------------------------- E0


def check_e0(alg: LieAlgebra) -> CheckResult:
    try:
        base = base_sl2(alg, require_e0=True)
    except LieError as exc:
        return CheckResult("e0", "E0-choice", FLAGGED, f"E0 pair unavailable: {exc}")
    bad = [_root_of(e) for e in base.e0 if not base.g1_perp.contains(e.vec)]
    if bad:
        return CheckResult("e0", "E0-choice", FAIL, f"not in g1_perp: {bad}", witness=bad)
    return CheckResult("e0", "E0-choice", PASS, "u_{L3-L4}, u_{L5-L6} lie in g1_perp")


# ------------------------------------------------------- witness search


@dataclass(frozen=True)
class WitnessOutcome:
    phi: Coords
    psi: Coords
    witness: Coords | None
    examined: int
    named: tuple[tuple[str, Coords, bool], ...]


def _sparse(c: Sequence[Fraction]) -> dict[int, Fraction]:
    return {i + 1: v for i, v in enumerate(c) if v != 0}


def named_witnesses_C(n: int, phi: Sequence[Fraction], psi: Sequence[Fraction]) -> list[tuple[str, Coords]]:
    """Witnesses named by the type-C case analysis for ``(phi, psi)``.

    Returns ``(rule, omega)`` for every rule whose pattern matches; an empty
    list means the pair is outside the enumerated cases.
    """

    def V(*terms: tuple[int, int]) -> Coords:
        v = [Fraction(0)] * n
        for i, c in terms:
            v[i - 1] += c
        return tuple(v)

    def odd(k: int) -> bool:
        return k % 2 == 1

    p, s = _sparse(phi), _sparse(psi)
    out: list[tuple[str, Coords]] = []
    odds = [k for k in range(1, n + 1) if odd(k)]
    evens = [k for k in range(1, n + 1) if not odd(k)]

    def two_term(d: dict[int, Fraction]) -> list[tuple[int, int, int, int]]:
        """All readings of ``d`` as ``a*L_x + b*L_y`` (``x == y`` allowed for 2L_x)."""
        items = sorted(d.items())
        if len(items) == 1:
            (x, c), = items
            if abs(c) == 2:
                sg = 1 if c > 0 else -1
                return [(sg, x, sg, x)]
            return []
        if len(items) == 2:
            (x, a), (y, b) = items
            return [(int(a), x, int(b), y), (int(b), y, int(a), x)]
        return []

    pf = two_term(p)
    if not pf:
        return out
    # Case 1: phi = L_i - L_j, i odd, j even.
    for a, i, b, j in pf:
        if a == 1 and b == -1 and odd(i) and not odd(j) and i != j:
            for c1, x, c2, y in two_term(s):
                if c1 == -1 and x == i and c2 == 1:
                    k = y
                    if k == j:
                        q = next(q for q in odds if q != i)
                        out.append(("1:-Li+Lk,k=j", V((i, 1), (q, 1))))
                    elif odd(k):
                        out.append(("1:-Li+Lk,k odd", V((i, 1), (k, 1))))
                    else:
                        out.append(("1:-Li+Lk,k even", V((i, 1), (k, -1))))
                if c1 == -1 and x == i and c2 == -1 and y != j:
                    m = y
                    if odd(m):
                        out.append(("1:-Li-Lm,m odd", V((m, 2))))
                    else:
                        out.append(("1:-Li-Lm,m even", V((i, 1), (m, -1))))
                if c1 == 1 and x == j and c2 == 1 and y != i:
                    pp = y
                    if odd(pp):
                        out.append(("1:Lj+Lp,p odd", V((pp, 1), (j, -1))))
                    else:
                        out.append(("1:Lj+Lp,p even", V((j, -1), (pp, -1))))
                if c1 == 1 and x == j and c2 == -1 and y != j:
                    l = y
                    if l == i:
                        q = next(q for q in odds if q != i)
                        out.append(("1:Lj-Ll,l=i", V((i, 1), (q, 1))))
                    elif odd(l):
                        out.append(("1:Lj-Ll,l odd", V((l, 1), (j, -1))))
                    else:
                        out.append(("1:Lj-Ll,l even", V((l, -1), (j, -1))))
    # Case 2: phi = L_i + L_j, i != j both odd (symmetric in i, j).
    for a, i, b, j in pf:
        if a == 1 and b == 1 and i != j and odd(i) and odd(j):
            for c1, x, c2, y in two_term(s):
                if c1 == -1 and x == i and c2 == 1 and y not in (i, j):
                    k = y
                    out.append(("2:-Li+Lk", V((i, 1), (k, 1)) if odd(k) else V((i, 1), (k, -1))))
                if c1 == -1 and x == i and c2 == -1:
                    m = y
                    if m == i:
                        out.append(("2:-Li-Lm,m=i", V((i, 2))))
                    elif m == j:
                        out.append(("2:-Li-Lm,m=j", V((i, 1), (evens[0], -1))))
                    elif not odd(m):
                        out.append(("2:-Li-Lm,m even", V((i, 1), (m, -1))))
                    else:
                        out.append(("2:-Li-Lm,m odd", V((i, 1), (m, 1))))
    # Case 3: phi = 2L_i (i odd) or -2L_j (j even).
    if len(p) == 1:
        (i, c), = p.items()
        for c1, x, c2, y in two_term(s):
            if c == 2 and odd(i) and c1 == -1 and x == i and y != i:
                out.append(("3:2Li", V((i, 1), (2, -1))))
            if c == -2 and not odd(i) and c1 == 1 and x == i and y != i:
                out.append(("3:-2Lj", V((1, 1), (i, -1))))
    # Case 4: phi = -L_i - L_j, i != j both even (symmetric in i, j).
    for a, i, b, j in pf:
        if a == -1 and b == -1 and i != j and not odd(i) and not odd(j):
            for c1, x, c2, y in two_term(s):
                if c1 == 1 and x == i and c2 == -1 and y not in (i, j):
                    m = y
                    out.append(("4:Li-Lm", V((m, 1), (i, -1)) if odd(m) else V((i, -1), (m, -1))))
                if c1 == 1 and x == i and c2 == 1:
                    k = y
                    if k == i:
                        out.append(("4:Li+Lk,k=i", V((i, -2))))
                    elif k == j:
                        out.append(("4:Li+Lk,k=j", V((odds[0], 1), (i, -1))))
                    elif not odd(k):
                        out.append(("4:Li+Lk,k even", V((i, -1), (k, -1))))
                    else:
                        out.append(("4:Li+Lk,k odd", V((k, 1), (i, -1))))
    seen: dict[tuple[str, Coords], None] = {}
    for item in out:
        seen.setdefault(item, None)
    return list(seen)


class WitnessSearcher:
    """Exhaustive search for ``omega in D`` with ``[u_omega, u_psi]`` outside ``Im(ad u_phi)``."""

    def __init__(self, basis: AbelianBasis) -> None:
        if not basis.elements:
            raise LieError("empty basis")
        self.basis = basis
        self.alg = basis.elements[0].algebra
        self.d_roots = sorted(basis.roots)
        self.d_set = frozenset(basis.roots)
        self._images: dict[Coords, Subspace] = {}

    def image(self, phi: Coords) -> Subspace:
        if phi not in self._images:
            self._images[phi] = image_of_ad(self.alg.root_vector(phi))
        return self._images[phi]

    def is_valid_pair(self, phi: Coords, psi: Coords) -> bool:
        if phi not in self.d_set or psi in self.d_set:
            return False
        return not self.image(phi).contains(self.alg.root_vector(psi).vec)

    def escapes(self, phi: Coords, psi: Coords, omega: Coords) -> bool:
        if omega not in self.d_set:
            return False
        b = bracket(self.alg.root_vector(omega), self.alg.root_vector(psi))
        return not b.is_zero() and not self.image(phi).contains(b.vec)

    def search(self, phi: Coords, psi: Coords) -> WitnessOutcome:
        if phi not in self.d_set:
            raise LieError(f"phi = {_label(phi)} is not a root of D")
        if psi in self.d_set:
            raise LieError(f"psi = {_label(psi)} lies in D")
        if self.image(phi).contains(self.alg.root_vector(psi).vec):
            raise LieError(f"u_psi lies in Im(ad u_phi) for psi = {_label(psi)}")
        found = None
        examined = 0
        for omega in self.d_roots:
            examined += 1
            if self.escapes(phi, psi, omega):
                found = omega
                break
        named: list[tuple[str, Coords, bool]] = []
        if self.alg.root_system.lie_type == "C":
            n = self.alg.root_system.ambient_dim
            for rule, omega in named_witnesses_C(n, phi, psi):
                named.append((rule, omega, self.escapes(phi, psi, omega)))
        return WitnessOutcome(phi, psi, found, examined if found is None else examined, tuple(named))

    def valid_pairs(self) -> list[tuple[Coords, Coords]]:
        out = []
        for phi in self.d_roots:
            for r in self.alg.root_order:
                if self.is_valid_pair(phi, r.coords):
                    out.append((phi, r.coords))
        return out


def witness_search(basis: AbelianBasis, phi: Sequence[Fraction | int], psi: Sequence[Fraction | int]) -> CheckResult:
    """Search a single ``(phi, psi)`` pair; precondition violations raise LieError."""
    ws = WitnessSearcher(basis)
    phi_c = tuple(Fraction(x) for x in phi)
    psi_c = tuple(Fraction(x) for x in psi)
    out = ws.search(phi_c, psi_c)
    is_c = ws.alg.root_system.lie_type == "C"
    wit = {
        "phi": _label(phi_c),
        "psi": _label(psi_c),
        "omega": _label(out.witness) if out.witness else None,
        "examined": out.examined,
        "named": [{"rule": r, "omega": _label(o), "valid": ok} for r, o, ok in out.named],
    }
    if out.witness is None:
        status = FAIL if is_c else FLAGGED
        return CheckResult("witness", "bracket-escape", status, f"no witness among {out.examined} candidates", witness=wit)
    if any(not ok for _, _, ok in out.named):
        return CheckResult("witness", "bracket-escape", FAIL, "a named witness does not satisfy the escape condition", witness=wit)
    return CheckResult("witness", "bracket-escape", PASS, f"omega = {_label(out.witness)}", witness=wit)


def witness_sweep(basis: AbelianBasis) -> CheckResult:
    """Run the witness search over every valid ``(phi, psi)`` pair."""
    ws = WitnessSearcher(basis)
    is_c = ws.alg.root_system.lie_type == "C"
    pairs = ws.valid_pairs()
    missing = []
    named_total = named_bad = 0
    bad_named = []
    for phi, psi in pairs:
        out = ws.search(phi, psi)
        if out.witness is None:
            missing.append([_label(phi), _label(psi)])
        for rule, omega, ok in out.named:
            named_total += 1
            if not ok:
                named_bad += 1
                bad_named.append([_label(phi), _label(psi), rule, _label(omega)])
    det = f"{len(pairs)} valid pairs, {len(pairs) - len(missing)} with witnesses; {named_total} named witnesses checked"
    wit: dict[str, Any] = {"pairs": len(pairs), "missing": missing[:20], "named_checked": named_total, "named_failed": bad_named[:20]}
    if missing or named_bad:
        if is_c:
            return CheckResult("witness_sweep", "bracket-escape", FAIL, det + f"; {len(missing)} missing, {named_bad} named failed", witness=wit)
        return CheckResult(
            "witness_sweep", "bracket-escape", FLAGGED,
            det + f"; {len(missing)} pairs without witness (no claim is made for this type)", witness=wit,
        )
    return CheckResult("witness_sweep", "bracket-escape", PASS, det, witness=wit)


# ------------------------------------------------------------ chain checks


def check_chain_hypotheses(chain: ChainConfig) -> CheckResult:
    """Hypotheses of the smoothing lemma for ``(Q_1, ..., Q_n)``.

    * factors ``Q_i`` (``i >= 2``) are abelian and consist of ad-nilpotent
      generators;
    * (star) the factor spans add up (as a linear sum) to ``Lie(Q)``;
    * (star-star) for ``i, j >= 2`` the span of ``[Q_i, Q_j]`` lies in one
      ``Q_{i(j)}`` (``i(j) >= 2``) commuting with every ``Q_k``, ``k >= 2``.

    Directness of the sum is not required; overlaps are reported in the
    witness under ``overlap``.
    """
    cid = f"chain_{chain.name}"
    facs = chain.factors
    if not facs:
        return CheckResult(cid, "chain-hypotheses", FAIL, "empty chain")
    alg = facs[0].generators[0].algebra if facs[0].generators else None
    n = chain.target.n
    problems = []
    uni = facs[1:]
    for f in uni:
        for a in range(len(f.generators)):
            for b in range(a + 1, len(f.generators)):
                if not bracket(f.generators[a], f.generators[b]).is_zero():
                    problems.append(f"{f.label} is not abelian")
                    break
            else:
                continue
            break
        for g in f.generators:
            ok, _ = is_nilpotent(ad_matrix(g), max_power=8)
            if not ok:
                problems.append(f"{f.label} has a non-nilpotent generator")
                break
    total = Subspace(n)
    for f in facs:
        total = total + f.span
    star = total == chain.target
    if not star:
        problems.append(f"(star) sum of factors has dimension {total.dim}, Lie(Q) = {chain.target_label} has {chain.target.dim}")
    # Directness diagnostics.
    uni_sum = Subspace(n)
    for f in uni:
        uni_sum = uni_sum + f.span
    overlap_uni = sum(f.span.dim for f in uni) - uni_sum.dim
    overlap_all = sum(f.span.dim for f in facs) - total.dim
    # Central factors.
    central = []
    for k, fk in enumerate(uni):
        central.append(all(bracket(x, y).is_zero() for fm in uni for x in fk.generators for y in fm.generators))
    imap: dict[str, str | None] = {}
    for a in range(len(uni)):
        for b in range(a + 1, len(uni)):
            vecs = [bracket(x, y).vec for x in uni[a].generators for y in uni[b].generators]
            bspace = Subspace(n, (v for v in vecs if v))
            key = f"{uni[a].label},{uni[b].label}"
            if bspace.dim == 0:
                continue
            target = None
            for k, fk in enumerate(uni):
                if central[k] and fk.span.contains_subspace(bspace):
                    target = fk.label
                    break
            imap[key] = target
            if target is None:
                problems.append(f"(star-star) [{uni[a].label}, {uni[b].label}] lies in no central factor")
    wit = {
        "factors": [f.label for f in facs],
        "target": chain.target_label,
        "i_of_j": imap,
        "overlap": {"unipotent_factors": overlap_uni, "all_factors": overlap_all},
    }
    det = f"{len(facs)} factors; sum dim {total.dim} vs {chain.target_label} dim {chain.target.dim}; {len(imap)} nonzero brackets"
    if problems:
        return CheckResult(cid, "chain-hypotheses", FAIL, det + "; " + "; ".join(problems[:5]), witness=wit)
    return CheckResult(cid, "chain-hypotheses", PASS, det, witness=wit)


def split_dropped_roots(alg: LieAlgebra) -> list[str]:
    """Roots of some ``U^eps`` / ``V^eps`` missing from both split subfamilies."""
    sp = split_uv_sets(alg)
    out = []
    for full, s1, s2 in ((sp.base.u_roots, sp.c1_u, sp.c2_u), (sp.base.v_roots, sp.c1_v, sp.c2_v)):
        for f, a, b in zip(full, s1, s2):
            out.extend(_label(c) for c in f if c not in a and c not in b)
    return out


# ------------------------------------------------------------- Jacobi


def check_jacobi(alg: LieAlgebra, seed: int = 0, samples: int = 2000, exhaustive_limit: int = 30) -> CheckResult:
    """Jacobi identity on basis triples: exhaustive for small algebras, seeded sampling otherwise."""
    n = alg.dim
    basis = [alg.basis_element(i) for i in range(n)]

    def jac(i: int, j: int, k: int) -> bool:
        x, y, z = basis[i], basis[j], basis[k]
        return (bracket(x, bracket(y, z)) + bracket(y, bracket(z, x)) + bracket(z, bracket(x, y))).is_zero()

    if n <= exhaustive_limit:
        triples: Iterable[tuple[int, int, int]] = ((i, j, k) for i in range(n) for j in range(i + 1, n) for k in range(j + 1, n))
        mode = "exhaustive"
    else:
        rng = random.Random(seed)
        triples = [(rng.randrange(n), rng.randrange(n), rng.randrange(n)) for _ in range(samples)]
        mode = f"{samples} seeded samples"
    count = 0
    for t in triples:
        count += 1
        if not jac(*t):
            w = [alg.basis_label(i) for i in t]
            return CheckResult("jacobi", "chevalley-basis", FAIL, f"Jacobi fails ({mode})", witness=w)
    return CheckResult("jacobi", "chevalley-basis", PASS, f"{count} triples ({mode})")


# ------------------------------------------------------------- report

CHECK_NAMES = (
    "cardinality",
    "abelian",
    "nilpotent",
    "maximal",
    "eigenvalues",
    "literal_sets",
    "zero_eigenspace",
    "e0",
    "witness",
    "chains",
    "jacobi",
)


# Diagnostic checks reporting alternative readings; run only on request.
OPTIONAL_CHECKS = ("literal_sets",)
DEFAULT_CHECKS = tuple(c for c in CHECK_NAMES if c not in OPTIONAL_CHECKS)


def full_report(
    lie_type: str,
    rank: int | None = None,
    seed: int = 0,
    checks: Sequence[str] | None = None,
    jacobi_samples: int = 2000,
) -> Report:
    """Run every applicable check for one algebra."""
    alg = algebra(lie_type, rank)
    wanted = set(checks) if checks else set(DEFAULT_CHECKS)
    if "all" in wanted:
        wanted = (wanted - {"all"}) | set(CHECK_NAMES)
    unknown = wanted - set(CHECK_NAMES)
    if unknown:
        raise LieError(f"unknown checks {sorted(unknown)}; available: {', '.join(CHECK_NAMES)}")
    results: list[CheckResult] = []

    def run(name: str, fn: Callable[[], CheckResult]) -> None:
        if name in wanted:
            try:
                results.append(_timed(fn))
            except LieError as exc:
                results.append(CheckResult(name, "construction", FLAGGED, f"not applicable: {exc}"))

    basis: AbelianBasis | None = None
    d_names = {"cardinality", "abelian", "nilpotent", "maximal", "witness"}
    if wanted & d_names:
        try:
            basis = abelian_basis(alg)
        except LieError as exc:
            results.append(CheckResult("abelian_basis", "construction", FLAGGED, f"D unavailable: {exc}"))
    if basis is not None:
        b = basis
        run("cardinality", lambda: check_cardinalities(b))
        run("abelian", lambda: check_abelian(b))
        run("nilpotent", lambda: check_nilpotent(b))
        run("maximal", lambda: check_maximal(b))
        run("witness", lambda: witness_sweep(b))

    def eig(literal: bool) -> CheckResult:
        base = base_sl2(alg, require_e0=False)
        fam = uv_sets(alg, literal=literal)
        res = check_eigenvalue_membership(fam, base.X, "literal_sets" if literal else "eigenvalues")
        if literal and res.status == FAIL:
            res.status = FLAGGED
            res.details = "printed index ranges give: " + res.details
        return res

    run("eigenvalues", lambda: eig(False))
    run("literal_sets", lambda: eig(True))
    run("zero_eigenspace", lambda: check_zero_eigenspace(alg))
    run("e0", lambda: check_e0(alg))
    if "chains" in wanted:
        for which in ("uv_step1", "uv_step2", "split_step1", "split_step2"):
            def chk(w: str = which) -> CheckResult:
                res = check_chain_hypotheses(chain_config(alg, w))
                if w.startswith("split_") and res.status == FAIL:
                    dropped = split_dropped_roots(alg)
                    if dropped:
                        res.status = FLAGGED
                        res.details = (
                            f"{len(dropped)} U/V roots commute with neither E0 pair and fall out of both "
                            "split subfamilies, so the modelled split cannot be complete here; " + res.details
                        )
                return res

            try:
                results.append(_timed(chk))
            except LieError as exc:
                results.append(CheckResult(f"chain_{which}", "chain-hypotheses", FLAGGED, f"not applicable: {exc}"))
    run("jacobi", lambda: check_jacobi(alg, seed=seed, samples=jacobi_samples))
    return Report(alg.tag, alg.rank, results, seed)
