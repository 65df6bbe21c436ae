"""Acceptance criteria, one test per criterion.

Every test writes a single ``PASS``/``FAIL`` line with the measured numbers
to the terminal before asserting, so any pytest run over this file (or
running it directly) gives a one-line-per-criterion summary.
"""

from __future__ import annotations

import random
import subprocess
import sys
import time
from fractions import Fraction
from typing import Callable

import pytest

from liecheck.constructions import abelian_basis, base_sl2, chain_config, uv_sets
from liecheck.lie_core import ad_matrix, algebra, bracket, is_nilpotent
from liecheck.linalg import RatMatrix, solve_dense
from liecheck.model_rep import (
    BumpFunction,
    ExtendedVector,
    GaussianRational,
    apply_pi,
    dense_solve,
    derivative_action,
    jordan_backsub_solve,
    pointwise_product,
    random_atomic,
    relative_residual,
    root_ad_matrix,
    tail_bound_check,
)
from liecheck.tame_kam import (
    TorusField,
    audit_schedule,
    constant_chain,
    simulate_iteration,
    smoothing_sweep,
)
from liecheck.verifier import PASS, check_chain_hypotheses, check_eigenvalue_membership, witness_sweep

D_CASES = (
    [("A", n) for n in range(4, 9)]
    + [("B", n) for n in range(5, 9)]
    + [("C", n) for n in range(3, 9)]
    + [("D", n) for n in range(5, 9)]
    + [("E", 6), ("E", 7), ("E", 8), ("F", 4), ("B", 3)]
)


def _formula(t: str, n: int) -> int:
    if t == "A":
        return (n + 1) ** 2 // 4
    if t == "B":
        return 5 if n == 3 else n * (n - 1) // 2 + 1
    if t == "C":
        return n * (n + 1) // 2
    if t == "D":
        return n * (n - 1) // 2
    return {("E", 6): 16, ("E", 7): 27, ("E", 8): 36, ("F", 4): 9}[(t, n)]


_reporter = None


@pytest.fixture(autouse=True)
def _terminal(request):
    global _reporter
    _reporter = request.config.pluginmanager.getplugin("terminalreporter")
    yield


def verdict(label: str, ok: bool, detail: str) -> None:
    line = f"{'PASS' if ok else 'FAIL'} {label}: {detail}"
    if _reporter is not None:
        _reporter.write_line("")
        _reporter.write_line(line)
    else:
        print(line)
    assert ok, detail


def timed(fn: Callable[[], object]) -> tuple[object, float]:
    t0 = time.perf_counter()
    out = fn()
    return out, time.perf_counter() - t0


def test_criterion_01_cardinality():
    def run():
        return [(key, len(abelian_basis(algebra(*key)).roots), _formula(*key)) for key in D_CASES]

    rows, secs = timed(run)
    bad = [r for r in rows if r[1] != r[2]]
    verdict("criterion 1 (|D| formulas)", not bad and secs < 10, f"{len(rows)} algebras, {len(bad)} mismatches, {secs:.2f}s (< 10s)")


def test_criterion_02_abelian_nilpotent():
    def run():
        bad = []
        for key in D_CASES:
            d = abelian_basis(algebra(*key))
            els = d.elements
            if any(not bracket(x, y).is_zero() for i, x in enumerate(els) for y in els[i + 1 :]):
                bad.append((key, "bracket"))
            if any(not is_nilpotent(ad_matrix(x))[0] for x in els):
                bad.append((key, "nilpotent"))
        return bad

    bad, secs = timed(run)
    verdict("criterion 2 (abelian and ad-nilpotent D)", not bad and secs < 30, f"{len(D_CASES)} algebras incl. E8, failures {bad}, {secs:.2f}s (< 30s)")


def test_criterion_03_eigenvalues():
    bad = []
    for key in D_CASES:
        alg = algebra(*key)
        res = check_eigenvalue_membership(uv_sets(alg), base_sl2(alg, require_e0=False).X)
        if res.status != PASS:
            bad.append((key, res.details))
    verdict("criterion 3 (U in {1,2}, V in {-1,-2})", not bad, f"{len(D_CASES)} algebras, failures {bad}")


def test_criterion_04_witnesses():
    lines, bad, t8 = [], [], 0.0
    for n in range(3, 9):
        res, secs = timed(lambda: witness_sweep(abelian_basis(algebra("C", n))))
        w = res.witness
        lines.append(f"C{n}: {w['pairs']} pairs, {w['named_checked']} named")
        if res.status != PASS:
            bad.append(n)
        if n == 8:
            t8 = secs
    verdict("criterion 4 (type-C witness sweep)", not bad and t8 < 60, "; ".join(lines) + f"; C8 in {t8:.2f}s (< 60s)")


def test_criterion_05_chains():
    cases = [(key, w) for key in [("A", 5), ("B", 5), ("C", 3), ("D", 5)] for w in ("uv_step1", "uv_step2")]
    cases += [(("A", 7), "split_step1"), (("A", 7), "split_step2")]
    bad = []
    for key, which in cases:
        res = check_chain_hypotheses(chain_config(algebra(*key), which))
        if res.status != PASS:
            bad.append((key, which, res.details))
    verdict("criterion 5 (chain hypotheses)", not bad, f"{len(cases)} chain configurations, failures {bad}")


def test_criterion_06_model_identities():
    rng = random.Random(6)
    worst_mult = worst_deriv = 0.0
    for _ in range(1000):
        m = rng.randint(1, 3)
        xi = random_atomic(rng, m, rng.randint(1, 6), char_range=5.0)
        f1 = BumpFunction(rng.uniform(0.5, 2), rng.uniform(2.5, 5), m)
        f2 = BumpFunction(rng.uniform(0.5, 2), rng.uniform(2.5, 5), m)
        lhs = apply_pi(f1, apply_pi(f2, xi))
        rhs = apply_pi(pointwise_product(f1, f2), xi)
        worst_mult = max(worst_mult, lhs.max_abs_diff(rhs) / max(1.0, xi.norm()))
        k = [rng.randint(0, 3) for _ in range(m)]
        worst_deriv = max(worst_deriv, derivative_action(k, f1, xi)[1])
    tail_fail = 0
    worst_ratio = 0.0
    for _ in range(1000):
        m = rng.randint(1, 3)
        xi = random_atomic(rng, m, rng.randint(1, 8), char_range=100.0)
        f = BumpFunction(rng.uniform(0.2, 2), rng.uniform(2.5, 6), m)
        tb = tail_bound_check(xi, f, rng.uniform(1.01, 40), rng.randint(0, 5))
        worst_ratio = max(worst_ratio, tb.ratio)
        tail_fail += not tb.holds(1.0)
    ok = worst_mult <= 1e-12 and worst_deriv <= 1e-12 and tail_fail == 0
    verdict(
        "criterion 6 (model identities)",
        ok,
        f"multiplicativity residual {worst_mult:.1e}, derivative residual {worst_deriv:.1e} over 1000 vectors; "
        f"tail bound C=1 violations {tail_fail}/1000 (max ratio {worst_ratio:.3f})",
    )


def _random_nilpotent(rng: random.Random, n: int) -> RatMatrix:
    """``P J P^{-1}`` with a random Jordan structure and a unimodular integer ``P``.

    ``P`` is a product of ``n`` elementary matrices with entries +-1, which keeps
    the entries moderate; long products give entries near 10^3, where even the
    dense oracle only reaches relative residuals near 1e-10.
    """
    j = [[Fraction(0)] * n for _ in range(n)]
    pos = 0
    while pos < n:
        size = rng.randint(1, n - pos)
        for k in range(size - 1):
            j[pos + k][pos + k + 1] = Fraction(1)
        pos += size
    p = RatMatrix.identity(n)
    for _ in range(n if n > 1 else 0):
        a, b = rng.sample(range(n), 2)
        e = RatMatrix.identity(n)
        e.rows[a][b] = Fraction(rng.choice((-1, 1)))
        p = p @ e
    p_inv = [[Fraction(0)] * n for _ in range(n)]
    dense = p.to_dense()
    for col in range(n):
        x = solve_dense(dense, [Fraction(int(i == col)) for i in range(n)])
        for i in range(n):
            p_inv[i][col] = x[i]
    return p @ RatMatrix.from_dense(j) @ RatMatrix.from_dense(p_inv)


def test_criterion_07_backsub_oracle():
    rng = random.Random(7)

    def gq() -> GaussianRational:
        return GaussianRational(Fraction(rng.randint(-9, 9), rng.randint(1, 5)), Fraction(rng.randint(-9, 9), rng.randint(1, 5)))

    instances: list[tuple[str, RatMatrix]] = []
    for root in [(1, -1, 0), (0, 1, -1), (1, 0, -1)]:
        instances.append((f"A2 ad u{root}", root_ad_matrix("A", 2, root)))
    for root in [(2, 0, 0), (1, -1, 0), (1, 1, 0), (0, 0, 2)]:
        instances.append((f"C3 ad u{root}", root_ad_matrix("C", 3, root)))
    for _ in range(20):
        instances.append(("random", _random_nilpotent(rng, rng.randint(1, 12))))
    exact_bad = 0
    worst_float = worst_dense = 0.0
    count = 0
    for _, ad in instances:
        n = ad.nrows
        for _ in range(3):
            k = rng.randint(1, max(1, 64 // n))
            chars = [(float(c),) for c in range(k)]
            base = [b if b != 0 else GaussianRational(1) for b in (gq() for _ in range(k))]
            omega = ExtendedVector(chars, [[gq() for _ in range(k)] for _ in range(n)])
            exact_bad += jordan_backsub_solve(base, ad, omega) != dense_solve(base, ad, omega)
            fbase = [complex(rng.uniform(0.3, 3), rng.uniform(-3, 3)) for _ in range(k)]
            fomega = ExtendedVector(chars, [[complex(rng.gauss(0, 1), rng.gauss(0, 1)) for _ in range(k)] for _ in range(n)])
            v = jordan_backsub_solve(fbase, ad, fomega)
            worst_float = max(worst_float, relative_residual(fbase, ad, v, fomega))
            worst_dense = max(worst_dense, relative_residual(fbase, ad, dense_solve(fbase, ad, fomega), fomega))
            count += 1
    ok = exact_bad == 0 and worst_float <= 1e-10
    verdict(
        "criterion 7 (back-substitution vs dense oracle)",
        ok,
        f"{count} instances (dim*K <= 64, incl. A2 and C3 root vectors): {exact_bad} exact mismatches, worst float residual {worst_float:.1e} (dense oracle {worst_dense:.1e})",
    )


def test_criterion_08_constant_chain():
    c = constant_chain(2, 1, 2, 3)
    got = (c.sigma, c.sigma0, c.sigma1, c.sigma2, c.varrho)
    shown = ", ".join(str(x) for x in got)
    verdict("criterion 8 (constant chain)", got == (3, 30, 300, 570, 573), f"sigma, sigma0, sigma1, sigma2, varrho = {shown}")


STATED = ["a < 1/120", "b < a", "1 - 6a > 5/6", "2 - 20a > 11/6", "(2-4a)(1-b) - 5b > 11/6"]


def test_criterion_09a_audit_reference_point():
    rep, secs = timed(lambda: audit_schedule(100, 12120))
    failing = [n for n in STATED if not rep.get(n).holds]
    margins = ", ".join(f"{n}: {rep.get(n).margin}" for n in STATED)
    verdict(
        "criterion 9a (varrho=100, l0=12120 all stated inequalities)",
        not failing and secs < 1,
        f"a = {rep.a} exactly, so strict inequalities {failing} fail with margin 0; margins {margins}; {secs * 1000:.1f} ms",
    )


def test_criterion_09b_audit_detects_b_lt_a():
    rep, secs = timed(lambda: audit_schedule(573, 68880))
    ok = not rep.get("b < a").holds and rep.repaired_threshold == 573 * 574 and secs < 1
    verdict(
        "criterion 9b (varrho=573, l0=68880 detects b<a failure)",
        ok,
        f"b < a holds: {rep.get('b < a').holds}; repaired threshold l0 > {rep.repaired_threshold}; {secs * 1000:.1f} ms",
    )


def test_criterion_10_simulation():
    rho, l0 = 100, 24240
    audit = audit_schedule(rho, l0)
    tr = simulate_iteration(rho, l0, 1e-4, constant=1.0, n_steps=50)
    ok = audit.ok and tr.ok and len(tr.states) == 51
    verdict(
        "criterion 10 (50-step simulation)",
        ok,
        f"varrho={rho}, l0={l0} (audit ok: {audit.ok}), C=1, eps0=1e-4: first violation {tr.first_violation}",
    )


def test_criterion_11_smoothing():
    rng = random.Random(11)
    fields = [TorusField.random(rng, 2, 20, decay=1.0) for _ in range(3)] + [TorusField.single_mode(2, (8, 0))]
    sw, secs = timed(lambda: smoothing_sweep(fields))
    verdict(
        "criterion 11 (torus smoothing)",
        sw.ok and secs < 10,
        f"{len(sw.bounds)} grid points, global constant {sw.global_constant:.4f} <= 2^s_max = {sw.allowed:g}; {secs:.2f}s (< 10s)",
    )


@pytest.mark.slow
def test_criterion_12_determinism():
    cmd = [sys.executable, "-m", "liecheck", "verify", "E", "8", "--seed", "7", "--format", "json"]
    a = subprocess.run(cmd, capture_output=True, check=False)
    b = subprocess.run(cmd, capture_output=True, check=False)
    same = a.stdout == b.stdout and a.returncode == b.returncode
    verdict(
        "criterion 12 (verify E 8 --seed 7 byte-identical)",
        same and len(a.stdout) > 0,
        f"{len(a.stdout)} bytes, exit codes {a.returncode}/{b.returncode}, identical: {same}",
    )


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-p", "no:cacheprovider"]))
