from __future__ import annotations

import json
from fractions import Fraction

import pytest

from conftest import cached_algebra
from liecheck.constructions import abelian_basis, chain_config
from liecheck.lie_core import LieError, L
from liecheck.verifier import (
    CHECK_NAMES,
    DEFAULT_CHECKS,
    FAIL,
    FLAGGED,
    PASS,
    CheckResult,
    Report,
    WitnessSearcher,
    check_chain_hypotheses,
    check_jacobi,
    check_zero_eigenspace,
    full_report,
    named_witnesses_C,
    split_dropped_roots,
    witness_search,
    witness_sweep,
)


def test_check_result_requires_details_when_not_passing():
    with pytest.raises(ValueError):
        CheckResult("x", "ref", FAIL)
    with pytest.raises(ValueError):
        CheckResult("x", "ref", "maybe", "d")


def test_report_exit_codes_and_order():
    ok = CheckResult("b", "r", PASS)
    flag = CheckResult("a", "r", FLAGGED, "why")
    bad = CheckResult("c", "r", FAIL, "why")
    assert Report("C3", 3, [ok]).exit_code == 0
    assert Report("C3", 3, [ok, flag]).exit_code == 2
    rep = Report("C3", 3, [bad, ok, flag])
    assert rep.exit_code == 1
    assert [r.check_id for r in rep.results] == ["a", "b", "c"]


def test_report_json_hash_ignores_timings():
    r = CheckResult("b", "r", PASS, "fine", elapsed_ms=12.5)
    rep = Report("C3", 3, [r])
    plain, timed = rep.to_json(), rep.to_json(timings=True)
    assert plain["payload_sha256"] == timed["payload_sha256"]
    assert "elapsed_ms" not in plain["results"][0]
    assert timed["results"][0]["elapsed_ms"] == 12.5


def test_named_witnesses_c4_frozen():
    assert named_witnesses_C(4, L(4, (2, -2)), L(4, (2, 1), (3, -1))) == [("3:-2Lj", L(4, (1, 1), (2, -1)))]
    assert named_witnesses_C(4, L(4, (2, -1), (4, -1)), L(4, (4, 2))) == [("4:Li+Lk,k=i", L(4, (4, -2)))]
    assert named_witnesses_C(4, L(4, (2, -1), (3, 1)), L(4, (2, 1), (4, -1))) == [("1:Lj-Ll,l even", L(4, (2, -1), (4, -1)))]


def test_witness_search_single_pair():
    d = abelian_basis(cached_algebra("C", 4))
    res = witness_search(d, L(4, (2, -2)), L(4, (2, 1), (3, -1)))
    assert res.status == PASS
    assert res.witness["named"] == [{"rule": "3:-2Lj", "omega": "L1-L2", "valid": True}]


def test_witness_search_preconditions():
    d = abelian_basis(cached_algebra("C", 3))
    with pytest.raises(LieError):
        witness_search(d, L(3, (1, 1), (2, 1)), L(3, (1, -2)))  # phi not in D
    with pytest.raises(LieError):
        witness_search(d, L(3, (1, 2)), L(3, (3, 2)))  # psi in D


@pytest.mark.parametrize("n,pairs,named", [(3, 54, 36), (4, 172, 96), (5, 425, 200)])
def test_witness_sweep_type_c(n, pairs, named):
    res = witness_sweep(abelian_basis(cached_algebra("C", n)))
    assert res.status == PASS
    assert res.witness["pairs"] == pairs
    assert res.witness["named_checked"] == named
    assert res.witness["missing"] == []


def test_witness_sweep_other_types_are_flagged():
    res = witness_sweep(abelian_basis(cached_algebra("B", 5)))
    assert res.status == FLAGGED
    assert "33 pairs without witness" in res.details


def test_valid_pairs_exclude_image():
    ws = WitnessSearcher(abelian_basis(cached_algebra("C", 3)))
    for phi, psi in ws.valid_pairs():
        assert phi in ws.d_set and psi not in ws.d_set
        assert not ws.image(phi).contains(ws.alg.root_vector(psi).vec)


@pytest.mark.parametrize("key", [("A", 5), ("B", 5), ("C", 3), ("D", 5)])
def test_chain_hypotheses_small_chains(key):
    alg = cached_algebra(*key)
    for which in ("uv_step1", "uv_step2"):
        assert check_chain_hypotheses(chain_config(alg, which)).status == PASS


def test_chain_hypotheses_a7_split():
    alg = cached_algebra("A", 7)
    for which in ("split_step1", "split_step2"):
        assert check_chain_hypotheses(chain_config(alg, which)).status == PASS


def test_split_drops_nothing_for_a7_but_sixteen_for_e8():
    assert split_dropped_roots(cached_algebra("A", 7)) == []
    assert len(split_dropped_roots(cached_algebra("E", 8))) == 16


def test_zero_eigenspace_restated_check():
    res = check_zero_eigenspace(cached_algebra("C", 4))
    assert res.status == PASS
    assert "X in g1_perp: False" in res.details


def test_jacobi_exhaustive_on_small_algebra():
    res = check_jacobi(cached_algebra("A", 1), seed=3)
    assert res.status == PASS


def test_full_report_c6_passes():
    rep = full_report("C", 6)
    assert rep.exit_code == 0
    assert {r.check_id for r in rep.results} >= {"cardinality", "witness_sweep", "chain_split_step2", "e0"}


def test_full_report_a2_is_flagged():
    rep = full_report("A", 2)
    assert rep.exit_code == 2
    assert any(r.check_id == "abelian_basis" and r.status == FLAGGED for r in rep.results)


def test_full_report_subset_and_unknown_checks():
    rep = full_report("B", 5, checks=["abelian", "cardinality"])
    assert [r.check_id for r in rep.results] == ["abelian", "cardinality"]
    with pytest.raises(LieError):
        full_report("B", 5, checks=["bogus"])


def test_literal_sets_is_opt_in():
    assert "literal_sets" in CHECK_NAMES and "literal_sets" not in DEFAULT_CHECKS
    rep = full_report("C", 3, checks=["literal_sets"])
    assert [r.check_id for r in rep.results] == ["literal_sets"]


def test_full_report_is_deterministic():
    a = json.dumps(full_report("C", 4, seed=5).to_json(), sort_keys=True)
    b = json.dumps(full_report("C", 4, seed=5).to_json(), sort_keys=True)
    assert a == b
