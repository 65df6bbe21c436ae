from __future__ import annotations

from fractions import Fraction

import pytest

from conftest import cached_algebra
from liecheck.constructions import (
    CHAIN_NAMES,
    abelian_basis,
    base_sl2,
    chain_config,
    family_eigenvalues,
    split_uv_sets,
    uv_sets,
)
from liecheck.lie_core import LieError, ad_matrix, bracket, format_coords, is_nilpotent


def expected_size(t: str, n: int) -> int:
    if t == "A":
        return (n + 1) ** 2 // 4
    if t == "B":
        return 5 if n == 3 else n * (n - 1) // 2 + 1
    if t == "C":
        return n * (n + 1) // 2
    if t == "D":
        return n * (n - 1) // 2
    return {("E", 6): 16, ("E", 7): 27, ("E", 8): 36, ("F", 4): 9}[(t, n)]


CASES = (
    [("A", n) for n in range(4, 9)]
    + [("B", n) for n in range(5, 9)]
    + [("C", n) for n in range(3, 9)]
    + [("D", n) for n in range(5, 9)]
    + [("E", 6), ("E", 7), ("E", 8), ("F", 4), ("B", 3)]
)


@pytest.mark.parametrize("key", CASES)
def test_abelian_basis_size_abelian_nilpotent(key):
    alg = cached_algebra(*key)
    d = abelian_basis(alg)
    assert len(set(d.roots)) == len(d.roots) == expected_size(*key) == d.claimed_cardinality
    for i, x in enumerate(d.elements):
        for y in d.elements[i + 1 :]:
            assert bracket(x, y).is_zero()
    assert all(is_nilpotent(ad_matrix(x))[0] for x in d.elements)


def test_c3_basis_is_frozen():
    d = abelian_basis(cached_algebra("C", 3))
    assert sorted(format_coords(r) for r in d.roots) == sorted(
        ["2L1", "2L3", "-2L2", "L1-L2", "-L2+L3", "L1+L3"]
    )


@pytest.mark.parametrize("key", [("A", 2), ("A", 3), ("B", 4), ("D", 4), ("G", 2)])
def test_abelian_basis_unlisted_types(key):
    with pytest.raises(LieError):
        abelian_basis(cached_algebra(*key))


@pytest.mark.parametrize("key", [("A", 5), ("B", 5), ("C", 4), ("D", 6), ("E", 6), ("E", 8), ("F", 4)])
def test_uv_families_are_eigenvectors(key):
    alg = cached_algebra(*key)
    base = base_sl2(alg, require_e0=False)
    fam = uv_sets(alg)
    for eps in range(1, 10):
        us = family_eigenvalues(base.X, fam.u_set(eps))
        vs = family_eigenvalues(base.X, fam.v_set(eps))
        if us:
            assert len(set(us)) == 1 and us[0] in (1, 2)
        if vs:
            assert len(set(vs)) == 1 and vs[0] in (-1, -2)


def test_c3_uv_families_are_frozen():
    fam = uv_sets(cached_algebra("C", 3)).to_json()
    assert fam["U"]["1"] == ["L1-L2", "L1-L3"]
    assert fam["U"]["2"] == ["L1+L2", "L1+L3"]
    assert fam["U"]["3"] == ["2L1"]
    assert fam["V"]["3"] == ["-2L1"]
    assert all(not fam["U"][str(e)] for e in range(4, 10))


def test_base_triple_for_c():
    alg = cached_algebra("C", 3)
    base = base_sl2(alg, require_e0=False)
    assert format_coords(base.phi) == "2L1"
    assert bracket(base.X, base.U) == 2 * base.U
    assert bracket(base.U, base.V) == base.X
    assert base.g1_perp.dim == 10


def test_e0_requires_six_coordinates():
    with pytest.raises(LieError):
        base_sl2(cached_algebra("C", 4), require_e0=True)
    e0 = base_sl2(cached_algebra("C", 6)).e0
    assert [str(e) for e in e0] == ["u[L3-L4]", "u[L5-L6]"]


def test_e8_split_drops_roots():
    alg = cached_algebra("E", 8)
    split = split_uv_sets(alg)
    base = split.base
    whole = {c for s in base.u_roots + base.v_roots for c in s}
    kept = {c for part in (split.c1_u, split.c1_v, split.c2_u, split.c2_v) for s in part for c in s}
    assert len(whole - kept) == 16


@pytest.mark.parametrize("key", [("A", 5), ("C", 3), ("D", 5)])
def test_chain_factors_span_targets(key):
    alg = cached_algebra(*key)
    for which in CHAIN_NAMES[:2]:
        chain = chain_config(alg, which)
        assert chain.factors
        for f in chain.factors:
            assert chain.target.contains_subspace(f.span)


def test_unknown_chain_name():
    with pytest.raises(LieError):
        chain_config(cached_algebra("C", 3), "nope")
