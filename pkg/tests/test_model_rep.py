from __future__ import annotations

import json
import random
from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import given
from hypothesis import strategies as st

from liecheck.linalg import RatMatrix
from liecheck.model_rep import (
    AtomicRep,
    BumpFunction,
    ExtendedVector,
    GaussianRational,
    ModelError,
    Sl2Label,
    apply_pi,
    apply_u_plus_ad,
    dag_scale,
    dense_solve,
    derivative_action,
    is_small_vector,
    jordan_backsub_solve,
    obstruction_Dl,
    parse_scalar,
    pointwise_product,
    proj_Dl,
    random_atomic,
    relative_residual,
    root_ad_matrix,
    run_scenario,
    split_decompose,
    tail_bound_check,
)

SCENARIO = Path(__file__).resolve().parent.parent / "scenarios" / "scenario.json"
I = GaussianRational(0, 1)


def test_gaussian_arithmetic():
    z = GaussianRational(1, 2)
    assert z * z == GaussianRational(-3, 4)
    assert (z / z) == GaussianRational(1)
    assert I * I == GaussianRational(-1)
    assert z + 1 == GaussianRational(2, 2)
    assert complex(z) == 1 + 2j


def test_parse_scalar_forms():
    assert parse_scalar([0, 1]) == I
    assert parse_scalar("1/2-1/3i") == GaussianRational(Fraction(1, 2), Fraction(-1, 3))
    assert parse_scalar(3) == GaussianRational(3)
    assert parse_scalar(0.5) == 0.5


def test_labels_validate():
    with pytest.raises(ModelError):
        Sl2Label("complementary", 2)
    with pytest.raises(ModelError):
        Sl2Label("discrete", Fraction(1, 2))
    assert Sl2Label("discrete", -5).is_high_discrete(4)
    assert not Sl2Label("imaginary", 9).is_high_discrete(4)


def test_atomic_rejects_bad_input():
    with pytest.raises(ModelError):
        AtomicRep.build(2, [((1.0, 2.0), 1), ((1.0, 2.0), 2)])
    with pytest.raises(ModelError):
        AtomicRep.build(2, [((1.0,), 1)])


def test_bump_flat_regions_are_exact():
    f = BumpFunction(1, 2, 2)
    assert f((0.5, 0.5)) == 1 and isinstance(f((0.5, 0.5)), int)
    assert f((3.0, 0.0)) == 0
    assert 0 < f((1.5, 0.0)) < 1
    with pytest.raises(ModelError):
        BumpFunction(2, 1)
    with pytest.raises(ModelError):
        dag_scale(0, f)


def test_apply_pi_keeps_exact_amplitudes_in_flat_region():
    xi = AtomicRep.build(1, [((0.5,), GaussianRational(1, 1)), ((5.0,), GaussianRational(3))])
    out = apply_pi(BumpFunction(1, 2, 1), xi)
    assert out.amplitudes == [GaussianRational(1, 1), GaussianRational(0)]


rng_seeds = st.integers(min_value=0, max_value=10**6)


@given(rng_seeds)
def test_multiplicativity_property(seed):
    rng = random.Random(seed)
    xi = random_atomic(rng, 2, 6, char_range=5.0)
    f1 = BumpFunction(rng.uniform(0.5, 2), rng.uniform(2.5, 5), 2)
    f2 = BumpFunction(rng.uniform(0.5, 2), rng.uniform(2.5, 5), 2)
    lhs = apply_pi(f1, apply_pi(f2, xi))
    rhs = apply_pi(pointwise_product(f1, f2), xi)
    assert lhs.max_abs_diff(rhs) <= 1e-12 * max(1.0, xi.norm())


@given(rng_seeds, st.lists(st.integers(0, 3), min_size=2, max_size=2))
def test_derivative_relation_property(seed, k):
    rng = random.Random(seed)
    xi = random_atomic(rng, 2, 5, char_range=3.0)
    _, resid = derivative_action(k, BumpFunction(1, 3, 2), xi)
    assert resid <= 1e-12


@given(rng_seeds, st.floats(1.5, 50), st.integers(0, 4))
def test_tail_bound_property(seed, c, s):
    rng = random.Random(seed)
    xi = random_atomic(rng, 2, 6, char_range=60.0)
    assert tail_bound_check(xi, BumpFunction(1, 2, 2), c, s).holds(1.0)


def test_tail_bound_frozen_value():
    xi = AtomicRep.build(1, [((30.0,), 1)])
    tb = tail_bound_check(xi, BumpFunction(1, 2, 1), 10, 2)
    assert tb.lhs == 1.0
    assert tb.rhs == pytest.approx(9.01)


def test_tail_bound_needs_c_above_one():
    with pytest.raises(ModelError):
        tail_bound_check(AtomicRep.build(1, [((1.0,), 1)]), BumpFunction(1, 2, 1), 1.0, 1)


def test_small_vectors():
    xi = AtomicRep.build(1, [((0.5,), 1), ((5.0,), 0)])
    assert is_small_vector(xi, 1, 2)
    assert not is_small_vector(AtomicRep.build(1, [((1.5,), 1)]), 1, 2)


@given(rng_seeds, st.integers(1, 8))
def test_projection_idempotent_and_split_property(seed, l):
    rng = random.Random(seed)
    xi = random_atomic(rng, 1, 6, labeled=True)
    p = proj_Dl(l, xi)
    assert proj_Dl(l, p) == p
    x0, x1 = split_decompose(l, xi)
    assert (x0 + x1).max_abs_diff(xi) == 0
    assert proj_Dl(l, x1).norm() == 0


def test_obstruction_vanishes_on_high_discrete():
    xi = AtomicRep.build(
        1,
        [((1.0,), GaussianRational(2), Sl2Label("discrete", 5)), ((2.0,), GaussianRational(3), Sl2Label("imaginary", 1))],
    )
    out = obstruction_Dl(3, xi, {1: I})
    assert out.amplitudes == [GaussianRational(0), GaussianRational(0, 3)]
    with pytest.raises(ModelError):
        obstruction_Dl(3, xi, {})


def test_two_by_two_backsub_example():
    ad = RatMatrix.from_dense([[0, 1], [0, 0]])
    omega = ExtendedVector([(1.0,)], [[GaussianRational(1)], [GaussianRational(2)]])
    v = jordan_backsub_solve([I], ad, omega)
    assert v.coords == ((GaussianRational(2, -1),), (GaussianRational(0, -2),))
    assert apply_u_plus_ad([I], ad, v) == omega


def gaussian():
    q = st.fractions(min_value=-4, max_value=4, max_denominator=3)
    return st.builds(GaussianRational, q, q)


@pytest.mark.parametrize("key,root", [(("A", 2), (1, -1, 0)), (("C", 3), (2, 0, 0)), (("C", 3), (1, -1, 0))])
def test_backsub_matches_dense_on_root_vectors(key, root):
    @given(st.data())
    def check(data):
        ad = root_ad_matrix(*key, root)
        k = data.draw(st.integers(1, 2))
        base = data.draw(st.lists(gaussian().filter(lambda z: z != 0), min_size=k, max_size=k))
        coords = data.draw(st.lists(st.lists(gaussian(), min_size=k, max_size=k), min_size=ad.nrows, max_size=ad.nrows))
        omega = ExtendedVector([(float(c),) for c in range(k)], coords)
        assert jordan_backsub_solve(base, ad, omega) == dense_solve(base, ad, omega)

    check()


@given(rng_seeds)
def test_backsub_float_residual_property(seed):
    rng = random.Random(seed)
    ad = root_ad_matrix("A", 2, (1, -1, 0))
    k = rng.randint(1, 4)
    base = [complex(rng.uniform(0.5, 3), rng.uniform(-3, 3)) for _ in range(k)]
    omega = ExtendedVector([(float(c),) for c in range(k)], [[complex(rng.gauss(0, 1), rng.gauss(0, 1)) for _ in range(k)] for _ in range(8)])
    v = jordan_backsub_solve(base, ad, omega)
    assert relative_residual(base, ad, v, omega) <= 1e-10


def test_backsub_rejects_zero_base_and_non_nilpotent():
    ad = RatMatrix.from_dense([[0, 1], [0, 0]])
    omega = ExtendedVector([(1.0,)], [[GaussianRational(1)], [GaussianRational(2)]])
    with pytest.raises(ModelError):
        jordan_backsub_solve([GaussianRational(0)], ad, omega)
    with pytest.raises(ModelError):
        jordan_backsub_solve([I], RatMatrix.from_dense([[1, 0], [0, 0]]), omega)


def test_scenario_file_runs():
    res = run_scenario(json.loads(SCENARIO.read_text()))
    assert res.ok
    assert [s["op"] for s in res.steps][-1] == "backsub"
    assert res.steps[-1]["residual"] == 0.0


def test_unknown_scenario_op():
    with pytest.raises(ModelError):
        run_scenario({"m": 1, "components": [{"character": [1.0]}], "operations": [{"op": "warp"}]})
