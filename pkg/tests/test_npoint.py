import itertools
import random
from fractions import Fraction

import numpy as np
import pytest
import sympy
from hypothesis import given, strategies as st

from tmcorr.config import BudgetExceeded
from tmcorr.corners import corner_value, gen_rec_value
from tmcorr.npoint import (
    CornerTuple,
    IdentityViolation,
    LagTuple,
    canonicalize,
    eta,
    eta_cube,
    eta_n,
    eta_pd,
    quad_relations,
    quad_relations_check,
    reduce_once,
    reflection_report,
)
from tmcorr.rational import in_frequency_module

from oracles import brute_average

F = Fraction
lag = st.integers(min_value=0, max_value=2**10)


def test_canonical_examples():
    assert canonicalize([1, 0, 1]) == LagTuple(4, (0, 1, 1))
    assert canonicalize([-2, 3]) == LagTuple(3, (2, 5))
    assert canonicalize([7]) == LagTuple(2, (7,))


def test_canonical_rejects_empty():
    with pytest.raises(ValueError):
        canonicalize([])


def test_lag_tuple_validation():
    with pytest.raises(ValueError):
        LagTuple(3, (2, 1))
    with pytest.raises(ValueError):
        LagTuple(4, (0, 1))


def test_corner_examples():
    assert corner_value((0, 0, 0)) == 1
    assert corner_value((0, 0, 1)) == F(-1, 3)
    assert all(corner_value(b) == 0 for b in itertools.product((0, 1), repeat=2))
    assert CornerTuple((0, 1, 1)).weight == 2
    assert CornerTuple((0, 1, 1)).order == 4


def test_corner_rejects_non_binary():
    with pytest.raises(ValueError):
        corner_value((0, 2))


def test_examples():
    assert eta(4, 9) == 0
    assert eta(1, 1, 2) == F(-1, 3)
    assert eta(1, 2, 3) == F(1, 3)
    assert eta(0, 1, 1) == 1


@pytest.mark.parametrize("lags", [(1, 1, 2), (1, 2, 3), (3, 5, 9), (2, 7, 8, 13, 20)])
def test_against_brute_force_average(lags):
    assert abs(brute_average(lags, 2**15) - eta(*lags)) < 3e-3


def test_period_doubling_examples():
    assert eta_pd(0) == 1
    assert eta_pd(1) == F(-1, 3)


def test_order_two_delegates_to_pair():
    from tmcorr.pair import eta_pair

    assert all(eta(m) == eta_pair(m) for m in range(200))


def test_order_cap():
    with pytest.raises(BudgetExceeded):
        eta(*range(1, 9))
    assert eta(*range(1, 9), max_order=9) == 0


@given(st.lists(lag, min_size=3, max_size=3), st.randoms(use_true_random=False))
def test_permutation_invariance(lags, rnd):
    shuffled = lags[:]
    rnd.shuffle(shuffled)
    assert eta(*lags) == eta(*shuffled)


@given(st.lists(st.integers(-500, 500), min_size=1, max_size=4), st.integers(-(10**6), 10**6))
def test_shift_invariance(lags, shift):
    # translate every site, the base site 0 included
    sites = [0, *lags]
    moved = [x + shift for x in sites]
    rebased = [x - moved[0] for x in moved[1:]]
    assert eta_n(canonicalize(lags)) == eta_n(canonicalize(rebased))
    assert canonicalize(lags) == canonicalize(rebased)


def test_odd_orders_vanish():
    for lags in itertools.combinations_with_replacement(range(65), 2):
        assert eta(*lags) == 0
    rng = random.Random(5)
    for _ in range(300):
        assert eta(*(rng.randint(0, 64) for _ in range(4))) == 0


@given(st.lists(lag, min_size=3, max_size=3))
def test_one_reduction_step(lags):
    lt = canonicalize(lags)
    c1, a, c2, b = reduce_once(lt)
    assert eta_n(lt) == c1 * eta_n(a) + c2 * eta_n(b)


@given(st.lists(lag, min_size=1, max_size=5))
def test_values_bounded_and_in_module(lags):
    v = eta(*lags)
    assert -1 <= v <= 1
    assert in_frequency_module(v)


@pytest.mark.parametrize("n", [2, 4, 6, 8])
def test_corners_equal_general_form_with_unit_seed(n):
    for bits in itertools.product((0, 1), repeat=n - 1):
        assert gen_rec_value(bits, 1, n) == corner_value(bits, n)


@pytest.mark.parametrize("seed", [F(5), F(-2, 7), F(0)])
def test_seed_scales_everything(seed):
    for lags in [(1, 2, 3), (4, 9, 11), (1, 1, 2), (5,), (3, 6, 10, 12, 19)]:
        assert eta_n(canonicalize(lags), seed=seed) == seed * eta(*lags)


def test_symbolic_seed():
    lam = sympy.Symbol("lam")
    seed = sympy.Integer(1) * lam
    for lags in [(1, 2, 3), (6, 7, 13), (2,)]:
        v = eta_n(canonicalize(lags), seed=seed)
        exact = eta(*lags)
        assert sympy.simplify(v - sympy.Rational(exact.numerator, exact.denominator) * lam) == 0


def test_symbolic_corner_system_has_one_free_parameter():
    # every corner equation with m = 0 couples the corner to the all-zero one
    n = 4
    syms = {b: sympy.Symbol("c" + "".join(map(str, b))) for b in itertools.product((0, 1), repeat=n - 1)}
    eqs = []
    for b, s in syms.items():
        if not any(b):
            continue
        r = sum(b)
        eqs.append(sympy.Eq(s, sympy.Rational((-1) ** r, 2) * (syms[(0,) * (n - 1)] + (-1) ** n * s)))
    sol = sympy.solve(eqs, [s for b, s in syms.items() if any(b)], dict=True)[0]
    seed = syms[(0,) * (n - 1)]
    for b, expr in sol.items():
        r = sum(int(ch) for ch in b.name[1:])
        assert sympy.simplify(expr - sympy.Rational((-1) ** r, 2 + (-1) ** (n + r - 1)) * seed) == 0


def test_quad_relation_examples():
    assert all(quad_relations([1]).values())
    assert all(quad_relations([1, 2, 3]).values())
    assert all(quad_relations([4, 9]).values())


@given(st.lists(st.integers(0, 300), min_size=1, max_size=4))
def test_quad_relations_hold(lags):
    assert quad_relations_check(lags)


def test_quad_relation_violation_is_reported():
    def broken(xs):
        return eta_n(canonicalize(xs)) + (F(1, 10) if xs and xs[0] % 4 == 1 else 0)

    with pytest.raises(IdentityViolation) as info:
        quad_relations_check([5, 6, 7], evaluator=broken)
    assert 1 in info.value.failed


def test_reflection_is_only_reported():
    rep = reflection_report(4, 8)
    assert rep["total"] == 165
    assert rep["agree"] <= rep["total"]


@pytest.mark.parametrize("n,side", [(2, 200), (3, 20), (4, 12), (5, 7)])
def test_bulk_grid_matches_scalar(n, side):
    values, scale = eta_cube(n, side)
    assert values.shape == (side,) * (n - 1)
    for idx in itertools.product(range(side), repeat=n - 1):
        assert F(int(values[idx]), scale) == eta(*idx)


def test_bulk_grid_odd_order_is_zero():
    values, _ = eta_cube(5, 9)
    assert not np.any(values)
