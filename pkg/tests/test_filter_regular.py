import math

import pytest
from hypothesis import given, settings, strategies as st

from mgreg.errors import ImproperSequenceError, NotFilterRegularError
from mgreg.field import Field
from mgreg.filter_regular import (
    a_invariant,
    bfa,
    block_sequence,
    is_filter_regular,
    res_reg_via_colon,
    torsion_by_saturation,
)
from mgreg.instances import InstanceConfig, random_instance
from mgreg.modules import free_module, quotient_module
from mgreg.resolution import generator_stats, resolve
from mgreg.ring import Ring

from conftest import make_three_block_quotient, make_two_block_ideal

INF = math.inf


def _var(ring, name):
    return ring.parse(name).terms


def test_a_invariants_of_the_three_block_quotient():
    M = make_three_block_quotient()
    assert [a_invariant(M, l) for l in range(3)] == [INF, 2, INF]
    assert [a_invariant(M, l, method="saturation") for l in range(3)] == [INF, 2, INF]


def test_single_variable_sequence():
    M = make_three_block_quotient()
    y = [_var(M.ring, "y")]
    rep = is_filter_regular(y, M, 1)
    assert rep.regular and rep.values == [2] and rep.bfa == 2
    for l in (0, 2):
        rep = is_filter_regular(y, M, l)
        assert not rep.regular and rep.failing_index == 0
        with pytest.raises(NotFilterRegularError):
            rep.bfa


def test_two_variable_sequence():
    M = make_three_block_quotient()
    seq = [_var(M.ring, "x"), _var(M.ring, "z")]
    assert [bfa(seq, M, l) for l in range(3)] == [1, 2, 1]
    for l in range(3):
        assert is_filter_regular(seq, M, l, "fast").values == is_filter_regular(seq, M, l, "general").values


def test_three_block_quotient_colon_route():
    M = make_three_block_quotient()
    for seed in (0, 1, 2, 3, 4):
        assert tuple(res_reg_via_colon(M, l, seed, always_change=True).value for l in range(3)) == (1, 2, 1)


def test_two_block_ideal_colon_route():
    M = make_two_block_ideal(Field.prime(32003))
    assert [res_reg_via_colon(M, l).value for l in range(2)] == [2, 2]


def test_degenerate_modules():
    R = Ring((("x", "y"),))
    F = free_module(R, [(1,)])
    assert a_invariant(F, 0) == INF
    assert res_reg_via_colon(F, 0).value == 1
    Z = quotient_module(R, [R.parse("1")])
    assert a_invariant(Z, 0) == -INF
    assert res_reg_via_colon(Z, 0).value == -INF
    artinian = quotient_module(R, [R.parse("x^2"), R.parse("y^3")])
    assert a_invariant(artinian, 0) == 3
    assert torsion_by_saturation(artinian, 0)[0]


def test_improper_sequence():
    R = Ring((("x",), ("y",)))
    M = quotient_module(R, [R.parse("y")])
    with pytest.raises(ImproperSequenceError):
        is_filter_regular([_var(R, "x")], quotient_module(R, [R.parse("x*y"), R.parse("1")]), 0)
    assert is_filter_regular([_var(R, "x")], M, 0).regular


def test_nonmonomial_sequence_on_quotient():
    R = Ring((("x", "y"),), Field.prime(32003))
    M = quotient_module(R, [R.parse("x*y")])
    rep = is_filter_regular([R.parse("x + y").terms], M, 0)
    assert rep.regular and rep.values == [-INF]


def _equality_holds(M):
    """max(bfa(x_l), d_l) == res-reg_l whenever x_l is filter-regular."""
    reg = resolve(M).res_reg()
    d = generator_stats(M)["d"]
    checked = 0
    for l in range(M.ring.k):
        try:
            rep = is_filter_regular(block_sequence(M.ring, l), M, l)
        except ImproperSequenceError:
            continue
        if not rep.regular:
            continue
        checked += 1
        assert max(rep.bfa, d[l]) == reg[l]
    return checked


def test_equality_on_examples():
    assert _equality_holds(make_three_block_quotient()) == 3
    assert _equality_holds(make_two_block_ideal()) == 2


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6))
def test_equality_on_random_instances(seed):
    _equality_holds(random_instance(seed).module())


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6), st.data())
def test_fast_and_general_paths_agree(seed, data):
    inst = random_instance(seed, InstanceConfig(max_gens=5))
    if inst.kind != "quotient":
        return
    M = inst.module()
    R = inst.ring
    variables = data.draw(st.lists(st.integers(0, R.nvars - 1), min_size=1, max_size=R.nvars, unique=True))
    seq = [{R.var_monomial(i): R.field.one} for i in variables]
    for l in range(R.k):
        try:
            fast = is_filter_regular(seq, M, l, "fast")
        except ImproperSequenceError:
            with pytest.raises(ImproperSequenceError):
                is_filter_regular(seq, M, l, "general")
            continue
        general = is_filter_regular(seq, M, l, "general")
        assert (fast.regular, fast.failing_index, fast.values) == (general.regular, general.failing_index, general.values)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6))
def test_saturation_agrees_with_standard_monomials(seed):
    M = random_instance(seed).module()
    for l in range(M.ring.k):
        assert a_invariant(M, l, "saturation") == a_invariant(M, l, "leads")


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 10**6))
def test_colon_route_is_seed_independent(seed):
    M = random_instance(seed, InstanceConfig(max_vars=3, max_gens=4)).module()
    expected = resolve(M).res_reg()
    for s in range(5):
        got = tuple(res_reg_via_colon(M, l, seed=s, always_change=True).value for l in range(M.ring.k))
        assert got == expected
