import itertools

import pytest
from hypothesis import given, settings, strategies as st

from mgreg.errors import UnitIdealError
from mgreg.monomial_ideal import MonomialIdeal, MonomialPrime, associated_primes_bruteforce, minimal_generators
from mgreg.ring import Ring, divides, mono_mul

XY = Ring((("x", "y"),))
XYZ = Ring((("x",), ("y",), ("z",)))


def ideal(ring, texts):
    return MonomialIdeal.from_strings(ring, texts)


def test_minimalize_drops_multiples():
    I = ideal(XY, ["x^2", "x^3", "x*y"])
    assert set(I.strings()) == {"x^2", "x*y"}


def test_minimalize_keeps_complete_degree_two(abc_ring):
    gens = ["a^2", "a*b", "a*c", "b^2", "b*c", "c^2"]
    assert set(ideal(abc_ring, gens).strings()) == set(gens)


def test_minimalize_keeps_the_six_cubic_generators():
    gens = ["x^2*y", "x*y^2", "x*y*z", "y^3", "y^2*z", "y*z^2"]
    assert set(ideal(XYZ, gens).strings()) == set(gens)


def test_empty_set_is_zero_ideal():
    assert MonomialIdeal(XY, ()).is_zero()


def test_small_powers(abc_ring):
    m = ideal(abc_ring, ["a", "b", "c"])
    assert m.power(1) == m
    assert len(m.power(2).generators) == 6


def _brute_power(gens, n):
    prods = [tuple(sum(e) for e in zip(*combo)) for combo in itertools.product(gens, repeat=n)]
    return {p for p in prods if not any(q != p and divides(q, p) for q in prods)}


def test_power_matches_brute_expansion():
    I = ideal(XY, ["x^2", "x*y"])
    expected = _brute_power(I.generators, 3)
    assert set(I.power(3).generators) == expected
    assert set(I.power(3).strings()) == {"x^6", "x^5*y", "x^4*y^2", "x^3*y^3"}


def _brute_colon(I, f, box):
    return {m for m in itertools.product(*(range(b + 1) for b in box)) if mono_mul(m, f) in I}


def test_colon_by_variable():
    I = ideal(XYZ, ["x^2*y", "x*y^2", "x*y*z", "y^3", "y^2*z", "y*z^2"])
    Q = I.colon((1, 0, 0))
    assert set(Q.strings()) == {"x*y", "y^2", "y*z"}
    box = (3, 3, 3)
    assert {m for m in itertools.product(range(4), repeat=3) if m in Q} == _brute_colon(I, (1, 0, 0), box)


def test_colon_trivial_cases():
    I = ideal(XY, ["x^2", "x*y"])
    assert I.colon((0, 0)) == I
    assert ideal(XY, ["x^2"]).colon((3, 0)).is_unit()


def test_associated_primes_of_the_cubic_ideal():
    I = ideal(XYZ, ["x^2*y", "x*y^2", "x*y*z", "y^3", "y^2*z", "y*z^2"])
    primes = {P.variables for P in I.associated_primes()}
    assert primes == {(1,), (0, 1, 2)}
    assert primes == {P.variables for P in associated_primes_bruteforce(I)}


def test_associated_primes_simple():
    assert [P.variables for P in ideal(XY, ["x^2"]).associated_primes()] == [(0,)]
    assert [P.variables for P in ideal(XY, ["x*y"]).associated_primes()] == [(0,), (1,)]


def test_associated_primes_of_unit_ideal_rejected():
    with pytest.raises(UnitIdealError):
        MonomialIdeal.unit(XY).associated_primes()


def test_zero_ideal_has_only_the_zero_prime():
    assert MonomialIdeal.zero(XY).associated_primes() == []


def test_monomial_prime_needs_variables():
    with pytest.raises(ValueError):
        MonomialPrime(())


# property tests ---------------------------------------------------------------

R5 = Ring((("a", "b"), ("c", "d", "e")))


def monomials(n, max_exp):
    return st.tuples(*[st.integers(0, max_exp)] * n)


def ideals(ring, max_gens=6, max_exp=4, min_gens=1):
    return st.lists(monomials(ring.nvars, max_exp).filter(any), min_size=min_gens, max_size=max_gens).map(
        lambda gens: MonomialIdeal(ring, tuple(gens))
    )


@settings(max_examples=150, deadline=None)
@given(ideals(R5), monomials(5, 4), monomials(5, 4))
def test_colon_membership(I, f, m):
    assert (m in I.colon(f)) == (mono_mul(m, f) in I)


@settings(max_examples=60, deadline=None)
@given(ideals(R5, max_gens=3, max_exp=2), st.integers(0, 2), st.integers(0, 2))
def test_power_is_additive(I, a, b):
    assert I.power(a + b) == MonomialIdeal(R5, tuple(minimal_generators((I.power(a) * I.power(b)).generators)))


@settings(max_examples=150, deadline=None)
@given(ideals(R5))
def test_associated_primes_match_bruteforce(I):
    got = I.associated_primes()
    assert got == associated_primes_bruteforce(I)
    for P in got:
        witness = I.find_witness(P)
        assert witness is not None
        assert I.colon(witness) == MonomialIdeal(R5, tuple(R5.var_monomial(i) for i in P.variables))


@settings(max_examples=80, deadline=None)
@given(ideals(R5, max_gens=4), ideals(R5, max_gens=3))
def test_intersection_and_colon_ideal(I, J):
    box = tuple(max(a, b) for a, b in zip(I.lcm_of_generators(), J.lcm_of_generators()))
    for m in itertools.product(*(range(b + 1) for b in box)):
        assert (m in I.intersect(J)) == (m in I and m in J)
    Q = I.colon_ideal(J)
    for g in Q.generators:
        assert all(mono_mul(g, h) in I for h in J.generators)


def test_radical():
    R = Ring((("x", "y"), ("z",)))
    J = MonomialIdeal(R, ((2, 0, 0), (1, 3, 1), (0, 2, 0)))
    assert J.radical().generators == ((0, 1, 0), (1, 0, 0))
