"""Combinatorics of monomial ideals.

Generators are exponent tuples.  Every :class:`MonomialIdeal` keeps its
generators minimalized and sorted, so equal ideals compare equal.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import UnitIdealError
from .ring import Monomial, Ring, divides, mono_div, mono_lcm, mono_mul


def minimal_generators(gens) -> tuple:
    """Inclusion-minimal subset generating the same monomial ideal."""
    uniq = sorted(set(map(tuple, gens)), key=lambda m: (sum(m), m))
    kept: list = []
    for m in uniq:
        if not any(divides(g, m) for g in kept):
            kept.append(m)
    return tuple(sorted(kept))


def _colon_monomial(g: Monomial, f: Monomial) -> Monomial:
    # g / gcd(g, f)
    return tuple(a - b if a > b else 0 for a, b in zip(g, f))


@dataclass(frozen=True)
class MonomialPrime:
    """Prime ideal generated by the variables with the given indices."""

    variables: tuple

    def __post_init__(self):
        object.__setattr__(self, "variables", tuple(sorted(set(self.variables))))
        if not self.variables:
            raise ValueError("a MonomialPrime needs at least one variable")

    def contains_variable(self, i: int) -> bool:
        return i in self.variables

    def format(self, ring: Ring) -> str:
        return "(" + ",".join(ring.names[i] for i in self.variables) + ")"


@dataclass(frozen=True)
class MonomialIdeal:
    ring: Ring
    generators: tuple

    def __post_init__(self):
        object.__setattr__(self, "generators", minimal_generators(self.generators))

    @classmethod
    def from_strings(cls, ring: Ring, texts) -> MonomialIdeal:
        gens = []
        for t in texts:
            p = ring.parse(t)
            if p.is_zero():
                continue
            if not p.is_monomial():
                raise ValueError(f"{t!r} is not a monomial")
            gens.append(next(iter(p.terms)))
        return cls(ring, tuple(gens))

    @classmethod
    def zero(cls, ring: Ring) -> MonomialIdeal:
        return cls(ring, ())

    @classmethod
    def unit(cls, ring: Ring) -> MonomialIdeal:
        return cls(ring, (ring.one_monomial,))

    def is_zero(self) -> bool:
        return not self.generators

    def is_unit(self) -> bool:
        return self.ring.one_monomial in self.generators

    def __contains__(self, m) -> bool:
        m = tuple(m)
        return any(divides(g, m) for g in self.generators)

    def __add__(self, other: MonomialIdeal) -> MonomialIdeal:
        return MonomialIdeal(self.ring, self.generators + other.generators)

    def __mul__(self, other: MonomialIdeal) -> MonomialIdeal:
        return MonomialIdeal(
            self.ring, tuple(mono_mul(a, b) for a in self.generators for b in other.generators)
        )

    def power(self, n: int) -> MonomialIdeal:
        if n < 0:
            raise ValueError("power must be non-negative")
        result = MonomialIdeal.unit(self.ring)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def intersect(self, other: MonomialIdeal) -> MonomialIdeal:
        return MonomialIdeal(
            self.ring, tuple(mono_lcm(a, b) for a in self.generators for b in other.generators)
        )

    def colon(self, f: Monomial) -> MonomialIdeal:
        """(I : f) for a monomial f."""
        return MonomialIdeal(self.ring, tuple(_colon_monomial(g, f) for g in self.generators))

    def colon_ideal(self, other: MonomialIdeal) -> MonomialIdeal:
        """(I : J) as the intersection of (I : g) over generators g of J."""
        result = MonomialIdeal.unit(self.ring)
        for g in other.generators:
            result = result.intersect(self.colon(g))
        return result

    def radical(self) -> MonomialIdeal:
        return MonomialIdeal(self.ring, tuple(tuple(min(e, 1) for e in g) for g in self.generators))

    def lcm_of_generators(self) -> Monomial:
        out = self.ring.one_monomial
        for g in self.generators:
            out = mono_lcm(out, g)
        return out

    def is_prime(self) -> bool:
        return bool(self.generators) and all(sum(g) == 1 for g in self.generators)

    def as_prime(self) -> MonomialPrime | None:
        if not self.is_prime():
            return None
        return MonomialPrime(tuple(g.index(1) for g in self.generators))

    def degrees(self):
        return [self.ring.degree(g) for g in self.generators]

    def strings(self):
        return [self.ring.format_monomial(g) for g in self.generators]

    def irreducible_components(self) -> list:
        """Irredundant irreducible decomposition as a sorted list of ideals.

        Each component is generated by pure powers of variables.
        """
        if self.is_unit():
            return []
        found = set()
        stack = [self.generators]
        while stack:
            gens = minimal_generators(stack.pop())
            mixed = next((g for g in gens if sum(1 for e in g if e) > 1), None)
            if mixed is None:
                found.add(gens)
                continue
            i = next(j for j, e in enumerate(mixed) if e)
            u = tuple(e if j == i else 0 for j, e in enumerate(mixed))
            v = mono_div(mixed, u)
            rest = tuple(g for g in gens if g != mixed)
            stack.append(rest + (u,))
            stack.append(rest + (v,))
        comps = sorted(found)
        # drop components containing another component
        irredundant = []
        for c in comps:
            cid = MonomialIdeal(self.ring, c)
            if not any(o != c and all(g in cid for g in o) for o in comps):
                irredundant.append(cid)
        return irredundant

    def associated_primes(self) -> list:
        """Ass(S/I) as sorted MonomialPrimes; each one is verified by a witness.

        The zero ideal has the zero prime as its only associated prime; that
        prime is not a MonomialPrime, so the result is empty.
        """
        if self.is_unit():
            raise UnitIdealError("the unit ideal has no associated primes")
        if self.is_zero():
            return []
        candidates = sorted({tuple(sorted(g.index(next(e for e in g if e)) for g in comp.generators))
                             for comp in self.irreducible_components()})
        primes = []
        for vars_ in candidates:
            p = MonomialPrime(vars_)
            if self.find_witness(p) is None:
                raise AssertionError(f"no witness for candidate prime {vars_}")
            primes.append(p)
        return primes

    def find_witness(self, prime: MonomialPrime):
        """A monomial m with (I : m) equal to ``prime``, searched in the lcm box."""
        target = MonomialIdeal(self.ring, tuple(self.ring.var_monomial(i) for i in prime.variables))
        box = self.lcm_of_generators()
        # natural candidate first: just below the socle of a matching component
        for comp in self.irreducible_components():
            support = tuple(sorted(g.index(next(e for e in g if e)) for g in comp.generators))
            if support != prime.variables:
                continue
            m = list(box)
            for g in comp.generators:
                i = next(j for j, e in enumerate(g) if e)
                m[i] = g[i] - 1
            m = tuple(m)
            if self.colon(m) == target:
                return m
        for m in itertools.product(*(range(b + 1) for b in box)):
            if self.colon(m) == target:
                return m
        return None


def associated_primes_bruteforce(ideal: MonomialIdeal) -> list:
    """Reference oracle: every variable subset P with P = (I : m) for some box monomial m."""
    box = ideal.lcm_of_generators()
    found = set()
    for m in itertools.product(*(range(b + 1) for b in box)):
        q = ideal.colon(m)
        if q.is_prime():
            found.add(q.as_prime().variables)
    return [MonomialPrime(v) for v in sorted(found)]
