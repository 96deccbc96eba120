"""Seeded random monomial modules for the property suites and sweeps."""

from __future__ import annotations

import random
from dataclasses import dataclass

from .field import Field
from .modules import PresentedModule, present_subquotient, quotient_module
from .monomial_ideal import MonomialIdeal
from .ring import Ring


@dataclass(frozen=True)
class InstanceConfig:
    max_vars: int = 4
    max_blocks: int = 3
    max_gens: int = 6
    max_exp: int = 3
    field: str = "fp:32003"


@dataclass
class MonomialInstance:
    ring: Ring
    numerator: tuple
    relations: tuple
    kind: str
    seed: int

    def module(self) -> PresentedModule:
        F = self.ring.field
        rels = [{m: F.one} for m in self.relations]
        if self.kind == "quotient":
            return quotient_module(self.ring, rels)
        return present_subquotient([{m: F.one} for m in self.numerator], rels, self.ring)

    def describe(self) -> dict:
        fm = self.ring.format_monomial
        return {
            "seed": self.seed,
            "blocks": [list(b) for b in self.ring.blocks],
            "kind": self.kind,
            "numerator": [fm(m) for m in self.numerator],
            "relations": [fm(m) for m in self.relations],
        }


def random_ring(rng: random.Random, max_vars: int, max_blocks: int, field: Field) -> Ring:
    n = rng.randint(1, max_vars)
    k = rng.randint(1, min(max_blocks, n))
    cuts = sorted(rng.sample(range(1, n), k - 1))
    sizes = [b - a for a, b in zip([0] + cuts, cuts + [n])]
    blocks = []
    idx = 0
    for size in sizes:
        blocks.append(tuple(f"x{idx + j}" for j in range(size)))
        idx += size
    return Ring(tuple(blocks), field)


def random_monomials(rng: random.Random, nvars: int, count: int, max_exp: int) -> list:
    out = []
    while len(out) < count:
        m = tuple(rng.randint(0, max_exp) for _ in range(nvars))
        if any(m):
            out.append(m)
    return out


def random_instance(seed: int, config: InstanceConfig = InstanceConfig()) -> MonomialInstance:
    """A quotient S/J or a subquotient (A + J)/J with at most max_gens generators in total."""
    rng = random.Random(seed)
    ring = random_ring(rng, config.max_vars, config.max_blocks, Field.parse(config.field))
    n = ring.nvars
    kind = rng.choice(["quotient", "subquotient"])
    if kind == "quotient":
        J = MonomialIdeal(ring, tuple(random_monomials(rng, n, rng.randint(1, config.max_gens), config.max_exp)))
        return MonomialInstance(ring, (ring.one_monomial,), J.generators, kind, seed)
    a = rng.randint(1, config.max_gens - 1) if config.max_gens > 1 else 1
    b = rng.randint(0, config.max_gens - a)
    A = MonomialIdeal(ring, tuple(random_monomials(rng, n, a, config.max_exp)))
    J = MonomialIdeal(ring, tuple(random_monomials(rng, n, b, config.max_exp)))
    return MonomialInstance(ring, A.generators, J.generators, kind, seed)


@dataclass
class PowerInstance:
    ring: Ring
    I: tuple
    J: tuple
    seed: int

    def describe(self) -> dict:
        fm = self.ring.format_monomial
        return {
            "seed": self.seed,
            "blocks": [list(b) for b in self.ring.blocks],
            "I": [fm(m) for m in self.I],
            "J": [fm(m) for m in self.J],
        }


def random_power_instance(seed: int, max_vars: int = 3, max_blocks: int = 3, i_gens: int = 3, i_exp: int = 2,
                          j_gens: int = 3, j_exp: int = 3, field: str = "fp:32003",
                          allow_vanishing: bool = False) -> PowerInstance:
    """Ideal I and relations J (possibly empty) for the asymptotic sweeps.

    Unless ``allow_vanishing`` is set, draws with I inside the radical of J
    (so that I^n(S/J) = 0 for large n) are rejected and redrawn.
    """
    rng = random.Random(seed)
    ring = random_ring(rng, max_vars, max_blocks, Field.parse(field))
    n = ring.nvars
    while True:
        I = MonomialIdeal(ring, tuple(random_monomials(rng, n, rng.randint(1, i_gens), i_exp)))
        J = MonomialIdeal(ring, tuple(random_monomials(rng, n, rng.randint(0, j_gens), j_exp)))
        rad = J.radical()
        if allow_vanishing or not all(g in rad for g in I.generators):
            return PowerInstance(ring, I.generators, J.generators, seed)
