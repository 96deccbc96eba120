"""Exact coefficient fields: the rationals and prime fields."""

from __future__ import annotations

import operator
from dataclasses import dataclass, field
from fractions import Fraction

DEFAULT_PRIME = 32003


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    f = 3
    while f * f <= p:
        if p % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True)
class Field:
    """A coefficient field.

    Elements are ``Fraction`` for the rationals and canonical ``int`` residues
    in ``range(p)`` for a prime field.  All arithmetic goes through the methods
    below so that the Groebner and linear-algebra code is field agnostic.
    """

    kind: str
    p: int | None = None
    add: object = field(init=False, repr=False, compare=False)
    sub: object = field(init=False, repr=False, compare=False)
    mul: object = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.kind == "rationals":
            if self.p is not None:
                raise ValueError("the rationals take no modulus")
            object.__setattr__(self, "add", operator.add)
            object.__setattr__(self, "sub", operator.sub)
            object.__setattr__(self, "mul", operator.mul)
        elif self.kind == "prime-field":
            p = self.p
            if p is None or not _is_prime(p):
                raise ValueError(f"prime-field modulus must be prime, got {p!r}")
            object.__setattr__(self, "add", lambda a, b: (a + b) % p)
            object.__setattr__(self, "sub", lambda a, b: (a - b) % p)
            object.__setattr__(self, "mul", lambda a, b: (a * b) % p)
        else:
            raise ValueError(f"unknown field kind {self.kind!r}")

    def __reduce__(self):
        return (Field, (self.kind, self.p))

    @classmethod
    def rationals(cls) -> Field:
        return cls("rationals")

    @classmethod
    def prime(cls, p: int = DEFAULT_PRIME) -> Field:
        return cls("prime-field", p)

    @classmethod
    def parse(cls, text: str) -> Field:
        """Parse ``q`` or ``fp:P`` (``fp`` alone means the default modulus)."""
        t = text.strip().lower()
        if t in ("q", "qq", "rationals"):
            return cls.rationals()
        if t == "fp":
            return cls.prime()
        if t.startswith("fp:"):
            try:
                p = int(t[3:])
            except ValueError:
                raise ValueError(f"bad field descriptor {text!r}") from None
            return cls.prime(p)
        raise ValueError(f"bad field descriptor {text!r}")

    @property
    def is_rational(self) -> bool:
        return self.kind == "rationals"

    @property
    def characteristic(self) -> int:
        return 0 if self.p is None else self.p

    @property
    def zero(self):
        return Fraction(0) if self.p is None else 0

    @property
    def one(self):
        return Fraction(1) if self.p is None else 1

    def __call__(self, value):
        """Coerce an int or Fraction into the field."""
        if self.p is None:
            return Fraction(value)
        if isinstance(value, Fraction):
            den = value.denominator % self.p
            if den == 0:
                raise ZeroDivisionError(f"denominator {value.denominator} vanishes mod {self.p}")
            return value.numerator * pow(den, -1, self.p) % self.p
        return int(value) % self.p

    def neg(self, a):
        return -a if self.p is None else (-a) % self.p

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        if self.p is None:
            return 1 / a
        return pow(a, -1, self.p)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def lift(self, a) -> Fraction:
        """Rational representative; symmetric residues for prime fields."""
        if self.p is None:
            return a
        return Fraction(a - self.p if a > self.p // 2 else a)

    def format(self, a) -> str:
        return str(self.lift(a))

    def describe(self) -> str:
        return "q" if self.p is None else f"fp:{self.p}"

    def random_element(self, rng, nonzero: bool = False, bound: int = 20):
        """Draw a random element; rationals draw integers in [-bound, bound]."""
        while True:
            if self.p is None:
                a = Fraction(rng.randint(-bound, bound))
            else:
                a = rng.randrange(self.p)
            if not (nonzero and a == 0):
                return a
