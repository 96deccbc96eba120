"""Standard N^k-graded polynomial rings, monomials and polynomials.

A monomial is a tuple of non-negative exponents indexed by all variables in
block order.  A polynomial is stored as a dict ``{monomial: coefficient}``
with no zero coefficients.  :class:`Polynomial` wraps that dict with its ring
for the public API; the engine modules work on the raw dicts.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field
from typing import Dict, Tuple

from .errors import NotHomogeneousError, ZeroPolynomialError
from .field import Field

Monomial = Tuple[int, ...]
MultiDegree = Tuple[int, ...]
PolyDict = Dict[Monomial, object]


class _NotHomogeneous:
    def __repr__(self):
        return "NOT_HOMOGENEOUS"

    def __bool__(self):
        return False


NOT_HOMOGENEOUS = _NotHomogeneous()


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def mono_div(a: Monomial, b: Monomial) -> Monomial:
    """a / b, assuming b divides a."""
    return tuple(x - y for x, y in zip(a, b))


def divides(a: Monomial, b: Monomial) -> bool:
    return all(x <= y for x, y in zip(a, b))


def mono_lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x if x > y else y for x, y in zip(a, b))


def mono_gcd(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x if x < y else y for x, y in zip(a, b))


def coprime(a: Monomial, b: Monomial) -> bool:
    return not any(x and y for x, y in zip(a, b))


def vec_add(a, b) -> tuple:
    return tuple(x + y for x, y in zip(a, b))


def vec_sub(a, b) -> tuple:
    return tuple(x - y for x, y in zip(a, b))


def _compositions(total: int, parts: int):
    if parts == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


@dataclass(frozen=True)
class Ring:
    """k blocks of variables over a field; variables of block l have degree e_l."""

    blocks: tuple
    field: Field = dc_field(default_factory=Field.rationals)
    names: tuple = dc_field(init=False, repr=False, compare=False)
    index: dict = dc_field(init=False, repr=False, compare=False)
    block_of: tuple = dc_field(init=False, repr=False, compare=False)
    block_ranges: tuple = dc_field(init=False, repr=False, compare=False)
    _keys: dict = dc_field(init=False, repr=False, compare=False)

    def __post_init__(self):
        blocks = tuple(tuple(b) for b in self.blocks)
        if not blocks:
            raise ValueError("a ring needs at least one block")
        if any(len(b) == 0 for b in blocks):
            raise ValueError("every block needs at least one variable")
        names = tuple(n for b in blocks for n in b)
        if len(set(names)) != len(names):
            raise ValueError("variable names must be globally unique")
        for n in names:
            if not (n[0].isalpha() or n[0] == "_") or not all(ch.isalnum() or ch == "_" for ch in n):
                raise ValueError(f"bad variable name {n!r}")
        object.__setattr__(self, "blocks", blocks)
        object.__setattr__(self, "names", names)
        object.__setattr__(self, "index", {n: i for i, n in enumerate(names)})
        block_of = []
        ranges = []
        start = 0
        for l, b in enumerate(blocks):
            block_of.extend([l] * len(b))
            ranges.append(range(start, start + len(b)))
            start += len(b)
        object.__setattr__(self, "block_of", tuple(block_of))
        object.__setattr__(self, "block_ranges", tuple(ranges))
        object.__setattr__(self, "_keys", {})

    def __reduce__(self):
        return (Ring, (self.blocks, self.field))

    def __hash__(self):
        return hash((self.blocks, self.field.kind, self.field.p))

    @classmethod
    def from_sizes(cls, sizes, fld: Field | None = None, prefix="x") -> Ring:
        """Ring with blocks of the given sizes and names like x0_1."""
        blocks = [[f"{prefix}{l}_{j}" for j in range(n)] for l, n in enumerate(sizes)]
        return cls(tuple(map(tuple, blocks)), fld or Field.rationals())

    def with_field(self, fld: Field) -> Ring:
        return Ring(self.blocks, fld)

    @property
    def k(self) -> int:
        return len(self.blocks)

    @property
    def nvars(self) -> int:
        return len(self.names)

    @property
    def zero_degree(self) -> MultiDegree:
        return (0,) * self.k

    @property
    def one_monomial(self) -> Monomial:
        return (0,) * self.nvars

    def unit(self, l: int) -> MultiDegree:
        return tuple(1 if i == l else 0 for i in range(self.k))

    def degree(self, m: Monomial) -> MultiDegree:
        return tuple(sum(m[i] for i in r) for r in self.block_ranges)

    def var_monomial(self, i: int) -> Monomial:
        return tuple(1 if j == i else 0 for j in range(self.nvars))

    def monomial_key(self, m: Monomial) -> tuple:
        """Sort key of the block-degrevlex order (larger key = larger monomial).

        Total degree first, then the multidegree compared block by block,
        then reverse lexicographic on the concatenated exponent vector.
        """
        key = self._keys.get(m)
        if key is None:
            deg = self.degree(m)
            key = (sum(deg),) + deg + tuple(-e for e in reversed(m))
            self._keys[m] = key
        return key

    def monomials_of_degree(self, deg) -> list:
        """All monomials of the given multidegree (empty for negative entries)."""
        if any(d < 0 for d in deg):
            return []
        parts = [list(_compositions(d, len(r))) for d, r in zip(deg, self.block_ranges)]
        return [tuple(e for p in combo for e in p) for combo in itertools.product(*parts)]

    def format_monomial(self, m: Monomial) -> str:
        parts = []
        for name, e in zip(self.names, m):
            if e == 1:
                parts.append(name)
            elif e > 1:
                parts.append(f"{name}^{e}")
        return "*".join(parts) if parts else "1"

    def parse(self, text: str) -> Polynomial:
        from .parser import parse_polynomial

        return parse_polynomial(text, self)

    def var(self, name: str) -> Polynomial:
        return Polynomial(self, {self.var_monomial(self.index[name]): self.field.one})

    def gens(self):
        return [Polynomial(self, {self.var_monomial(i): self.field.one}) for i in range(self.nvars)]

    def constant(self, c) -> Polynomial:
        c = self.field(c)
        return Polynomial(self, {self.one_monomial: c} if c != 0 else {})

    def describe(self) -> dict:
        return {"field": self.field.describe(), "blocks": [list(b) for b in self.blocks]}


# raw polynomial dict helpers -------------------------------------------------


def poly_add(F: Field, a: PolyDict, b: PolyDict, sign: int = 1) -> PolyDict:
    out = dict(a)
    op = F.add if sign > 0 else F.sub
    for m, c in b.items():
        if m in out:
            v = op(out[m], c)
        else:
            v = c if sign > 0 else F.neg(c)
        if v == 0:
            out.pop(m, None)
        else:
            out[m] = v
    return out


def poly_mul(F: Field, a: PolyDict, b: PolyDict) -> PolyDict:
    out: PolyDict = {}
    mul, add = F.mul, F.add
    for m1, c1 in a.items():
        for m2, c2 in b.items():
            m = tuple(x + y for x, y in zip(m1, m2))
            c = mul(c1, c2)
            if m in out:
                c = add(out[m], c)
                if c == 0:
                    del out[m]
                    continue
            out[m] = c
    return out


def poly_scale(F: Field, a: PolyDict, c, m: Monomial | None = None) -> PolyDict:
    if c == 0:
        return {}
    if m is None:
        return {t: F.mul(c, v) for t, v in a.items()}
    return {mono_mul(t, m): F.mul(c, v) for t, v in a.items()}


def poly_pow(F: Field, a: PolyDict, n: int, one: Monomial) -> PolyDict:
    result = {one: F.one}
    base = a
    while n:
        if n & 1:
            result = poly_mul(F, result, base)
        n >>= 1
        if n:
            base = poly_mul(F, base, base)
    return result


def poly_degree(ring: Ring, a: PolyDict):
    """Common multidegree of the terms, or NOT_HOMOGENEOUS."""
    if not a:
        raise ZeroPolynomialError("the zero polynomial has no multidegree")
    degs = {ring.degree(m) for m in a}
    if len(degs) != 1:
        return NOT_HOMOGENEOUS
    return degs.pop()


def is_monomial_poly(a: PolyDict) -> bool:
    return len(a) == 1


class Polynomial:
    """An immutable polynomial in a :class:`Ring`."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: Ring, terms: PolyDict | None = None):
        self.ring = ring
        self.terms = {m: c for m, c in (terms or {}).items() if c != 0}

    @property
    def field(self) -> Field:
        return self.ring.field

    def _coerce(self, other) -> Polynomial:
        if isinstance(other, Polynomial):
            if other.ring != self.ring:
                raise ValueError("polynomials from different rings")
            return other
        return self.ring.constant(other)

    def __add__(self, other):
        other = self._coerce(other)
        return Polynomial(self.ring, poly_add(self.field, self.terms, other.terms))

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        return Polynomial(self.ring, poly_add(self.field, self.terms, other.terms, -1))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __neg__(self):
        return Polynomial(self.ring, {m: self.field.neg(c) for m, c in self.terms.items()})

    def __mul__(self, other):
        other = self._coerce(other)
        return Polynomial(self.ring, poly_mul(self.field, self.terms, other.terms))

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative exponent")
        return Polynomial(self.ring, poly_pow(self.field, self.terms, n, self.ring.one_monomial))

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.ring == other.ring and self.terms == other.terms
        return NotImplemented

    def __hash__(self):
        return hash(tuple(sorted(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def multidegree(self):
        return poly_degree(self.ring, self.terms)

    def is_homogeneous(self) -> bool:
        return self.multidegree() is not NOT_HOMOGENEOUS

    def homogeneous_degree(self) -> MultiDegree:
        d = self.multidegree()
        if d is NOT_HOMOGENEOUS:
            raise NotHomogeneousError(f"{self} is not multihomogeneous")
        return d

    def sorted_terms(self):
        key = self.ring.monomial_key
        return sorted(self.terms.items(), key=lambda t: key(t[0]), reverse=True)

    def lead_monomial(self) -> Monomial:
        if not self.terms:
            raise ZeroPolynomialError("the zero polynomial has no lead monomial")
        return max(self.terms, key=self.ring.monomial_key)

    def __str__(self):
        if not self.terms:
            return "0"
        out = []
        for i, (m, c) in enumerate(self.sorted_terms()):
            q = self.field.lift(c)
            neg = q < 0
            q = abs(q)
            mono = self.ring.format_monomial(m)
            if mono == "1":
                body = str(q)
            elif q == 1:
                body = mono
            else:
                body = f"{q}*{mono}"
            if i == 0:
                out.append(f"-{body}" if neg else body)
            else:
                out.append(f" - {body}" if neg else f" + {body}")
        return "".join(out)

    def __repr__(self):
        return f"Polynomial({self})"


def multidegree_of(f: Polynomial):
    """Common multidegree of a nonzero polynomial, or ``NOT_HOMOGENEOUS``."""
    return f.multidegree()
