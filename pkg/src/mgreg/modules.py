"""Finitely presented multigraded modules and submodule operations.

Everything is a subquotient of a graded free module F: generators A and
relations R (both vectors of F) describe (A + R)/R.  :func:`present` turns
such a pair into a cokernel presentation by a POT elimination.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .errors import NonMonomialError, NotHomogeneousError
from .groebner import (
    FreeModuleSpec,
    ModuleOrder,
    buchberger,
    divide,
    embed,
    ideal_vector,
    normal_form,
    poly_times_vector,
)
from .ring import NOT_HOMOGENEOUS, Ring, mono_div, mono_lcm, poly_degree


@dataclass(frozen=True, eq=False)
class PresentedModule:
    """coker(relations -> free).

    ``kind`` records provenance (quotient-of-ring, ideal-as-module,
    power-times-quotient, generic-image, subquotient, free).
    ``monomial_data`` is ``(numerator, J)`` with monomial tuples when the
    module is known to equal (numerator + J)/J inside S.
    """

    free: FreeModuleSpec
    relations: tuple
    kind: str = "presented"
    monomial_data: tuple | None = None
    relations_are_gb: bool = False
    _cache: dict = dc_field(default_factory=dict, repr=False)

    def __post_init__(self):
        rels = tuple(dict(r) for r in self.relations if r)
        object.__setattr__(self, "relations", rels)
        for r in rels:
            if self.free.degree(r) is NOT_HOMOGENEOUS:
                raise NotHomogeneousError("relation is not multihomogeneous")

    @property
    def ring(self) -> Ring:
        return self.free.ring

    @property
    def rank(self) -> int:
        return self.free.rank

    @property
    def shifts(self) -> tuple:
        return self.free.shifts

    def order(self) -> ModuleOrder:
        if "order" not in self._cache:
            self._cache["order"] = ModuleOrder(self.ring)
        return self._cache["order"]

    def relation_gb(self) -> list:
        """Reduced Groebner basis of the relation module (POT order)."""
        if "gb" not in self._cache:
            if self.relations_are_gb:
                gb = list(self.relations)
            else:
                gb = buchberger(self.relations, self.free, self.order())
            self._cache["gb"] = gb
        return self._cache["gb"]

    def is_zero(self) -> bool:
        one = self.ring.one_monomial
        leads = {self.order().lead(g) for g in self.relation_gb()}
        return all((j, one) in leads for j in range(self.rank))

    def reduce(self, v: dict) -> dict:
        return normal_form(v, self.relation_gb(), self.order(), self.ring.field)

    def contains_zero(self, v: dict) -> bool:
        """True when v (a vector of the free module) is zero in the module."""
        return not self.reduce(v)

    def with_relations(self, extra, kind=None) -> PresentedModule:
        return PresentedModule(self.free, self.relations + tuple(extra), kind or self.kind)

    def substitute(self, sub) -> PresentedModule:
        rels = [sub.apply_vector(r) for r in self.relations]
        data = None
        if self.monomial_data is not None and len(self.ring.blocks[sub.block]) == 1:
            data = self.monomial_data
        return PresentedModule(self.free, tuple(rels), "generic-image", data)


def free_module(ring: Ring, shifts=None) -> PresentedModule:
    shifts = shifts if shifts is not None else [ring.zero_degree]
    return PresentedModule(FreeModuleSpec(ring, shifts), (), "free")


def _monomials_of(polys, what):
    out = []
    for f in polys:
        if len(f) != 1:
            raise NonMonomialError(f"{what} is not monomial")
        out.append(next(iter(f)))
    return tuple(out)


def _all_monomial(polys) -> bool:
    return all(len(f) == 1 for f in polys)


def quotient_module(ring: Ring, relations) -> PresentedModule:
    """S/J for polynomials (Polynomial or dict) J."""
    rels = [_as_dict(f) for f in relations]
    rels = [f for f in rels if f]
    free = FreeModuleSpec(ring, [ring.zero_degree])
    data = None
    if _all_monomial(rels):
        data = ((ring.one_monomial,), _monomials_of(rels, "relation"))
    return PresentedModule(free, tuple(ideal_vector(f) for f in rels), "quotient-of-ring", data)


def _as_dict(f) -> dict:
    return f.terms if hasattr(f, "terms") else dict(f)


def present(gens, rels, free: FreeModuleSpec, degrees=None, kind="subquotient") -> PresentedModule:
    """Presentation of (A + R)/R for generators A and relations R of ``free``.

    The kernel of S^a -> free/R, e_i -> A_i, is read off a position-over-term
    Groebner basis of the rows (A_i | e_i) and (R_k | 0).
    """
    ring = free.ring
    F = ring.field
    r = free.rank
    gens = [dict(g) for g in gens]
    if degrees is None:
        degrees = []
        for g in gens:
            if not g:
                raise ValueError("degree of a zero generator must be given")
            degrees.append(free.homogeneous_degree(g))
    degrees = [tuple(d) for d in degrees]
    big = FreeModuleSpec(ring, free.shifts + tuple(degrees))
    one = ring.one_monomial
    rows = []
    for i, g in enumerate(gens):
        row = dict(g)
        row[(r + i, one)] = F.one
        rows.append(row)
    rows.extend(dict(x) for x in rels if x)
    order = ModuleOrder(ring)
    G = buchberger(rows, big, order)
    kernel = [embed(g, -r) for g in G if order.lead(g)[0] >= r]
    return PresentedModule(FreeModuleSpec(ring, degrees), tuple(kernel), kind, relations_are_gb=True)


def present_subquotient(numerator_gens, J, ring: Ring, kind="ideal-as-module", elimination=False) -> PresentedModule:
    """Presentation of (A + J)/J for an ideal A = (numerator_gens) of S.

    Monomial input uses the explicit generators of the kernel of
    S^r -> S/J (pairwise lcm syzygies plus lcms with J); otherwise, or when
    ``elimination`` is set, the general elimination of :func:`present`.
    """
    nums = [_as_dict(f) for f in numerator_gens]
    js = [f for f in (_as_dict(f) for f in J) if f]
    if any(not f for f in nums):
        raise ValueError("numerator generators must be nonzero")
    degrees = []
    for f in nums:
        d = poly_degree(ring, f)
        if d is NOT_HOMOGENEOUS:
            raise NotHomogeneousError("numerator generator is not multihomogeneous")
        degrees.append(d)
    for f in js:
        if poly_degree(ring, f) is NOT_HOMOGENEOUS:
            raise NotHomogeneousError("relation is not multihomogeneous")
    if _all_monomial(nums) and _all_monomial(js):
        ms = _monomials_of(nums, "generator")
        jm = _monomials_of(js, "relation")
        data = (ms, jm)
        if not elimination:
            return PresentedModule(
                FreeModuleSpec(ring, degrees), tuple(_monomial_kernel(ring, ms, jm)), kind, data
            )
    else:
        data = None
    base = FreeModuleSpec(ring, [ring.zero_degree])
    pm = present([ideal_vector(f) for f in nums], [ideal_vector(f) for f in js], base, degrees, kind)
    return PresentedModule(pm.free, pm.relations, kind, data, relations_are_gb=True)


def _monomial_kernel(ring: Ring, ms, jm):
    F = ring.field
    one, mone = F.one, F.neg(F.one)
    rels = []
    for i, a in enumerate(ms):
        for j in range(i + 1, len(ms)):
            b = ms[j]
            L = mono_lcm(a, b)
            rels.append({(i, mono_div(L, a)): one, (j, mono_div(L, b)): mone})
        for g in jm:
            rels.append({(i, mono_div(mono_lcm(a, g), a)): one})
    return rels


def colon_generators(free: FreeModuleSpec, U, hs) -> list:
    """Generators of {v in free : h v in span(U) for all h in hs}.

    ``U`` must already contain the relations of the ambient module.  The
    kernel of v -> (h_1 v, ..., h_t v) into t copies of free/U is presented
    with copy q shifted by -deg(h_q) so the map is degree preserving.
    """
    ring = free.ring
    r = free.rank
    hs = [_as_dict(h) for h in hs]
    hdeg = [poly_degree(ring, h) for h in hs]
    if any(d is NOT_HOMOGENEOUS for d in hdeg):
        raise NotHomogeneousError("colon element is not multihomogeneous")
    shifts = []
    for d in hdeg:
        shifts.extend(tuple(s - x for s, x in zip(sh, d)) for sh in free.shifts)
    target = FreeModuleSpec(ring, shifts)
    F = ring.field
    gens = []
    for j in range(r):
        e = free.basis_vector(j)
        g: dict = {}
        for q, h in enumerate(hs):
            g.update(embed(poly_times_vector(F, h, e), q * r))
        gens.append(g)
    rels = [embed(u, q * r) for q in range(len(hs)) for u in U if u]
    pm = present(gens, rels, target, degrees=list(free.shifts))
    return list(pm.relations)


def submodule_gb(free: FreeModuleSpec, gens) -> list:
    return buchberger([g for g in gens if g], free, ModuleOrder(free.ring))


def contains(free: FreeModuleSpec, gb, v) -> bool:
    return not normal_form(v, gb, ModuleOrder(free.ring), free.ring.field)


def submodules_equal(free: FreeModuleSpec, A, B) -> bool:
    """Two-sided inclusion test through normal forms."""
    ga = submodule_gb(free, A)
    gb = submodule_gb(free, B)
    order = ModuleOrder(free.ring)
    F = free.ring.field
    return all(not divide(b, ga, order, F)[0] for b in B if b) and all(
        not divide(a, gb, order, F)[0] for a in A if a
    )
