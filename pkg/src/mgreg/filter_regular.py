"""a-invariants, filter-regular sequences and regularity through colon quotients.

An a-invariant a_l(M) is the largest block-l degree of a nonzero graded piece
of M.  With a Groebner basis of the relations, M has the standard monomials
as a multigraded basis, so a_l is finite exactly when, in every position that
is not killed, the lead monomials contain a pure power of each block-l
variable.  The saturation loop U <- (U : (x_l)) is an independent decision
procedure for the same finiteness question and is kept for cross-checking.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field as dc_field

from .errors import (
    FilterRegularityFailed,
    ImproperSequenceError,
    InternalError,
    NotFilterRegularError,
)
from .groebner import (
    ModuleOrder,
    buchberger,
    generic_coordinate_change,
    normal_form,
    poly_times_vector,
)
from .modules import PresentedModule, colon_generators, present, present_subquotient
from .monomial_ideal import MonomialIdeal
from .ring import Ring

INF = math.inf
SEED_STEP = 7919
GENERIC_ATTEMPTS = 3


def format_ainv(v) -> object:
    """JSON form of an a-invariant: an int or the strings 'inf' / '-inf'."""
    if v == INF:
        return "inf"
    if v == -INF:
        return "-inf"
    return int(v)


def _leads_by_position(module: PresentedModule) -> dict:
    order = module.order()
    out: dict = {}
    for g in module.relation_gb():
        p, m = order.lead(g)
        out.setdefault(p, []).append(m)
    return out


def a_invariant(module: PresentedModule, block: int, method: str = "leads"):
    """a_l(M) for the 0-based block index; +inf, -inf (zero module) or an int.

    ``method="saturation"`` decides finiteness by the saturation loop and
    only uses standard monomials for the finite value.
    """
    ring = module.ring
    one = ring.one_monomial
    block_vars = list(ring.block_ranges[block])
    leads = _leads_by_position(module)
    alive = [j for j in range(module.rank) if one not in leads.get(j, [])]
    if not alive:
        return -INF
    if method == "saturation":
        torsion, _ = torsion_by_saturation(module, block)
        if not torsion:
            return INF
    elif method != "leads":
        raise ValueError(f"unknown method {method!r}")
    best = -INF
    for j in alive:
        L = leads.get(j, [])
        caps = []
        for i in block_vars:
            pure = [m[i] for m in L if sum(m) == m[i]]
            if not pure:
                if method == "saturation":
                    raise InternalError("saturation and standard monomials disagree on torsion")
                return INF
            caps.append(min(pure))
        top = -1
        for exps in itertools.product(*(range(c) for c in caps)):
            d = sum(exps)
            if d <= top:
                continue
            m = [0] * ring.nvars
            for i, e in zip(block_vars, exps):
                m[i] = e
            m = tuple(m)
            if not any(all(a <= b for a, b in zip(g, m)) for g in L):
                top = d
        if top >= 0:
            best = max(best, top + module.shifts[j][block])
    return best


def torsion_by_saturation(module: PresentedModule, block: int):
    """(is (x_l)-power torsion, iterations) by iterating U <- (U : (x_l))."""
    ring = module.ring
    free = module.free
    F = ring.field
    order = ModuleOrder(ring)
    hs = [{ring.var_monomial(i): F.one} for i in ring.block_ranges[block]]
    U = list(module.relation_gb())
    # each pass lowers the top torsion degree; this cap is only a safety net
    total = sum(sum(free.homogeneous_degree(r)) for r in module.relations)
    bound = free.rank * max(1, total) + 2
    iterations = 0
    while True:
        iterations += 1
        if iterations > bound:
            raise InternalError("saturation loop exceeded its iteration bound")
        new = colon_generators(free, U, hs)
        if all(not normal_form(v, U, order, F) for v in new):
            break
        U = buchberger(U + new, free, order)
    torsion = all(not normal_form(free.basis_vector(j), U, order, F) for j in range(free.rank))
    return torsion, iterations


def colon_quotient(module: PresentedModule, seq_prefix, hs) -> PresentedModule:
    """Presentation of ((prefix)M :_M (hs)) / ((prefix)M)."""
    free = module.free
    U = list(module.relations) + _shifted(module, seq_prefix)
    gens = colon_generators(free, U, hs)
    return present(gens, U, free, kind="subquotient")


def _shifted(module, polys):
    """Generators of (f_1, ..., f_t) F as vectors."""
    F = module.ring.field
    return [poly_times_vector(F, f, module.free.basis_vector(p)) for f in polys for p in range(module.rank)]


def _as_dict(f):
    return f.terms if hasattr(f, "terms") else dict(f)


@dataclass
class FilterRegularityReport:
    sequence: list
    block: int
    values: list = dc_field(default_factory=list)
    regular: bool = True
    failing_index: int | None = None
    method: str = "general"

    @property
    def bfa(self):
        if not self.regular:
            raise NotFilterRegularError(
                f"sequence is not filter-regular (fails at element {self.failing_index + 1})"
            )
        return max(self.values, default=-INF)

    def as_json(self, ring: Ring | None = None) -> dict:
        out = {
            "block": self.block + 1,
            "a_invariants": [format_ainv(v) for v in self.values],
            "filter_regular": self.regular,
            "failing_index": None if self.failing_index is None else self.failing_index + 1,
            "route": self.method,
        }
        if self.regular:
            out["bfa"] = format_ainv(self.bfa)
        return out


def _fast_path_applies(module: PresentedModule, seq) -> bool:
    data = module.monomial_data
    if data is None or module.rank != 1 or data[0] != (module.ring.one_monomial,):
        return False
    return all(len(f) == 1 and sum(next(iter(f))) == 1 for f in seq)


def is_filter_regular(seq, module: PresentedModule, block: int, method: str = "auto") -> FilterRegularityReport:
    """Filter-regularity of ``seq`` on ``module`` w.r.t. a 0-based block.

    ``method`` is ``general`` (colon quotients and a-invariants), ``fast``
    (associated primes of monomial quotients by variables, with the colon
    values computed combinatorially) or ``auto`` (fast when it applies).
    Raises :class:`ImproperSequenceError` when (seq)M = M.
    """
    seq = [_as_dict(f) for f in seq]
    if any(not f for f in seq):
        raise ImproperSequenceError("sequence contains the zero polynomial")
    fast = _fast_path_applies(module, seq)
    if method == "fast" and not fast:
        raise ValueError("the associated-prime path needs S/J with J monomial and a variable sequence")
    if method == "auto":
        method = "fast" if fast else "general"
    if method == "fast":
        return _fast_filter_regular(seq, module, block)
    if method != "general":
        raise ValueError(f"unknown method {method!r}")
    whole = module.with_relations(_shifted(module, seq))
    if whole.is_zero():
        raise ImproperSequenceError("the sequence generates the whole module")
    report = FilterRegularityReport(seq, block, method="general")
    for i, f in enumerate(seq):
        q = colon_quotient(module, seq[:i], [f])
        v = a_invariant(q, block)
        report.values.append(v)
        if v == INF and report.regular:
            report.regular = False
            report.failing_index = i
    return report


def _fast_filter_regular(seq, module, block) -> FilterRegularityReport:
    ring = module.ring
    J = MonomialIdeal(ring, module.monomial_data[1])
    variables = [next(iter(f)).index(1) for f in seq]
    total = J + MonomialIdeal(ring, tuple(ring.var_monomial(i) for i in variables))
    if total.is_unit():
        raise ImproperSequenceError("the sequence generates the whole module")
    block_vars = set(ring.block_ranges[block])
    report = FilterRegularityReport(seq, block, method="fast")
    current = J
    for i, x in enumerate(variables):
        bad = [P for P in current.associated_primes() if not block_vars <= set(P.variables)]
        avoids = all(x not in P.variables for P in bad)
        colon = current.colon(ring.var_monomial(x))
        q = present_subquotient([{g: ring.field.one} for g in colon.generators],
                                [{g: ring.field.one} for g in current.generators], ring)
        v = a_invariant(q, block)
        if avoids != (v != INF):
            raise InternalError("associated-prime test and a-invariant disagree")
        report.values.append(v)
        if not avoids and report.regular:
            report.regular = False
            report.failing_index = i
        current = current + MonomialIdeal(ring, (ring.var_monomial(x),))
    return report


def bfa(seq, module: PresentedModule, block: int, method: str = "auto"):
    """Max over the sequence of the colon-quotient a-invariants."""
    return is_filter_regular(seq, module, block, method).bfa


@dataclass
class ColonRegularityReport:
    block: int
    value: object
    per_index: list
    seeds_tried: list
    changed: bool
    seed_used: int | None

    def as_json(self) -> dict:
        return {
            "block": self.block + 1,
            "res_reg": format_ainv(self.value),
            "per_index": [format_ainv(v) for v in self.per_index],
            "seeds_tried": list(self.seeds_tried),
            "coordinate_change": self.changed,
            "seed_used": self.seed_used,
            "route": "colon",
        }


def block_sequence(ring: Ring, block: int) -> list:
    F = ring.field
    return [{ring.var_monomial(i): F.one} for i in ring.block_ranges[block]]


def _block_regular(module, block) -> bool:
    try:
        return is_filter_regular(block_sequence(module.ring, block), module, block).regular
    except ImproperSequenceError:
        return False


def colon_values(module: PresentedModule, block: int) -> list:
    """a_l(((x_{l,1..i})M :_M (x_l)) / ((x_{l,1..i})M)) for i = 0..N_l."""
    xs = block_sequence(module.ring, block)
    return [a_invariant(colon_quotient(module, xs[:i], xs), block) for i in range(len(xs) + 1)]


def res_reg_via_colon(module: PresentedModule, block: int, seed: int = 0, always_change: bool = False,
                      allow_small_field: bool = False) -> ColonRegularityReport:
    """res-reg_l(M) as the maximum of colon-quotient a-invariants.

    The block variables must be filter-regular; if they are not (or
    ``always_change`` is set) a seeded generic change of coordinates on the
    block is applied first, retrying with seeds seed + 7919 t.
    """
    if module.is_zero():
        return ColonRegularityReport(block, -INF, [], [], False, None)
    if not always_change and _block_regular(module, block):
        values = colon_values(module, block)
        return ColonRegularityReport(block, max(values), values, [], False, None)
    tried = []
    for t in range(GENERIC_ATTEMPTS):
        s = seed + SEED_STEP * t
        tried.append(s)
        sub = generic_coordinate_change(module.ring, block, s, allow_small_field)
        moved = module.substitute(sub)
        if _block_regular(moved, block):
            values = colon_values(moved, block)
            return ColonRegularityReport(block, max(values), values, tried, True, s)
    raise FilterRegularityFailed(
        f"block {block + 1} variables not filter-regular after {GENERIC_ATTEMPTS} generic changes (seeds {tried})"
    )
