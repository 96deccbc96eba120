"""Minimal multigraded free resolutions.

The frame comes from iterated Schreyer syzygies.  Each level is sorted so
that lead monomials in a common position decrease lexicographically, which
makes successive lead terms lose one variable per step and bounds the length
by the number of variables.  The frame is then made minimal by splitting off
unit entries.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field as dc_field

from .errors import InternalError
from .groebner import FreeModuleSpec, ModuleOrder, make_monic, poly_times_vector, schreyer_syzygies
from .linalg import rank
from .modules import PresentedModule
from .ring import Ring


@dataclass
class BettiTable:
    """Graded Betti numbers: ``entries[i]`` maps a multidegree to beta_{i,a}."""

    k: int
    entries: dict = dc_field(default_factory=dict)

    @classmethod
    def from_shifts(cls, k: int, shifts_by_level) -> BettiTable:
        entries = {}
        for i, shifts in enumerate(shifts_by_level):
            c = Counter(tuple(s) for s in shifts)
            if c:
                entries[i] = dict(c)
        return cls(k, entries)

    @property
    def length(self) -> int:
        return max(self.entries, default=-1)

    def total(self, i: int) -> int:
        return sum(self.entries.get(i, {}).values())

    def degrees(self, i: int) -> list:
        """Multiset of shifts at homological degree i, sorted."""
        return sorted(a for a, n in self.entries.get(i, {}).items() for _ in range(n))

    def res_reg(self):
        """(max over i, j of c_ij^l - i) for each l; -inf entries for zero."""
        if not self.entries:
            return tuple([-math.inf] * self.k)
        out = []
        for l in range(self.k):
            out.append(max(a[l] - i for i, row in self.entries.items() for a in row))
        return tuple(out)

    def as_json(self) -> list:
        return [{"i": i, "shifts": [list(a) for a in self.degrees(i)]} for i in sorted(self.entries)]

    def __eq__(self, other):
        if not isinstance(other, BettiTable):
            return NotImplemented
        clean = lambda e: {i: {a: n for a, n in r.items() if n} for i, r in e.items() if any(r.values())}
        return self.k == other.k and clean(self.entries) == clean(other.entries)

    def format(self) -> str:
        """Fixed-width text table: one row per (i, multidegree)."""
        lines = [f"{'i':>3}  {'degree':<24}{'beta':>6}"]
        for i, row in sorted(self.entries.items()):
            for a, n in sorted(row.items()):
                lines.append(f"{i:>3}  {str(tuple(a)):<24}{n:>6}")
        return "\n".join(lines)


@dataclass
class Resolution:
    """F_0 <- F_1 <- ... with ``maps[t]`` the columns of d_{t+1}: F_{t+1} -> F_t."""

    ring: Ring
    frees: list
    maps: list
    minimal: bool = False

    @property
    def length(self) -> int:
        n = len(self.frees) - 1
        while n >= 0 and self.frees[n].rank == 0:
            n -= 1
        return n

    def betti(self) -> BettiTable:
        return BettiTable.from_shifts(self.ring.k, [f.shifts for f in self.frees])

    def res_reg(self):
        return self.betti().res_reg()


def _lex_sort_key(lead):
    pos, m = lead
    return (pos, tuple(-e for e in m))


def schreyer_frame(module: PresentedModule, max_length: int | None = None) -> Resolution:
    """Possibly non-minimal free resolution of ``module`` from Schreyer syzygies."""
    ring = module.ring
    F = ring.field
    cap = ring.nvars + 2 if max_length is None else max_length
    order = ModuleOrder(ring)
    free = module.free
    gb = [make_monic(F, g, order) for g in module.relation_gb()]
    gb.sort(key=lambda g: _lex_sort_key(order.lead(g)))
    frees = [free]
    maps = []
    while gb:
        if len(maps) >= cap:
            raise InternalError("resolution exceeded the Hilbert length bound")
        gb_free = FreeModuleSpec(ring, [free.homogeneous_degree(g) for g in gb])
        frees.append(gb_free)
        maps.append(gb)
        syz, _, _, new_order = schreyer_syzygies(gb, free, order)
        syz.sort(key=lambda v: _lex_sort_key(new_order.lead(v)))
        free, order, gb = gb_free, new_order, syz
    return Resolution(ring, frees, maps)


def _drop_basis(frees, maps, t, k):
    """Remove basis vector k of F_t: column k of d_t and row k of d_{t+1}."""
    f = frees[t]
    frees[t] = FreeModuleSpec(f.ring, f.shifts[:k] + f.shifts[k + 1:])
    if t >= 1:
        del maps[t - 1][k]
    if t < len(maps):
        cols = maps[t]
        for idx, col in enumerate(cols):
            cols[idx] = {
                ((p - 1 if p > k else p), m): c for (p, m), c in col.items() if p != k
            }


def minimalize(res: Resolution) -> Resolution:
    """Split off every unit entry (in place on copies) to get a minimal resolution."""
    ring = res.ring
    F = ring.field
    one = ring.one_monomial
    frees = list(res.frees)
    maps = [[dict(c) for c in cols] for cols in res.maps]
    for t in range(len(maps)):
        while True:
            found = None
            for c, col in enumerate(maps[t]):
                units = sorted(p for (p, m), v in col.items() if m == one)
                if units:
                    found = (units[0], c)
                    break
            if found is None:
                break
            r, c = found
            cols = maps[t]
            pivot = cols[c]
            uinv = F.inv(pivot[(r, one)])
            for b, col in enumerate(cols):
                if b == c:
                    continue
                coef = {m: v for (p, m), v in col.items() if p == r}
                if not coef:
                    continue
                factor = {m: F.neg(F.mul(v, uinv)) for m, v in coef.items()}
                update = poly_times_vector(F, factor, pivot)
                for term, v in update.items():
                    nv = F.add(col.get(term, F.zero), v)
                    if nv == 0:
                        col.pop(term, None)
                    else:
                        col[term] = nv
                if any(p == r for p, _ in col):
                    raise InternalError("row elimination left a nonzero entry")
            # d_t loses column c (basis of F_{t+1}) and row r (basis of F_t)
            _drop_basis(frees, maps, t + 1, c)
            _drop_basis(frees, maps, t, r)
    while len(maps) and not maps[-1]:
        maps.pop()
        frees.pop()
    return Resolution(ring, frees, maps, minimal=True)


def resolve(module: PresentedModule) -> Resolution:
    """Minimal multigraded free resolution of a presented module."""
    return minimalize(schreyer_frame(module))


def betti_from_frame(res: Resolution) -> BettiTable:
    """Betti numbers as dim Tor_i(M, k)_a from the constant parts of any resolution."""
    ring = res.ring
    one = ring.one_monomial
    entries = {}
    for i, free in enumerate(res.frees):
        by_deg: dict = {}
        for j, s in enumerate(free.shifts):
            by_deg.setdefault(s, []).append(j)
        row = {}
        for a, basis in by_deg.items():
            n = len(basis)
            for t in (i - 1, i):
                # t = i - 1: d_i restricted to degree-a sources; t = i: d_{i+1} into degree-a targets
                if t < 0 or t >= len(res.maps):
                    continue
                if t == i - 1:
                    rows = []
                    for j in basis:
                        col = res.maps[t][j]
                        rows.append({p: v for (p, m), v in col.items() if m == one})
                    n -= rank(rows, res.frees[t].rank, ring.field)
                else:
                    pos = {j: k for k, j in enumerate(basis)}
                    rows = []
                    for j, s in enumerate(res.frees[i + 1].shifts):
                        if s != a:
                            continue
                        col = res.maps[t][j]
                        rows.append({pos[p]: v for (p, m), v in col.items() if m == one})
                    n -= rank(rows, len(basis), ring.field)
            if n:
                row[a] = n
        if row:
            entries[i] = row
    return BettiTable(ring.k, entries)


def check_resolution(res: Resolution) -> list:
    """Structural checks; returns a list of problems (empty when sound)."""
    problems = []
    F = res.ring.field
    one = res.ring.one_monomial
    if res.length > res.ring.nvars:
        problems.append("length exceeds the number of variables")
    for t, cols in enumerate(res.maps):
        src, tgt = res.frees[t + 1], res.frees[t]
        if len(cols) != src.rank:
            problems.append(f"map {t + 1} has {len(cols)} columns for rank {src.rank}")
        for j, col in enumerate(cols):
            if col and tgt.degree(col) != src.shifts[j]:
                problems.append(f"map {t + 1} column {j} is not degree preserving")
            if res.minimal and any(m == one for (_, m) in col):
                problems.append(f"map {t + 1} column {j} has a unit entry")
        if t + 1 < len(res.maps):
            for j, col in enumerate(res.maps[t + 1]):
                img: dict = {}
                for (p, m), c in col.items():
                    for term, v in poly_times_vector(F, {m: c}, cols[p]).items():
                        nv = F.add(img.get(term, F.zero), v)
                        if nv == 0:
                            img.pop(term, None)
                        else:
                            img[term] = nv
                if img:
                    problems.append(f"composite of maps {t + 1} and {t + 2} is nonzero")
                    break
    return problems


def homology_dimensions(res: Resolution, degree) -> list:
    """dim H_i of the resolution in one multidegree, by ranks of graded pieces.

    For a resolution of M the answer is [dim M_degree, 0, 0, ...].
    """
    ring = res.ring
    F = ring.field
    degree = tuple(degree)
    bases = []
    for free in res.frees:
        basis = []
        for j, s in enumerate(free.shifts):
            rest = tuple(d - x for d, x in zip(degree, s))
            basis.extend((j, m) for m in ring.monomials_of_degree(rest))
        bases.append({t: n for n, t in enumerate(basis)})
    ranks = [0] * (len(res.frees) + 1)
    for t, cols in enumerate(res.maps):
        src, tgt = bases[t + 1], bases[t]
        rows = []
        for (j, m) in src:
            img = poly_times_vector(F, {m: F.one}, cols[j])
            rows.append({tgt[term]: v for term, v in img.items()})
        ranks[t + 1] = rank(rows, len(tgt), F)
    return [len(b) - ranks[i] - ranks[i + 1] for i, b in enumerate(bases)]


def minimal_generator_degrees(module: PresentedModule) -> list:
    """Sorted degrees of a minimal generating set (dim Tor_0 per degree)."""
    ring = module.ring
    one = ring.one_monomial
    by_deg: dict = {}
    for j, s in enumerate(module.shifts):
        by_deg.setdefault(s, []).append(j)
    out = []
    for a, basis in sorted(by_deg.items()):
        pos = {j: k for k, j in enumerate(basis)}
        rows = []
        for r in module.relations:
            if module.free.degree(r) != a:
                continue
            rows.append({pos[p]: v for (p, m), v in r.items() if m == one})
        n = len(basis) - rank(rows, len(basis), ring.field)
        out.extend([a] * n)
    return out


def generator_stats(module: PresentedModule) -> dict:
    """Per-block maximal (``d``) and minimal (``beg``) generator degree."""
    degs = minimal_generator_degrees(module)
    k = module.ring.k
    if not degs:
        return {"d": tuple([-math.inf] * k), "beg": tuple([math.inf] * k)}
    return {
        "d": tuple(max(a[l] for a in degs) for l in range(k)),
        "beg": tuple(min(a[l] for a in degs) for l in range(k)),
    }


def res_reg(module: PresentedModule):
    return resolve(module).res_reg()
