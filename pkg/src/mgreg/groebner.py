"""Groebner bases of submodules of graded free modules.

A module element ("vector") is a dict ``{(position, monomial): coefficient}``.
Orders on terms are :class:`ModuleOrder` objects: position-over-term with
earlier positions larger, or the Schreyer order induced by a Groebner basis
of the previous module.  Keys are flat integer tuples, so the division
routine can keep a heap of negated keys.
"""

from __future__ import annotations

import heapq
import random
from dataclasses import dataclass

from .errors import FieldTooSmallError, InternalError, NotHomogeneousError
from .field import Field
from .linalg import inverse
from .ring import (
    NOT_HOMOGENEOUS,
    Ring,
    divides,
    mono_div,
    mono_lcm,
    mono_mul,
    poly_mul,
    poly_pow,
    vec_add,
)

MIN_GENERIC_PRIME = 1009


class ModuleOrder:
    """Term order on a free module.

    ``anchors`` is None for position-over-term.  Otherwise anchors[j] is
    ``(p0, T, chain)``: basis vector j sits over the term ``x^T e_{p0}`` of
    the bottom free module, and ties are broken by the integer tuple
    ``chain`` (earlier indices larger at every level).
    """

    def __init__(self, ring: Ring, anchors=None):
        self.ring = ring
        self.anchors = anchors
        self._key: dict = {}
        self._neg: dict = {}

    def key(self, term) -> tuple:
        k = self._key.get(term)
        if k is None:
            pos, m = term
            mk = self.ring.monomial_key
            if self.anchors is None:
                k = (-pos,) + mk(m)
            else:
                p0, T, chain = self.anchors[pos]
                k = (-p0,) + mk(mono_mul(m, T)) + chain
            self._key[term] = k
        return k

    def negkey(self, term) -> tuple:
        k = self._neg.get(term)
        if k is None:
            k = tuple(-x for x in self.key(term))
            self._neg[term] = k
        return k

    def lead(self, v):
        return max(v, key=self.key)

    def induced(self, leads) -> ModuleOrder:
        """Schreyer order on the free module whose basis maps to ``leads``."""
        anchors = []
        for i, (pos, m) in enumerate(leads):
            if self.anchors is None:
                anchors.append((pos, m, (-i,)))
            else:
                p0, T, chain = self.anchors[pos]
                anchors.append((p0, mono_mul(m, T), chain + (-i,)))
        return ModuleOrder(self.ring, anchors)


@dataclass(frozen=True)
class FreeModuleSpec:
    """A graded free module: basis vector j has multidegree shifts[j]."""

    ring: Ring
    shifts: tuple

    def __post_init__(self):
        object.__setattr__(self, "shifts", tuple(tuple(s) for s in self.shifts))

    @property
    def rank(self) -> int:
        return len(self.shifts)

    def term_degree(self, term):
        pos, m = term
        return vec_add(self.ring.degree(m), self.shifts[pos])

    def degree(self, v):
        """Common multidegree of the terms of v, or NOT_HOMOGENEOUS."""
        degs = {self.term_degree(t) for t in v}
        if len(degs) != 1:
            return NOT_HOMOGENEOUS
        return degs.pop()

    def homogeneous_degree(self, v):
        d = self.degree(v)
        if d is NOT_HOMOGENEOUS:
            raise NotHomogeneousError("module element is not multihomogeneous")
        return d

    def basis_vector(self, j: int) -> dict:
        return {(j, self.ring.one_monomial): self.ring.field.one}


# vector helpers ---------------------------------------------------------------


def vec_axpy(F: Field, acc: dict, c, m, v: dict) -> None:
    """acc += c * x^m * v, in place."""
    mul, add = F.mul, F.add
    for (p, mm), vc in v.items():
        t = (p, mono_mul(mm, m))
        nc = mul(c, vc)
        if t in acc:
            nc = add(acc[t], nc)
            if nc == 0:
                del acc[t]
                continue
        acc[t] = nc


def poly_times_vector(F: Field, f: dict, v: dict) -> dict:
    out: dict = {}
    for m, c in f.items():
        vec_axpy(F, out, c, m, v)
    return out


def vec_scale(F: Field, v: dict, c) -> dict:
    if c == 0:
        return {}
    return {t: F.mul(c, x) for t, x in v.items()}


def vec_sub(F: Field, a: dict, b: dict) -> dict:
    out = dict(a)
    for t, c in b.items():
        if t in out:
            nc = F.sub(out[t], c)
            if nc == 0:
                del out[t]
            else:
                out[t] = nc
        else:
            out[t] = F.neg(c)
    return out


def make_monic(F: Field, v: dict, order: ModuleOrder) -> dict:
    lc = v[order.lead(v)]
    if lc == F.one:
        return dict(v)
    return vec_scale(F, v, F.inv(lc))


def embed(v: dict, offset: int) -> dict:
    return {(p + offset, m): c for (p, m), c in v.items()}


def ideal_vector(f: dict, pos: int = 0) -> dict:
    return {(pos, m): c for m, c in f.items()}


# division ----------------------------------------------------------------------


class _Reducers:
    """Lead terms of a basis grouped by position for divisor lookup."""

    def __init__(self, basis, order: ModuleOrder):
        self.basis = basis
        self.leads = [order.lead(g) for g in basis]
        self.by_pos: dict = {}
        for i, (p, m) in enumerate(self.leads):
            self.by_pos.setdefault(p, []).append((m, i))

    def find(self, term):
        p, m = term
        for lm, i in self.by_pos.get(p, ()):
            if all(a <= b for a, b in zip(lm, m)):
                return i, lm
        return None


def divide(v: dict, basis, order: ModuleOrder, F: Field, reducers=None, track=False):
    """Full division of v by a list of monic vectors.

    Returns ``(remainder, quotients)`` where quotients is a vector
    ``{(basis index, monomial): coefficient}`` (empty unless ``track``).
    """
    reducers = reducers or _Reducers(basis, order)
    p = dict(v)
    heap = [(order.negkey(t), t) for t in p]
    heapq.heapify(heap)
    rem: dict = {}
    quo: dict = {}
    mul, sub, add = F.mul, F.sub, F.add
    negkey = order.negkey
    while heap:
        _, t = heapq.heappop(heap)
        c = p.pop(t, None)
        if c is None:
            continue
        hit = reducers.find(t)
        if hit is None:
            rem[t] = c
            continue
        i, lm = hit
        q = mono_div(t[1], lm)
        g = basis[i]
        lead = reducers.leads[i]
        for (gp, gm), gc in g.items():
            if (gp, gm) == lead:
                continue
            nt = (gp, mono_mul(gm, q))
            prev = p.get(nt)
            if prev is None:
                p[nt] = F.neg(mul(c, gc))
                heapq.heappush(heap, (negkey(nt), nt))
            else:
                nc = sub(prev, mul(c, gc))
                if nc == 0:
                    del p[nt]
                else:
                    p[nt] = nc
        if track:
            qt = (i, q)
            nc = add(quo.get(qt, F.zero), c)
            if nc == 0:
                quo.pop(qt, None)
            else:
                quo[qt] = nc
    return rem, quo


def normal_form(v: dict, gb, order: ModuleOrder, F: Field) -> dict:
    """Remainder of v modulo a Groebner basis; zero iff v is in the submodule."""
    return divide(v, gb, order, F)[0]


def _spoly(F: Field, gi, gj, li, lj):
    L = mono_lcm(li[1], lj[1])
    mi = mono_div(L, li[1])
    mj = mono_div(L, lj[1])
    s: dict = {}
    vec_axpy(F, s, F.one, mi, gi)
    vec_axpy(F, s, F.neg(F.one), mj, gj)
    return s, mi, mj


def _single_position(v) -> bool:
    it = iter(v)
    p0 = next(it)[0]
    return all(p == p0 for p, _ in it)


def buchberger(gens, free: FreeModuleSpec, order: ModuleOrder | None = None):
    """Reduced Groebner basis (monic, sorted by decreasing lead term).

    Pairs are processed by lowest lcm degree, ties by index.  The chain
    criterion is always on; the coprime criterion is applied only to pairs of
    elements supported in a single position, where it is valid.
    """
    ring = free.ring
    F = ring.field
    order = order or ModuleOrder(ring)
    G: list = []
    leads: list = []
    single: list = []
    heap: list = []
    pending: set = set()

    def add(h):
        h = make_monic(F, h, order)
        idx = len(G)
        G.append(h)
        lt = order.lead(h)
        leads.append(lt)
        single.append(_single_position(h))
        for i in range(idx):
            if leads[i][0] == lt[0]:
                L = mono_lcm(leads[i][1], lt[1])
                deg = sum(ring.degree(L)) + sum(free.shifts[lt[0]])
                heapq.heappush(heap, (deg, i, idx))
                pending.add((i, idx))

    for g in gens:
        if not g:
            continue
        r, _ = divide(g, G, order, F)
        if r:
            add(r)

    while heap:
        deg, i, j = heapq.heappop(heap)
        pending.discard((i, j))
        li, lj = leads[i], leads[j]
        if single[i] and single[j] and not any(a and b for a, b in zip(li[1], lj[1])):
            continue
        L = mono_lcm(li[1], lj[1])
        chain = False
        for k, lk in enumerate(leads):
            if k == i or k == j or lk[0] != li[0]:
                continue
            if (min(i, k), max(i, k)) in pending or (min(j, k), max(j, k)) in pending:
                continue
            if divides(lk[1], L):
                chain = True
                break
        if chain:
            continue
        s, _, _ = _spoly(F, G[i], G[j], li, lj)
        r, _ = divide(s, G, order, F)
        if r:
            add(r)

    return reduce_basis(G, order, F)


def reduce_basis(G, order: ModuleOrder, F: Field):
    """Minimalize and interreduce a Groebner basis."""
    leads = [order.lead(g) for g in G]
    keep = []
    for i, (p, m) in enumerate(leads):
        redundant = False
        for j, (q, n) in enumerate(leads):
            if j == i or q != p or not divides(n, m):
                continue
            if n != m or j < i:
                redundant = True
                break
        if not redundant:
            keep.append(i)
    basis = [G[i] for i in keep]
    out = []
    for idx, g in enumerate(basis):
        others = basis[:idx] + basis[idx + 1:]
        r, _ = divide(g, others, order, F)
        out.append(make_monic(F, r, order))
    out.sort(key=lambda v: order.key(order.lead(v)), reverse=True)
    return out


def is_groebner(G, order: ModuleOrder, F: Field) -> bool:
    """Check all S-pairs reduce to zero (test helper)."""
    G = [make_monic(F, g, order) for g in G if g]
    red = _Reducers(G, order)
    for i in range(len(G)):
        for j in range(i + 1, len(G)):
            li, lj = red.leads[i], red.leads[j]
            if li[0] != lj[0]:
                continue
            s, _, _ = _spoly(F, G[i], G[j], li, lj)
            if divide(s, G, order, F, reducers=red)[0]:
                return False
    return True


def schreyer_syzygies(gb, free: FreeModuleSpec, order: ModuleOrder):
    """Syzygies of a monic Groebner basis via Schreyer's theorem.

    Returns ``(syzygies, syzygy_free, gb_free, induced_order)``.  ``gb_free``
    is the free module with one basis vector per element of ``gb`` (shifted by
    its degree); the syzygies live there and form a Groebner basis for
    ``induced_order``.  Only pairs whose lead-term quotient is minimal are
    kept, which preserves the lead module.
    """
    ring = free.ring
    F = ring.field
    red = _Reducers(gb, order)
    leads = red.leads
    degrees = [free.homogeneous_degree(g) for g in gb]
    gb_free = FreeModuleSpec(ring, degrees)
    new_order = order.induced(leads)
    by_pos: dict = {}
    for i, (p, _) in enumerate(leads):
        by_pos.setdefault(p, []).append(i)
    syz = []
    syz_shifts = []
    one = F.one
    for p in sorted(by_pos):
        idxs = by_pos[p]
        for a, i in enumerate(idxs):
            cands: dict = {}
            for j in idxs[a + 1:]:
                mji = mono_div(mono_lcm(leads[i][1], leads[j][1]), leads[i][1])
                cands.setdefault(mji, j)
            minimal = [m for m in cands if not any(o != m and divides(o, m) for o in cands)]
            minimal.sort(key=lambda m: tuple(-e for e in m))
            for mji in minimal:
                j = cands[mji]
                s, mi, mj = _spoly(F, gb[i], gb[j], leads[i], leads[j])
                rem, quo = divide(s, gb, order, F, reducers=red, track=True)
                if rem:
                    raise InternalError("Schreyer step on a set that is not a Groebner basis")
                v = {(i, mi): one}
                t = (j, mj)
                v[t] = F.sub(v.get(t, F.zero), one)
                for qt, qc in quo.items():
                    nc = F.sub(v.get(qt, F.zero), qc)
                    if nc == 0:
                        v.pop(qt, None)
                    else:
                        v[qt] = nc
                syz.append(v)
                syz_shifts.append(vec_add(ring.degree(mi), degrees[i]))
    return syz, FreeModuleSpec(ring, syz_shifts), gb_free, new_order


def syzygies(gb, free: FreeModuleSpec, order: ModuleOrder | None = None):
    """Generators of the kernel of gb_free -> free, with their shifts."""
    order = order or ModuleOrder(free.ring)
    F = free.ring.field
    gb = [make_monic(F, g, order) for g in gb if g]
    syz, syz_free, _, _ = schreyer_syzygies(gb, free, order)
    return syz, syz_free


# generic coordinate change ----------------------------------------------------


@dataclass(frozen=True)
class Substitution:
    """Linear change of the variables of one block: x_i -> sum_j A[i][j] x_j."""

    ring: Ring
    block: int
    matrix: tuple
    inverse_matrix: tuple
    seed: int | None = None

    def inverse(self) -> Substitution:
        return Substitution(self.ring, self.block, self.inverse_matrix, self.matrix, self.seed)

    def images(self):
        """Image of every variable of the ring as a polynomial dict."""
        ring = self.ring
        F = ring.field
        idx = list(ring.block_ranges[self.block])
        out = []
        for v in range(ring.nvars):
            if v in idx:
                row = self.matrix[idx.index(v)]
                out.append({ring.var_monomial(w): c for w, c in zip(idx, row) if c != 0})
            else:
                out.append({ring.var_monomial(v): F.one})
        return out

    def apply(self, f: dict) -> dict:
        ring = self.ring
        F = ring.field
        images = self.images()
        one = ring.one_monomial
        cache: dict = {}
        out: dict = {}
        for m, c in f.items():
            acc = {one: c}
            for v, e in enumerate(m):
                if e == 0:
                    continue
                key = (v, e)
                if key not in cache:
                    cache[key] = poly_pow(F, images[v], e, one)
                acc = poly_mul(F, acc, cache[key])
            for mm, cc in acc.items():
                nc = F.add(out.get(mm, F.zero), cc)
                if nc == 0:
                    out.pop(mm, None)
                else:
                    out[mm] = nc
        return out

    def apply_vector(self, v: dict) -> dict:
        comps: dict = {}
        for (p, m), c in v.items():
            comps.setdefault(p, {})[m] = c
        out = {}
        for p, f in comps.items():
            for m, c in self.apply(f).items():
                out[(p, m)] = c
        return out


def generic_coordinate_change(ring: Ring, block: int, seed: int, allow_small_field: bool = False) -> Substitution:
    """Random invertible linear substitution on one block, drawn from ``seed``."""
    F = ring.field
    if F.p is not None and F.p < MIN_GENERIC_PRIME and not allow_small_field:
        raise FieldTooSmallError(f"prime field {F.p} is too small for a generic change (need >= {MIN_GENERIC_PRIME})")
    n = len(ring.blocks[block])
    rng = random.Random(seed)
    while True:
        if n == 1:
            A = [[F.random_element(rng, nonzero=True)]]
        else:
            A = [[F.random_element(rng) for _ in range(n)] for _ in range(n)]
        inv = inverse(A, F)
        if inv is not None:
            break
    return Substitution(ring, block, tuple(map(tuple, A)), tuple(map(tuple, inv)), seed)
