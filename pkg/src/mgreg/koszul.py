"""Betti numbers of monomial subquotients (A + J)/J from Koszul homology.

Tor_i(M, k)_alpha is the homology of the Koszul complex K(x) tensored with M
in the fine degree alpha in N^n.  For monomial data M_alpha is one-dimensional
exactly when x^alpha lies in A but not in J, so each fine-graded strand is a
small complex with entries +-1.  Nonzero Tor can only sit at lcms of subsets
of the generators of A and J, which gives the candidate degrees.
"""

from __future__ import annotations

import itertools
import logging
from concurrent.futures import ProcessPoolExecutor

from .errors import BoxTooSmallError, NonMonomialError
from .linalg import rank
from .resolution import BettiTable
from .ring import Ring, divides, mono_lcm

log = logging.getLogger(__name__)

CANDIDATE_CAP = 4096


def lcm_closure(gens, cap: int = CANDIDATE_CAP):
    """All lcms of nonempty subsets of ``gens``; None when more than ``cap``."""
    found: set = set()
    for g in gens:
        new = {g} | {mono_lcm(g, m) for m in found}
        found |= new
        if len(found) > cap:
            return None
    return found


def _in_ideal(m, gens) -> bool:
    return any(divides(g, m) for g in gens)


def fine_tor(alpha, numerator, J, F) -> list:
    """[dim Tor_0, dim Tor_1, ...] of (A + J)/J in fine degree alpha."""
    support = [i for i, e in enumerate(alpha) if e]
    chains = []
    for size in range(len(support) + 1):
        basis = []
        for sigma in itertools.combinations(support, size):
            rest = list(alpha)
            for j in sigma:
                rest[j] -= 1
            rest = tuple(rest)
            if _in_ideal(rest, numerator) and not _in_ideal(rest, J):
                basis.append(sigma)
        chains.append(basis)
    ranks = [0] * (len(chains) + 1)
    for i in range(1, len(chains)):
        src, tgt = chains[i], chains[i - 1]
        if not src or not tgt:
            continue
        index = {s: n for n, s in enumerate(tgt)}
        rows = []
        for sigma in src:
            row = {}
            for p, j in enumerate(sigma):
                face = sigma[:p] + sigma[p + 1:]
                n = index.get(face)
                if n is not None:
                    row[n] = F.one if p % 2 == 0 else F.neg(F.one)
            rows.append(row)
        ranks[i] = rank(rows, len(tgt), F)
    return [len(c) - ranks[i] - ranks[i + 1] for i, c in enumerate(chains)]


def _strand_batch(args):
    alphas, numerator, J, F = args
    return [(a, fine_tor(a, numerator, J, F)) for a in alphas]


def koszul_tor_oracle(module, box=None, jobs: int = 1) -> BettiTable:
    """Betti table of a presented module carrying monomial data.

    ``box`` bounds the fine degrees examined; by default it is the lcm of all
    monomial data.  A nonzero Tor on a face of a box that is smaller than that
    lcm raises :class:`BoxTooSmallError`.
    """
    ring: Ring = module.ring
    if module.monomial_data is None:
        raise NonMonomialError("the Koszul oracle needs monomial generators and relations")
    numerator, J = (tuple(map(tuple, x)) for x in module.monomial_data)
    return tor_of_subquotient(ring, numerator, J, box, jobs)


def tor_of_subquotient(ring: Ring, numerator, J, box=None, jobs: int = 1) -> BettiTable:
    gens = tuple(numerator) + tuple(J)
    full = ring.one_monomial
    for g in gens:
        full = mono_lcm(full, g)
    bound = tuple(box) if box is not None else full
    cands = lcm_closure(gens)
    if cands is None:
        log.warning("more than %d lcm candidates; enumerating the whole box", CANDIDATE_CAP)
        cands = set(itertools.product(*(range(b + 1) for b in bound)))
    cands = sorted(a for a in cands if divides(a, bound))
    F = ring.field
    if jobs > 1 and len(cands) > 64:
        chunks = [cands[i::jobs] for i in range(jobs)]
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = [r for batch in pool.map(_strand_batch, [(c, numerator, J, F) for c in chunks]) for r in batch]
        results.sort()
    else:
        results = [(a, fine_tor(a, numerator, J, F)) for a in cands]
    small = [i for i in range(ring.nvars) if bound[i] < full[i]]
    entries: dict = {}
    for alpha, dims in results:
        for i, n in enumerate(dims):
            if n == 0:
                continue
            if n < 0:
                raise AssertionError("negative homology dimension")
            if any(alpha[j] == bound[j] for j in small):
                raise BoxTooSmallError(f"nonzero Tor_{i} on the box boundary at {alpha}")
            deg = ring.degree(alpha)
            row = entries.setdefault(i, {})
            row[deg] = row.get(deg, 0) + n
    return BettiTable(ring.k, entries)
