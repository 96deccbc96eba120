"""Regularity of I^n M for M = S/J: sequence, linear fit, reductions, bounds."""

from __future__ import annotations

import itertools
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field as dc_field

from .filter_regular import format_ainv
from .groebner import FreeModuleSpec, ideal_vector
from .modules import PresentedModule, present_subquotient, quotient_module, submodules_equal
from .monomial_ideal import MonomialIdeal
from .resolution import generator_stats, resolve
from .ring import Polynomial, Ring, poly_degree, poly_mul

INF = math.inf


@dataclass(frozen=True)
class AsymptoticsConfig:
    n_max: int = 6
    window: int = 2
    n0_max: int = 8
    max_subset: int = 3
    jobs: int = 1


def _dicts(polys):
    return [f.terms if hasattr(f, "terms") else dict(f) for f in polys]


def _is_monomial(polys) -> bool:
    return all(len(f) == 1 for f in polys)


def ideal_power_generators(ring: Ring, gens, n: int) -> list:
    """Generators of (gens)^n; minimal when the generators are monomials."""
    gens = [f for f in _dicts(gens) if f]
    if n < 0:
        raise ValueError("power must be non-negative")
    if _is_monomial(gens):
        I = MonomialIdeal(ring, tuple(next(iter(f)) for f in gens))
        return [{m: ring.field.one} for m in I.power(n).generators]
    out = []
    seen = set()
    for combo in itertools.combinations_with_replacement(range(len(gens)), n):
        p = {ring.one_monomial: ring.field.one}
        for i in combo:
            p = poly_mul(ring.field, p, gens[i])
        key = tuple(sorted(p.items()))
        if p and key not in seen:
            seen.add(key)
            out.append(p)
    return out


def power_module(ring: Ring, I_gens, n: int, J=()) -> PresentedModule:
    """Presentation of I^n (S/J)."""
    if n < 1:
        raise ValueError("power must be at least 1")
    gens = ideal_power_generators(ring, I_gens, n)
    kind = "power-times-quotient" if _dicts(J) else "ideal-as-module"
    return present_subquotient(gens, J, ring, kind=kind)


@dataclass
class RegularityReport:
    resreg: tuple
    per_index: list
    d: tuple
    beg: tuple
    field: str
    route: str = "resolution"

    def as_json(self) -> dict:
        return {
            "resreg": [format_ainv(v) for v in self.resreg],
            "per_index": [[format_ainv(v) for v in row] for row in self.per_index],
            "d": [format_ainv(v) for v in self.d],
            "beg": [format_ainv(v) for v in self.beg],
            "field": self.field,
            "route": self.route,
        }


def regularity_report(module: PresentedModule, resolution=None) -> RegularityReport:
    res = resolution or resolve(module)
    betti = res.betti()
    k = module.ring.k
    per_index = []
    for i in sorted(betti.entries):
        per_index.append(tuple(max(a[l] for a in betti.entries[i]) - i for l in range(k)))
    stats = generator_stats(module)
    return RegularityReport(
        betti.res_reg(), per_index, stats["d"], stats["beg"], module.ring.field.describe()
    )


def _sequence_entry(args):
    ring, I_gens, n, J = args
    rep = regularity_report(power_module(ring, I_gens, n, J))
    return n, rep


def resreg_sequence(ring: Ring, I_gens, J, n_max: int, jobs: int = 1) -> list:
    """[(n, RegularityReport of I^n(S/J))] for n = 1..n_max."""
    if n_max < 2:
        raise ValueError("n_max must be at least 2")
    I_gens, J = _dicts(I_gens), _dicts(J)
    tasks = [(ring, I_gens, n, J) for n in range(1, n_max + 1)]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            out = list(pool.map(_sequence_entry, tasks))
    else:
        out = [_sequence_entry(t) for t in tasks]
    return sorted(out, key=lambda t: t[0])


@dataclass
class LinearFit:
    stabilized: bool
    slope: tuple | None = None
    intercept: tuple | None = None
    n_star: int | None = None
    reason: str = ""


def detect_linear(seq, window: int = 2, start: int = 1) -> LinearFit:
    """Longest tail of ``seq`` (values at n = start, start+1, ...) with constant differences.

    The tail must contain at least ``window`` differences.  A tail where the
    module vanishes (infinite entries) is reported as not stabilized.
    """
    seq = [tuple(v) for v in seq]
    if len(seq) < window + 1:
        raise ValueError("sequence shorter than window + 1")
    if any(not math.isfinite(x) for v in seq for x in v):
        return LinearFit(False, reason="the module I^nM vanishes for some n")
    diffs = [tuple(b - a for a, b in zip(u, v)) for u, v in zip(seq, seq[1:])]
    last = diffs[-1]
    t = len(diffs) - 1
    while t > 0 and diffs[t - 1] == last:
        t -= 1
    count = len(diffs) - t
    if count < window:
        return LinearFit(False, reason=f"only {count} equal trailing differences")
    n_star = start + t
    value = seq[t]
    intercept = tuple(int(x - n_star * a) for x, a in zip(value, last))
    return LinearFit(True, tuple(int(a) for a in last), intercept, n_star)


@dataclass
class ReductionCertificate:
    generators: list
    n0: int
    dJ: tuple
    rechecked: bool

    def as_json(self, ring: Ring) -> dict:
        return {
            "gens": [str(Polynomial(ring, g)) for g in self.generators],
            "n0": self.n0,
            "dJ": list(self.dJ),
            "stable_at_n0_plus_1": self.rechecked,
        }


def _ideal_span_equal(ring: Ring, A, B) -> bool:
    free = FreeModuleSpec(ring, [ring.zero_degree])
    return submodules_equal(free, [ideal_vector(f) for f in A], [ideal_vector(f) for f in B])


def _product(ring: Ring, A, B) -> list:
    return [poly_mul(ring.field, a, b) for a in A for b in B]


def is_reduction_at(ring: Ring, I_gens, sub, J, n0: int) -> bool:
    """I^{n0} M == sub * I^{n0-1} M inside S/J (two-sided normal forms)."""
    I_gens, sub, J = _dicts(I_gens), _dicts(sub), _dicts(J)
    big = ideal_power_generators(ring, I_gens, n0) + list(J)
    small = _product(ring, sub, ideal_power_generators(ring, I_gens, n0 - 1)) + list(J)
    return _ideal_span_equal(ring, big, small)


def _degree_vector(ring: Ring, gens) -> tuple:
    degs = [poly_degree(ring, g) for g in gens]
    return tuple(max(d[l] for d in degs) for l in range(ring.k))


def _check_subset(args):
    ring, I_gens, idx, J, n0_max = args
    sub = [I_gens[i] for i in idx]
    for n0 in range(1, n0_max + 1):
        if is_reduction_at(ring, I_gens, sub, J, n0):
            again = is_reduction_at(ring, I_gens, sub, J, n0 + 1)
            return ReductionCertificate(sub, n0, _degree_vector(ring, sub), again)
    return None


def find_reductions(ring: Ring, I_gens, J, max_subset: int = 3, n0_max: int = 8, jobs: int = 1) -> list:
    """Certificates for generator subsets that are M-reductions of I.

    Subsets drop at most ``max_subset`` generators (the full set included);
    each success records the least witnessing n0 and is rechecked at n0 + 1.
    """
    I_gens, J = _dicts(I_gens), _dicts(J)
    if _is_monomial(I_gens):
        I_gens = ideal_power_generators(ring, I_gens, 1)
    r = len(I_gens)
    subsets = []
    for drop in range(0, min(max_subset, r - 1) + 1):
        for removed in itertools.combinations(range(r), drop):
            subsets.append(tuple(i for i in range(r) if i not in removed))
    tasks = [(ring, I_gens, idx, J, n0_max) for idx in subsets]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_check_subset, tasks))
    else:
        results = [_check_subset(t) for t in tasks]
    return [c for c in results if c is not None]


def rho_upper(certs, k: int):
    if not certs:
        return None
    return tuple(min(c.dJ[l] for c in certs) for l in range(k))


@dataclass
class AsymptoticReport:
    ring: Ring
    sequence: list
    fit: LinearFit
    certificates: list = dc_field(default_factory=list)
    rho_upper: tuple | None = None
    d_I: tuple | None = None
    beg_M: tuple | None = None
    bounds: dict = dc_field(default_factory=dict)

    def as_json(self) -> dict:
        fit = self.fit
        return {
            "sequence": [
                {"n": n, "resreg": [format_ainv(v) for v in rep.resreg], "d": [format_ainv(v) for v in rep.d]}
                for n, rep in self.sequence
            ],
            "stabilized": fit.stabilized,
            "not_stabilized_reason": fit.reason or None,
            "slope": list(fit.slope) if fit.stabilized else None,
            "intercept": list(fit.intercept) if fit.stabilized else None,
            "n_star": fit.n_star,
            "certificates": [c.as_json(self.ring) for c in self.certificates],
            "rho_upper": list(self.rho_upper) if self.rho_upper is not None else None,
            "d_I": [format_ainv(v) for v in self.d_I] if self.d_I else None,
            "beg_M": [format_ainv(v) for v in self.beg_M] if self.beg_M else None,
            "bounds": self.bounds,
            "route": "resolution",
        }


def ideal_generator_degrees(ring: Ring, I_gens) -> tuple:
    """d(I): per-block maximum over the minimal generator degrees of I."""
    return generator_stats(present_subquotient(_dicts(I_gens), [], ring))["d"]


def verify_bounds(report: AsymptoticReport) -> dict:
    """The four slope / intercept checks; each entry has ``pass`` and witnesses."""
    fit = report.fit
    if not fit.stabilized:
        return {}
    a, b = fit.slope, fit.intercept
    k = len(a)
    dI, beg = report.d_I, report.beg_M
    out = {}
    bad = [l + 1 for l in range(k) if a[l] > dI[l]]
    out["slope_le_dI"] = {"pass": not bad, "violations": bad}
    bad = []
    for n, rep in report.sequence:
        if n < fit.n_star:
            continue
        for l in range(k):
            if rep.d[l] < n * a[l] + beg[l]:
                bad.append({"n": n, "block": l + 1, "d": format_ainv(rep.d[l]), "bound": n * a[l] + beg[l]})
    out["degree_lower_bound"] = {"pass": not bad, "violations": bad}
    bad = [l + 1 for l in range(k) if b[l] < beg[l]]
    out["intercept_ge_beg"] = {"pass": not bad, "violations": bad}
    rho = report.rho_upper
    bad = [l + 1 for l in range(k)] if rho is None else [l + 1 for l in range(k) if a[l] > rho[l]]
    out["slope_le_rho_upper"] = {"pass": not bad, "violations": bad}
    return out


def analyze(ring: Ring, I_gens, J, config: AsymptoticsConfig = AsymptoticsConfig(), reductions: bool = True) -> AsymptoticReport:
    """Full sweep: sequence, fit, certificates and bound checks."""
    I_gens, J = _dicts(I_gens), _dicts(J)
    seq = resreg_sequence(ring, I_gens, J, config.n_max, config.jobs)
    fit = detect_linear([rep.resreg for _, rep in seq], config.window)
    report = AsymptoticReport(ring, seq, fit)
    report.d_I = ideal_generator_degrees(ring, I_gens)
    report.beg_M = generator_stats(quotient_module(ring, J))["beg"]
    if reductions:
        report.certificates = find_reductions(ring, I_gens, J, config.max_subset, config.n0_max, config.jobs)
        report.rho_upper = rho_upper(report.certificates, ring.k)
    report.bounds = verify_bounds(report)
    return report
