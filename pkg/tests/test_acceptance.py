"""Acceptance suite: one PASS/FAIL line per criterion, printed at the end of the run."""

import json
import os
import subprocess
import sys
import time
from pathlib import Path

import pytest

from mgreg.asymptotics import AsymptoticsConfig, analyze, power_module
from mgreg.errors import ImproperSequenceError
from mgreg.filter_regular import a_invariant, bfa, block_sequence, is_filter_regular, res_reg_via_colon
from mgreg.instances import random_instance, random_power_instance
from mgreg.koszul import koszul_tor_oracle
from mgreg.resolution import check_resolution, generator_stats, resolve
from mgreg.ring import Ring

from conftest import make_three_block_quotient, make_two_block_ideal

PROBLEMS = Path(__file__).resolve().parent.parent / "problems"
INF = float("inf")

RESULTS = {}
CHECKED_RESOLUTIONS = []  # (label, Resolution) from criteria 1-4


def record(n, ok, detail):
    RESULTS[n] = (ok, detail)
    return ok


TWO_BLOCK_BETTI = [
    [(0, 2), (1, 1), (1, 1), (2, 0)],
    [(1, 2), (1, 3), (2, 1), (2, 2), (2, 2), (3, 1)],
    [(2, 3), (2, 3), (3, 2), (3, 2)],
    [(3, 3)],
]


def test_criterion_1_two_block_ideal():
    t = time.perf_counter()
    res = resolve(make_two_block_ideal())
    elapsed = time.perf_counter() - t
    CHECKED_RESOLUTIONS.append(("two-block ideal", res))
    betti = [res.betti().degrees(i) for i in range(res.length + 1)]
    problems = []
    if betti != TWO_BLOCK_BETTI:
        problems.append(f"betti {betti}")
    if res.res_reg() != (2, 2):
        problems.append(f"res-reg {res.res_reg()}")
    if elapsed >= 5:
        problems.append(f"runtime {elapsed:.2f}s >= 5s")
    record(1, not problems, "; ".join(problems) or f"Betti table exact, res-reg (2, 2), {elapsed:.2f}s")
    assert not problems, problems


def test_criterion_2_three_block_quotient():
    t = time.perf_counter()
    M = make_three_block_quotient()
    R = M.ring
    x, y, z = (R.parse(v).terms for v in "xyz")
    problems = []
    a = [a_invariant(M, l) for l in range(3)]
    if a != [INF, 2, INF]:
        problems.append(f"a-invariants {a}")
    reps = [is_filter_regular([y], M, l) for l in range(3)]
    if [r.regular for r in reps] != [False, True, False] or reps[1].values != [2]:
        problems.append("<y> filter-regularity")
    b = [bfa([x, z], M, l) for l in range(3)]
    if b != [1, 2, 1]:
        problems.append(f"bfa {b}")
    if generator_stats(M)["d"] != (0, 0, 0):
        problems.append("d")
    res = resolve(M)
    CHECKED_RESOLUTIONS.append(("three-block quotient", res))
    if res.res_reg() != (1, 2, 1):
        problems.append(f"resolution res-reg {res.res_reg()}")
    for seed in range(5):
        got = tuple(res_reg_via_colon(M, l, seed, always_change=True).value for l in range(3))
        if got != (1, 2, 1):
            problems.append(f"colon res-reg {got} at seed {seed}")
    elapsed = time.perf_counter() - t
    if elapsed >= 10:
        problems.append(f"runtime {elapsed:.2f}s >= 10s")
    record(2, not problems, "; ".join(problems) or f"all values match, both routes (1, 2, 1), {elapsed:.2f}s")
    assert not problems, problems


POWER_EXPECTED = {1: (1, 1, 1), 2: (2, 2, 2), 3: (1, 3, 3), 4: (1, 4, 4), 5: (1, 5, 5)}


def test_criterion_3_power_asymptotics():
    t = time.perf_counter()
    R = Ring((("a",), ("b",), ("c",)))
    I = [R.parse(v) for v in ("a", "b", "c")]
    J = [R.parse(v) for v in ("a^3", "a^2*b", "a^2*c", "a*b*c")]
    rep = analyze(R, I, J, AsymptoticsConfig(n_max=5, window=2))
    for n in range(1, 6):
        CHECKED_RESOLUTIONS.append((f"power n={n}", resolve(power_module(R, I, n, J))))
    problems = []
    for n, r in rep.sequence:
        if r.resreg != POWER_EXPECTED[n]:
            oracle = koszul_tor_oracle(power_module(R, I, n, J)).res_reg()
            problems.append(f"n={n}: res-reg {r.resreg} (Koszul oracle {oracle}), expected {POWER_EXPECTED[n]}")
    fit = rep.fit
    if (fit.slope, fit.intercept, fit.n_star) != ((0, 1, 1), (1, 0, 0), 3):
        problems.append(f"fit {fit}")
    certs = {tuple(sorted(R.format_monomial(next(iter(g))) for g in c.generators)): c for c in rep.certificates}
    if ("b", "c") not in certs or certs[("b", "c")].dJ != (0, 1, 1):
        problems.append("no certificate for (b, c) with dJ (0, 1, 1)")
    if rep.beg_M != (0, 0, 0) or len(rep.bounds) != 4 or not all(v["pass"] for v in rep.bounds.values()):
        problems.append(f"bounds {rep.bounds}")
    elapsed = time.perf_counter() - t
    if elapsed >= 60:
        problems.append(f"runtime {elapsed:.2f}s >= 60s")
    record(3, not problems, "; ".join(problems) or f"sequence, fit, certificate and bounds match, {elapsed:.2f}s")
    assert not problems, problems


@pytest.fixture(scope="module")
def route_suite():
    t = time.perf_counter()
    rows = []
    for seed in range(200):
        inst = random_instance(seed)
        M = inst.module()
        res = resolve(M)
        koszul = koszul_tor_oracle(M).res_reg()
        colon = tuple(res_reg_via_colon(M, l, seed).value for l in range(M.ring.k))
        rows.append((inst, M, res, koszul, colon))
    return rows, time.perf_counter() - t


def test_criterion_4_route_agreement(route_suite):
    rows, elapsed = route_suite
    mismatches = [inst.describe() for inst, _, res, kz, cl in rows if not res.res_reg() == kz == cl]
    CHECKED_RESOLUTIONS.extend((f"random seed {inst.seed}", res) for inst, _, res, _, _ in rows)
    ok = not mismatches and elapsed < 600
    record(4, ok, f"{len(rows)} instances, {len(mismatches)} mismatches, {elapsed:.1f}s")
    assert ok, mismatches[:5]


def test_criterion_5_resolution_invariants(route_suite):
    assert len(CHECKED_RESOLUTIONS) >= 200, "criteria 1-4 must run first"
    failures = []
    for label, res in CHECKED_RESOLUTIONS:
        problems = check_resolution(res)
        if not res.minimal:
            problems.append("not minimalized")
        if problems:
            failures.append((label, problems))
    record(5, not failures, f"{len(CHECKED_RESOLUTIONS)} resolutions, {len(failures)} failures")
    assert not failures, failures[:5]


def test_criterion_6_filter_regular_equality(route_suite):
    rows, _ = route_suite
    modules = [make_three_block_quotient(), make_two_block_ideal()] + [M for _, M, _, _, _ in rows]
    checked, mismatches = 0, []
    for M in modules:
        reg = resolve(M).res_reg()
        d = generator_stats(M)["d"]
        for l in range(M.ring.k):
            try:
                rep = is_filter_regular(block_sequence(M.ring, l), M, l)
            except ImproperSequenceError:
                continue
            if not rep.regular:
                continue
            checked += 1
            if max(rep.bfa, d[l]) != reg[l]:
                mismatches.append((l, rep.bfa, d[l], reg[l]))
    record(6, not mismatches and checked > 0, f"{checked} (instance, block) pairs checked, {len(mismatches)} mismatches")
    assert not mismatches and checked > 0, mismatches[:5]


def test_criterion_7_bounds():
    t = time.perf_counter()
    stabilized, excluded, violations = 0, [], []
    for seed in range(50):
        inst = random_power_instance(seed)
        rep = analyze(inst.ring, [{m: 1} for m in inst.I], [{m: 1} for m in inst.J],
                      AsymptoticsConfig(n_max=6, window=2))
        if not rep.fit.stabilized:
            excluded.append((seed, rep.fit.reason))
            continue
        stabilized += 1
        bad = [name for name, v in rep.bounds.items() if not v["pass"]]
        if bad or len(rep.bounds) != 4:
            violations.append((inst.describe(), bad))
    elapsed = time.perf_counter() - t
    record(7, not violations,
           f"{stabilized} stabilized, {len(excluded)} not stabilized (excluded), {len(violations)} violations, {elapsed:.1f}s")
    assert not violations, violations[:5]


DETERMINISM_RUNS = [
    ("resolve", "two_block_ideal.json"),
    ("tor-oracle", "two_block_ideal.json"),
    ("resolve", "three_block_quotient.json"),
    ("filter", "three_block_quotient.json"),
    ("colon-reg", "three_block_quotient.json"),
    ("asympt", "power_asymptotics.json"),
    ("reductions", "power_asymptotics.json"),
]


def _cli_json(cmd, name, hashseed):
    env = dict(os.environ, PYTHONHASHSEED=str(hashseed))
    proc = subprocess.run([sys.executable, "-m", "mgreg", cmd, "--input", str(PROBLEMS / name), "--json",
                           "--seed", "7"], capture_output=True, env=env, check=True)
    return proc.stdout


def test_criterion_8_determinism():
    differing = []
    for cmd, name in DETERMINISM_RUNS:
        outs = {_cli_json(cmd, name, h) for h in (0, 1, 2)}
        json.loads(next(iter(outs)))
        if len(outs) != 1:
            differing.append(f"{cmd} {name}")
    record(8, not differing, f"{len(DETERMINISM_RUNS)} runs x 3 hash seeds, differing: {differing or 'none'}")
    assert not differing, differing
