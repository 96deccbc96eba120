"""Command line interface: ``python3 -m mgreg <command> --input FILE``.

Exit codes: 0 on success (a not-stabilized sweep is a success), 2 for bad
input, 3 when an internal invariant fails.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys

from . import __version__
from .asymptotics import AsymptoticsConfig, analyze, find_reductions, regularity_report, rho_upper
from .errors import MgregError, UserError
from .filter_regular import format_ainv, is_filter_regular, res_reg_via_colon
from .koszul import koszul_tor_oracle
from .problem import Problem, ProblemError, RunConfig, load_problem, parse_sequence, polys_as_dicts
from .resolution import check_resolution, resolve

SCHEMA = 1
COMMANDS = ("resolve", "tor-oracle", "filter", "colon-reg", "asympt", "reductions")


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="mgreg", description="Multigraded resolution regularity of modules.")
    p.add_argument("--version", action="version", version=f"mgreg {__version__}")
    sub = p.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        c = sub.add_parser(name)
        c.add_argument("--input", required=True, help="problem file (JSON)")
        c.add_argument("--json", action="store_true", help="emit JSON instead of text")
        c.add_argument("--field", help="override the field: q or fp:P")
        c.add_argument("--seed", type=int, help="master seed")
        c.add_argument("--n-max", dest="n_max", type=int)
        c.add_argument("--window", type=int)
        c.add_argument("--n0-max", dest="n0_max", type=int)
        c.add_argument("--max-subset", dest="max_subset", type=int)
        c.add_argument("--jobs", type=int)
        if name in ("filter", "colon-reg"):
            c.add_argument("--l", dest="block", type=int, help="coordinate (1-based); all when omitted")
        if name == "filter":
            c.add_argument("--seq", help="comma separated sequence, e.g. 'x,z'")
    return p


def _blocks(problem: Problem, block) -> list:
    k = problem.ring.k
    if block is None:
        block = problem.task.get("l")
    if block is None:
        return list(range(k))
    if not isinstance(block, int) or not 1 <= block <= k:
        raise ProblemError("l", f"expected an integer in 1..{k}")
    return [block - 1]


def _ainv_list(values) -> list:
    return [format_ainv(v) for v in values]


def cmd_resolve(problem: Problem, cfg: RunConfig) -> dict:
    module = problem.module()
    res = resolve(module)
    problems = check_resolution(res)
    if problems:
        raise AssertionError("; ".join(problems))
    report = regularity_report(module, res)
    out = report.as_json()
    out["betti"] = res.betti().as_json()
    out["length"] = res.length
    out["minimal"] = res.minimal
    return out


def cmd_tor_oracle(problem: Problem, cfg: RunConfig) -> dict:
    module = problem.module()
    box = problem.task.get("box")
    if box is not None and (not isinstance(box, list) or len(box) != problem.ring.nvars):
        raise ProblemError("task.box", f"expected a list of {problem.ring.nvars} exponents")
    betti = koszul_tor_oracle(module, box, jobs=cfg.jobs)
    return {"betti": betti.as_json(), "resreg": _ainv_list(betti.res_reg()), "route": "koszul"}


def cmd_filter(problem: Problem, cfg: RunConfig, seq_text, block) -> dict:
    seq_text = seq_text if seq_text is not None else problem.task.get("sequence")
    if seq_text is None:
        raise ProblemError("sequence", "give --seq or task.sequence")
    seq = parse_sequence(problem.ring, seq_text)
    module = problem.module()
    reports = []
    for l in _blocks(problem, block):
        rep = is_filter_regular(polys_as_dicts(seq), module, l)
        reports.append(rep.as_json())
    return {"sequence": [str(f) for f in seq], "reports": reports}


def cmd_colon_reg(problem: Problem, cfg: RunConfig, block) -> dict:
    module = problem.module()
    always = bool(problem.task.get("always_change", False))
    reports = [res_reg_via_colon(module, l, cfg.seed, always_change=always).as_json()
               for l in _blocks(problem, block)]
    return {"reports": reports}


def _asympt_config(cfg: RunConfig) -> AsymptoticsConfig:
    if cfg.n_max < cfg.window + 1 or cfg.n_max < 2:
        raise ProblemError("n_max", f"must be at least max(2, window + 1) = {max(2, cfg.window + 1)}")
    return AsymptoticsConfig(cfg.n_max, cfg.window, cfg.n0_max, cfg.max_subset, cfg.jobs)


def _require_ideal(problem: Problem):
    if not problem.ideal:
        raise ProblemError("ideal", "required for this command")


def cmd_asympt(problem: Problem, cfg: RunConfig) -> dict:
    _require_ideal(problem)
    report = analyze(problem.ring, problem.ideal, problem.relations, _asympt_config(cfg))
    return report.as_json()


def cmd_reductions(problem: Problem, cfg: RunConfig) -> dict:
    _require_ideal(problem)
    certs = find_reductions(problem.ring, problem.ideal, problem.relations, cfg.max_subset, cfg.n0_max, cfg.jobs)
    rho = rho_upper(certs, problem.ring.k)
    return {
        "certificates": [c.as_json(problem.ring) for c in certs],
        "rho_upper": list(rho) if rho is not None else None,
    }


def run(args) -> dict:
    overrides = {k: getattr(args, k, None) for k in ("field", "seed", "n_max", "window", "n0_max", "max_subset", "jobs")}
    problem = load_problem(args.input, args.field)
    cfg = RunConfig().merged(problem.task, overrides)
    if cfg.jobs < 1:
        raise ProblemError("jobs", "must be positive")
    cmd = args.command
    if cmd == "resolve":
        result = cmd_resolve(problem, cfg)
    elif cmd == "tor-oracle":
        result = cmd_tor_oracle(problem, cfg)
    elif cmd == "filter":
        result = cmd_filter(problem, cfg, args.seq, args.block)
    elif cmd == "colon-reg":
        result = cmd_colon_reg(problem, cfg, args.block)
    elif cmd == "asympt":
        result = cmd_asympt(problem, cfg)
    else:
        result = cmd_reductions(problem, cfg)
    return {
        "schema": SCHEMA,
        "tool": "mgreg",
        "version": __version__,
        "command": cmd,
        "field": problem.ring.field.describe(),
        "seed": cfg.seed,
        "problem": problem.describe(),
        "result": result,
    }


def dumps(doc: dict) -> str:
    return json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def _text_lines(value, prefix="") -> list:
    if isinstance(value, dict):
        lines = []
        for k in sorted(value):
            lines.extend(_text_lines(value[k], f"{prefix}{k}."))
        return lines
    if isinstance(value, list) and value and all(isinstance(v, dict) for v in value):
        lines = []
        for i, v in enumerate(value):
            lines.extend(_text_lines(v, f"{prefix}{i}."))
        return lines
    return [f"{prefix[:-1]:<40} {json.dumps(value)}"]


def render_text(doc: dict) -> str:
    """Fixed-width text: a Betti table for resolve-like results, key/value lines otherwise."""
    result = doc["result"]
    head = [f"mgreg {doc['version']}  command={doc['command']}  field={doc['field']}  seed={doc['seed']}"]
    body = []
    if "betti" in result:
        body.append(format_betti(result["betti"]))
        body.append(f"res-reg ({result['route']}): {tuple(result['resreg'])}")
        rest = {k: v for k, v in result.items() if k not in ("betti", "resreg", "route")}
        body.extend(_text_lines(rest))
    else:
        body.extend(_text_lines(result))
    return "\n".join(head + body) + "\n"


def format_betti(betti_json) -> str:
    """One column per homological degree, each listing its shifts."""
    cols = [[f"F_{e['i']}"] + [str(tuple(s)) for s in e["shifts"]] for e in betti_json]
    if not cols:
        return "(zero module: empty resolution)"
    width = max(len(x) for c in cols for x in c) + 2
    height = max(len(c) for c in cols)
    lines = []
    for r in range(height):
        lines.append("".join((c[r] if r < len(c) else "").ljust(width) for c in cols).rstrip())
    return "\n".join(lines)


def main(argv=None) -> int:
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s: %(message)s")
    args = build_parser().parse_args(argv)
    try:
        doc = run(args)
    except UserError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (MgregError, AssertionError) as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return 3
    sys.stdout.write(dumps(doc) if args.json else render_text(doc))
    return 0


if __name__ == "__main__":
    sys.exit(main())
