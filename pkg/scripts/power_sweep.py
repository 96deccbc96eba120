"""Sweep res-reg(I^n M) over random monomial instances and check the asymptotic bounds."""

from __future__ import annotations

import argparse
import json
from collections import Counter

from mgreg.asymptotics import AsymptoticsConfig, analyze
from mgreg.instances import random_power_instance


def main() -> int:
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--count", type=int, default=50)
    p.add_argument("--start", type=int, default=0, help="first seed")
    p.add_argument("--n-max", type=int, default=6)
    p.add_argument("--window", type=int, default=2)
    p.add_argument("--max-vars", type=int, default=3)
    p.add_argument("--allow-vanishing", action="store_true", help="keep draws where I^n M is eventually zero")
    p.add_argument("--verbose", action="store_true", help="print one JSON line per instance")
    args = p.parse_args()
    cfg = AsymptoticsConfig(n_max=args.n_max, window=args.window)
    reasons = Counter()
    violations = 0
    for seed in range(args.start, args.start + args.count):
        inst = random_power_instance(seed, max_vars=args.max_vars, allow_vanishing=args.allow_vanishing)
        rep = analyze(inst.ring, [{m: 1} for m in inst.I], [{m: 1} for m in inst.J], cfg)
        failed = [k for k, v in rep.bounds.items() if not v["pass"]]
        if not rep.fit.stabilized:
            reasons[rep.fit.reason] += 1
        violations += bool(failed)
        if args.verbose or failed:
            print(json.dumps({"instance": inst.describe(), "failed": failed, **rep.as_json()}, sort_keys=True))
    print(f"{args.count} instances, {sum(reasons.values())} not stabilized, {violations} with violated bounds")
    for reason, n in reasons.most_common():
        print(f"  not stabilized ({n}): {reason}")
    return 1 if violations else 0


if __name__ == "__main__":
    raise SystemExit(main())
