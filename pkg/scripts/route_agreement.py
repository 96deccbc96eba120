"""Compare res-reg from the resolution, the Koszul oracle and colon quotients on random instances."""

from __future__ import annotations

import argparse
import json
import time

from mgreg.filter_regular import format_ainv, res_reg_via_colon
from mgreg.instances import InstanceConfig, random_instance
from mgreg.koszul import koszul_tor_oracle
from mgreg.resolution import check_resolution, resolve


def main() -> int:
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--count", type=int, default=200)
    p.add_argument("--start", type=int, default=0, help="first seed")
    p.add_argument("--max-vars", type=int, default=4)
    p.add_argument("--max-gens", type=int, default=6)
    p.add_argument("--max-exp", type=int, default=3)
    p.add_argument("--field", default="fp:32003")
    args = p.parse_args()
    cfg = InstanceConfig(max_vars=args.max_vars, max_gens=args.max_gens, max_exp=args.max_exp, field=args.field)
    start = time.perf_counter()
    bad = 0
    for seed in range(args.start, args.start + args.count):
        inst = random_instance(seed, cfg)
        M = inst.module()
        res = resolve(M)
        routes = {
            "resolution": res.res_reg(),
            "koszul": koszul_tor_oracle(M).res_reg(),
            "colon": tuple(res_reg_via_colon(M, l, seed).value for l in range(M.ring.k)),
        }
        problems = check_resolution(res)
        if len(set(routes.values())) != 1 or problems:
            bad += 1
            print(json.dumps({"instance": inst.describe(), "problems": problems,
                              **{k: [format_ainv(x) for x in v] for k, v in routes.items()}}))
    print(f"{args.count} instances, {bad} disagreements, {time.perf_counter() - start:.1f}s")
    return 1 if bad else 0


if __name__ == "__main__":
    raise SystemExit(main())
