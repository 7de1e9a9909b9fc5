"""Check every triangle identity and naturality square on seeded random instances.

    python demos/random_law_suite.py [SEED] [COUNT]

Failing reports are printed in full together with the command that replays
the instance alone.
"""
import sys
import time

import numpy as np

from tenselat.adjunctions import instance_reports
from tenselat.random_instances import random_instances


def main(seed=7, count=20):
    t0 = time.perf_counter()
    insts, rejected = random_instances(seed, count)
    print(f"drew {len(insts)} instances ({len(rejected)} rejected by the size budget)")
    failures = 0
    for inst in insts:
        reports = instance_reports(inst, rng=np.random.default_rng([seed, inst.index]))
        bad = [r for r in reports if not r.passed]
        print(f"  {inst.describe()}: {'ok' if not bad else f'{len(bad)} failing'}")
        for r in bad:
            failures += 1
            print(r.render())
            print(f"  replay: tenselat check laws --random {seed} {count} --only {inst.index}")
    print(f"{failures} failing report(s) in {time.perf_counter() - t0:.1f}s")
    return failures


if __name__ == "__main__":
    args = [int(a) for a in sys.argv[1:3]]
    sys.exit(1 if main(*args) else 0)
