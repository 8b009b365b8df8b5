"""Run the property sweeps from the command line.

    python scripts/run_sweeps.py                 # every sweep, default sizes
    python scripts/run_sweeps.py truth oracle --max-size 8
    python scripts/run_sweeps.py fuzz --count 5000 --seed 3

Prints one summary line per sweep and exits 1 if any sweep has failures.
Failing cases (at most five per sweep) are printed below the summary.
"""

import argparse
import sys
from dataclasses import replace

from s5kit.sweeps import (
    CodingSweep,
    CompletenessSweep,
    DerivationFuzz,
    LindenbaumSweep,
    OracleCrossCheck,
    TruthLemmaSweep,
)

SWEEPS = ["truth", "oracle", "completeness", "fuzz", "lindenbaum", "coding"]


def _override(cfg, **kw):
    return replace(cfg, **{k: v for k, v in kw.items() if v is not None and hasattr(cfg, k)})


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("sweeps", nargs="*", metavar="SWEEP", help=f"any of {', '.join(SWEEPS)} (default: all)")
    ap.add_argument("--max-atoms", type=int)
    ap.add_argument("--max-size", type=int)
    ap.add_argument("--count", type=int, help="derivations for the fuzz sweep")
    ap.add_argument("--random-count", type=int, help="random seeds for truth/lindenbaum")
    ap.add_argument("--seed", type=int)
    args = ap.parse_args(argv)
    unknown = [s for s in args.sweeps if s not in SWEEPS]
    if unknown:
        ap.error(f"unknown sweep {unknown[0]!r}")
    chosen = args.sweeps or SWEEPS
    kw = dict(max_atoms=args.max_atoms, max_size=args.max_size, count=args.count,
              random_count=args.random_count, seed=args.seed)

    results = []
    for name in chosen:
        if name == "truth":
            results.append(_override(TruthLemmaSweep(), **kw).run())
        elif name == "oracle":
            results.append(_override(OracleCrossCheck(), **kw).run())
        elif name == "completeness":
            results.append(_override(CompletenessSweep(), **kw).run())
        elif name == "fuzz":
            fuzz = _override(DerivationFuzz(), **kw)
            results += [fuzz.run_soundness(), fuzz.run_deduction()]
        elif name == "lindenbaum":
            results.append(_override(LindenbaumSweep(), **kw).run())
        elif name == "coding":
            results.append(_override(CodingSweep(), **kw).run())

    for r in results:
        print(r.summary())
        for f in r.failures[:5]:
            print("   ", f)
    return 0 if all(r.ok for r in results) else 1


if __name__ == "__main__":
    sys.exit(main())
