#!/usr/bin/env python3
"""Demo: a step-budgeted universal interpreter as a partial applicative poset.

Codes 0 and 1 are the two primitive combinators; code 2 + pair(x, y) applies
code x to code y, where pair is the Cantor pairing.  Application decodes both
arguments, normalizes within the step budget, and re-encodes when the normal
form fits under the carrier bound.  The resulting table is an honest partial
applicative structure on an initial segment of the naturals, but the witness
search is expected to fail at small budgets: the demo reports that failure
instead of hiding it, and it is excluded from the acceptance battery.
"""

import argparse

from arrowlab.pca import bounded_k1, identity_program_index


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--carrier", type=int, default=64, help="largest code in the table")
    ap.add_argument("--budget", type=int, default=80, help="reduction steps per cell")
    ns = ap.parse_args()

    pap, verdict = bounded_k1(ns.carrier, ns.budget)
    idx = identity_program_index()
    print(f"carrier 0..{ns.carrier}, budget {ns.budget} steps")
    print(f"identity program lives at code {idx}")
    for n in (0, 1, 2, 5, 11, ns.carrier):
        print(f"  {idx} . {n} = {pap.app[idx][n] if idx <= ns.carrier else 'out of carrier'}")

    total = (ns.carrier + 1) ** 2
    defined = sum(v is not None for row in pap.app for v in row)
    print(f"defined cells: {defined}/{total} ({100 * defined / total:.1f}%)")
    print(verdict.line())


if __name__ == "__main__":
    main()
