"""Random restrictions collapse low-degree sign functions to constants.

Fix every coordinate independently to a random sign, keeping it free
with a small probability r.  For a degree-d polynomial threshold
function, the restricted function is then close to constant except with
probability that shrinks with r.  This script measures that failure
probability for a few families and contrasts the dictator (where the
failure rate is exactly the chance x1 stays free) with majority, where
the collapse is much faster.
"""

import warnings

from boolsurf import (Restriction, TruthTable, closeness_to_constant,
                      generate, restrict_poly, restrict_table,
                      restriction_failure_prob, sample_restriction,
                      sign_table)


def main():
    print("restriction collapse")
    print("=" * 60)

    rho = sample_restriction(10, rate=0.25, seed=3)
    print(f"a sampled restriction on 10 coordinates: {rho!r}")
    print(f"  free coordinates: {rho.free_indices().tolist()}")

    p = generate("majority", 5)
    rho = Restriction.from_string("***++")
    q = restrict_poly(p, rho)
    print("\nmajority of 5 with x4 = x5 = +1 becomes sgn(y1 + y2 + y3 + 2):")
    print(f"  restricted terms: { {m: c for m, c in sorted(q.terms.items())} }")
    table = restrict_table(sign_table(p)[0], rho)
    dist, sign = closeness_to_constant(table)
    print(f"  distance to the constant {sign:+d}: {dist} "
          "(only the all-minus completion dissents)")

    print("\nfailure probability Pr[restricted sign stays 1/16-far from constant]")
    print("(20000 restrictions per cell, seed 0)")
    grid = [0.25, 0.0625, 0.015625]
    print(f"  {'family':<16}" + "".join(f" r={r:<9}" for r in grid))
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")  # r = 1/4 is deliberately out of regime
        for name, poly in [("dictator", generate("parity", 16, subset=1)),
                           ("majority 16", generate("majority", 16)),
                           ("random d=2 n=14", generate("random", 14, degree=2, seed=2))]:
            cells = []
            for rate in grid:
                out = restriction_failure_prob(poly, rate, delta=0.0625,
                                               trials=20_000, seed=0)
                cells.append(f" {out.estimate:<10.4f}")
            print(f"  {name:<16}" + "".join(cells))

    print("\nthe dictator row tracks r itself: the restriction fails exactly")
    print("when x1 stays free.  Majority and the random PTF collapse faster")
    print("as r drops, which is the engine behind the surface-area bounds.")


if __name__ == "__main__":
    main()
