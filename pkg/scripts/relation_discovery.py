"""Solve for the weight-2(N+1) relation at each level and compare with the printed one.

Also shows how many q-coefficients the solve needs before the solution is unique,
against the Sturm bound that makes a verified relation an identity.
"""

import argparse

from eisenzeros.graded import (PRINTED_RELATIONS, NotUnique, discover_relation, relation_unknowns,
                               sturm_order, verify_relation)
from eisenzeros.qseries import SUPPORTED_LEVELS


def min_unique_order(N: int) -> int:
    order = 0
    while True:
        try:
            discover_relation(N, order)
            return order
        except NotUnique:
            order += 1


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--check-to", type=int, default=200, help="verify discovered relations to this order")
    args = ap.parse_args()
    for N in SUPPORTED_LEVELS:
        rel = discover_relation(N)
        print(f"level {N}: {len(relation_unknowns(N))} unknowns, unique from order {min_unique_order(N)}, "
              f"Sturm bound {sturm_order(N)}")
        print(f"  {rel.nonzero()}")
        print(f"  discovered relation to q^{args.check_to}: {verify_relation(rel, args.check_to).describe()}")
        printed = verify_relation(PRINTED_RELATIONS[N], sturm_order(N) + 20)
        print(f"  printed relation: {printed.describe()}")
        for power, mono, ours, theirs in rel.differences(PRINTED_RELATIONS[N]):
            print(f"    Et^{power}*{mono}: discovered {ours}, printed {theirs}")


if __name__ == "__main__":
    main()
