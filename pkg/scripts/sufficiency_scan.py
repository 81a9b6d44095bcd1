#!/usr/bin/env python3
"""Does the adjacent-product condition imply Jacobi for cyclic Milnor data?

Necessity is a theorem; sufficiency is open.  This scans every datum with
entries in {0, 1} and a random sample with small rational entries, and
prints any datum that passes the adjacent test but breaks Jacobi.
"""
import argparse
import random
from fractions import Fraction

from milnorframes import algebra as alg
from milnorframes.milnor import MilnorData, adjacent_product_check, all_binary, build_cyclic


def verdicts(d: MilnorData) -> tuple[bool, bool]:
    return not adjacent_product_check(d), not alg.jacobi_defect(build_cyclic(d))


def random_data(rng: random.Random, n: int, count: int):
    values = [Fraction(p, q) for p in range(-2, 3) for q in (1, 2)]
    for _ in range(count):
        # sparse draws: dense data almost never pass the adjacent test
        yield MilnorData(tuple(rng.choice(values) if rng.random() < 0.4 else 0 for _ in range(n)))


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-n", type=int, default=8)
    ap.add_argument("--random", type=int, default=2000, help="random draws per n")
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    rng = random.Random(args.seed)
    for n in range(4, args.max_n + 1):
        seen = passed = broken = 0
        for source in (all_binary(n), random_data(rng, n, args.random)):
            for d in source:
                adjacent, jacobi = verdicts(d)
                seen += 1
                passed += adjacent
                if adjacent and not jacobi:
                    broken += 1
                    print(f"  counterexample n={n}: {[str(x) for x in d.lambdas]}")
                assert jacobi <= adjacent, f"necessity fails on {d.lambdas}"
        print(f"n={n}: {seen} data, {passed} pass the adjacent test, {broken} of those break Jacobi")


if __name__ == "__main__":
    main()
