#!/usr/bin/env python3
"""Compare the closed-form nilsoliton rules with the exact linear solve.

For random rational Milnor data with an orthonormal Milnor frame, print how
often the per-block rule (balanced h4 blocks only) and the full rule (balanced
blocks and one common |lambda|) agree with Ric in R I + Der.
"""
import argparse
import random
from fractions import Fraction

from milnorframes import algebra as alg
from milnorframes.milnor import GeneralThreeDimensional, MilnorData, build_cyclic, decompose
from milnorframes.soliton import h4_blocks_balanced, milnor_ricci, milnor_soliton_criterion, nilsoliton_solve


def draw(rng: random.Random, n: int) -> MilnorData:
    values = [Fraction(p, q) for p in (1, 2, 3) for q in (1, 2)]
    return MilnorData(tuple(rng.choice(values) if rng.random() < 0.5 else 0 for _ in range(n)))


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--draws", type=int, default=400)
    ap.add_argument("--max-n", type=int, default=7)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    rng = random.Random(args.seed)
    checked = block_wrong = full_wrong = 0
    first = None
    while checked < args.draws:
        d = draw(rng, rng.randint(4, args.max_n))
        g = build_cyclic(d)
        if alg.jacobi_defect(g):
            continue
        try:
            decompose(d)
        except GeneralThreeDimensional:
            continue
        checked += 1
        truth = nilsoliton_solve(milnor_ricci(d), g).is_soliton
        if h4_blocks_balanced(d) != truth:
            block_wrong += 1
            first = first or d
        full_wrong += milnor_soliton_criterion(d) != truth
    print(f"{checked} Jacobi-valid data")
    print(f"per-block rule wrong: {block_wrong}")
    print(f"full rule wrong:      {full_wrong}")
    if first is not None:
        print(f"first per-block failure: {[str(x) for x in first.lambdas]}")


if __name__ == "__main__":
    main()
