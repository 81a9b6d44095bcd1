#!/usr/bin/env python3
"""How many metrics on h4 admit an orthonormal Milnor frame?

Draws random rational inner products and reports the share with b = 0,
first unrestricted and then restricted to metrics isometric to a diagonal one
through an automorphism.  Every decision is exact.
"""
import argparse
import random
from fractions import Fraction

from milnorframes import algebra as alg
from milnorframes import frames as fr
from milnorframes import linalg as la
from milnorframes.geometry import InnerProduct, MetricLieAlgebra
from milnorframes.milnor import h4


def rand_q(rng: random.Random, positive: bool = False) -> Fraction:
    lo = 1 if positive else -5
    return Fraction(rng.randint(lo, 5), rng.randint(1, 4))


def rand_spd(rng: random.Random, n: int = 4):
    a = la.mat([[rand_q(rng) if j < i else (rand_q(rng, True) if j == i else 0) for j in range(n)]
                for i in range(n)])
    return la.matmul(a, la.transpose(a))


def rand_automorphism(rng: random.Random, g):
    s, u = rand_q(rng, True), rand_q(rng, True)
    # X1 -> s X1, X2 -> u X2 fixes the constants after X3 -> s u X3, X4 -> s u^2 X4
    d = la.diag([s, u, s * u, s * u * u])
    ad = alg.ad_of(g, (rand_q(rng), 0, rand_q(rng), rand_q(rng)))
    inner = la.mat_add(la.mat_add(la.identity(4), ad), la.mat_scale(Fraction(1, 2), la.matmul(ad, ad)))
    return la.matmul(d, inner)


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--draws", type=int, default=300)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    rng = random.Random(args.seed)
    g = h4()
    hits = sum(fr.h4_has_orthonormal_milnor(MetricLieAlgebra(g, InnerProduct(rand_spd(rng))))
               for _ in range(args.draws))
    print(f"random metrics: {hits}/{args.draws} have b = 0")
    hits = 0
    for _ in range(args.draws):
        t = rand_automorphism(rng, g)
        assert alg.is_automorphism(g, t)
        diag = la.diag([rand_q(rng, True) for _ in range(4)])
        gram = la.matmul(la.transpose(t), la.matmul(diag, t))
        hits += fr.h4_has_orthonormal_milnor(MetricLieAlgebra(g, InnerProduct(gram)))
    print(f"automorphism pullbacks of diagonal metrics: {hits}/{args.draws} have b = 0")


if __name__ == "__main__":
    main()
