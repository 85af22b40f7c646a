"""Random generators for property tests.

Complexes are built from elementary summands (spheres and two-term pieces
Z --k--> Z) and then conjugated degreewise by small unimodular matrices, so
d∘d = 0 holds by construction while the matrices look generic.  Chain maps
are drawn from the integer kernel of the degree-0 differential of the
internal Hom complex, i.e. uniformly small combinations of an actual basis
of the group of chain maps.
"""

from __future__ import annotations

import random

from fibseq import (
    NONNEGATIVE,
    UNBOUNDED,
    ChainComplex,
    ChainMap,
    IntMatrix,
    as_unbounded,
    direct_sum,
    factor_we_fib,
    internal_hom,
    kernel_basis,
    zero_complex,
)
from fibseq.abgrp import Subquotient
from fibseq.monoidal import hom_element_to_chain_map


def rand_matrix(rng: random.Random, rows: int, cols: int, lo: int = -3, hi: int = 3) -> IntMatrix:
    return IntMatrix(
        [[rng.randint(lo, hi) for _ in range(cols)] for _ in range(rows)], cols=cols
    )


def rand_unimodular(rng: random.Random, n: int, steps: int | None = None):
    """A unimodular matrix with small entries, together with its inverse."""
    u = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    uinv = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    if steps is None:
        steps = 2 * n
    for _ in range(steps if n > 1 else 0):
        op = rng.randrange(3)
        i, j = rng.sample(range(n), 2)
        if op == 0:
            k = rng.choice((-1, 1))
            # u <- E u ; uinv <- uinv E^{-1}
            for t in range(n):
                u[i][t] += k * u[j][t]
            for row in uinv:
                row[j] -= k * row[i]
        elif op == 1:
            u[i], u[j] = u[j], u[i]
            for row in uinv:
                row[i], row[j] = row[j], row[i]
        else:
            u[i] = [-x for x in u[i]]
            for row in uinv:
                row[i] = -row[i]
    return IntMatrix(u, cols=n), IntMatrix(uinv, cols=n)


def _two_term(n: int, k: int, variant: str) -> ChainComplex:
    return ChainComplex({n: 1, n - 1: 1}, {n: IntMatrix([[k]])}, variant)


def rand_complex(
    rng: random.Random,
    variant: str = UNBOUNDED,
    min_deg: int = -2,
    max_deg: int = 2,
    width: int = 3,
    max_rank: int = 3,
    mix: bool = True,
) -> ChainComplex:
    """A random complex with support in [min_deg, max_deg] and small ranks."""
    if variant == NONNEGATIVE:
        min_deg = max(min_deg, 0)
    lo = rng.randint(min_deg, max(max_deg - 1, min_deg))
    hi = min(lo + rng.randint(0, width - 1), max_deg)
    pieces = []
    for n in range(lo, hi + 1):
        if rng.random() < 0.5:
            pieces.append(ChainComplex({n: 1}, {}, variant))
        if n > lo or (variant != NONNEGATIVE or n >= 1):
            if n - 1 >= min_deg and rng.random() < 0.6:
                pieces.append(_two_term(n, rng.choice((0, 1, 2, 3, -2)), variant))
    total = zero_complex(variant)
    for p in pieces:
        if all(total.rank(n) + p.rank(n) <= max_rank for n in p.degrees()):
            total = direct_sum(total, p)
    if total.is_zero() or not mix:
        return total
    transforms = {n: rand_unimodular(rng, total.rank(n)) for n in total.degrees()}
    diffs = {}
    for n in total.diffs:
        u_prev = transforms[n - 1][0]
        _, vinv = transforms[n]
        diffs[n] = u_prev @ total.diff(n) @ vinv
    return ChainComplex(total.ranks, diffs, variant)


def rand_chain_map(
    rng: random.Random, a: ChainComplex, b: ChainComplex, coeff: int = 2
) -> ChainMap:
    """Uniformly small integer combination of a basis of chain maps a -> b."""
    au, bu = as_unbounded(a), as_unbounded(b)
    hom = internal_hom(au, bu)
    basis = kernel_basis(hom.complex.diff(0))
    if basis.cols == 0:
        return ChainMap(a, b, {})
    weights = [rng.randint(-coeff, coeff) for _ in range(basis.cols)]
    vec = [sum(row[j] * weights[j] for j in range(basis.cols)) for row in basis.data]
    f = hom_element_to_chain_map(hom, au, bu, vec)
    return ChainMap(a, b, f.components)


def rand_map(
    rng: random.Random,
    variant: str = UNBOUNDED,
    min_deg: int = -2,
    max_deg: int = 2,
    width: int = 3,
    max_rank: int = 3,
) -> ChainMap:
    a = rand_complex(rng, variant, min_deg, max_deg, width, max_rank)
    b = rand_complex(rng, variant, min_deg, max_deg, width, max_rank)
    return rand_chain_map(rng, a, b)


def rand_fibration(rng: random.Random, b: ChainComplex) -> ChainMap:
    """A fibration onto b: the fibration half of a factorized random map."""
    variant = b.variant
    a = rand_complex(rng, variant, width=2, max_rank=2)
    f = rand_chain_map(rng, a, b)
    return factor_we_fib(f).fib


def rand_subquotient(rng: random.Random, ambient: int = 3) -> Subquotient:
    cycles = rand_matrix(rng, ambient, rng.randint(0, ambient), lo=-2, hi=2)
    combo = rand_matrix(rng, cycles.cols, rng.randint(0, 2), lo=-2, hi=2)
    return Subquotient(ambient, cycles, cycles @ combo)
