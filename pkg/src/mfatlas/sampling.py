"""Seeded exact samplers used by property checks and CLI verification.

Everything draws from an explicit random.Random so runs are reproducible;
values are small rationals to keep fraction growth in check.
"""

from __future__ import annotations

from fractions import Fraction
from random import Random
from typing import Sequence

from .lie import GElement, LieAlgebraA, is_regular
from .linalg import ExactMatrix
from .scalar import Scalar


def rng_for(tag: str, seed: int) -> Random:
    # string seeding is stable across processes (no hash randomization)
    return Random(f"{tag}:{seed}")


def random_rational(rng: Random, num_bound: int = 9, den_choices: Sequence[int] = (1, 1, 2, 3)) -> Fraction:
    return Fraction(rng.randint(-num_bound, num_bound), rng.choice(den_choices))


def random_scalar(rng: Random, gaussian: bool = False) -> Scalar:
    re = random_rational(rng)
    im = random_rational(rng) if gaussian and rng.random() < 0.5 else 0
    return Scalar(re, im)


def random_nonzero_rational(rng: Random, num_bound: int = 9) -> Fraction:
    while True:
        q = random_rational(rng, num_bound)
        if q != 0:
            return q


def random_element(L: LieAlgebraA, rng: Random, gaussian: bool = False) -> GElement:
    coords = [random_scalar(rng, gaussian) for _ in range(L.dim)]
    return L.element_from_coords(coords)


def random_regular_element(L: LieAlgebraA, rng: Random, gaussian: bool = False, tries: int = 60) -> GElement:
    for _ in range(tries):
        x = random_element(L, rng, gaussian)
        if is_regular(x):
            return x
    raise RuntimeError("failed to sample a regular element")


def random_distinct_rationals(rng: Random, k: int, num_bound: int = 9) -> list[Fraction]:
    seen: set[Fraction] = set()
    out: list[Fraction] = []
    while len(out) < k:
        q = random_rational(rng, num_bound)
        if q not in seen:
            seen.add(q)
            out.append(q)
    return out


def random_traceless_distinct_diag(L: LieAlgebraA, rng: Random) -> GElement:
    """Diagonal element with pairwise distinct entries summing to zero."""
    n = L.n
    while True:
        vals = random_distinct_rationals(rng, n - 1)
        last = -sum(vals)
        if last not in vals:
            vals.append(last)
            return L.element(ExactMatrix.diagonal([Scalar(v) for v in vals]))


def random_upper_unipotent(L: LieAlgebraA, rng: Random) -> ExactMatrix:
    n = L.n
    rows = [
        [
            Scalar(1) if i == j else (Scalar(random_rational(rng, 4)) if i < j else Scalar(0))
            for j in range(n)
        ]
        for i in range(n)
    ]
    return ExactMatrix(rows)


def random_torus(L: LieAlgebraA, rng: Random) -> ExactMatrix:
    """Diagonal matrix with nonzero rational entries and determinant 1."""
    n = L.n
    vals = [random_nonzero_rational(rng, 4) for _ in range(n - 1)]
    prod = Fraction(1)
    for v in vals:
        prod *= v
    vals.append(1 / prod)
    return ExactMatrix.diagonal([Scalar(v) for v in vals])


def random_borel_group_element(L: LieAlgebraA, rng: Random) -> ExactMatrix:
    """Element of the standard Borel subgroup: torus times upper unipotent."""
    return random_torus(L, rng) * random_upper_unipotent(L, rng)


def random_unimodular(L: LieAlgebraA, rng: Random, shears: int = 4) -> ExactMatrix:
    """Product of elementary shears; always invertible with det 1."""
    n = L.n
    g = ExactMatrix.identity(n)
    for _ in range(shears):
        i = rng.randrange(n)
        j = rng.randrange(n)
        if i == j:
            continue
        t = random_rational(rng, 3)
        e = [[Scalar(1) if r == c else Scalar(0) for c in range(n)] for r in range(n)]
        e[i][j] = Scalar(t)
        g = g * ExactMatrix(e)
    return g


def conjugate(g: ExactMatrix, x: GElement) -> GElement:
    from .flags import _inverse

    return x.algebra.element(g * x.matrix * _inverse(g))
