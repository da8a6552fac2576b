"""Seeded random corpora: matrices and chain complexes with known homology.

Complexes are built by planting matched cell pairs (which forces d o d = 0
combinatorially) and then scrambling by invertible basis changes, so the
planted homology is known by construction and entirely independent of the
decomposition machinery.  Used by the big property suites and the CLI's
oracle-check command; everything takes an explicit random.Random so runs
reproduce from a seed.
"""
from __future__ import annotations

import random
from fractions import Fraction

from .fields import Field
from .laurent import LaurentPoly, divides, exact_div, laurent_gcd
from .rmatrix import RMatrix


def random_rational(rng: random.Random) -> Fraction:
    return Fraction(rng.randint(-4, 4), rng.choice([1, 1, 1, 2, 3]))


def random_laurent(rng: random.Random, field: Field, max_degree: int = 3,
                   min_exp: int = -2, nonzero: bool = False) -> LaurentPoly:
    while True:
        lo = rng.randint(min_exp, 2)
        spread = rng.randint(0, max_degree)
        coeffs = {}
        for e in range(lo, lo + spread + 1):
            if rng.random() < 0.7 or e in (lo, lo + spread):
                if field.char == 0:
                    coeffs[e] = random_rational(rng)
                else:
                    coeffs[e] = rng.randint(0, field.char - 1)
        p = LaurentPoly(field, coeffs)
        if not (nonzero and p.is_zero):
            return p


def random_rmatrix(rng: random.Random, field: Field, rows: int, cols: int,
                   max_degree: int = 3, density: float = 0.8) -> RMatrix:
    entries = []
    for _ in range(rows):
        row = []
        for _ in range(cols):
            if rng.random() < density:
                row.append(random_laurent(rng, field, max_degree=max_degree))
            else:
                row.append(LaurentPoly.zero(field))
        entries.append(row)
    return RMatrix(field, entries, shape=(rows, cols))


# -- random chain complexes with planted homology ----------------------------


def _random_window_poly(rng: random.Random, field: Field, max_degree: int) -> LaurentPoly:
    """Nonzero polynomial with exponents inside [0, max_degree]."""
    one = LaurentPoly.one(field)
    t = LaurentPoly.t_power(field, 1)
    kind = rng.random()
    if kind < 0.2:
        while True:
            c = rng.choice([1, 1, 2, -1])
            if not field.is_zero(field.coerce(c)):  # 2 vanishes in char 2
                return LaurentPoly(field, {0: c})
    if kind < 0.5 and max_degree >= 1:
        # a multiple of t - 1, the divisor class that survives in every cover
        if max_degree >= 2 and rng.random() < 0.5:
            return (t - one) * (t - one)
        return t - one
    while True:
        spread = rng.randint(1, max_degree)
        coeffs = {}
        for e in range(spread + 1):
            if field.char == 0:
                coeffs[e] = rng.randint(-3, 3)
            else:
                coeffs[e] = rng.randint(0, field.char - 1)
        p = LaurentPoly(field, coeffs)
        if not p.is_zero and p.degree >= 1:
            return p


def random_complex(rng: random.Random, field: Field, max_len: int = 4,
                   max_cells: int = 5, max_degree: int = 2, scramble=None):
    """A random chain complex over F[t, t^-1] with known planted homology.

    Returns (complex, planted) where planted[j] = (free_rank, divisor list)
    describes H_j.  Entry Laurent degrees never exceed max_degree.
    """
    from .complexes import ChainComplexOverR

    length = rng.randint(1, max_len)
    dims = [rng.randint(1, max_cells) for _ in range(length)]
    # matched_down[j] maps a source cell at degree j to (target row, poly)
    matched_down: list[dict[int, tuple[int, LaurentPoly]]] = [dict() for _ in dims]
    used_as_target = [set() for _ in dims]
    for j in range(length - 1, 0, -1):
        free_rows = [r for r in range(dims[j - 1]) if r not in used_as_target[j - 1]]
        rng.shuffle(free_rows)
        for c in range(dims[j]):
            if c in used_as_target[j]:
                continue  # a target cell cannot also map down, else d o d != 0
            if not free_rows or rng.random() < 0.35:
                continue
            r = free_rows.pop()
            matched_down[j][c] = (r, _random_window_poly(rng, field, max_degree))
            used_as_target[j - 1].add(r)
    zero = LaurentPoly.zero(field)
    boundaries = []
    for j in range(1, length):
        grid = [[zero for _ in range(dims[j])] for _ in range(dims[j - 1])]
        for c, (r, f) in matched_down[j].items():
            grid[r][c] = f
        boundaries.append(RMatrix(field, grid, shape=(dims[j - 1], dims[j])))
    planted = []
    for j in range(length):
        up = matched_down[j + 1] if j + 1 < length else {}
        divisors = [f.normalize() for (r, f) in up.values() if not f.is_unit]
        n_free = sum(1 for c in range(dims[j])
                     if c not in used_as_target[j] and c not in matched_down[j])
        planted.append((n_free, divisors))
    C = ChainComplexOverR(field, dims, boundaries)
    C = scramble_complex(rng, C, ops=scramble)
    return C, planted


def scramble_complex(rng: random.Random, C, ops=None):
    """Change basis degree by degree with invertible operations.

    Two phases: first constant shears and permutations (these keep every
    entry's exponents inside the planted window), then monomial scalings of
    single basis vectors (these shift a row/column's exponents uniformly,
    changing the window but never an entry's exponent spread).  Homology is
    unchanged, entry Laurent degrees never grow.
    """
    from .complexes import ChainComplexOverR

    field = C.field
    dims = list(C.dims)
    mats = [B.entries() for B in C.boundaries]
    if ops is None:
        ops = 2 * sum(dims)

    def basis_shear(j, a, b, c):
        # e_a <- e_a + c * e_b: column a of d_j gains c * column b,
        # row b of d_{j+1} loses c * row a
        if j >= 1:
            for row in mats[j - 1]:
                row[a] = row[a] + row[b].scale(c)
        if j < len(mats):
            g = mats[j]
            g[b] = [x - y.scale(c) for x, y in zip(g[b], g[a])]

    def basis_swap(j, a, b):
        if j >= 1:
            for row in mats[j - 1]:
                row[a], row[b] = row[b], row[a]
        if j < len(mats):
            g = mats[j]
            g[a], g[b] = g[b], g[a]

    def basis_scale(j, a, k, c):
        # e_a <- (c * t^k) e_a
        if j >= 1:
            for row in mats[j - 1]:
                row[a] = row[a].shift(k).scale(c)
        if j < len(mats):
            inv = field.inv(field.coerce(c))
            g = mats[j]
            g[a] = [x.shift(-k).scale(inv) for x in g[a]]

    for _ in range(ops):
        j = rng.randrange(len(dims))
        n = dims[j]
        if n < 2:
            continue
        a, b = rng.sample(range(n), 2)
        if rng.random() < 0.6:
            basis_shear(j, a, b, rng.choice([1, -1, 2]))
        else:
            basis_swap(j, a, b)
    for j in range(len(dims)):
        for a in range(dims[j]):
            if rng.random() < 0.4:
                c = 1 if field.char == 2 else rng.choice([1, -1])
                basis_scale(j, a, rng.choice([-1, 0, 1]), c)
    boundaries = [RMatrix(field, g, shape=(dims[i], dims[i + 1]))
                  for i, g in enumerate(mats)]
    return ChainComplexOverR(field, dims, boundaries)


# -- independent invariant-factor oracle -------------------------------------


def invariant_factors(divisors) -> list[LaurentPoly]:
    """Invariant-factor chain of a direct sum of R/(f_i), by pairwise gcd/lcm.

    Repeatedly replaces a non-dividing pair (a, b) by (gcd, lcm) until the
    chain condition holds.  Uses only gcd and exact division, so it is
    independent of the Smith normal form path it is used to check.
    """
    polys = [f.normalize() for f in divisors if not f.is_unit]
    changed = True
    while changed:
        changed = False
        for i in range(len(polys)):
            for j in range(i + 1, len(polys)):
                a, b = polys[i], polys[j]
                if not divides(a, b) and not divides(b, a):
                    g = laurent_gcd(a, b)
                    l = exact_div(a * b, g).normalize()
                    polys[i], polys[j] = g, l
                    changed = True
        polys = [p for p in polys if not p.is_unit]
    ordered = []
    rest = list(polys)
    while rest:
        nxt = next(p for p in rest if all(divides(p, q) for q in rest if q is not p))
        ordered.append(nxt)
        rest.remove(nxt)
    return ordered
