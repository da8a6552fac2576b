"""Betti numbers of d-fold cyclic covers, computed two independent ways.

The oracle route substitutes the cyclic permutation matrix for t
(tensor_to_field) and takes exact ranks of the resulting scalar block
matrices.  The formula route reads the answer off the module decompositions:

    b_k(X_d; F) = d * n1 + sum_i deg gcd(q_i, t^d - 1)
                         + sum_j deg gcd(q'_j, t^d - 1)

with n1 the free rank of H_k(X; R), q_i its torsion divisors, and q'_j the
torsion divisors one degree down (the kernel of multiplication by t^d - 1 on
H_{k-1} feeds H_k of the cover through the long exact sequence; both the
kernel and cokernel of multiplication by f on R/(q) have dimension
deg gcd(f, q)).

The two routes share no code beyond the decomposition input, so their
agreement is a meaningful check; cover_report raises if they differ.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .complexes import ChainComplexOverR, FieldComplex, tensor_to_field
from .exceptions import OracleMismatchError
from .fields import Field, PrimeField, RationalField
from .homology import ModuleDecomposition, homology_decompositions
from .laurent import LaurentPoly, laurent_gcd

try:
    import numpy as _np
except ImportError:  # pragma: no cover - numpy is a hard dependency
    _np = None

_NUMPY_PRIME_LIMIT = 2**31  # (p-1)^2 must fit comfortably in int64


def _rank_int_bareiss(rows: list[list[int]]) -> int:
    """Rank of an integer matrix by fraction-free elimination.

    Bareiss: after each step every entry is divisible by the previous pivot,
    so all divisions below are exact and entries stay integral.
    """
    m = [row[:] for row in rows]
    if not m or not m[0]:
        return 0
    n_rows, n_cols = len(m), len(m[0])
    rank = 0
    prev = 1
    col = 0
    while rank < n_rows and col < n_cols:
        piv = next((i for i in range(rank, n_rows) if m[i][col]), None)
        if piv is None:
            col += 1
            continue
        if piv != rank:
            m[rank], m[piv] = m[piv], m[rank]
        pivot = m[rank][col]
        for i in range(rank + 1, n_rows):
            head = m[i][col]
            row_i, row_r = m[i], m[rank]
            for j in range(col, n_cols):
                row_i[j] = (pivot * row_i[j] - head * row_r[j]) // prev
        prev = pivot
        rank += 1
        col += 1
    return rank


def _rank_rational(grid, field) -> int:
    """Rank over Q: clear denominators row by row, then integer elimination."""
    int_rows = []
    for row in grid:
        lcm = 1
        for v in row:
            den = int(v.denominator)
            lcm = lcm * den // math.gcd(lcm, den)
        int_rows.append([int(v.numerator * (lcm // v.denominator)) for v in row])
    return _rank_int_bareiss(int_rows)


def _rank_mod_p_numpy(grid, p: int) -> int:
    m = _np.array(grid, dtype=_np.int64) % p
    n_rows, n_cols = m.shape
    rank = 0
    for col in range(n_cols):
        if rank >= n_rows:
            break
        nz = _np.nonzero(m[rank:, col])[0]
        if nz.size == 0:
            continue
        piv = rank + int(nz[0])
        if piv != rank:
            m[[rank, piv]] = m[[piv, rank]]
        inv = pow(int(m[rank, col]), -1, p)
        m[rank] = (m[rank] * inv) % p
        below = m[rank + 1:, col]
        mask = below != 0
        if mask.any():
            rows = _np.nonzero(mask)[0] + rank + 1
            m[rows] = (m[rows] - _np.outer(m[rows, col], m[rank])) % p
        rank += 1
    return rank


def _rank_mod_p_python(grid, p: int) -> int:
    m = [[int(v) % p for v in row] for row in grid]
    if not m or not m[0]:
        return 0
    n_rows, n_cols = len(m), len(m[0])
    rank = 0
    for col in range(n_cols):
        if rank >= n_rows:
            break
        piv = next((i for i in range(rank, n_rows) if m[i][col]), None)
        if piv is None:
            continue
        if piv != rank:
            m[rank], m[piv] = m[piv], m[rank]
        inv = pow(m[rank][col], -1, p)
        m[rank] = [(v * inv) % p for v in m[rank]]
        for i in range(rank + 1, n_rows):
            head = m[i][col]
            if head:
                row_i, row_r = m[i], m[rank]
                m[i] = [(a - head * b) % p for a, b in zip(row_i, row_r)]
        rank += 1
    return rank


def scalar_rank(grid, field: Field) -> int:
    """Exact rank of a grid of field elements (list of rows)."""
    if not grid or not grid[0]:
        return 0
    if isinstance(field, RationalField):
        return _rank_rational(grid, field)
    if isinstance(field, PrimeField):
        p = field.char
        if _np is not None and p < _NUMPY_PRIME_LIMIT:
            return _rank_mod_p_numpy(grid, p)
        return _rank_mod_p_python(grid, p)
    raise TypeError(f"no rank routine for field {field!r}")


def betti_numbers(C: FieldComplex) -> list[int]:
    """b_j = dim C_j - rank d_j - rank d_{j+1} for each degree j."""
    ranks = [scalar_rank(C.boundary_grid(j), C.field)
             for j in range(C.top_degree + 2)]
    out = []
    for j in range(C.top_degree + 1):
        b = C.dims[j] - ranks[j] - ranks[j + 1]
        assert b >= 0
        out.append(b)
    return out


def cover_betti_oracle(C: ChainComplexOverR, d: int) -> list[int]:
    """Betti numbers of the d-fold cover by brute force: substitute the
    cyclic matrix for t and take exact ranks.  Independent of the SNF and
    decomposition code paths."""
    if d < 1:
        raise ValueError("cover degree must be >= 1")
    return betti_numbers(tensor_to_field(C, d))


def _gcd_degree_with_cycle(q: LaurentPoly, cycle: LaurentPoly) -> int:
    g = laurent_gcd(q, cycle)
    return 0 if g.is_unit else g.degree


def cover_betti_formula(dec_k: ModuleDecomposition,
                        dec_km1: ModuleDecomposition, d: int) -> int:
    """k-th Betti number of the d-fold cover from the decompositions at
    degrees k and k-1."""
    if d < 1:
        raise ValueError("cover degree must be >= 1")
    dec_k.field.require_same(dec_km1.field)
    F = dec_k.field
    cycle = LaurentPoly(F, {0: -1, d: 1})
    b = d * dec_k.free_rank
    b += sum(_gcd_degree_with_cycle(q, cycle) for q in dec_k.divisors)
    b += sum(_gcd_degree_with_cycle(q, cycle) for q in dec_km1.divisors)
    return b


@dataclass(frozen=True)
class CoverBettiReport:
    """Betti numbers of one d-fold cover, with both routes recorded.

    contributions[k] breaks the formula value down: the d*n1 term, the
    per-divisor gcd degrees from degree k (cokernel side) and from degree
    k-1 (kernel side).
    """

    d: int
    betti_formula: tuple[int, ...] | None
    betti_oracle: tuple[int, ...] | None
    contributions: tuple[dict, ...]

    def betti(self) -> tuple[int, ...]:
        chosen = self.betti_oracle if self.betti_oracle is not None else self.betti_formula
        assert chosen is not None
        return chosen

    def to_json(self) -> dict:
        return {
            "d": self.d,
            "betti_formula": None if self.betti_formula is None else list(self.betti_formula),
            "betti_oracle": None if self.betti_oracle is None else list(self.betti_oracle),
            "contributions": [dict(c) for c in self.contributions],
        }


def cover_report(C: ChainComplexOverR, d: int, use_formula: bool = True,
                 use_oracle: bool = True,
                 decompositions: list[ModuleDecomposition] | None = None) -> CoverBettiReport:
    """Compute Betti numbers of the d-fold cover, by both routes by default.

    Raises OracleMismatchError if the two routes disagree anywhere; pass a
    precomputed decomposition list to amortize the SNF work across many d.
    """
    if d < 1:
        raise ValueError("cover degree must be >= 1")
    if not (use_formula or use_oracle):
        raise ValueError("at least one route must be enabled")
    formula = None
    contributions: tuple[dict, ...] = ()
    if use_formula:
        decs = decompositions if decompositions is not None else homology_decompositions(C)
        F = C.field
        cycle = LaurentPoly(F, {0: -1, d: 1})
        zero_dec = ModuleDecomposition.trivial(F)
        values = []
        contribs = []
        for k in range(C.top_degree + 1):
            dec_k = decs[k]
            dec_km1 = decs[k - 1] if k >= 1 else zero_dec
            coker = [_gcd_degree_with_cycle(q, cycle) for q in dec_k.divisors]
            kernel = [_gcd_degree_with_cycle(q, cycle) for q in dec_km1.divisors]
            values.append(d * dec_k.free_rank + sum(coker) + sum(kernel))
            contribs.append({"free": d * dec_k.free_rank,
                             "coker": coker, "kernel": kernel})
        formula = tuple(values)
        contributions = tuple(contribs)
    oracle = tuple(cover_betti_oracle(C, d)) if use_oracle else None
    if formula is not None and oracle is not None and formula != oracle:
        raise OracleMismatchError(
            f"cover Betti routes disagree at d={d}: formula {list(formula)} "
            f"vs oracle {list(oracle)}")
    return CoverBettiReport(d=d, betti_formula=formula, betti_oracle=oracle,
                            contributions=contributions)
