"""Homology of chain complexes over R = F[t, t^-1].

Since R is a PID, each homology module splits as R^n1 (+) R/(d_1) (+) ... with
d_1 | d_2 | ... .  The kernel of a boundary map is read off from its Smith
normal form (the columns of V that map onto zero diagonal entries form a
kernel basis); the incoming image is rewritten in kernel coordinates via
V^-1, and the Smith form of that presentation matrix gives the decomposition.
"""
from __future__ import annotations

from dataclasses import dataclass

from .exceptions import FieldMismatchError, InvalidComplexError
from .fields import Field
from .laurent import LaurentPoly, divides
from .rmatrix import RMatrix, _smith_full, rank_profile, smith_normal_form


@dataclass(frozen=True)
class ModuleDecomposition:
    """A finitely generated R-module: free rank plus torsion divisor chain.

    Divisors are canonical (monic, smallest exponent 0, nonzero constant
    term), non-unit, and each divides the next.
    """

    field: Field
    free_rank: int
    divisors: tuple[LaurentPoly, ...]

    def __post_init__(self):
        if self.free_rank < 0:
            raise ValueError("negative free rank")
        object.__setattr__(self, "divisors", tuple(self.divisors))
        prev = None
        for d in self.divisors:
            if d.field != self.field:
                raise FieldMismatchError("divisor field does not match")
            if d.is_zero or d.is_unit:
                raise ValueError("torsion divisors must be nonzero non-units")
            if d != d.normalize():
                raise ValueError(f"divisor {d} is not in canonical form")
            if prev is not None and not divides(prev, d):
                raise ValueError("divisors must form a divisibility chain")
            prev = d

    @property
    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.divisors

    @property
    def torsion_degree(self) -> int:
        """Total Laurent degree of the divisor chain."""
        return sum(d.degree for d in self.divisors)

    def dimension_over_field(self) -> int | None:
        """F-dimension of the module, None when there is a free part."""
        if self.free_rank:
            return None
        return self.torsion_degree

    def to_json(self) -> dict:
        return {
            "free_rank": self.free_rank,
            "divisors": [d.to_json() for d in self.divisors],
        }

    @classmethod
    def from_json(cls, field: Field, doc: dict) -> "ModuleDecomposition":
        return cls(field, int(doc["free_rank"]),
                   tuple(LaurentPoly.from_json(field, d) for d in doc["divisors"]))

    @classmethod
    def trivial(cls, field: Field) -> "ModuleDecomposition":
        return cls(field, 0, ())

    def __str__(self):
        parts = []
        if self.free_rank == 1:
            parts.append("R")
        elif self.free_rank:
            parts.append(f"R^{self.free_rank}")
        parts.extend(f"R/({d})" for d in self.divisors)
        return " + ".join(parts) if parts else "0"


def homology_module(C, j: int) -> ModuleDecomposition:
    """Decomposition of H_j(C) = ker d_j / im d_{j+1} for a complex over R.

    Accepts any object with .field, .dims and .boundary_matrix(j); degrees
    outside 0..top are rejected.
    """
    if j < 0 or j > C.top_degree:
        raise ValueError(f"degree {j} outside 0..{C.top_degree}")
    F = C.field
    b_out = C.boundary_matrix(j)
    b_in = C.boundary_matrix(j + 1)
    full = _smith_full(b_out)
    r = rank_profile(full.D)
    n_j = C.dims[j]
    kernel_rank = n_j - r
    coords = full.V_inv * b_in
    # rows matching nonzero diagonal entries must vanish when d o d = 0
    for i in range(r):
        for p in coords.row(i):
            if not p.is_zero:
                raise InvalidComplexError(
                    "incoming boundary image is not contained in the kernel")
    pres = RMatrix(F, [coords.row(i) for i in range(r, n_j)],
                   shape=(kernel_rank, b_in.cols))
    d_pres = smith_normal_form(pres).D
    divisors = tuple(p for p in d_pres.diagonal() if not p.is_zero and not p.is_unit)
    free_rank = kernel_rank - rank_profile(d_pres)
    return ModuleDecomposition(F, free_rank, divisors)


def homology_decompositions(C) -> list[ModuleDecomposition]:
    """homology_module at every degree of the complex, low to high."""
    return [homology_module(C, j) for j in range(C.top_degree + 1)]
