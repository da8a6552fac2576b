"""Chain complexes over R = F[t, t^-1] and where they come from.

Two sources: explicit boundary-matrix documents, and group presentations
with an infinite cyclic quotient.  A presentation <x_1..x_g | r_1..r_s>
together with a weight map phi: x_j -> Z (surjective) and a character
psi: x_j -> F^* determines a specialization of the group ring through
g -> psi(g) * t^phi(g), and the chain complex of the presentation 2-complex

    R^s --(Fox Jacobian)--> R^g --(psi(x_j) t^phi(x_j) - 1)--> R

computed via free differential calculus: d(x)/dx = 1, d(x^-1)/dx = -x^-1,
d(uv)/dx = du/dx + u * dv/dx.

tensor_to_field replaces t by the d x d cyclic permutation matrix, turning a
complex over R into the plain F-chain complex of the d-fold cyclic cover.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .exceptions import (FieldMismatchError, InvalidComplexError,
                         InvalidPresentationError)
from .fields import QQ, Field, field_from_string
from .laurent import LaurentPoly
from .rmatrix import RMatrix

GEN_LETTERS = "xyzwabcdefghijklmnopqrstuv"


@dataclass(frozen=True)
class GroupWord:
    """A word in free group generators: tuple of (generator index, +-1)."""

    letters: tuple[tuple[int, int], ...]

    def __post_init__(self):
        for idx, sign in self.letters:
            if sign not in (1, -1) or idx < 0:
                raise InvalidPresentationError(f"bad letter ({idx}, {sign})")

    @classmethod
    def from_string(cls, s: str, n_generators: int) -> "GroupWord":
        """Parse words like "xyxYXY"; capital letters are inverses.

        >>> GroupWord.from_string("xY x", 2).letters
        ((0, 1), (1, -1), (0, 1))
        """
        letters = []
        for ch in s:
            if ch.isspace():
                continue
            lower = ch.lower()
            idx = GEN_LETTERS.find(lower)
            if idx < 0 or idx >= n_generators:
                raise InvalidPresentationError(
                    f"letter {ch!r} is not one of the first {n_generators} "
                    f"generators ({GEN_LETTERS[:n_generators]!r})")
            letters.append((idx, -1 if ch.isupper() else 1))
        return cls(tuple(letters))

    def to_string(self) -> str:
        out = []
        for idx, sign in self.letters:
            ch = GEN_LETTERS[idx]
            out.append(ch.upper() if sign < 0 else ch)
        return "".join(out)

    def max_generator(self) -> int:
        return max((idx for idx, _ in self.letters), default=-1)

    def __len__(self):
        return len(self.letters)


@dataclass(frozen=True)
class Presentation:
    """Group presentation + weight phi and character psi, over a field.

    phi must be surjective onto Z (gcd of the weights is 1) and every relator
    must specialize to 1: total phi-weight zero and psi-product one.
    """

    field: Field
    n_generators: int
    relators: tuple[GroupWord, ...]
    phi: tuple[int, ...]
    psi: tuple

    def __post_init__(self):
        if self.n_generators < 1:
            raise InvalidPresentationError("need at least one generator")
        if self.n_generators > len(GEN_LETTERS):
            raise InvalidPresentationError("too many generators to name")
        object.__setattr__(self, "relators", tuple(self.relators))
        object.__setattr__(self, "phi", tuple(int(v) for v in self.phi))
        object.__setattr__(self, "psi",
                           tuple(self.field.coerce(v) for v in self.psi))
        if len(self.phi) != self.n_generators or len(self.psi) != self.n_generators:
            raise InvalidPresentationError("phi and psi must list one value per generator")
        for v in self.psi:
            if self.field.is_zero(v):
                raise InvalidPresentationError("psi values must be nonzero")
        if math.gcd(*(abs(v) for v in self.phi)) != 1:
            raise InvalidPresentationError(
                "phi must be surjective onto Z (gcd of weights must be 1)")
        for w in self.relators:
            if w.max_generator() >= self.n_generators:
                raise InvalidPresentationError("relator uses an undeclared generator")
            if self.word_weight(w) != 0:
                raise InvalidPresentationError(
                    f"relator {w.to_string()!r} has nonzero total phi-weight")
            if not self.field.is_zero(
                    self.field.sub(self.word_character(w), self.field.one())):
                raise InvalidPresentationError(
                    f"relator {w.to_string()!r} has psi-product != 1")

    def word_weight(self, w: GroupWord) -> int:
        return sum(sign * self.phi[idx] for idx, sign in w.letters)

    def word_character(self, w: GroupWord):
        F = self.field
        acc = F.one()
        for idx, sign in w.letters:
            v = self.psi[idx]
            acc = F.mul(acc, v if sign > 0 else F.inv(v))
        return acc

    def generator_image(self, idx: int, sign: int = 1) -> LaurentPoly:
        """Image of x_idx^sign under g -> psi(g) t^phi(g)."""
        F = self.field
        if sign > 0:
            return LaurentPoly(F, {self.phi[idx]: self.psi[idx]})
        return LaurentPoly(F, {-self.phi[idx]: F.inv(self.psi[idx])})

    def to_json(self) -> dict:
        def fmt(v):
            num, den = self.field.to_pair(v)
            return str(num) if den == 1 else f"{num}/{den}"
        return {
            "generators": self.n_generators,
            "relators": [w.to_string() for w in self.relators],
            "phi": list(self.phi),
            "psi": [fmt(v) for v in self.psi],
        }


def parse_presentation(doc: dict, field: Field = QQ) -> Presentation:
    try:
        n = int(doc["generators"])
        relators = tuple(GroupWord.from_string(s, n) for s in doc["relators"])
        phi = tuple(int(v) for v in doc["phi"])
        psi = tuple(doc["psi"])
    except (KeyError, TypeError) as exc:
        raise InvalidPresentationError(f"malformed presentation document: {exc}") from exc
    return Presentation(field, n, relators, phi, psi)


def fox_derivative(pres: Presentation, w: GroupWord, gen: int) -> LaurentPoly:
    """Specialized free derivative d(w)/d(x_gen), a Laurent polynomial.

    Streams through the word keeping the image of the prefix, which is always
    a single term c * t^e.
    """
    if gen < 0 or gen >= pres.n_generators:
        raise ValueError(f"no generator {gen}")
    F = pres.field
    out = LaurentPoly.zero(F)
    c, e = F.one(), 0
    for idx, sign in w.letters:
        if sign > 0:
            if idx == gen:
                out = out + LaurentPoly(F, {e: c})
            c = F.mul(c, pres.psi[idx])
            e += pres.phi[idx]
        else:
            c = F.mul(c, F.inv(pres.psi[idx]))
            e -= pres.phi[idx]
            if idx == gen:
                out = out - LaurentPoly(F, {e: c})
    return out


class ChainComplexOverR:
    """A finite chain complex of free R-modules, given by boundary matrices.

    dims[j] counts the degree-j cells; boundaries[i] is the matrix of
    d: C_{i+1} -> C_i, of shape dims[i] x dims[i+1].  Validates shapes and
    d o d = 0 exactly.  Immutable once built.
    """

    def __init__(self, field: Field, dims, boundaries):
        self.field = field
        self.dims = tuple(int(n) for n in dims)
        self.boundaries = tuple(boundaries)
        if not self.dims:
            raise InvalidComplexError("a complex needs at least one degree")
        if any(n < 0 for n in self.dims):
            raise InvalidComplexError("negative cell counts")
        if len(self.boundaries) != len(self.dims) - 1:
            raise InvalidComplexError(
                f"{len(self.dims)} degrees need {len(self.dims) - 1} boundary "
                f"maps, got {len(self.boundaries)}")
        for i, B in enumerate(self.boundaries):
            if not isinstance(B, RMatrix):
                raise InvalidComplexError("boundaries must be RMatrix values")
            if B.field != field:
                raise FieldMismatchError("boundary matrix over the wrong field")
            if B.shape != (self.dims[i], self.dims[i + 1]):
                raise InvalidComplexError(
                    f"boundary {i + 1} has shape {B.shape}, expected "
                    f"{(self.dims[i], self.dims[i + 1])}")
        for i in range(len(self.boundaries) - 1):
            if not (self.boundaries[i] * self.boundaries[i + 1]).is_zero:
                raise InvalidComplexError(f"d_{i + 1} o d_{i + 2} != 0")

    @property
    def top_degree(self) -> int:
        return len(self.dims) - 1

    def boundary_matrix(self, j: int) -> RMatrix:
        """Matrix of d_j: C_j -> C_{j-1}; zero-shaped just outside the range."""
        if j < 0 or j > self.top_degree + 1:
            raise ValueError(f"no boundary map in degree {j}")
        if j == 0:
            return RMatrix.zeros(self.field, 0, self.dims[0])
        if j == self.top_degree + 1:
            return RMatrix.zeros(self.field, self.dims[-1], 0)
        return self.boundaries[j - 1]

    def direct_sum(self, other: "ChainComplexOverR") -> "ChainComplexOverR":
        self.field.require_same(other.field)
        n = max(len(self.dims), len(other.dims))
        da = list(self.dims) + [0] * (n - len(self.dims))
        db = list(other.dims) + [0] * (n - len(other.dims))
        dims = [a + b for a, b in zip(da, db)]
        zero = LaurentPoly.zero(self.field)
        boundaries = []
        for i in range(n - 1):
            A = (self.boundaries[i] if i < len(self.boundaries)
                 else RMatrix.zeros(self.field, da[i], da[i + 1] if i + 1 < len(da) else 0))
            B = (other.boundaries[i] if i < len(other.boundaries)
                 else RMatrix.zeros(other.field, db[i], db[i + 1] if i + 1 < len(db) else 0))
            if A.shape != (da[i], da[i + 1]):
                A = RMatrix.zeros(self.field, da[i], da[i + 1])
            if B.shape != (db[i], db[i + 1]):
                B = RMatrix.zeros(self.field, db[i], db[i + 1])
            grid = [[zero] * (A.cols + B.cols) for _ in range(A.rows + B.rows)]
            for r in range(A.rows):
                for c in range(A.cols):
                    grid[r][c] = A[r, c]
            for r in range(B.rows):
                for c in range(B.cols):
                    grid[A.rows + r][A.cols + c] = B[r, c]
            boundaries.append(RMatrix(self.field, grid,
                                      shape=(dims[i], dims[i + 1])))
        return ChainComplexOverR(self.field, dims, boundaries)

    def __eq__(self, other):
        if not isinstance(other, ChainComplexOverR):
            return NotImplemented
        return (self.field == other.field and self.dims == other.dims
                and self.boundaries == other.boundaries)

    def to_json(self) -> dict:
        return {
            "field": self.field.name,
            "dims": list(self.dims),
            "boundaries": [B.to_json() for B in self.boundaries],
        }

    def __repr__(self):
        return f"ChainComplexOverR(dims={list(self.dims)}, field={self.field!r})"


def parse_complex(doc: dict, field: Field | None = None) -> ChainComplexOverR:
    """Build a complex from its JSON document form.

    The document carries its own field descriptor; an explicit field argument
    must agree with it.
    """
    try:
        doc_field = field_from_string(doc["field"])
        dims = [int(n) for n in doc["dims"]]
        raw = doc["boundaries"]
    except (KeyError, TypeError, ValueError) as exc:
        raise InvalidComplexError(f"malformed complex document: {exc}") from exc
    if field is not None and field != doc_field:
        raise FieldMismatchError(
            f"document is over {doc_field}, caller requested {field}")
    boundaries = [RMatrix.from_json(doc_field, b) for b in raw]
    return ChainComplexOverR(doc_field, dims, boundaries)


def presentation_to_complex(pres: Presentation) -> ChainComplexOverR:
    """Chain complex of the presentation 2-complex, specialized over R."""
    F = pres.field
    g = pres.n_generators
    one = LaurentPoly.one(F)
    d1 = RMatrix(F, [[pres.generator_image(j) - one for j in range(g)]],
                 shape=(1, g))
    if not pres.relators:
        return ChainComplexOverR(F, [1, g], [d1])
    d2 = RMatrix(F, [[fox_derivative(pres, w, i) for w in pres.relators]
                     for i in range(g)],
                 shape=(g, len(pres.relators)))
    # the fundamental identity sum_j (dr/dx_j)(x_j - 1) = r - 1 forces d1*d2 = 0
    assert (d1 * d2).is_zero
    return ChainComplexOverR(F, [1, g, len(pres.relators)], [d1, d2])


class FieldComplex:
    """A plain chain complex of F-vector spaces (scalar boundary grids)."""

    def __init__(self, field: Field, dims, boundaries, check: bool = True):
        self.field = field
        self.dims = tuple(int(n) for n in dims)
        self.boundaries = [[list(row) for row in B] for B in boundaries]
        if len(self.boundaries) != max(len(self.dims) - 1, 0):
            raise InvalidComplexError("boundary count does not match degrees")
        for i, B in enumerate(self.boundaries):
            if len(B) != self.dims[i] or any(len(r) != self.dims[i + 1] for r in B):
                raise InvalidComplexError(f"boundary {i + 1} has the wrong shape")
        if check:
            self._check_composition()

    def _check_composition(self):
        F = self.field
        for i in range(len(self.boundaries) - 1):
            A, B = self.boundaries[i], self.boundaries[i + 1]
            for r in range(self.dims[i]):
                for c in range(self.dims[i + 2]):
                    acc = F.zero()
                    for k in range(self.dims[i + 1]):
                        acc = F.add(acc, F.mul(A[r][k], B[k][c]))
                    if not F.is_zero(acc):
                        raise InvalidComplexError(f"d_{i + 1} o d_{i + 2} != 0")

    @property
    def top_degree(self) -> int:
        return len(self.dims) - 1

    def boundary_grid(self, j: int):
        if j < 1 or j > self.top_degree:
            return []
        return self.boundaries[j - 1]

    def direct_sum(self, other: "FieldComplex") -> "FieldComplex":
        self.field.require_same(other.field)
        n = max(len(self.dims), len(other.dims))
        da = list(self.dims) + [0] * (n - len(self.dims))
        db = list(other.dims) + [0] * (n - len(other.dims))
        dims = [a + b for a, b in zip(da, db)]
        zero = self.field.zero()
        boundaries = []
        for i in range(n - 1):
            A = self.boundaries[i] if i < len(self.boundaries) else \
                [[zero] * da[i + 1] for _ in range(da[i])]
            B = other.boundaries[i] if i < len(other.boundaries) else \
                [[zero] * db[i + 1] for _ in range(db[i])]
            grid = [[zero] * dims[i + 1] for _ in range(dims[i])]
            for r in range(da[i]):
                for c in range(da[i + 1]):
                    grid[r][c] = A[r][c]
            for r in range(db[i]):
                for c in range(db[i + 1]):
                    grid[da[i] + r][da[i + 1] + c] = B[r][c]
            boundaries.append(grid)
        return FieldComplex(self.field, dims, boundaries, check=False)

    def __eq__(self, other):
        if not isinstance(other, FieldComplex):
            return NotImplemented
        return (self.field == other.field and self.dims == other.dims
                and self.boundaries == other.boundaries)

    def __repr__(self):
        return f"FieldComplex(dims={list(self.dims)}, field={self.field!r})"


def tensor_to_field(C: ChainComplexOverR, d: int) -> FieldComplex:
    """Chain complex of the d-fold cyclic cover, over the plain field F.

    Substitutes for t the d x d cyclic permutation matrix P (so t^e becomes
    P^e and each R-entry becomes a d x d block); for d = 1 this evaluates
    every entry at t = 1.
    """
    d = int(d)
    if d < 1:
        raise ValueError("cover degree must be >= 1")
    F = C.field
    dims = [n * d for n in C.dims]
    zero = F.zero()
    boundaries = []
    for B in C.boundaries:
        grid = [[zero] * (B.cols * d) for _ in range(B.rows * d)]
        for i in range(B.rows):
            for j in range(B.cols):
                p = B[i, j]
                if p.is_zero:
                    continue
                residue = [zero] * d
                for e, v in p.items():
                    residue[e % d] = F.add(residue[e % d], v)
                for r in range(d):
                    for c in range(d):
                        v = residue[(r - c) % d]
                        if not F.is_zero(v):
                            grid[i * d + r][j * d + c] = v
        boundaries.append(grid)
    # composition is preserved by the ring map t -> P, no need to recheck
    return FieldComplex(F, dims, boundaries, check=False)


# -- builtin complexes -------------------------------------------------------


def _presentation_builtin(field: Field, relator_strings, n_gens: int) -> ChainComplexOverR:
    relators = tuple(GroupWord.from_string(s, n_gens) for s in relator_strings)
    pres = Presentation(field, n_gens, relators, phi=(1,) * n_gens,
                        psi=(1,) * n_gens)
    return presentation_to_complex(pres)


def builtin_complex(name: str, field: Field = QQ) -> ChainComplexOverR:
    """Named example complexes used throughout the test suite and CLI.

    circle   infinite cyclic group <x | >, phi(x) = 1
    wedge2   free group of rank two, phi = 1 on both generators
    trefoil  trefoil knot group <x, y | xyxYXY>, meridian weights 1
    figure8  figure-eight knot group (2-bridge form), meridian weights 1
    phi3     two-term complex [t^2 + t + 1]: R -> R
    """
    if name == "circle":
        return _presentation_builtin(field, [], 1)
    if name == "wedge2":
        return _presentation_builtin(field, [], 2)
    if name == "trefoil":
        return _presentation_builtin(field, ["xyxYXY"], 2)
    if name == "figure8":
        return _presentation_builtin(field, ["xyXYxYXyxY"], 2)
    if name == "phi3":
        d1 = RMatrix(field, [[LaurentPoly(field, {0: 1, 1: 1, 2: 1})]])
        return ChainComplexOverR(field, [1, 1], [d1])
    raise ValueError(f"unknown builtin {name!r}; have {', '.join(BUILTIN_NAMES)}")


BUILTIN_NAMES = ("circle", "wedge2", "trefoil", "figure8", "phi3")
