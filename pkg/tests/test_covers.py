import random
from fractions import Fraction

import pytest

import coverhom.covers as covers
from coverhom.complexes import (ChainComplexOverR, FieldComplex,
                                builtin_complex, tensor_to_field)
from coverhom.corpus import random_complex, random_laurent
from coverhom.covers import (CoverBettiReport, betti_numbers,
                             cover_betti_formula, cover_betti_oracle,
                             cover_report, scalar_rank)
from coverhom.exceptions import OracleMismatchError
from coverhom.fields import GF, QQ
from coverhom.homology import ModuleDecomposition, homology_decompositions
from coverhom.laurent import LaurentPoly, cyclotomic, laurent_gcd
from coverhom.rmatrix import RMatrix, companion_matrix


def _cycle(field, d):
    return LaurentPoly(field, {0: -1, d: 1})


def grid_mul(F, A, B):
    n, k, m = len(A), len(B), len(B[0])
    out = [[F.zero() for _ in range(m)] for _ in range(n)]
    for i in range(n):
        for j in range(m):
            acc = F.zero()
            for s in range(k):
                acc = F.add(acc, F.mul(A[i][s], B[s][j]))
            out[i][j] = acc
    return out


def grid_pow(F, A, e):
    n = len(A)
    out = [[F.one() if i == j else F.zero() for j in range(n)] for i in range(n)]
    for _ in range(e):
        out = grid_mul(F, out, A)
    return out


def grid_sub_identity(F, A):
    return [[F.sub(v, F.one() if i == j else F.zero())
             for j, v in enumerate(row)] for i, row in enumerate(A)]


class TestScalarRank:
    def test_rational_examples(self):
        as_q = lambda rows: [[QQ.coerce(v) for v in r] for r in rows]
        assert scalar_rank(as_q([[1, 2], [2, 4]]), QQ) == 1
        assert scalar_rank(as_q([[1, 2], [2, 5]]), QQ) == 2
        assert scalar_rank(as_q([[0, 0], [0, 0]]), QQ) == 0
        assert scalar_rank([], QQ) == 0
        assert scalar_rank([[]], QQ) == 0
        # denominators matter: second row is 3/2 times the first
        g = as_q([[Fraction(1, 2), Fraction(1, 3)],
                  [Fraction(3, 4), Fraction(1, 2)]])
        assert scalar_rank(g, QQ) == 1

    def test_rectangular(self):
        as_q = lambda rows: [[QQ.coerce(v) for v in r] for r in rows]
        assert scalar_rank(as_q([[1, 2, 3]]), QQ) == 1
        assert scalar_rank(as_q([[1], [2], [3]]), QQ) == 1

    def test_mod_p_examples(self):
        F = GF(5)
        as_f = lambda rows: [[F.coerce(v) for v in r] for r in rows]
        assert scalar_rank(as_f([[1, 2], [2, 4]]), F) == 1
        assert scalar_rank(as_f([[1, 3], [2, 6]]), F) == 1  # 6 = 1, det = -5 = 0
        assert scalar_rank(as_f([[1, 2], [2, 5]]), F) == 2  # det = -4 != 0
        assert scalar_rank(as_f([[2, 0], [0, 3]]), F) == 2

    def test_python_fallback_agrees(self, monkeypatch):
        rng = random.Random(7)
        F = GF(5)
        grids = []
        for _ in range(20):
            rows, cols = rng.randint(1, 6), rng.randint(1, 6)
            grids.append([[F.coerce(rng.randrange(5)) for _ in range(cols)]
                         for _ in range(rows)])
        fast = [scalar_rank(g, F) for g in grids]
        monkeypatch.setattr(covers, "_np", None)
        slow = [scalar_rank(g, F) for g in grids]
        assert fast == slow

    def test_large_prime_uses_python_path(self):
        # p >= 2^31 exceeds the int64 comfort zone, so numpy must be skipped
        F = GF(2**31 + 11)
        as_f = lambda rows: [[F.coerce(v) for v in r] for r in rows]
        assert scalar_rank(as_f([[1, 2], [2, 4]]), F) == 1
        assert scalar_rank(as_f([[1, 2], [2, 5]]), F) == 2

    def test_unknown_field(self):
        with pytest.raises(TypeError):
            scalar_rank([[1]], object())


class TestBettiNumbers:
    def test_no_boundaries(self):
        C = FieldComplex(QQ, [2], [])
        assert betti_numbers(C) == [2]

    def test_zero_boundary(self):
        zero = QQ.zero()
        C = FieldComplex(QQ, [2, 1], [[[zero], [zero]]])
        assert betti_numbers(C) == [2, 1]

    def test_identity_boundary_is_acyclic(self):
        C = FieldComplex(QQ, [1, 1], [[[QQ.one()]]])
        assert betti_numbers(C) == [0, 0]

    def test_circle_covers(self):
        # every cyclic cover of a circle is a circle
        C = builtin_complex("circle")
        for d in (1, 2, 3, 4, 7):
            assert cover_betti_oracle(C, d) == [1, 1]


class TestCoverRoutesAgree:
    def test_frozen_examples(self):
        cases = [
            ("circle", 4, [1, 1]),
            ("phi3", 3, [2, 2]),
            ("trefoil", 6, [1, 3, 2]),
            ("wedge2", 5, [1, 6]),
        ]
        for name, d, want in cases:
            C = builtin_complex(name)
            rep = cover_report(C, d)
            assert rep.betti_formula == tuple(want)
            assert rep.betti_oracle == tuple(want)
            assert list(rep.betti()) == want

    def test_formula_matches_oracle_on_corpus(self):
        rng = random.Random(41)
        for _ in range(10):
            C, _ = random_complex(rng, QQ)
            decs = homology_decompositions(C)
            for d in range(1, 9):
                cover_report(C, d, decompositions=decs)  # raises on mismatch

    def test_formula_from_decomposition_pair(self):
        C = builtin_complex("trefoil")
        decs = homology_decompositions(C)
        trivial = ModuleDecomposition.trivial(QQ)
        got = [cover_betti_formula(decs[0], trivial, 6),
               cover_betti_formula(decs[1], decs[0], 6),
               cover_betti_formula(decs[2], decs[1], 6)]
        assert got == [1, 3, 2]

    def test_trefoil_jump_law(self):
        # b_1 of the d-fold cover is 1 + deg gcd(t^2 - t + 1, t^d - 1),
        # which is 3 exactly when 6 divides d
        C = builtin_complex("trefoil")
        q = LaurentPoly(QQ, {0: 1, 1: -1, 2: 1})
        for d in range(1, 9):
            want = 1 + (2 if d % 6 == 0 else 0)
            g = laurent_gcd(q, _cycle(QQ, d))
            assert (0 if g.is_unit else g.degree) == want - 1
            assert cover_betti_oracle(C, d)[1] == want

    def test_euler_characteristic_scales(self):
        rng = random.Random(42)
        for _ in range(8):
            C, _ = random_complex(rng, QQ)
            chi1 = sum((-1) ** j * n for j, n in enumerate(C.dims))
            for d in (2, 3, 5):
                bd = cover_betti_oracle(C, d)
                chid = sum((-1) ** j * b for j, b in enumerate(bd))
                ranks_cancel = sum((-1) ** j * n * d for j, n in enumerate(C.dims))
                assert chid == chi1 * d == ranks_cancel

    def test_mismatch_guard_fires(self):
        # feeding the wrong decompositions must trip the cross-check
        wrong = homology_decompositions(builtin_complex("circle"))
        with pytest.raises(OracleMismatchError):
            cover_report(builtin_complex("phi3"), 3, decompositions=wrong)

    def test_single_route_modes(self):
        C = builtin_complex("trefoil")
        rep_f = cover_report(C, 6, use_oracle=False)
        assert rep_f.betti_oracle is None
        assert rep_f.betti() == (1, 3, 2)
        rep_o = cover_report(C, 6, use_formula=False)
        assert rep_o.betti_formula is None
        assert rep_o.contributions == ()
        assert rep_o.betti() == (1, 3, 2)
        with pytest.raises(ValueError):
            cover_report(C, 6, use_formula=False, use_oracle=False)

    def test_contributions_breakdown(self):
        rep = cover_report(builtin_complex("trefoil"), 6)
        assert rep.contributions[1] == {"free": 0, "coker": [2], "kernel": [1]}
        doc = rep.to_json()
        assert doc["d"] == 6
        assert doc["betti_formula"] == doc["betti_oracle"] == [1, 3, 2]

    def test_degree_validation(self):
        C = builtin_complex("circle")
        decs = homology_decompositions(C)
        with pytest.raises(ValueError):
            cover_betti_oracle(C, 0)
        with pytest.raises(ValueError):
            cover_report(C, -1)
        with pytest.raises(ValueError):
            cover_betti_formula(decs[0], decs[1], 0)


class TestCompanionModel:
    """companion_matrix models multiplication by t on R/(q); its spectral
    behaviour is what makes the gcd formula and the cover oracle agree."""

    def test_eigenvalue_criterion(self):
        rng = random.Random(43)
        points = [QQ.coerce(v) for v in
                  (1, -1, 2, 0, Fraction(1, 2), Fraction(-2, 3))]
        for _ in range(25):
            q = random_laurent(rng, QQ, max_degree=5, nonzero=True).normalize()
            if q.degree < 1:
                continue
            A = companion_matrix(q)
            n = len(A)
            for z in points:
                shifted = [[QQ.sub(v, z if i == j else QQ.zero())
                            for j, v in enumerate(row)]
                           for i, row in enumerate(A)]
                singular = scalar_rank(shifted, QQ) < n
                assert singular == QQ.is_zero(q.evaluate(z))

    def test_power_detects_cover_divisibility(self):
        F = QQ
        phi6 = cyclotomic(6, F)
        A = companion_matrix(phi6)
        # t^6 = 1 on R/(phi6): the 6th power of the model is the identity
        P6 = grid_sub_identity(F, grid_pow(F, A, 6))
        assert scalar_rank(P6, F) == 0
        # no smaller power is, and powers coprime to 6 stay invertible
        P5 = grid_sub_identity(F, grid_pow(F, A, 5))
        assert scalar_rank(P5, F) == 2
        t_minus_1 = companion_matrix(LaurentPoly(F, {0: -1, 1: 1}))
        for d in (1, 2, 5):
            Pd = grid_sub_identity(F, grid_pow(F, t_minus_1, d))
            assert scalar_rank(Pd, F) == 0  # t = 1 on R/(t - 1), every power


class TestReportType:
    def test_betti_prefers_oracle(self):
        rep = CoverBettiReport(d=2, betti_formula=(9,), betti_oracle=(1,),
                               contributions=())
        assert rep.betti() == (1,)

    def test_json_shape(self):
        rep = cover_report(builtin_complex("circle"), 2, use_oracle=False)
        doc = rep.to_json()
        assert doc == {"d": 2, "betti_formula": [1, 1], "betti_oracle": None,
                       "contributions": [{"free": 0, "coker": [1], "kernel": []},
                                         {"free": 0, "coker": [], "kernel": [1]}]}
