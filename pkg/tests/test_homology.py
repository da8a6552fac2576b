import random

import pytest

from coverhom.complexes import ChainComplexOverR, builtin_complex
from coverhom.corpus import invariant_factors, random_complex
from coverhom.exceptions import InvalidComplexError
from coverhom.fields import GF, QQ
from coverhom.homology import (ModuleDecomposition, homology_decompositions,
                               homology_module)
from coverhom.laurent import LaurentPoly
from coverhom.rmatrix import RMatrix


def t_(field=QQ):
    return LaurentPoly.t_power(field, 1)


def one_(field=QQ):
    return LaurentPoly.one(field)


class TestBuiltinDecompositions:
    def test_circle(self):
        decs = homology_decompositions(builtin_complex("circle"))
        assert [str(d) for d in decs] == ["R/(t - 1)", "0"]

    def test_wedge_of_two_circles(self):
        decs = homology_decompositions(builtin_complex("wedge2"))
        assert decs[0] == ModuleDecomposition(QQ, 0, (t_() - one_(),))
        assert decs[1] == ModuleDecomposition(QQ, 1, ())

    def test_trefoil(self):
        decs = homology_decompositions(builtin_complex("trefoil"))
        t, one = t_(), one_()
        assert decs[0].divisors == (t - one,)
        assert decs[1] == ModuleDecomposition(QQ, 0, (t * t - t + one,))
        assert decs[2].is_trivial

    def test_figure_eight(self):
        decs = homology_decompositions(builtin_complex("figure8"))
        t, one = t_(), one_()
        assert decs[1] == ModuleDecomposition(QQ, 0, (t * t - t.scale(3) + one,))
        assert decs[2].is_trivial

    def test_phi3_two_term(self):
        decs = homology_decompositions(builtin_complex("phi3"))
        t, one = t_(), one_()
        assert decs[0].divisors == (t * t + t + one,)
        assert decs[1].is_trivial


class TestHandBuiltMatrices:
    def test_torsion_pair_complex(self):
        # R --diag(t-1, (t-1)(t+1))--> R^2 gives H_0 with a genuine chain
        t, one = t_(), one_()
        z = LaurentPoly.zero(QQ)
        d1 = RMatrix(QQ, [[t - one, z], [z, (t - one) * (t + one)]])
        C = ChainComplexOverR(QQ, [2, 2], [d1])
        h0 = homology_module(C, 0)
        assert h0.free_rank == 0
        assert h0.divisors == (t - one, (t - one) * (t + one))
        assert homology_module(C, 1).is_trivial

    def test_shifted_basis_same_homology(self):
        # same module presented through a scrambled basis
        t, one = t_(), one_()
        d1 = RMatrix(QQ, [[(t - one).shift(-2).scale(3)]])
        C = ChainComplexOverR(QQ, [1, 1], [d1])
        assert homology_module(C, 0).divisors == (t - one,)

    def test_middle_degree_mixture(self):
        t, one = t_(), one_()
        z = LaurentPoly.zero(QQ)
        d1 = RMatrix(QQ, [[t - one, z]])
        d2 = RMatrix(QQ, [[z], [t * t + one]])
        C = ChainComplexOverR(QQ, [1, 2, 1], [d1, d2])
        h1 = homology_module(C, 1)
        # kernel of d1 is the second generator; image is (t^2+1) times it
        assert h1 == ModuleDecomposition(QQ, 0, (t * t + one,))


class TestPlantedCorpus:
    @pytest.mark.parametrize("field,seed,count",
                             [(QQ, 101, 60), (GF(2), 102, 25),
                              (GF(3), 103, 25), (GF(5), 104, 25)])
    def test_planted_homology_recovered(self, field, seed, count):
        rng = random.Random(seed)
        for trial in range(count):
            C, planted = random_complex(rng, field)
            decs = homology_decompositions(C)
            for j, dec in enumerate(decs):
                want_free, want_divs = planted[j]
                assert dec.free_rank == want_free, (trial, j)
                assert list(dec.divisors) == invariant_factors(want_divs), \
                    (trial, j)

    def test_fraction_field_euler_characteristic(self):
        # torsion is invisible over F(t), so alternating sums of free ranks
        # and of cell counts agree
        rng = random.Random(105)
        for _ in range(40):
            C, _ = random_complex(rng, QQ)
            decs = homology_decompositions(C)
            chi_cells = sum((-1) ** j * n for j, n in enumerate(C.dims))
            chi_free = sum((-1) ** j * d.free_rank for j, d in enumerate(decs))
            assert chi_cells == chi_free


class TestDecompositionType:
    def test_validation(self):
        t, one = t_(), one_()
        with pytest.raises(ValueError):
            ModuleDecomposition(QQ, -1, ())
        with pytest.raises(ValueError):
            ModuleDecomposition(QQ, 0, (one,))  # unit divisor
        with pytest.raises(ValueError):
            ModuleDecomposition(QQ, 0, ((t - one).scale(2),))  # not canonical
        with pytest.raises(ValueError):
            # (t+1) does not divide (t-1): chain broken
            ModuleDecomposition(QQ, 0, (t + one, t - one))

    def test_dimension_over_field(self):
        t, one = t_(), one_()
        dec = ModuleDecomposition(QQ, 0, (t - one, (t - one) * (t + one)))
        assert dec.torsion_degree == 3
        assert dec.dimension_over_field() == 3
        assert ModuleDecomposition(QQ, 2, ()).dimension_over_field() is None
        assert ModuleDecomposition.trivial(QQ).dimension_over_field() == 0

    def test_json_round_trip(self):
        t, one = t_(), one_()
        dec = ModuleDecomposition(QQ, 2, (t - one, (t - one) * (t + one)))
        assert ModuleDecomposition.from_json(QQ, dec.to_json()) == dec

    def test_str(self):
        t, one = t_(), one_()
        assert str(ModuleDecomposition.trivial(QQ)) == "0"
        assert str(ModuleDecomposition(QQ, 2, (t - one,))) == "R^2 + R/(t - 1)"


class TestErrorPaths:
    def test_degree_out_of_range(self):
        C = builtin_complex("circle")
        with pytest.raises(ValueError):
            homology_module(C, -1)
        with pytest.raises(ValueError):
            homology_module(C, 5)

    def test_non_complex_detected(self):
        # duck-typed stand-in whose maps do not compose to zero
        class Broken:
            field = QQ
            dims = (1, 1, 1)
            top_degree = 2

            def boundary_matrix(self, j):
                if j in (1, 2):
                    return RMatrix(QQ, [[t_() - one_()]]) if j == 1 \
                        else RMatrix(QQ, [[one_()]])
                return RMatrix.zeros(QQ, 0, 1) if j == 0 \
                    else RMatrix.zeros(QQ, 1, 0)

        with pytest.raises(InvalidComplexError):
            homology_module(Broken(), 1)
