"""Homology of cyclic covers through Laurent-polynomial module decompositions.

Compute H_*(X; F[t, t^-1]) for a finite free chain complex (or a group
presentation via Fox calculus), decompose it over the PID F[t, t^-1], and
read off Betti numbers of every finite cyclic cover, cross-checked against
a brute-force block-matrix oracle.  Includes vanishing certificates with an
exceptional modulus, the p-power cover equivalence over F_p, and a symbolic
Mayer-Vietoris propagator for vanishing flags.
"""

from . import exceptions
from .certificates import (CoverCheck, PPowerReport, VanishingCertificate,
                           exceptional_modulus, p_power_equivalence,
                           split_three_parts, unit_root_orders,
                           vanishing_certificate)
from .complexes import (BUILTIN_NAMES, ChainComplexOverR, FieldComplex,
                        GroupWord, Presentation, builtin_complex,
                        fox_derivative, parse_complex, parse_presentation,
                        presentation_to_complex, tensor_to_field)
from .covers import (CoverBettiReport, betti_numbers, cover_betti_formula,
                     cover_betti_oracle, cover_report, scalar_rank)
from .fields import GF, QQ, Field, PrimeField, RationalField, field_from_string
from .homology import (ModuleDecomposition, homology_decompositions,
                       homology_module)
from .laurent import (LaurentPoly, cyclotomic, cyclotomic_orders, divides,
                      exact_div, laurent_degree, laurent_divmod, laurent_gcd,
                      totient)
from .propagator import (DerivationTrace, FactEntry, Propagator, Space,
                         Splitting, Tube, derive_singer, gt_decomposition,
                         singer_bands)
from .rmatrix import (RMatrix, SmithForm, companion_matrix, determinant,
                      rank_over_fraction_field, smith_normal_form)

__version__ = "0.1.0"

__all__ = [
    "BUILTIN_NAMES", "ChainComplexOverR", "CoverBettiReport", "CoverCheck",
    "DerivationTrace", "FactEntry", "Field", "FieldComplex", "GF",
    "GroupWord", "LaurentPoly", "ModuleDecomposition", "PPowerReport",
    "Presentation", "PrimeField", "Propagator", "QQ", "RMatrix",
    "RationalField", "SmithForm", "Space", "Splitting", "Tube",
    "VanishingCertificate", "betti_numbers", "builtin_complex",
    "companion_matrix", "cover_betti_formula", "cover_betti_oracle",
    "cover_report", "cyclotomic", "cyclotomic_orders", "derive_singer",
    "determinant", "divides", "exact_div", "exceptional_modulus",
    "exceptions", "field_from_string", "fox_derivative", "gt_decomposition",
    "homology_decompositions", "homology_module", "laurent_degree",
    "laurent_divmod", "laurent_gcd", "p_power_equivalence", "parse_complex",
    "parse_presentation", "presentation_to_complex",
    "rank_over_fraction_field", "scalar_rank", "singer_bands",
    "smith_normal_form", "split_three_parts", "tensor_to_field", "totient",
    "unit_root_orders", "vanishing_certificate",
]
