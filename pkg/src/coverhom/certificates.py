"""Vanishing certificates for cyclic-cover homology.

The structure result this module implements: split H_k(X; R) into a free
part, torsion divisible by t - 1, and torsion coprime to t - 1.  The free
and (t-1)-divisible parts behave the same way in every cover, so whether
H_k(X_d; F) vanishes can only depend on d through roots of unity dividing
the coprime-part divisors.  Collecting the orders of those roots of unity
at degrees k and k-1 into a modulus m, every d with gcd(d, m) = 1 satisfies

    H_k(X_d; F) = 0  if and only if  H_k(X_1; F) = 0.

Certificates always carry oracle verification: every claimed d is checked
against brute-force cover Betti numbers, and a failed check raises rather
than producing a weakened certificate.

The character-p companion: over F_p with d = p^r the binomial theorem gives
t^{p^r} - 1 = (t - 1)^{p^r}, whose only root is 1, and the same vanishing
equivalence holds with no coprimality hypothesis at all.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .complexes import ChainComplexOverR
from .covers import cover_report
from .exceptions import FieldMismatchError, OracleMismatchError, UnsupportedFieldError
from .fields import Field
from .homology import ModuleDecomposition, homology_decompositions
from .laurent import LaurentPoly, cyclotomic_orders


def split_three_parts(dec: ModuleDecomposition):
    """Partition a decomposition as (free rank, (t-1)-divisible divisors,
    divisors coprime to t-1).

    Since t - 1 is irreducible, a divisor is coprime to it exactly when 1
    is not a root, so the split is a single evaluation per divisor.
    """
    F = dec.field
    one = F.one()
    q_list, p_list = [], []
    for q in dec.divisors:
        if F.is_zero(q.evaluate(one)):
            q_list.append(q)
        else:
            p_list.append(q)
    return dec.free_rank, q_list, p_list


def unit_root_orders(dec: ModuleDecomposition) -> frozenset:
    """Orders of the roots of unity among roots of the coprime-part divisors.

    Only orders >= 2 can occur: an order-1 root would mean t - 1 divides a
    divisor from the coprime part.
    """
    _, _, p_list = split_three_parts(dec)
    orders: set[int] = set()
    for q in p_list:
        orders |= cyclotomic_orders(q)
    assert 1 not in orders
    return frozenset(orders)


def exceptional_modulus(dec_k: ModuleDecomposition,
                        dec_km1: ModuleDecomposition) -> int:
    """Product of the distinct root-of-unity orders at degrees k and k-1.

    Returns 1 when no divisor has a cyclotomic factor; any d coprime to the
    result avoids every exceptional cover degree for H_k.
    """
    if dec_k.field.char != 0:
        raise UnsupportedFieldError(
            "exceptional modulus needs characteristic 0 root-of-unity analysis")
    dec_k.field.require_same(dec_km1.field)
    orders = unit_root_orders(dec_k) | unit_root_orders(dec_km1)
    m = 1
    for k in sorted(orders):
        m *= k
    return m


@dataclass(frozen=True)
class CoverCheck:
    """One oracle-verified cover degree: b_k(X_d) and whether the vanishing
    biconditional held."""

    d: int
    cover_betti: int
    equivalent: bool

    def to_json(self) -> dict:
        return {"d": self.d, "cover_betti": self.cover_betti,
                "equivalent": self.equivalent}


@dataclass(frozen=True)
class VanishingCertificate:
    """Verified record of where H_k(X_d; F) vanishing matches the base space.

    verified holds every checked d coprime to the modulus (these must all be
    equivalent, or the certificate construction raises); witnesses holds
    non-coprime d where the biconditional actually failed, demonstrating the
    coprimality hypothesis is doing work.
    """

    degree: int
    base_vanishes: bool
    modulus: int
    orders_k: frozenset
    orders_km1: frozenset
    verified: tuple[CoverCheck, ...]
    witnesses: tuple[CoverCheck, ...]

    def to_json(self) -> dict:
        return {
            "k": self.degree,
            "base_vanishes": self.base_vanishes,
            "modulus": self.modulus,
            "orders": {"k_level": sorted(self.orders_k),
                       "km1_level": sorted(self.orders_km1)},
            "verified": [c.to_json() for c in self.verified],
            "witnesses": [c.to_json() for c in self.witnesses],
        }


def _decomposition_at(decs, field: Field, j: int) -> ModuleDecomposition:
    if 0 <= j < len(decs):
        return decs[j]
    return ModuleDecomposition.trivial(field)


def vanishing_certificate(C: ChainComplexOverR, k: int,
                          d_max: int) -> VanishingCertificate:
    """Build and oracle-verify a vanishing certificate for H_k over covers
    of degree up to d_max.

    Every d coprime to the modulus must satisfy the biconditional; a failure
    there is an implementation bug and raises OracleMismatchError.  Failures
    at non-coprime d are expected and recorded as witnesses.
    """
    if k < 0:
        raise ValueError("homological degree must be >= 0")
    if d_max < 1:
        raise ValueError("d_max must be >= 1")
    if C.field.char != 0:
        raise UnsupportedFieldError(
            "vanishing certificates need characteristic 0; "
            "use p_power_equivalence over prime fields")
    decs = homology_decompositions(C)
    dec_k = _decomposition_at(decs, C.field, k)
    dec_km1 = _decomposition_at(decs, C.field, k - 1)
    orders_k = unit_root_orders(dec_k)
    orders_km1 = unit_root_orders(dec_km1)
    m = exceptional_modulus(dec_k, dec_km1)

    def betti_at(d: int) -> int:
        report = cover_report(C, d, decompositions=decs)
        betti = report.betti()
        return betti[k] if k < len(betti) else 0

    base = betti_at(1)
    base_vanishes = base == 0
    verified, witnesses = [], []
    for d in range(1, d_max + 1):
        b = betti_at(d)
        equivalent = (b == 0) == base_vanishes
        if math.gcd(d, m) == 1:
            if not equivalent:
                raise OracleMismatchError(
                    f"vanishing biconditional failed for H_{k} at d={d} with "
                    f"gcd(d, {m}) = 1; this contradicts the structure theory")
            verified.append(CoverCheck(d, b, equivalent))
        elif not equivalent:
            witnesses.append(CoverCheck(d, b, equivalent))
    return VanishingCertificate(degree=k, base_vanishes=base_vanishes,
                                modulus=m, orders_k=orders_k,
                                orders_km1=orders_km1,
                                verified=tuple(verified),
                                witnesses=tuple(witnesses))


@dataclass(frozen=True)
class PPowerReport:
    """Dimensions of H_k over F_p for the base space and its p^r-fold cover."""

    p: int
    r: int
    degree: int
    base_dim: int
    cover_dim: int
    equivalent: bool

    def to_json(self) -> dict:
        return {"p": self.p, "r": self.r, "k": self.degree,
                "base_dim": self.base_dim, "cover_dim": self.cover_dim,
                "equivalent": self.equivalent}


def p_power_equivalence(C: ChainComplexOverR, p: int, r: int,
                        k: int) -> PPowerReport:
    """Check H_k(X_{p^r}; F_p) = 0 <=> H_k(X_1; F_p) = 0 by direct oracle
    computation on both sides."""
    if k < 0:
        raise ValueError("homological degree must be >= 0")
    if r < 1:
        raise ValueError("exponent r must be >= 1")
    if C.field.char != p:
        raise FieldMismatchError(
            f"complex is over characteristic {C.field.char}, not F_{p}")

    def oracle_betti(d: int) -> int:
        report = cover_report(C, d, use_formula=False)
        betti = report.betti()
        return betti[k] if k < len(betti) else 0

    base = oracle_betti(1)
    cover = oracle_betti(p ** r)
    return PPowerReport(p=p, r=r, degree=k, base_dim=base, cover_dim=cover,
                        equivalent=(base == 0) == (cover == 0))
