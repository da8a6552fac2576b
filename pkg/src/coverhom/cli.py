"""Command-line surface: analyses over builtin or JSON-document complexes.

Exit codes: 0 on success, 1 when a verification fails (oracle disagreement,
trace replay failure, failed selftest), 2 for usage or input errors.
"""
from __future__ import annotations

import argparse
import json
import random
import sys

from .certificates import p_power_equivalence, vanishing_certificate
from .complexes import (BUILTIN_NAMES, builtin_complex, parse_complex)
from .corpus import invariant_factors, random_complex
from .covers import cover_report
from .exceptions import (FieldMismatchError, InvalidComplexError,
                         InvalidPresentationError, MissingAxiomError,
                         OracleMismatchError, TraceReplayError,
                         UnsupportedFieldError)
from .fields import QQ, PrimeField, field_from_string
from .homology import homology_decompositions
from .laurent import LaurentPoly
from .propagator import derive_singer
from .rmatrix import RMatrix, smith_normal_form


class UsageError(Exception):
    pass


def _d_values(spec: str) -> list[int]:
    """Parse "6" or "2..8" into a list of cover degrees, all >= 1."""
    try:
        if ".." in spec:
            lo_s, hi_s = spec.split("..")
            lo, hi = int(lo_s), int(hi_s)
            if lo < 1 or hi < lo:
                raise ValueError
            return list(range(lo, hi + 1))
        d = int(spec)
        if d < 1:
            raise ValueError
        return [d]
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"bad degree spec {spec!r}: want a positive integer or a..b")


def _field_arg(s: str):
    try:
        return field_from_string(s)
    except (ValueError, UnsupportedFieldError) as exc:
        raise argparse.ArgumentTypeError(str(exc))


def _load_complex(source: str, field):
    if source in BUILTIN_NAMES:
        return builtin_complex(source, field if field is not None else QQ)
    try:
        with open(source) as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise UsageError(f"cannot read {source}: {exc}")
    except json.JSONDecodeError as exc:
        raise UsageError(f"{source} is not valid JSON: {exc}")
    return parse_complex(doc, field=field)


def _emit(args, doc: dict) -> None:
    if getattr(args, "json", None):
        text = json.dumps(doc, indent=2)
        if args.json == "-":
            print(text)
        else:
            with open(args.json, "w") as fh:
                fh.write(text + "\n")


def cmd_homology(args) -> int:
    C = _load_complex(args.input, args.field)
    decs = homology_decompositions(C)
    if args.degree is not None:
        if not 0 <= args.degree <= C.top_degree:
            raise UsageError(f"degree {args.degree} outside 0..{C.top_degree}")
        decs = {args.degree: decs[args.degree]}
    else:
        decs = dict(enumerate(decs))
    for j, dec in decs.items():
        print(f"H_{j} = {dec}")
    _emit(args, {"field": C.field.name,
                 "homology": {str(j): d.to_json() for j, d in decs.items()}})
    return 0


def cmd_cover(args) -> int:
    C = _load_complex(args.input, args.field)
    use_formula = not args.oracle_only
    use_oracle = not args.formula_only
    decs = homology_decompositions(C) if use_formula else None
    reports = []
    for d in args.d:
        reports.append(cover_report(C, d, use_formula=use_formula,
                                    use_oracle=use_oracle, decompositions=decs))
    for rep in reports:
        betti = list(rep.betti())
        routes = ("both routes agree" if use_formula and use_oracle
                  else "formula route" if use_formula else "oracle route")
        print(f"d={rep.d}: betti={betti}  ({routes})")
    _emit(args, {"reports": [r.to_json() for r in reports]})
    return 0


def cmd_certificate(args) -> int:
    C = _load_complex(args.input, args.field)
    cert = vanishing_certificate(C, args.degree, args.dmax)
    print(f"H_{cert.degree}: base_vanishes={cert.base_vanishes} "
          f"modulus={cert.modulus} "
          f"orders(k)={sorted(cert.orders_k)} "
          f"orders(k-1)={sorted(cert.orders_km1)}")
    print(f"verified (gcd(d, m) = 1): "
          f"d in {[c.d for c in cert.verified]}, all equivalent")
    if cert.witnesses:
        for w in cert.witnesses:
            print(f"witness: d={w.d} shares a factor with m and has "
                  f"b_{cert.degree} = {w.cover_betti} (base "
                  f"{'vanishes' if cert.base_vanishes else 'does not vanish'})")
    else:
        print("witnesses: none in range")
    _emit(args, cert.to_json())
    return 0


def cmd_ppower(args) -> int:
    C = _load_complex(args.input, args.field)
    if not isinstance(C.field, PrimeField):
        raise UsageError("ppower needs a prime field (--field fp:<p> or a "
                         "document over one)")
    if len(args.d) != 1:
        raise UsageError("ppower takes a single --d value")
    d = args.d[0]
    p = C.field.char
    r, m = 0, d
    while m % p == 0:
        m //= p
        r += 1
    if m != 1 or r < 1:
        raise UsageError(f"--d {d} is not a positive power of p = {p}")
    rep = p_power_equivalence(C, p, r, args.degree)
    print(f"H_{rep.degree} over F_{p}: base dim {rep.base_dim}, "
          f"{p}^{r}-cover dim {rep.cover_dim}, "
          f"equivalence {'holds' if rep.equivalent else 'FAILS'}")
    _emit(args, rep.to_json())
    return 0 if rep.equivalent else 1


def cmd_mv_derive(args) -> int:
    axioms = None
    if args.input is not None:
        try:
            with open(args.input) as fh:
                axioms = json.load(fh)
        except OSError as exc:
            raise UsageError(f"cannot read {args.input}: {exc}")
        except json.JSONDecodeError as exc:
            raise UsageError(f"{args.input} is not valid JSON: {exc}")
    trace = derive_singer(args.n, args.d[0] if args.d else 1, axioms=axioms)
    trace.replay()
    concl = sorted(trace.conclusions("Mhat"))
    print(f"n={args.n} d={trace.meta['d']}: derived b_k(Mhat) = 0 "
          f"exactly for k in {concl}")
    print(trace.format_proof())
    _emit(args, trace.to_json())
    return 0


def cmd_oracle_check(args) -> int:
    field = args.field if args.field is not None else QQ
    seed = args.seed if args.seed is not None else random.SystemRandom().getrandbits(64)
    print(f"seed = {seed}  field = {field}  count = {args.count}  "
          f"d = 1..{args.dmax}")
    rng = random.Random(seed)
    for trial in range(args.count):
        C, planted = random_complex(rng, field)
        decs = homology_decompositions(C)
        for j, dec in enumerate(decs):
            want_free, want_divs = planted[j]
            if dec.free_rank != want_free or \
                    list(dec.divisors) != invariant_factors(want_divs):
                raise OracleMismatchError(
                    f"trial {trial}: computed H_{j} = {dec} does not match "
                    f"the planted decomposition")
        for d in range(1, args.dmax + 1):
            cover_report(C, d, decompositions=decs)
    print(f"checked {args.count} random complexes: decompositions match "
          f"planted homology, formula matches oracle for every d")
    _emit(args, {"seed": seed, "field": field.name, "count": args.count,
                 "dmax": args.dmax, "ok": True})
    return 0


def cmd_selftest(args) -> int:
    results = []

    def check(label, ok, detail=""):
        results.append({"label": label, "ok": bool(ok), "detail": detail})
        print(("ok   " if ok else "FAIL ") + label + ("" if ok else f": {detail}"))

    t = LaurentPoly.t_power(QQ, 1)
    one = LaurentPoly.one(QQ)

    decs = {name: homology_decompositions(builtin_complex(name))
            for name in BUILTIN_NAMES}
    check("circle H_0 = R/(t-1)",
          decs["circle"][0].free_rank == 0
          and list(decs["circle"][0].divisors) == [t - one])
    check("wedge2 H_1 = R", decs["wedge2"][1].free_rank == 1
          and not decs["wedge2"][1].divisors)
    check("trefoil H_1 = R/(t^2-t+1)",
          list(decs["trefoil"][1].divisors) == [t * t - t + one])
    check("figure8 H_1 = R/(t^2-3t+1)",
          list(decs["figure8"][1].divisors) == [t * t - t.scale(3) + one])
    check("phi3 H_0 = R/(t^2+t+1)",
          list(decs["phi3"][0].divisors) == [t * t + t + one])

    for name, d, want in (("circle", 4, (1, 1)), ("trefoil", 6, (1, 3, 2)),
                          ("wedge2", 5, (1, 6)), ("phi3", 3, (2, 2))):
        try:
            rep = cover_report(builtin_complex(name), d)
            check(f"{name} d={d} betti={list(want)} (both routes)",
                  rep.betti_formula == want and rep.betti_oracle == want,
                  f"got {rep.betti_formula} / {rep.betti_oracle}")
        except OracleMismatchError as exc:
            check(f"{name} d={d}", False, str(exc))

    for name, k, want_m in (("trefoil", 1, 6), ("figure8", 1, 1), ("phi3", 0, 3)):
        cert = vanishing_certificate(builtin_complex(name), k, 12)
        check(f"{name} modulus m={want_m}", cert.modulus == want_m,
              f"got {cert.modulus}")
    cert = vanishing_certificate(builtin_complex("phi3"), 0, 10)
    check("phi3 witness at d=3 with dim 2",
          any(w.d == 3 and w.cover_betti == 2 for w in cert.witnesses))

    gf3 = field_from_string("fp:3")
    rep = p_power_equivalence(builtin_complex("phi3", gf3), 3, 1, 0)
    check("phi3 over F_3: dims (1, 2), equivalent",
          (rep.base_dim, rep.cover_dim, rep.equivalent) == (1, 2, True),
          f"got {(rep.base_dim, rep.cover_dim, rep.equivalent)}")

    A = RMatrix(QQ, [[t, one], [LaurentPoly.zero(QQ), t - one]])
    U, D, V = smith_normal_form(A)
    check("SNF of [[t,1],[0,t-1]] = diag(1, t-1)",
          U * A * V == D and D[0, 0] == one and D[1, 1] == t - one)

    for n, want in ((4, {0, 1, 3, 4}), (5, {0, 1, 4, 5})):
        tr = derive_singer(n, 2)
        try:
            tr.replay()
            ok = set(tr.conclusions("Mhat")) == want
        except TraceReplayError as exc:
            ok = False
        check(f"singer n={n}: Mhat vanishing {sorted(want)}", ok)

    ok = all(r["ok"] for r in results)
    print(("selftest passed" if ok else "selftest FAILED") +
          f" ({sum(r['ok'] for r in results)}/{len(results)})")
    _emit(args, {"ok": ok, "results": results})
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="coverhom",
        description="Homology of cyclic covers via Laurent-polynomial "
                    "module decompositions, with oracle cross-checks.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, input_required=True):
        if input_required:
            p.add_argument("--input", required=True,
                           help=f"builtin ({', '.join(BUILTIN_NAMES)}) or JSON path")
        p.add_argument("--field", type=_field_arg, default=None,
                       help="q or fp:<prime> (default: q, or the document's field)")
        p.add_argument("--json", metavar="PATH",
                       help="write the JSON report here ('-' for stdout)")

    p = sub.add_parser("homology", help="module decomposition per degree")
    common(p)
    p.add_argument("--degree", type=int, default=None)
    p.set_defaults(func=cmd_homology)

    p = sub.add_parser("cover", help="Betti numbers of d-fold covers")
    common(p)
    p.add_argument("--d", type=_d_values, required=True, metavar="N|A..B")
    route = p.add_mutually_exclusive_group()
    route.add_argument("--formula-only", action="store_true")
    route.add_argument("--oracle-only", action="store_true")
    p.set_defaults(func=cmd_cover)

    p = sub.add_parser("certificate", help="oracle-verified vanishing certificate")
    common(p)
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--dmax", type=int, default=12)
    p.set_defaults(func=cmd_certificate)

    p = sub.add_parser("ppower", help="p-power cover equivalence over F_p")
    common(p)
    p.add_argument("--d", type=_d_values, required=True, metavar="P^R")
    p.add_argument("--degree", type=int, required=True)
    p.set_defaults(func=cmd_ppower)

    p = sub.add_parser("mv-derive", help="symbolic vanishing derivation")
    p.add_argument("--n", type=int, required=True, help="manifold dimension")
    p.add_argument("--d", type=_d_values, default=None, metavar="N")
    p.add_argument("--input", default=None, help="optional axioms JSON")
    p.add_argument("--json", metavar="PATH")
    p.set_defaults(func=cmd_mv_derive)

    p = sub.add_parser("oracle-check", help="random corpus, formula vs oracle")
    p.add_argument("--field", type=_field_arg, default=None)
    p.add_argument("--count", type=int, default=25)
    p.add_argument("--dmax", type=int, default=12)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--json", metavar="PATH")
    p.set_defaults(func=cmd_oracle_check)

    p = sub.add_parser("selftest", help="frozen example checks")
    p.add_argument("--json", metavar="PATH")
    p.set_defaults(func=cmd_selftest)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, InvalidComplexError, InvalidPresentationError,
            FieldMismatchError, UnsupportedFieldError, MissingAxiomError,
            ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (OracleMismatchError, TraceReplayError) as exc:
        print(f"verification failure: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
