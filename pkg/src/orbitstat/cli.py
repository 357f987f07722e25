"""Command line front end.

Subcommands:

* factor    factor a polynomial and show its block structure
* necklace  irreducible counts and the weighted count identity
* eval      coset statistics of one polynomial (formula, symbolic, oracle)
* ensemble  accumulate a statistic over all monic polynomials of a degree
* young     closed-form and enumerated statistics of a block coset
* verify    run the cross-validation battery

All quantities are exact rationals; text output appends a 6-place decimal for
non-integers and JSON carries numerator and denominator.  Output is byte
identical from run to run unless --timing is given.  Exit status is 0 on
success, 1 on errors or on any disagreement between routes.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction

from .charpoly import CharPoly
from .division_algebra import DEFAULT_TERM_CAP
from .finite_field import format_field_spec, parse_field_spec
from .frobenius_stats import (
    DEFAULT_ENUM_CAP,
    chi_formula,
    chi_of_f,
    chi_oracle,
    ensemble_sum,
    parse_predicate,
)
from .polynomial import factor, format_poly, necklace_check, parse_poly
from .symmetric import DEFAULT_GROUP_CAP, CosetSpec, MultiIndex
from .verify import CHECK_NAMES, run_all
from .young_stats import (
    coset_bruteforce,
    coset_histogram,
    count_cycle_type_in_coset,
    expected_binom_on_coset,
)


def _decimal6(fr: Fraction) -> str:
    """Round-half-up 6-place decimal, in integer arithmetic."""
    sign = "-" if fr < 0 else ""
    a = abs(fr)
    scaled = (a.numerator * 10 ** 6 + a.denominator // 2) // a.denominator
    digits = f"{scaled:07d}"
    return f"{sign}{digits[:-6]}.{digits[-6:]}"


def _frac_text(value) -> str:
    fr = Fraction(value)
    if fr.denominator == 1:
        return str(fr.numerator)
    return f"{fr} ({_decimal6(fr)})"


def _frac_json(value) -> dict:
    fr = Fraction(value)
    return {"num": fr.numerator, "den": fr.denominator, "decimal": _decimal6(fr)}


def _ctx(args):
    spec = f"q={args.q}"
    if args.mod:
        spec += f";mod={args.mod}"
    return parse_field_spec(spec)


def _stat(args) -> CharPoly:
    if args.mu is not None:
        return CharPoly.binom(MultiIndex.parse(args.mu))
    return CharPoly.parse(args.stat)


# ---------------------------------------------------------------------------
# Handlers: each returns (exit_code, json_payload, text_lines)
# ---------------------------------------------------------------------------

def cmd_factor(args):
    ctx = _ctx(args)
    f = parse_poly(args.poly, ctx)
    fac = factor(f)
    spec = CosetSpec(tuple((p.degree, r) for p, r in fac.factors))
    lines = [
        f"field = {format_field_spec(ctx)}",
        f"f = {format_poly(f)}",
        f"factorization = {fac}",
    ]
    for p, r in fac.factors:
        lines.append(f"  {format_poly(p)}  degree={p.degree} multiplicity={r}")
    lines.append(f"blocks = {spec}")
    lines.append(f"squarefree = {'yes' if fac.is_squarefree else 'no'}")
    payload = {
        "field": format_field_spec(ctx),
        "f": format_poly(f),
        "unit": str(fac.unit),
        "factors": [
            {"poly": format_poly(p), "degree": p.degree, "multiplicity": r}
            for p, r in fac.factors
        ],
        "blocks": str(spec),
        "squarefree": fac.is_squarefree,
    }
    return 0, payload, lines


def cmd_necklace(args):
    ctx = _ctx(args)
    rows = []
    lines = [f"field = {format_field_spec(ctx)}"]
    all_ok = True
    for k in range(1, args.kmax + 1):
        res = necklace_check(k, ctx)
        ok = res.equal
        all_ok = all_ok and ok
        rows.append(
            {"k": k, "weighted_sum": res.lhs, "q_pow_k": res.rhs, "ok": ok}
        )
        lines.append(
            f"k={k} weighted_sum={res.lhs} q^k={res.rhs} {'ok' if ok else 'FAIL'}"
        )
    lines.append("identity = " + ("ok" if all_ok else "FAIL"))
    payload = {"field": format_field_spec(ctx), "rows": rows, "all_ok": all_ok}
    return (0 if all_ok else 1), payload, lines


def cmd_eval(args):
    ctx = _ctx(args)
    f = parse_poly(args.poly, ctx)
    P = _stat(args)
    values: dict[str, Fraction] = {}
    if args.method in ("formula", "both"):
        values["formula"] = chi_of_f(f, P)
    if args.method == "symbolic":
        values["symbolic"] = sum(
            (
                c * chi_formula(f, mu, "symbolic", args.cap_terms)
                for mu, c in P.terms.items()
            ),
            Fraction(0),
        )
    if args.method in ("oracle", "both"):
        values["oracle"] = chi_oracle(f, P, args.cap_group)
    lines = [
        f"field = {format_field_spec(ctx)}",
        f"f = {format_poly(f)}",
        f"stat = {P}",
    ]
    payload = {
        "field": format_field_spec(ctx),
        "f": format_poly(f),
        "stat": str(P),
        "values": {},
    }
    for name, val in values.items():
        lines.append(f"{name} = {_frac_text(val)}")
        payload["values"][name] = _frac_json(val)
    code = 0
    if args.method == "both":
        agree = values["formula"] == values["oracle"]
        lines.append(f"agree = {'yes' if agree else 'NO'}")
        payload["agree"] = agree
        code = 0 if agree else 1
    return code, payload, lines


def cmd_ensemble(args):
    ctx = _ctx(args)
    P = _stat(args)
    predicate = parse_predicate(args.filter)
    total, count = ensemble_sum(
        args.d, ctx, P, predicate, cap=args.cap_enum, threads=args.threads
    )
    scaled = Fraction(total) / ctx.q ** args.d
    lines = [
        f"field = {format_field_spec(ctx)}",
        f"d = {args.d}",
        f"stat = {P}",
        f"filter = {args.filter}",
        f"sum = {_frac_text(total)}",
        f"count = {count}",
    ]
    payload = {
        "field": format_field_spec(ctx),
        "d": args.d,
        "stat": str(P),
        "filter": args.filter,
        "sum": _frac_json(total),
        "count": count,
    }
    if count:
        mean = Fraction(total) / count
        lines.append(f"mean = {_frac_text(mean)}")
        payload["mean"] = _frac_json(mean)
    else:
        lines.append("mean = n/a")
        payload["mean"] = None
    lines.append(f"scaled = {_frac_text(scaled)}")
    payload["scaled"] = _frac_json(scaled)
    return 0, payload, lines


def cmd_young(args):
    spec = CosetSpec.parse(args.blocks)
    lines = [f"blocks = {spec}", f"n = {spec.n}", f"order_h = {spec.order_h()}"]
    payload = {"blocks": str(spec), "n": spec.n, "order_h": spec.order_h()}
    if args.histogram:
        hist = coset_histogram(spec, args.cap_group, args.threads)
        payload["histogram"] = []
        for ct in sorted(hist):
            lines.append(f"{ct}  {hist[ct]}")
            payload["histogram"].append(
                {"cycle_type": str(ct), "count": hist[ct]}
            )
        return 0, payload, lines
    mu = MultiIndex.parse(args.mu)
    lines.append(f"mu = {mu}")
    payload["mu"] = str(mu)
    values: dict[str, Fraction] = {}
    if args.method in ("formula", "both"):
        values["formula"] = expected_binom_on_coset(spec, mu)
    if args.method in ("oracle", "both"):
        values["oracle"] = coset_bruteforce(spec, mu, args.cap_group, args.threads)[0]
    payload["values"] = {}
    for name, val in values.items():
        lines.append(f"{name} = {_frac_text(val)}")
        payload["values"][name] = _frac_json(val)
    code = 0
    if args.method == "both":
        agree = values["formula"] == values["oracle"]
        lines.append(f"agree = {'yes' if agree else 'NO'}")
        payload["agree"] = agree
        code = 0 if agree else 1
    if mu.norm == spec.n:
        cnt = count_cycle_type_in_coset(spec, mu)
        lines.append(f"class_count = {cnt}")
        payload["class_count"] = cnt
    return code, payload, lines


def cmd_verify(args):
    names = CHECK_NAMES if args.checks == "all" else tuple(args.checks.split(","))
    results = run_all(quick=args.quick, names=names)
    lines = [str(r) for r in results]
    failures = sum(1 for r in results if not r.ok)
    lines.append("all ok" if failures == 0 else f"{failures} check(s) failed")
    payload = {
        "checks": [
            {"name": r.name, "ok": r.ok, "detail": r.detail} for r in results
        ],
        "all_ok": failures == 0,
    }
    return (0 if failures == 0 else 1), payload, lines


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------

def _add_common(p, field=True):
    if field:
        p.add_argument(
            "--q",
            required=True,
            help="field size: a prime, p^e, or a prime power like 8",
        )
        p.add_argument(
            "--mod",
            help="modulus coefficients [c0,...,1], constant first (extensions only)",
        )
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument(
        "--timing",
        action="store_true",
        help="append elapsed wall time (omitted by default for reproducible output)",
    )


def _add_stat_group(p):
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--mu", help="cycle-count multi-index, e.g. 2:1 or 1:2,3:1")
    g.add_argument("--stat", help="statistic expression, e.g. 'X1 + 2*binom(2:1)'")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="orbitstat",
        description="Exact cycle statistics of polynomial factorizations "
        "over finite fields.",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("factor", help="factor a polynomial")
    p.add_argument("poly", help="polynomial, e.g. 't^4+t' or '[0,1,0,0,1]'")
    _add_common(p)

    p = sub.add_parser("necklace", help="irreducible counts and the count identity")
    p.add_argument("--kmax", type=int, default=8, help="largest degree checked")
    _add_common(p)

    p = sub.add_parser("eval", help="coset statistics of one polynomial")
    p.add_argument("poly", help="monic polynomial")
    _add_stat_group(p)
    p.add_argument(
        "--method",
        choices=("formula", "symbolic", "oracle", "both"),
        default="formula",
        help="both compares formula against oracle and fails on disagreement",
    )
    p.add_argument("--cap-group", type=int, default=DEFAULT_GROUP_CAP)
    p.add_argument("--cap-terms", type=int, default=DEFAULT_TERM_CAP)
    _add_common(p)

    p = sub.add_parser("ensemble", help="sum a statistic over monic polynomials")
    p.add_argument("--d", type=int, required=True, help="degree of the ensemble")
    _add_stat_group(p)
    p.add_argument(
        "--filter",
        default="all",
        help="all, squarefree, or maxmult=m",
    )
    p.add_argument("--cap-enum", type=int, default=DEFAULT_ENUM_CAP)
    p.add_argument("--threads", type=int, default=1)
    _add_common(p)

    p = sub.add_parser("young", help="statistics of a block coset")
    p.add_argument("--blocks", required=True, help="block spec, e.g. 1^2,2^1")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--mu", help="cycle-count multi-index")
    g.add_argument(
        "--histogram", action="store_true", help="enumerate the cycle-type histogram"
    )
    p.add_argument(
        "--method", choices=("formula", "oracle", "both"), default="formula"
    )
    p.add_argument("--cap-group", type=int, default=DEFAULT_GROUP_CAP)
    p.add_argument("--threads", type=int, default=1)
    _add_common(p, field=False)

    p = sub.add_parser("verify", help="run the cross-validation battery")
    p.add_argument("--quick", action="store_true", help="reduced scales")
    p.add_argument(
        "--checks",
        default="all",
        help="comma-separated check names, or all: " + ", ".join(CHECK_NAMES),
    )
    _add_common(p, field=False)

    return ap


_HANDLERS = {
    "factor": cmd_factor,
    "necklace": cmd_necklace,
    "eval": cmd_eval,
    "ensemble": cmd_ensemble,
    "young": cmd_young,
    "verify": cmd_verify,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    t0 = time.perf_counter()
    try:
        code, payload, lines = _HANDLERS[args.command](args)
    except (ValueError, ArithmeticError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    if args.timing:
        elapsed = time.perf_counter() - t0
        payload["elapsed_s"] = round(elapsed, 3)
        lines.append(f"elapsed = {elapsed:.3f}s")
    if args.format == "json":
        print(json.dumps(payload, indent=2))
    else:
        for line in lines:
            print(line)
    return code


if __name__ == "__main__":
    sys.exit(main())
