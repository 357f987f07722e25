"""Cross-validation battery pairing each closed form with a brute-force route.

Every check here compares two or three independently implemented ways of
computing the same quantity and demands exact equality of rationals.  The
default scales are the ones the acceptance suite runs at; smaller scales are
available through keyword arguments (the CLI exposes a quick preset).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterator, Sequence

from .charpoly import (
    CharPoly,
    binom_eval,
    g_series_identity_check,
    sn_expectation_closed,
)
from .division_algebra import expectation_epsilon, expectation_epsilon_oracle
from .finite_field import FieldCtx, make_field, prime_power
from .frobenius_stats import chi_formula, chi_oracle, sigma_structure, xk_of_f
from .polynomial import (
    Poly,
    count_irreducibles,
    divisors,
    enumerate_monic,
    factor,
    necklace_check,
)
from .symmetric import (
    CosetSpec,
    MultiIndex,
    cycle_type,
    enumerate_h_structured,
    enumerate_sn,
    m_projection,
    multi_indices_up_to,
    partitions,
    structured_to_permutation,
)
from .young_stats import (
    coset_histogram,
    count_cycle_type_in_coset,
    expected_binom_on_coset,
)

DEFAULT_H_CAP = 10 ** 4

_F1 = Fraction(1)


@dataclass(frozen=True)
class CheckResult:
    name: str
    ok: bool
    detail: str

    def __str__(self):
        return f"[{'ok' if self.ok else 'FAIL'}] {self.name}: {self.detail}"


def _field(q: int) -> FieldCtx:
    p, e = prime_power(q)
    return make_field(p, e)


def _blocks_from(remaining: int, lowest: tuple[int, int]) -> Iterator[tuple]:
    if remaining == 0:
        yield ()
        return
    for d in range(1, remaining + 1):
        for r in range(1, remaining // d + 1):
            if (d, r) < lowest:
                continue
            for rest in _blocks_from(remaining - d * r, (d, r)):
                yield ((d, r),) + rest


def enumerate_coset_specs(nmax: int, h_cap: int = DEFAULT_H_CAP) -> Iterator[CosetSpec]:
    """All block multisets with 1 <= sum(d*r) <= nmax and |H| <= h_cap."""
    for n in range(1, nmax + 1):
        for blocks in _blocks_from(n, (1, 1)):
            spec = CosetSpec(blocks)
            if spec.order_h() <= h_cap:
                yield spec


@lru_cache(maxsize=None)
def _ensemble_specs(ctx: FieldCtx, d: int) -> tuple[CosetSpec, ...]:
    """Block structure of every monic degree-d polynomial, factored once."""
    return tuple(sigma_structure(f).spec for f in enumerate_monic(d, ctx))


# ---------------------------------------------------------------------------
# The checks, in the order the acceptance suite runs them
# ---------------------------------------------------------------------------

def check_necklace(qs: Sequence[int] = (2, 3, 4, 5), kmax: int = 8) -> CheckResult:
    """Sum of d * (number of irreducibles of degree d) over d | k equals q^k,
    with the irreducible counts coming from the product sieve."""
    bad = []
    n = 0
    for q in qs:
        ctx = _field(q)
        for k in range(1, kmax + 1):
            res = necklace_check(k, ctx)
            n += 1
            if not res.equal:
                bad.append((q, k, res.lhs, res.rhs))
    if bad:
        return CheckResult("necklace-count", False, f"failed at {bad}")
    return CheckResult(
        "necklace-count", True, f"{n} count identities hold for q in {tuple(qs)}, k <= {kmax}"
    )


def check_equal_expectations(qs: Sequence[int] = (2, 3), dmax: int = 6) -> CheckResult:
    """Mean of binom(X, mu) over monic degree-d polynomials equals the S_d
    mean, and also the S_d mean rescaled by necklace factors (each forced to 1
    by the count identity, but computed from the sieve, not assumed)."""
    bad = []
    n = 0
    for q in qs:
        ctx = _field(q)
        for d in range(1, dmax + 1):
            specs = _ensemble_specs(ctx, d)
            for mu in multi_indices_up_to(d):
                ens = sum(expected_binom_on_coset(s, mu) for s in specs) / q ** d
                sym = sn_expectation_closed(mu, d)
                prod_form = sym
                for k, m in mu.items():
                    necklace = Fraction(
                        sum(dd * count_irreducibles(dd, ctx) for dd in divisors(k)),
                        q ** k,
                    )
                    prod_form *= necklace ** m
                n += 1
                if not ens == sym == prod_form:
                    bad.append((q, d, str(mu), ens, sym, prod_form))
    if bad:
        return CheckResult("equal-expectation", False, f"mismatches: {bad[:3]}")
    return CheckResult(
        "equal-expectation",
        True,
        f"{n} means agree across ensemble, symmetric-group, and product routes",
    )


def check_chi_routes(
    scales: Sequence[tuple[int, int]] = ((2, 5), (3, 4))
) -> CheckResult:
    """Coset statistics of each f: factored closed form == symbolic expansion
    == direct coset average, for every monic f and every mu up to its degree."""
    bad = []
    n = 0
    for q, dmax in scales:
        ctx = _field(q)
        for d in range(1, dmax + 1):
            for f in enumerate_monic(d, ctx):
                for mu in multi_indices_up_to(d):
                    a = chi_formula(f, mu)
                    b = chi_formula(f, mu, method="symbolic")
                    c = chi_oracle(f, CharPoly.binom(mu))
                    n += 1
                    if not a == b == c:
                        bad.append((q, str(f), str(mu), a, b, c))
    if bad:
        return CheckResult("chi-routes", False, f"mismatches: {bad[:3]}")
    return CheckResult(
        "chi-routes", True, f"{n} (f, mu) pairs agree across all three routes"
    )


def check_coset_statistics(nmax: int = 8, h_cap: int = DEFAULT_H_CAP) -> CheckResult:
    """For every block spec: the closed-form coset mean of binom(X, mu)
    matches the enumerated histogram, and for |mu| = n the closed-form class
    counts are non-negative integers matching the histogram and summing to |H|.
    """
    bad = []
    nspecs = 0
    n = 0
    for spec in enumerate_coset_specs(nmax, h_cap):
        hist = coset_histogram(spec)
        order = spec.order_h()
        nspecs += 1
        for mu in multi_indices_up_to(spec.n):
            closed = expected_binom_on_coset(spec, mu)
            brute = Fraction(
                sum(cnt * binom_eval(mu, ct) for ct, cnt in hist.items()), order
            )
            n += 1
            if closed != brute:
                bad.append(("mean", str(spec), str(mu), closed, brute))
        total = 0
        for mu in partitions(spec.n):
            try:
                cnt = count_cycle_type_in_coset(spec, mu)
            except ArithmeticError as exc:
                bad.append(("count", str(spec), str(mu), str(exc)))
                continue
            n += 1
            if cnt != hist.get(mu, 0):
                bad.append(("count", str(spec), str(mu), cnt, hist.get(mu, 0)))
            total += cnt
        if total != order:
            bad.append(("total", str(spec), total, order))
    if bad:
        return CheckResult("coset-statistics", False, f"mismatches: {bad[:3]}")
    return CheckResult(
        "coset-statistics",
        True,
        f"{n} statistics verified against full enumeration of {nspecs} specs",
    )


def check_sym_expectation(rmax: int = 8) -> CheckResult:
    """Closed S_r mean of binom(X, mu) against a one-pass group enumeration,
    including mu just past r where both sides must vanish."""
    bad = []
    n = 0
    for r in range(1, rmax + 1):
        hist: dict[MultiIndex, int] = {}
        for sigma in enumerate_sn(r):
            ct = sigma.cycle_type()
            hist[ct] = hist.get(ct, 0) + 1
        order = math.factorial(r)
        for mu in multi_indices_up_to(r + 1):
            closed = sn_expectation_closed(mu, r)
            brute = Fraction(
                sum(cnt * binom_eval(mu, ct) for ct, cnt in hist.items()), order
            )
            n += 1
            if closed != brute:
                bad.append((r, str(mu), closed, brute))
    if bad:
        return CheckResult("sym-expectation", False, f"mismatches: {bad[:3]}")
    return CheckResult("sym-expectation", True, f"{n} means agree for r <= {rmax}")


def check_projection_measure(nmax: int = 8, h_cap: int = DEFAULT_H_CAP) -> CheckResult:
    """Cycle counts of tau*h decompose through the block projections, and the
    projection tuple map is exactly |H| / prod(r_i!) to one."""
    bad = []
    nspecs = 0
    for spec in enumerate_coset_specs(nmax, h_cap):
        blocks = spec.blocks
        tau = spec.tau()
        order = spec.order_h()
        image_size = 1
        for _, r in blocks:
            image_size *= math.factorial(r)
        fiber = order // image_size
        seen: dict[tuple, int] = {}
        nspecs += 1
        for h in enumerate_h_structured(spec):
            perm = structured_to_permutation(spec, h)
            ct = cycle_type(tau * perm)
            ms = tuple(m_projection(h, spec, i) for i in range(len(blocks)))
            mcts = [cycle_type(m) for m in ms]
            for k in range(1, spec.n + 1):
                rhs = sum(
                    mcts[i].get(k // d)
                    for i, (d, _) in enumerate(blocks)
                    if k % d == 0
                )
                if ct.get(k) != rhs:
                    bad.append(("cycles", str(spec), k, ct.get(k), rhs))
            seen[ms] = seen.get(ms, 0) + 1
        if len(seen) != image_size or set(seen.values()) != {fiber}:
            bad.append(("fibers", str(spec), len(seen), sorted(set(seen.values()))))
    if bad:
        return CheckResult("projection-measure", False, f"mismatches: {bad[:3]}")
    return CheckResult(
        "projection-measure",
        True,
        f"cycle decomposition and uniform fibers hold for {nspecs} specs",
    )


def check_generating_series(
    dmax: int = 3, rmax: int = 6, t_cap: int = 6
) -> CheckResult:
    """Averaged cycle-index series equals the truncated exponential, and
    collapsing the nilpotents reproduces the closed S_r means."""
    bad = [
        (d, r)
        for d in range(1, dmax + 1)
        for r in range(1, rmax + 1)
        if not g_series_identity_check(d, r, t_cap)
    ]
    if bad:
        return CheckResult("generating-series", False, f"failed at {bad}")
    return CheckResult(
        "generating-series",
        True,
        f"identity holds for d <= {dmax}, r <= {rmax}, weight cap {t_cap}",
    )


def check_divisor_average(qs: Sequence[int] = (2, 3), nmax: int = 4) -> CheckResult:
    """Mean of the divisibility symbol of g over monic degree-n polynomials:
    1/q^deg(g) when deg(g) <= n, else 0, versus direct enumeration."""
    bad = []
    n = 0
    for q in qs:
        ctx = _field(q)
        for deg_f in range(0, nmax + 1):
            for deg_g in range(0, deg_f + 2):
                for g in enumerate_monic(deg_g, ctx):
                    closed = expectation_epsilon(g, deg_f)
                    brute = expectation_epsilon_oracle(g, deg_f)
                    n += 1
                    if closed != brute:
                        bad.append((q, str(g), deg_f, closed, brute))
    if bad:
        return CheckResult("divisor-average", False, f"mismatches: {bad[:3]}")
    return CheckResult(
        "divisor-average", True, f"{n} symbol means agree for q in {tuple(qs)}, n <= {nmax}"
    )


def check_known_values(
    qs: Sequence[int] = (2, 3, 4, 5),
    squarefree_scales: Sequence[tuple[int, int]] = ((2, 5), (3, 4)),
) -> CheckResult:
    """Hand-computable anchors: the double root t^2 has mean 2-cycle count 1/2
    and mean fixed-point count 1 over every field, and on square-free f the
    statistics are integers counting factor selections."""
    bad = []
    n = 0
    mu1 = MultiIndex.from_dict({1: 1})
    mu2 = MultiIndex.from_dict({2: 1})
    for q in qs:
        ctx = _field(q)
        f = Poly.x(ctx) ** 2
        values = (
            (chi_formula(f, mu2), Fraction(1, 2)),
            (chi_formula(f, mu1), _F1),
            (xk_of_f(f, 2), Fraction(1, 2)),
            (xk_of_f(f, 1), _F1),
        )
        for got, want in values:
            n += 1
            if got != want:
                bad.append((q, "t^2", got, want))
    for q, dmax in squarefree_scales:
        ctx = _field(q)
        for d in range(1, dmax + 1):
            for f in enumerate_monic(d, ctx):
                fac = factor(f)
                if not fac.is_squarefree:
                    continue
                by_degree: dict[int, int] = {}
                for p, _ in fac.factors:
                    by_degree[p.degree] = by_degree.get(p.degree, 0) + 1
                for mu in multi_indices_up_to(d):
                    want = 1
                    for k, m in mu.items():
                        want *= math.comb(by_degree.get(k, 0), m)
                    got = chi_formula(f, mu)
                    n += 1
                    if got != want:
                        bad.append((q, str(f), str(mu), got, want))
    if bad:
        return CheckResult("known-values", False, f"mismatches: {bad[:3]}")
    return CheckResult("known-values", True, f"{n} frozen values reproduced")


def check_stabilization(qs: Sequence[int] = (2, 3), dmax: int = 6) -> CheckResult:
    """The degree-d ensemble mean of binom(X, mu) is the same rational for
    every d from |mu| up to dmax."""
    bad = []
    n = 0
    for q in qs:
        ctx = _field(q)
        for mu in multi_indices_up_to(dmax):
            if mu.norm == 0:
                continue
            vals = []
            for d in range(mu.norm, dmax + 1):
                specs = _ensemble_specs(ctx, d)
                vals.append(sum(expected_binom_on_coset(s, mu) for s in specs) / q ** d)
            n += 1
            if len(set(vals)) != 1:
                bad.append((q, str(mu), vals))
    if bad:
        return CheckResult("stabilization", False, f"non-constant: {bad[:3]}")
    return CheckResult(
        "stabilization",
        True,
        f"{n} statistics constant in degree for q in {tuple(qs)}, d <= {dmax}",
    )


_QUICK = {
    "necklace-count": lambda: check_necklace(qs=(2, 3), kmax=5),
    "equal-expectation": lambda: check_equal_expectations(dmax=4),
    "chi-routes": lambda: check_chi_routes(scales=((2, 3), (3, 2))),
    "coset-statistics": lambda: check_coset_statistics(nmax=5),
    "sym-expectation": lambda: check_sym_expectation(rmax=5),
    "projection-measure": lambda: check_projection_measure(nmax=5),
    "generating-series": lambda: check_generating_series(dmax=2, rmax=4, t_cap=4),
    "divisor-average": lambda: check_divisor_average(nmax=3),
    "known-values": lambda: check_known_values(squarefree_scales=((2, 4), (3, 3))),
    "stabilization": lambda: check_stabilization(dmax=4),
}

_FULL = {
    "necklace-count": check_necklace,
    "equal-expectation": check_equal_expectations,
    "chi-routes": check_chi_routes,
    "coset-statistics": check_coset_statistics,
    "sym-expectation": check_sym_expectation,
    "projection-measure": check_projection_measure,
    "generating-series": check_generating_series,
    "divisor-average": check_divisor_average,
    "known-values": check_known_values,
    "stabilization": check_stabilization,
}

CHECK_NAMES = tuple(_FULL)


def run_all(quick: bool = False, names: Sequence[str] = CHECK_NAMES) -> list[CheckResult]:
    table = _QUICK if quick else _FULL
    out = []
    for name in names:
        if name not in table:
            raise ValueError(f"unknown check {name!r}; choose from {CHECK_NAMES}")
        out.append(table[name]())
    return out
