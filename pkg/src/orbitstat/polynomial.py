"""Univariate polynomials over F_q: exact arithmetic, deterministic
factorization and irreducible enumeration.

A Poly is an ascending tuple of field elements with no trailing zeros; the
zero polynomial is the empty tuple (degree -1).  Monic polynomials of degree d
are enumerated by counting their lower coefficient vector in base q with the
constant coefficient as the fastest digit, which fixes one canonical order for
everything downstream.  Factorizations sort their factors by (degree, then the
coefficient vector), so output is byte-stable across runs.

The factorization pipeline is deterministic end to end: square-free
decomposition (with p-th-root extraction when the derivative vanishes in
characteristic p), splitting into distinct-degree parts via gcd with t^(q^k)-t,
then trial division against the enumerated irreducibles of the right degree.
No randomized splitting is used anywhere.

Irreducible enumeration runs a product sieve over all q^d monic polynomials:
every product of a lower-degree irreducible with a monic cofactor is marked,
and the survivors are exactly the irreducibles.  The sieve is memoized per
(field, degree) and refuses q^d > ENUMERATION_LIMIT.
"""

from __future__ import annotations

import re
import threading
from dataclasses import dataclass
from typing import Callable, Iterator

from .errors import CapExceeded
from .finite_field import (
    FieldCtx,
    FieldElement,
    _fp_mod,
    _fp_mul,
    prime_factors,
)

ENUMERATION_LIMIT = 10 ** 7
_TABLE_LIMIT = 256  # build full q x q scalar tables only for small extensions


class Poly:
    """A polynomial over a fixed F_q; immutable by convention."""

    __slots__ = ("ctx", "coeffs")

    def __init__(self, ctx: FieldCtx, coeffs=()):
        items = []
        for c in coeffs:
            if isinstance(c, int):
                c = ctx.from_int(c)
            elif isinstance(c, FieldElement):
                if c.ctx != ctx:
                    raise ValueError("coefficient from a different field")
            else:
                raise TypeError(f"bad coefficient {c!r}")
            items.append(c)
        while items and items[-1].is_zero:
            items.pop()
        self.ctx = ctx
        self.coeffs = tuple(items)

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, ctx: FieldCtx) -> "Poly":
        return cls(ctx)

    @classmethod
    def one(cls, ctx: FieldCtx) -> "Poly":
        return cls(ctx, (ctx.one(),))

    @classmethod
    def x(cls, ctx: FieldCtx) -> "Poly":
        return cls(ctx, (ctx.zero(), ctx.one()))

    @classmethod
    def constant(cls, ctx: FieldCtx, value) -> "Poly":
        return cls(ctx, (value,))

    # -- structure ----------------------------------------------------------

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == self.ctx.one()

    @property
    def leading(self) -> FieldElement:
        if not self.coeffs:
            raise ValueError("the zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def __eq__(self, other):
        return (
            isinstance(other, Poly)
            and self.ctx == other.ctx
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.ctx, self.coeffs))

    def __bool__(self):
        return not self.is_zero

    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f"Poly({format_poly(self)!r}, {self.ctx!r})"

    # -- arithmetic ---------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, Poly):
            if other.ctx != self.ctx:
                raise ValueError("polynomials over different fields")
            return other
        if isinstance(other, (FieldElement, int)):
            if isinstance(other, FieldElement) and other.ctx != self.ctx:
                raise ValueError("polynomials over different fields")
            return Poly(self.ctx, (other,))
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return Poly(self.ctx, out)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        n = max(len(self.coeffs), len(other.coeffs))
        zero = self.ctx.zero()
        out = []
        for i in range(n):
            x = self.coeffs[i] if i < len(self.coeffs) else zero
            y = other.coeffs[i] if i < len(other.coeffs) else zero
            out.append(x - y)
        return Poly(self.ctx, out)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other - self

    def __neg__(self):
        return Poly(self.ctx, tuple(-c for c in self.coeffs))

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.is_zero or other.is_zero:
            return Poly(self.ctx)
        zero = self.ctx.zero()
        out = [zero] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a.is_zero:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return Poly(self.ctx, out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            raise ValueError("negative polynomial exponent")
        result = Poly.one(self.ctx)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __divmod__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if other.is_zero:
            raise ZeroDivisionError("division by the zero polynomial")
        if self.degree < other.degree:
            return Poly(self.ctx), self
        rem = list(self.coeffs)
        inv_lead = other.leading.inverse()
        shift = len(rem) - len(other.coeffs)
        quot = [self.ctx.zero()] * (shift + 1)
        for i in range(shift, -1, -1):
            c = rem[i + other.degree] * inv_lead
            if not c.is_zero:
                quot[i] = c
                for j, b in enumerate(other.coeffs):
                    rem[i + j] = rem[i + j] - c * b
        return Poly(self.ctx, quot), Poly(self.ctx, rem)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    # -- assorted helpers ---------------------------------------------------

    def monic(self) -> "Poly":
        if self.is_zero or self.is_monic:
            return self
        return self * self.leading.inverse()

    def derivative(self) -> "Poly":
        return Poly(
            self.ctx,
            tuple(c * i for i, c in enumerate(self.coeffs) if i > 0),
        )

    def evaluate(self, point) -> FieldElement:
        if isinstance(point, int):
            point = self.ctx.from_int(point)
        acc = self.ctx.zero()
        for c in reversed(self.coeffs):
            acc = acc * point + c
        return acc

    def divides(self, other: "Poly") -> bool:
        return (other % self).is_zero


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd; gcd(0, 0) = 0."""
    if a.ctx != b.ctx:
        raise ValueError("polynomials over different fields")
    while not b.is_zero:
        a, b = b, a % b
    return a.monic()


def pow_mod(base: Poly, exp: int, mod: Poly) -> Poly:
    """base**exp reduced mod a polynomial of degree >= 1."""
    if mod.degree < 1:
        raise ValueError("modulus must have degree >= 1")
    if exp < 0:
        raise ValueError("negative exponent")
    result = Poly.one(base.ctx) % mod
    base = base % mod
    while exp > 0:
        if exp & 1:
            result = (result * base) % mod
        base = (base * base) % mod
        exp >>= 1
    return result


def divisors(n: int) -> list[int]:
    """Positive divisors of n, ascending."""
    if n < 1:
        raise ValueError(f"divisors of {n}")
    return [d for d in range(1, n + 1) if n % d == 0]


# ---------------------------------------------------------------------------
# Text format.  Grammar: sum of terms c, t, t^k, c*t^k joined by +/-, with
# integer coefficients (reduced mod p) or bracketed vectors [a0,a1,...] for
# extension fields; alternatively one bracketed ascending list [c0,c1,...,cn].
# ---------------------------------------------------------------------------

_TERM_RE = re.compile(
    r"^(?:(?P<coef>\d+|\[[-\d,]*\])\*?)?(?P<var>t(?:\^(?P<exp>\d+))?)?$"
)


def _matching_bracket(s: str, start: int) -> int:
    depth = 0
    for i in range(start, len(s)):
        if s[i] == "[":
            depth += 1
        elif s[i] == "]":
            depth -= 1
            if depth == 0:
                return i
    raise ValueError(f"unbalanced brackets in {s!r}")


def _split_terms(s: str) -> list[tuple[int, str]]:
    """Split on top-level +/-, returning (sign, chunk) pairs."""
    out = []
    sign = 1
    depth = 0
    cur = []
    for i, ch in enumerate(s):
        if ch == "[":
            depth += 1
        elif ch == "]":
            depth -= 1
        if ch in "+-" and depth == 0 and i > 0:
            out.append((sign, "".join(cur)))
            cur = []
            sign = 1 if ch == "+" else -1
        elif ch in "+-" and depth == 0 and i == 0:
            sign = 1 if ch == "+" else -1
        else:
            cur.append(ch)
    out.append((sign, "".join(cur)))
    return out


def _coef_from_text(text: str, ctx: FieldCtx) -> FieldElement:
    if text.startswith("["):
        return ctx.element([int(x) for x in text[1:-1].split(",")] if text != "[]" else [])
    return ctx.from_int(int(text))


def parse_poly(text: str, ctx: FieldCtx) -> Poly:
    """Parse the term grammar or the bracketed coefficient-list form."""
    s = text.strip().replace(" ", "")
    if not s:
        raise ValueError("empty polynomial text")
    if s[0] == "[" and _matching_bracket(s, 0) == len(s) - 1:
        # whole string is one bracket group: ascending coefficient list
        body = s[1:-1]
        coeffs = []
        i = 0
        while i < len(body):
            if body[i] == "[":
                j = _matching_bracket(body, i)
                coeffs.append(_coef_from_text(body[i : j + 1], ctx))
                i = j + 1
                if i < len(body) and body[i] == ",":
                    i += 1
            else:
                j = body.find(",", i)
                part = body[i:] if j < 0 else body[i:j]
                coeffs.append(ctx.from_int(int(part)))
                i = len(body) if j < 0 else j + 1
        return Poly(ctx, coeffs)
    acc: dict[int, FieldElement] = {}
    for sign, chunk in _split_terms(s):
        if not chunk:
            raise ValueError(f"dangling sign in {text!r}")
        m = _TERM_RE.match(chunk)
        if not m or (m.group("coef") is None and m.group("var") is None):
            raise ValueError(f"bad term {chunk!r} in {text!r}")
        coef = (
            ctx.one()
            if m.group("coef") is None
            else _coef_from_text(m.group("coef"), ctx)
        )
        if sign < 0:
            coef = -coef
        if m.group("var") is None:
            exp = 0
        elif m.group("exp") is None:
            exp = 1
        else:
            exp = int(m.group("exp"))
        acc[exp] = acc.get(exp, ctx.zero()) + coef
    top = max(acc) if acc else 0
    return Poly(ctx, [acc.get(i, ctx.zero()) for i in range(top + 1)])


def format_poly(f: Poly) -> str:
    """Canonical descending rendering; parse_poly round-trips it."""
    if f.is_zero:
        return "0"
    if f.degree == 0:
        ct = str(f.coeffs[0])
        # a lone bracketed element would read as a coefficient list, so a
        # constant like [0,1] is wrapped into the singleton list form
        return f"[{ct}]" if ct.startswith("[") else ct
    parts = []
    for i in range(f.degree, -1, -1):
        c = f.coeffs[i]
        if c.is_zero:
            continue
        ct = str(c)
        if i == 0:
            parts.append(ct)
        else:
            var = "t" if i == 1 else f"t^{i}"
            parts.append(var if ct == "1" else f"{ct}*{var}")
    return "+".join(parts)


# ---------------------------------------------------------------------------
# Enumeration and the irreducible sieve
# ---------------------------------------------------------------------------

def monic_from_index(d: int, ctx: FieldCtx, idx: int) -> Poly:
    """The idx-th monic polynomial of degree d (constant digit fastest)."""
    if d < 0:
        raise ValueError("degree must be >= 0")
    if not 0 <= idx < ctx.q ** d:
        raise ValueError(f"index {idx} out of range for degree {d}")
    coeffs = []
    for _ in range(d):
        idx, rem = divmod(idx, ctx.q)
        coeffs.append(ctx.element_from_index(rem))
    coeffs.append(ctx.one())
    return Poly(ctx, coeffs)


def _index_digits(idx: int, d: int, q: int) -> tuple[int, ...]:
    """Coefficient digits (c0, ..., c_{d-1}) of a monic index."""
    digs = []
    for _ in range(d):
        idx, rem = divmod(idx, q)
        digs.append(rem)
    return tuple(digs)


def enumerate_monic(d: int, ctx: FieldCtx) -> Iterator[Poly]:
    """All q^d monic polynomials of degree d, deterministic order."""
    for idx in range(ctx.q ** d):
        yield monic_from_index(d, ctx, idx)


_irr_cache: dict[tuple[FieldCtx, int], list[int]] = {}
_table_cache: dict[FieldCtx, tuple[list[list[int]], list[list[int]]]] = {}
_fill_lock = threading.RLock()


def _index_tables(ctx: FieldCtx):
    """Full q x q add/mul tables on element indices (small extensions only)."""
    with _fill_lock:
        if ctx in _table_cache:
            return _table_cache[ctx]
        p, q = ctx.p, ctx.q
        tuples = []
        for idx in range(q):
            digs = []
            v = idx
            for _ in range(ctx.e):
                v, rem = divmod(v, p)
                digs.append(rem)
            while digs and digs[-1] == 0:
                digs.pop()
            tuples.append(tuple(digs))

        def encode(tup):
            v = 0
            for c in reversed(tup):
                v = v * p + c
            return v

        add_t = [
            [
                encode(
                    tuple(
                        ((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0)) % p
                        for i in range(max(len(a), len(b)))
                    )
                )
                for b in tuples
            ]
            for a in tuples
        ]
        mul_t = [
            [encode(_fp_mod(_fp_mul(a, b, p), ctx.modulus, p)) for b in tuples]
            for a in tuples
        ]
        _table_cache[ctx] = (add_t, mul_t)
        return add_t, mul_t


def _mark_multiples(marks: bytearray, a: int, p_idx: int, d: int, ctx: FieldCtx):
    """Mark every (irreducible of index p_idx, degree a) times (monic of
    degree d-a) inside the degree-d index space.  Hot loop: kept flat."""
    q = ctx.q
    m = d - a
    p_co = []
    v = p_idx
    for _ in range(a):
        v, rem = divmod(v, q)
        p_co.append(rem)
    p_co.append(1)  # element index of 1 is always 1
    if ctx.e == 1:
        p_mod = ctx.p
        digits = [0] * m
        for _ in range(q ** m):
            res = [0] * d
            for i, pc in enumerate(p_co):
                if pc:
                    for j in range(m):
                        gj = digits[j]
                        if gj and i + j < d:
                            res[i + j] += pc * gj
                    if i + m < d:
                        res[i + m] += pc
            idx = 0
            for k in range(d - 1, -1, -1):
                idx = idx * q + res[k] % p_mod
            marks[idx] = 1
            t = 0
            while t < m:
                digits[t] += 1
                if digits[t] == q:
                    digits[t] = 0
                    t += 1
                else:
                    break
    else:
        if q <= _TABLE_LIMIT:
            add_t, mul_t = _index_tables(ctx)

            def addf(x, y):
                return add_t[x][y]

            def mulf(x, y):
                return mul_t[x][y]

        else:
            addf, mulf = _slow_scalar_ops(ctx)
        digits = [0] * m
        for _ in range(q ** m):
            res = [0] * d
            for i, pc in enumerate(p_co):
                if pc:
                    for j in range(m):
                        gj = digits[j]
                        if gj and i + j < d:
                            res[i + j] = addf(res[i + j], mulf(pc, gj))
                    if i + m < d:
                        res[i + m] = addf(res[i + m], pc)
            idx = 0
            for k in range(d - 1, -1, -1):
                idx = idx * q + res[k]
            marks[idx] = 1
            t = 0
            while t < m:
                digits[t] += 1
                if digits[t] == q:
                    digits[t] = 0
                    t += 1
                else:
                    break


def _slow_scalar_ops(ctx: FieldCtx) -> tuple[Callable, Callable]:
    """Memoized index arithmetic for extensions too large for full tables."""
    from functools import lru_cache

    @lru_cache(maxsize=None)
    def addf(x, y):
        return ctx.element_index(ctx.element_from_index(x) + ctx.element_from_index(y))

    @lru_cache(maxsize=None)
    def mulf(x, y):
        return ctx.element_index(ctx.element_from_index(x) * ctx.element_from_index(y))

    return addf, mulf


def _irreducible_indices(d: int, ctx: FieldCtx) -> list[int]:
    key = (ctx, d)
    got = _irr_cache.get(key)
    if got is not None:
        return got
    if d < 1:
        raise ValueError("irreducibles have degree >= 1")
    if ctx.q ** d > ENUMERATION_LIMIT:
        raise CapExceeded(
            f"irreducible enumeration needs q^d = {ctx.q ** d} slots, "
            f"beyond the limit {ENUMERATION_LIMIT}"
        )
    with _fill_lock:
        got = _irr_cache.get(key)
        if got is not None:
            return got
        if d == 1:
            result = list(range(ctx.q))
        else:
            marks = bytearray(ctx.q ** d)
            for a in range(1, d // 2 + 1):
                for p_idx in _irreducible_indices(a, ctx):
                    _mark_multiples(marks, a, p_idx, d, ctx)
            result = [i for i in range(ctx.q ** d) if not marks[i]]
        # reorder from index order (constant digit fastest) to the canonical
        # coefficient-lex order shared with factorization output
        result.sort(key=lambda i: _index_digits(i, d, ctx.q))
        _irr_cache[key] = result
        return result


def count_irreducibles(d: int, ctx: FieldCtx) -> int:
    """N_d: the number of monic irreducibles of degree d over F_q."""
    return len(_irreducible_indices(d, ctx))


def enumerate_irreducibles(d: int, ctx: FieldCtx) -> Iterator[Poly]:
    """Monic irreducibles of degree d, coefficient-lex order (memoized)."""
    for idx in _irreducible_indices(d, ctx):
        yield monic_from_index(d, ctx, idx)


def is_irreducible(f: Poly) -> bool:
    """Deterministic irreducibility test (Frobenius fixed-point criterion).

    f of degree d >= 1 is irreducible iff t^(q^d) == t mod f and, for every
    prime l dividing d, gcd(t^(q^(d/l)) - t, f) = 1.  Constants and zero are
    units or zero, never irreducible.
    """
    d = f.degree
    if d < 1:
        return False
    ctx = f.ctx
    xm = Poly.x(ctx) % f
    frob = [xm]
    s = xm
    for _ in range(d):
        s = pow_mod(s, ctx.q, f)
        frob.append(s)
    if frob[d] != xm:
        return False
    for ell in prime_factors(d):
        if poly_gcd(frob[d // ell] - xm, f).degree != 0:
            return False
    return True


@dataclass(frozen=True)
class NecklaceCheck:
    k: int
    lhs: int
    rhs: int

    @property
    def equal(self) -> bool:
        return self.lhs == self.rhs


def necklace_check(k: int, ctx: FieldCtx) -> NecklaceCheck:
    """Compare sum over d|k of d*N_d against q^k, both sides exact."""
    if k < 1:
        raise ValueError("k must be >= 1")
    lhs = sum(d * count_irreducibles(d, ctx) for d in divisors(k))
    return NecklaceCheck(k, lhs, ctx.q ** k)


# ---------------------------------------------------------------------------
# Factorization
# ---------------------------------------------------------------------------

def poly_sort_key(f: Poly) -> tuple:
    """Canonical order: degree, then coefficient vector (constant first)."""
    return (f.degree, tuple(f.ctx.element_index(c) for c in f.coeffs))


@dataclass(frozen=True)
class Factorization:
    """unit * product of (monic irreducible)^multiplicity, canonically sorted."""

    unit: FieldElement
    factors: tuple[tuple[Poly, int], ...]

    def expand(self) -> Poly:
        out = Poly.constant(self.unit.ctx, self.unit)
        for p, r in self.factors:
            out = out * p ** r
        return out

    @property
    def is_squarefree(self) -> bool:
        return all(r == 1 for _, r in self.factors)

    @property
    def max_multiplicity(self) -> int:
        return max((r for _, r in self.factors), default=0)

    def __str__(self):
        parts = [str(self.unit)] if str(self.unit) != "1" or not self.factors else []
        for p, r in self.factors:
            parts.append(f"({p})" + (f"^{r}" if r > 1 else ""))
        return " * ".join(parts) if parts else "1"


def _pth_root(f: Poly) -> Poly:
    """Inverse of the Frobenius on a polynomial of the shape g(t^p)."""
    ctx = f.ctx
    p = ctx.p
    root_exp = p ** (ctx.e - 1)
    out = []
    for i, c in enumerate(f.coeffs):
        if i % p == 0:
            out.append(c ** root_exp)
        elif not c.is_zero:
            raise AssertionError("p-th root of a polynomial that is not in t^p")
    return Poly(ctx, out)


def _squarefree_parts(f: Poly) -> list[tuple[Poly, int]]:
    """Split a monic f into square-free parts keyed by multiplicity.

    Classic derivative/gcd refinement; whenever the leftover is a p-th power
    (zero derivative in characteristic p) its root is extracted and the
    multiplicity scale goes up by p.
    """
    ctx = f.ctx
    parts: dict[int, Poly] = {}
    scale = 1
    while True:
        der = f.derivative()
        if der.is_zero:
            f = _pth_root(f)
            scale *= ctx.p
            continue
        g = poly_gcd(f, der)
        h = f // g
        i = 1
        while h.degree > 0:
            gg = poly_gcd(g, h)
            part = h // gg
            if part.degree > 0:
                key = i * scale
                parts[key] = parts.get(key, Poly.one(ctx)) * part
            g = g // gg
            h = gg
            i += 1
        if g.degree == 0:
            break
        f = _pth_root(g)
        scale *= ctx.p
    return [(poly, mult) for mult, poly in sorted(parts.items())]


def _distinct_degree(h: Poly) -> list[tuple[Poly, int]]:
    """Split a monic square-free h into (product, degree-class) pairs."""
    ctx = h.ctx
    out = []
    k = 0
    s = Poly.x(ctx) % h
    while h.degree > 0:
        k += 1
        if 2 * k > h.degree:
            out.append((h, h.degree))
            break
        s = pow_mod(s, ctx.q, h)
        g = poly_gcd(s - (Poly.x(ctx) % h), h)
        if g.degree > 0:
            out.append((g, k))
            h = h // g
            if h.degree > 0:
                s = s % h
    return out


def _equal_degree(g: Poly, k: int) -> list[Poly]:
    """All degree-k irreducible factors of g (a product of such), by trial
    division in enumeration order."""
    if g.degree == k:
        return [g]
    out = []
    for cand in enumerate_irreducibles(k, g.ctx):
        quot, rem = divmod(g, cand)
        if rem.is_zero:
            out.append(cand)
            g = quot
            if g.degree == k:
                out.append(g)
                break
            if g.degree == 0:
                break
    if g.degree not in (0, k):
        raise AssertionError("equal-degree split left an unfactored remainder")
    return out


def factor(f: Poly) -> Factorization:
    """Deterministic full factorization over F_q."""
    if f.is_zero:
        raise ValueError("cannot factor the zero polynomial")
    unit = f.leading
    m = f.monic()
    if m.degree == 0:
        return Factorization(unit, ())
    found = []
    for part, mult in _squarefree_parts(m):
        for prod, k in _distinct_degree(part):
            for irr in _equal_degree(prod, k):
                found.append((irr, mult))
    found.sort(key=lambda item: poly_sort_key(item[0]))
    return Factorization(unit, tuple(found))
