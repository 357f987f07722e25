"""Finite fields F_q at desk scale.

A FieldCtx describes F_q with q = p^e: the prime p, the extension degree e
and, for e > 1, a monic irreducible modulus of degree e over F_p.  When no
modulus is supplied, the lexicographically smallest irreducible one is chosen
(coefficient vectors compared constant term first), so identical parameters
always produce identical fields.

Elements are immutable vectors of e residues mod p (constant coefficient
first) tied to their context.  The usual operators do exact field arithmetic;
mixing elements of different fields raises ValueError, while contexts with
equal (p, e, modulus) compare equal and interoperate.

Construction enforces q <= 2**16: larger fields are out of scope for the
exhaustive enumerations this package is built around.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator, Optional, Sequence

Q_LIMIT = 1 << 16


def is_prime(n: int) -> bool:
    """Trial-division primality test, plenty for n <= 2**16."""
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def prime_power(q: int) -> tuple[int, int]:
    """Decompose q = p^e with p prime; raise ValueError otherwise."""
    if q < 2:
        raise ValueError(f"not a prime power: {q}")
    p = 2
    while p * p <= q:
        if q % p == 0:
            e, m = 0, q
            while m % p == 0:
                m //= p
                e += 1
            if m != 1:
                raise ValueError(f"not a prime power: {q}")
            return p, e
        p += 1
    return q, 1


def prime_factors(n: int) -> list[int]:
    """Distinct prime factors of n, ascending."""
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


# ---------------------------------------------------------------------------
# Arithmetic on F_p coefficient tuples (ascending order, no trailing zeros).
# Internal: used for modulus selection/validation and extension-field element
# arithmetic, so FieldElement never has to nest.
# ---------------------------------------------------------------------------

def _trim(c: Sequence[int]) -> tuple[int, ...]:
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def _fp_add(a, b, p):
    n = max(len(a), len(b))
    return _trim(
        ((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0)) % p
        for i in range(n)
    )


def _fp_sub(a, b, p):
    n = max(len(a), len(b))
    return _trim(
        ((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % p
        for i in range(n)
    )


def _fp_mul(a, b, p):
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim(v % p for v in out)


def _fp_divmod(a, b, p):
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    a = list(a)
    if len(a) < len(b):
        return (), _trim(a)
    quot = [0] * (len(a) - len(b) + 1)
    inv_lead = pow(b[-1], p - 2, p)
    for i in range(len(a) - len(b), -1, -1):
        c = (a[i + len(b) - 1] * inv_lead) % p
        if c:
            quot[i] = c
            for j, y in enumerate(b):
                a[i + j] = (a[i + j] - c * y) % p
    return _trim(quot), _trim(a)


def _fp_mod(a, b, p):
    return _fp_divmod(a, b, p)[1]


def _fp_gcd(a, b, p):
    a, b = _trim(a), _trim(b)
    while b:
        a, b = b, _fp_mod(a, b, p)
    if a:
        inv = pow(a[-1], p - 2, p)
        a = tuple((c * inv) % p for c in a)
    return a


def _fp_invmod(a, m, p):
    """Inverse of a modulo m over F_p (extended Euclid)."""
    r0, r1 = _trim(m), _trim(a)
    s0, s1 = (), (1,)
    while r1:
        quot, rem = _fp_divmod(r0, r1, p)
        r0, r1 = r1, rem
        s0, s1 = s1, _fp_sub(s0, _fp_mul(quot, s1, p), p)
    if len(r0) != 1:
        raise ZeroDivisionError("element is not invertible")
    inv_c = pow(r0[0], p - 2, p)
    return tuple((c * inv_c) % p for c in s0)


def _fp_powmod(base, exp, mod, p):
    result = _fp_mod((1,), mod, p)
    base = _fp_mod(base, mod, p)
    while exp > 0:
        if exp & 1:
            result = _fp_mod(_fp_mul(result, base, p), mod, p)
        base = _fp_mod(_fp_mul(base, base, p), mod, p)
        exp >>= 1
    return result


def _fp_is_irreducible(f: tuple[int, ...], p: int) -> bool:
    """Frobenius fixed-point criterion for a polynomial over F_p."""
    d = len(f) - 1
    if d < 1:
        return False
    x = _fp_mod((0, 1), f, p)
    frob = [x]
    s = x
    for _ in range(d):
        s = _fp_powmod(s, p, f, p)
        frob.append(s)
    if _fp_sub(frob[d], x, p):
        return False
    for ell in prime_factors(d):
        g = _fp_gcd(_fp_sub(frob[d // ell], x, p), f, p)
        if len(g) != 1:
            return False
    return True


def _default_modulus(p: int, e: int) -> tuple[int, ...]:
    """Smallest monic irreducible of degree e over F_p.

    Candidates are compared by their coefficient vector (c0, ..., c_{e-1}),
    constant term first, in lexicographic order.
    """
    for lower in itertools.product(range(p), repeat=e):
        cand = tuple(lower) + (1,)
        if _fp_is_irreducible(cand, p):
            return cand
    raise AssertionError("no irreducible modulus of degree %d over F_%d" % (e, p))


# ---------------------------------------------------------------------------
# Field contexts and elements
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FieldCtx:
    """Immutable description of F_q; build with make_field()."""

    p: int
    e: int
    q: int
    modulus: Optional[tuple[int, ...]]

    def __repr__(self):
        if self.e == 1:
            return f"FieldCtx(q={self.q})"
        return f"FieldCtx(q={self.p}^{self.e}, modulus={list(self.modulus)})"

    def zero(self) -> "FieldElement":
        return FieldElement(self, (0,) * self.e)

    def one(self) -> "FieldElement":
        return FieldElement(self, (1,) + (0,) * (self.e - 1))

    def from_int(self, n: int) -> "FieldElement":
        """Embed an integer via the prime subfield."""
        return FieldElement(self, (n % self.p,) + (0,) * (self.e - 1))

    def element(self, coeffs: Sequence[int]) -> "FieldElement":
        """Element from up to e residues, constant coordinate first."""
        coeffs = [c % self.p for c in coeffs]
        if len(coeffs) > self.e:
            raise ValueError(
                f"element vector of length {len(coeffs)} in a degree-{self.e} extension"
            )
        coeffs += [0] * (self.e - len(coeffs))
        return FieldElement(self, tuple(coeffs))

    def element_index(self, a: "FieldElement") -> int:
        """Position of a in the enumeration order (constant digit fastest)."""
        idx = 0
        for c in reversed(a.coeffs):
            idx = idx * self.p + c
        return idx

    def element_from_index(self, idx: int) -> "FieldElement":
        if not 0 <= idx < self.q:
            raise ValueError(f"element index {idx} out of range for q={self.q}")
        coeffs = []
        for _ in range(self.e):
            idx, rem = divmod(idx, self.p)
            coeffs.append(rem)
        return FieldElement(self, tuple(coeffs))


@dataclass(frozen=True)
class FieldElement:
    """An element of F_q, immutable and hashable."""

    ctx: FieldCtx
    coeffs: tuple[int, ...]

    @property
    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def _coerce(self, other):
        if isinstance(other, FieldElement):
            if other.ctx != self.ctx:
                raise ValueError("elements belong to different fields")
            return other
        if isinstance(other, int):
            return self.ctx.from_int(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        p = self.ctx.p
        return FieldElement(
            self.ctx, tuple((x + y) % p for x, y in zip(self.coeffs, other.coeffs))
        )

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        p = self.ctx.p
        return FieldElement(
            self.ctx, tuple((x - y) % p for x, y in zip(self.coeffs, other.coeffs))
        )

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other - self

    def __neg__(self):
        p = self.ctx.p
        return FieldElement(self.ctx, tuple((-x) % p for x in self.coeffs))

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        ctx = self.ctx
        if ctx.e == 1:
            return FieldElement(ctx, ((self.coeffs[0] * other.coeffs[0]) % ctx.p,))
        prod = _fp_mul(self.coeffs, other.coeffs, ctx.p)
        return ctx.element(_fp_mod(prod, ctx.modulus, ctx.p))

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            raise ValueError("negative exponent; use inverse() explicitly")
        result = self.ctx.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def inverse(self) -> "FieldElement":
        if self.is_zero:
            raise ZeroDivisionError("inverse of zero")
        ctx = self.ctx
        if ctx.e == 1:
            return FieldElement(ctx, (pow(self.coeffs[0], ctx.p - 2, ctx.p),))
        return ctx.element(_fp_invmod(_trim(self.coeffs), ctx.modulus, ctx.p))

    def __str__(self):
        if self.ctx.e == 1 or not any(self.coeffs[1:]):
            return str(self.coeffs[0])
        return "[" + ",".join(str(c) for c in self.coeffs) + "]"


def make_field(p: int, e: int = 1, modulus: Optional[Sequence[int]] = None) -> FieldCtx:
    """Construct F_{p^e}, validating every input.

    For e > 1 a modulus may be supplied as e+1 integers (ascending, monic);
    it must be irreducible over F_p.  Without one, the smallest irreducible
    candidate in constant-first lexicographic order is picked, so the default
    is deterministic.
    """
    if not isinstance(p, int) or not is_prime(p):
        raise ValueError(f"p must be prime, got {p}")
    if not isinstance(e, int) or e < 1:
        raise ValueError(f"extension degree must be a positive integer, got {e}")
    q = p ** e
    if q > Q_LIMIT:
        raise ValueError(f"q = {q} exceeds the supported bound {Q_LIMIT}")
    if e == 1:
        if modulus is not None:
            raise ValueError("a modulus is only meaningful for e > 1")
        return FieldCtx(p, 1, q, None)
    if modulus is None:
        mod = _default_modulus(p, e)
    else:
        given = [int(c) for c in modulus]
        if len(given) != e + 1:
            raise ValueError(
                f"modulus must have {e + 1} coefficients for degree {e}, got {len(given)}"
            )
        mod = tuple(c % p for c in given)
        if mod[-1] != 1:
            raise ValueError("modulus must be monic")
        if not _fp_is_irreducible(mod, p):
            raise ValueError(f"modulus {given} is reducible over F_{p}")
    return FieldCtx(p, e, q, mod)


def enumerate_elements(ctx: FieldCtx) -> Iterator[FieldElement]:
    """All q elements, deterministic order (constant coordinate fastest)."""
    for idx in range(ctx.q):
        yield ctx.element_from_index(idx)


def _parse_int_list(text: str) -> list[int]:
    s = text.strip()
    if not (s.startswith("[") and s.endswith("]")):
        raise ValueError(f"expected a bracketed integer list, got {text!r}")
    body = s[1:-1].strip()
    if not body:
        return []
    return [int(part) for part in body.split(",")]


def parse_field_spec(text: str) -> FieldCtx:
    """Parse "q=p", "q=p^e" or "q=p^e;mod=[c0,...,1]" into a field."""
    s = text.strip().replace(" ", "")
    if not s.startswith("q="):
        raise ValueError(f"field spec must start with 'q=', got {text!r}")
    body = s[2:]
    modulus = None
    if ";" in body:
        body, rest = body.split(";", 1)
        if not rest.startswith("mod="):
            raise ValueError(f"unrecognized field spec part {rest!r}")
        modulus = _parse_int_list(rest[4:])
    if "^" in body:
        p_text, e_text = body.split("^", 1)
        p, e = int(p_text), int(e_text)
    else:
        p, e = prime_power(int(body))
    return make_field(p, e, modulus)


def format_field_spec(ctx: FieldCtx) -> str:
    if ctx.e == 1:
        return f"q={ctx.p}"
    return f"q={ctx.p}^{ctx.e};mod=[" + ",".join(str(c) for c in ctx.modulus) + "]"
