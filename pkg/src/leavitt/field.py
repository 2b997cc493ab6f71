"""Exact coefficient arithmetic: Q, F_p, and quotients K[t]/(f(t)).

Scalars are always kept in canonical form (reduced fraction, residue in
[0, p), polynomial representative of degree < deg f), so equality and
zero-tests are exact.  Integer arithmetic is arbitrary precision
throughout; there is no floating point anywhere in this package.
"""

import re
from dataclasses import dataclass
from fractions import Fraction

from .errors import CannotCertifyError, FieldMismatchError, ParseError


# ---------------------------------------------------------------------------
# field specifications


@dataclass(frozen=True)
class Rationals:
    def __str__(self):
        return "Q"


@dataclass(frozen=True)
class PrimeField:
    p: int

    def __post_init__(self):
        if not _is_prime(self.p):
            raise ParseError(f"{self.p} is not prime")

    def __str__(self):
        return f"F{self.p}"


@dataclass(frozen=True)
class QuotientField:
    """K[t]/(f(t)) for f irreducible over the non-quotient base K, f != t."""

    base: object
    modulus: "Poly"

    def __post_init__(self):
        if isinstance(self.base, QuotientField):
            raise ParseError("quotient base must itself be Q or F_p")
        f = self.modulus
        if f.field != self.base:
            raise FieldMismatchError("modulus not over the base field")
        if f.degree() < 1:
            raise ParseError("modulus must have degree >= 1")
        if not f.is_monic():
            object.__setattr__(self, "modulus", f.monic())
            f = self.modulus
        if f == Poly.t(self.base):
            raise ParseError("modulus t is excluded (t is not invertible)")
        if not is_irreducible(f, self.base):
            raise ParseError(f"modulus {f} is reducible over {self.base}")

    def degree(self):
        return self.modulus.degree()

    def tbar(self):
        """The class of t, the canonical generator of the quotient."""
        return Scalar(self, Poly.t(self.base) % self.modulus)

    def __str__(self):
        return f"{self.base}[t]/({self.modulus})"


def _is_prime(n):
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


# ---------------------------------------------------------------------------
# scalars


@dataclass(frozen=True)
class Scalar:
    """An element of a FieldSpec, in canonical form.

    Values: Fraction over Q, int in [0, p) over F_p, Poly of degree
    < deg(modulus) over a quotient.
    """

    field: object
    value: object

    @staticmethod
    def make(field, raw):
        """Canonicalize a raw value (int, Fraction, Poly, or Scalar)."""
        if isinstance(raw, Scalar):
            if raw.field != field:
                raise FieldMismatchError(f"scalar over {raw.field}, wanted {field}")
            return raw
        if isinstance(field, Rationals):
            return Scalar(field, Fraction(raw))
        if isinstance(field, PrimeField):
            if isinstance(raw, Fraction):
                if raw.denominator % field.p == 0:
                    raise ZeroDivisionError("denominator divisible by p")
                raw = raw.numerator * pow(raw.denominator, -1, field.p)
            return Scalar(field, raw % field.p)
        if isinstance(field, QuotientField):
            if isinstance(raw, Poly):
                if raw.field != field.base:
                    raise FieldMismatchError("poly over wrong base field")
                return Scalar(field, raw % field.modulus)
            base_val = Scalar.make(field.base, raw)
            return Scalar(field, Poly.constant(field.base, base_val))
        raise TypeError(f"unknown field spec {field!r}")

    def is_zero(self):
        if isinstance(self.field, QuotientField):
            return self.value.degree() < 0
        return self.value == 0

    def __add__(self, other):
        self._check(other)
        if isinstance(self.field, QuotientField):
            return Scalar(self.field, (self.value + other.value) % self.field.modulus)
        return Scalar.make(self.field, self.value + other.value)

    def __neg__(self):
        if isinstance(self.field, QuotientField):
            return Scalar(self.field, -self.value % self.field.modulus)
        return Scalar.make(self.field, -self.value)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        self._check(other)
        if isinstance(self.field, QuotientField):
            return Scalar(self.field, (self.value * other.value) % self.field.modulus)
        return Scalar.make(self.field, self.value * other.value)

    def inv(self):
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        f = self.field
        if isinstance(f, Rationals):
            return Scalar(f, 1 / self.value)
        if isinstance(f, PrimeField):
            return Scalar(f, pow(self.value, f.p - 2, f.p))
        g, s = _poly_xgcd_inverse(self.value, f.modulus)
        assert g.degree() == 0
        return Scalar(f, (s * Poly.constant(f.base, g.coeffs[0].inv())) % f.modulus)

    def __truediv__(self, other):
        return self * other.inv()

    def __pow__(self, n):
        if n < 0:
            return self.inv() ** (-n)
        out = one(self.field)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def _check(self, other):
        if not isinstance(other, Scalar) or other.field != self.field:
            raise FieldMismatchError(f"cannot combine {self!r} with {other!r}")

    def __str__(self):
        if isinstance(self.field, QuotientField):
            return poly_str(self.value)
        return str(self.value)

    def __repr__(self):
        return f"{self}:{self.field}"


def zero(field):
    return Scalar.make(field, 0)


def one(field):
    return Scalar.make(field, 1)


def from_int(field, n):
    return Scalar.make(field, n)


def embed(s: Scalar, target) -> Scalar:
    """Embed a scalar into an extension field (identity, or K into K[t]/(f))."""
    if s.field == target:
        return s
    if isinstance(target, QuotientField) and s.field == target.base:
        return Scalar(target, Poly.constant(target.base, s))
    raise FieldMismatchError(f"no embedding of {s.field} into {target}")


def constant_term(s: Scalar) -> Scalar:
    """Project a degree-1 quotient scalar back to the base field."""
    f = s.field
    if not isinstance(f, QuotientField) or f.degree() != 1:
        raise FieldMismatchError("constant_term needs a degree-1 quotient")
    return s.value.coeffs[0] if s.value.coeffs else zero(f.base)


def arith(op, a: Scalar, b: Scalar | None = None) -> Scalar:
    """Named dispatch for {add, mul, neg, inv}; see the Scalar operators."""
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "neg":
        return -a
    if op == "inv":
        return a.inv()
    raise ParseError(f"unknown arith op {op!r}")


# ---------------------------------------------------------------------------
# polynomials over a base field


@dataclass(frozen=True)
class Poly:
    """Dense polynomial over Q or F_p; coeffs[i] multiplies t^i.

    Trailing zeros are trimmed, so the zero polynomial has empty coeffs
    and degree() == -1.
    """

    field: object
    coeffs: tuple

    def __post_init__(self):
        cs = list(self.coeffs)
        cs = [c if isinstance(c, Scalar) else Scalar.make(self.field, c) for c in cs]
        while cs and cs[-1].is_zero():
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    @classmethod
    def zero(cls, field):
        return cls(field, ())

    @classmethod
    def constant(cls, field, c):
        return cls(field, (c,))

    @classmethod
    def t(cls, field):
        return cls(field, (0, 1))

    def degree(self):
        return len(self.coeffs) - 1

    def is_zero(self):
        return not self.coeffs

    def is_monic(self):
        return bool(self.coeffs) and self.coeffs[-1] == one(self.field)

    def monic(self):
        if self.is_zero():
            return self
        lead = self.coeffs[-1].inv()
        return Poly(self.field, tuple(c * lead for c in self.coeffs))

    def coeff(self, i):
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else zero(self.field)

    def _check(self, other):
        if not isinstance(other, Poly) or other.field != self.field:
            raise FieldMismatchError("polynomials over different fields")

    def __add__(self, other):
        self._check(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly(self.field, tuple(self.coeff(i) + other.coeff(i) for i in range(n)))

    def __neg__(self):
        return Poly(self.field, tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        self._check(other)
        if self.is_zero() or other.is_zero():
            return Poly.zero(self.field)
        out = [zero(self.field)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return Poly(self.field, tuple(out))

    def scale(self, c: Scalar):
        return Poly(self.field, tuple(c * a for a in self.coeffs))

    def __divmod__(self, other):
        self._check(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        q = Poly.zero(self.field)
        r = self
        inv_lead = other.coeffs[-1].inv()
        while r.degree() >= other.degree():
            shift = r.degree() - other.degree()
            c = r.coeffs[-1] * inv_lead
            term = Poly(self.field, (0,) * shift + (c,))
            q = q + term
            r = r - term * other
        return q, r

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __call__(self, a: Scalar) -> Scalar:
        """Evaluate at a scalar of this field or an extension of it."""
        F = a.field
        acc = zero(F)
        for c in reversed(self.coeffs):
            acc = acc * a + embed(c, F)
        return acc

    def __str__(self):
        return poly_str(self)

    def __repr__(self):
        return f"Poly({poly_str(self)})"


def _poly_xgcd_inverse(a: Poly, m: Poly):
    """Return (g, s) with g = gcd(a, m) of degree 0 and s*a = g mod m."""
    old_r, r = a, m
    old_s, s = Poly.constant(a.field, 1), Poly.zero(a.field)
    while not r.is_zero():
        q, rem = divmod(old_r, r)
        old_r, r = r, rem
        old_s, s = s, old_s - q * s
    return old_r, old_s


@dataclass(frozen=True)
class Laurent:
    """A Laurent polynomial t^offset * poly, offset possibly negative."""

    poly: Poly
    offset: int = 0

    def __call__(self, a: Scalar) -> Scalar:
        return eval_at(self, a)


def eval_at(g, a: Scalar) -> Scalar:
    """Evaluate a Poly or Laurent at a; negative offsets need a invertible."""
    if isinstance(g, Laurent):
        val = g.poly(a)
        if g.offset == 0:
            return val
        if g.offset < 0 and a.is_zero():
            raise ZeroDivisionError("negative power of zero")
        return (a ** g.offset) * val
    return g(a)


# ---------------------------------------------------------------------------
# irreducibility and enumeration


def is_irreducible(f: Poly, base=None) -> bool:
    """Exact irreducibility test.

    Over F_p: trial division by all monic polynomials of degree <=
    deg(f)/2.  Over Q: degree 1 is irreducible, degrees 2 and 3 reduce to
    the rational root test; beyond that we refuse to certify.
    """
    if base is None:
        base = f.field
    if f.field != base:
        raise FieldMismatchError("polynomial not over the given base")
    d = f.degree()
    if d < 1:
        raise ParseError("irreducibility needs degree >= 1")
    if d == 1:
        return True
    if isinstance(base, PrimeField):
        for g in _monic_polys_upto(base, d // 2):
            if (f % g).is_zero():
                return False
        return True
    if isinstance(base, Rationals):
        if d > 3:
            raise CannotCertifyError(
                f"cannot certify irreducibility of degree {d} over Q"
            )
        return not _has_rational_root(f)
    raise ParseError(f"irreducibility over {base} unsupported")


def _monic_polys_upto(base: PrimeField, max_deg: int):
    p = base.p
    for deg in range(1, max_deg + 1):
        for idx in range(p ** deg):
            coeffs = []
            k = idx
            for _ in range(deg):
                coeffs.append(k % p)
                k //= p
            yield Poly(base, tuple(coeffs) + (1,))


def _has_rational_root(f: Poly) -> bool:
    # clear denominators to an integer polynomial, then p/q candidates
    denoms = [c.value.denominator for c in f.coeffs]
    lcm = 1
    for d in denoms:
        lcm = lcm * d // _gcd(lcm, d)
    ints = [int(c.value * lcm) for c in f.coeffs]
    if ints[0] == 0:
        return True  # 0 is a root
    a0, an = abs(ints[0]), abs(ints[-1])
    for p in _divisors(a0):
        for q in _divisors(an):
            for sign in (1, -1):
                r = Fraction(sign * p, q)
                if f(Scalar.make(f.field, r)).is_zero():
                    return True
    return False


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def _divisors(n):
    out = [d for d in range(1, n + 1) if n % d == 0]
    return out


def enumerate_irreducibles(p: int, max_deg: int):
    """All monic irreducibles of degree <= max_deg over F_p, sorted by
    (degree, coefficient sequence from the constant term up).
    """
    if max_deg < 1:
        raise ValueError("max_deg must be >= 1")
    base = PrimeField(p)
    found = []
    for f in _monic_polys_upto(base, max_deg):
        if all(not (f % g).is_zero() for g in found if 2 * g.degree() <= f.degree()):
            found.append(f)
    key = lambda f: (f.degree(), tuple(c.value for c in f.coeffs))
    return sorted(found, key=key)


# ---------------------------------------------------------------------------
# parsing and printing


_FIELD_RE = re.compile(r"^(Q|F(\d+))(\[t\]/\((.+)\))?$")


def parse_field_spec(text: str):
    """Parse "Q", "F5", "F2[t]/(t^2+t+1)", "Q[t]/(t-2)"."""
    m = _FIELD_RE.match(text.strip())
    if not m:
        raise ParseError(f"bad field spec {text!r}")
    base = Rationals() if m.group(1) == "Q" else PrimeField(int(m.group(2)))
    if m.group(4) is None:
        return base
    return QuotientField(base, parse_poly(base, m.group(4)))


_TERM_RE = re.compile(
    r"^\s*(?P<coeff>-?\d+(?:/\d+)?)?\s*(?:(?P<star>\*)?\s*t(?:\^(?P<exp>\d+))?)?\s*$"
)


def parse_poly(base, text: str) -> Poly:
    """Parse "t^2+t+1", "2*t+3", "t-2", "1/2*t^2-3" over the base field."""
    s = text.replace(" ", "")
    if not s:
        raise ParseError("empty polynomial")
    # split into signed terms
    terms = []
    cur, sign = "", 1
    for i, ch in enumerate(s):
        if ch in "+-" and i > 0 and s[i - 1] not in "+-*/^":
            terms.append((sign, cur))
            sign = 1 if ch == "+" else -1
            cur = ""
        elif ch in "+-" and i == 0:
            sign = 1 if ch == "+" else -1
        else:
            cur += ch
    terms.append((sign, cur))
    coeffs = {}
    for sign, term in terms:
        m = _TERM_RE.match(term)
        if not m or (m.group("coeff") is None and "t" not in term):
            raise ParseError(f"bad polynomial term {term!r} in {text!r}")
        has_t = "t" in term
        exp = int(m.group("exp")) if m.group("exp") else (1 if has_t else 0)
        raw = m.group("coeff")
        c = Fraction(raw) if raw else Fraction(1)
        cs = Scalar.make(base, sign * c)
        coeffs[exp] = coeffs.get(exp, zero(base)) + cs
    deg = max(coeffs) if coeffs else 0
    return Poly(base, tuple(coeffs.get(i, zero(base)) for i in range(deg + 1)))


def poly_str(f: Poly) -> str:
    if f.is_zero():
        return "0"
    parts = []
    for i in range(f.degree(), -1, -1):
        c = f.coeff(i)
        if c.is_zero():
            continue
        neg = isinstance(c.value, (int, Fraction)) and c.value < 0
        mag = -c if neg else c
        if i == 0:
            body = str(mag)
        else:
            tpow = "t" if i == 1 else f"t^{i}"
            body = tpow if mag == one(f.field) else f"{mag}*{tpow}"
        if not parts:
            parts.append(("-" if neg else "") + body)
        else:
            parts.append(("-" if neg else "+") + body)
    return "".join(parts)


def parse_scalar(field, text: str) -> Scalar:
    """Parse an exact scalar: "5/6", "-2", or a poly in t for quotients."""
    s = text.strip()
    if isinstance(field, QuotientField):
        return Scalar.make(field, parse_poly(field.base, s))
    try:
        return Scalar.make(field, Fraction(s))
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"bad scalar {text!r} for {field}: {exc}") from None


def scalar_str(s: Scalar) -> str:
    return str(s)
